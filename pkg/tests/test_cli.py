import json

import pytest

from tracecodes.cli import EXIT_FAIL, EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE, main
from tracecodes.report import REPORT_KEYS


def test_params(capsys):
    assert main(["params", "--m", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "n_bin=112" in out and "k_bin=12" in out and "reduction_poly=0xb" in out


def test_verify_m3(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "--m", "3", "--json-out", str(out)]) == EXIT_OK
    rep = json.loads(out.read_text())
    assert tuple(sorted(rep)) == tuple(sorted(REPORT_KEYS))
    assert rep["distribution"]["parameters"] == [112, 12, 32]
    assert all(rep["findings"]["checks"].values())
    assert any("A_2^perp" in n for n in rep["findings"]["notes"])
    err = capsys.readouterr().err
    assert "PASS" in err and "FINDING" in err


def test_verify_even_m_skips_odd_only_parts(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--m", "2", "--json-out", str(out)]) in (EXIT_OK, EXIT_FAIL)
    rep = json.loads(out.read_text())
    assert "skipped" in rep["theorem43"] and "skipped" in rep["moments"]


def test_enumerate_cache(tmp_path):
    out = tmp_path / "e.json"
    args = ["enumerate", "--m", "3", "--cache-dir", str(tmp_path / "c"), "--json-out", str(out)]
    assert main(args) == EXIT_OK
    assert json.loads(out.read_text())["timings"]["distribution_cache"] == "miss"
    assert main(args) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["timings"]["distribution_cache"] == "hit"
    assert rep["distribution"]["counts"]["96"] == "7"


@pytest.mark.parametrize("argv", [
    ["verify", "--m", "4", "--theorem"],
    ["params", "--m", "1"],
    ["params", "--m", "3", "--poly", "0x9"],
    ["enumerate", "--m", "3", "--threads", "0"],
])
def test_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_bad_flag():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--m", "3", "--max-lee", "7"])
    assert exc.value.code == 2


def test_infeasible():
    assert main(["verify", "--m", "5", "--max-lee", "4"]) == EXIT_INFEASIBLE
    assert main(["enumerate", "--m", "11"]) == EXIT_INFEASIBLE
