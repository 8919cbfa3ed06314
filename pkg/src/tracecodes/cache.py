"""On-disk cache of enumerated distributions, one CSV file per (m, reduction_poly)."""

from __future__ import annotations

import csv
import os
from pathlib import Path
from typing import Optional

from .code import CodeSpec, WeightDistribution

HEADER = ["key", "weight", "count"]


def cache_key(spec: CodeSpec) -> str:
    return f"m={spec.m};poly={spec.params.reduction_poly:#x}"


def cache_path(cache_dir: os.PathLike | str, spec: CodeSpec) -> Path:
    return Path(cache_dir) / f"dist_m{spec.m}_p{spec.params.reduction_poly:x}.csv"


def load(cache_dir: os.PathLike | str, spec: CodeSpec) -> Optional[WeightDistribution]:
    path = cache_path(cache_dir, spec)
    if not path.exists():
        return None
    key = cache_key(spec)
    counts = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        if next(reader, None) != HEADER:
            return None
        for row in reader:
            if len(row) != 3 or row[0] != key:
                return None
            counts[int(row[1])] = int(row[2])
    dist = WeightDistribution(counts)
    if dist.total() != 1 << spec.k_bin or dist[0] != 1:
        return None
    return dist


def store(cache_dir: os.PathLike | str, spec: CodeSpec, dist: WeightDistribution) -> Path:
    path = cache_path(cache_dir, spec)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    key = cache_key(spec)
    with open(tmp, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(HEADER)
        for w in sorted(dist.counts):
            if dist.counts[w]:
                writer.writerow([key, w, dist.counts[w]])
    os.replace(tmp, path)
    return path
