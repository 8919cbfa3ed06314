"""GF(2) linear algebra on int bitsets (bit j of a row is column j)."""

from __future__ import annotations

from typing import Optional, Sequence


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) by elimination on leading bits."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


def echelon(rows: Sequence[int]) -> dict[int, int]:
    """Reduced basis keyed by pivot (leading) bit."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return basis


def in_span(vec: int, basis: dict[int, int]) -> bool:
    while vec:
        top = vec.bit_length() - 1
        if top not in basis:
            return False
        vec ^= basis[top]
    return True


def solve_combination(rows: Sequence[int], target: int) -> Optional[int]:
    """Mask c with XOR_{i in c} rows[i] == target, or None if target is not in the span."""
    basis: dict[int, tuple[int, int]] = {}
    for i, r in enumerate(rows):
        tag = 1 << i
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = (r, tag)
                break
            br, bt = basis[top]
            r ^= br
            tag ^= bt
    combo = 0
    while target:
        top = target.bit_length() - 1
        if top not in basis:
            return None
        br, bt = basis[top]
        target ^= br
        combo ^= bt
    return combo


def kernel_basis(rows: Sequence[int], n_cols: int) -> list[int]:
    """Basis of {v in GF(2)^n_cols : <v, row> = 0 for every row}."""
    # Gauss-Jordan to reduced row echelon form with pivots on low bits
    work = [r for r in rows if r]
    pivots: list[int] = []
    rank = 0
    for col in range(n_cols):
        piv = None
        for i in range(rank, len(work)):
            if (work[i] >> col) & 1:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for i in range(len(work)):
            if i != rank and (work[i] >> col) & 1:
                work[i] ^= work[rank]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    work = work[:rank]
    pivot_set = set(pivots)
    out = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for row, p in zip(work, pivots):
            if (row >> free) & 1:
                v |= 1 << p
        out.append(v)
    return out


def parity(x: int) -> int:
    return x.bit_count() & 1
