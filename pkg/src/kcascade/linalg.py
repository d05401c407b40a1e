"""Exact integer rank by fraction-free (Bareiss) elimination."""

from __future__ import annotations

from typing import Iterable, Sequence


def bareiss_rank(rows: Iterable[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix given as a sequence of rows.

    Every intermediate entry is a minor of the input, so all divisions are
    exact and the numbers stay bounded by Hadamard's bound.
    """
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    if any(len(r) != ncols for r in m):
        raise ValueError("ragged matrix")
    nrows = len(m)
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        p = prow[c]
        for i in range(rank + 1, nrows):
            row = m[i]
            a = row[c]
            if a == 0:
                if p != prev:
                    for j in range(c + 1, ncols):
                        if row[j]:
                            row[j] = row[j] * p // prev
                continue
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - a * prow[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
    return rank
