"""GF(2) linear algebra on Python-int bitsets.

Rows of a linear system are ints: bit 0 holds the right-hand side and bit
``j + 1`` the coefficient of unknown ``j``.  Elimination pivots on the highest
set bit, so the order of pivots (and therefore every reported solution) is
deterministic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_MAX_UNKNOWNS = 2_000_000


class SystemTooLarge(RuntimeError):
    pass


def max_unknowns() -> int:
    raw = os.environ.get("KFH_MAX_UNKNOWNS")
    return int(raw) if raw else DEFAULT_MAX_UNKNOWNS


def iter_bits(x: int) -> Iterable[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Echelon:
    """Incremental row echelon form; each stored row may carry a tag int."""

    def __init__(self) -> None:
        self.rows: dict[int, tuple[int, int]] = {}

    def reduce(self, vec: int, tag: int = 0) -> tuple[int, int]:
        rows = self.rows
        while vec:
            p = vec.bit_length() - 1
            hit = rows.get(p)
            if hit is None:
                break
            vec ^= hit[0]
            tag ^= hit[1]
        return vec, tag

    def add(self, vec: int, tag: int = 0) -> tuple[int, int]:
        """Insert ``vec``; returns the reduced residue and tag (residue 0 means dependent)."""
        vec, tag = self.reduce(vec, tag)
        if vec:
            self.rows[vec.bit_length() - 1] = (vec, tag)
        return vec, tag

    def contains(self, vec: int) -> bool:
        return self.reduce(vec)[0] == 0

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(vectors: Iterable[int]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def kernel(images: Sequence[int]) -> list[int]:
    """Basis of the kernel of the map sending basis vector ``i`` to ``images[i]``."""
    ech = Echelon()
    out = []
    for i, img in enumerate(images):
        res, tag = ech.add(img, 1 << i)
        if res == 0:
            out.append(tag)
    return out


def apply(images: Sequence[int], vec: int) -> int:
    acc = 0
    for i in iter_bits(vec):
        acc ^= images[i]
    return acc


@dataclass
class Solution:
    """Affine solution space: ``particular + span(basis)``; bit j is unknown j."""

    n_unknowns: int
    particular: int
    basis: list[int] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def value(self, j: int, vec: int | None = None) -> int:
        vec = self.particular if vec is None else vec
        return (vec >> j) & 1


def _solve_block(rows: list[int], n: int) -> tuple[int, list[int]] | None:
    """Rows over local unknowns 0..n-1 (bit j+1); returns (particular, kernel basis)."""
    ech = Echelon()
    for r in rows:
        res, _ = ech.add(r)
        if res == 1:
            return None
    pivots = sorted(ech.rows)
    sol = 0
    # back substitution in increasing pivot order: a row's other bits lie below its pivot
    for p in pivots:
        row = ech.rows[p][0]
        rest = row & ~(1 << p)
        val = (rest & 1) ^ (bin((rest >> 1) & sol).count("1") & 1)
        if val:
            sol |= 1 << (p - 1)
    pivot_set = set(pivots)
    basis = []
    for j in range(n):
        if (j + 1) in pivot_set:
            continue
        vec = 1 << j
        for p in pivots:
            row = ech.rows[p][0]
            rest = (row & ~(1 << p)) >> 1
            if bin(rest & vec).count("1") & 1:
                vec |= 1 << (p - 1)
        basis.append(vec)
    return sol, basis


def solve(rows: Iterable[int], n_unknowns: int) -> Solution | None:
    """Solve a GF(2) system; returns None when inconsistent.

    The system is split into connected components (unknowns sharing a row)
    and each block is eliminated on its own.
    """
    if n_unknowns > max_unknowns():
        raise SystemTooLarge(
            f"linear system has {n_unknowns} unknowns, above KFH_MAX_UNKNOWNS={max_unknowns()}"
        )
    parent = list(range(n_unknowns))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    kept = []
    for r in rows:
        if r == 0:
            continue
        if r == 1:
            return None
        bits = [b - 1 for b in iter_bits(r >> 1 << 1)]
        root = find(bits[0])
        for b in bits[1:]:
            rb = find(b)
            if rb != root:
                parent[rb] = root
        kept.append((r, bits))

    groups: dict[int, list[int]] = {}
    for j in range(n_unknowns):
        groups.setdefault(find(j), []).append(j)
    group_rows: dict[int, list[tuple[int, list[int]]]] = {}
    for r, bits in kept:
        group_rows.setdefault(find(bits[0]), []).append((r, bits))

    particular = 0
    basis: list[int] = []
    for root, members in groups.items():
        local = {g: i for i, g in enumerate(members)}
        local_rows = []
        for r, bits in group_rows.get(root, []):
            lr = r & 1
            for b in bits:
                lr |= 1 << (local[b] + 1)
            local_rows.append(lr)
        out = _solve_block(local_rows, len(members))
        if out is None:
            return None
        lsol, lbasis = out
        for i in iter_bits(lsol):
            particular |= 1 << members[i]
        for vec in lbasis:
            g = 0
            for i in iter_bits(vec):
                g |= 1 << members[i]
            basis.append(g)
    return Solution(n_unknowns, particular, basis)


def check_solution(rows: Iterable[int], sol: int) -> bool:
    shifted = sol << 1
    for r in rows:
        if (bin(r & shifted).count("1") & 1) != (r & 1):
            return False
    return True
