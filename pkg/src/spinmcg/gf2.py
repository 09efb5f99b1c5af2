"""GF(2) linear algebra on int bitsets (bit i = variable i)."""

from __future__ import annotations

from itertools import product


def echelon(rows: list[int]) -> list[tuple[int, int]]:
    """Reduced row echelon form as ``(pivot_bit, row)`` pairs."""
    basis: list[tuple[int, int]] = []
    for r in rows:
        for piv, b in basis:
            if r >> piv & 1:
                r ^= b
        if r:
            piv = r.bit_length() - 1
            reduced = []
            for p2, b in basis:
                if b >> piv & 1:
                    b ^= r
                reduced.append((p2, b))
            basis = reduced + [(piv, r)]
    return basis


def rank(rows: list[int]) -> int:
    return len(echelon(rows))


def in_span(vec: int, rows: list[int]) -> bool:
    return solve(rows, vec) is not None


def solve(rows: list[int], target: int) -> int | None:
    """Coefficient bitset ``x`` with ``sum_i x_i rows[i] == target``, or None.

    Tracks the combination alongside the elimination.
    """
    basis: list[tuple[int, int, int]] = []  # (pivot, row, combination)
    for i, r in enumerate(rows):
        comb = 1 << i
        for piv, b, c in basis:
            if r >> piv & 1:
                r ^= b
                comb ^= c
        if r:
            basis.append((r.bit_length() - 1, r, comb))
    x = 0
    for piv, b, c in sorted(basis, key=lambda t: -t[0]):
        if target >> piv & 1:
            target ^= b
            x ^= c
    return x if target == 0 else None


def kernel_basis(rows: list[int], nvars: int) -> list[int]:
    """Basis of ``{x : <row, x> = 0 for every row}``."""
    ech = echelon(rows)
    pivots = {piv: row for piv, row in ech}
    basis = []
    for free in range(nvars):
        if free in pivots:
            continue
        v = 1 << free
        for piv, row in pivots.items():
            if row >> free & 1:
                v |= 1 << piv
        basis.append(v)
    return basis


def kernel(rows: list[int], nvars: int) -> set[int]:
    """All solutions of the homogeneous system (size ``2**(nvars - rank)``)."""
    basis = kernel_basis(rows, nvars)
    out = set()
    for coeffs in product((0, 1), repeat=len(basis)):
        v = 0
        for c, b in zip(coeffs, basis):
            if c:
                v ^= b
        out.add(v)
    return out
