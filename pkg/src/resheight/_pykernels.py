"""Pure-Python reference kernels for banded minors and the Laplace expansion.

These are the fallback when the compiled ``_ckernels`` extension is not
available, and the reference it is benchmarked and tested against.

F-block monomials are packed into a single int, ``sum(e_j * base**j)`` with
``base = n + 1``; every exponent of an n x n minor is at most n.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Dict, Iterable, List, Sequence, Tuple

PackedPoly = Dict[int, int]


def perm_sign(seq: Sequence[int]) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv & 1 else 1


def band_minor(m: int, n: int, removed: Sequence[int]) -> PackedPoly:
    """Determinant of the f-block of the Sylvester matrix with ``removed`` rows deleted.

    The f-block has ``m + n`` rows and ``n`` columns, column ``c`` holding
    ``f_j`` at row ``c + j``.  Columns are swept left to right; the state is
    the bitmask of consumed rows inside the window ``[c, c + m]``.  Deleted
    rows are pre-marked as consumed so they never take a column.
    """
    nrows = m + n
    rem = [False] * (nrows + 1)
    for r in removed:
        rem[r] = True
    base = n + 1
    steps = [base ** j for j in range(m + 1)]
    full = (1 << (m + 1)) - 1

    def removed_window(c: int) -> int:
        bits = 0
        for j in range(m + 1):
            if c + j < nrows and rem[c + j]:
                bits |= 1 << j
        return bits

    states: Dict[int, PackedPoly] = {removed_window(0): {0: 1}}
    for c in range(n):
        rw = removed_window(c)
        incoming_bit = (1 << m) if (c + 1 + m < nrows and rem[c + 1 + m]) else 0
        last = c == n - 1
        nxt: Dict[int, PackedPoly] = {}
        for mask, poly in states.items():
            chosen = mask & ~rw
            for j in range(m + 1):
                bit = 1 << j
                if mask & bit:
                    continue
                new = mask | bit
                if last:
                    if new != full:
                        continue
                    key = 0
                else:
                    if not new & 1:
                        continue
                    key = (new >> 1) | incoming_bit
                neg = bin(chosen >> (j + 1)).count("1") & 1
                step = steps[j]
                target = nxt.get(key)
                if target is None:
                    target = nxt[key] = {}
                if neg:
                    for mon, v in poly.items():
                        k2 = mon + step
                        target[k2] = target.get(k2, 0) - v
                else:
                    for mon, v in poly.items():
                        k2 = mon + step
                        target[k2] = target.get(k2, 0) + v
        states = nxt
        if not states:
            return {}
    if n == 0:
        return {0: 1}
    out = states.get(0, {})
    return {k: v for k, v in out.items() if v}


def unpack(key: int, base: int, width: int) -> Tuple[int, ...]:
    out = []
    for _ in range(width):
        key, e = divmod(key, base)
        out.append(e)
    return tuple(out)


def g_minor(m: int, n: int, rows: Sequence[int]) -> Dict[Tuple[int, ...], int]:
    """Symbolic m x m minor of the g-block on ``rows``; keys are sorted g-index tuples."""
    out: Dict[Tuple[int, ...], int] = {}
    for perm in permutations(range(m)):
        idx = []
        for i, j in enumerate(perm):
            d = rows[i] - j
            if d < 0 or d > n:
                break
            idx.append(d)
        else:
            key = tuple(sorted(idx))
            out[key] = out.get(key, 0) + perm_sign(perm)
    return {k: v for k, v in out.items() if v}


def laplace_sign(m: int, n: int, rows: Iterable[int]) -> int:
    parity = sum(rows) + m * n + m * (m - 1) // 2
    return -1 if parity & 1 else 1


def laplace_expand(m: int, n: int) -> Dict[Tuple[int, ...], PackedPoly]:
    """Resultant grouped by g-monomial: ``{sorted g indices: packed f-polynomial}``."""
    nrows = m + n
    acc: Dict[Tuple[int, ...], PackedPoly] = {}
    for rows in combinations(range(nrows), m):
        gm = g_minor(m, n, rows)
        if not gm:
            continue
        fm = band_minor(m, n, rows)
        if not fm:
            continue
        s = laplace_sign(m, n, rows)
        for gk, gc in gm.items():
            target = acc.get(gk)
            if target is None:
                target = acc[gk] = {}
            mult = s * gc
            for fk, fc in fm.items():
                target[fk] = target.get(fk, 0) + mult * fc
    out = {}
    for gk, poly in acc.items():
        poly = {k: v for k, v in poly.items() if v}
        if poly:
            out[gk] = poly
    return out


def slice_placements(m: int, n: int, gidx: Sequence[int]) -> List[Tuple[Tuple[int, ...], int]]:
    """Row sets and signs through which the g-monomial ``gidx`` enters the determinant.

    Returns ``(rows, sign)`` pairs where ``sign`` already folds in the
    Laplace sign and the sign of the column permutation.
    """
    out = []
    for seq in set(permutations(gidx)):
        rows = [a + j for j, a in enumerate(seq)]
        if len(set(rows)) < m or max(rows) >= m + n:
            continue
        order = sorted(range(m), key=lambda j: rows[j])
        # order[i] is the column taken by the i-th smallest row
        sign = perm_sign(order) * laplace_sign(m, n, rows)
        out.append((tuple(sorted(rows)), sign))
    out.sort()
    return out
