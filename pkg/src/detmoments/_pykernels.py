"""Pure-Python enumeration kernels.

These are the reference implementations of the two hot loops; the Cython
extension `_ckernels` implements the same contracts and must return
identical histograms (the test suite compares them).  Arbitrary-precision
Python integers make this twin overflow-proof, so the dispatcher also routes
here whenever a compiled run could exceed 64-bit bounds.

Both kernels return plain dictionaries with small-integer keys so results
from partitioned runs merge associatively.
"""

from __future__ import annotations

import itertools


def _determinant(a, n):
    """Exact integer determinant of the flat row-major n*n prefix of `a`."""
    if n == 1:
        return a[0]
    if n == 2:
        return a[0] * a[3] - a[1] * a[2]
    if n == 3:
        return (
            a[0] * (a[4] * a[8] - a[5] * a[7])
            - a[1] * (a[3] * a[8] - a[5] * a[6])
            + a[2] * (a[3] * a[7] - a[4] * a[6])
        )
    total = 0
    sign = 1
    for j in range(n):
        c = a[j]
        if c:
            minor = [a[r * n + cc] for r in range(1, n) for cc in range(n) if cc != j]
            total += sign * c * _determinant(minor, n - 1)
        sign = -sign
    return total


def _permanent(a, n):
    """Exact integer permanent via Ryser's formula with Gray-code updates."""
    if n == 1:
        return a[0]
    rowsum = [0] * n
    total = 0
    gray_prev = 0
    popcount = 0
    for s in range(1, 1 << n):
        gray = s ^ (s >> 1)
        bit = gray ^ gray_prev
        j = bit.bit_length() - 1
        if gray & bit:
            popcount += 1
            for i in range(n):
                rowsum[i] += a[i * n + j]
        else:
            popcount -= 1
            for i in range(n):
                rowsum[i] -= a[i * n + j]
        gray_prev = gray
        prod = 1
        for i in range(n):
            prod *= rowsum[i]
            if not prod:
                break
        if (n - popcount) & 1:
            total -= prod
        else:
            total += prod
    return total


def matrix_power_histogram(values, n, fix_first=False, permanent=False, prefix=()):
    """Histogram of determinant (or permanent) values over all entry fillings.

    `values` are integer entry choices.  Every free cell independently takes
    each value; with `fix_first` the first row and column are pinned to
    values[0] (sign-symmetry reduction, caller's responsibility to justify).
    `prefix` pins the first len(prefix) free cells to the given value indices
    so the state space can be partitioned across workers; histograms from a
    full prefix cover merge by key-wise addition.

    Keys are (value, count of values[0], ..., count of values[m-2]) with
    counts taken over the free cells; the last atom's count is implied.
    """
    m = len(values)
    if n < 1:
        raise ValueError("n must be >= 1")
    if m < 1:
        raise ValueError("need at least one entry value")
    values = [int(v) for v in values]
    mat = [values[0]] * (n * n)
    if fix_first:
        free = [r * n + c for r in range(1, n) for c in range(1, n)]
    else:
        free = list(range(n * n))
    cells = len(free)
    if not 0 <= len(prefix) <= cells:
        raise ValueError("prefix longer than the free cell count")
    digits = [0] * cells
    counts = [0] * m
    counts[0] = cells
    for i, p in enumerate(prefix):
        if not 0 <= p < m:
            raise ValueError("prefix entry out of range")
        digits[i] = p
        mat[free[i]] = values[p]
        counts[0] -= 1
        counts[p] += 1
    start = len(prefix)
    evaluate = _permanent if permanent else _determinant
    hist = {}
    while True:
        val = evaluate(mat, n)
        key = (val, *counts[: m - 1])
        hist[key] = hist.get(key, 0) + 1
        i = cells - 1
        while i >= start:
            d = digits[i]
            counts[d] -= 1
            d += 1
            if d < m:
                digits[i] = d
                counts[d] += 1
                mat[free[i]] = values[d]
                break
            digits[i] = 0
            counts[0] += 1
            mat[free[i]] = values[0]
            i -= 1
        else:
            break
    return hist


def _perm_sign(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _column_type(cc, u, v, allow_three):
    """Type of a column whose first-four-row counts are cc after adding u, v.

    0 = one value six times, 1 = four+two, 2 = three pairs, 3 = two triples
    (only when allow_three); -1 when the column is not a valid completion.
    """
    twos = threes = fours = sixes = nonzero = 0
    for w in range(len(cc)):
        c = cc[w] + (w == u) + (w == v)
        if c == 0:
            continue
        nonzero += 1
        if c == 2:
            twos += 1
        elif c == 3:
            threes += 1
        elif c == 4:
            fours += 1
        elif c == 6:
            sixes += 1
        else:
            return -1
    if sixes == 1 and nonzero == 1:
        return 0
    if fours == 1 and twos == 1 and nonzero == 2:
        return 1
    if twos == 3 and nonzero == 3:
        return 2
    if allow_three and threes == 2 and nonzero == 2:
        return 3
    return -1


def table_type_histogram(n, allow_three=False):
    """Signed census of 6-row permutation tables by column-type vector.

    Enumerates all 6 x n tables whose rows are permutations of 0..n-1, whose
    first row is the identity, and whose every column is a valid type column
    (six-of-a-kind; four+two; three pairs; two triples when `allow_three`).
    Returns {(c6, c4, c2, c3, sign): count}; callers multiply by n! to undo
    the fixed first row.

    Rows 2..4 are enumerated directly; the last two rows are completed
    column-by-column from the feasible ordered value pairs, which prunes the
    naive (n!)^5 walk by several orders of magnitude.
    """
    if not 1 <= n <= 4:
        raise ValueError("table enumeration supports 1 <= n <= 4")
    perms = list(itertools.permutations(range(n)))
    signs = [_perm_sign(p) for p in perms]
    sign_of = dict(zip(perms, signs))
    counts = [[0] * n for _ in range(n)]
    for j in range(n):
        counts[j][j] = 1
    hist = {}
    row5 = [0] * n
    row6 = [0] * n

    def add_row(p, d):
        for j in range(n):
            counts[j][p[j]] += d

    def complete(base_sign):
        options = []
        for j in range(n):
            cc = counts[j]
            opts = [
                (u, v, t)
                for u in range(n)
                for v in range(n)
                if (t := _column_type(cc, u, v, allow_three)) >= 0
            ]
            if not opts:
                return
            options.append(opts)

        def descend(j, used5, used6, c6, c4, c2, c3):
            if j == n:
                s = base_sign * sign_of[tuple(row5)] * sign_of[tuple(row6)]
                key = (c6, c4, c2, c3, s)
                hist[key] = hist.get(key, 0) + 1
                return
            for u, v, t in options[j]:
                bu, bv = 1 << u, 1 << v
                if used5 & bu or used6 & bv:
                    continue
                row5[j] = u
                row6[j] = v
                descend(
                    j + 1,
                    used5 | bu,
                    used6 | bv,
                    c6 + (t == 0),
                    c4 + (t == 1),
                    c2 + (t == 2),
                    c3 + (t == 3),
                )

        descend(0, 0, 0, 0, 0, 0, 0)

    def feasible():
        # with two rows left, a column with more than two odd counts is dead
        for j in range(n):
            odd = sum(c & 1 for c in counts[j])
            if odd > 2:
                return False
        return True

    for i2, p2 in enumerate(perms):
        add_row(p2, 1)
        for i3, p3 in enumerate(perms):
            add_row(p3, 1)
            for i4, p4 in enumerate(perms):
                add_row(p4, 1)
                if feasible():
                    complete(signs[i2] * signs[i3] * signs[i4])
                add_row(p4, -1)
            add_row(p3, -1)
        add_row(p2, -1)
    return hist
