# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the enumeration kernels in `_pykernels`.

Same contracts, same histogram keys; arithmetic runs in C 64-bit integers,
so the dispatcher in `kernels` only routes here when value bounds fit.
"""

import itertools


cdef long long _det_rec(long long* a, int n) noexcept:
    cdef long long buf[36]
    cdef long long total = 0
    cdef long long c
    cdef int j, r, cc, w, sgn
    if n == 1:
        return a[0]
    if n == 2:
        return a[0] * a[3] - a[1] * a[2]
    if n == 3:
        return (a[0] * (a[4] * a[8] - a[5] * a[7])
                - a[1] * (a[3] * a[8] - a[5] * a[6])
                + a[2] * (a[3] * a[7] - a[4] * a[6]))
    sgn = 1
    for j in range(n):
        c = a[j]
        if c != 0:
            w = 0
            for r in range(1, n):
                for cc in range(n):
                    if cc != j:
                        buf[w] = a[r * n + cc]
                        w += 1
            total += sgn * c * _det_rec(buf, n - 1)
        sgn = -sgn
    return total


cdef long long _per_ryser(long long* a, int n) noexcept:
    cdef long long rowsum[6]
    cdef long long total = 0
    cdef long long prod
    cdef unsigned int s, gray, gray_prev = 0, bit
    cdef int i, j, popcount = 0
    if n == 1:
        return a[0]
    for i in range(n):
        rowsum[i] = 0
    for s in range(1, (<unsigned int>1) << n):
        gray = s ^ (s >> 1)
        bit = gray ^ gray_prev
        j = 0
        while not (bit & ((<unsigned int>1) << j)):
            j += 1
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
            if prod == 0:
                break
        if (n - popcount) & 1:
            total -= prod
        else:
            total += prod
    return total


def matrix_power_histogram(values, int n, bint fix_first=False, bint permanent=False, prefix=()):
    """See `_pykernels.matrix_power_histogram`; identical contract."""
    cdef int m = len(values)
    if n < 1 or n > 6:
        raise ValueError("compiled kernel supports 1 <= n <= 6")
    if m < 1 or m > 8:
        raise ValueError("compiled kernel supports at most 8 entry values")
    cdef long long vals[8]
    cdef int i
    for i in range(m):
        vals[i] = values[i]
    cdef long long mat[36]
    cdef int free_idx[36]
    cdef int cells = 0
    cdef int r, c
    for i in range(n * n):
        mat[i] = vals[0]
    if fix_first:
        for r in range(1, n):
            for c in range(1, n):
                free_idx[cells] = r * n + c
                cells += 1
    else:
        for i in range(n * n):
            free_idx[cells] = i
            cells += 1
    cdef int plen = len(prefix)
    if plen < 0 or plen > cells:
        raise ValueError("prefix longer than the free cell count")
    cdef int digits[36]
    cdef int counts[8]
    for i in range(cells):
        digits[i] = 0
    for i in range(m):
        counts[i] = 0
    counts[0] = cells
    cdef int p
    for i in range(plen):
        p = prefix[i]
        if p < 0 or p >= m:
            raise ValueError("prefix entry out of range")
        digits[i] = p
        mat[free_idx[i]] = vals[p]
        counts[0] -= 1
        counts[p] += 1
    hist = {}
    cdef long long val
    cdef int d
    while True:
        if permanent:
            val = _per_ryser(mat, n)
        else:
            val = _det_rec(mat, n)
        if m == 1:
            key = (val,)
        elif m == 2:
            key = (val, counts[0])
        else:
            key = (val,) + tuple([counts[i] for i in range(m - 1)])
        if key in hist:
            hist[key] += 1
        else:
            hist[key] = 1
        i = cells - 1
        while i >= plen:
            d = digits[i]
            counts[d] -= 1
            d += 1
            if d < m:
                digits[i] = d
                counts[d] += 1
                mat[free_idx[i]] = vals[d]
                break
            digits[i] = 0
            counts[0] += 1
            mat[free_idx[i]] = vals[0]
            i -= 1
        else:
            break
    return hist


cdef int _sign_of_row(int* row, int n) noexcept:
    cdef int s = 1, i, j
    for i in range(n):
        for j in range(i + 1, n):
            if row[i] > row[j]:
                s = -s
    return s


cdef int _column_type_c(int* cc, int n, int u, int v, bint allow_three) noexcept:
    cdef int twos = 0, threes = 0, fours = 0, sixes = 0, nonzero = 0
    cdef int w, c
    for w in range(n):
        c = cc[w]
        if w == u:
            c += 1
        if w == v:
            c += 1
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


cdef void _descend(int j, int n, int used5, int used6, int c6, int c4, int c2, int c3,
                   int* opt_u, int* opt_v, int* opt_t, int* opt_len,
                   int* row5, int* row6, int base_sign, dict hist):
    cdef int idx, u, v, t, bu, bv, s
    if j == n:
        s = base_sign * _sign_of_row(row5, n) * _sign_of_row(row6, n)
        key = (c6, c4, c2, c3, s)
        if key in hist:
            hist[key] += 1
        else:
            hist[key] = 1
        return
    for idx in range(opt_len[j]):
        u = opt_u[j * 16 + idx]
        v = opt_v[j * 16 + idx]
        bu = 1 << u
        bv = 1 << v
        if (used5 & bu) or (used6 & bv):
            continue
        t = opt_t[j * 16 + idx]
        row5[j] = u
        row6[j] = v
        _descend(j + 1, n, used5 | bu, used6 | bv,
                 c6 + (1 if t == 0 else 0), c4 + (1 if t == 1 else 0),
                 c2 + (1 if t == 2 else 0), c3 + (1 if t == 3 else 0),
                 opt_u, opt_v, opt_t, opt_len, row5, row6, base_sign, hist)


def table_type_histogram(int n, bint allow_three=False):
    """See `_pykernels.table_type_histogram`; identical contract."""
    if n < 1 or n > 4:
        raise ValueError("table enumeration supports 1 <= n <= 4")
    perms_py = list(itertools.permutations(range(n)))
    cdef int nperm = len(perms_py)
    cdef int perms[24][4]
    cdef int psign[24]
    cdef int i, j, u, v, t
    for i in range(nperm):
        for j in range(n):
            perms[i][j] = perms_py[i][j]
        psign[i] = _sign_of_row(&perms[i][0], n)
    cdef int counts[4][4]
    for i in range(n):
        for j in range(n):
            counts[i][j] = 0
    for j in range(n):
        counts[j][j] = 1
    cdef int opt_u[64]
    cdef int opt_v[64]
    cdef int opt_t[64]
    cdef int opt_len[4]
    cdef int row5[4]
    cdef int row6[4]
    cdef int i2, i3, i4, odd, w, ok, nopt
    hist = {}
    for i2 in range(nperm):
        for j in range(n):
            counts[j][perms[i2][j]] += 1
        for i3 in range(nperm):
            for j in range(n):
                counts[j][perms[i3][j]] += 1
            for i4 in range(nperm):
                for j in range(n):
                    counts[j][perms[i4][j]] += 1
                # prune: a column with more than two odd counts cannot finish
                ok = 1
                for j in range(n):
                    odd = 0
                    for w in range(n):
                        odd += counts[j][w] & 1
                    if odd > 2:
                        ok = 0
                        break
                if ok:
                    for j in range(n):
                        nopt = 0
                        for u in range(n):
                            for v in range(n):
                                t = _column_type_c(&counts[j][0], n, u, v, allow_three)
                                if t >= 0:
                                    opt_u[j * 16 + nopt] = u
                                    opt_v[j * 16 + nopt] = v
                                    opt_t[j * 16 + nopt] = t
                                    nopt += 1
                        opt_len[j] = nopt
                        if nopt == 0:
                            ok = 0
                            break
                    if ok:
                        _descend(0, n, 0, 0, 0, 0, 0, 0,
                                 &opt_u[0], &opt_v[0], &opt_t[0], &opt_len[0],
                                 &row5[0], &row6[0],
                                 psign[i2] * psign[i3] * psign[i4], hist)
                for j in range(n):
                    counts[j][perms[i4][j]] -= 1
            for j in range(n):
                counts[j][perms[i3][j]] -= 1
        for j in range(n):
            counts[j][perms[i2][j]] -= 1
    return hist
