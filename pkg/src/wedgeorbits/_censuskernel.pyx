# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled census kernel: classifies contiguous index ranges of the tuple
coordinate space over F_p.  Same contract as the pure kernel; the driver
cross-checks the two on shared ranges."""

import numpy as np


cdef inline long long _mod(long long x, long long p) nogil:
    x = x % p
    if x < 0:
        x += p
    return x


cdef inline void _adj_sym(long long* m, long long* out, long long p) nogil:
    # symmetric 3x3 packed as (11, 22, 33, 12, 13, 23); out must not alias m
    out[0] = _mod(m[1] * m[2] - m[5] * m[5], p)
    out[1] = _mod(m[0] * m[2] - m[4] * m[4], p)
    out[2] = _mod(m[0] * m[1] - m[3] * m[3], p)
    out[3] = _mod(m[4] * m[5] - m[3] * m[2], p)
    out[4] = _mod(m[3] * m[5] - m[4] * m[1], p)
    out[5] = _mod(m[3] * m[4] - m[5] * m[0], p)


cdef inline long long _det_sym(long long* m, long long p) nogil:
    cdef long long t = m[0] * m[1] % p * m[2] + 2 * (m[3] * m[4] % p) * m[5]
    t -= m[0] * m[5] % p * m[5] + m[1] * m[4] % p * m[4] + m[2] * m[3] % p * m[3]
    return _mod(t, p)


cdef inline long long _tr_sym(long long* m, long long* n, long long p) nogil:
    cdef long long t = m[0] * n[0] + m[1] * n[1] + m[2] * n[2]
    t += 2 * (m[3] * n[3] + m[4] * n[4] + m[5] * n[5])
    return _mod(t, p)


cdef int _rank_det(long long* g, long long p, long long* det_out,
                   long long* inv_table) nogil:
    # symmetric congruence elimination on a 14x14 matrix (row-major, in place)
    cdef int n = 14
    cdef int rank = 0
    cdef int k, i, j, piv, ri, rj
    cdef long long d, f, tmp
    cdef long long det = 1
    for k in range(n):
        piv = -1
        for i in range(k, n):
            if g[i * n + i] != 0:
                piv = i
                break
        if piv < 0:
            ri = -1
            for i in range(k, n):
                for j in range(i + 1, n):
                    if g[i * n + j] != 0:
                        ri = i
                        rj = j
                        break
                if ri >= 0:
                    break
            if ri < 0:
                break
            for j in range(n):
                g[ri * n + j] = _mod(g[ri * n + j] + g[rj * n + j], p)
            for i in range(n):
                g[i * n + ri] = _mod(g[i * n + ri] + g[i * n + rj], p)
            piv = ri
        if piv != k:
            for j in range(n):
                tmp = g[piv * n + j]
                g[piv * n + j] = g[k * n + j]
                g[k * n + j] = tmp
            for i in range(n):
                tmp = g[i * n + piv]
                g[i * n + piv] = g[i * n + k]
                g[i * n + k] = tmp
        d = g[k * n + k]
        det = det * d % p
        rank += 1
        for i in range(k + 1, n):
            if g[i * n + k] != 0:
                f = g[i * n + k] * inv_table[d] % p
                for j in range(n):
                    g[i * n + j] = _mod(g[i * n + j] - f * g[k * n + j], p)
                for j in range(n):
                    g[j * n + i] = _mod(g[j * n + i] - f * g[j * n + k], p)
    det_out[0] = det
    return rank


def census_range(long long p, long long start, long long stop,
                 long long inv4, long long rx0, long long rx1, long long lnr,
                 long long[::1] chi,
                 int[::1] nz_mon, int[::1] nz_gram, long long[::1] nz_val,
                 long long[::1] mon_k, long long[::1] mon_l):
    """Classify linear indices [start, stop); returns count arrays."""
    fibers_arr = np.zeros(p, dtype=np.int64)
    x1_arr = np.zeros(p, dtype=np.int64)
    core_arr = np.zeros(15 * 2, dtype=np.int64)
    inv_arr = np.zeros(p, dtype=np.int64)
    cdef long long i
    for i in range(1, p):
        inv_arr[i] = pow(int(i), int(p - 2), int(p))
    cdef long long[::1] fibers = fibers_arr
    cdef long long[::1] x1c = x1_arr
    cdef long long[::1] cores = core_arr
    cdef long long[::1] inv_table = inv_arr

    cdef long long zero_count = 0, x0_count = 0, x2_count = 0, anomalies = 0
    cdef long long idx, rem, s, j4, jval, detg, ndet, cls
    cdef int k, r, nz, nnz = nz_val.shape[0]
    cdef long long c[14]
    cdef long long a[6]
    cdef long long b[6]
    cdef long long sa[6]
    cdef long long sb[6]
    cdef long long ca[6]
    cdef long long cb[6]
    cdef long long t1[6]
    cdef long long t2[6]
    cdef long long mons[105]
    cdef long long gram[196]
    cdef bint gradnz, iszero

    rem = start
    for k in range(14):
        c[k] = rem % p
        rem //= p

    with nogil:
        for idx in range(start, stop):
            # coords: x0 y0 a11 a22 a33 a12 a13 a23 b11 b22 b33 b12 b13 b23
            for k in range(6):
                a[k] = c[2 + k]
                b[k] = c[8 + k]
            _adj_sym(a, sa, p)
            _adj_sym(b, sb, p)
            s = _mod(c[0] * c[1] - _tr_sym(a, b, p), p)
            j4 = _mod(4 * _mod(c[0] * _det_sym(b, p) + c[1] * _det_sym(a, p)
                               + _tr_sym(sa, sb, p), p) - s * s, p)
            if j4 != 0:
                jval = j4 * inv4 % p
                fibers[jval] += 1
            else:
                iszero = True
                for k in range(14):
                    if c[k] != 0:
                        iszero = False
                        break
                if iszero:
                    zero_count += 1
                else:
                    # 2 * grad J, short-circuit on the first nonzero entry
                    gradnz = False
                    if _mod(2 * _det_sym(b, p) - s * c[1], p) != 0:
                        gradnz = True
                    elif _mod(2 * _det_sym(a, p) - s * c[0], p) != 0:
                        gradnz = True
                    else:
                        # cross(A, B#) = adj(A + B#) - adj(A) - adj(B#), same for B
                        for k in range(6):
                            t1[k] = _mod(a[k] + sb[k], p)
                            t2[k] = _mod(b[k] + sa[k], p)
                        _adj_sym(t1, ca, p)
                        _adj_sym(t2, cb, p)
                        _adj_sym(sb, t1, p)
                        _adj_sym(sa, t2, p)
                        for k in range(6):
                            ca[k] = _mod(ca[k] - sa[k] - t1[k], p)
                            cb[k] = _mod(cb[k] - sb[k] - t2[k], p)
                        for k in range(6):
                            if _mod(2 * c[1] * sa[k] % p + 2 * ca[k] + s * b[k], p) != 0:
                                gradnz = True
                                break
                            if _mod(2 * c[0] * sb[k] % p + 2 * cb[k] + s * a[k], p) != 0:
                                gradnz = True
                                break
                    # covariant Gram (16-scaled) from the sparse tensor
                    for k in range(105):
                        mons[k] = c[mon_k[k]] * c[mon_l[k]] % p
                    for k in range(196):
                        gram[k] = 0
                    for nz in range(nnz):
                        gram[nz_gram[nz]] += nz_val[nz] * mons[nz_mon[nz]]
                    for k in range(196):
                        gram[k] = _mod(gram[k], p)
                    r = _rank_det(gram, p, &detg, &inv_table[0])
                    if gradnz:
                        x2_count += 1
                        cls = 0 if chi[detg] == 1 else 1
                        cores[r * 2 + cls] += 1
                    elif r == rx1:
                        ndet = _mod(-detg, p)
                        cls = 1 if chi[ndet] == 1 else lnr
                        x1c[cls] += 1
                    elif r == rx0:
                        x0_count += 1
                    else:
                        anomalies += 1
            # increment the base-p digit counter
            for k in range(14):
                c[k] += 1
                if c[k] < p:
                    break
                c[k] = 0

    return {
        "zero": int(zero_count),
        "x0": int(x0_count),
        "x1": x1_arr,
        "x2": int(x2_count),
        "x2_core_counts": core_arr,
        "fibers": fibers_arr,
        "anomalies": int(anomalies),
    }
