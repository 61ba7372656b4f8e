"""Pure-Python census kernel (numpy-vectorized) and the shared integer tables.

Works on the 14 tuple coordinates (COORD_NAMES order).  All quantities are
rescaled by perfect squares so that everything stays integral: 4J, 2*grad and
the 16-scaled covariant Gram; ranks and quadratic characters are unaffected.
The compiled kernel consumes the same tables.
"""

import numpy as np

# coordinate layout: x0 y0 a11 a22 a33 a12 a13 a23 b11 b22 b33 b12 b13 b23
_A = (2, 3, 4, 5, 6, 7)
_B = (8, 9, 10, 11, 12, 13)


def _sym_from(c, base):
    m11, m22, m33, m12, m13, m23 = (c[i] for i in base)
    return ((m11, m12, m13), (m12, m22, m23), (m13, m23, m33))


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _adj3(m):
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )


def _tr(m, n):
    return sum(m[i][j] * n[j][i] for i in range(3) for j in range(3))


def _madd(m, n):
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(m, n))


def _cross(m, n):
    s = _adj3(_madd(m, n))
    am, an = _adj3(m), _adj3(n)
    return tuple(tuple(s[i][j] - am[i][j] - an[i][j] for j in range(3)) for i in range(3))


def int_j4(c):
    """4*J at integer coordinates."""
    a = _sym_from(c, _A)
    b = _sym_from(c, _B)
    s = c[0] * c[1] - _tr(a, b)
    return 4 * (c[0] * _det3(b) + c[1] * _det3(a) + _tr(_adj3(a), _adj3(b))) - s * s


def int_grad2(c):
    """2*grad J at integer coordinates, in the 14-coordinate layout."""
    a = _sym_from(c, _A)
    b = _sym_from(c, _B)
    sa, sb = _adj3(a), _adj3(b)
    s = c[0] * c[1] - _tr(a, b)
    dx0 = 2 * _det3(b) - s * c[1]
    dy0 = 2 * _det3(a) - s * c[0]
    ca = _cross(a, sb)
    cb = _cross(b, sa)
    da = tuple(
        tuple(2 * c[1] * sa[i][j] + 2 * ca[i][j] + s * b[i][j] for j in range(3)) for i in range(3)
    )
    db = tuple(
        tuple(2 * c[0] * sb[i][j] + 2 * cb[i][j] + s * a[i][j] for j in range(3)) for i in range(3)
    )
    return (
        dx0, dy0,
        da[0][0], da[1][1], da[2][2], da[0][1], da[0][2], da[1][2],
        db[0][0], db[1][1], db[2][2], db[0][1], db[0][2], db[1][2],
    )


def int_q4(x, y):
    """4 * (t^2-coefficient of J(x + t y)) at integer coordinates."""
    x0, y0 = x[0], x[1]
    u0, v0 = y[0], y[1]
    a, b = _sym_from(x, _A), _sym_from(x, _B)
    u, v = _sym_from(y, _A), _sym_from(y, _B)
    sa, sb, su, sv = _adj3(a), _adj3(b), _adj3(u), _adj3(v)
    s = x0 * y0 - _tr(a, b)
    s1 = x0 * v0 + u0 * y0 - _tr(a, v) - _tr(u, b)
    s2 = u0 * v0 - _tr(u, v)
    main = (
        x0 * _tr(b, sv)
        + u0 * _tr(sb, v)
        + y0 * _tr(a, su)
        + v0 * _tr(sa, u)
        + _tr(sa, sv)
        + _tr(_cross(a, u), _cross(b, v))
        + _tr(su, sb)
    )
    return 4 * main - s1 * s1 - 2 * s * s2


_TENSOR16 = None


def q16_tensor():
    """(105, 196) int64 array: 16*Gram entries of the covariant as quadratic
    forms in the point, over the 105 monomials x_k x_l (k <= l, row-major)."""
    global _TENSOR16
    if _TENSOR16 is not None:
        return _TENSOR16

    def gram16(xc):
        e = [[0] * 14 for _ in range(14)]
        for i in range(14):
            e[i][i] = 1
        basis = [tuple(row) for row in e]
        diag4 = [int_q4(xc, basis[i]) for i in range(14)]
        g = [[0] * 14 for _ in range(14)]
        for i in range(14):
            g[i][i] = 4 * diag4[i]
            for j in range(i + 1, 14):
                pair = tuple(a + b for a, b in zip(basis[i], basis[j]))
                g[i][j] = g[j][i] = 2 * (int_q4(xc, pair) - diag4[i] - diag4[j])
        return g

    zero = (0,) * 14
    singles = []
    for k in range(14):
        xc = list(zero)
        xc[k] = 1
        singles.append(gram16(tuple(xc)))
    rows = []
    for k in range(14):
        for l in range(k, 14):
            if k == l:
                g = singles[k]
            else:
                xc = [0] * 14
                xc[k] = xc[l] = 1
                gkl = gram16(tuple(xc))
                g = [
                    [gkl[i][j] - singles[k][i][j] - singles[l][i][j] for j in range(14)]
                    for i in range(14)
                ]
            rows.append(np.array(g, dtype=np.int64).reshape(196))
    _TENSOR16 = np.stack(rows)
    return _TENSOR16


def monomial_index_pairs():
    return [(k, l) for k in range(14) for l in range(k, 14)]


def decode_indices(start, stop, p):
    """Digits (base p, little-endian) of the linear indices in [start, stop)."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, 14), dtype=np.int64)
    for k in range(14):
        out[:, k] = idx % p
        idx //= p
    return out


def batch_j4(c, p):
    """Vectorized 4*J mod p for a coordinate batch of shape (N, 14)."""
    cols = [c[:, k] for k in range(14)]

    def sym(base):
        m11, m22, m33, m12, m13, m23 = (cols[i] for i in base)
        return ((m11, m12, m13), (m12, m22, m23), (m13, m23, m33))

    a, b = sym(_A), sym(_B)
    s = (cols[0] * cols[1] - _tr(a, b)) % p
    val = 4 * (cols[0] * _det3(b) % p + cols[1] * _det3(a) % p + _tr(_adj3(a), _adj3(b))) - s * s
    return val % p


def batch_grad2_nonzero(c, p):
    """Boolean mask: 2*grad J != 0 mod p for a coordinate batch."""
    cols = [c[:, k] for k in range(14)]

    def sym(base):
        m11, m22, m33, m12, m13, m23 = (cols[i] for i in base)
        return ((m11, m12, m13), (m12, m22, m23), (m13, m23, m33))

    a, b = sym(_A), sym(_B)
    sa, sb = _adj3(a), _adj3(b)
    s = (cols[0] * cols[1] - _tr(a, b)) % p
    nz = ((2 * _det3(b) - s * cols[1]) % p) != 0
    nz |= ((2 * _det3(a) - s * cols[0]) % p) != 0
    ca, cb = _cross(a, sb), _cross(b, sa)
    for i in range(3):
        for j in range(i, 3):
            nz |= ((2 * cols[1] * sa[i][j] + 2 * ca[i][j] + s * b[i][j]) % p) != 0
            nz |= ((2 * cols[0] * sb[i][j] + 2 * cb[i][j] + s * a[i][j]) % p) != 0
    return nz


def batch_gram16(c, p):
    """(N, 14, 14) covariant Grams (16-scaled) mod p for a coordinate batch."""
    pairs = monomial_index_pairs()
    mons = np.empty((c.shape[0], len(pairs)), dtype=np.int64)
    for t, (k, l) in enumerate(pairs):
        mons[:, t] = c[:, k] * c[:, l] % p
    flat = mons @ (q16_tensor() % p)
    return (flat % p).reshape(-1, 14, 14)


def batch_rank_det(grams, p):
    """Symmetric elimination mod p on a batch: (ranks, core determinants).

    Congruence pivoting: nonzero diagonal pivot, else an off-diagonal repair
    (row/col addition doubles the entry onto the diagonal; p is odd).
    """
    g = grams % p
    n_mat, n = g.shape[0], g.shape[1]
    inv = np.array([0] + [pow(t, p - 2, p) for t in range(1, p)], dtype=np.int64)
    rank = np.zeros(n_mat, dtype=np.int64)
    det = np.ones(n_mat, dtype=np.int64)
    rows = np.arange(n_mat)
    for k in range(n):
        sub_diag = g[:, range(k, n), range(k, n)]
        has_diag = (sub_diag != 0).any(axis=1)
        # off-diagonal repair for matrices with zero active diagonal
        need = ~has_diag
        if need.any():
            idx = np.where(need)[0]
            sub = g[idx][:, k:, k:]
            m = n - k
            iu, ju = np.triu_indices(m, 1)
            if iu.size:
                flat = sub[:, iu, ju]
                any_off = (flat != 0).any(axis=1)
                if any_off.any():
                    sel = idx[any_off]
                    first = np.argmax(flat[any_off] != 0, axis=1)
                    ri = iu[first] + k
                    rj = ju[first] + k
                    g[sel, ri, :] = (g[sel, ri, :] + g[sel, rj, :]) % p
                    g[sel, :, ri] = (g[sel, :, ri] + g[sel, :, rj]) % p
        sub_diag = g[:, range(k, n), range(k, n)]
        has_diag = (sub_diag != 0).any(axis=1)
        if not has_diag.any():
            break
        act = np.where(has_diag)[0]
        piv = np.argmax(sub_diag[act] != 0, axis=1) + k
        # swap pivot row/col into position k
        gsel = g[act]
        tmp = gsel[rows[: len(act)], piv, :].copy()
        gsel[rows[: len(act)], piv, :] = gsel[:, k, :]
        gsel[:, k, :] = tmp
        tmp = gsel[rows[: len(act)], :, piv].copy()
        gsel[rows[: len(act)], :, piv] = gsel[:, :, k]
        gsel[:, :, k] = tmp
        d = gsel[:, k, k]
        det[act] = det[act] * d % p
        rank[act] += 1
        f = gsel[:, k + 1 :, k] * inv[d][:, None] % p
        gsel[:, k + 1 :, :] = (gsel[:, k + 1 :, :] - f[:, :, None] * gsel[:, k, :][:, None, :]) % p
        gsel[:, :, k + 1 :] = (gsel[:, :, k + 1 :] - f[:, None, :] * gsel[:, :, k][:, :, None]) % p
        g[act] = gsel
    return rank, det % p


def census_chunk(p, start, stop, tables):
    """Classify linear indices [start, stop); returns plain-int count arrays.

    tables: dict with inv4, rx0, rx1, chi (length-p quadratic character,
    values 1/0/-1), lnr (least nonresidue).
    """
    return classify_coords(p, decode_indices(start, stop, p), tables)


def classify_coords(p, c, tables):
    """Classify an explicit (N, 14) coordinate batch mod p."""
    inv4 = tables["inv4"]
    rx0, rx1 = tables["rx0"], tables["rx1"]
    chi = tables["chi"]
    lnr = tables["lnr"]
    j = batch_j4(c, p) * inv4 % p
    fibers = np.bincount(j, minlength=p)
    fibers[0] = 0  # contract: fibers[i] counts J = i for i >= 1 only
    zero_count = int(np.count_nonzero((c == 0).all(axis=1)))
    jzero = j == 0
    cz = c[jzero]
    nonzero_mask = ~(cz == 0).all(axis=1)
    gradnz = batch_grad2_nonzero(cz, p)
    x2_mask = gradnz & nonzero_mask
    low_mask = (~gradnz) & nonzero_mask
    x1_counts = np.zeros(p, dtype=np.int64)
    x2_cores = set()
    anomalies = 0
    x2_count = int(np.count_nonzero(x2_mask))
    if x2_count:
        ranks, dets = batch_rank_det(batch_gram16(cz[x2_mask], p), p)
        pairs = np.stack([ranks, np.where(chi[dets] == 1, 1, lnr)], axis=1)
        for r, dcls in np.unique(pairs, axis=0):
            x2_cores.add((int(r), int(dcls)))
    x0_count = 0
    if low_mask.any():
        ranks, dets = batch_rank_det(batch_gram16(cz[low_mask], p), p)
        is_x1 = ranks == rx1
        is_x0 = ranks == rx0
        anomalies += int(np.count_nonzero(~(is_x1 | is_x0)))
        x0_count = int(np.count_nonzero(is_x0))
        if is_x1.any():
            neg_det = (p - dets[is_x1]) % p
            cls = np.where(chi[neg_det] == 1, 1, lnr)
            x1_counts += np.bincount(cls, minlength=p)
    return {
        "zero": zero_count,
        "x0": x0_count,
        "x1": x1_counts,
        "x2": x2_count,
        "x2_cores": x2_cores,
        "fibers": fibers,
        "anomalies": anomalies,
    }
