"""Small exact matrix helpers over a FieldContext (lists of lists of elements)."""


class SingularMatrix(Exception):
    pass


def zeros(ctx, m, n):
    return [[ctx.zero for _ in range(n)] for _ in range(m)]


def identity(ctx, n):
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(a, v):
    return [sum(r * x for r, x in zip(row, v)) for row in a]


def transpose(a):
    return [list(row) for row in zip(*a)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_matrix(ctx, a):
    return all(x == ctx.zero for row in a for x in row)


def is_symmetric(a):
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def det(ctx, a):
    """Determinant by fraction-free-ish Gaussian elimination (exact division fields)."""
    n = len(a)
    m = [list(row) for row in a]
    sign = ctx.one
    d = ctx.one
    for c in range(n):
        piv = None
        for r in range(c, n):
            if m[r][c] != ctx.zero:
                piv = r
                break
        if piv is None:
            return ctx.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        d = d * m[c][c]
        inv = ctx.one / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f != ctx.zero:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return sign * d


def mat_inv(ctx, a):
    n = len(a)
    m = [list(row) + list(idr) for row, idr in zip(a, identity(ctx, n))]
    for c in range(n):
        piv = None
        for r in range(c, n):
            if m[r][c] != ctx.zero:
                piv = r
                break
        if piv is None:
            raise SingularMatrix("matrix not invertible")
        m[c], m[piv] = m[piv], m[c]
        inv = ctx.one / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != ctx.zero:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def rank(ctx, a):
    if not a:
        return 0
    m = [list(row) for row in a]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i][c] != ctx.zero:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ctx.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != ctx.zero:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def congruence_diagonalize(ctx, g):
    """P with P g P^t diagonal, zero diagonal entries trailing.

    Symmetric Gaussian congruence; needs char != 2 for the off-diagonal repair
    step.  Deterministic: first usable pivot in row order.
    Returns (diag_entries, P).
    """
    n = len(g)
    m = [list(row) for row in g]
    p = identity(ctx, n)

    def row_op(dst, src, f):
        # row dst += f * row src, then the same on columns (congruence)
        m[dst] = [x + f * y for x, y in zip(m[dst], m[src])]
        for i in range(n):
            m[i][dst] = m[i][dst] + f * m[i][src]
        p[dst] = [x + f * y for x, y in zip(p[dst], p[src])]

    def swap(i, j):
        m[i], m[j] = m[j], m[i]
        for r in range(n):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        p[i], p[j] = p[j], p[i]

    done = 0
    for k in range(n):
        # find a nonzero diagonal pivot at or below position done
        piv = None
        for i in range(done, n):
            if m[i][i] != ctx.zero:
                piv = i
                break
        if piv is None:
            # repair: some off-diagonal entry can create a diagonal pivot
            found = False
            for i in range(done, n):
                for j in range(i + 1, n):
                    if m[i][j] != ctx.zero:
                        row_op(i, j, ctx.one)  # diagonal becomes 2*m[i][j]
                        piv = i
                        found = True
                        break
                if found:
                    break
            if not found:
                break  # remaining block is zero
        if piv != done:
            swap(done, piv)
        d = m[done][done]
        inv = ctx.one / d
        for i in range(done + 1, n):
            if m[i][done] != ctx.zero:
                row_op(i, done, -m[i][done] * inv)
        done += 1

    diag = [m[i][i] for i in range(n)]
    return diag, p


def kernel_basis(ctx, a):
    """Basis of the right kernel of a (list of row vectors)."""
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    m = [list(row) for row in a]
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i][c] != ctx.zero:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ctx.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != ctx.zero:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ctx.zero] * cols
        v[fc] = ctx.one
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis
