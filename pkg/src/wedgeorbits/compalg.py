"""Composition algebras as executable structures: the Cayley-Dickson tower,
the Zorn vector-matrix algebra, norms and conjugation, split detection, the
hermitian octonion-norm construction, and the trace-zero orbit classifier.

Octonions produced by classification are represented by norm forms only
(isometry of norms decides isomorphism); multiplication tables exist for the
base field, CD doublings and Zorn.
"""

from . import linalg
from .fields import ZeroInput
from .quadforms import QuadraticForm, octonion_norm_from_hermitian  # noqa: F401


class NonAssociativeBase(Exception):
    pass


class NotTraceless(Exception):
    pass


class ZeroVector(Exception):
    pass


class CompositionAlgebra:
    """Structure constants over a field: table[i][j] = coords of e_i * e_j."""

    def __init__(self, ctx, table, unit, norm, provenance):
        self.ctx = ctx
        self.dim = len(table)
        self.table = table
        self.unit = unit
        self.norm = norm
        self.provenance = provenance

    def el(self, coords):
        return [self.ctx.el(c) for c in coords]

    def mul(self, x, y):
        ctx = self.ctx
        out = [ctx.zero] * self.dim
        for i, xi in enumerate(x):
            if xi == ctx.zero:
                continue
            for j, yj in enumerate(y):
                if yj == ctx.zero:
                    continue
                c = xi * yj
                for k, t in enumerate(self.table[i][j]):
                    if t != ctx.zero:
                        out[k] = out[k] + c * t
        return out

    def norm_value(self, x):
        return self.norm.evaluate(x)

    def bilinear(self, x, y):
        return self.norm.bilinear(x, y)

    def conj(self, x):
        """x -> b_N(x, 1) 1 - x."""
        c = self.bilinear(x, self.unit)
        return [c * u - v for u, v in zip(self.unit, x)]

    def trace(self, x):
        return self.bilinear(x, self.unit)

    def is_split(self):
        if self.dim < 2:
            raise ValueError("split/division dichotomy needs dim >= 2")
        return self.norm.is_isotropic()

    def random_element(self, rng, height=2):
        return [self.ctx.random(rng, height) for _ in range(self.dim)]

    def __repr__(self):
        return "CompositionAlgebra(dim=%d, %s)" % (self.dim, self.provenance)


def base_algebra(ctx):
    """The field itself with norm x^2."""
    return CompositionAlgebra(
        ctx,
        [[[ctx.one]]],
        [ctx.one],
        QuadraticForm.diagonal(ctx, [ctx.one]),
        ("base",),
    )


def cayley_dickson(alg, lam):
    """Doubling D + Da with (x,y)(u,v) = (xu + lam conj(v) y, v x + y conj(u))."""
    ctx = alg.ctx
    lam = ctx.el(lam)
    if lam == ctx.zero:
        raise ZeroInput("doubling scalar must be nonzero")
    if alg.dim >= 8:
        raise NonAssociativeBase("can only double an associative algebra (dim <= 4)")
    n = alg.dim

    def emb(v, hi):
        out = [ctx.zero] * (2 * n)
        for i, c in enumerate(v):
            out[i + (n if hi else 0)] = c
        return out

    basis = [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]
    conj_b = [alg.conj(b) for b in basis]
    table = [[None] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            # (e_i, 0)(e_j, 0) = (e_i e_j, 0)
            table[i][j] = emb(alg.mul(basis[i], basis[j]), False)
            # (e_i, 0)(0, e_j) = (0, e_j e_i)
            table[i][n + j] = emb(alg.mul(basis[j], basis[i]), True)
            # (0, e_i)(e_j, 0) = (0, e_i conj(e_j))
            table[n + i][j] = emb(alg.mul(basis[i], conj_b[j]), True)
            # (0, e_i)(0, e_j) = (lam conj(e_j) e_i, 0)
            prod = alg.mul(conj_b[j], basis[i])
            table[n + i][n + j] = emb([lam * c for c in prod], False)
    gram = linalg.zeros(ctx, 2 * n, 2 * n)
    for i in range(n):
        for j in range(n):
            gram[i][j] = alg.norm.gram[i][j]
            gram[n + i][n + j] = -lam * alg.norm.gram[i][j]
    return CompositionAlgebra(
        ctx,
        table,
        emb(alg.unit, False),
        QuadraticForm(ctx, gram),
        alg.provenance + (lam,),
    )


def cd_tower(ctx, lams):
    """Repeated doubling of the base field by the given scalars."""
    alg = base_algebra(ctx)
    for lam in lams:
        alg = cayley_dickson(alg, lam)
    return alg


def _cross3(x, y):
    return [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ]


def zorn(ctx):
    """Split octonions as 2x2 vector matrices (a, x; y, b), norm ab - x.y.

    Coordinates: [a, x1, x2, x3, y1, y2, y3, b].
    """
    z, o = ctx.zero, ctx.one

    def mul_coords(u, v):
        a, x, y, b = u[0], u[1:4], u[4:7], u[7]
        a2, x2, y2, b2 = v[0], v[1:4], v[4:7], v[7]
        dot = lambda s, t: s[0] * t[0] + s[1] * t[1] + s[2] * t[2]
        # sign of the y x y' term is forced by N(uv) = N(u)N(v)
        na = a * a2 + dot(x, y2)
        nx = [a * x2[i] + b2 * x[i] - c for i, c in enumerate(_cross3(y, y2))]
        ny = [a2 * y[i] + b * y2[i] + c for i, c in enumerate(_cross3(x, x2))]
        nb = b * b2 + dot(y, x2)
        return [na] + nx + ny + [nb]

    basis = [[o if i == j else z for j in range(8)] for i in range(8)]
    table = [[mul_coords(basis[i], basis[j]) for j in range(8)] for i in range(8)]
    half = o / (o + o)
    gram = linalg.zeros(ctx, 8, 8)
    gram[0][7] = gram[7][0] = half
    for i in range(3):
        gram[1 + i][4 + i] = gram[4 + i][1 + i] = -half
    unit = [o, z, z, z, z, z, z, o]
    return CompositionAlgebra(ctx, table, unit, QuadraticForm(ctx, gram), ("zorn",))


def traceless_subspace(alg):
    """Basis of the orthogonal complement of the unit, with the restricted form."""
    ctx = alg.ctx
    basis = [[ctx.one if i == j else ctx.zero for j in range(alg.dim)] for i in range(alg.dim)]
    row = [[alg.bilinear(b, alg.unit) for b in basis]]
    vecs = linalg.kernel_basis(ctx, row)
    g = alg.norm.gram
    gram = [
        [sum(u[i] * g[i][j] * v[j] for i in range(alg.dim) for j in range(alg.dim)) for v in vecs]
        for u in vecs
    ]
    return vecs, QuadraticForm(ctx, gram)


def traceless_classify(alg, v, mode="plain"):
    """Orbit data of a trace-zero element: the norm value (complete invariant
    under Aut(C)), or its square class in PV mode."""
    ctx = alg.ctx
    if all(c == ctx.zero for c in v):
        raise ZeroVector("classification needs a nonzero element")
    if alg.bilinear(v, alg.unit) != ctx.zero:
        raise NotTraceless("element is not orthogonal to the unit")
    val = alg.norm_value(v)
    if mode == "plain":
        return val
    if mode == "PV":
        if val == ctx.zero:
            raise ZeroInput("PV mode needs a semi-stable element (nonzero norm)")
        return ctx.square_class(val)
    raise ValueError("mode must be 'plain' or 'PV'")
