"""Cubic-Jordan primitives on symmetric 3x3 matrices (adjugate, cross, trace
pairing, determinant), the quartic invariant J, its gradient, and the degree-2
covariant Q_x.

J(x) = x0 N(B) + y0 N(A) + T(A#, B#) - (1/4)(x0 y0 - T(A,B))^2 in tuple
coordinates.  The gradient and Q_x come from the formal expansion of J(x + t y)
in t (coefficient extraction, valid in characteristic 3); the gradient also has
closed forms which the tests check against the expansion.
"""

from . import linalg
from .wedgerep import XTuple
from .quadforms import QuadraticForm


class OutsideSlice(Exception):
    pass


def adjoint(m):
    """Adjugate of a 3x3 matrix (polynomial in the entries, no inversion)."""
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return [
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ]


def cross(m1, m2):
    """Polarization of the adjugate: (M1+M2)# - M1# - M2#."""
    s = linalg.mat_add(m1, m2)
    return linalg.mat_sub(linalg.mat_sub(adjoint(s), adjoint(m1)), adjoint(m2))


def trace_pair(m1, m2):
    """T(M1, M2) = trace(M1 M2)."""
    return sum(m1[i][j] * m2[j][i] for i in range(3) for j in range(3))


def norm3(m):
    """Determinant of a 3x3 matrix, expanded."""
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _j_value(x0, y0, a, b, quarter):
    s = x0 * y0 - trace_pair(a, b)
    return x0 * norm3(b) + y0 * norm3(a) + trace_pair(adjoint(a), adjoint(b)) - quarter * s * s


def quarter_of(ctx):
    four = ctx.one + ctx.one + ctx.one + ctx.one
    return ctx.one / four


def j_invariant(t: XTuple):
    """The quartic invariant at a tuple point."""
    return _j_value(t.x0, t.y0, t.a, t.b, quarter_of(t.ctx))


class TPoly:
    """Dense polynomial in one variable t over the field; degree <= 4 here."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = tuple(coeffs)

    def _zero(self):
        return self.c[0] * 0

    def _lift(self, other):
        if isinstance(other, TPoly):
            return other
        return TPoly((other,))

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.c), len(o.c))
        z = self._zero()
        a = list(self.c) + [z] * (n - len(self.c))
        for i, x in enumerate(o.c):
            a[i] = a[i] + x
        return TPoly(a)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __neg__(self):
        return TPoly([-x for x in self.c])

    def __mul__(self, other):
        o = self._lift(other)
        z = self._zero()
        out = [z] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x == z:
                continue
            for j, y in enumerate(o.c):
                out[i + j] = out[i + j] + x * y
        return TPoly(out)

    __rmul__ = __mul__

    def coeff(self, k):
        return self.c[k] if k < len(self.c) else self._zero()


def j_expansion(x: XTuple, y: XTuple):
    """Coefficients [c0..c4] of J(x + t y); c0 = J(x), c4 = J(y)."""
    ctx = x.ctx
    q = quarter_of(ctx)

    def lin(u, v):
        return TPoly((u, v))

    x0 = lin(x.x0, y.x0)
    y0 = lin(x.y0, y.y0)
    a = [[lin(x.a[i][j], y.a[i][j]) for j in range(3)] for i in range(3)]
    b = [[lin(x.b[i][j], y.b[i][j]) for j in range(3)] for i in range(3)]
    p = _j_value(x0, y0, a, b, TPoly((q,)))
    return [p.coeff(k) for k in range(5)]


class Gradient:
    """T-dual gradient of J: directional derivative along y = dx0*u0 + dy0*v0 +
    T(dA, U) + T(dB, V) for y = (u0, v0, U, V)."""

    def __init__(self, ctx, dx0, dy0, da, db):
        self.ctx = ctx
        self.dx0 = dx0
        self.dy0 = dy0
        self.da = da
        self.db = db

    def is_zero(self):
        ctx = self.ctx
        return (
            self.dx0 == ctx.zero
            and self.dy0 == ctx.zero
            and linalg.is_zero_matrix(ctx, self.da)
            and linalg.is_zero_matrix(ctx, self.db)
        )

    def pair(self, y: XTuple):
        return (
            self.dx0 * y.x0
            + self.dy0 * y.y0
            + trace_pair(self.da, y.a)
            + trace_pair(self.db, y.b)
        )


def grad_j(t: XTuple):
    """Closed-form first polarization of J."""
    ctx = t.ctx
    half = ctx.one / (ctx.one + ctx.one)
    s = half * (t.x0 * t.y0 - trace_pair(t.a, t.b))
    a_sharp, b_sharp = adjoint(t.a), adjoint(t.b)
    dx0 = norm3(t.b) - s * t.y0
    dy0 = norm3(t.a) - s * t.x0
    da = linalg.mat_add(
        linalg.mat_add(linalg.mat_scale(t.y0, a_sharp), cross(t.a, b_sharp)),
        linalg.mat_scale(s, t.b),
    )
    db = linalg.mat_add(
        linalg.mat_add(linalg.mat_scale(t.x0, b_sharp), cross(t.b, a_sharp)),
        linalg.mat_scale(s, t.a),
    )
    return Gradient(ctx, dx0, dy0, da, db)


def q_cov(t: XTuple):
    """Degree-2 covariant: Gram matrix of y -> [t^2] J(x + t y) on the 14
    tuple coordinates (COORD_NAMES order).  Rank and core invariants are
    orbit-constant by equivariance."""
    ctx = t.ctx
    half = ctx.one / (ctx.one + ctx.one)
    basis = []
    for k in range(14):
        c = [ctx.zero] * 14
        c[k] = ctx.one
        basis.append(XTuple.from_coords(ctx, c))
    diag = [j_expansion(t, e)[2] for e in basis]
    gram = linalg.zeros(ctx, 14, 14)
    for i in range(14):
        gram[i][i] = diag[i]
    for i in range(14):
        for j in range(i + 1, 14):
            q_sum = j_expansion(t, basis[i].add(basis[j]))[2]
            gram[i][j] = gram[j][i] = half * (q_sum - diag[i] - diag[j])
    return QuadraticForm(ctx, gram)


# the five wedge coordinates spanning the slice X' (tuple support)
_SLICE_COORDS = {"x0", "y0", "b11", "b22", "b33"}


def j1_slice_check(t: XTuple):
    """-(1/4) J1 on the slice X' via the Pfaffian formula; must equal J."""
    ctx = t.ctx
    names = ("x0", "y0",
             "a11", "a22", "a33", "a12", "a13", "a23",
             "b11", "b22", "b33", "b12", "b13", "b23")
    for name, v in zip(names, t.coords()):
        if name not in _SLICE_COORDS and v != ctx.zero:
            raise OutsideSlice("coordinate %s is nonzero" % name)
    # e1 ^ xpart + e4 ^ ypart with xpart, ypart in wedge^2 of span{e2,e3,e5,e6};
    # coefficients as 4x4 alternating arrays indexed by (e2, e3, e5, e6)
    zero = ctx.zero
    xpart = {(0, 1): -t.x0, (2, 3): t.b[0][0]}
    ypart = {(2, 3): -t.y0, (0, 3): t.b[1][1], (2, 1): t.b[2][2]}

    def entry(w, i, j):
        if (i, j) in w:
            return w[(i, j)]
        if (j, i) in w:
            return -w[(j, i)]
        return zero

    def pf(w):
        # Pfaffian of a 4x4 alternating form: w01 w23 - w02 w13 + w03 w12
        return (
            entry(w, 0, 1) * entry(w, 2, 3)
            - entry(w, 0, 2) * entry(w, 1, 3)
            + entry(w, 0, 3) * entry(w, 1, 2)
        )

    def pairing(u, w):
        # polar of the Pfaffian
        s = (
            entry(u, 0, 1) * entry(w, 2, 3) + entry(w, 0, 1) * entry(u, 2, 3)
            - entry(u, 0, 2) * entry(w, 1, 3) - entry(w, 0, 2) * entry(u, 1, 3)
            + entry(u, 0, 3) * entry(w, 1, 2) + entry(w, 0, 3) * entry(u, 1, 2)
        )
        return s

    j1 = pairing(xpart, ypart) ** 2 - 4 * pf(xpart) * pf(ypart)
    return -quarter_of(ctx) * j1
