"""Reduced Freudenthal algebras H3(C, Gamma): Gamma-hermitian 3x3 matrices
over a composition algebra with the Jordan product, their bilinear trace
forms, the closed trace-form decomposition, and the dimension-6/9
classification maps into quaternion classes and fiber-orbit data.

Construction requires characteristic != 2, 3; the rest of the package still
supports F_3.
"""

from .compalg import CompositionAlgebra
from .fields import ZeroInput
from .orbits import MODES, OrbitInvariant, Stratum, coarsen_scalar
from .quadforms import (
    HermitianForm,
    QuadraticForm,
    octonion_norm_from_hermitian,
    ternary_to_pfister,
)


class UnsupportedCharacteristic(Exception):
    pass


class FreudenthalAlgebra:
    """Elements are 3x3 matrices over C fixed by X -> Gamma^-1 conj(X)^t Gamma,
    with multiplication X.Y = (XY + YX)/2."""

    def __init__(self, alg: CompositionAlgebra, gamma):
        ctx = alg.ctx
        if ctx.char == 3:
            raise UnsupportedCharacteristic("H3 needs characteristic != 2, 3")
        gamma = [ctx.el(g) for g in gamma]
        if len(gamma) != 3 or any(g == ctx.zero for g in gamma):
            raise ZeroInput("Gamma must be a diagonal invertible 3x3 matrix")
        self.ctx = ctx
        self.alg = alg
        self.gamma = gamma
        self.dim = 3 * (alg.dim + 1)
        self.basis = self._build_basis()

    def _zero_mat(self):
        zc = [self.ctx.zero] * self.alg.dim
        return [[list(zc) for _ in range(3)] for _ in range(3)]

    def _build_basis(self):
        ctx, alg = self.ctx, self.alg
        basis = []
        for k in range(3):
            m = self._zero_mat()
            m[k][k] = list(alg.unit)
            basis.append(m)
        # off-diagonal (i, j), i < j: entry c at (i, j) forces
        # (gamma_i / gamma_j) conj(c) at (j, i)
        for i in range(3):
            for j in range(i + 1, 3):
                for b in range(alg.dim):
                    c = [ctx.one if t == b else ctx.zero for t in range(alg.dim)]
                    m = self._zero_mat()
                    m[i][j] = c
                    ratio = self.gamma[i] / self.gamma[j]
                    m[j][i] = [ratio * x for x in alg.conj(c)]
                    basis.append(m)
        return basis

    def mat_mul(self, x, y):
        alg = self.alg
        out = self._zero_mat()
        for i in range(3):
            for j in range(3):
                acc = [self.ctx.zero] * alg.dim
                for t in range(3):
                    p = alg.mul(x[i][t], y[t][j])
                    acc = [u + v for u, v in zip(acc, p)]
                out[i][j] = acc
        return out

    def jordan(self, x, y):
        half = self.ctx.one / (self.ctx.one + self.ctx.one)
        xy = self.mat_mul(x, y)
        yx = self.mat_mul(y, x)
        return [[[half * (u + v) for u, v in zip(xy[i][j], yx[i][j])] for j in range(3)] for i in range(3)]

    def unit(self):
        m = self._zero_mat()
        for k in range(3):
            m[k][k] = list(self.alg.unit)
        return m

    def _scalar_of(self, entry):
        """c with entry = c * unit of C (diagonal entries lie in k.1)."""
        ctx, unit = self.ctx, self.alg.unit
        k0 = next(i for i, u in enumerate(unit) if u != ctx.zero)
        c = entry[k0] / unit[k0]
        assert all(e == c * u for e, u in zip(entry, unit))
        return c

    def generic_trace(self, x):
        return sum(self._scalar_of(x[k][k]) for k in range(3))

    def trace_form(self):
        """Gram of T(a, b) = trace(a.b) on the built basis."""
        n = self.dim
        gram = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = self.generic_trace(self.jordan(self.basis[i], self.basis[j]))
                gram[i][j] = gram[j][i] = v
        return QuadraticForm(self.ctx, gram)

    def trace_form_formula(self):
        """The closed decomposition <1,1,1> + b_N tensor the Gamma-ratio slots."""
        ctx = self.ctx
        g1, g2, g3 = self.gamma
        slots = [g2 / g3, g3 / g1, g1 / g2]
        b_n = self.alg.norm.scale(ctx.one + ctx.one)  # polar form as quadratic form
        ones = QuadraticForm.diagonal(ctx, [ctx.one] * 3)
        return ones.orthogonal_sum(b_n.tensor_diag(slots))


def h3(alg, gamma):
    return FreudenthalAlgebra(alg, gamma)


def gamma_slots(ctx, gamma):
    g1, g2, g3 = [ctx.el(g) for g in gamma]
    if g1 * g2 * g3 == ctx.zero:
        raise ZeroInput("Gamma must be invertible")
    return [g2 / g3, g3 / g1, g1 / g2]


def classify_dim6(ctx, gamma):
    """Quaternion class of H3(k, Gamma) as a 2-fold Pfister spec: the slot
    ternary has square determinant and its Pfister lift decides isomorphism."""
    if ctx.char == 3:
        raise UnsupportedCharacteristic("needs characteristic != 2, 3")
    ternary = QuadraticForm.diagonal(ctx, gamma_slots(ctx, gamma))
    return ternary_to_pfister(ternary)


def classify_dim9(ctx, i, gamma, mode="gsp6gl1"):
    """Fiber-orbit datum of H3(k(sqrt(-i)), Gamma): the hermitian slot diagonal
    over k(sqrt(-i)), rescaled by the norm value i to land in the J = i fiber."""
    if ctx.char == 3:
        raise UnsupportedCharacteristic("needs characteristic != 2, 3")
    if mode not in MODES:
        raise ValueError("mode must be one of %r" % (MODES,))
    i = ctx.el(i)
    if i == ctx.zero:
        raise ZeroInput("fiber scalar must be nonzero")
    d1, d2, d3 = gamma_slots(ctx, gamma)
    # d1 d2 d3 = 1 and i is a k(sqrt(-i))/k-norm, so <d1, d2, i d3> is an
    # isometric hermitian diagonal with determinant i: a reduced fiber point
    ys = (d1, d2, i * d3)
    herm = HermitianForm.diagonal(ctx, -i, ys)
    det, trivial = herm.discriminant()
    assert det == i and trivial
    norm_form = octonion_norm_from_hermitian(herm)
    return OrbitInvariant(
        Stratum("x3", i),
        mode,
        x3_i=coarsen_scalar(ctx, i, mode),
        x3_gamma=ctx.square_class(-i),
        x3_hermitian=ys,
        x3_norm=norm_form.invariants(),
        x3_split=norm_form.is_isotropic(),
    )
