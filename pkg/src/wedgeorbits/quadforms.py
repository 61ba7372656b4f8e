"""Quadratic and hermitian forms: diagonalization, complete isometry invariants
(Hasse-Minkowski data over Q, rank/discriminant over F_p), Pfister utilities,
and K/k-hermitian forms with their trace forms.

Degenerate forms are allowed everywhere: the radical is split off first and the
invariants refer to the nondegenerate quotient, with rank recorded separately.
"""

from fractions import Fraction

from . import linalg
from .fields import (
    FieldContext,
    Fp,
    PrimeField,
    RationalField,
    ZeroInput,
    hilbert_symbol,
    legendre,
)


class DegenerateForm(Exception):
    pass


class NontrivialDiscriminant(Exception):
    pass


class QuadraticForm:
    """Symmetric Gram matrix over a FieldContext; q(x) = x^t G x."""

    def __init__(self, ctx, gram):
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise ValueError("Gram matrix must be square")
        gram = [[ctx.el(x) for x in row] for row in gram]
        if not linalg.is_symmetric(gram):
            raise ValueError("Gram matrix must be symmetric")
        self.ctx = ctx
        self.gram = gram
        self.dim = n

    @classmethod
    def diagonal(cls, ctx, entries):
        entries = [ctx.el(e) for e in entries]
        n = len(entries)
        g = [[entries[i] if i == j else ctx.zero for j in range(n)] for i in range(n)]
        return cls(ctx, g)

    def evaluate(self, v):
        return sum(v[i] * self.gram[i][j] * v[j] for i in range(self.dim) for j in range(self.dim))

    def bilinear(self, u, v):
        """Polar form b(u, v) = q(u+v) - q(u) - q(v) = 2 u^t G v."""
        s = sum(u[i] * self.gram[i][j] * v[j] for i in range(self.dim) for j in range(self.dim))
        return s + s

    def diagonalize(self):
        return linalg.congruence_diagonalize(self.ctx, self.gram)

    def core_entries(self):
        """Nonzero diagonal entries of a congruence diagonalization."""
        diag, _ = self.diagonalize()
        return [d for d in diag if d != self.ctx.zero]

    def rank(self):
        return len(self.core_entries())

    def orthogonal_sum(self, other):
        assert self.ctx == other.ctx
        n, m = self.dim, other.dim
        g = linalg.zeros(self.ctx, n + m, n + m)
        for i in range(n):
            for j in range(n):
                g[i][j] = self.gram[i][j]
        for i in range(m):
            for j in range(m):
                g[n + i][n + j] = other.gram[i][j]
        return QuadraticForm(self.ctx, g)

    def scale(self, c):
        return QuadraticForm(self.ctx, linalg.mat_scale(self.ctx.el(c), self.gram))

    def tensor_diag(self, entries):
        """Tensor with the diagonal form <entries> (self must be anything, result
        is the orthogonal sum of e * self over the entries)."""
        out = None
        for e in entries:
            piece = self.scale(e)
            out = piece if out is None else out.orthogonal_sum(piece)
        return out

    def invariants(self):
        return FormInvariants.of(self)

    def discriminant(self):
        """Signed discriminant class of a nondegenerate form (paper convention)."""
        core = self.core_entries()
        if len(core) != self.dim:
            raise DegenerateForm("discriminant needs a nondegenerate form")
        return self.invariants().disc

    def isometric(self, other):
        if self.ctx != other.ctx:
            raise ValueError("forms live over different fields")
        return self.dim == other.dim and self.invariants() == other.invariants()

    def is_isotropic(self):
        inv = self.invariants()
        if inv.rank < self.dim:
            return True  # nonzero radical vector
        return _core_isotropic(self.ctx, self.core_entries(), inv)

    def to_json(self):
        return {
            "field": self.ctx.selector,
            "gram": [[self.ctx.format(x) for x in row] for row in self.gram],
        }

    @classmethod
    def from_json(cls, ctx, obj):
        return cls(ctx, [[ctx.parse(x) for x in row] for row in obj["gram"]])

    def __repr__(self):
        return "QuadraticForm(%s, dim=%d)" % (self.ctx.selector, self.dim)


class FormInvariants:
    """Complete isometry data: rank, signed disc of the core; signature and the
    set of places with Hasse symbol -1 over Q."""

    def __init__(self, selector, dim, rank, disc, signature=None, hasse_neg=None):
        self.selector = selector
        self.dim = dim
        self.rank = rank
        self.disc = disc
        self.signature = signature
        self.hasse_neg = frozenset(hasse_neg) if hasse_neg is not None else None

    @classmethod
    def of(cls, form):
        ctx = form.ctx
        core = form.core_entries()
        r = len(core)
        if r == 0:
            return cls(ctx.selector, form.dim, 0, None, (0, 0) if ctx.char == 0 else None)
        det = ctx.one
        for d in core:
            det = det * d
        sign = -1 if (r * (r - 1) // 2) % 2 else 1
        disc = ctx.square_class(det if sign == 1 else -det)
        if isinstance(ctx, RationalField):
            pos = sum(1 for d in core if d > 0)
            signature = (pos, r - pos)
            places = ctx.relevant_places(core)
            hneg = set()
            for v in sorted(places, key=_place_sort_key):
                if _hasse_symbol(core, v) == -1:
                    hneg.add(v)
            return cls(ctx.selector, form.dim, r, disc, signature, hneg)
        return cls(ctx.selector, form.dim, r, disc)

    def key(self):
        disc = self.disc
        if isinstance(disc, Fp):
            disc = disc.v
        hasse = None
        if self.hasse_neg is not None:
            hasse = tuple(sorted(self.hasse_neg, key=_place_sort_key))
        return (self.selector, self.dim, self.rank, disc, self.signature, hasse)

    def __eq__(self, other):
        return isinstance(other, FormInvariants) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self):
        disc = self.disc
        if isinstance(disc, Fp):
            disc = disc.v
        elif disc is not None:
            disc = str(disc)
        out = {"field": self.selector, "dim": self.dim, "rank": self.rank, "disc": disc}
        if self.signature is not None:
            out["signature"] = list(self.signature)
        if self.hasse_neg is not None:
            out["hasse_minus_one_at"] = sorted(
                ("inf" if v == "inf" else v) for v in self.hasse_neg
            )
        return out

    def __repr__(self):
        return "FormInvariants%r" % (self.key(),)


def _place_sort_key(v):
    return (1, 0) if v == "inf" else (0, v)


def _hasse_symbol(entries, place):
    s = 1
    n = len(entries)
    for i in range(n):
        for j in range(i + 1, n):
            s *= hilbert_symbol(entries[i], entries[j], place)
    return s


def _is_local_square(d, place):
    d = Fraction(d)
    n = d.numerator * d.denominator
    if place == "inf":
        return n > 0
    p = int(place)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    if e % 2:
        return False
    if p == 2:
        return n % 8 == 1
    return legendre(n, p) == 1


def _core_isotropic(ctx, core, inv):
    r = len(core)
    if r <= 1:
        return False
    det = ctx.one
    for d in core:
        det = det * d
    if isinstance(ctx, PrimeField):
        if r >= 3:
            return True
        # binary <a,b> isotropic iff -ab is a square
        return ctx.is_square(-det)
    if r == 2:
        return ctx.is_square(-det)
    pos, neg = inv.signature
    if pos == 0 or neg == 0:
        return False
    if r >= 5:
        return True  # indefinite of rank >= 5 is isotropic (Hasse-Minkowski)
    places = ctx.relevant_places(core)
    for v in places:
        if v == "inf":
            continue  # indefiniteness already checked
        eps = 1 if v not in inv.hasse_neg else -1
        if r == 3:
            if eps != hilbert_symbol(-1, -det, v):
                return False
        else:  # r == 4
            if _is_local_square(det, v) and eps != hilbert_symbol(-1, -1, v):
                return False
    return True


class PfisterSpec:
    """n-fold Pfister form <<a_1, .., a_n>> = tensor of <1, -a_i>."""

    def __init__(self, slots):
        self.slots = tuple(slots)
        if any(a == 0 for a in self.slots):
            raise ZeroInput("Pfister slots must be nonzero")

    @property
    def fold(self):
        return len(self.slots)

    def __repr__(self):
        return "PfisterSpec(%s)" % (list(self.slots),)


def pfister(ctx, spec):
    """The 2^n-dimensional diagonal form of a PfisterSpec; <1> slot first."""
    slots = [ctx.el(a) for a in spec.slots]
    entries = []
    for mask in range(1 << len(slots)):
        e = ctx.one
        for i, a in enumerate(slots):
            if mask >> i & 1:
                e = e * (-a)
        entries.append(e)
    return QuadraticForm.diagonal(ctx, entries)


def pfister_pure_part(ctx, spec):
    """Complement of the <1> slot in the natural diagonalization."""
    full = pfister(ctx, spec)
    entries = [full.gram[i][i] for i in range(1, full.dim)]
    return QuadraticForm.diagonal(ctx, entries)


def ternary_to_pfister(q):
    """2-fold PfisterSpec whose pure part is isometric to the given rank-3
    trivial-discriminant form (Pfister forms are determined by their pure parts).
    """
    ctx = q.ctx
    core = q.core_entries()
    if len(core) != 3 or q.dim != 3:
        raise DegenerateForm("need a nondegenerate ternary form")
    det = core[0] * core[1] * core[2]
    if not ctx.is_square(det):
        raise NontrivialDiscriminant("ternary form must have square determinant")
    x, y = core[0], core[1]
    spec = PfisterSpec((ctx.square_class(-x), ctx.square_class(-y)))
    assert pfister_pure_part(ctx, spec).isometric(q)
    return spec


# K = k(sqrt(d)) elements are pairs (u, v) meaning u + v*sqrt(d).


def kmul(d, x, y):
    return (x[0] * y[0] + d * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def kconj(x):
    return (x[0], -x[1])


def kadd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def kscale(c, x):
    return (c * x[0], c * x[1])


class HermitianForm:
    """K/k-hermitian form, K = k(sqrt(d)); entries are (u, v) pairs over k."""

    def __init__(self, ctx, d, mat):
        self.ctx = ctx
        self.d = ctx.el(d)
        n = len(mat)
        mat = [[(ctx.el(u), ctx.el(v)) for (u, v) in row] for row in mat]
        for i in range(n):
            for j in range(n):
                if mat[j][i] != kconj(mat[i][j]):
                    raise ValueError("matrix must equal its conjugate transpose")
        self.mat = mat
        self.rank_n = n

    @classmethod
    def diagonal(cls, ctx, d, entries):
        entries = [ctx.el(e) for e in entries]
        n = len(entries)
        zero = (ctx.zero, ctx.zero)
        mat = [[(entries[i], ctx.zero) if i == j else zero for j in range(n)] for i in range(n)]
        return cls(ctx, d, mat)

    def diagonal_entries(self):
        """Hermitian congruence diagonalization; returns entries in k."""
        ctx, d = self.ctx, self.d
        n = self.rank_n
        m = [list(row) for row in self.mat]

        def row_col_op(dst, src, f):
            # R_dst += f R_src then C_dst += conj(f) C_src
            m[dst] = [kadd(m[dst][j], kmul(d, f, m[src][j])) for j in range(n)]
            fc = kconj(f)
            for i in range(n):
                m[i][dst] = kadd(m[i][dst], kmul(d, fc, m[i][src]))

        def swap(i, j):
            m[i], m[j] = m[j], m[i]
            for r in range(n):
                m[r][i], m[r][j] = m[r][j], m[r][i]

        done = 0
        while done < n:
            piv = None
            for i in range(done, n):
                if m[i][i] != (ctx.zero, ctx.zero):
                    piv = i
                    break
            if piv is None:
                fixed = False
                for i in range(done, n):
                    for j in range(i + 1, n):
                        if m[i][j] != (ctx.zero, ctx.zero):
                            # one of these multipliers gives Tr(f * conj(h_ij)) != 0
                            for f in (m[i][j], (ctx.one, ctx.zero), (ctx.zero, ctx.one)):
                                row_col_op(i, j, f)
                                if m[i][i] != (ctx.zero, ctx.zero):
                                    fixed = True
                                    break
                            if fixed:
                                piv = i
                                break
                    if fixed:
                        break
                if not fixed:
                    break
            if piv != done:
                swap(done, piv)
            pv = m[done][done]
            assert pv[1] == ctx.zero  # hermitian diagonal lies in k
            for i in range(done + 1, n):
                if m[i][done] != (ctx.zero, ctx.zero):
                    f = kscale(-ctx.one / pv[0], m[i][done])
                    row_col_op(i, done, f)
            done += 1
        return [m[i][i][0] for i in range(n)]

    def determinant(self):
        """Determinant over K; lands in k for hermitian matrices."""
        entries = self.diagonal_entries()
        det = self.ctx.one
        for e in entries:
            det = det * e
        return det

    def discriminant(self):
        """(determinant in k, is_trivial) where trivial means det is a K/k-norm."""
        det = self.determinant()
        if det == self.ctx.zero:
            raise DegenerateForm("hermitian form is degenerate")
        return det, self.ctx.is_quadratic_norm(det, self.d)

    def trace_form(self):
        """The 2n-dimensional k-form x -> h(x, x): <c_1..c_n> tensor <1, -d>."""
        entries = self.diagonal_entries()
        out = []
        for c in entries:
            out.extend([c, -self.d * c])
        return QuadraticForm.diagonal(self.ctx, out)

    def to_json(self):
        f = self.ctx.format
        return {
            "field": self.ctx.selector,
            "d": f(self.d),
            "matrix": [[[f(u), f(v)] for (u, v) in row] for row in self.mat],
        }


def hermitian_trace_form(ctx, d, entries):
    """Trace form of the diagonal hermitian form <entries> over k(sqrt(d))."""
    return HermitianForm.diagonal(ctx, d, entries).trace_form()


def octonion_norm_from_hermitian(h):
    """8-dimensional octonion norm <1,-d> + trace form of a rank-3 hermitian
    form with trivial discriminant; determines the octonion up to isomorphism.
    """
    if h.rank_n != 3:
        raise ValueError("need a rank-3 hermitian form")
    _, trivial = h.discriminant()
    if not trivial:
        raise NontrivialDiscriminant("hermitian discriminant must be trivial")
    ctx = h.ctx
    ext_norm = QuadraticForm.diagonal(ctx, [ctx.one, -h.d])
    return ext_norm.orthogonal_sum(h.trace_form())
