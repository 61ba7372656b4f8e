"""Constructive orbit reduction to (1, y0, 0, diag), covariant-based
stratification into {0}, X0, X1, X2 and the J-fibers, orbit-invariant
extraction (square class / quaternion core data / hermitian+octonion data),
and the group-mode coarsenings of the fiber scalar.

Stratification never depends on the pivot search: it uses J, the gradient and
the rank of the degree-2 covariant, all orbit-constant by equivariance; the
calibrated ranks at the canonical points must be pairwise distinct (startup
self-check per field).
"""

import random
from dataclasses import dataclass

from . import linalg
from .fields import Fp, PrimeField, RationalField
from .quadforms import PfisterSpec, pfister
from .quartic import grad_j, j_invariant, q_cov
from .symplectic import BetaMove, BlockDiag, GammaMove, ScaleX0, Swap, expand, random_descriptor
from .wedgerep import XTuple, act, coefficient, from_tuple, to_tuple
from .quadforms import HermitianForm, octonion_norm_from_hermitian


class ZeroVector(Exception):
    pass


class PivotSearchExhausted(Exception):
    def __init__(self, attempts):
        super().__init__("search budget exhausted after %d words" % attempts)
        self.attempts = attempts


class CalibrationCollision(Exception):
    pass


class NotSemistable(Exception):
    pass


MODES = ("sp6", "sp6gl1", "gsp6gl1")


@dataclass(frozen=True)
class Stratum:
    tag: str  # zero | x0 | x1 | x2 | x3
    i: object = None  # J value, x3 only

    def __repr__(self):
        if self.tag == "x3":
            return "Stratum(x3, i=%r)" % (self.i,)
        return "Stratum(%s)" % self.tag


@dataclass
class ReductionTrace:
    word: tuple
    canonical: XTuple


@dataclass
class OrbitInvariant:
    stratum: Stratum
    mode: str
    x1_class: object = None
    x2_core: object = None
    x2_pfister: object = None
    x2_split: object = None
    x3_i: object = None
    x3_gamma: object = None
    x3_hermitian: tuple = None
    x3_norm: object = None
    x3_split: object = None

    def key(self):
        """Canonical orbit key for the selected mode; excludes raw hermitian
        diagonal entries (only their isometry class, carried by the norm form,
        is orbit-constant)."""
        tag = self.stratum.tag
        if tag in ("zero", "x0"):
            return (tag,)
        if tag == "x1":
            return (tag, _el_key(self.x1_class))
        if tag == "x2":
            return (tag, self.x2_core.key())
        return (tag, _el_key(self.x3_i), _el_key(self.x3_gamma), self.x3_norm.key(), self.x3_split)

    def to_json(self, ctx):
        out = {"stratum": self.stratum.tag, "mode": self.mode}
        if self.stratum.tag == "x1":
            out["square_class"] = ctx.format(self.x1_class)
            out["quadratic_algebra"] = "split" if ctx.is_square(self.x1_class) else "k(sqrt(%s))" % ctx.format(self.x1_class)
        elif self.stratum.tag == "x2":
            out["q_core"] = self.x2_core.to_json()
            out["pfister"] = None if self.x2_pfister is None else [ctx.format(a) for a in self.x2_pfister.slots]
            out["quaternion_split"] = self.x2_split
        elif self.stratum.tag == "x3":
            out["i"] = ctx.format(self.x3_i)
            out["quadratic_algebra"] = {
                "disc_class": ctx.format(self.x3_gamma),
                "split": bool(self.x3_gamma == ctx.one),
            }
            out["hermitian_diag"] = [ctx.format(y) for y in self.x3_hermitian]
            out["octonion_norm"] = self.x3_norm.to_json()
            out["octonion_split"] = self.x3_split
        return out


def _el_key(x):
    return x.v if isinstance(x, Fp) else x


# ---------------------------------------------------------------------------
# reduction


def _sym(rows):
    return tuple(tuple(r) for r in rows)


def _pivot_words(ctx):
    """Fixed 64-word sweep used before seeded random pivot search."""
    o, z = ctx.one, ctx.zero
    e = lambda i, j: _sym([[o if (r, c) in ((i, j), (j, i)) else z for c in range(3)] for r in range(3)])
    syms = [e(0, 0), e(1, 1), e(2, 2), e(0, 1), e(0, 2), e(1, 2)]
    ident = _sym([[o if r == c else z for c in range(3)] for r in range(3)])
    ones = _sym([[o] * 3 for _ in range(3)])
    mixed = _sym([[o, z, z], [z, -o, z], [z, z, o]])
    words = [(Swap(),)]
    for s in syms:
        words.append((BetaMove(s),))
        words.append((GammaMove(s),))
    for s in syms:
        words.append((Swap(), BetaMove(s)))
        words.append((BetaMove(s), Swap()))
        words.append((Swap(), GammaMove(s)))
        words.append((GammaMove(s), Swap()))
    for s in syms:
        words.append((BetaMove(s), GammaMove(s)))
    neg = lambda s: _sym([[-x for x in row] for row in s])
    for s in syms:
        words.append((BetaMove(neg(s)),))
        words.append((GammaMove(neg(s)),))
    for s in (ident, ones, mixed):
        words.append((BetaMove(s),))
        words.append((GammaMove(s),))
        words.append((BetaMove(s), Swap()))
    assert len(words) == 64
    return words


def _apply_desc(ctx, vec, desc):
    return act(ctx, expand(ctx, desc), vec)


def _apply_word(ctx, vec, word):
    for desc in word:
        vec = _apply_desc(ctx, vec, desc)
    return vec


def _x0_of(ctx, vec):
    return -coefficient(vec, (1, 2, 3))


def reduce_tuple(t: XTuple, seed=0, pivot_budget=512):
    """Word of generator moves taking x to canonical (1, y0, 0, diag(y1,y2,y3)).

    Steps: pivot (make the e1e2e3-coefficient nonzero; fixed 64-word sweep then
    seeded random words), gamma-move killing A, block-diagonal congruence
    diagonalizing B, and the x0-normalizing torus element.  J is preserved.
    """
    ctx = t.ctx
    if t.is_zero():
        raise ZeroVector("cannot reduce the zero vector")
    vec = from_tuple(t)
    word = []

    if _x0_of(ctx, vec) == ctx.zero:
        attempts = 0
        found = False
        for w in _pivot_words(ctx):
            attempts += 1
            cand = _apply_word(ctx, vec, w)
            if _x0_of(ctx, cand) != ctx.zero:
                vec = cand
                word.extend(w)
                found = True
                break
        if not found:
            rng = random.Random(seed)
            while attempts < pivot_budget:
                attempts += 1
                w = tuple(random_descriptor(ctx, rng, "Sp") for _ in range(rng.randint(1, 3)))
                cand = _apply_word(ctx, vec, w)
                if _x0_of(ctx, cand) != ctx.zero:
                    vec = cand
                    word.extend(w)
                    found = True
                    break
            if not found:
                raise PivotSearchExhausted(attempts)

    cur = to_tuple(ctx, vec)
    if not linalg.is_zero_matrix(ctx, cur.a):
        inv = ctx.one / cur.x0
        desc = GammaMove(_sym(linalg.mat_scale(inv, cur.a)))
        vec = _apply_desc(ctx, vec, desc)
        word.append(desc)
        cur = to_tuple(ctx, vec)
        assert linalg.is_zero_matrix(ctx, cur.a)

    off = any(cur.b[i][j] != ctx.zero for i in range(3) for j in range(3) if i != j)
    if off:
        _, p = linalg.congruence_diagonalize(ctx, cur.b)
        desc = BlockDiag(_sym(p))
        vec = _apply_desc(ctx, vec, desc)
        word.append(desc)
        cur = to_tuple(ctx, vec)
        assert linalg.is_zero_matrix(ctx, cur.a)

    if cur.x0 != ctx.one:
        desc = ScaleX0(cur.x0)
        vec = _apply_desc(ctx, vec, desc)
        word.append(desc)
        cur = to_tuple(ctx, vec)

    assert cur.x0 == ctx.one
    assert linalg.is_zero_matrix(ctx, cur.a)
    assert all(cur.b[i][j] == ctx.zero for i in range(3) for j in range(3) if i != j)
    return ReductionTrace(tuple(word), cur)


# the Section 4.1 worked element, decomposed into generator moves; it repairs
# the singular-B square case of the worked example deterministically
def _golden_word(ctx):
    o = ctx.one
    z = ctx.zero
    half = o / (o + o)
    return (
        BetaMove(_sym([[o, z, z], [z, o, z], [z, z, o]])),
        BlockDiag(_sym([[half, z, z], [z, o, z], [z, z, o]])),
        GammaMove(_sym([[-(o + o), z, z], [z, -half, z], [z, z, -half]])),
    )


def _reduce_nonsingular(t: XTuple, seed=0, budget=200):
    """Reduction whose canonical tuple has det(B) != 0 (J != 0 inputs only).

    A reduced fiber point has det(B) = y0^2/4 + i, which vanishes only in the
    square case -i in (k^x)^2; a further group move always repairs it.
    """
    ctx = t.ctx
    tr = reduce_tuple(t, seed=seed)
    diag = [tr.canonical.b[k][k] for k in range(3)]
    if all(d != ctx.zero for d in diag):
        return tr
    rng = random.Random(seed + 1)
    attempts = 0
    words = [_golden_word(ctx)]
    while attempts < budget:
        w = words.pop(0) if words else tuple(
            random_descriptor(ctx, rng, "Sp") for _ in range(rng.randint(1, 3))
        )
        attempts += 1
        vec = _apply_word(ctx, from_tuple(tr.canonical), w)
        tr2 = reduce_tuple(to_tuple(ctx, vec), seed=seed)
        diag = [tr2.canonical.b[k][k] for k in range(3)]
        if all(d != ctx.zero for d in diag):
            return ReductionTrace(tr.word + w + tr2.word, tr2.canonical)
    raise PivotSearchExhausted(attempts)


# ---------------------------------------------------------------------------
# stratification


_CALIBRATION = {}


def calibration(ctx):
    """Ranks of the degree-2 covariant at the canonical J=0 points; must be
    pairwise distinct (and they are: 1, 4, 8 over every supported field)."""
    if ctx in _CALIBRATION:
        return _CALIBRATION[ctx]
    z, o = ctx.zero, ctx.one
    z3 = [[z] * 3 for _ in range(3)]
    x0_pt = XTuple.make(ctx, o, z, z3, z3)
    x1_pt = XTuple.make(ctx, o, z, z3, [[o, z, z], [z, z, z], [z, z, z]])
    x2_pt = XTuple.make(ctx, z, z, [[o, z, z], [z, o, z], [z, z, o]], z3)
    ranks = {
        "x0": q_cov(x0_pt).rank(),
        "x1": q_cov(x1_pt).rank(),
        "x2": q_cov(x2_pt).rank(),
    }
    if len(set(ranks.values())) != 3 or 0 in ranks.values():
        raise CalibrationCollision("canonical ranks fail to separate: %r" % ranks)
    _CALIBRATION[ctx] = ranks
    return ranks


def stratify(t: XTuple) -> Stratum:
    ctx = t.ctx
    if t.is_zero():
        return Stratum("zero")
    j = j_invariant(t)
    if j != ctx.zero:
        return Stratum("x3", j)
    if not grad_j(t).is_zero():
        return Stratum("x2")
    ranks = calibration(ctx)
    r = q_cov(t).rank()
    if r == ranks["x1"]:
        return Stratum("x1")
    if r == ranks["x0"]:
        return Stratum("x0")
    raise CalibrationCollision("covariant rank %d matches no J=0 stratum" % r)


# ---------------------------------------------------------------------------
# invariants


def coarsen_scalar(ctx, i, mode):
    """Representative of i modulo nothing / fourth powers / squares."""
    if i == ctx.zero:
        raise ZeroVector("fiber scalar must be nonzero")
    if mode == "sp6":
        return i
    if mode == "sp6gl1":
        return ctx.fourth_power_class(i)
    if mode == "gsp6gl1":
        return ctx.square_class(i)
    raise ValueError("mode must be one of %r" % (MODES,))


def gamma_x(t: XTuple):
    """Quadratic algebra k(sqrt(-J)): (square class of -J, split flag)."""
    ctx = t.ctx
    j = j_invariant(t)
    if j == ctx.zero:
        raise NotSemistable("gamma_X needs J != 0")
    cls = ctx.square_class(-j)
    return cls, cls == ctx.one


_X2_TABLE = {}

# quaternion calibration specs: pairwise non-isomorphic over Q, split first
_X2_SPECS = ((1, 1), (-1, -1), (-1, -3), (-2, -5), (-1, -7))


def _x2_pfister_table(ctx):
    """Core-invariants -> known 2-fold Pfister class, built at canonical
    (0,0,diag(-a,-b,ab),0) points; injectivity is the calibration oracle."""
    if ctx in _X2_TABLE:
        return _X2_TABLE[ctx]
    table = {}
    if isinstance(ctx, RationalField):
        z = ctx.zero
        z3 = [[z] * 3 for _ in range(3)]
        for a_, b_ in _X2_SPECS:
            a, b = ctx.el(a_), ctx.el(b_)
            diag = [[-a, z, z], [z, -b, z], [z, z, a * b]]
            pt = XTuple.make(ctx, z, z, diag, z3)
            core = q_cov(pt).invariants()
            spec = PfisterSpec((a, b))
            prev = table.get(core.key())
            if prev is not None and not pfister(ctx, prev).isometric(pfister(ctx, spec)):
                raise CalibrationCollision("X2 cores collide for %r and %r" % (prev, spec))
            table[core.key()] = spec
    _X2_TABLE[ctx] = table
    return table


def invariant(t: XTuple, mode="sp6", seed=0):
    """Complete orbit datum of a nonzero point for the selected group mode."""
    if mode not in MODES:
        raise ValueError("mode must be one of %r" % (MODES,))
    ctx = t.ctx
    s = stratify(t)
    if s.tag == "zero":
        raise ZeroVector("the zero vector has no orbit invariant")
    if s.tag == "x0":
        return OrbitInvariant(s, mode)
    if s.tag == "x1":
        tr = reduce_tuple(t, seed=seed)
        c = tr.canonical
        # forced by grad J = 0 on the orbit: y0 = 0 and B has rank 1
        assert c.y0 == ctx.zero
        nz = [c.b[k][k] for k in range(3) if c.b[k][k] != ctx.zero]
        assert len(nz) == 1
        return OrbitInvariant(s, mode, x1_class=ctx.square_class(nz[0]))
    if s.tag == "x2":
        core = q_cov(t).invariants()
        if isinstance(ctx, PrimeField):
            # Remark: over a finite field the quaternion is always split
            return OrbitInvariant(
                s, mode, x2_core=core, x2_pfister=PfisterSpec((ctx.one, ctx.one)), x2_split=True
            )
        spec = _x2_pfister_table(ctx).get(core.key())
        split = None if spec is None else pfister(ctx, spec).is_isotropic()
        return OrbitInvariant(s, mode, x2_core=core, x2_pfister=spec, x2_split=split)
    # x3
    tr = _reduce_nonsingular(t, seed=seed)
    c = tr.canonical
    i = j_invariant(t)
    assert j_invariant(c) == i
    ys = tuple(c.b[k][k] for k in range(3))
    herm = HermitianForm.diagonal(ctx, -i, ys)
    det, trivial = herm.discriminant()
    quarter = ctx.one / (ctx.el(4))
    assert det == quarter * c.y0 * c.y0 + i and trivial
    norm = octonion_norm_from_hermitian(herm).invariants()
    return OrbitInvariant(
        s,
        mode,
        x3_i=coarsen_scalar(ctx, i, mode),
        x3_gamma=ctx.square_class(-i),
        x3_hermitian=ys,
        x3_norm=norm,
        x3_split=octonion_norm_from_hermitian(herm).is_isotropic(),
    )


def pair_invariant(t: XTuple, seed=0):
    """(octonion norm invariants, quadratic subalgebra class) for J != 0 under
    the largest group mode; constant on GSp6 x GL1 orbits."""
    ctx = t.ctx
    if j_invariant(t) == ctx.zero:
        raise NotSemistable("pair invariant needs J != 0")
    inv = invariant(t, mode="gsp6gl1", seed=seed)
    return inv.x3_norm, (inv.x3_gamma, inv.x3_gamma == ctx.one)


def _x2_shape(ctx, t):
    """(0, 0, A, 0) with det(A) != 0."""
    return (
        t.x0 == ctx.zero
        and t.y0 == ctx.zero
        and linalg.is_zero_matrix(ctx, t.b)
        and linalg.det(ctx, t.a) != ctx.zero
    )


def normalize_x2(t: XTuple, seed=0, budget=512):
    """EXPERIMENTAL: word search for the (0, 0, A, 0) normal form of an X2
    point.  No constructive normal-form algorithm is on record for this
    stratum; the supported classification route is the covariant one.  Returns
    (word, ternary form rescaled to determinant 1, Pfister spec) or raises
    PivotSearchExhausted.
    """
    ctx = t.ctx
    if stratify(t).tag != "x2":
        raise ValueError("normalize_x2 needs an X2 point")
    rng = random.Random(seed)
    vec0 = from_tuple(t)
    attempts = 0
    candidates = [()] + [w for w in _pivot_words(ctx)]
    while attempts < budget:
        w = candidates.pop(0) if candidates else tuple(
            random_descriptor(ctx, rng, "Sp") for _ in range(rng.randint(1, 4))
        )
        attempts += 1
        cand = to_tuple(ctx, _apply_word(ctx, vec0, w)) if w else t
        if _x2_shape(ctx, cand):
            a = cand.a
            d = linalg.det(ctx, a)
            # det(U)^-1 U A U^t with U = diag(d,1,1) has determinant 1 and
            # stays in the twisted-congruence class of A
            u = [d, ctx.one, ctx.one]
            w1 = [[a[i][j] * u[i] * u[j] / d for j in range(3)] for i in range(3)]
            tern = QuadraticForm(ctx, w1)
            from .quadforms import ternary_to_pfister

            return w, tern, ternary_to_pfister(tern)
    raise PivotSearchExhausted(attempts)
