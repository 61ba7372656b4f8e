"""Sp6 / GSp6 elements over an exact field: the block conditions, a generator
toolbox matching the reduction moves, and seeded random words.

Block convention: g = (alpha, beta; gamma, delta) with 3x3 blocks and
M_Q = (0, I; -I, 0); symplectic means alpha beta^t, gamma delta^t symmetric and
alpha delta^t - beta gamma^t = I.
"""

import random
from dataclasses import dataclass

from . import linalg


class InvalidDescriptor(Exception):
    pass


@dataclass(frozen=True)
class BlockDiag:
    alpha: tuple  # rows of an invertible 3x3 matrix; delta = (alpha^t)^-1


@dataclass(frozen=True)
class GammaMove:
    gamma: tuple  # symmetric 3x3; alpha = delta = I, beta = 0


@dataclass(frozen=True)
class BetaMove:
    beta: tuple  # symmetric 3x3; alpha = delta = I, gamma = 0


@dataclass(frozen=True)
class Swap:
    pass  # alpha = delta = 0, beta = -I, gamma = I


@dataclass(frozen=True)
class TorusScale:
    t1: object
    t2: object
    t3: object


@dataclass(frozen=True)
class ScaleX0:
    c: object  # diag(c^-1, 1, 1, c, 1, 1)


@dataclass(frozen=True)
class Dilation:
    a: object  # GSp only: diag(a I, I), similitude factor a


class GroupElement:
    """6x6 matrix with similitude factor and generator-word provenance."""

    def __init__(self, ctx, mat, factor=None, word=()):
        self.ctx = ctx
        self.mat = mat
        self.factor = ctx.one if factor is None else factor
        self.word = tuple(word)

    def __matmul__(self, other):
        return GroupElement(
            self.ctx,
            linalg.mat_mul(self.mat, other.mat),
            self.factor * other.factor,
            self.word + other.word,
        )

    def inverse(self):
        return GroupElement(self.ctx, linalg.mat_inv(self.ctx, self.mat), self.ctx.one / self.factor)

    def is_symplectic(self):
        return self.factor == self.ctx.one and is_symplectic(self.ctx, self.mat)


def blocks(m):
    a = [row[:3] for row in m[:3]]
    b = [row[3:] for row in m[:3]]
    c = [row[:3] for row in m[3:]]
    d = [row[3:] for row in m[3:]]
    return a, b, c, d


def from_blocks(ctx, a, b, c, d):
    return [list(a[i]) + list(b[i]) for i in range(3)] + [list(c[i]) + list(d[i]) for i in range(3)]


def m_q(ctx):
    z, o = ctx.zero, ctx.one
    m = linalg.zeros(ctx, 6, 6)
    for i in range(3):
        m[i][i + 3] = o
        m[i + 3][i] = -o
    return m


def is_symplectic(ctx, m):
    a, b, c, d = blocks(m)
    ab = linalg.mat_mul(a, linalg.transpose(b))
    cd = linalg.mat_mul(c, linalg.transpose(d))
    if not linalg.is_symmetric(ab) or not linalg.is_symmetric(cd):
        return False
    ad = linalg.mat_mul(a, linalg.transpose(d))
    bc = linalg.mat_mul(b, linalg.transpose(c))
    return linalg.mat_eq(linalg.mat_sub(ad, bc), linalg.identity(ctx, 3))


def similitude_factor(ctx, m):
    """mu with g M_Q g^t = mu M_Q, or None if g is not a similitude."""
    g = linalg.mat_mul(linalg.mat_mul(m, m_q(ctx)), linalg.transpose(m))
    mq = m_q(ctx)
    mu = None
    for i in range(6):
        for j in range(6):
            if mq[i][j] != ctx.zero:
                r = g[i][j] / mq[i][j]
                if mu is None:
                    mu = r
                elif mu != r:
                    return None
            elif g[i][j] != ctx.zero:
                return None
    return None if mu == ctx.zero else mu


def _as_sym3(ctx, rows, what):
    m = [[ctx.el(x) for x in row] for row in rows]
    if not linalg.is_symmetric(m):
        raise InvalidDescriptor("%s block must be symmetric" % what)
    return m


def expand(ctx, desc):
    """Descriptor -> GroupElement with provenance; Dilation has factor a."""
    z, o = ctx.zero, ctx.one
    i3 = linalg.identity(ctx, 3)
    z3 = linalg.zeros(ctx, 3, 3)
    if isinstance(desc, BlockDiag):
        alpha = [[ctx.el(x) for x in row] for row in desc.alpha]
        try:
            delta = linalg.transpose(linalg.mat_inv(ctx, alpha))
        except linalg.SingularMatrix:
            raise InvalidDescriptor("BlockDiag alpha must be invertible")
        mat = from_blocks(ctx, alpha, z3, z3, delta)
    elif isinstance(desc, GammaMove):
        gamma = _as_sym3(ctx, desc.gamma, "gamma")
        mat = from_blocks(ctx, i3, z3, gamma, i3)
    elif isinstance(desc, BetaMove):
        beta = _as_sym3(ctx, desc.beta, "beta")
        mat = from_blocks(ctx, i3, beta, z3, i3)
    elif isinstance(desc, Swap):
        mat = from_blocks(ctx, z3, linalg.mat_scale(-o, i3), i3, z3)
    elif isinstance(desc, TorusScale):
        ts = [ctx.el(desc.t1), ctx.el(desc.t2), ctx.el(desc.t3)]
        if any(t == z for t in ts):
            raise InvalidDescriptor("torus entries must be nonzero")
        alpha = [[ts[i] if i == j else z for j in range(3)] for i in range(3)]
        delta = [[o / ts[i] if i == j else z for j in range(3)] for i in range(3)]
        mat = from_blocks(ctx, alpha, z3, z3, delta)
    elif isinstance(desc, ScaleX0):
        c = ctx.el(desc.c)
        if c == z:
            raise InvalidDescriptor("ScaleX0 needs a nonzero scalar")
        alpha = [[o / c, z, z], [z, o, z], [z, z, o]]
        delta = [[c, z, z], [z, o, z], [z, z, o]]
        mat = from_blocks(ctx, alpha, z3, z3, delta)
    elif isinstance(desc, Dilation):
        a = ctx.el(desc.a)
        if a == z:
            raise InvalidDescriptor("Dilation needs a nonzero scalar")
        mat = from_blocks(ctx, linalg.mat_scale(a, i3), z3, z3, i3)
        return GroupElement(ctx, mat, factor=a, word=(desc,))
    else:
        raise InvalidDescriptor("unknown descriptor %r" % (desc,))
    el = GroupElement(ctx, mat, word=(desc,))
    assert is_symplectic(ctx, mat)
    return el


def expand_word(ctx, word):
    el = GroupElement(ctx, linalg.identity(ctx, 6))
    for desc in word:
        el = expand(ctx, desc) @ el
    return el


def _random_sym3(ctx, rng, height):
    e = [[ctx.random(rng, height) for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(i + 1, 3):
            e[j][i] = e[i][j]
    return tuple(tuple(row) for row in e)


def _random_invertible3(ctx, rng, height):
    while True:
        m = [[ctx.random(rng, height) for _ in range(3)] for _ in range(3)]
        if linalg.det(ctx, m) != ctx.zero:
            return tuple(tuple(row) for row in m)


def random_descriptor(ctx, rng, mode="Sp", height=2):
    kinds = ["block", "gamma", "beta", "swap", "torus"]
    if mode == "GSp":
        kinds.append("dilation")
    kind = rng.choice(kinds)
    if kind == "block":
        return BlockDiag(_random_invertible3(ctx, rng, height))
    if kind == "gamma":
        return GammaMove(_random_sym3(ctx, rng, height))
    if kind == "beta":
        return BetaMove(_random_sym3(ctx, rng, height))
    if kind == "swap":
        return Swap()
    if kind == "torus":
        return TorusScale(
            ctx.random_nonzero(rng, height),
            ctx.random_nonzero(rng, height),
            ctx.random_nonzero(rng, height),
        )
    return Dilation(ctx.random_nonzero(rng, height))


def random_element(ctx, seed, word_length, mode="Sp", height=2):
    """Deterministic product of word_length random generators (small entries)."""
    assert word_length >= 1
    rng = random.Random(seed)
    el = GroupElement(ctx, linalg.identity(ctx, 6))
    for _ in range(word_length):
        el = expand(ctx, random_descriptor(ctx, rng, mode, height)) @ el
    return el
