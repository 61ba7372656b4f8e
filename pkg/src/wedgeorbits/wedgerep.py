"""The 20-dimensional third wedge power of the standard 6-space, the induced
action of 6x6 matrices by 3x3 minors, the contraction map to the 6-space, and
the (x0, y0, A, B) tuple coordinates on the 14-dimensional kernel X.

Wedge coordinates are stored on sorted triples i<j<l in lexicographic order;
unsorted index patterns (the layouts a_ij = x_{423} etc.) are reached through
permutation signs.  The tuple scalars satisfy x0 = -x_123, y0 = -x_456; JSON
output follows the displayed (-x0, -y0, A, B) convention, marked by an explicit
"display_sign" field.
"""

from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .linalg import SingularMatrix

TRIPLES = list(combinations(range(1, 7), 3))
TRIPLE_INDEX = {t: i for i, t in enumerate(TRIPLES)}

# tuple coordinate order used for gradients and the degree-2 covariant
COORD_NAMES = (
    "x0", "y0",
    "a11", "a22", "a33", "a12", "a13", "a23",
    "b11", "b22", "b33", "b12", "b13", "b23",
)

# literal index patterns of the tuple entries: a_ij replaces slot j of (1,2,3)
# by i+3, b_ij replaces slot j of (4,5,6) by i
_A_PATTERN = {(i, j): tuple(i + 3 if s == j else (1, 2, 3)[s - 1] for s in (1, 2, 3))
              for i in (1, 2, 3) for j in (1, 2, 3)}
_B_PATTERN = {(i, j): tuple(i if s == j else (4, 5, 6)[s - 1] for s in (1, 2, 3))
              for i in (1, 2, 3) for j in (1, 2, 3)}


class NotInX(Exception):
    pass


def perm_sign(tri):
    """Sign sorting the index triple; 0 on repeats."""
    i, j, l = tri
    if i == j or j == l or i == l:
        return 0
    s = 1
    if i > j:
        i, j = j, i
        s = -s
    if j > l:
        j, l = l, j
        s = -s
    if i > j:
        i, j = j, i
        s = -s
    return s


def coefficient(vec, tri):
    """Coordinate of an arbitrary-order index triple (alternating convention)."""
    s = perm_sign(tri)
    if s == 0:
        return vec[0] * 0
    v = vec[TRIPLE_INDEX[tuple(sorted(tri))]]
    return v if s == 1 else -v


def zero_vector(ctx):
    return [ctx.zero] * 20


def basis_wedge(ctx, tri):
    """Wedge vector e_i ^ e_j ^ e_l for an arbitrary-order triple."""
    vec = zero_vector(ctx)
    s = perm_sign(tri)
    if s == 0:
        raise ValueError("repeated index in %r" % (tri,))
    vec[TRIPLE_INDEX[tuple(sorted(tri))]] = ctx.one if s == 1 else -ctx.one
    return vec


def induced_action(ctx, g):
    """20x20 matrix of the action on the third wedge power: 3x3 minors of g."""
    if linalg.det(ctx, g) == ctx.zero:
        raise SingularMatrix("induced action needs an invertible matrix")
    rho = []
    for tgt in TRIPLES:
        row = []
        for src in TRIPLES:
            sub = [[g[r - 1][c - 1] for c in src] for r in tgt]
            row.append(linalg.det(ctx, sub))
        rho.append(row)
    return rho


def act_matrix(rho, vec):
    return linalg.mat_vec(rho, vec)


def act(ctx, g, vec):
    """Apply a 6x6 matrix (or a GroupElement) to a wedge vector."""
    mat = getattr(g, "mat", g)
    return act_matrix(induced_action(ctx, mat), vec)


def contraction(ctx, vec):
    """phi(v1^v2^v3) = Q(v2,v3)v1 - Q(v1,v3)v2 + Q(v1,v2)v3 extended linearly."""
    mq = {}
    for i in range(1, 4):
        mq[(i, i + 3)] = ctx.one
        mq[(i + 3, i)] = -ctx.one

    def q(a, b):
        return mq.get((a, b), ctx.zero)

    out = [ctx.zero] * 6
    for idx, (i, j, l) in enumerate(TRIPLES):
        c = vec[idx]
        if c == ctx.zero:
            continue
        out[i - 1] = out[i - 1] + c * q(j, l)
        out[j - 1] = out[j - 1] - c * q(i, l)
        out[l - 1] = out[l - 1] + c * q(i, j)
    return out


def in_x(ctx, vec):
    """Membership in X = ker(phi): x_{r14} + x_{r25} + x_{r36} = 0, r = 1..6."""
    for r in range(1, 7):
        s = coefficient(vec, (r, 1, 4)) + coefficient(vec, (r, 2, 5)) + coefficient(vec, (r, 3, 6))
        if s != ctx.zero:
            return False
    return True


@dataclass
class XTuple:
    """A point of X in (x0, y0, A, B) coordinates; A, B exactly symmetric."""

    ctx: object
    x0: object
    y0: object
    a: list
    b: list

    def __post_init__(self):
        if not (linalg.is_symmetric(self.a) and linalg.is_symmetric(self.b)):
            raise NotInX("A and B must be symmetric")

    @classmethod
    def make(cls, ctx, x0, y0, a, b):
        return cls(
            ctx,
            ctx.el(x0),
            ctx.el(y0),
            [[ctx.el(x) for x in row] for row in a],
            [[ctx.el(x) for x in row] for row in b],
        )

    @classmethod
    def zero(cls, ctx):
        z3 = [[ctx.zero] * 3 for _ in range(3)]
        return cls(ctx, ctx.zero, ctx.zero, z3, [[ctx.zero] * 3 for _ in range(3)])

    def is_zero(self):
        ctx = self.ctx
        return (
            self.x0 == ctx.zero
            and self.y0 == ctx.zero
            and linalg.is_zero_matrix(ctx, self.a)
            and linalg.is_zero_matrix(ctx, self.b)
        )

    def coords(self):
        """The 14 coordinates in COORD_NAMES order."""
        a, b = self.a, self.b
        return [
            self.x0, self.y0,
            a[0][0], a[1][1], a[2][2], a[0][1], a[0][2], a[1][2],
            b[0][0], b[1][1], b[2][2], b[0][1], b[0][2], b[1][2],
        ]

    @classmethod
    def from_coords(cls, ctx, c):
        a = [[c[2], c[5], c[6]], [c[5], c[3], c[7]], [c[6], c[7], c[4]]]
        b = [[c[8], c[11], c[12]], [c[11], c[9], c[13]], [c[12], c[13], c[10]]]
        return cls(ctx, c[0], c[1], a, b)

    def scaled(self, c):
        c = self.ctx.el(c)
        return XTuple(
            self.ctx,
            c * self.x0,
            c * self.y0,
            linalg.mat_scale(c, self.a),
            linalg.mat_scale(c, self.b),
        )

    def add(self, other):
        return XTuple(
            self.ctx,
            self.x0 + other.x0,
            self.y0 + other.y0,
            linalg.mat_add(self.a, other.a),
            linalg.mat_add(self.b, other.b),
        )

    def __eq__(self, other):
        return (
            isinstance(other, XTuple)
            and self.ctx == other.ctx
            and self.x0 == other.x0
            and self.y0 == other.y0
            and linalg.mat_eq(self.a, other.a)
            and linalg.mat_eq(self.b, other.b)
        )

    def display(self):
        """(-x0, -y0, A, B) as shown in the tuple notation."""
        return (-self.x0, -self.y0, self.a, self.b)

    def to_json(self):
        f = self.ctx.format
        return {
            "x0": f(-self.x0),
            "y0": f(-self.y0),
            "A": [[f(x) for x in row] for row in self.a],
            "B": [[f(x) for x in row] for row in self.b],
            "display_sign": -1,
        }

    @classmethod
    def from_json(cls, ctx, obj):
        sign = obj.get("display_sign", -1)
        if sign not in (-1, 1):
            raise ValueError("display_sign must be 1 or -1")
        s = ctx.el(sign)
        return cls.make(
            ctx,
            s * ctx.parse(obj["x0"]),
            s * ctx.parse(obj["y0"]),
            [[ctx.parse(x) for x in row] for row in obj["A"]],
            [[ctx.parse(x) for x in row] for row in obj["B"]],
        )


def to_tuple(ctx, vec):
    """Wedge vector in X -> XTuple; raises NotInX otherwise."""
    if not in_x(ctx, vec):
        raise NotInX("vector fails the contraction conditions")
    x0 = -coefficient(vec, (1, 2, 3))
    y0 = -coefficient(vec, (4, 5, 6))
    a = [[coefficient(vec, _A_PATTERN[(i, j)]) for j in (1, 2, 3)] for i in (1, 2, 3)]
    b = [[coefficient(vec, _B_PATTERN[(i, j)]) for j in (1, 2, 3)] for i in (1, 2, 3)]
    return XTuple(ctx, x0, y0, a, b)


def from_tuple(t):
    """XTuple -> wedge vector (inverse of to_tuple on X)."""
    ctx = t.ctx
    vec = zero_vector(ctx)
    vec[TRIPLE_INDEX[(1, 2, 3)]] = -t.x0
    vec[TRIPLE_INDEX[(4, 5, 6)]] = -t.y0
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            tri = _A_PATTERN[(i, j)]
            s = perm_sign(tri)
            vec[TRIPLE_INDEX[tuple(sorted(tri))]] = t.a[i - 1][j - 1] if s == 1 else -t.a[i - 1][j - 1]
            tri = _B_PATTERN[(i, j)]
            s = perm_sign(tri)
            vec[TRIPLE_INDEX[tuple(sorted(tri))]] = t.b[i - 1][j - 1] if s == 1 else -t.b[i - 1][j - 1]
    return vec


def act_tuple(ctx, g, t):
    """Symplectic/similitude action transported to tuple coordinates."""
    return to_tuple(ctx, act(ctx, g, from_tuple(t)))


def wedge_json(ctx, vec):
    return {"wedge": [ctx.format(x) for x in vec]}


def wedge_from_json(ctx, obj):
    vec = [ctx.parse(x) for x in obj["wedge"]]
    if len(vec) != 20:
        raise ValueError("wedge vector needs 20 coordinates")
    return vec
