"""Exact field arithmetic over Q and F_p (p an odd prime).

Elements are plain ``fractions.Fraction`` over Q and small ``Fp`` wrappers over
F_p, so generic matrix/polynomial code can use ordinary operators.  The
``FieldContext`` objects carry construction, square-class and quadratic-
extension utilities.  Rational square classes are canonical signed squarefree
integers; F_p square classes are 1 or the least quadratic nonresidue.
"""

from fractions import Fraction


class FieldError(Exception):
    pass


class ZeroInput(FieldError):
    pass


class FactorizationBoundExceeded(FieldError):
    pass


class UnsupportedFieldOperation(FieldError):
    pass


class Fp:
    """Residue in [0, p); arithmetic mod p via ordinary operators."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, Fp):
            assert other.p == self.p
            return other.v
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        w = self._lift(other)
        return NotImplemented if w is NotImplemented else Fp(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._lift(other)
        return NotImplemented if w is NotImplemented else Fp(self.v - w, self.p)

    def __rsub__(self, other):
        w = self._lift(other)
        return NotImplemented if w is NotImplemented else Fp(w - self.v, self.p)

    def __mul__(self, other):
        w = self._lift(other)
        return NotImplemented if w is NotImplemented else Fp(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        if w % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(w * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pow__(self, n):
        return Fp(pow(self.v, n, self.p) if n >= 0 else pow(pow(self.v, -1, self.p), -n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d" % self.v


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factor_bounded(n, bound=10**6):
    """Trial-division factorization of |n|; raises beyond the bound."""
    n = abs(n)
    if n == 0:
        raise ZeroInput("cannot factor 0")
    out = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        if d > bound:
            raise FactorizationBoundExceeded("trial division bound %d exceeded" % bound)
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        if n > bound * bound:
            # a single leftover prime above bound^2 cannot be certified prime here
            raise FactorizationBoundExceeded("cofactor %d too large" % n)
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_part(q, bound=10**6):
    """Signed squarefree integer representing the square class of q in Q^x."""
    if q == 0:
        raise ZeroInput("0 has no square class")
    fr = Fraction(q)
    n = fr.numerator * fr.denominator
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factor_bounded(n, bound).items():
        if e % 2:
            out *= p
    return out


def _hilbert_odd(a, b, p):
    """(a, b)_p for an odd prime p, a and b nonzero integers."""
    al, a1 = 0, a
    while a1 % p == 0:
        a1 //= p
        al += 1
    bl, b1 = 0, b
    while b1 % p == 0:
        b1 //= p
        bl += 1
    s = 1
    if al % 2 and bl % 2 and (p - 1) // 2 % 2:
        s = -s
    if bl % 2 and legendre(a1, p) < 0:
        s = -s
    if al % 2 and legendre(b1, p) < 0:
        s = -s
    return s


def _hilbert_two(a, b):
    al, a1 = 0, a
    while a1 % 2 == 0:
        a1 //= 2
        al += 1
    bl, b1 = 0, b
    while b1 % 2 == 0:
        b1 //= 2
        bl += 1
    eps = ((a1 - 1) // 2) * ((b1 - 1) // 2)
    omega_a = (a1 * a1 - 1) // 8
    omega_b = (b1 * b1 - 1) // 8
    e = eps + al * omega_b + bl * omega_a
    return -1 if e % 2 else 1


def hilbert_symbol(a, b, place):
    """Hilbert symbol (a,b)_v over Q; place is 2, an odd prime, or 'inf'."""
    if a == 0 or b == 0:
        raise ZeroInput("Hilbert symbol needs nonzero arguments")
    fa, fb = Fraction(a), Fraction(b)
    ia = fa.numerator * fa.denominator
    ib = fb.numerator * fb.denominator
    if place == "inf":
        return -1 if (ia < 0 and ib < 0) else 1
    p = int(place)
    if p == 2:
        return _hilbert_two(ia, ib)
    return _hilbert_odd(ia, ib, p)


def legendre(a, p):
    """Legendre symbol (a|p) in {-1, 0, 1} for odd prime p."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def sqrt_mod(a, p):
    """A square root of a mod p, or None; Tonelli-Shanks, deterministic."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks with the least nonresidue as auxiliary
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


class FieldContext:
    """Common surface of RationalField and PrimeField."""

    def el(self, x):
        raise NotImplementedError

    def parse(self, s):
        raise NotImplementedError

    def format(self, x):
        raise NotImplementedError

    @property
    def char(self):
        raise NotImplementedError

    def square_class(self, a):
        raise NotImplementedError

    def sqrt_if_square(self, a):
        raise NotImplementedError

    def is_square(self, a):
        return bool(a == self.zero) or self.sqrt_if_square(a) is not None

    def is_quadratic_norm(self, c, d):
        raise NotImplementedError

    def quad_ext_norm(self, x, d):
        """Norm of u + v*sqrt(d): u^2 - d v^2."""
        u, v = x
        return u * u - d * v * v

    def random(self, rng, height=2):
        raise NotImplementedError

    def random_nonzero(self, rng, height=2):
        while True:
            x = self.random(rng, height)
            if x != self.zero:
                return x


class RationalField(FieldContext):
    selector = "Q"

    def __init__(self, factor_bound=10**6):
        self.factor_bound = factor_bound
        self.zero = Fraction(0)
        self.one = Fraction(1)

    @property
    def char(self):
        return 0

    def el(self, x):
        return Fraction(x)

    def parse(self, s):
        if isinstance(s, str):
            return Fraction(s)
        if isinstance(s, int):
            return Fraction(s)
        raise ValueError("expected rational string, got %r" % (s,))

    def format(self, x):
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)

    def square_class(self, a):
        if a == 0:
            raise ZeroInput("0 has no square class")
        return Fraction(squarefree_part(a, self.factor_bound))

    def fourth_power_class(self, a):
        """Canonical representative of a mod (Q^x)^4: sign * prod p^(e mod 4)."""
        if a == 0:
            raise ZeroInput("0 has no fourth-power class")
        fr = Fraction(a)
        num = factor_bounded(fr.numerator, self.factor_bound)
        den = factor_bounded(fr.denominator, self.factor_bound)
        exps = dict(num)
        for p, e in den.items():
            exps[p] = exps.get(p, 0) - e
        out = Fraction(-1 if fr < 0 else 1)
        for p, e in sorted(exps.items()):
            out *= Fraction(p) ** (e % 4)
        return out

    def sqrt_if_square(self, a):
        a = Fraction(a)
        if a < 0:
            return None
        rn = _isqrt_exact(a.numerator)
        rd = _isqrt_exact(a.denominator)
        if rn is None or rd is None:
            return None
        return Fraction(rn, rd)

    def relevant_places(self, values):
        """{inf, 2} plus odd primes dividing a squarefree part of any value."""
        places = {"inf", 2}
        for v in values:
            if v == 0:
                continue
            sf = abs(squarefree_part(v, self.factor_bound))
            for p in factor_bounded(sf, self.factor_bound):
                places.add(p)
        return places

    def hilbert(self, a, b, place):
        return hilbert_symbol(a, b, place)

    def is_quadratic_norm(self, c, d):
        if c == 0:
            raise ZeroInput("norm test needs c != 0")
        if self.is_square(d):
            return True  # split extension: every scalar is a norm of k x k
        for v in self.relevant_places([c, d]):
            if hilbert_symbol(c, d, v) == -1:
                return False
        return True

    def random(self, rng, height=2):
        return Fraction(rng.randint(-height, height))

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(FieldContext):
    def __init__(self, p):
        if p == 2 or not is_prime(p):
            raise UnsupportedFieldOperation("p must be an odd prime, got %r" % (p,))
        self.p = p
        self.zero = Fp(0, p)
        self.one = Fp(1, p)

    @property
    def selector(self):
        return "F:%d" % self.p

    @property
    def char(self):
        return self.p

    def el(self, x):
        if isinstance(x, Fp):
            assert x.p == self.p
            return x
        return Fp(int(x), self.p)

    def parse(self, s):
        if isinstance(s, str):
            if "/" in s:
                n, d = s.split("/")
                return self.el(int(n)) / self.el(int(d))
            return self.el(int(s))
        return self.el(int(s))

    def format(self, x):
        return self.el(x).v

    def least_nonresidue(self):
        n = 2
        while legendre(n, self.p) != -1:
            n += 1
        return Fp(n, self.p)

    def square_class(self, a):
        a = self.el(a)
        if a.v == 0:
            raise ZeroInput("0 has no square class")
        return self.one if legendre(a.v, self.p) == 1 else self.least_nonresidue()

    def fourth_power_class(self, a):
        """Least member of the coset a * (F_p^x)^4; one O(p) sweep, cached."""
        a = self.el(a)
        if a.v == 0:
            raise ZeroInput("0 has no fourth-power class")
        if self.p % 4 == 3:
            return self.square_class(a)  # (F_p^x)^4 = (F_p^x)^2 here
        if self.p > 10**6:
            raise UnsupportedFieldOperation("fourth-power classes need p <= 10^6")
        quarts = self._fourth_powers()
        return Fp(min(a.v * t % self.p for t in quarts), self.p)

    def _fourth_powers(self):
        cached = getattr(self, "_quartic_subgroup", None)
        if cached is None:
            cached = {pow(t, 4, self.p) for t in range(1, self.p)}
            self._quartic_subgroup = cached
        return cached

    def sqrt_if_square(self, a):
        a = self.el(a)
        if a.v == 0:
            return self.zero
        r = sqrt_mod(a.v, self.p)
        if r is None:
            return None
        return Fp(min(r, self.p - r), self.p)  # least residue convention

    def is_quadratic_norm(self, c, d):
        if self.el(c).v == 0:
            raise ZeroInput("norm test needs c != 0")
        return True  # finite-field quadratic extensions have surjective norm

    def random(self, rng, height=None):
        return Fp(rng.randrange(self.p), self.p)

    def __repr__(self):
        return "PrimeField(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


def _isqrt_exact(n):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def field_from_selector(s):
    """'Q' -> RationalField, 'F:p' -> PrimeField(p)."""
    if s == "Q":
        return RationalField()
    if s.startswith("F:"):
        return PrimeField(int(s[2:]))
    raise ValueError("unknown field selector %r" % (s,))
