"""Real quadratic fields with class number one: integers, units, ideals.

An element is written over the integral basis {1, w} with w = (1+sqrt(D))/2
for D = 1 mod 4 and w = sqrt(D) otherwise.  Ideals are kept in Hermite
normal form a*Z + (b + c*w)*Z (c | a, c | b, 0 <= b < a) with a positive
rational denominator for fractional ideals.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import NamedTuple

from .arith import factorint, is_squarefree, kronecker, sqrt_mod_prime_power, xgcd


class NotSquarefree(ValueError):
    pass


class ClassNumberNotOne(ValueError):
    def __init__(self, D: int, h: int):
        super().__init__(f"Q(sqrt({D})) has class number {h}")
        self.h = h


class NoGenerator(RuntimeError):
    pass


class RamifiedOrEvenPrime(ValueError):
    pass


def _pell_fundamental(D: int) -> tuple[int, int, int]:
    """Least (x, y, s) with x^2 - D y^2 = s in {1,-1}, x,y > 0, via the
    continued fraction of sqrt(D)."""
    a0 = isqrt(D)
    m, d, a = 0, 1, a0
    h0, h1 = 1, a0
    k0, k1 = 0, 1
    while True:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        s = h0 * h0 - D * k0 * k0
        if s in (1, -1):
            return h0, k0, s


def _half_unit(D: int, eps0: float) -> tuple[int, int] | None:
    """Smallest (u, v) with u^2 - D v^2 = +-4 and (u+v sqrt D)/2 > 1 a unit
    strictly smaller than eps0; only possible for D = 1 mod 4."""
    if D % 4 != 1:
        return None
    bound = int(2 * (eps0 ** (1 / 3.0)) / D**0.5) + 2
    best = None
    for v in range(1, bound + 1):
        for s in (-4, 4):
            u2 = D * v * v + s
            if u2 <= 0:
                continue
            u = isqrt(u2)
            if u * u == u2 and (u + v) % 2 == 0:
                val = (u + v * D**0.5) / 2
                if val > 1 and (best is None or val < best[2]):
                    best = (u, v, val)
    if best is None:
        return None
    return best[0], best[1]


def _narrow_class_number(disc: int) -> int:
    """Number of rho-cycles of reduced indefinite forms of discriminant disc.

    A form (a, b, c) with b^2 - 4ac = disc > 0 (non-square) is reduced iff
    0 < b < sqrt(disc) and sqrt(disc) - b < 2|a| < sqrt(disc) + b; the
    cycles of the reduction step rho partition them into narrow classes.
    """
    s = isqrt(disc)

    def reduced(a, b):
        if b < 1 or b * b >= disc:
            return False
        if (2 * abs(a) + b) ** 2 <= disc:  # need 2|a| > sqrt(disc) - b
            return False
        return 2 * abs(a) <= b or (2 * abs(a) - b) ** 2 < disc

    forms = set()
    for b in range(1, s + 1):
        if (disc - b * b) % 4:
            continue
        n = (disc - b * b) // 4  # = -a*c > 0
        if n == 0:
            continue
        for a_abs in range(1, isqrt(n) + 1):
            if n % a_abs:
                continue
            for aa in {a_abs, n // a_abs}:
                for a in (aa, -aa):
                    if reduced(a, b):
                        forms.add((a, b, -(n // a) if a > 0 else n // (-a)))

    def rho(f):
        a, b, c = f
        r = s - ((s + b) % (2 * abs(c)))
        return (c, r, (r * r - disc) // (4 * c))

    cycles = 0
    seen = set()
    for f in sorted(forms):
        if f in seen:
            continue
        cycles += 1
        g = f
        while True:
            seen.add(g)
            g = rho(g)
            if g == f:
                break
            if g not in forms:
                raise AssertionError(f"rho left the reduced set: {f} -> {g}")
    return cycles


class QuadInt:
    """Element x + y*w of K (or of O_K when both coordinates are integers)."""

    __slots__ = ("field", "x", "y")

    def __init__(self, field: "QuadField", x, y):
        self.field = field
        self.x = Fraction(x)
        self.y = Fraction(y)

    def coords(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.y)

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def trace(self) -> Fraction:
        return 2 * self.x + self.field.tr_w * self.y

    def norm(self) -> Fraction:
        t, n = self.field.tr_w, self.field.nm_w
        return self.x * self.x + t * self.x * self.y + n * self.y * self.y

    def conj(self) -> "QuadInt":
        return QuadInt(self.field, self.x + self.field.tr_w * self.y, -self.y)

    def __add__(self, o):
        o = self.field.element(o)
        return QuadInt(self.field, self.x + o.x, self.y + o.y)

    def __sub__(self, o):
        o = self.field.element(o)
        return QuadInt(self.field, self.x - o.x, self.y - o.y)

    def __neg__(self):
        return QuadInt(self.field, -self.x, -self.y)

    def __mul__(self, o):
        o = self.field.element(o)
        t, n = self.field.tr_w, self.field.nm_w
        return QuadInt(
            self.field,
            self.x * o.x - n * self.y * o.y,
            self.x * o.y + self.y * o.x + t * self.y * o.y,
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, o):
        return (-self) + o

    def inverse(self) -> "QuadInt":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("inverse of zero")
        cj = self.conj()
        return QuadInt(self.field, cj.x / nrm, cj.y / nrm)

    def __truediv__(self, o):
        o = self.field.element(o)
        return self * o.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.element(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.x == o and self.y == 0
        return isinstance(o, QuadInt) and self.field.D == o.field.D and self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.field.D, self.x, self.y))

    def sign_vector(self) -> tuple[int, int]:
        """Signs under the two real embeddings (w -> positive root first)."""
        disc = self.field.disc_w  # tr^2 - 4 nm = discriminant of w
        u = 2 * self.x + self.field.tr_w * self.y
        v = self.y

        def sgn(u, v):
            # sign of u + v*sqrt(disc), exact
            if v == 0:
                return 1 if u > 0 else (-1 if u < 0 else 0)
            if u >= 0 and v > 0:
                return 1
            if u <= 0 and v < 0:
                return -1
            diff = u * u - v * v * disc
            if u > 0:
                return 1 if diff > 0 else -1
            return -1 if diff > 0 else 1

        return (sgn(u, v), sgn(u, -v))

    def is_totally_positive(self) -> bool:
        return self.sign_vector() == (1, 1)

    def __repr__(self):
        return f"({self.x} + {self.y}*w)[D={self.field.D}]"


class SplittingResult(NamedTuple):
    kind: str  # "split" | "inert" | "ramified"
    primes: tuple  # prime ideals above q (two for split, one otherwise)


@lru_cache(maxsize=None)
class QuadField:
    """Real quadratic field Q(sqrt(D)) of class number one."""

    def __init__(self, D: int):
        if D <= 1 or not is_squarefree(D):
            raise NotSquarefree(f"D = {D} must be squarefree and > 1")
        self.D = D
        if D % 4 == 1:
            self.d_K = D
            self.tr_w, self.nm_w = 1, (1 - D) // 4
        else:
            self.d_K = 4 * D
            self.tr_w, self.nm_w = 0, -D
        self.disc_w = self.tr_w * self.tr_w - 4 * self.nm_w

        x, y, s = _pell_fundamental(D)
        eps_val = x + y * D**0.5
        half = _half_unit(D, eps_val)
        if half is not None:
            u, v = half
            # (u + v sqrt D)/2 = (u - v)/2 + v*w for D = 1 mod 4
            self.eps = QuadInt(self, (u - v) // 2, v)
        elif D % 4 == 1:
            self.eps = QuadInt(self, x - y, 2 * y)  # x + y sqrt D = (x - y) + 2y*w
        else:
            self.eps = QuadInt(self, x, y)
        assert self.eps.norm() in (1, -1)
        assert self.eps.sign_vector()[0] == 1
        self.eps_norm = int(self.eps.norm())

        hplus = _narrow_class_number(self.d_K)
        self.h_plus = hplus
        self.h = hplus if self.eps_norm == -1 else hplus // 2
        if self.h != 1:
            raise ClassNumberNotOne(D, self.h)

        # different: (sqrt D) for D = 1 mod 4, (2 sqrt D) otherwise
        if D % 4 == 1:
            self.different = self.principal_ideal(QuadInt(self, -1, 2))  # 2w - 1
        else:
            self.different = self.principal_ideal(QuadInt(self, 0, 2))  # 2 sqrt D
        assert self.different.norm() == self.d_K

    # -- element helpers ------------------------------------------------

    def element(self, v) -> QuadInt:
        if isinstance(v, QuadInt):
            if v.field.D != self.D:
                raise ValueError("element from a different field")
            return v
        if isinstance(v, tuple):
            return QuadInt(self, v[0], v[1])
        return QuadInt(self, v, 0)

    @property
    def one(self) -> QuadInt:
        return QuadInt(self, 1, 0)

    @property
    def w(self) -> QuadInt:
        return QuadInt(self, 0, 1)

    def embeddings(self, v: QuadInt, prec_digits: int = 30):
        import mpmath as mp

        with mp.workdps(prec_digits):
            r = mp.sqrt(self.disc_w)
            w1 = (self.tr_w + r) / 2
            w2 = (self.tr_w - r) / 2
            x = mp.mpf(v.x.numerator) / v.x.denominator
            y = mp.mpf(v.y.numerator) / v.y.denominator
            return (x + y * w1, x + y * w2)

    def totally_positive_unit_generator(self) -> QuadInt:
        """Generator of the totally positive units modulo torsion."""
        if self.eps.is_totally_positive():
            return self.eps
        meps = -self.eps
        if meps.is_totally_positive():
            return meps
        return self.eps * self.eps

    # -- ideals ----------------------------------------------------------

    def _hnf_from_vectors(self, vecs: list[tuple[int, int]]) -> tuple[int, int, int]:
        a, (b, c) = 0, (0, 0)
        for x, y in vecs:
            if y == 0:
                a = gcd(a, x)
                continue
            if c == 0:
                b, c = x, y
                continue
            g, s, t = xgcd(c, y)
            nb = s * b + t * x
            # the combination with y-part zero joins the a-gcd
            a = gcd(a, (y // g) * b - (c // g) * x)
            b, c = nb, g
        if c < 0:
            b, c = -b, -c
        a = abs(a)
        if a == 0 or c == 0:
            raise ValueError("vectors do not span a full-rank lattice")
        b %= a
        return a, b, c

    def ideal_from_elements(self, gens: list[QuadInt]) -> "QuadIdeal":
        vecs = []
        den = 1
        for g in gens:
            den = (den * g.x.denominator // gcd(den, g.x.denominator))
            den = (den * g.y.denominator // gcd(den, g.y.denominator))
        for g in gens:
            for h in (g, g * self.w):
                vecs.append((int(h.x * den), int(h.y * den)))
        a, b, c = self._hnf_from_vectors(vecs)
        return QuadIdeal(self, a, b, c, den)

    def principal_ideal(self, alpha: QuadInt) -> "QuadIdeal":
        if alpha.norm() == 0:
            raise ValueError("zero ideal")
        return self.ideal_from_elements([alpha])

    @property
    def ring_of_integers(self) -> "QuadIdeal":
        return QuadIdeal(self, 1, 0, 1, 1)

    def __repr__(self):
        return f"QuadField(D={self.D})"


class QuadIdeal:
    """Fractional ideal (a*Z + (b+c*w)*Z) / den in normal form."""

    __slots__ = ("field", "a", "b", "c", "den")

    def __init__(self, field: QuadField, a: int, b: int, c: int, den: int = 1):
        g = gcd(gcd(a, gcd(b, c)), den)
        a, b, c, den = a // g, (b // g) % (a // g), c // g, den // g
        if a % c or b % c:
            raise ValueError("lattice is not an O_K-module")
        self.field, self.a, self.b, self.c, self.den = field, a, b, c, den

    # -- basics ----------------------------------------------------------

    def key(self):
        return (self.field.D, self.a, self.b, self.c, self.den)

    def __eq__(self, o):
        return isinstance(o, QuadIdeal) and self.key() == o.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        s = f"[{self.a}, {self.b}+{self.c}w]"
        return s if self.den == 1 else s + f"/{self.den}"

    def is_integral(self) -> bool:
        return self.den == 1

    def norm(self) -> Fraction:
        return Fraction(self.a * self.c, self.den * self.den)

    def basis(self) -> tuple[QuadInt, QuadInt]:
        K = self.field
        d = Fraction(1, self.den)
        return (QuadInt(K, self.a * d, 0), QuadInt(K, self.b * d, self.c * d))

    def smallest_rational(self) -> int:
        """Least positive rational integer in the integral part a*Z+(b+cw)*Z."""
        return self.a

    def contains(self, v: QuadInt) -> bool:
        x, y = v.x * self.den, v.y * self.den
        if x.denominator != 1 or y.denominator != 1:
            return False
        x, y = int(x), int(y)
        if y % self.c:
            return False
        k = y // self.c
        return (x - k * self.b) % self.a == 0

    def __le__(self, other: "QuadIdeal") -> bool:
        b1, b2 = self.basis()
        return other.contains(b1) and other.contains(b2)

    def __mul__(self, other):
        if isinstance(other, QuadInt):
            other = self.field.principal_ideal(other)
        if isinstance(other, int):
            other = self.field.principal_ideal(self.field.element(other))
        K = self.field
        g1, g2 = self.basis()
        h1, h2 = other.basis()
        return K.ideal_from_elements([g1 * h1, g1 * h2, g2 * h1, g2 * h2])

    __rmul__ = __mul__

    def conj(self) -> "QuadIdeal":
        g1, g2 = self.basis()
        return self.field.ideal_from_elements([g1.conj(), g2.conj()])

    def inverse(self) -> "QuadIdeal":
        nrm = self.norm()
        cj = self.conj()
        # self * conj = N(self) O; divide by the rational norm
        return QuadIdeal(
            self.field,
            cj.a * nrm.denominator,
            cj.b * nrm.denominator,
            cj.c * nrm.denominator,
            cj.den * nrm.numerator,
        )

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.ring_of_integers
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def is_coprime_to(self, other: "QuadIdeal") -> bool:
        assert self.is_integral() and other.is_integral()
        a, b, c = self.field._hnf_from_vectors(
            [(self.a, 0), (self.b, self.c), (other.a, 0), (other.b, other.c)]
        )
        return a == 1 and c == 1

    # -- residues ----------------------------------------------------------

    def residues(self):
        """All residue representatives x + y*w, x < a, y < c (integral ideals)."""
        assert self.is_integral()
        for y in range(self.c):
            for x in range(self.a):
                yield (x, y)

    def reduce_residue(self, x: int, y: int) -> tuple[int, int]:
        yy = y % self.c
        k = (y - yy) // self.c
        xx = (x - k * self.b) % self.a
        return (xx, yy)

    def reduce_element(self, v: QuadInt) -> tuple[int, int]:
        assert v.is_integral()
        return self.reduce_residue(int(v.x), int(v.y))


# -- prime splitting and norm fibers ----------------------------------------


def prime_splitting(K: QuadField, q: int) -> SplittingResult:
    """Factor the rational prime q in O_K; matches the Kronecker symbol
    of the field discriminant (split +1, inert -1, ramified 0)."""
    from .arith import invmod

    sym = kronecker(K.d_K, q)
    if sym == -1:
        return SplittingResult("inert", (K.principal_ideal(K.element(q)),))
    t, n = K.tr_w, K.nm_w
    if sym == 0:
        # double root of x^2 - t x + n mod q
        if q == 2:
            b = K.D % 2  # x^2 - D = (x - D)^2 mod 2
        elif t == 0:
            b = 0  # odd q | D: x^2 - D = x^2 mod q
        else:
            b = t * invmod(2, q) % q
        p = K.ideal_from_elements([K.element(q), K.w - K.element(b)])
        assert p.norm() == q
        return SplittingResult("ramified", (p,))
    # split: two roots of x^2 - t x + n mod q
    if q == 2:
        # here D = 1 mod 8, so n = (1-D)/4 is even: roots 0 and 1
        b1, b2 = 0, 1
    else:
        r = sqrt_mod_prime_power((t * t - 4 * n) % q, q, 1)
        assert r is not None
        b1 = (t + r) * invmod(2, q) % q
        b2 = (t - r) * invmod(2, q) % q
    p1 = K.ideal_from_elements([K.element(q), K.w - K.element(b1)])
    p2 = K.ideal_from_elements([K.element(q), K.w - K.element(b2)])
    assert p1 != p2 and p1.norm() == q and p2.norm() == q
    return SplittingResult("split", (p1, p2))


def primes_above(K: QuadField, q: int) -> tuple[QuadIdeal, ...]:
    return prime_splitting(K, q).primes


def ideals_of_norm(K: QuadField, m: int) -> list[QuadIdeal]:
    """All integral ideals of norm exactly m, assembled multiplicatively."""
    if m < 1:
        raise ValueError("norm must be positive")
    if m == 1:
        return [K.ring_of_integers]
    choices = [[K.ring_of_integers]]
    for q, e in factorint(m):
        res = prime_splitting(K, q)
        local = []
        if res.kind == "split":
            p1, p2 = res.primes
            local = [p1**i * p2 ** (e - i) for i in range(e + 1)]
        elif res.kind == "inert":
            if e % 2 == 0:
                local = [res.primes[0] ** (e // 2)]
            else:
                return []
        else:
            local = [res.primes[0] ** e]
        choices.append(local)
    out = [K.ring_of_integers]
    for local in choices:
        out = [a * b for a in out for b in local]
    assert all(I.norm() == m for I in out)
    return out


def factor_ideal(K: QuadField, I: QuadIdeal) -> list[tuple[QuadIdeal, int]]:
    """Prime factorization of an integral ideal."""
    assert I.is_integral()
    out = []
    nrm = int(I.norm())
    rem = I
    for q, _ in factorint(nrm):
        for p in prime_splitting(K, q).primes:
            v = 0
            while rem <= p:
                rem = QuadIdeal(K, *_divide_exact(K, rem, p))
                v += 1
            if v:
                out.append((p, v))
    assert rem == K.ring_of_integers
    return out


def _divide_exact(K: QuadField, I: QuadIdeal, p: QuadIdeal) -> tuple[int, int, int, int]:
    J = I * p.inverse()
    assert J.is_integral(), "inexact ideal division"
    return (J.a, J.b, J.c, J.den)


def ideal_divisors(K: QuadField, I: QuadIdeal) -> list[QuadIdeal]:
    """All integral ideals dividing I."""
    fac = factor_ideal(K, I)
    out = [K.ring_of_integers]
    for p, e in fac:
        out = [d * p**i for d in out for i in range(e + 1)]
    return out


# -- principal generator search ----------------------------------------------


def find_generator(K: QuadField, I: QuadIdeal) -> QuadInt:
    """A generator of the (fractional) ideal I, deterministic choice.

    Prefers a totally positive generator when one exists; ties broken by
    the lexicographically smallest coordinate pair.  Search box derived
    from reduction by the fundamental unit.
    """
    if I.den != 1:
        g = find_generator(K, QuadIdeal(K, I.a, I.b, I.c, 1))
        return g * Fraction(1, I.den)
    N = int(I.norm())
    import mpmath as mp

    with mp.workdps(30):
        r = mp.sqrt(K.disc_w)
        w1 = (K.tr_w + r) / 2
        w2 = (K.tr_w - r) / 2
        e1 = abs(K.eps.x.numerator / mp.mpf(K.eps.x.denominator) + (K.eps.y.numerator / mp.mpf(K.eps.y.denominator)) * w1)
        B = mp.sqrt(N) * e1 * (1 + mp.mpf("1e-12")) + mp.mpf("1e-9")
        t1 = I.b + I.c * w1
        t2 = I.b + I.c * w2
        vmax = int(mp.floor(2 * B / (I.c * r))) + 1
        cands = []
        for v in range(-vmax, vmax + 1):
            lo = (-B - v * t1) / I.a
            hi = (B - v * t1) / I.a
            for u in range(int(mp.floor(lo)) - 1, int(mp.ceil(hi)) + 2):
                x = u * I.a + v * I.b
                y = v * I.c
                if x * x + K.tr_w * x * y + K.nm_w * y * y in (N, -N):
                    cands.append(QuadInt(K, x, y))
    cands = [g for g in cands if K.principal_ideal(g) == I] if cands else []
    if not cands:
        raise NoGenerator(f"no generator found for {I} (box search exhausted)")
    pos = [g for g in cands if g.is_totally_positive()]
    pool = pos if pos else cands
    pool.sort(key=lambda g: (g.x, g.y))
    return pool[0]


# -- residue rings -------------------------------------------------------------


def _abelian_basis(elements, mul, one):
    """Basis (g_i, d_i) of a finite abelian group given by full enumeration."""
    elems = list(elements)
    n = len(elems)
    if n == 1:
        return []

    def order_of(g):
        k, x = 1, g
        while x != one:
            x = mul(x, g)
            k += 1
        return k

    orders = {g: order_of(g) for g in elems}
    exponent = 1
    for g in elems:
        exponent = exponent * orders[g] // gcd(exponent, orders[g])
    g1 = min((g for g in elems if orders[g] == exponent))
    d1 = exponent

    if d1 == n:
        return [(g1, d1)]

    # quotient by <g1> with canonical coset representatives
    cyc = [one]
    x = g1
    while x != one:
        cyc.append(x)
        x = mul(x, g1)
    rep = {}
    for g in elems:
        coset = sorted(mul(g, c) for c in cyc)
        rep[g] = coset[0]
    q_elems = sorted(set(rep.values()))

    def q_mul(a, b):
        return rep[mul(a, b)]

    q_one = rep[one]
    sub_basis = _abelian_basis(q_elems, q_mul, q_one)

    # lift each quotient generator to a direct complement of <g1>
    out = [(g1, d1)]
    pow_g1 = {c: i for i, c in enumerate(cyc)}
    for h_bar, d in sub_basis:
        h = h_bar
        hd = h
        for _ in range(d - 1):
            hd = mul(hd, h)
        # hd lies in <g1>; adjust h by g1^(-e/d)
        e = pow_g1[hd]
        assert e % d == 0
        adjust = (-(e // d)) % d1
        x = h
        for _ in range(adjust):
            x = mul(x, g1)
        out.append((x, d))
    return out


class ResidueRing:
    """(O_K / I)^x with an explicit basis and discrete logarithms."""

    def __init__(self, K: QuadField, I: QuadIdeal):
        assert I.is_integral()
        self.K, self.I = K, I
        self.prime_factors = factor_ideal(K, I)

        def is_unit(res):
            x, y = res
            for p, _ in self.prime_factors:
                # x + y w in p iff p contains it
                if p.contains(QuadInt(K, x, y)):
                    return False
            return True

        self.units = [res for res in I.residues() if is_unit(res)]
        self._unit_set = set(self.units)
        t, n, a, b, c = K.tr_w, K.nm_w, I.a, I.b, I.c

        def mul(r1, r2):
            x1, y1 = r1
            x2, y2 = r2
            x = x1 * x2 - n * y1 * y2
            y = x1 * y2 + y1 * x2 + t * y1 * y2
            return I.reduce_residue(x, y)

        self.mul = mul
        self.one = I.reduce_residue(1, 0)
        self.basis = _abelian_basis(self.units, mul, self.one)
        self.orders = tuple(d for _, d in self.basis)
        # full dlog table, built factor by factor over the direct-sum basis
        self._dlog = {self.one: (0,) * len(self.basis)}
        for i, (g, d) in enumerate(self.basis):
            for res, vec in list(self._dlog.items()):
                x = res
                for e in range(1, d):
                    x = mul(x, g)
                    self._dlog[x] = vec[:i] + (e,) + vec[i + 1 :]
        assert len(self._dlog) == len(self.units), "basis does not span the units"

    @property
    def order(self) -> int:
        return len(self.units)

    def dlog(self, res) -> tuple[int, ...]:
        if isinstance(res, QuadInt):
            res = self.I.reduce_element(res)
        elif isinstance(res, int):
            res = self.I.reduce_residue(res, 0)
        out = self._dlog.get(res)
        if out is None:
            raise ValueError(f"{res} is not a unit modulo {self.I}")
        return out

    def is_unit(self, res) -> bool:
        if isinstance(res, QuadInt):
            res = self.I.reduce_element(res)
        elif isinstance(res, int):
            res = self.I.reduce_residue(res, 0)
        return res in self._unit_set


def residue_ring_units(K: QuadField, I: QuadIdeal) -> ResidueRing:
    return ResidueRing(K, I)


def trace_one_residue(K: QuadField, p: int, k: int) -> QuadInt:
    """A rational integer representative with trace = 1 mod p^k."""
    if p == 2 or kronecker(K.d_K, p) == 0:
        raise RamifiedOrEvenPrime(f"p = {p} must be odd and unramified in Q(sqrt({K.D}))")
    a0 = (p**k + 1) // 2
    out = K.element(a0)
    assert out.trace() % p**k == 1
    return out
