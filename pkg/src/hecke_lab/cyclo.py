"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Values are stored as rational coordinates over the power basis
1, zeta, ..., zeta^(phi(M)-1), always fully reduced modulo the M-th
cyclotomic polynomial, so equality is coefficient-wise.  Internally a
value is an integer coefficient vector plus one common denominator.

Reduction uses Phi_M(x) = Phi_r(x^(M/r)) for r = rad(M): a vector over
Z/M splits into M/r interleaved strands, each reduced by the small
polynomial Phi_r.  The strands are processed together as numpy columns;
an a-priori height bound decides whether int64 is safe or the exact
object-dtype path is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import mpmath as mp
import numpy as np

from .arith import euler_phi, divisors, moebius, radical


class DivisionByZero(ZeroDivisionError):
    pass


class AmbientOverflow(ValueError):
    """The requested cyclotomic field exceeds the configured degree cap."""


class NotASubgroup(ValueError):
    pass


_degree_cap = 8192


def set_degree_cap(n: int) -> int:
    """Set the maximal permitted field degree phi(M); returns the old cap."""
    global _degree_cap
    old, _degree_cap = _degree_cap, int(n)
    return old


def _poly_mul_sparse(f: list[int], d: int) -> list[int]:
    # f * (x^d - 1)
    out = [0] * (len(f) + d)
    for i, c in enumerate(f):
        out[i + d] += c
        out[i] -= c
    return out


def _poly_divexact_sparse(f: list[int], d: int) -> list[int]:
    # f / (x^d - 1), exact
    n = len(f) - d
    q = [0] * n
    rem = list(f)
    for i in range(n - 1, -1, -1):
        c = rem[i + d]
        q[i] = c
        rem[i + d] -= c
        rem[i] += c
    assert not any(rem), "inexact sparse division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Coefficients of Phi_M, constant term first, monic."""
    if M == 1:
        return (-1, 1)
    r = radical(M)
    if r != M:
        base = cyclotomic_poly(r)
        s = M // r
        out = [0] * ((len(base) - 1) * s + 1)
        for i, c in enumerate(base):
            out[i * s] = c
        return tuple(out)
    f = [1]
    for d in divisors(M):
        if moebius(M // d) == 1:
            f = _poly_mul_sparse(f, d)
    for d in divisors(M):
        if moebius(M // d) == -1:
            f = _poly_divexact_sparse(f, d)
    assert len(f) == euler_phi(M) + 1 and f[-1] == 1
    return tuple(f)


@lru_cache(maxsize=None)
class _Radical:
    """Division data for Phi_r with r squarefree."""

    def __init__(self, r: int):
        self.r = r
        self.phi = euler_phi(r)
        poly = cyclotomic_poly(r)
        self.low = np.array(poly[: self.phi], dtype=np.int64)  # monic tail dropped
        self.low_list = poly[: self.phi]
        # height = max |coefficient| over all x^k mod Phi_r, k < r
        row = [0] * self.phi
        h = 1
        cur = [0] * self.phi
        if self.phi:
            cur[0] = 1
        for _ in range(r - 1):
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i, c in enumerate(self.low_list):
                    cur[i] -= top * c
            h = max(h, max(abs(c) for c in cur))
        self.height = h


def _reduce_strands(mat: np.ndarray, rad: _Radical) -> np.ndarray:
    """Reduce each row of mat (length r) modulo Phi_r; returns (rows, phi(r))."""
    r, phi = rad.r, rad.phi
    for k in range(r - 1, phi - 1, -1):
        c = mat[:, k]
        mat[:, k - phi : k] -= c[:, None] * rad.low
        mat[:, k] = 0
    return mat[:, :phi]


def _reduce_vector(M: int, vec) -> list[int]:
    """Canonical power-basis coordinates of sum vec[k] * zeta_M^k (k < M)."""
    if M == 1:
        return [int(sum(vec))]
    r = radical(M)
    s = M // r
    rad = _Radical(r)
    if len(vec) > M:
        folded = [0] * M
        for k, c in enumerate(vec):
            if c:
                folded[k % M] += c
        vec = folded
    elif len(vec) < M:
        vec = list(vec) + [0] * (M - len(vec))
    maxin = max((abs(int(x)) for x in vec), default=0)
    safe = maxin * r * rad.height < (1 << 62)
    if safe:
        mat = np.array(vec, dtype=np.int64).reshape(r, s).T.copy()
        red = _reduce_strands(mat, rad)
        out = red.T.reshape(-1)
        return [int(x) for x in out]
    mat = np.array([int(x) for x in vec], dtype=object).reshape(r, s).T.copy()
    low = np.array(rad.low_list, dtype=object)
    phi = rad.phi
    for k in range(r - 1, phi - 1, -1):
        c = mat[:, k]
        mat[:, k - phi : k] -= c[:, None] * low
        mat[:, k] = 0
    out = mat[:, :phi].T.reshape(-1)
    return [int(x) for x in out]


@lru_cache(maxsize=None)
def _ambient_phi(M: int) -> int:
    phi = euler_phi(M)
    if phi > _degree_cap:
        raise AmbientOverflow(f"phi({M}) = {phi} exceeds degree cap {_degree_cap}")
    return phi


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        den = -den
        nums = [-x for x in nums]
    g = den
    for x in nums:
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        den //= g
        nums = [x // g for x in nums]
    return tuple(nums), den


class CycNum:
    """Element of Q(zeta_M), canonical power-basis form."""

    __slots__ = ("M", "nums", "den")

    def __init__(self, M: int, nums: tuple[int, ...], den: int):
        # internal: inputs must already be normalized and reduced
        self.M = M
        self.nums = nums
        self.den = den

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_vector(M: int, vec, den: int = 1) -> "CycNum":
        phi = _ambient_phi(M)
        red = _reduce_vector(M, vec)
        assert len(red) == phi
        nums, den = _normalize(red, den)
        return CycNum(M, nums, den)

    @staticmethod
    def rational(q, M: int = 1) -> "CycNum":
        q = Fraction(q)
        phi = _ambient_phi(M)
        vec = [0] * max(phi, 1)
        vec[0] = q.numerator
        nums, den = _normalize(vec, q.denominator)
        return CycNum(M, nums, den)

    @staticmethod
    def zero(M: int = 1) -> "CycNum":
        return CycNum.rational(0, M)

    @staticmethod
    def one(M: int = 1) -> "CycNum":
        return CycNum.rational(1, M)

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.nums[0], self.den)

    def lift(self, M2: int) -> "CycNum":
        """Re-embed into Q(zeta_M2); requires M | M2."""
        if M2 == self.M:
            return self
        if M2 % self.M:
            raise ValueError(f"{self.M} does not divide {M2}")
        t = M2 // self.M
        vec = [0] * M2
        for i, c in enumerate(self.nums):
            vec[i * t] = c
        return CycNum.from_vector(M2, vec, self.den)

    def coefficients(self) -> list[Fraction]:
        return [Fraction(n, self.den) for n in self.nums]

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _common(a: "CycNum", b) -> tuple["CycNum", "CycNum"]:
        if not isinstance(b, CycNum):
            b = CycNum.rational(b)
        M = lcm(a.M, b.M)
        return a.lift(M), b.lift(M)

    def __add__(self, other) -> "CycNum":
        a, b = CycNum._common(self, other)
        da, db = a.den, b.den
        d = lcm(da, db)
        fa, fb = d // da, d // db
        nums = [x * fa + y * fb for x, y in zip(a.nums, b.nums)]
        nums, den = _normalize(nums, d)
        return CycNum(a.M, nums, den)

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.M, tuple(-x for x in self.nums), self.den)

    def __sub__(self, other) -> "CycNum":
        a, b = CycNum._common(self, other)
        return a + (-b)

    def __rsub__(self, other) -> "CycNum":
        return (-self) + other

    def __mul__(self, other) -> "CycNum":
        a, b = CycNum._common(self, other)
        if a.is_zero() or b.is_zero():
            return CycNum.zero(a.M)
        ma = max(abs(x) for x in a.nums)
        mb = max(abs(x) for x in b.nums)
        if ma * mb * len(a.nums) < (1 << 62):
            conv = np.convolve(
                np.array(a.nums, dtype=np.int64), np.array(b.nums, dtype=np.int64)
            )
        else:
            conv = np.convolve(
                np.array(a.nums, dtype=object), np.array(b.nums, dtype=object)
            )
        vec = [0] * a.M
        for k, c in enumerate(conv.tolist()):
            if c:
                vec[k % a.M] += c
        return CycNum.from_vector(a.M, vec, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            q = 1 / self.as_fraction()
            out = CycNum.rational(q, self.M)
            return out
        # extended Euclid in Q[x] modulo Phi_M
        phi_poly = [Fraction(c) for c in cyclotomic_poly(self.M)]
        a = [Fraction(n, self.den) for n in self.nums]
        old_r, r = phi_poly, a
        old_t, t = [Fraction(0)], [Fraction(1)]

        def deg(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        def sub_scaled(p, q, c, shift):
            out = list(p) + [Fraction(0)] * max(0, len(q) + shift - len(p))
            for i, x in enumerate(q):
                out[i + shift] -= c * x
            return out

        while deg(r) > 0:
            dr, dor = deg(r), deg(old_r)
            while dor >= dr:
                c = old_r[dor] / r[dr]
                old_r = sub_scaled(old_r, r, c, dor - dr)
                old_t = sub_scaled(old_t, t, c, dor - dr)
                dor = deg(old_r)
            old_r, r = r, old_r
            old_t, t = t, old_t
        if deg(r) != 0:
            raise DivisionByZero("element is a zero divisor (not coprime to Phi_M)")
        c = r[0]
        inv = [x / c for x in t]
        den = 1
        for f in inv:
            den = lcm(den, f.denominator)
        vec = [int(f * den) for f in inv]
        return CycNum.from_vector(self.M, vec, den)

    def __truediv__(self, other) -> "CycNum":
        a, b = CycNum._common(self, other)
        return a * b.inverse()

    def __rtruediv__(self, other) -> "CycNum":
        return CycNum.rational(other) / self

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return self.inverse() ** (-e)
        out = CycNum.one(self.M)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def conj(self) -> "CycNum":
        """Complex conjugation, zeta -> zeta^(-1)."""
        return galois_apply(GaloisElement(self.M, self.M - 1 if self.M > 1 else 1), self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (CycNum, int, Fraction)):
            return NotImplemented
        a, b = CycNum._common(self, other)
        return a.den == b.den and a.nums == b.nums

    __hash__ = None  # mixed-ambient equality makes hashing unsound

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.nums):
            if not c:
                continue
            q = Fraction(c, self.den)
            if i == 0:
                terms.append(str(q))
            elif i == 1:
                terms.append(f"{q}*z{self.M}")
            else:
                terms.append(f"{q}*z{self.M}^{i}")
        return "CycNum(" + (" + ".join(terms) if terms else "0") + ")"

    def to_json(self) -> dict:
        return {
            "M": self.M,
            "coeffs": [
                [str(Fraction(n, self.den).numerator), str(Fraction(n, self.den).denominator)]
                for n in self.nums
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "CycNum":
        M = int(obj["M"])
        fracs = [Fraction(int(n), int(d)) for n, d in obj["coeffs"]]
        den = 1
        for f in fracs:
            den = lcm(den, f.denominator)
        return CycNum.from_vector(M, [int(f * den) for f in fracs], den)


def root_of_unity(M: int, k: int) -> CycNum:
    """The exact value of e(k/M) = exp(2*pi*i*k/M), in ambient M."""
    if M < 1:
        raise ValueError("M must be positive")
    _ambient_phi(M)
    vec = [0] * M
    vec[k % M] = 1
    return CycNum.from_vector(M, vec)


@dataclass(frozen=True)
class GaloisElement:
    """Automorphism of Q(zeta_M) acting by zeta -> zeta^a, gcd(a, M) = 1."""

    M: int
    a: int

    def __post_init__(self):
        if gcd(self.a % self.M if self.M > 1 else 1, self.M) != 1:
            raise ValueError(f"exponent {self.a} not a unit mod {self.M}")
        object.__setattr__(self, "a", self.a % self.M if self.M > 1 else 1)

    def compose(self, other: "GaloisElement") -> "GaloisElement":
        M = lcm(self.M, other.M)
        return GaloisElement(M, (self.a * other.a) % M)


def galois_apply(sigma: GaloisElement, x: CycNum) -> CycNum:
    """Apply zeta_M -> zeta_M^a to x (lifting to a shared ambient first)."""
    M = lcm(sigma.M, x.M)
    x = x.lift(M)
    a = sigma.a % M
    if gcd(a, M) != 1:
        # composing ambients can only keep a a unit when M_sigma | M
        raise ValueError("automorphism exponent is not a unit in the lifted ambient")
    if a == 1:
        return x
    vec = [0] * M
    for i, c in enumerate(x.nums):
        if c:
            vec[(a * i) % M] += c
    return CycNum.from_vector(M, vec, x.den)


def cyc_arith(x: CycNum, y: CycNum, op: str) -> CycNum:
    """Dispatch add/sub/mul/div; errors: DivisionByZero, AmbientOverflow."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def _unit_residues(M: int) -> list[int]:
    return [a for a in range(1, M + 1) if gcd(a, M) == 1] if M > 1 else [1]


def check_subgroup(H: set[int] | list[int], M: int) -> list[int]:
    if M == 1:
        return [1]
    Hs = sorted({a % M for a in H})
    units = set(_unit_residues(M))
    hset = set(Hs)
    if 1 not in hset or not hset <= units:
        raise NotASubgroup(f"{Hs} is not a subgroup of (Z/{M})^x")
    for a in Hs:
        for b in Hs:
            if (a * b) % M not in hset:
                raise NotASubgroup(f"{Hs} is not closed under multiplication mod {M}")
    return Hs


def rel_trace(x: CycNum, H: set[int] | list[int], M: int | None = None) -> CycNum:
    """Sum of x^sigma over the subgroup H of (Z/MZ)^x."""
    M = M or x.M
    Hs = check_subgroup(H, M)
    x = x.lift(lcm(x.M, M))
    out = CycNum.zero(x.M)
    for a in Hs:
        out = out + galois_apply(GaloisElement(M, a), x)
    return out


def fixing_subgroup(S, M: int) -> list[int]:
    """All a in (Z/MZ)^x with galois_apply(sigma_a, s) = s for every s in S."""
    S = [s.lift(M) if isinstance(s, CycNum) else CycNum.rational(s, M) for s in S]
    out = []
    for a in _unit_residues(M):
        sigma = GaloisElement(M, a)
        if all(galois_apply(sigma, s) == s for s in S):
            out.append(a)
    return out


def is_in_subfield(x: CycNum, d: int, M: int | None = None) -> bool:
    """True if x lies in Q(zeta_d) inside Q(zeta_M), where d | M."""
    M = M or lcm(x.M, d)
    x = x.lift(M)
    rem = 1 % d if d > 1 else 0
    for a in _unit_residues(M):
        if d <= 1 or a % d == rem:
            if galois_apply(GaloisElement(M, a), x) != x:
                return False
    return True


def root_of_unity_log(x: CycNum, order: int) -> int | None:
    """k with x = e(k/order), or None if x is not such a root of unity."""
    for k in range(order):
        if x == root_of_unity(order, k):
            return k
    return None


def embed_complex(x: CycNum, prec: int = 15):
    """Numeric image of x under zeta_M -> e(1/M), accurate to 10^-prec."""
    if prec < 1:
        raise ValueError("prec >= 1 required")
    with mp.workdps(2 * prec + 10):
        z = mp.expjpi(mp.mpf(2) / x.M)
        acc = mp.mpc(0)
        for c in reversed(x.nums):
            acc = acc * z + c
        acc = acc / x.den
        return mp.mpc(acc)
