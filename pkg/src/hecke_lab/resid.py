"""Dirichlet characters on (Z/MZ)^x, Gauss sums, and hyper Kloosterman sums.

Characters are stored as image exponents on fixed generators of the
prime-power components of (Z/MZ)^x.  Values are exact roots of unity
(CycNum); sums are accumulated as exponent histograms and reduced once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from .arith import (
    crt_pair,
    euler_phi,
    factorint,
    invmod,
    is_fundamental_discriminant,
    kronecker,
    primitive_root,
)
from .cyclo import CycNum, root_of_unity


class NotOddPrimePower(ValueError):
    pass


class NonUnitResidue(ValueError):
    pass


class NotFundamentalDiscriminant(ValueError):
    pass


class EvenCharacter(ValueError):
    pass


@lru_cache(maxsize=None)
class _Component:
    """Generators, orders, and dlog table for one (Z/q^e Z)^x factor."""

    def __init__(self, q: int, e: int):
        self.q, self.e = q, e
        self.modulus = q**e
        m = self.modulus
        if q == 2:
            if e == 1:
                self.gens, self.orders = (), ()
            elif e == 2:
                self.gens, self.orders = (3,), (2,)
            else:
                self.gens, self.orders = (m - 1, 5), (2, m // 4)
        else:
            self.gens, self.orders = (primitive_root(m),), (euler_phi(m),)
        # dlog table: residue -> exponent tuple over gens
        table = {}
        exps = [0] * len(self.gens)

        def rec(i, acc):
            if i == len(self.gens):
                table[acc] = tuple(exps)
                return
            x = acc
            for k in range(self.orders[i]):
                exps[i] = k
                rec(i + 1, x)
                x = x * self.gens[i] % m
            exps[i] = 0

        rec(0, 1 % m)
        self.dlog = table

    def exponent_of(self, a: int) -> tuple[int, ...] | None:
        return self.dlog.get(a % self.modulus)


def _components_of(M: int) -> list[_Component]:
    return [_Component(q, e) for q, e in factorint(M)] if M > 1 else []


class DirichletChar:
    """Character of (Z/MZ)^x given by generator image exponents.

    ``exps`` is a flat tuple matching the concatenated generators of all
    prime-power components of M; chi(g_i) = e(exps_i / order_i).
    """

    __slots__ = ("M", "exps", "_comps")

    def __init__(self, M: int, exps: tuple[int, ...]):
        self.M = M
        self._comps = _components_of(M)
        flat_orders = self.generator_orders()
        if len(exps) != len(flat_orders):
            raise ValueError("exponent vector has wrong length")
        self.exps = tuple(k % n for k, n in zip(exps, flat_orders))

    # -- structure -----------------------------------------------------

    def generator_orders(self) -> tuple[int, ...]:
        return tuple(n for c in self._comps for n in c.orders)

    def generators(self) -> tuple[int, ...]:
        # CRT-lifted generators of the full group
        out = []
        for c in self._comps:
            for g in c.gens:
                r, m = g, c.modulus
                for c2 in self._comps:
                    if c2 is not c:
                        r = crt_pair(r, m, 1, c2.modulus)
                        m *= c2.modulus
                out.append(r)
        return tuple(out)

    @property
    def order(self) -> int:
        o = 1
        for k, n in zip(self.exps, self.generator_orders()):
            o = lcm(o, n // gcd(n, k))
        return o

    def value_base(self) -> int:
        """All values are powers of e(1/value_base())."""
        o = 1
        for n in self.generator_orders():
            o = lcm(o, n)
        return o

    def exponent_ord(self, m: int) -> int | None:
        """k with chi(m) = e(k / order), or None on non-units."""
        k = self.exponent(m)
        if k is None:
            return None
        o, E = self.order, self.value_base()
        assert (k * o) % E == 0
        return (k * o // E) % o

    def exponent(self, m: int) -> int | None:
        """k with chi(m) = e(k / value_base()), or None on non-units."""
        if self.M == 1:
            return 0
        m %= self.M
        if gcd(m, self.M) != 1:
            return None
        E = self.value_base()
        total = 0
        i = 0
        for c in self._comps:
            ds = c.exponent_of(m)
            for j, n in enumerate(c.orders):
                total += (E // n) * self.exps[i] * ds[j]
                i += 1
        return total % E

    def __call__(self, m: int) -> CycNum:
        k = self.exponent(m)
        if k is None:
            return CycNum.zero()
        return root_of_unity(self.value_base(), k)

    def __eq__(self, other) -> bool:
        return isinstance(other, DirichletChar) and self.M == other.M and self.exps == other.exps

    def __hash__(self):
        return hash((self.M, self.exps))

    def __repr__(self):
        return f"DirichletChar(M={self.M}, exps={self.exps}, order={self.order})"

    # -- algebra ---------------------------------------------------------

    def __mul__(self, other: "DirichletChar") -> "DirichletChar":
        M = lcm(self.M, other.M)
        a = self.lift(M)
        b = other.lift(M)
        orders = a.generator_orders()
        return DirichletChar(M, tuple((x + y) % n for x, y, n in zip(a.exps, b.exps, orders)))

    def __pow__(self, k: int) -> "DirichletChar":
        orders = self.generator_orders()
        return DirichletChar(self.M, tuple((x * k) % n for x, n in zip(self.exps, orders)))

    def conj(self) -> "DirichletChar":
        return self ** (-1)

    def galois(self, a: int) -> "DirichletChar":
        """chi^sigma for sigma: roots of unity -> their a-th powers."""
        if gcd(a, self.order) != 1:
            raise ValueError("galois exponent must be prime to the character order")
        return self**a

    def lift(self, M2: int) -> "DirichletChar":
        """The character mod M2 induced by composing with reduction mod M."""
        if M2 == self.M:
            return self
        if M2 % self.M:
            raise ValueError("can only lift to multiples of the modulus")
        comps2 = _components_of(M2)
        exps2 = []
        for c in comps2:
            for g, n in zip(c.gens, c.orders):
                # value of the lifted character at the CRT generator above g
                r, m = g, c.modulus
                for c2 in comps2:
                    if c2 is not c:
                        r = crt_pair(r, m, 1, c2.modulus)
                        m *= c2.modulus
                k = self.exponent(r)
                assert k is not None, "lift generator not a unit mod the old modulus"
                E = self.value_base()
                # chi(g) = e(k/E) must be an n-th root of unity
                assert (k * n) % E == 0
                exps2.append(k * n // E)
        return DirichletChar(M2, tuple(exps2))

    # -- invariants --------------------------------------------------------

    def is_even(self) -> bool:
        return self.exponent(-1) == 0

    def is_odd(self) -> bool:
        return not self.is_even()

    @property
    def conductor(self) -> int:
        f = 1
        i = 0
        for c in self._comps:
            if c.q != 2:
                n = c.orders[0]
                k = self.exps[i]
                o = n // gcd(n, k)
                if o > 1:
                    fe = 1
                    oo = o
                    while oo % c.q == 0:
                        oo //= c.q
                        fe += 1
                    f *= c.q**fe
                i += 1
            else:
                if c.e == 1:
                    continue
                if c.e == 2:
                    if self.exps[i]:
                        f *= 4
                    i += 1
                else:
                    s, t = self.exps[i], self.exps[i + 1]
                    ot = c.orders[1] // gcd(c.orders[1], t)
                    if ot > 1:
                        f *= 4 * ot
                    elif s:
                        f *= 4
                    i += 2
        return f

    def is_primitive(self) -> bool:
        return self.conductor == self.M

    def primitive_core(self) -> "DirichletChar":
        f = self.conductor
        if f == self.M:
            return self
        comps_f = _components_of(f)
        exps = []
        for c in comps_f:
            for g, n in zip(c.gens, c.orders):
                # any unit mod M congruent to g mod q^e works; chi factors through f
                m_val = g
                step = c.modulus
                while gcd(m_val, self.M) != 1:
                    m_val += step
                k = self.exponent(m_val)
                E = self.value_base()
                assert k is not None and (k * n) % E == 0
                exps.append(k * n // E)
        return DirichletChar(f, tuple(exps))


def trivial_char(M: int = 1) -> DirichletChar:
    return DirichletChar(M, tuple(0 for c in _components_of(M) for _ in c.orders))


def all_characters(M: int) -> list[DirichletChar]:
    comps = _components_of(M)
    orders = [n for c in comps for n in c.orders]
    out = []

    def rec(i, acc):
        if i == len(orders):
            out.append(DirichletChar(M, tuple(acc)))
            return
        for k in range(orders[i]):
            rec(i + 1, acc + [k])

    rec(0, [])
    return out


def teichmuller(p: int) -> DirichletChar:
    """Order p-1 character mod p sending the least primitive root to e(1/(p-1))."""
    if p == 2 or len(factorint(p)) != 1 or factorint(p)[0][1] != 1:
        raise NotOddPrimePower(f"{p} is not an odd prime")
    return DirichletChar(p, (1,))


def psi_generator(p: int) -> DirichletChar:
    """Order p character mod p^2 normalized by psi(1+p) = e(1/p)."""
    if p == 2 or len(factorint(p)) != 1 or factorint(p)[0][1] != 1:
        raise NotOddPrimePower(f"{p} is not an odd prime")
    comp = _Component(p, 2)
    g = comp.gens[0]
    n = comp.orders[0]  # p(p-1)
    k = comp.exponent_of(1 + p)[0]
    t = invmod(k % p, p)
    psi = DirichletChar(p * p, ((t * (p - 1)) % n,))
    assert psi(1 + p) == root_of_unity(p, 1)
    return psi


def kronecker_char(d: int) -> DirichletChar:
    """The quadratic character m -> (d/m) as a Dirichlet character mod |d|."""
    if not is_fundamental_discriminant(d) or d <= 0:
        raise NotFundamentalDiscriminant(f"{d} is not a positive fundamental discriminant")
    comps = _components_of(d)
    exps = []
    for c in comps:
        for g, n in zip(c.gens, c.orders):
            r, m = g, c.modulus
            for c2 in comps:
                if c2 is not c:
                    r = crt_pair(r, m, 1, c2.modulus)
                    m *= c2.modulus
            v = kronecker(d, r)
            assert v in (1, -1)
            exps.append(0 if v == 1 else n // 2)
    chi = DirichletChar(d, tuple(exps))
    return chi


def gauss_sum(chi: DirichletChar) -> CycNum:
    """tau(chi) = sum over units a mod M of chi(a) e(a/M); imprimitive allowed."""
    M = chi.M
    if M == 1:
        return CycNum.one()
    o = chi.order
    L = lcm(o, M)
    vec = [0] * L
    for a in range(1, M):
        if gcd(a, M) != 1:
            continue
        k = chi.exponent_ord(a)
        vec[((L // o) * k + (L // M) * a) % L] += 1
    return CycNum.from_vector(L, vec)


# -- hyper Kloosterman sums ------------------------------------------------


@dataclass(frozen=True)
class KloostermanQuery:
    d: int
    r: int
    M: int

    def __post_init__(self):
        if self.d < 1 or self.M < 1:
            raise ValueError("need dimension d >= 1 and modulus M >= 1")
        if gcd(self.r, self.M) != 1:
            raise NonUnitResidue(f"residue {self.r} shares a factor with {self.M}")


@lru_cache(maxsize=None)
def _kloosterman_histograms(d: int, M: int) -> dict[int, tuple[int, ...]]:
    """Histograms over Z/M of e((n_1+...+n_d)/M) by product class r.

    Computed by iterated convolution over the unit group: exact dynamic
    programming over the same (d-1)-fold enumeration as the definition.
    """
    units = [a for a in range(1, M) if gcd(a, M) == 1] or [1]
    cur = {a: np.zeros(M, dtype=np.int64) for a in units}
    for a in units:
        cur[a][a % M] = 1
    for _ in range(d - 1):
        nxt = {a: np.zeros(M, dtype=np.int64) for a in units}
        for u in units:
            shift = u % M
            for r in units:
                src = cur[r * invmod(u, M) % M]
                nxt[r] += np.roll(src, shift)
        cur = nxt
    return {a: tuple(int(x) for x in v) for a, v in cur.items()}


def kloosterman(q: KloostermanQuery) -> CycNum:
    """Exact Kl_d(r; M) in Q(zeta_M); CRT split over prime-power factors."""
    d, r, M = q.d, q.r % q.M, q.M
    if M == 1:
        return CycNum.one()
    fac = factorint(M)
    if len(fac) > 1:
        out = CycNum.one()
        for p, e in fac:
            m1 = p**e
            m2 = M // m1
            r1 = r * pow(invmod(m2 % m1, m1), d, m1) % m1
            out = out * kloosterman(KloostermanQuery(d, r1, m1))
        return out
    hist = _kloosterman_histograms(d, M)[r % M]
    return CycNum.from_vector(M, list(hist))


def kloosterman_bruteforce(d: int, r: int, M: int) -> CycNum:
    """Literal nested enumeration over (d-1)-tuples of units; test oracle."""
    if gcd(r, M) != 1:
        raise NonUnitResidue(f"{r} not a unit mod {M}")
    units = [a for a in range(1, M) if gcd(a, M) == 1] or [1]
    vec = [0] * M

    def rec(i, prod, total):
        if i == d - 1:
            last = r * invmod(prod, M) % M
            vec[(total + last) % M] += 1
            return
        for u in units:
            rec(i + 1, prod * u % M, total + u)

    rec(0, 1, 0)
    return CycNum.from_vector(M, vec)


def gurak_predicate(d: int, r: int, p: int) -> bool:
    """Non-vanishing criterion for Kl_d(r; p^2): r^((p-1)/gcd(d,p-1)) = 1 mod p."""
    if p == 2 or factorint(p)[0][1] != 1 or len(factorint(p)) != 1:
        raise NotOddPrimePower(f"{p} must be an odd prime")
    if gcd(r, p) != 1:
        raise NonUnitResidue(f"{r} not a unit mod {p}")
    return pow(r, (p - 1) // gcd(d, p - 1), p) == 1


# -- the order-p projection ---------------------------------------------------


def unit_projection(m: int, p: int) -> int:
    """Image of m in (1+pZ)/(1+p^2 Z): the residue m * w(m)^-1 mod p^2,
    where w(m) = m^p mod p^2 is the torsion part of m."""
    p2 = p * p
    if gcd(m, p) != 1:
        raise NonUnitResidue(f"{m} not a unit mod {p}")
    w = pow(m, p, p2)
    return m % p2 * invmod(w, p2) % p2


def is_p_primitive(m: int, p: int) -> bool:
    """True when the projection of m to (1+pZ)/(1+p^2Z) is nontrivial.

    Equivalent formulation m^(p-1) != 1 mod p^2 is computed independently
    and both are required to agree.
    """
    via_proj = unit_projection(m, p) != 1
    via_power = pow(m, p - 1, p * p) != 1
    assert via_proj == via_power, "projection characterizations disagree"
    return via_proj
