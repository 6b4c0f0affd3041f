"""Strict ray class groups and Hecke characters over real quadratic fields.

With h(K) = 1 the strict ray class group mod an integral ideal m is
presented as [(O_K/m)^x x {+-1}^2] / <(-1 mod m, (-,-)), (eps mod m, sgn eps)>.
Characters come in three concrete flavors sharing one interface: characters
of that finite presentation, norm pullbacks psi o N of Dirichlet characters
(any p-power modulus, no group presentation needed), and products over
coprime moduli.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .arith import smith_normal_form
from .cyclo import CycNum, root_of_unity, root_of_unity_log
from .quadfield import (
    QuadField,
    QuadIdeal,
    QuadInt,
    factor_ideal,
    find_generator,
    prime_splitting,
    residue_ring_units,
)
from .resid import DirichletChar


class NoBetaFound(RuntimeError):
    pass


class RamifiedPrime(ValueError):
    pass


class NonCoprimeModuli(ValueError):
    pass


class OutOfValidityRange(ValueError):
    pass


def _sign_bits(v: QuadInt) -> tuple[int, int]:
    s1, s2 = v.sign_vector()
    assert s1 != 0 and s2 != 0
    return ((1 - s1) // 2, (1 - s2) // 2)


_group_cache: dict = {}


def ray_class_group(K: QuadField, modulus: QuadIdeal) -> "RayClassGroup":
    key = modulus.key()
    if key not in _group_cache:
        _group_cache[key] = RayClassGroup(K, modulus)
    return _group_cache[key]


class RayClassGroup:
    """Strict ray class group Cl_K(m) for an integral modulus m, h(K) = 1."""

    def __init__(self, K: QuadField, modulus: QuadIdeal):
        assert modulus.is_integral()
        self.K = K
        self.modulus = modulus
        self.ring = residue_ring_units(K, modulus)
        R = self.ring
        k = len(R.basis) + 2
        self._k = k

        # covering group C = units x {+-1}^2, relations: component orders
        # plus the images of the units -1 and eps
        orders = list(R.orders) + [2, 2]
        cols = []
        for i, d in enumerate(orders):
            col = [0] * k
            col[i] = d
            cols.append(col)
        for u in (K.element(-1), K.eps):
            col = list(R.dlog(u)) + list(_sign_bits(u))
            cols.append(col)
        A = [[cols[j][i] for j in range(len(cols))] for i in range(k)]
        U, D, V = smith_normal_form(A)
        self._U = U
        self.invariants = tuple(D[i][i] for i in range(k))
        assert all(s > 0 for s in self.invariants)
        self.order = 1
        for s in self.invariants:
            self.order *= s

        # exact order check: |Cl| = |units| * 4 / |image of unit subgroup|
        rel_vecs = [tuple(A[i][len(orders) + j] for i in range(k)) for j in range(2)]
        img = {(0,) * k}
        changed = True
        while changed:
            changed = False
            for vec in rel_vecs:
                add = {self._add_mod_orders(x, vec, orders) for x in img} - img
                if add:
                    img |= add
                    changed = True
        assert self.order == R.order * 4 // len(img)

        # class vectors of all unit residues (with trivial signs), cached
        self._resvec = {}
        for res in R.units:
            self._resvec[res] = self._map(list(R.dlog(res)) + [0, 0])
        self._sign_vecs = (
            self._map([0] * len(R.orders) + [1, 0]),
            self._map([0] * len(R.orders) + [0, 1]),
        )
        self._class_of_prime_cache: dict = {}

    @staticmethod
    def _add_mod_orders(a, b, orders):
        return tuple((x + y) % d for x, y, d in zip(a, b, orders))

    def _map(self, v: list[int]) -> tuple[int, ...]:
        U, s = self._U, self.invariants
        return tuple(
            sum(U[i][j] * v[j] for j in range(self._k)) % s[i] for i in range(self._k)
        )

    # -- classes -----------------------------------------------------------

    def class_of_residue(self, res, signs=(0, 0)) -> tuple[int, ...]:
        """Class of (alpha mod m, sign bits); residue may be a pair or QuadInt."""
        if isinstance(res, QuadInt):
            res = self.modulus.reduce_element(res)
        elif isinstance(res, int):
            res = self.modulus.reduce_residue(res, 0)
        base = self._resvec[res]
        out = base
        if signs[0]:
            out = self.add(out, self._sign_vecs[0])
        if signs[1]:
            out = self.add(out, self._sign_vecs[1])
        return out

    def class_of_element(self, alpha: QuadInt) -> tuple[int, ...]:
        """Class of the principal ideal (alpha): pair (alpha mod m, sgn alpha)."""
        return self.class_of_residue(
            self.modulus.reduce_element(alpha), _sign_bits(alpha)
        )

    def class_of_prime(self, p: QuadIdeal) -> tuple[int, ...]:
        key = p.key()
        if key not in self._class_of_prime_cache:
            g = find_generator(self.K, p)
            self._class_of_prime_cache[key] = self.class_of_element(g)
        return self._class_of_prime_cache[key]

    def class_of(self, ideal: QuadIdeal) -> tuple[int, ...]:
        """Class of a fractional ideal coprime to the modulus."""
        vec = self.identity
        num = QuadIdeal(self.K, ideal.a, ideal.b, ideal.c, 1)
        for p, e in factor_ideal(self.K, num):
            if not p.is_coprime_to(self.modulus):
                raise ValueError(f"{ideal} is not coprime to the modulus")
            vec = self.add(vec, self.mul_class(self.class_of_prime(p), e))
        if ideal.den != 1:
            for q, e in factor_ideal(self.K, self.K.principal_ideal(self.K.element(ideal.den))):
                if not q.is_coprime_to(self.modulus):
                    raise ValueError(f"{ideal} is not coprime to the modulus")
                vec = self.add(vec, self.mul_class(self.class_of_prime(q), -e))
        return vec

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self._k

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % s for x, y, s in zip(a, b, self.invariants))

    def mul_class(self, a, e: int) -> tuple[int, ...]:
        return tuple((x * e) % s for x, s in zip(a, self.invariants))

    def elements(self):
        out = [self.identity]
        for i, s in enumerate(self.invariants):
            if s == 1:
                continue
            step = tuple(int(j == i) for j in range(self._k))
            out = [
                tuple((v[j] + e * step[j]) % self.invariants[j] for j in range(self._k))
                for v in out
                for e in range(s)
            ]
        return out

    def __repr__(self):
        nontriv = [s for s in self.invariants if s > 1]
        return f"RayClassGroup({self.modulus!r}, invariants={nontriv or [1]})"


class HeckeChar:
    """Shared interface of the three concrete Hecke character kinds.

    Values are roots of unity e(k / value_base); the *_exponent methods
    return k (or None on non-coprime arguments), which keeps large
    character sums in integer exponent arithmetic.
    """

    field: QuadField
    modulus: QuadIdeal

    # subclasses implement: value_base, finite_exponent, ideal_exponent,
    # sign_exponents, order, conductor, is_primitive, galois, conj, __eq__

    def finite(self, alpha) -> CycNum:
        """xi_f at a residue (pair or QuadInt or rational integer)."""
        k = self.finite_exponent(alpha)
        return CycNum.zero() if k is None else root_of_unity(self.value_base(), k)

    def on_ideal(self, ideal: QuadIdeal) -> CycNum:
        k = self.ideal_exponent(ideal)
        return CycNum.zero() if k is None else root_of_unity(self.value_base(), k)

    def sign_values(self) -> tuple[int, int]:
        """xi_infty at the two sign places, each +1 or -1."""
        E = self.value_base()
        out = []
        for k in self.sign_exponents():
            assert (2 * k) % E == 0
            out.append(1 if k % E == 0 else -1)
        return tuple(out)

    def is_totally_odd(self) -> bool:
        return self.sign_values() == (-1, -1)

    def is_totally_even(self) -> bool:
        return self.sign_values() == (1, 1)

    def __mul__(self, other: "HeckeChar") -> "HeckeChar":
        return char_product(self, other)

    def __pow__(self, e: int) -> "HeckeChar":
        raise NotImplementedError


class GroupHeckeChar(HeckeChar):
    """Character of an explicit RayClassGroup presentation."""

    def __init__(self, group: RayClassGroup, exps: tuple[int, ...]):
        self.group = group
        self.field = group.K
        self.modulus = group.modulus
        self.exps = tuple(e % s for e, s in zip(exps, group.invariants))
        self._conductor = None
        o = 1
        for t, s in zip(self.exps, group.invariants):
            o = lcm(o, s // gcd(s, t))
        self._order = o

    def value_base(self) -> int:
        return self._order

    def class_exponent(self, vec) -> int:
        # all values are order-th roots; t*o/s is integral since s/gcd(s,t) | o
        o = self._order
        total = 0
        for t, v, s in zip(self.exps, vec, self.group.invariants):
            total += (t * o // s) * v
        return total % o

    def finite_exponent(self, alpha):
        if isinstance(alpha, QuadInt):
            res = self.modulus.reduce_element(alpha)
        elif isinstance(alpha, int):
            res = self.modulus.reduce_residue(alpha, 0)
        else:
            res = self.modulus.reduce_residue(*alpha)
        if not self.group.ring.is_unit(res):
            return None
        return self.class_exponent(self.group.class_of_residue(res))

    def ideal_exponent(self, ideal):
        try:
            vec = self.group.class_of(ideal)
        except ValueError:
            return None
        return self.class_exponent(vec)

    def sign_exponents(self) -> tuple[int, int]:
        return (
            self.class_exponent(self.group._sign_vecs[0]),
            self.class_exponent(self.group._sign_vecs[1]),
        )

    @property
    def order(self) -> int:
        return self._order

    def __pow__(self, e: int) -> "GroupHeckeChar":
        return GroupHeckeChar(self.group, tuple(t * e for t in self.exps))

    def conj(self) -> "GroupHeckeChar":
        return self ** (-1)

    def galois(self, a: int) -> "GroupHeckeChar":
        if gcd(a, self.order) != 1:
            raise ValueError("galois exponent must be prime to the order")
        return self**a

    def __eq__(self, other):
        return (
            isinstance(other, GroupHeckeChar)
            and self.group is other.group
            and self.exps == other.exps
        )

    def __hash__(self):
        return hash((id(self.group), self.exps))

    def conductor(self) -> QuadIdeal:
        if self._conductor is not None:
            return self._conductor
        from .quadfield import ideal_divisors

        K, m = self.field, self.modulus
        # descending divisors are gcd-closed, so the first one by norm is
        # the divisibility-minimal conductor
        best = m
        for f in sorted(ideal_divisors(K, m), key=lambda I: (int(I.norm()), I.key())):
            if self._descends_to(f):
                best = f
                break
        self._conductor = best
        return best

    def _descends_to(self, f: QuadIdeal) -> bool:
        # trivial on classes of (alpha, (+,+)) with alpha = 1 mod f
        one = self.field.one
        for res in self.group.ring.units:
            alpha = QuadInt(self.field, res[0], res[1])
            if f.contains(alpha - one):
                if self.class_exponent(self.group.class_of_residue(res)) != 0:
                    return False
        return True

    def is_primitive(self) -> bool:
        return self.conductor() == self.modulus

    def __repr__(self):
        return f"GroupHeckeChar({self.modulus!r}, exps={self.exps})"


def characters(group: RayClassGroup, filter: str = "all") -> list[GroupHeckeChar]:
    """All characters of the group, optionally filtered."""
    out = []
    tuples = [()]
    for s in group.invariants:
        tuples = [t + (e,) for t in tuples for e in range(s)]
    for t in tuples:
        chi = GroupHeckeChar(group, t)
        if filter == "all":
            out.append(chi)
        elif filter == "totally_odd" and chi.is_totally_odd():
            out.append(chi)
        elif filter == "totally_even" and chi.is_totally_even():
            out.append(chi)
        elif filter == "primitive" and chi.is_primitive():
            out.append(chi)
    return out


class CyclotomicHeckeChar(HeckeChar):
    """psi o N for a Dirichlet character psi of odd prime-power modulus."""

    def __init__(self, K: QuadField, psi: DirichletChar):
        from .arith import factorint

        fac = factorint(psi.M)
        if len(fac) != 1 or fac[0][0] == 2:
            raise ValueError("cyclotomic characters need an odd prime-power modulus")
        p = fac[0][0]
        if prime_splitting(K, p).kind == "ramified":
            raise RamifiedPrime(f"{p} ramifies in Q(sqrt({K.D}))")
        self.field = K
        self.psi = psi
        self.p, self.n = p, fac[0][1]
        self.modulus = K.principal_ideal(K.element(psi.M))

    def value_base(self) -> int:
        return self.psi.value_base()

    def _norm_mod(self, alpha) -> int:
        K, M = self.field, self.psi.M
        if isinstance(alpha, QuadInt):
            x, y = int(alpha.x), int(alpha.y)
        elif isinstance(alpha, int):
            x, y = alpha, 0
        else:
            x, y = alpha
        return (x * x + K.tr_w * x * y + K.nm_w * y * y) % M

    def finite_exponent(self, alpha):
        return self.psi.exponent(self._norm_mod(alpha))

    def ideal_exponent(self, ideal):
        nrm = ideal.norm()
        num, den = nrm.numerator, nrm.denominator
        kn = self.psi.exponent(num)
        kd = self.psi.exponent(den)
        if kn is None or kd is None:
            return None
        # norms of fractional ideals are squares of denominators times integers
        E = self.value_base()
        return (kn - kd) % E

    def sign_exponents(self) -> tuple[int, int]:
        k = self.psi.exponent(-1)
        return (k, k)

    @property
    def order(self) -> int:
        return self.psi.order

    def __pow__(self, e: int) -> "CyclotomicHeckeChar":
        return CyclotomicHeckeChar(self.field, self.psi**e)

    def conj(self) -> "CyclotomicHeckeChar":
        return self ** (-1)

    def galois(self, a: int) -> "CyclotomicHeckeChar":
        return CyclotomicHeckeChar(self.field, self.psi.galois(a))

    def conductor(self) -> QuadIdeal:
        K = self.field
        return K.principal_ideal(K.element(self.psi.conductor))

    def is_primitive(self) -> bool:
        return self.psi.is_primitive()

    def __eq__(self, other):
        return (
            isinstance(other, CyclotomicHeckeChar)
            and self.field.D == other.field.D
            and self.psi == other.psi
        )

    def __hash__(self):
        return hash((self.field.D, self.psi))

    def __repr__(self):
        return f"CyclotomicHeckeChar(D={self.field.D}, psi mod {self.psi.M}, order {self.order})"


def cyclotomic_char(K: QuadField, psi: DirichletChar) -> CyclotomicHeckeChar:
    return CyclotomicHeckeChar(K, psi)


class ProductHeckeChar(HeckeChar):
    """Pointwise product of two Hecke characters with coprime moduli."""

    def __init__(self, left: HeckeChar, right: HeckeChar):
        if left.field.D != right.field.D:
            raise ValueError("characters over different fields")
        if not left.modulus.is_coprime_to(right.modulus):
            raise NonCoprimeModuli(f"{left.modulus} and {right.modulus} share a factor")
        self.field = left.field
        self.left, self.right = left, right
        self.modulus = left.modulus * right.modulus

    def value_base(self) -> int:
        return lcm(self.left.value_base(), self.right.value_base())

    def _combine(self, ka, kb):
        if ka is None or kb is None:
            return None
        E = self.value_base()
        return ((E // self.left.value_base()) * ka + (E // self.right.value_base()) * kb) % E

    def finite_exponent(self, alpha):
        if not isinstance(alpha, (QuadInt, int)):
            alpha = QuadInt(self.field, alpha[0], alpha[1])
        return self._combine(
            self.left.finite_exponent(alpha), self.right.finite_exponent(alpha)
        )

    def ideal_exponent(self, ideal):
        return self._combine(
            self.left.ideal_exponent(ideal), self.right.ideal_exponent(ideal)
        )

    def sign_exponents(self):
        E = self.value_base()
        la, lb = self.left.sign_exponents()
        ra, rb = self.right.sign_exponents()
        return (
            ((E // self.left.value_base()) * la + (E // self.right.value_base()) * ra) % E,
            ((E // self.left.value_base()) * lb + (E // self.right.value_base()) * rb) % E,
        )

    @property
    def order(self) -> int:
        return lcm(self.left.order, self.right.order)

    def __pow__(self, e: int) -> "ProductHeckeChar":
        return ProductHeckeChar(self.left**e, self.right**e)

    def conj(self) -> "ProductHeckeChar":
        return self ** (-1)

    def galois(self, a: int) -> "ProductHeckeChar":
        return ProductHeckeChar(self.left.galois(a), self.right.galois(a))

    def conductor(self) -> QuadIdeal:
        return self.left.conductor() * self.right.conductor()

    def is_primitive(self) -> bool:
        return self.left.is_primitive() and self.right.is_primitive()

    def __eq__(self, other):
        return (
            isinstance(other, ProductHeckeChar)
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return f"ProductHeckeChar({self.left!r} * {self.right!r})"


def char_product(left: HeckeChar, right: HeckeChar) -> HeckeChar:
    """The character (xi*chi)(a) = xi(a) chi(a) mod the product modulus."""
    K = left.field
    if right.modulus == K.ring_of_integers:
        return left
    if left.modulus == K.ring_of_integers:
        return right
    return ProductHeckeChar(left, right)


def trivial_hecke_char(K: QuadField) -> GroupHeckeChar:
    G = ray_class_group(K, K.ring_of_integers)
    return GroupHeckeChar(G, (0,) * len(G.invariants))


# -- unit enumeration shared by the character sums ---------------------------


def unit_residues_mod(K: QuadField, modulus: QuadIdeal) -> list[tuple[int, int]]:
    """Residue pairs (x, y) of (O_K/modulus)^x, without a group presentation."""
    primes = [p for p, _ in factor_ideal(K, modulus)]
    out = []
    for res in modulus.residues():
        v = QuadInt(K, res[0], res[1])
        if all(not p.contains(v) for p in primes):
            out.append(res)
    return out


# -- Gauss sums ----------------------------------------------------------------


def admissible_betas(K: QuadField, modulus: QuadIdeal, count: int = 1):
    """Totally positive beta in (m*d_K)^-1 with (beta m d, m) = 1, sorted by
    increasing trace; lattice enumeration capped at 64 N(m d) points."""
    md = modulus * K.different
    J = md.inverse()
    e = J.den
    I = QuadIdeal(K, J.a, J.b, J.c, 1)
    cap = 64 * int(md.norm())
    import mpmath as mp

    found = []
    with mp.workdps(30):
        r = mp.sqrt(K.disc_w)
        w1 = (K.tr_w + r) / 2
        w2 = (K.tr_w - r) / 2
        t1, t2 = I.b + I.c * w1, I.b + I.c * w2
        B = mp.sqrt(int(I.norm())) * 2
        seen = 0
        while seen < cap and len(found) < count + 8:
            vmax = int(mp.floor(2 * B / (I.c * r))) + 1
            cands = []
            for v in range(-vmax, vmax + 1):
                lo = int(mp.floor((-B - v * t1) / I.a)) - 1
                hi = int(mp.ceil((B - v * t1) / I.a)) + 1
                for u in range(lo, hi + 1):
                    x, y = u * I.a + v * I.b, v * I.c
                    beta = QuadInt(K, Fraction(x, e), Fraction(y, e))
                    if beta.is_totally_positive():
                        cands.append(beta)
            seen = len(cands)
            cands.sort(key=lambda b: (b.trace(), b.x, b.y))
            found = []
            for beta in cands:
                ideal = K.principal_ideal(beta) * md
                if not ideal.is_integral():
                    continue
                if ideal.is_coprime_to(modulus):
                    found.append(beta)
                    if len(found) >= count + 8:
                        break
            if len(found) >= count:
                return found[:count]
            B = B * 2
            if seen >= cap:
                break
    if len(found) >= count:
        return found[:count]
    raise NoBetaFound(f"no admissible beta for modulus {modulus} within {cap} points")


def hecke_gauss_sum(xi: HeckeChar, beta: QuadInt | None = None) -> CycNum:
    """tau(xi) = xi(beta m d) * sum over units alpha of xi_f(alpha) e(Tr(alpha beta)).

    For p-power moduli beta = 1/p^n.  The value does not depend on the
    admissible beta; pass one explicitly to exercise that invariance.
    """
    K, m = xi.field, xi.modulus
    if m == K.ring_of_integers:
        return CycNum.one()
    if beta is None:
        if m.c == m.a and m.b == 0 and gcd(m.a, K.d_K) == 1:
            # rational modulus prime to the different: beta = 1/a works
            beta = QuadInt(K, Fraction(1, m.a), 0)
        else:
            beta = admissible_betas(K, m, 1)[0]
    prefactor_ideal = K.principal_ideal(beta) * m * K.different
    assert prefactor_ideal.is_integral() and prefactor_ideal.is_coprime_to(m)
    k0 = xi.ideal_exponent(prefactor_ideal)
    assert k0 is not None

    E = xi.value_base()
    # trace denominators divide the smallest rational integer in m
    T = m.smallest_rational()
    L = lcm(E, T)
    vec = [0] * L
    bx_n, bx_d = beta.x.numerator, beta.x.denominator
    by_n, by_d = beta.y.numerator, beta.y.denominator
    bd = lcm(bx_d, by_d)
    bx, by = bx_n * (bd // bx_d), by_n * (bd // by_d)
    tw, nw = K.tr_w, K.nm_w
    for (x, y) in unit_residues_mod(K, m):
        k = xi.finite_exponent((x, y))
        if k is None:
            continue
        # Tr(alpha * beta) with alpha = x + y w, beta = (bx + by w)/bd
        prod_x = x * bx - nw * y * by
        prod_y = x * by + y * bx + tw * y * by
        tr_num = 2 * prod_x + tw * prod_y
        ph = Fraction(tr_num, bd)
        assert L % ph.denominator == 0
        expo = (L // E) * k + (L // ph.denominator) * ph.numerator
        vec[expo % L] += 1
    return root_of_unity(L, (L // E) * k0) * CycNum.from_vector(L, vec)


# -- cyclotomic character family ------------------------------------------------


def canonical_even_psi(p: int, n: int) -> DirichletChar:
    """The primitive even Dirichlet character mod p^n (n >= 2) that is trivial
    on the torsion part and sends 1+p to e(1/p^(n-1))."""
    from .arith import invmod
    from .resid import _Component

    assert n >= 2
    comp = _Component(p, n)
    g = comp.gens[0]
    order_full = comp.orders[0]  # (p-1) p^(n-1)
    k = comp.exponent_of(1 + p)[0]
    pn1 = p ** (n - 1)
    s = invmod(k % pn1, pn1)
    psi = DirichletChar(p**n, ((s * (p - 1)) % order_full,))
    assert psi(1 + p) == root_of_unity(pn1, 1)
    assert psi.is_even() and psi.is_primitive() and psi.order == pn1
    return psi


def intersection_depth(p: int, eta_order: int, chi_order: int) -> int:
    """v_p of gcd(lcm(p^2, eta_order), chi_order): the exponent n0 > 1 with
    Q(mu_{p^2}, eta) meet Q(chi) = Q(mu_{p^n0})."""
    a = lcm(p * p, eta_order)
    g = gcd(a, chi_order)
    n0 = 0
    while g % p == 0:
        g //= p
        n0 += 1
    return n0


def trace_twist_constant(chi: CyclotomicHeckeChar, n0: int) -> int:
    """The unit b mod p^n0 with chi_f(1 + p^(n-n0) alpha) = e(b Tr(alpha) / p^n0).

    Valid once n >= 2 n0 (so that norms linearize); verified on random
    residues after extraction.
    """
    p, n = chi.p, chi.n
    if n < 2 * n0 or n <= 3 or n0 < 1:
        raise OutOfValidityRange(f"need n >= max(2*n0, 4), got n={n}, n0={n0}")
    K = chi.field
    pn0 = p**n0
    alpha0 = int((pn0 + 1) // 2)  # trace = pn0 + 1 = 1 mod p^n0
    u = 1 + p ** (n - n0) * alpha0
    val_k = chi.finite_exponent(K.element(u))
    assert val_k is not None
    val = root_of_unity(chi.value_base(), val_k)
    b = root_of_unity_log(val, pn0)
    if b is None or gcd(b, p) != 1:
        raise OutOfValidityRange(
            f"finite part is not a primitive p^{n0}-th root on the wild layer"
        )
    # spot-check the defining relation on deterministic sample residues
    import random

    rng = random.Random(20240511)
    for _ in range(10):
        x, y = rng.randrange(p**n0), rng.randrange(p**n0)
        alpha = K.element((x, y))
        u = K.element((1 + p ** (n - n0) * x, p ** (n - n0) * y))
        k = chi.finite_exponent(u)
        tr = int(alpha.trace())
        assert root_of_unity(chi.value_base(), k) == root_of_unity(pn0, b * tr)
    return b % pn0


def sector_residues(K: QuadField, p: int, n: int, n0: int, b: int):
    """All residues of (O_K/p^n)^x whose image in O_K/p^n0 is the rational
    unit b; parametrized as b + p^n0 (x + y w)."""
    pn, pn0 = p**n, p**n0
    step = pn0
    for y in range(p ** (n - n0)):
        for x in range(p ** (n - n0)):
            yield ((b + step * x) % pn, (step * y) % pn)


def sector_gauss_sum(chi: CyclotomicHeckeChar, n0: int, b: int | None = None) -> CycNum:
    """The partial Gauss sum: chi(d_K) times the sector sum over residues
    congruent to -b_chi mod p^n0 of chi_f(delta) e(Tr(delta)/p^n)."""
    p, n, K = chi.p, chi.n, chi.field
    if b is None:
        b = (-trace_twist_constant(chi, n0)) % p**n0
    pn = p**n
    E = chi.value_base()
    L = lcm(E, pn)
    vec = [0] * L
    tw, nw = K.tr_w, K.nm_w
    psi_exp = chi.psi.exponent
    for (x, y) in sector_residues(K, p, n, n0, b):
        nrm = (x * x + tw * x * y + nw * y * y) % pn
        k = psi_exp(nrm)
        tr = (2 * x + tw * y) % pn
        vec[((L // E) * k + (L // pn) * tr) % L] += 1
    k0 = chi.ideal_exponent(K.different)
    return root_of_unity(L, (L // E) * k0) * CycNum.from_vector(L, vec)


def galois_orbit_exponents(chi: CyclotomicHeckeChar, n0: int) -> list[int]:
    """Exponents a representing Gal(F(chi)/F) for F = Q(mu_{p^n0 (p-1)}),
    acting on the values of chi."""
    from .cyclo import fixing_subgroup

    E = chi.value_base()
    F_order = chi.p**n0 * (chi.p - 1)
    M = lcm(E, F_order)
    fix = fixing_subgroup([root_of_unity(F_order, 1)], M)
    # restrict to distinct actions on mu_E
    seen = set()
    out = []
    for a in fix:
        r = a % E
        if r not in seen:
            seen.add(r)
            out.append(r)
    return sorted(out)


def gauss_sum_averages(
    chi: CyclotomicHeckeChar, ideal: QuadIdeal, n0: int
) -> tuple[CycNum, CycNum]:
    """The two Galois averages of partial Gauss sums against chi(ideal):
    (1/|G|) sum_sigma tau_1(chi^s) tau(conj chi^s) chi^s(ideal) and
    (1/|G|) sum_sigma tau_1(chi^s) conj(chi^s)(ideal)."""
    exps = galois_orbit_exponents(chi, n0)
    acc1 = CycNum.zero()
    acc2 = CycNum.zero()
    for a in exps:
        cs = chi.galois(a)
        t1 = sector_gauss_sum(cs, n0)
        tbar = hecke_gauss_sum(cs.conj())
        k = cs.ideal_exponent(ideal)
        assert k is not None
        val = root_of_unity(cs.value_base(), k)
        acc1 = acc1 + t1 * tbar * val
        acc2 = acc2 + t1 * val.conj()
    inv = Fraction(1, len(exps))
    return (acc1 * CycNum.rational(inv), acc2 * CycNum.rational(inv))
