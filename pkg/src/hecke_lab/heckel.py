"""Norm averages, Hecke L-series coefficients, exact L-values at s = 0,
a smoothed two-sided functional-equation evaluator, and the identity
engines tying Gauss sums to Kloosterman sums.

Exact L-values of induced characters reduce to the finite sums
L(0, phi) = -(1/f) sum phi(a) a of odd Dirichlet characters; the numeric
route evaluates the completed L-function from both ends of the functional
equation with incomplete Mellin integrals of the Gamma-factor kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import mpmath as mp

from .arith import factorint
from .cyclo import CycNum, GaloisElement, embed_complex, galois_apply, root_of_unity
from .quadfield import QuadField, QuadIdeal, ideals_of_norm
from .rayclass import (
    HeckeChar,
    canonical_even_psi,
    char_product,
    cyclotomic_char,
    hecke_gauss_sum,
    intersection_depth,
    sector_residues,
    trace_twist_constant,
)
from .resid import (
    DirichletChar,
    KloostermanQuery,
    gauss_sum,
    is_p_primitive,
    kloosterman,
    kronecker_char,
    psi_generator,
    teichmuller,
)


class EvenCharacter(ValueError):
    pass


class ParityMismatch(ValueError):
    pass


class PrecisionNotReached(RuntimeError):
    pass


class ExhaustedWithoutWitness(RuntimeError):
    pass


# -- norm averages and L-series coefficients -----------------------------------


class NormAvgSeries:
    """Exact values of m -> sum of eta over ideals of norm m, m <= bound."""

    def __init__(self, eta: HeckeChar, bound: int):
        self.eta = eta
        self.bound = bound
        K = eta.field
        vals = {}
        for m in range(1, bound + 1):
            acc = CycNum.zero()
            for ideal in ideals_of_norm(K, m):
                acc = acc + eta.on_ideal(ideal)
            vals[m] = acc
        self.values = vals

    def __call__(self, m: int) -> CycNum:
        if m > self.bound:
            raise ValueError(f"norm average requested beyond bound {self.bound}")
        return self.values[m]

    def coprime_restriction(self, p: int) -> dict[int, CycNum]:
        return {m: v for m, v in self.values.items() if m % p}

    def wild_restriction(self, p: int) -> dict[int, CycNum]:
        return {
            m: v
            for m, v in self.values.items()
            if m % p and is_p_primitive(m, p)
        }


def norm_average(eta: HeckeChar, bound: int) -> NormAvgSeries:
    return NormAvgSeries(eta, bound)


def lseries_coeffs(xi: HeckeChar, bound: int) -> dict[int, CycNum]:
    """Dirichlet-series coefficients of the Hecke L-function of xi."""
    return NormAvgSeries(xi, bound).values


# -- exact L-values -------------------------------------------------------------


def dirichlet_L0(phi: DirichletChar) -> CycNum:
    """L(0, phi) = -(1/f) sum_{a=1}^{f} phi(a) a for odd primitive phi."""
    if not phi.is_primitive():
        raise ValueError("dirichlet_L0 needs a primitive character")
    if phi.is_even():
        raise EvenCharacter("L(0, phi) vanishes for even phi")
    f = phi.M
    E = phi.value_base()
    vec = [0] * E
    for a in range(1, f):
        k = phi.exponent(a)
        if k is not None:
            vec[k] += a
    return CycNum.from_vector(E, vec) * CycNum.rational(Fraction(-1, f))


def induced_L0(K: QuadField, lam: DirichletChar) -> CycNum:
    """Exact L_K(0, lam o N) = L(0, lam) L(0, lam chi_D) for odd primitive lam
    with conductor coprime to d_K."""
    if lam.is_even():
        raise ParityMismatch("need an odd Dirichlet character to induce")
    if not lam.is_primitive():
        raise ValueError("induced_L0 needs a primitive character")
    if gcd(lam.M, K.d_K) != 1:
        raise ValueError("conductor must be coprime to the field discriminant")
    chi_d = kronecker_char(K.d_K)
    prod = lam * chi_d
    assert prod.is_primitive() and prod.is_odd()
    return dirichlet_L0(lam) * dirichlet_L0(prod)


# -- coefficient-level identity checks ------------------------------------------


def partial_L_coefficient_mismatches(
    eta: HeckeChar, j: int, p: int, bound: int
) -> list[int]:
    """Offending m <= bound where the twisted-average expression of the
    wild-restricted L-series has the wrong coefficient; empty means the
    identity holds exactly up to the bound."""
    omega = teichmuller(p)
    psi = psi_generator(p)
    series = norm_average(eta, bound)
    bad = []
    for m in range(1, bound + 1):
        c = series(m)
        omj = (omega**j)(m)
        lhs = (
            c * omj
            if m % p and is_p_primitive(m, p)
            else CycNum.zero()
        )
        rhs = c * omj * CycNum.rational(Fraction(p - 1, p))
        acc = CycNum.zero()
        for i in range(1, p):
            acc = acc + (psi**i * omega**j)(m)
        rhs = rhs - c * acc * CycNum.rational(Fraction(1, p))
        if lhs != rhs:
            bad.append(m)
    return bad


def gauss_multiplicativity_sides(
    phi: HeckeChar, chi: HeckeChar, M: int
) -> tuple[CycNum, CycNum]:
    """Both sides of tau(chi phi) = tau(chi) tau(phi) chi(m_phi) phi_f(M),
    where chi has rational modulus M O_K and phi is prime to it."""
    prod = char_product(chi, phi)
    lhs = hecke_gauss_sum(prod)
    k = chi.ideal_exponent(phi.modulus)
    assert k is not None
    phiM = phi.finite(M)
    rhs = hecke_gauss_sum(chi) * hecke_gauss_sum(phi) * root_of_unity(chi.value_base(), k) * phiM
    return lhs, rhs


def gauss_decomposition_sides(K: QuadField, psi: DirichletChar) -> tuple[CycNum, CycNum]:
    """Both sides of tau(psi o N) = chi_D(p)^n psi(d_K) tau(psi)^2 for psi of
    modulus p^n; for imprimitive psi both sides vanish."""
    fac = factorint(psi.M)
    assert len(fac) == 1
    p, n = fac[0]
    chi = cyclotomic_char(K, psi)
    lhs = hecke_gauss_sum(chi)
    chi_d = kronecker_char(K.d_K)
    sign = chi_d(p) ** n
    rhs = sign * psi(K.d_K) * gauss_sum(psi) ** 2
    return lhs, rhs


def twisted_average(K: QuadField, j: int, m: int, p: int) -> CycNum:
    """sum_{i=1}^{p-1} tau(psi^i omega^j o N) psi^i(m), exact."""
    if gcd(m, p) != 1:
        raise ValueError("m must be coprime to p")
    omega = teichmuller(p)
    psi = psi_generator(p)
    acc = CycNum.zero()
    for i in range(1, p):
        phi = psi**i * omega**j
        tau = hecke_gauss_sum(cyclotomic_char(K, phi))
        acc = acc + tau * (psi**i)(m)
    return acc


def twisted_nonvanish_search(K: QuadField, m: int, p: int) -> tuple[int, CycNum]:
    """Least j in 1..p-1 with a nonzero twisted average; loud failure if none
    exists (that would falsify the non-vanishing statement here)."""
    for j in range(1, p):
        val = twisted_average(K, j, m, p)
        if not val.is_zero():
            return j, val
    raise ExhaustedWithoutWitness(
        f"twisted averages vanish for all j = 1..{p-1} at m={m}, p={p}, D={K.D}"
    )


def kloosterman_link_sides(K: QuadField, m: int, p: int) -> tuple[CycNum, CycNum, int]:
    """Both sides of sum_j omega^j(kappa m) T_j = C p (p-1) Kl_2((kappa m d_K)^-1; p^2)
    with C = chi_D(p)^2 instantiated concretely, plus the Kloosterman residue."""
    if gcd(m, p) != 1:
        raise ValueError("m must be coprime to p")
    from .arith import invmod

    omega = teichmuller(p)
    p2 = p * p
    kappa0 = invmod(m * K.d_K, p)
    kappa = pow(kappa0, p, p2)  # torsion lift, so psi(kappa) = 1
    lhs = CycNum.zero()
    for j in range(1, p):
        lhs = lhs + (omega**j)(kappa * m) * twisted_average(K, j, m, p)
    r = invmod(kappa * m * K.d_K, p2)
    chi_d = kronecker_char(K.d_K)
    c_const = chi_d(p) ** 2
    rhs = c_const * CycNum.rational(p * (p - 1)) * kloosterman(KloostermanQuery(2, r, p2))
    return lhs, rhs, r


# -- numeric L-values -------------------------------------------------------------


@dataclass
class AFEParams:
    """Cut parameter, truncation, and working precision of the two-sided sum."""

    t: float = 1.0
    X: int | None = None
    prec: int = 12

    def __post_init__(self):
        if not (0.25 <= self.t <= 4.0):
            raise ValueError("cut parameter t must lie in [1/4, 4]")
        if self.prec < 1:
            raise ValueError("prec must be >= 1")


def _tail_length(Q, prec, t, degree) -> int:
    with mp.workdps(20):
        digits = prec + 4
        if degree == 2:
            y = digits * mp.log(10) / (2 * mp.pi)
        else:
            y = mp.sqrt(digits * mp.log(10) / mp.pi)
        return int(mp.ceil(Q * y / t)) + 1


def _incomplete_kernel_deg1(s, y):
    # Mellin tail of 2x exp(-pi x^2) from y: pi^-((s+1)/2) Gamma((s+1)/2, pi y^2)
    return mp.pi ** (-(s + 1) / 2) * mp.gammainc((s + 1) / 2, mp.pi * y * y)


def _incomplete_kernel_deg2(s, y):
    """Mellin tail of 4x K0(2 pi x) from y, via the full Gamma factor minus
    the power-series integral of the Bessel kernel over (0, y)."""
    full = mp.pi ** (-(s + 1)) * mp.gamma((s + 1) / 2) ** 2
    if y <= 0:
        return full
    logpy = mp.log(mp.pi * y)
    gam = mp.euler
    acc = mp.mpf(0)
    ck = mp.mpf(1)  # pi^(2k) / (k!)^2
    hk = mp.mpf(0)  # harmonic number H_k
    ypow = y ** (s + 1)
    y2 = y * y
    k = 0
    pi2 = mp.pi * mp.pi
    tol = mp.mpf(10) ** (-mp.mp.dps - 5)
    biggest = mp.mpf(0)
    while True:
        denom = s + 2 * k + 1
        jk = ypow / denom
        term = ck * jk * (-logpy - gam + 1 / denom + hk)
        acc += term
        biggest = max(biggest, abs(term))
        if k > 3 and abs(term) < tol * max(biggest, 1):
            break
        k += 1
        ck = ck * pi2 / (k * k)
        hk += mp.mpf(1) / k
        ypow = ypow * y2
        if k > 600:
            raise PrecisionNotReached("kernel series did not converge")
    return full - 4 * acc


def numeric_L(
    xi,
    s,
    params: AFEParams | None = None,
    coeffs: dict[int, CycNum] | None = None,
):
    """Numeric L(s, xi) by the smoothed two-sided functional equation.

    xi is either a primitive odd DirichletChar (degree 1) or a primitive
    totally odd HeckeChar over a real quadratic field (degree 2).  Returns
    an mpmath complex number; the completed-function value is available
    via numeric_Lambda.
    """
    lam, gamma_factor, _ = _lambda_value(xi, s, params, coeffs)
    return lam / gamma_factor


def numeric_Lambda(xi, s, params: AFEParams | None = None, coeffs=None):
    lam, _, _ = _lambda_value(xi, s, params, coeffs)
    return lam


def _lambda_value(xi, s, params, coeffs):
    params = params or AFEParams()
    prec = params.prec
    with mp.workdps(2 * prec + 15):
        s = mp.mpf(s)
        t = mp.mpf(params.t)
        if isinstance(xi, DirichletChar):
            degree = 1
            if xi.is_even() or not xi.is_primitive() or xi.order == 1:
                raise ValueError("degree-1 path needs an odd primitive nontrivial character")
            f = xi.M
            Q = mp.sqrt(f)
            tau = embed_complex(gauss_sum(xi), 2 * prec + 10)
            W = tau / (mp.mpc(0, 1) * mp.sqrt(f))
            a_of = lambda n: xi(n)
            abar_of = lambda n: xi.conj()(n)
            kernel = _incomplete_kernel_deg1
        else:
            degree = 2
            if not (xi.is_totally_odd() and xi.is_primitive()):
                raise ValueError("degree-2 path needs a totally odd primitive character")
            K = xi.field
            Nm = int(xi.modulus.norm())
            Q = mp.sqrt(K.d_K * Nm)
            tau = embed_complex(hecke_gauss_sum(xi), 2 * prec + 10)
            W = tau / (mp.mpc(0, 1) ** 2 * mp.sqrt(Nm))
            X_need = _tail_length(Q, prec, min(params.t, 1 / params.t), 2)
            table = coeffs if coeffs is not None else lseries_coeffs(xi, X_need)
            conj_table = {m: v.conj() for m, v in table.items()}
            a_of = lambda n: table[n]
            abar_of = lambda n: conj_table[n]
            kernel = _incomplete_kernel_deg2

        X1 = _tail_length(Q, prec, params.t, degree)
        X2 = _tail_length(Q, prec, 1 / params.t, degree)
        if params.X is not None:
            if params.X < max(X1, X2):
                raise PrecisionNotReached(
                    f"X = {params.X} below the tail bound {max(X1, X2)}"
                )
            X1 = X2 = params.X

        emb = lambda v: embed_complex(v, 2 * prec + 10) if isinstance(v, CycNum) else mp.mpc(v)
        total = mp.mpc(0)
        for n in range(1, X1 + 1):
            a = emb(a_of(n))
            if a == 0:
                continue
            total += a * (Q / n) ** s * kernel(s, n * t / Q)
        dual = mp.mpc(0)
        for n in range(1, X2 + 1):
            a = emb(abar_of(n))
            if a == 0:
                continue
            dual += a * (Q / n) ** (1 - s) * kernel(1 - s, n / (t * Q))
        lam = total + W * dual
        if degree == 1:
            gamma_factor = Q**s * mp.pi ** (-(s + 1) / 2) * mp.gamma((s + 1) / 2)
        else:
            gamma_factor = Q**s * mp.pi ** (-(s + 1)) * mp.gamma((s + 1) / 2) ** 2
        return mp.mpc(lam), gamma_factor, W


# -- the L-value averaging experiment ---------------------------------------------


@dataclass
class AveragingRun:
    """Outcome of the sector-averaged L-value computation at one level n."""

    n: int
    n0: int
    twist_constant: int
    group_size: int
    sector_size: int
    lhs: complex
    main_term: complex
    residual: float
    lhs_exact: CycNum | None = None


def _averaging_galois_exponents(p: int, n0: int, eta_order: int, chi_order: int):
    """Exponents representing Gal(F(eta,chi)/F(eta)) on Q(mu_M), M = lcm of
    the value fields."""
    from .cyclo import fixing_subgroup

    A = lcm(p**n0 * (p - 1), eta_order)
    M = lcm(A, chi_order)
    return M, fixing_subgroup([root_of_unity(A, 1)], M)


def averaging_experiment(
    K: QuadField,
    theta: DirichletChar,
    p: int,
    n_list: list[int],
    r_ideal: QuadIdeal,
    mode: str = "exact_induced",
    prec: int = 12,
    eta: HeckeChar | None = None,
) -> list[AveragingRun]:
    """Sector-averaged trace of L(0) values against the norm-average main term.

    The averaged object is the Galois trace of chi(delta w^-1) L(0, conj(eta chi))
    over the residue sector delta = -b mod p^n0, normalized by |G| N(p^n) and by
    the tame Gauss factor tau(conj eta) conj(eta)_f(p^n), with the reference
    ideal shifted to w = r * (d_K m_eta)^-1.  Under this normalization the
    average is an exact norm-fiber detector: the Gauss sum of each conjugate
    chi^s concentrates on the sector, the products tau(chi^s) tau(conj chi^s)
    collapse to N(p^n), and the surviving Galois average of chi^s on ideal
    classes pins N(a) = N(r), leaving sqrt(d_K)/((pi i)^2 N(r)) times the norm
    average of eta.  (The uncompensated average provably drifts to zero: its
    detector sits on the norm fiber of d_K N(m) N(r), where eta vanishes.)

    In exact_induced mode eta = theta o N and every L-value is an exact
    product of finite character sums; the trace is a literal Galois-orbit
    sum applied to one exact L-value.  In numeric mode eta may be any
    totally odd primitive character with p coprime to its modulus; each
    conjugate L-value is evaluated by the functional-equation engine (this
    leg leans on the exact reciprocity law, which is tested separately).
    """
    if mode not in ("exact_induced", "numeric"):
        raise ValueError("mode must be exact_induced or numeric")
    if mode == "exact_induced":
        if theta.is_even():
            raise ParityMismatch("the tame character must be induced from an odd one")
        eta = cyclotomic_char(K, theta)
    else:
        assert eta is not None and eta.is_totally_odd() and eta.is_primitive()
    if gcd(int(r_ideal.norm().numerator) * int(r_ideal.norm().denominator), p) != 1:
        raise ValueError("the reference ideal must have norm coprime to p")

    arg_ideal = r_ideal * (K.different * eta.modulus).inverse()
    tau_eta_bar = hecke_gauss_sum(eta.conj())

    runs = []
    for n in n_list:
        psi = canonical_even_psi(p, n)
        chi = cyclotomic_char(K, psi)
        n0 = intersection_depth(p, eta.order, chi.order)
        b = trace_twist_constant(chi, n0)
        M_gal, exps = _averaging_galois_exponents(p, n0, eta.order, chi.order)
        pn = p**n
        E = psi.value_base()
        L_loc = lcm(E, pn)
        k_pn = eta.conj().finite_exponent(K.element(pn))
        compensator = tau_eta_bar * root_of_unity(eta.value_base(), k_pn)

        # per-residue data of the sector delta = -b mod p^n0
        tw, nw = K.tr_w, K.nm_w
        sector = []
        for (x, y) in sector_residues(K, p, n, n0, (-b) % p**n0):
            nrm = (x * x + tw * x * y + nw * y * y) % pn
            e = psi.exponent(nrm)
            tr = (2 * x + tw * y) % pn
            sector.append((e, tr))

        if mode == "exact_induced":
            lam1 = (theta * psi).conj()
            L1 = induced_L0(K, lam1.primitive_core() if not lam1.is_primitive() else lam1)
            total = CycNum.zero()
            for a in exps:
                chi_a = chi.galois(a % chi.order) if gcd(a, chi.order) == 1 else None
                assert chi_a is not None
                k_r = chi_a.ideal_exponent(arg_ideal)
                assert k_r is not None
                vec = [0] * L_loc
                for e, tr in sector:
                    vec[((L_loc // E) * (a * e) + (L_loc // pn) * tr) % L_loc] += 1
                S_a = CycNum.from_vector(L_loc, vec)
                L_a = galois_apply(GaloisElement(M_gal, a), L1)
                term = L_a * root_of_unity(E, (-k_r) % E) * S_a
                total = total + term
            lhs_exact = (
                total
                * CycNum.rational(Fraction(1, len(exps) * pn * pn))
                * compensator.inverse()
            )
            lhs = complex(embed_complex(lhs_exact, max(prec, 15) + 5))
        else:
            lhs_exact = None
            acc = mp.mpc(0)
            with mp.workdps(2 * prec + 15):
                for a in exps:
                    chi_a = chi.galois(a % chi.order)
                    xi = char_product(eta, chi_a).conj()
                    L_a = numeric_L(xi, 0, AFEParams(prec=prec))
                    k_r = chi_a.ideal_exponent(arg_ideal)
                    vec = [0] * L_loc
                    for e, tr in sector:
                        vec[((L_loc // E) * (a * e) + (L_loc // pn) * tr) % L_loc] += 1
                    S_a = embed_complex(CycNum.from_vector(L_loc, vec), 2 * prec + 10)
                    phase = embed_complex(root_of_unity(E, (-k_r) % E), 2 * prec + 10)
                    acc += L_a * phase * S_a
                comp = embed_complex(compensator, 2 * prec + 10)
                lhs = complex(acc / (len(exps) * pn * pn) / comp)

        main = _main_term(K, eta, r_ideal, prec=max(prec, 15))
        residual = abs(lhs - main)
        runs.append(
            AveragingRun(
                n=n,
                n0=n0,
                twist_constant=b,
                group_size=len(exps),
                sector_size=len(sector),
                lhs=lhs,
                main_term=main,
                residual=float(residual),
                lhs_exact=lhs_exact,
            )
        )
    return runs


def _main_term(K: QuadField, eta: HeckeChar, r_ideal: QuadIdeal, prec: int = 15) -> complex:
    """sqrt(d_K) / ((pi i)^2 N(r)) * sum over ideals of norm N(r) of eta."""
    nrm = r_ideal.norm()
    acc = CycNum.zero()
    if nrm.denominator == 1:
        for ideal in ideals_of_norm(K, int(nrm)):
            acc = acc + eta.on_ideal(ideal)
    with mp.workdps(prec + 10):
        if acc.is_zero():
            return complex(0)
        c = embed_complex(acc, prec)
        val = mp.sqrt(K.d_K) / ((mp.pi * mp.mpc(0, 1)) ** 2 * mp.mpf(
            nrm.numerator
        ) / nrm.denominator) * c
        return complex(val)


def primitive_nonvanish_search(
    eta: HeckeChar, p: int, bound: int
) -> tuple[int, CycNum] | None:
    """Least m <= bound with p-primitive projection and nonzero norm average;
    None means inconclusive at this bound."""
    series = norm_average(eta, bound)
    for m in range(1, bound + 1):
        if m % p == 0 or not is_p_primitive(m, p):
            continue
        v = series(m)
        if not v.is_zero():
            return m, v
    return None
