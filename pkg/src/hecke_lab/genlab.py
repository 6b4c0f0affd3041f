"""Field-generation evidence via Galois fixing groups on a shared ambient.

All statements here are finite truncations: value sets generate subfields
of one cyclotomic ambient, containments are decided exactly through the
Galois correspondence, and every report says the evidence is finite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

from .cyclo import CycNum, fixing_subgroup, root_of_unity
from .heckel import induced_L0, norm_average
from .quadfield import QuadField
from .rayclass import (
    HeckeChar,
    canonical_even_psi,
    cyclotomic_char,
    hecke_gauss_sum,
    intersection_depth,
)
from .resid import DirichletChar, is_p_primitive


def _unit_residues(M: int) -> list[int]:
    return [a for a in range(1, M + 1) if gcd(a, M) == 1] if M > 1 else [1]


def joint_fixing_subgroup(values: list[CycNum], M: int) -> list[int]:
    """Subgroup of (Z/MZ)^x fixing every value; decided per-value in each
    value's own small ambient (restriction of automorphisms)."""
    conditions = []
    for v in values:
        if v.M == 1 or v.is_rational():
            continue
        if M % v.M:
            raise ValueError(f"ambient {M} does not contain Q(zeta_{v.M})")
        conditions.append((v.M, set(fixing_subgroup([v], v.M))))
    out = []
    for a in _unit_residues(M):
        if all(a % m in fix for m, fix in conditions):
            out.append(a)
    return out


def subfield_evidence(S: list[CycNum], T: list[CycNum], M: int):
    """Decide Q(S) subset Q(T) inside Q(zeta_M) by comparing fixing groups.

    Returns ("contained", None) or ("not_contained", witness_exponent).
    """
    fix_S = set(joint_fixing_subgroup(S, M))
    fix_T = joint_fixing_subgroup(T, M)
    for a in fix_T:
        if a not in fix_S:
            return ("not_contained", a)
    return ("contained", None)


@dataclass
class GenerationQuery:
    eta_source: DirichletChar  # odd primitive Dirichlet character inducing eta
    field: QuadField
    p: int
    norm_bound: int = 200
    prime_bound: int = 200
    n_list: tuple[int, ...] = (4, 5, 6)

    def __post_init__(self):
        if self.norm_bound < 10 or self.prime_bound < 10:
            raise ValueError("bounds must be at least 10")


@dataclass
class GenerationOutcome:
    restriction_contained: bool
    restriction_witness: int | None
    chain: list[dict]
    evidence_level: str = "finite_evidence"
    notes: list[str] = field(default_factory=list)


def generation_report(q: GenerationQuery) -> GenerationOutcome:
    """Finite-evidence version of the field-generation chain.

    (i)  Q(eta_f on odd primes <= prime_bound coprime to p N(m))
         is contained in Q(norm averages at p-primitive m <= norm_bound);
    (ii) for each n: F(c', chi) = F(L-value) inside F(eta, chi), all fields
         generated over F = Q(mu_{p^n0 (p-1)}) by truncated value sets,
         with the L-value an exact product of finite character sums.
    """
    K, p = q.field, q.p
    eta = cyclotomic_char(K, q.eta_source)
    assert eta.is_totally_odd() and eta.is_primitive()
    Nm = int(eta.modulus.norm())
    series = norm_average(eta, q.norm_bound)

    # (i) restriction of the finite part to odd rational primes
    from .arith import factorint

    eta_prime_values = []
    for qprime in range(3, q.prime_bound + 1, 2):
        if len(factorint(qprime)) != 1 or factorint(qprime)[0][1] != 1:
            continue
        if (p * Nm) % qprime == 0:
            continue
        v = eta.finite(qprime)
        if not v.is_zero():
            eta_prime_values.append(v)
    wild_values = [
        v for m, v in series.wild_restriction(p).items() if not v.is_zero()
    ]
    M_i = 1
    for v in eta_prime_values + wild_values:
        M_i = lcm(M_i, v.M)
    verdict, witness = subfield_evidence(eta_prime_values, wild_values, M_i)

    # (ii) the chain through the L-value field, one level per n
    chain = []
    for n in q.n_list:
        psi = canonical_even_psi(p, n)
        chi = cyclotomic_char(K, psi)
        n0 = intersection_depth(p, eta.order, chi.order)
        F_gen = root_of_unity(p**n0 * (p - 1), 1)
        chi_gen = root_of_unity(chi.order, 1)
        lam = (q.eta_source * psi).conj()
        lval = induced_L0(K, lam)
        coprime_values = [
            v for m, v in series.coprime_restriction(p).items() if not v.is_zero()
        ]
        from .rayclass import unit_residues_mod

        eta_values = [
            eta.finite(res) for res in unit_residues_mod(K, eta.modulus)
        ]
        eta_values = [v for v in eta_values if not v.is_zero()]
        M = 1
        for v in coprime_values + eta_values + [F_gen, chi_gen, lval]:
            M = lcm(M, v.M)
        set_cprime = [F_gen, chi_gen] + coprime_values
        set_lval = [F_gen, lval]
        set_eta_chi = [F_gen, chi_gen] + eta_values
        lower, w1 = subfield_evidence(set_cprime, set_lval, M)
        upper, w2 = subfield_evidence(set_lval, set_cprime, M)
        top, w3 = subfield_evidence(set_lval, set_eta_chi, M)
        chain.append(
            {
                "n": n,
                "n0": n0,
                "cprime_in_lvalue": lower == "contained",
                "lvalue_in_cprime": upper == "contained",
                "lvalue_in_eta_chi": top == "contained",
                "witnesses": [w for w in (w1, w2, w3) if w is not None],
            }
        )
    return GenerationOutcome(
        restriction_contained=(verdict == "contained"),
        restriction_witness=witness,
        chain=chain,
        notes=[
            "containments are one-sided finite evidence at the stated bounds",
        ],
    )


@dataclass
class LinearRelationOutcome:
    hypothesis_verified: bool
    hypothesis_witness: int | None
    conclusion_base: bool | None         # sum a tau(eta) eta_f(p^2) = 0
    conclusion_primes: dict | None       # q -> bool
    falsification_candidate: bool
    witnesses: list


def linear_relation_check(
    A: list[HeckeChar],
    coeffs: list[CycNum],
    p: int,
    bound: int,
    q_list: list[int],
) -> LinearRelationOutcome:
    """Exact check of the Gauss-sum consequences of a norm-average relation.

    Hypothesis: sum over eta of a_eta c_eta(m) = 0 for all m <= bound with
    nontrivial p-projection.  Conclusions: sum a_eta tau(eta) eta_f(p^2) = 0
    and, for each odd prime q coprime to p and the moduli,
    sum a_eta tau(eta) eta_f(p^2 q) = 0.  A verified hypothesis with a
    failing conclusion is flagged as a falsification candidate.
    """
    series = [norm_average(eta, bound) for eta in A]
    hyp_witness = None
    for m in range(1, bound + 1):
        if m % p == 0 or not is_p_primitive(m, p):
            continue
        acc = CycNum.zero()
        for a_eta, s in zip(coeffs, series):
            acc = acc + a_eta * s(m)
        if not acc.is_zero():
            hyp_witness = m
            break
    if hyp_witness is not None:
        return LinearRelationOutcome(
            hypothesis_verified=False,
            hypothesis_witness=hyp_witness,
            conclusion_base=None,
            conclusion_primes=None,
            falsification_candidate=False,
            witnesses=[hyp_witness],
        )

    taus = [hecke_gauss_sum(eta) for eta in A]

    def conclusion_at(mult: int) -> bool:
        acc = CycNum.zero()
        for a_eta, eta, tau in zip(coeffs, A, taus):
            v = eta.finite(eta.field.element(mult))
            acc = acc + a_eta * tau * v
        return acc.is_zero()

    base_ok = conclusion_at(p * p)
    primes_ok = {}
    for qprime in q_list:
        Nm = int(A[0].modulus.norm())
        if qprime % 2 == 0 or (p * Nm) % qprime == 0:
            continue
        primes_ok[qprime] = conclusion_at(p * p * qprime)
    falsified = not base_ok or not all(primes_ok.values())
    witnesses = [] if not falsified else [
        ("base", base_ok)] + [(q, ok) for q, ok in primes_ok.items() if not ok]
    return LinearRelationOutcome(
        hypothesis_verified=True,
        hypothesis_witness=None,
        conclusion_base=base_ok,
        conclusion_primes=primes_ok,
        falsification_candidate=falsified,
        witnesses=witnesses,
    )


def galois_orbit_family(eta: HeckeChar, p: int, bound: int):
    """A pair (eta, eta^sigma) with sigma fixing the truncated wild norm
    averages, together with the +1/-1 coefficients; the induced relation
    hypothesis holds by construction of sigma."""
    series = norm_average(eta, bound)
    values = [v for m, v in series.wild_restriction(p).items() if not v.is_zero()]
    M = eta.value_base()
    for v in values:
        M = lcm(M, v.M)
    candidates = joint_fixing_subgroup(values, M)
    for a in candidates:
        if a % eta.order != 1 and gcd(a, eta.order) == 1:
            sigma_eta = eta.galois(a % eta.order)
            return [eta, sigma_eta], [CycNum.one(), CycNum.rational(-1)], a
    return [eta, eta], [CycNum.one(), CycNum.rational(-1)], 1
