"""Field-generation evidence: fixing subgroups, containment chains, relations."""

from math import lcm

import pytest

from hecke_lab.cyclo import CycNum, root_of_unity
from hecke_lab.genlab import (
    GenerationQuery,
    galois_orbit_family,
    generation_report,
    joint_fixing_subgroup,
    linear_relation_check,
    subfield_evidence,
)
from hecke_lab.quadfield import QuadField, primes_above
from hecke_lab.rayclass import characters, cyclotomic_char, ray_class_group
from hecke_lab.resid import DirichletChar


def z(M, k=1):
    return root_of_unity(M, k)


class TestSubfieldEvidence:
    def test_trivial_contained(self):
        verdict, w = subfield_evidence([CycNum.one()], [z(8)], 8)
        assert verdict == "contained" and w is None

    def test_not_contained_with_witness(self):
        verdict, w = subfield_evidence([z(8)], [z(8, 1) + z(8, 7)], 8)
        assert verdict == "not_contained"
        assert w == 7  # fixes z8 + z8^-1 but moves z8

    def test_equal_sets(self):
        S = [z(12, 5), z(12, 1) + z(12, 7)]
        verdict, _ = subfield_evidence(S, S, 12)
        assert verdict == "contained"

    def test_monotone_in_truncation(self):
        # enlarging T can never flip contained -> not_contained
        S = [z(5)]
        T = [z(5, 2)]
        big_T = T + [z(15, 4), z(15, 7)]
        M = 15
        v1, _ = subfield_evidence(S, T, M)
        v2, _ = subfield_evidence(S, big_T, M)
        assert v1 == "contained"
        assert v2 == "contained"

    def test_joint_fixing_matches_direct(self):
        from hecke_lab.cyclo import fixing_subgroup

        vals = [z(8, 1) + z(8, 7), z(3)]
        M = 24
        assert joint_fixing_subgroup(vals, M) == fixing_subgroup(vals, M)


class TestGenerationReport:
    def test_induced_eta_chain(self):
        K = QuadField(2)
        q = GenerationQuery(DirichletChar(5, (1,)), K, 3, 60, 60, (4, 5))
        out = generation_report(q)
        assert out.restriction_contained
        assert out.evidence_level == "finite_evidence"
        for link in out.chain:
            assert link["cprime_in_lvalue"]
            assert link["lvalue_in_cprime"]
            assert link["lvalue_in_eta_chi"]

    def test_real_valued_eta_collapses(self):
        # order-2 induced characters have rational values: everything inside F
        K = QuadField(5)
        q = GenerationQuery(DirichletChar(3, (1,)), K, 7, 40, 40, (4,))
        out = generation_report(q)
        assert out.restriction_contained

    def test_bounds_guard(self):
        K = QuadField(2)
        with pytest.raises(ValueError):
            GenerationQuery(DirichletChar(5, (1,)), K, 3, 5, 40)


class TestLinearRelation:
    def test_single_eta_forces_hypothesis_failure(self):
        # a lone nonzero coefficient cannot satisfy the hypothesis: some
        # p-primitive norm average must be nonzero
        K = QuadField(2)
        eta = cyclotomic_char(K, DirichletChar(5, (1,)))
        out = linear_relation_check([eta], [CycNum.one()], 3, 120, [7])
        assert not out.hypothesis_verified
        assert out.hypothesis_witness is not None
        assert not out.falsification_candidate

    def test_identical_pair_cancels(self):
        K = QuadField(2)
        eta = cyclotomic_char(K, DirichletChar(5, (1,)))
        out = linear_relation_check(
            [eta, eta], [CycNum.one(), CycNum.rational(-1)], 3, 120, [7, 11]
        )
        assert out.hypothesis_verified
        assert out.conclusion_base
        assert all(out.conclusion_primes.values())
        assert not out.falsification_candidate

    def test_galois_orbit_family(self):
        K = QuadField(2)
        eta = cyclotomic_char(K, DirichletChar(5, (1,)))
        A, coeffs, a = galois_orbit_family(eta, 3, 120)
        out = linear_relation_check(A, coeffs, 3, 120, [7, 11, 13])
        assert out.hypothesis_verified
        assert not out.falsification_candidate

    def test_orbit_family_group_backed(self):
        K = QuadField(13)
        p13 = primes_above(K, 13)[0]
        eta = next(
            c for c in characters(ray_class_group(K, p13), "primitive")
            if c.is_totally_odd() and c.order > 2
        )
        A, coeffs, a = galois_orbit_family(eta, 3, 120)
        out = linear_relation_check(A, coeffs, 3, 120, [7, 11])
        assert out.hypothesis_verified
        assert not out.falsification_candidate


class TestGaloisStability:
    def test_chain_stable_under_conjugate_family(self):
        # replaying the chain with a conjugate wild character gives the
        # same containment verdicts
        from math import gcd

        from hecke_lab.cyclo import root_of_unity
        from hecke_lab.heckel import induced_L0, norm_average
        from hecke_lab.rayclass import (
            canonical_even_psi,
            cyclotomic_char,
            intersection_depth,
            unit_residues_mod,
        )

        K = QuadField(2)
        theta = DirichletChar(5, (1,))
        eta = cyclotomic_char(K, theta)
        series = norm_average(eta, 60)
        p, n = 3, 4
        psi = canonical_even_psi(p, n)
        n0 = intersection_depth(p, eta.order, psi.order)
        results = []
        for a in (1, 2):
            psig = psi.galois(a) if gcd(a, psi.order) == 1 else psi
            lam = (theta * psig).conj()
            lval = induced_L0(K, lam)
            F_gen = root_of_unity(p**n0 * (p - 1), 1)
            chi_gen = root_of_unity(psig.order, 1)
            cvals = [v for m, v in series.coprime_restriction(p).items() if not v.is_zero()]
            evals = [eta.finite(r) for r in unit_residues_mod(K, eta.modulus)]
            evals = [v for v in evals if not v.is_zero()]
            from math import lcm

            M = 1
            for v in cvals + evals + [F_gen, chi_gen, lval]:
                M = lcm(M, v.M)
            s1, _ = subfield_evidence([F_gen, chi_gen] + cvals, [F_gen, lval], M)
            s2, _ = subfield_evidence([F_gen, lval], [F_gen, chi_gen] + cvals, M)
            s3, _ = subfield_evidence([F_gen, lval], [F_gen, chi_gen] + evals, M)
            results.append((s1, s2, s3))
        assert results[0] == results[1]
