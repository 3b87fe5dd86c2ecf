import random
from fractions import Fraction as F

import pytest

from scbcert import analyzer, methods, published, recursion
from scbcert.analyzer import (
    Existence,
    Feasibility,
    InfeasibleComplexDominance,
    InfeasibleStability,
    InfeasibleWitness,
    Mechanism,
    StabilityAnswer,
    check_scb,
    crossover,
    gamma_sup,
    in_stability_interior,
    infeasible_by_complex_dominance,
    scb_exists,
    simple_root_bound,
    verify_against_poly,
)
from scbcert.methods import catalog


class TestStabilityInterior:
    def test_examples(self):
        assert in_stability_interior(catalog("bdf3"), F(-2)) is StabilityAnswer.YES
        assert in_stability_interior(catalog("ab1"), F(-1)) is StabilityAnswer.YES
        assert in_stability_interior(catalog("ab3"), F(-84, 529)) is StabilityAnswer.YES
        assert in_stability_interior(catalog("ab1"), F(-2)) is StabilityAnswer.NO

    def test_bdf_left_halfline(self):
        rng = random.Random(8)
        for name in ("bdf1", "bdf2", "bdf3", "bdf4", "bdf5", "bdf6"):
            m = catalog(name)
            for _ in range(8):
                g = F(rng.randint(1, 300), rng.randint(100, 200))
                assert in_stability_interior(m, -g) is StabilityAnswer.YES, (name, g)

    def test_degenerate_leading_coefficient(self):
        # lambda = 1/b0 makes the damped polynomial degenerate
        m = catalog("bdf1")
        assert in_stability_interior(m, F(1)) is StabilityAnswer.NO


class TestCheckScb:
    def test_bdf2_at_half(self):
        v = check_scb(catalog("bdf2"), F(1, 2))
        assert v.status is Feasibility.FEASIBLE
        assert v.evidence.exact_form is not None  # double root: exact route

    def test_bdf1_large(self):
        v = check_scb(catalog("bdf1"), F(10**6))
        assert v.status is Feasibility.FEASIBLE
        assert v.evidence.tail is not None

    def test_ab4_witness(self):
        v = check_scb(catalog("ab4"), F(1, 10))
        assert v.status is Feasibility.INFEASIBLE
        assert isinstance(v.evidence, InfeasibleWitness)
        assert v.evidence.n == 2 and v.evidence.exact

    def test_witness_soundness(self):
        # whenever a witness is reported at rational gamma, the exact value
        # is negative
        for name, g in (("ab4", F(1, 3)), ("ab2", F(1, 2)), ("bdf3", F(9, 10))):
            v = check_scb(catalog(name), g)
            if isinstance(v.evidence, InfeasibleWitness):
                assert recursion.eval_mu(catalog(name), g, v.evidence.n) < 0

    def test_stability_violation(self):
        # explicit Euler beyond the stability interval: damped root leaves
        # the closed unit disk before any sign violation can be certified
        v = check_scb(catalog("ab1"), F(5, 2))
        assert v.status is Feasibility.INFEASIBLE
        # mu_n = (1-g)^(n-1) alternates; witness n=2 is also legitimate
        assert isinstance(v.evidence, (InfeasibleStability, InfeasibleWitness))

    def test_feasible_below_bdf3_optimum(self):
        v = check_scb(catalog("bdf3"), F(83, 100))
        assert v.status is Feasibility.FEASIBLE
        assert v.evidence.tail is not None
        assert v.evidence.tail.n_start <= 93

    def test_infeasible_above_bdf3_optimum(self):
        # just above the optimum the first negative member is the sixth (the
        # optimum is its smallest root); farther out earlier members dip first
        v = check_scb(catalog("bdf3"), F(83127, 100000))
        assert v.status is Feasibility.INFEASIBLE
        assert isinstance(v.evidence, InfeasibleWitness)
        assert v.evidence.n == 6

    def test_complex_dominance_far_from_witness(self):
        # just above the bdf4 optimum the dips appear only after ~10^4 terms:
        # with a short horizon the pair-dominance certificate must stand in
        v = check_scb(catalog("bdf4"), F(4863, 10000), horizon=40)
        assert v.status is Feasibility.INFEASIBLE
        assert isinstance(v.evidence, InfeasibleComplexDominance)

    def test_rejects_nonpositive_gamma(self):
        with pytest.raises(analyzer.AnalyzerError):
            check_scb(catalog("bdf2"), F(0))


class TestAb3AtOptimum:
    def test_feasible_with_root_ordering(self):
        # at 84/529 the three characteristic roots satisfy
        # rho1 < 0 < rho2 < rho3 with |rho1| < rho3/2 and rho2 < rho3/4,
        # and the dominant coefficient exceeds 1
        from scbcert.recursion import closed_form, tail_certificate

        m = catalog("ab3")
        g = F(84, 529)
        v = check_scb(m, g)
        assert v.status is Feasibility.FEASIBLE
        cf = closed_form(m, g, "mu", 64)
        assert all(not r.is_pair for r in cf.roots)
        ordered = sorted(
            zip(cf.roots, cf.coeffs), key=lambda rc: rc[0].box.re.mid_fraction()
        )
        r1, r2, r3 = (rc[0].box.re for rc in ordered)
        assert r1.hi_fraction() < 0 < r2.lo_fraction()
        assert r2.hi_fraction() < r3.lo_fraction()
        r1_abs_ub = max(abs(r1.lo_fraction()), abs(r1.hi_fraction()))
        assert r1_abs_ub < r3.lo_fraction() / 2
        assert r2.hi_fraction() < r3.lo_fraction() / 4
        c3 = ordered[2][1]
        assert c3.re.lo_fraction() > 1
        tc = tail_certificate(cf)
        assert tc is not None and tc.n_start <= 3
        # the second member vanishes exactly at the optimum
        assert recursion.eval_mu(m, g, 2) == 0


class TestDegenerateParameters:
    def test_bdf4_at_discriminant_zero(self):
        # multiple characteristic roots at 7/12: the closed-form route is
        # unavailable, but a witness scan still certifies infeasibility
        v = check_scb(catalog("bdf4"), F(7, 12))
        assert v.status is Feasibility.INFEASIBLE
        assert isinstance(v.evidence, InfeasibleWitness)

    def test_two_circle_roots_method(self):
        # rho = z^2 - 1 carries the extra circle root -1: the existence
        # corollary is silent, and the negative axis is outside the
        # stability interior
        from scbcert.methods import Method, validate

        ms = Method(
            k=2, a=(F(0), F(1)), b=(F(1, 3), F(4, 3), F(1, 3)), name="milne-simpson"
        )
        assert validate(ms).ok
        ve = scb_exists(ms)
        assert ve.status is Existence.INCONCLUSIVE
        assert ve.only_circle_root_is_one is False
        vc = check_scb(ms, F(1, 10))
        assert vc.status is Feasibility.INFEASIBLE
        assert isinstance(vc.evidence, InfeasibleStability)


class TestScbExists:
    def test_ebdf_family(self):
        for name in ("ebdf3", "ebdf4", "ebdf5"):
            v = scb_exists(catalog(name))
            assert v.status is Existence.EXISTS
            assert v.only_circle_root_is_one is True
            assert v.evidence.tail is not None

    def test_ab4(self):
        v = scb_exists(catalog("ab4"))
        assert v.status is Existence.NOT_EXISTS
        assert v.evidence.n == 2

    def test_whole_catalog_consistent(self):
        for name in methods.catalog_names():
            v = scb_exists(catalog(name))
            if name == "ab4":
                assert v.status is Existence.NOT_EXISTS
            else:
                assert v.status is Existence.EXISTS, name


class TestSimpleRootBound:
    def test_bdf3(self):
        sr = simple_root_bound(catalog("bdf3"), 10)
        assert sr.n == 6
        assert sr.enclosure.lo <= F("0.831264155298")
        assert sr.enclosure.hi >= F("0.831264155297")

    def test_ab2(self):
        sr = simple_root_bound(catalog("ab2"), 5)
        assert sr.n == 2
        assert sr.enclosure.lo <= F(4, 9) <= sr.enclosure.hi

    def test_ab3(self):
        sr = simple_root_bound(catalog("ab3"), 5)
        assert sr.n == 2
        assert sr.enclosure.lo <= F(84, 529) <= sr.enclosure.hi

    def test_upper_bound_property(self):
        # the simple-root bound is an upper bound: never below the certified
        # lower end of the optimum enclosure
        m = catalog("ab2")
        sr = simple_root_bound(m, 5)
        r = gamma_sup(m, F(1, 10**6))
        assert sr.enclosure.hi >= r.lo - F(1, 10**6)


class TestCrossover:
    def test_bdf4_window(self):
        cb = crossover(catalog("bdf4"), F(0), F(7, 12), tol=F(1, 10**6))
        assert cb is not None
        v = F("0.486220284043")
        assert cb.lo - F(1, 10**12) <= v <= cb.hi + F(1, 10**12)

    def test_bdf5_window(self):
        cb = crossover(catalog("bdf5"), F(0), F(1), tol=F(1, 10**6))
        v = F("0.304213712525")
        assert cb.lo - F(1, 10**12) <= v <= cb.hi + F(1, 10**12)

    def test_bdf6_window(self):
        cb = crossover(catalog("bdf6"), F(0), F(37, 60), tol=F(1, 10**6))
        v = F("0.131359487166")
        assert cb.lo - F(1, 10**12) <= v <= cb.hi + F(1, 10**12)

    def test_no_bracket(self):
        # ab2 has two real characteristic roots for every positive gamma:
        # no complex pair ever dominates, so no crossover exists
        assert crossover(catalog("ab2"), F(1, 100), F(3, 2)) is None

    def test_side_ordering_certified(self):
        # on each side of the bracket the dominance ordering is certified
        m = catalog("bdf4")
        cb = crossover(m, F(0), F(7, 12), tol=F(1, 10**4))
        assert analyzer._dominance_gap_sign(m, cb.lo, 64, 4096) == 1
        assert analyzer._dominance_gap_sign(m, cb.hi, 64, 4096) == -1


class TestComplexDominance:
    def test_bdf2_above_half(self):
        assert infeasible_by_complex_dominance(catalog("bdf2"), F(6, 10)) is not None

    def test_bdf4_at_half(self):
        assert infeasible_by_complex_dominance(catalog("bdf4"), F(1, 2)) is not None

    def test_bdf3_at_half_absent(self):
        assert infeasible_by_complex_dominance(catalog("bdf3"), F(1, 2)) is None


class TestGammaSup:
    def test_ab1(self):
        r = gamma_sup(catalog("ab1"), F(1, 10**9))
        assert r.lo <= F(1) <= r.hi
        assert r.hi - r.lo <= F(1, 10**9)
        assert r.mechanism is Mechanism.SIMPLE_ROOT and r.mechanism_index == 2
        assert r.cert_lo.status is Feasibility.FEASIBLE
        assert r.cert_hi.status is Feasibility.INFEASIBLE

    def test_mechanism_matches_evidence(self):
        r = gamma_sup(catalog("ab2"), F(1, 10**6))
        if r.mechanism is Mechanism.SIMPLE_ROOT:
            assert isinstance(r.cert_hi.evidence, InfeasibleWitness)
            assert r.cert_hi.evidence.n == r.mechanism_index
        else:
            assert isinstance(r.cert_hi.evidence, InfeasibleComplexDominance)

    def test_monotone_bracket_invariant(self):
        r = gamma_sup(catalog("bdf2"), F(1, 10**6))
        assert r.lo < r.hi
        assert r.cert_lo.gamma <= r.lo
        assert r.cert_hi.gamma == r.hi

    def test_bdf1_unbounded(self):
        r = gamma_sup(catalog("bdf1"), F(1, 10**6))
        assert r.mechanism is Mechanism.UNBOUNDED
        assert r.hi is None
        assert r.ladder and r.ladder[-1] >= F(2**20)

    def test_ab4_none_positive(self):
        r = gamma_sup(catalog("ab4"), F(1, 10**6))
        assert r.mechanism is Mechanism.NONE_POSITIVE
        assert r.none_positive.witness_n == 2


class TestVerifyAgainstPoly:
    def test_refuted_wrong_poly(self):
        r = gamma_sup(catalog("bdf3"), F(1, 10**6))
        assert verify_against_poly(r, [1, 0, -2], "smallest") == "refuted"

    def test_confirmed_published(self):
        r = gamma_sup(catalog("ab3"), F(1, 10**9))
        entry = published.GAMMA_SUP_POLYS["ab3"]
        assert verify_against_poly(r, entry["poly"], entry["selector"]) == "confirmed"

    def test_selector_mismatch(self):
        r = gamma_sup(catalog("ab3"), F(1, 10**9))
        # the bdf3 quartic has four real roots: "unique" must refute
        assert (
            verify_against_poly(r, published.GAMMA_SUP_POLYS["bdf3"]["poly"], "unique")
            == "refuted"
        )
