import random
from fractions import Fraction as F

import pytest

from scbcert import poly
from scbcert.poly import RootCondition

BDF3_QUARTIC = [5184, -539352, 4277340, -7093698, 3248425]
BDF4_QUINTIC = [147456, -4065024, 97751296, -178921248, 146499984, -39945535]


def printed_in(enc, text):
    v = F(text)
    ulp = F(1, 10 ** len(text.split(".")[1])) if "." in text else F(1)
    return enc.lo - ulp <= v <= enc.hi + ulp


class TestIsolateRealRoots:
    def test_bdf3_quartic(self):
        encs = poly.isolate_real_roots(BDF3_QUARTIC)
        assert len(encs) == 4
        smallest = poly.refine(encs[0], F(1, 10**12))
        assert printed_in(smallest, "0.831264155297")
        # the other three zeros
        assert printed_in(poly.refine(encs[1], F(1, 10**5)), "1.22747")
        assert printed_in(poly.refine(encs[2], F(1, 10**5)), "6.42689")
        assert printed_in(poly.refine(encs[3], F(1, 10**3)), "95.556")

    def test_bdf4_quintic(self):
        encs = poly.isolate_real_roots(BDF4_QUINTIC)
        assert len(encs) == 1
        assert printed_in(poly.refine(encs[0], F(1, 10**12)), "0.486220284043")

    def test_x_squared_minus_four(self):
        encs = poly.isolate_real_roots([1, 0, -4])
        assert len(encs) == 2
        assert poly.refine(encs[0], F(1, 100)).contains(F(-2)) or encs[0].contains(F(-2))
        assert poly.refine(encs[1], F(1, 100)).contains(F(2)) or encs[1].contains(F(2))

    def test_rational_root_exact_hit(self):
        # (2x - 1)(x - 3): bisection midpoints land on roots
        p = poly.mul([2, -1], [1, -3])
        encs = poly.isolate_real_roots(p)
        assert len(encs) == 2
        assert encs[0].contains(F(1, 2))
        assert encs[1].contains(F(3))

    def test_multiplicities(self):
        # (x-1)^2 (x+2)
        p = poly.mul(poly.mul([1, -1], [1, -1]), [1, 2])
        encs = poly.isolate_real_roots(p)
        mults = sorted((e.multiplicity for e in encs))
        assert mults == [1, 2]

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            poly.isolate_real_roots([])


class TestRefine:
    def test_bdf3_to_1e15(self):
        enc = poly.isolate_real_roots(BDF3_QUARTIC)[0]
        r = poly.refine(enc, F(1, 10**15))
        assert r.width() <= F(1, 10**15)
        assert r.lo >= enc.lo and r.hi <= enc.hi
        assert printed_in(r, "0.831264155297")

    def test_linear_half(self):
        enc = poly.isolate_real_roots([2, -1])[0]
        r = poly.refine(enc, F(1, 10**9))
        assert r.contains(F(1, 2))
        assert r.width() <= F(1, 10**9)

    def test_bdf6_degree18(self):
        from scbcert.published import GAMMA_SUP_POLYS

        p = GAMMA_SUP_POLYS["bdf6"]["poly"]
        encs = poly.isolate_real_roots(p)
        assert len(encs) == 2
        r = poly.refine(encs[0], F(1, 10**12))
        assert printed_in(r, "0.131359487166")


class TestEncloseAllRoots:
    def test_ebdf3_cubic(self):
        # 11 z^3 - 18 z^2 + 9 z - 2 = (z-1)(11 z^2 - 7 z + 2)
        encs = poly.enclose_all_roots([F(11), F(-18), F(9), F(-2)], F(1, 10**7))
        assert len(encs) == 3
        reals = [e for e in encs if e.is_real()]
        pairs = [e for e in encs if not e.is_real()]
        assert len(reals) == 1 and len(pairs) == 2
        assert reals[0].box.re.contains_fraction(1)
        for e in pairs:
            m = e.modulus()
            # modulus enclosure within (sqrt(2/11) - 1e-6, sqrt(2/11) + 1e-6)
            assert m.pow_int(2).contains_fraction(F(2, 11))
            assert m.width_fraction() < F(2, 10**6)

    def test_ebdf5_quartic_moduli(self):
        encs = poly.enclose_all_roots([F(137), F(-163), F(137), F(-63), F(12)], F(1, 10**7))
        assert len(encs) == 4
        assert all(not e.is_real() for e in encs)
        assert all(e.modulus().hi_fraction() <= F(71, 100) for e in encs)

    def test_z2_minus_one(self):
        encs = poly.enclose_all_roots([F(1), F(0), F(-1)], F(1, 100))
        vals = sorted(e.box.re.mid_fraction() for e in encs)
        assert encs[0].box.re.contains_fraction(-1) or encs[1].box.re.contains_fraction(-1)
        assert len(encs) == 2 and vals[0] < 0 < vals[1]

    def test_conjugate_symmetry_and_count(self):
        rng = random.Random(42)
        for _ in range(40):
            deg = rng.randint(1, 6)
            p = [F(rng.randint(-9, 9)) for _ in range(deg + 1)]
            p[0] = F(rng.randint(1, 9))
            encs = poly.enclose_all_roots(p, F(1, 10**4))
            assert sum(e.multiplicity for e in encs) == deg
            ups = [e for e in encs if not e.is_real() and e.box.im.lo_fraction() > 0]
            downs = [e for e in encs if not e.is_real() and e.box.im.hi_fraction() < 0]
            assert len(ups) == len(downs)
            for u in ups:
                mirror = u.box.conjugate()
                assert any(
                    d.box.re.intersects(mirror.re) and d.box.im.intersects(mirror.im)
                    for d in downs
                )

    def test_multiple_roots(self):
        # (z^2+1)^2 (z-1/2)
        sq = poly.mul([F(1), F(0), F(1)], [F(1), F(0), F(1)])
        p = poly.mul(sq, [F(1), F(-1, 2)])
        encs = poly.enclose_all_roots(p, F(1, 10**5))
        assert sum(e.multiplicity for e in encs) == 5
        assert sorted(e.multiplicity for e in encs) == [1, 2, 2]


class TestRootCondition:
    def test_bdf2_rho(self):
        # oracle: exact factorization (z-1)(z-1/3)
        rho = poly.mul([F(1), F(-1)], [F(1), F(-1, 3)])
        assert rho == [F(1), F(-4, 3), F(1, 3)]
        assert poly.root_condition(rho) is RootCondition.SATISFIED

    def test_double_root_on_circle(self):
        assert poly.root_condition([F(1), F(-2), F(1)]) is RootCondition.VIOLATED

    def test_strict(self):
        assert poly.root_condition([F(1), F(0), F(-1, 4)]) is RootCondition.SATISFIED_STRICTLY

    def test_outside(self):
        assert poly.root_condition([F(1), F(0), F(-4)]) is RootCondition.VIOLATED

    def test_simple_circle_pair(self):
        # z^2 - z + 1: roots exp(+-i pi/3), simple, on the circle
        assert poly.root_condition([F(1), F(-1), F(1)]) is RootCondition.SATISFIED

    def test_constructed_oracle(self):
        """Random products with known root layout vs the decision procedure."""
        rng = random.Random(99)
        for _ in range(60):
            factors = []
            worst = 0  # 0 strict, 1 on-circle simple, 2 violated
            n_factors = rng.randint(1, 3)
            for _ in range(n_factors):
                kind = rng.choice(["inside", "on_real", "on_pair", "outside"])
                if kind == "inside":
                    r = F(rng.randint(-9, 9), 10)
                    factors.append([F(1), -r])
                elif kind == "on_real":
                    r = rng.choice([F(1), F(-1)])
                    factors.append([F(1), -r])
                    worst = max(worst, 1)
                elif kind == "on_pair":
                    c = F(rng.randint(-9, 9), 10)  # cos in (-1, 1)
                    factors.append([F(1), -2 * c, F(1)])
                    worst = max(worst, 1)
                else:
                    r = F(rng.randint(11, 30), 10)
                    factors.append([F(1), -r])
                    worst = 2
            p = [F(1)]
            for f in factors:
                p = poly.mul(p, f)
            # repeated on-circle factors are violations
            seen = {}
            for f in map(tuple, factors):
                seen[f] = seen.get(f, 0) + 1
            for f, cnt in seen.items():
                if cnt > 1 and poly.root_condition(list(f)) is RootCondition.SATISFIED:
                    worst = 2
            got = poly.root_condition(p)
            expect = {
                0: RootCondition.SATISFIED_STRICTLY,
                1: RootCondition.SATISFIED,
                2: RootCondition.VIOLATED,
            }[worst]
            assert got is expect, (factors, got, expect)


class TestDiscriminant:
    def test_quadratic(self):
        # x^2 + bx + c -> b^2 - 4c
        assert poly.discriminant([F(1), F(3), F(5)]) == 9 - 20
        assert poly.discriminant([F(1), F(-7), F(2)]) == 49 - 8

    def test_double_root(self):
        assert poly.discriminant([F(1), F(-2), F(1)]) == 0

    def test_resultant_vs_common_root(self):
        p = poly.mul([F(1), F(-2)], [F(1), F(5)])
        q = poly.mul([F(1), F(-2)], [F(1), F(1)])
        assert poly.resultant(p, q) == 0
        q2 = [F(1), F(1)]
        assert poly.resultant(p, q2) != 0


class TestSturmConsistency:
    def test_sturm_counts_match_isolation(self):
        rng = random.Random(20260810)
        for _ in range(500):
            deg = rng.randint(1, 8)
            p = [rng.randint(-9, 9) for _ in range(deg + 1)]
            if p[0] == 0:
                p[0] = 1
            sf = poly.squarefree_part(p)
            if poly.degree(sf) < 1:
                continue
            chain = poly.sturm_chain(sf)
            total = poly.sturm_variations_inf(chain, False) - poly.sturm_variations_inf(
                chain, True
            )
            encs = poly.isolate_real_roots(p)
            assert len(encs) == total


class TestUnitCircleRoots:
    def test_cyclotomic_quadratic(self):
        count, one, minus_one, _ = poly.unit_circle_roots([1, -1, 1])
        assert count == 2 and not one and not minus_one

    def test_mixed(self):
        # (z-1)(z+1)(z - 1/2) cleared: (z^2-1)(2z-1)
        p = poly.mul([1, 0, -1], [2, -1])
        count, one, minus_one, _ = poly.unit_circle_roots(p)
        assert count == 2 and one and minus_one

    def test_reciprocal_pair_not_counted(self):
        # (z-2)(z-1/2) cleared: roots are inversion-related but off the circle
        p = poly.mul([1, -2], [2, -1])
        count, one, minus_one, _ = poly.unit_circle_roots(p)
        assert count == 0


class TestSerialization:
    def test_roundtrip(self):
        p = [5184, -539352, 4277340, -7093698, 3248425]
        s = poly.int_poly_to_json(p)
        assert s == ["5184", "-539352", "4277340", "-7093698", "3248425"]
        assert poly.int_poly_from_json(s) == p


class TestDivisionAndGcd:
    def test_divmod(self):
        a = [F(1), F(0), F(-1)]
        q, r = poly.divmod_exact(a, [F(1), F(-1)])
        assert q == [F(1), F(1)] and r == []

    def test_gcd(self):
        a = poly.mul([1, -1], [1, 2])
        b = poly.mul([1, -1], [3, 5])
        assert poly.gcd_int_poly(a, b) == [1, -1]

    def test_yun(self):
        # (x-1)^3 (x+2)^2 (x-5)
        p = [1]
        for f, m in (([1, -1], 3), ([1, 2], 2), ([1, -5], 1)):
            for _ in range(m):
                p = poly.mul(p, f)
        decomp = dict(
            (tuple(q), i) for q, i in poly.yun_squarefree(p)
        )
        assert decomp == {(1, -5): 1, (1, 2): 2, (1, -1): 3}
