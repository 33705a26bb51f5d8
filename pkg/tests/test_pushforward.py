import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from plucker.chow import BundleModel, FlagRing, formal_segre, point, projective_space
from plucker.exact import LaurentPoly
from plucker.pushforward import (
    DISPLAYED,
    PROOF,
    ch_pushforward,
    ch_pushforward_closed,
    ch_pushforward_constterm,
    ch_pushforward_oracle,
    ch_pushforward_schur,
    closed_term_coefficient,
    factorial_det_check,
    monomial_pushforward_ct,
    monomial_pushforward_det,
    phi,
    phi_eval_monomial,
    pushforward_polynomial,
)


@pytest.fixture
def fm3():
    return formal_segre(3)


class TestPhi:
    def test_single_variable_power(self):
        for k in range(6):
            assert phi(LaurentPoly.monomial(1, (k,)), 1) == Fraction(
                1, factorial(k)
            )

    def test_two_variable_example(self):
        assert phi(LaurentPoly.monomial(2, (1, 0)), 2) == Fraction(-1, 2)

    def test_equal_exponents_vanish(self):
        for k in range(4):
            assert phi(LaurentPoly.monomial(2, (k, k)), 2) == 0

    def test_matches_closed_form_small_grid(self):
        for d in (1, 2, 3):
            for k in _grid(d, 5):
                assert phi(LaurentPoly.monomial(d, k), d) == phi_eval_monomial(k), k

    def test_closed_form_values(self):
        assert phi_eval_monomial((3,)) == Fraction(1, 6)
        assert phi_eval_monomial((1, 0)) == Fraction(-1, 2)
        assert phi_eval_monomial((2, 2, 0)) == 0

    def test_negative_exponent_rejected_by_closed_form(self):
        with pytest.raises(ValueError):
            phi_eval_monomial((-1, 0))

    @given(st.data())
    @settings(max_examples=40, deadline=None)
    def test_antisymmetry(self, data):
        d = data.draw(st.integers(min_value=2, max_value=3))
        terms = {}
        for _ in range(data.draw(st.integers(1, 4))):
            e = tuple(data.draw(st.integers(-3, 4)) for _ in range(d))
            terms[e] = Fraction(data.draw(st.integers(-5, 5)))
        f = LaurentPoly(d, terms)
        perm = data.draw(st.permutations(list(range(d))))
        from plucker.exact import perm_sign

        assert phi(f.permute_variables(list(perm)), d) == perm_sign(perm) * phi(f, d)


def _grid(d, bound):
    if d == 0:
        yield ()
        return
    for head in range(bound + 1):
        for rest in _grid(d - 1, bound):
            yield (head,) + rest


class TestFactorialDet:
    def test_examples(self):
        assert factorial_det_check((0,))
        assert factorial_det_check((1, 0))

    def test_random(self):
        rng = random.Random(4)
        for _ in range(30):
            d = rng.randint(1, 4)
            assert factorial_det_check(tuple(rng.randint(0, 10) for _ in range(d)))


class TestMonomialPushforward:
    def test_top_staircase_is_one(self, fm3):
        E = BundleModel.formal(fm3, 5)
        d = 2
        p = tuple(5 - 1 - i for i in range(d))
        assert monomial_pushforward_ct(p, E, d) == 1
        assert monomial_pushforward_det(p, E, d) == 1

    def test_single_step_values(self, fm3):
        E = BundleModel.formal(fm3, 3)
        assert monomial_pushforward_ct((3,), E, 1) == E.segre_class(1)
        assert monomial_pushforward_det((3,), E, 1) == E.segre_class(1)
        assert monomial_pushforward_ct((1,), E, 1) == 0
        assert monomial_pushforward_det((0,), E, 1) == 0

    def test_determinantal_example_r3(self, fm3):
        E = BundleModel.formal(fm3, 3)
        # p = (3, 1): det [[s1, s2], [0, 1]] = s1
        assert monomial_pushforward_det((3, 1), E, 2) == E.segre_class(1)
        assert monomial_pushforward_ct((3, 1), E, 2) == E.segre_class(1)

    def test_triple_agreement_random(self, fm3):
        rng = random.Random(21)
        for (r, d) in [(2, 1), (3, 2), (4, 2), (4, 3), (5, 2)]:
            E = BundleModel.formal(fm3, r)
            ring = FlagRing(E, d)
            for _ in range(8):
                p = tuple(rng.randint(0, r + 2) for _ in range(d))
                ct = monomial_pushforward_ct(p, E, d)
                dt = monomial_pushforward_det(p, E, d)
                orc = ring.from_terms({p: E.base.one()}).pushforward()
                assert ct == dt == orc, (r, d, p)

    def test_bad_exponents_rejected(self, fm3):
        E = BundleModel.formal(fm3, 3)
        with pytest.raises(ValueError):
            monomial_pushforward_ct((-1,), E, 1)
        with pytest.raises(ValueError):
            monomial_pushforward_det((1, 2, 3), E, 2)


class TestGeneralPolynomial:
    def test_top_monomial(self, fm3):
        E = BundleModel.formal(fm3, 4)
        F = LaurentPoly.monomial(2, (3, 2))
        assert pushforward_polynomial(F, E, 2) == 1

    def test_degree_zero_class_dies(self, fm3):
        E = BundleModel.formal(fm3, 4)
        F = LaurentPoly.constant(2, Fraction(1))
        assert pushforward_polynomial(F, E, 2) == 0

    def test_random_against_oracle(self, fm3):
        rng = random.Random(17)
        for (r, d) in [(3, 2), (4, 2), (4, 3)]:
            E = BundleModel.formal(fm3, r)
            ring = FlagRing(E, d)
            for _ in range(6):
                terms = {}
                for _ in range(5):
                    e = tuple(rng.randint(0, 5) for _ in range(d))
                    terms[e] = terms.get(e, Fraction(0)) + Fraction(rng.randint(-4, 4))
                F = LaurentPoly(d, terms)
                assert pushforward_polynomial(F, E, d) == ring.evaluate_poly(F).pushforward()

    def test_graded_coefficients_allowed(self, fm3):
        E = BundleModel.formal(fm3, 3)
        s1 = E.segre_class(1)
        F = LaurentPoly(2, {(2, 1): s1})  # s1 * x0^2 x1 pushes to s1
        assert pushforward_polynomial(F, E, 2) == s1

    def test_laurent_input_rejected(self, fm3):
        E = BundleModel.formal(fm3, 3)
        with pytest.raises(ValueError):
            pushforward_polynomial(LaurentPoly.monomial(1, (-1,)), E, 1)

    @given(st.data())
    @settings(max_examples=25, deadline=None)
    def test_linearity(self, data):
        E = BundleModel.formal(formal_segre(3), 3)
        d = data.draw(st.integers(min_value=1, max_value=2))

        def draw_poly():
            terms = {}
            for _ in range(3):
                e = tuple(data.draw(st.integers(0, 4)) for _ in range(d))
                terms[e] = terms.get(e, Fraction(0)) + Fraction(data.draw(st.integers(-3, 3)))
            return LaurentPoly(d, terms)

        F, G = draw_poly(), draw_poly()
        a = Fraction(data.draw(st.integers(-3, 3)))
        combined = pushforward_polynomial(F * a + G, E, d)
        split = pushforward_polynomial(F, E, d) * a + pushforward_polynomial(G, E, d)
        assert combined == split


class TestChernCharacterRoutes:
    def test_point_grassmannian_single_component(self):
        E = BundleModel.trivial(point(), 4)
        series = ch_pushforward_constterm(E, 2)
        assert series.component(0) == Fraction(1, 12)
        assert ch_pushforward_closed(E, 2).component(0) == Fraction(1, 12)
        assert ch_pushforward_schur(E, 2).component(0) == Fraction(1, 12)

    def test_closed_point_term_value(self):
        # k = (0,0), r = 4: numerator 1, denominator 3! 2!
        assert closed_term_coefficient((0, 0), 4) == Fraction(1, 12)
        assert closed_term_coefficient((0, 0), 4, DISPLAYED) == Fraction(1, 144)

    def test_repeated_content_kills_term(self):
        # k_i - i = k_j - j makes the numerator vanish
        assert closed_term_coefficient((0, 1), 5) == 0
        assert closed_term_coefficient((1, 2, 0), 5) == 0

    def test_unknown_variant_rejected(self):
        with pytest.raises(ValueError):
            closed_term_coefficient((0,), 3, "folklore")

    def test_d1_reduction(self, fm3):
        for r in (2, 3, 4, 5):
            E = BundleModel.formal(fm3, r)
            series = ch_pushforward_constterm(E, 1)
            for m in range(fm3.n + 1):
                expected = E.segre_class(m) * Fraction(1, factorial(r - 1 + m))
                assert series.component(m) == expected, (r, m)

    def test_schur_d1_single_row_tableau(self, fm3):
        E = BundleModel.formal(fm3, 3)
        series = ch_pushforward_schur(E, 1)
        for m in range(fm3.n + 1):
            assert series.component(m) == E.segre_class(m) * Fraction(
                1, factorial(3 - 1 + m)
            )

    def test_full_flag_gives_exp_of_c1(self):
        fm2 = formal_segre(2)
        for r in (1, 2, 3):
            E = BundleModel.formal(fm2, r)
            c1 = E.chern_class(1)
            series = ch_pushforward_constterm(E, r)
            for m in range(fm2.n + 1):
                assert series.component(m) == c1 ** m * Fraction(1, factorial(m)), (r, m)

    def test_fourway_small_grid(self):
        fm2 = formal_segre(2)
        models = [BundleModel.formal(fm2, r) for r in (2, 3, 4)]
        models.append(BundleModel.from_chern_roots(projective_space(2), [1, 1, 0]))
        models.append(BundleModel.from_chern_roots(projective_space(1), [2, 0, 1]))
        for E in models:
            for d in range(1, E.rank + 1):
                closed = ch_pushforward_closed(E, d)
                for other in (
                    ch_pushforward_schur(E, d),
                    ch_pushforward_constterm(E, d),
                    ch_pushforward_oracle(E, d),
                ):
                    assert closed.same_components(other), (E.label, d, other.method)

    @given(st.data())
    @settings(max_examples=15, deadline=None)
    def test_fourway_random_split_bundles(self, data):
        n = data.draw(st.integers(min_value=0, max_value=2))
        rank = data.draw(st.integers(min_value=1, max_value=4))
        roots = [data.draw(st.integers(min_value=-2, max_value=3)) for _ in range(rank)]
        d = data.draw(st.integers(min_value=1, max_value=rank))
        base = projective_space(n) if n else point()
        E = BundleModel.from_chern_roots(base, roots)
        closed = ch_pushforward_closed(E, d)
        for other in (
            ch_pushforward_schur(E, d),
            ch_pushforward_constterm(E, d),
            ch_pushforward_oracle(E, d),
        ):
            assert closed.same_components(other), (roots, n, d, other.method)

    def test_theta_power_accessor(self, fm3):
        E = BundleModel.formal(fm3, 4)
        ring = FlagRing(E, 2)
        series = ch_pushforward_closed(E, 2)
        rel = 2 * (4 - 2)
        assert series.theta_power(rel - 1) == 0
        for m in range(fm3.n + 1):
            assert series.theta_power(rel + m) == ring.pushforward_theta_power(rel + m)

    def test_displayed_variant_disagrees_with_oracle(self):
        E = BundleModel.trivial(point(), 4)
        displayed = ch_pushforward_closed(E, 2, DISPLAYED)
        oracle = ch_pushforward_oracle(E, 2)
        assert not displayed.same_components(oracle)

    def test_dispatch(self, fm3):
        E = BundleModel.formal(fm3, 2)
        assert ch_pushforward(E, 1, "closed").method == "closed"
        assert ch_pushforward(E, 1, "oracle").method == "oracle"
        with pytest.raises(ValueError):
            ch_pushforward(E, 1, "telepathy")

    def test_invalid_corank_rejected(self, fm3):
        E = BundleModel.formal(fm3, 2)
        for fn in (ch_pushforward_closed, ch_pushforward_schur, ch_pushforward_constterm):
            with pytest.raises(ValueError):
                fn(E, 3)
