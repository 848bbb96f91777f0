'''Tests for the limit polynomial family h_s and its constrained minimum.

The closed forms for s = 3..7, the minimizer coordinates, and the root
polynomials the coordinates must satisfy are frozen here; symbolic
comparisons are exact, numeric ones use tolerances well above what the
optimizer achieves.
'''

import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monoflag.constructions import folded_word
from monoflag.hspoly import (
    MultiPoly,
    evaluate,
    format_poly,
    generate_hs,
    gradient,
    minimize_simplex,
    partial_derivative,
    q_of_s,
)
from monoflag.words import monotone_density


def poly(nvars, terms):
    return MultiPoly(nvars, {e: Fraction(c) for e, c in terms.items()})


H3 = poly(1, {(0,): '3/4', (1,): '-3/2', (2,): 3, (3,): 2})
H4 = poly(1, {(0,): '3/4', (1,): '-3/2', (2,): '3/2', (3,): 3})
H5 = poly(2, {(3, 0): 2, (2, 1): 6, (2, 0): 3, (1, 2): 9, (1, 0): '-3/2',
              (0, 3): 3, (0, 2): '3/2', (0, 1): '-3/2', (0, 0): '3/4'})
H6 = poly(2, {(3, 0): 3, (0, 3): 3, (2, 1): 6, (1, 2): 9, (2, 0): '3/2',
              (0, 2): '3/2', (1, 0): '-3/2', (0, 1): '-3/2', (0, 0): '3/4'})
H7 = poly(3, {(0, 0, 0): '3/4', (1, 0, 0): '-3/2', (2, 0, 0): 3, (3, 0, 0): 2,
              (0, 1, 0): '-3/2', (2, 1, 0): 6, (0, 2, 0): '3/2', (1, 2, 0): 9,
              (0, 3, 0): 3, (0, 0, 1): '-3/2', (2, 0, 1): 6, (1, 1, 1): 12,
              (0, 2, 1): 6, (0, 0, 2): '3/2', (1, 0, 2): 9, (0, 1, 2): 9,
              (0, 0, 3): 3})


class TestMultiPoly:
    def test_rejects_degree_above_three(self):
        with pytest.raises(ValueError):
            MultiPoly(1, {(4,): Fraction(1)})

    def test_rejects_stored_zero(self):
        with pytest.raises(ValueError):
            MultiPoly(1, {(1,): Fraction(0)})

    def test_rejects_wrong_exponent_arity(self):
        with pytest.raises(ValueError):
            MultiPoly(2, {(1,): Fraction(1)})

    def test_addition_cancels(self):
        x = MultiPoly.variable(0, 1)
        assert (x + (-1) * x).terms == {}

    def test_arity_mismatch_rejected(self):
        with pytest.raises(ValueError):
            MultiPoly.variable(0, 1) + MultiPoly.variable(0, 2)
        with pytest.raises(ValueError):
            MultiPoly.variable(0, 1) * MultiPoly.variable(0, 2)

    def test_square_of_binomial(self):
        x = MultiPoly.variable(0, 1)
        one = MultiPoly.constant(1, 1)
        sq = (x + one) * (x + one)
        assert sq.terms == {(2,): Fraction(1), (1,): Fraction(2),
                            (0,): Fraction(1)}


class TestClosedForms:
    @pytest.mark.parametrize('s,expected', [
        (3, H3), (4, H4), (5, H5), (6, H6), (7, H7)])
    def test_symbolic_equality(self, s, expected):
        h = generate_hs(s)
        assert h.nvars == expected.nvars
        assert h.terms == expected.terms

    def test_rejects_small_alphabet(self):
        with pytest.raises(ValueError):
            generate_hs(2)

    def test_partials_of_h5(self):
        assert partial_derivative(H5, 0).terms == poly(2, {
            (0, 0): '-3/2', (2, 0): 6, (0, 2): 9, (1, 0): 6,
            (1, 1): 12}).terms
        assert partial_derivative(H5, 1).terms == poly(2, {
            (0, 0): '-3/2', (2, 0): 6, (0, 1): 3, (1, 1): 18,
            (0, 2): 9}).terms

    def test_partials_of_h7(self):
        assert partial_derivative(H7, 0).terms == poly(3, {
            (0, 0, 0): '-3/2', (2, 0, 0): 6, (0, 2, 0): 9, (0, 1, 1): 12,
            (0, 0, 2): 9, (1, 0, 0): 6, (1, 1, 0): 12, (1, 0, 1): 12}).terms
        assert partial_derivative(H7, 1).terms == poly(3, {
            (0, 0, 0): '-3/2', (2, 0, 0): 6, (0, 1, 0): 3, (1, 1, 0): 18,
            (0, 2, 0): 9, (1, 0, 1): 12, (0, 1, 1): 12, (0, 0, 2): 9}).terms
        assert partial_derivative(H7, 2).terms == poly(3, {
            (0, 0, 0): '-3/2', (2, 0, 0): 6, (0, 2, 0): 6, (0, 0, 1): 3,
            (0, 1, 1): 18, (0, 0, 2): 9, (1, 1, 0): 12, (1, 0, 1): 18}).terms

    def test_zero_point_value_is_three_quarters(self):
        for s in range(3, 11):
            h = generate_hs(s)
            zero = (Fraction(0),) * h.nvars
            assert evaluate(h, zero) == Fraction(3, 4)

    def test_format_graded_lex(self):
        assert format_poly(H3) == '2*x1^3 + 3*x1^2 - 3/2*x1 + 3/4'
        assert format_poly(H5, names=['x', 'y']) == (
            '2*x^3 + 6*x^2*y + 9*x*y^2 + 3*y^3 + 3*x^2 + 3/2*y^2'
            ' - 3/2*x - 3/2*y + 3/4')


class TestEvaluate:
    def test_scalar_point_for_univariate(self):
        assert evaluate(H3, Fraction(1, 4)) == Fraction(19, 32)
        assert evaluate(H3, 0) == Fraction(3, 4)

    def test_h4_at_one_half(self):
        assert evaluate(H4, Fraction(1, 2)) == Fraction(3, 4)

    def test_gradient_at_origin(self):
        assert gradient(H5, (0, 0)) == (Fraction(-3, 2), Fraction(-3, 2))

    def test_gradient_matches_partials(self):
        pt = (Fraction(1, 7), Fraction(2, 9))
        assert gradient(H6, pt) == tuple(
            evaluate(partial_derivative(H6, i), pt) for i in range(2))

    def test_arity_mismatch_rejected(self):
        with pytest.raises(ValueError):
            evaluate(H5, (Fraction(1, 2),))
        with pytest.raises(ValueError):
            gradient(H3, (0, 0))


class TestMinimize:
    def test_h3(self):
        m = minimize_simplex(H3)
        assert abs(m.value - (2 - math.sqrt(2))) < 1e-12
        assert abs(m.point[0] - (math.sqrt(2) - 1) / 2) < 1e-10
        assert m.gradient_norm_at_point < 1e-7
        assert m.active_constraints == frozenset()

    def test_h4(self):
        m = minimize_simplex(H4)
        assert abs(m.value - (37 - 7 * math.sqrt(7)) / 36) < 1e-12
        assert abs(m.point[0] - (math.sqrt(7) - 1) / 6) < 1e-10
        assert m.active_constraints == frozenset()

    def test_h5(self):
        m = minimize_simplex(H5)
        x, y = m.point
        assert abs(m.value - 0.4610302737851640) < 1e-9
        assert abs(x - 0.124772) < 1e-5 and abs(y - 0.199708) < 1e-5
        assert abs(16 * x**4 + 64 * x**3 + 56 * x**2 - 1) < 1e-8
        assert abs(y - (1 - 1 / (1 + 2 * x))) < 1e-9
        assert m.gradient_norm_at_point < 1e-7

    def test_h6(self):
        m = minimize_simplex(H6)
        x, y = m.point
        assert abs(m.value - 0.4288094692936699) < 1e-9
        assert abs(x - 0.189186) < 1e-5 and abs(y - 0.163220) < 1e-5
        assert abs(46 * x**4 + 68 * x**3 + 24 * x**2 - 2 * x - 1) < 1e-8
        assert abs(y - (x * x + x) / (1 + 2 * x)) < 1e-9

    def test_h7(self):
        m = minimize_simplex(H7)
        x, y, z = m.point
        assert abs(m.value - 0.4033833417307677) < 1e-9
        assert abs(x - 0.0887976) < 1e-5
        assert abs(y - 0.150811) < 1e-5
        assert abs(z - 0.135436) < 1e-5
        assert abs(256 * x**8 + 2560 * x**7 + 9088 * x**6 + 14080 * x**5
                   + 9248 * x**4 + 1888 * x**3 + 56 * x**2 - 16 * x - 1) < 1e-8
        assert abs(y - 2 * x / (2 * x + 1)) < 1e-9
        assert abs(z - (y * y + 2 * x) / (2 * x + 2 * y + 1)) < 1e-9
        assert m.gradient_norm_at_point < 1e-7

    def test_feasibility_of_reported_point(self):
        for s in range(3, 8):
            m = minimize_simplex(generate_hs(s))
            assert all(c >= 0 for c in m.point)
            assert sum(m.point) <= 0.5 + 1e-12

    def test_boundary_minimum_reports_active_constraints(self):
        # x^2 + x is minimized over [0, 1/2] at the x=0 face.
        p = poly(1, {(2,): 1, (1,): 1})
        m = minimize_simplex(p)
        assert m.point == (0.0,)
        assert m.value == 0.0
        assert 'x1=0' in m.active_constraints

    def test_restart_stability(self):
        # Local refinement from random feasible seeds never beats the
        # reported minimum by more than the advertised tolerance.
        from monoflag.hspoly import _FloatPoly, _refine
        fp = _FloatPoly(H5)
        base = minimize_simplex(H5).value
        rng = random.Random(20240917)
        for _ in range(100):
            x = rng.uniform(0, 0.5)
            y = rng.uniform(0, 0.5 - x)
            refined = _refine(fp, np.array([x, y]))
            assert fp.value(refined) >= base - 1e-9

    def test_arity_cap(self):
        with pytest.raises(ValueError):
            minimize_simplex(poly(9, {(1,) * 9: 1}))


class TestQofS:
    def test_values(self):
        assert abs(q_of_s(3) - (2 - math.sqrt(2))) < 1e-9
        assert abs(q_of_s(4) - (37 - 7 * math.sqrt(7)) / 36) < 1e-9
        assert abs(q_of_s(6) - 0.428809) < 1e-6

    def test_monotone_nonincreasing(self):
        values = [q_of_s(s) for s in range(3, 8)]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_cap(self):
        with pytest.raises(ValueError):
            q_of_s(16)
        with pytest.raises(ValueError):
            q_of_s(12, cap=11)


class TestConstructionAgreement:
    '''The folded family realizes h_s: finite densities approach the
    polynomial value at rate O(1/n).'''

    @pytest.mark.parametrize('s', range(3, 8))
    def test_density_near_minimum(self, s):
        h = generate_hs(s)
        m = minimize_simplex(h)
        xs = [Fraction(c).limit_denominator(10**6) for c in m.point]
        w = folded_word(s, xs, 2000)
        gap = abs(monotone_density(w, 3) - evaluate(h, xs))
        assert gap < 0.01

    def test_density_at_random_feasible_points(self):
        rng = random.Random(7)
        for s in (3, 5):
            h = generate_hs(s)
            r = h.nvars
            for _ in range(3):
                raw = [rng.uniform(0.02, 0.5) for _ in range(r)]
                scale = min(1.0, 0.48 / sum(raw))
                xs = [Fraction(v * scale).limit_denominator(10**4)
                      for v in raw]
                w = folded_word(s, xs, 1500)
                gap = abs(monotone_density(w, 3) - evaluate(h, xs))
                assert gap < 0.02


@settings(max_examples=60, deadline=None)
@given(st.floats(0, 0.5), st.floats(0, 1))
def test_minimum_is_global_lower_bound(x, frac):
    y = (0.5 - x) * frac
    value = evaluate(H5, (Fraction(x), Fraction(y)))
    assert float(value) >= q_of_s(5) - 1e-9
