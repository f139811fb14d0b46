from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rmzeta.errors import InvalidInputError, UnitIndexBoundError
from rmzeta.intmat import IntMatrix
from rmzeta.quadratic import (
    ContinuedFraction,
    QuadFieldElement,
    QuadraticIrrational,
    RealQuadraticUnit,
    expand,
    fundamental_unit,
    fundamental_unit_of,
    matrix_A,
    periodic_tail,
    unit_index,
)

from conftest import cf_quotients_oracle, pell_fundamental_oracle, sqrt_approx


class TestQuadraticIrrational:
    def test_rejects_square_discriminant(self):
        with pytest.raises(InvalidInputError):
            QuadraticIrrational(0, 4, 1)

    def test_rejects_zero_q(self):
        with pytest.raises(InvalidInputError):
            QuadraticIrrational(1, 5, 0)

    def test_normalization_enforces_divisibility(self):
        theta = QuadraticIrrational(0, 3, 2)  # 2 does not divide 3
        assert (theta.d - theta.p**2) % theta.q == 0
        approx = sqrt_approx(3) / 2
        assert abs(Fraction(theta.p) + sqrt_approx(theta.d) - approx * theta.q) < Fraction(1, 10**20)

    def test_common_factor_reduction(self):
        assert QuadraticIrrational(2, 20, 4) == QuadraticIrrational(1, 5, 2)

    def test_equality_componentwise(self, golden):
        assert golden == QuadraticIrrational(1, 5, 2)
        assert golden != QuadraticIrrational(1, 2, 1)

    def test_json_round_trip(self, golden):
        assert QuadraticIrrational.from_json_dict(golden.to_json_dict()) == golden


class TestExpand:
    def test_golden_ratio(self, golden):
        cf = expand(golden)
        assert cf.preperiod == ()
        assert cf.period == (1,)

    def test_one_plus_sqrt2(self):
        cf = expand(QuadraticIrrational(1, 2, 1))
        assert cf.preperiod == ()
        assert cf.period == (2,)

    def test_sqrt2(self):
        cf = expand(QuadraticIrrational(0, 2, 1))
        assert cf.preperiod == (1,)
        assert cf.period == (2,)

    @pytest.mark.parametrize(
        "p,d,q",
        [(1, 5, 2), (0, 2, 1), (1, 2, 1), (0, 6, 1), (0, 7, 1), (3, 19, 2), (-2, 13, 3)],
    )
    def test_against_high_precision_oracle(self, p, d, q):
        theta = QuadraticIrrational(p, d, q)
        cf = expand(theta)
        want = cf_quotients_oracle(theta.p, theta.d, theta.q, 30)
        assert cf.quotients(30) == want

    def test_negative_value(self):
        theta = QuadraticIrrational(-5, 2, 1)
        cf = expand(theta)
        assert cf.quotients(1)[0] == theta.floor() < 0
        assert cf.quotients(25) == cf_quotients_oracle(theta.p, theta.d, theta.q, 25)


nonsquare = st.integers(2, 300).filter(lambda d: isqrt(d) ** 2 != d)


class TestRoundTrip:
    @settings(max_examples=60, deadline=None)
    @given(p=st.integers(-15, 15), d=nonsquare, q=st.integers(1, 8))
    def test_convergents_approach_theta(self, p, d, q):
        theta = QuadraticIrrational(p, d, q)
        cf = expand(theta)
        approx = (Fraction(theta.p) + sqrt_approx(theta.d)) / theta.q
        for k in range(2, len(cf.preperiod) + 10 * len(cf.period) + 1):
            conv = cf.convergent(k)
            # |theta - p_k/q_k| < 1/q_k^2, with margin for the sqrt approx
            err = abs(approx - conv)
            assert err < Fraction(1, conv.denominator**2) + Fraction(1, 2**100)

    def test_period_is_minimal_block(self):
        cf = ContinuedFraction([], [2, 1, 2, 1])
        assert cf.period == (2, 1)

    def test_preperiod_absorbed_into_period(self):
        assert ContinuedFraction([1], [2, 1]) == ContinuedFraction([], [1, 2])

    def test_rejects_empty_period(self):
        with pytest.raises(InvalidInputError):
            ContinuedFraction([1], [])

    def test_rejects_nonpositive_quotients(self):
        with pytest.raises(InvalidInputError):
            ContinuedFraction([1], [0])
        with pytest.raises(InvalidInputError):
            ContinuedFraction([1, 0], [2])


class TestMatrixA:
    def test_period_1_squared(self):
        assert matrix_A(ContinuedFraction([], [1])) == IntMatrix([[2, 1], [1, 1]])

    def test_period_2_squared(self):
        assert matrix_A(ContinuedFraction([], [2])) == IntMatrix([[5, 2], [2, 1]])

    def test_period_21_unsquared(self):
        a = matrix_A(ContinuedFraction([], [2, 1]))
        assert a == IntMatrix([[3, 2], [1, 1]])
        assert a.det() == 1

    @pytest.mark.parametrize("period", [(1,), (2,), (3,), (1, 2), (2, 1), (3, 3), (1, 1, 2)])
    def test_det_one_and_hyperbolic(self, period):
        a = matrix_A(ContinuedFraction([], period))
        assert a.det() == 1
        assert a.trace() >= 2
        if a.trace() > 2:
            assert a.trace() ** 2 - 4 > 0

    @pytest.mark.parametrize(
        "theta",
        [
            QuadraticIrrational(1, 5, 2),
            QuadraticIrrational(1, 2, 1),
            QuadraticIrrational(2, 6, 1),
        ],
    )
    def test_eigencolumn_identity(self, theta):
        """A (theta, 1)^t = lambda (theta, 1)^t exactly in the field,
        for purely periodic theta."""
        cf = expand(theta)
        assert cf.is_purely_periodic
        a = matrix_A(cf)
        theta_f = QuadFieldElement(Fraction(theta.p, theta.q), Fraction(1, theta.q), theta.d)
        lam = QuadFieldElement(
            a.rows[1][0] * theta_f.u + a.rows[1][1], a.rows[1][0] * theta_f.v, theta.d
        )
        top = QuadFieldElement(
            a.rows[0][0] * theta_f.u + a.rows[0][1], a.rows[0][0] * theta_f.v, theta.d
        )
        assert top == lam * theta_f


class TestFundamentalUnit:
    @pytest.mark.parametrize(
        "d,x,y,norm",
        [(5, 0, 1, -1), (2, 1, 1, -1), (3, 2, 1, 1)],
    )
    def test_spec_values(self, d, x, y, norm):
        unit = fundamental_unit(d)
        assert (unit.x, unit.y, unit.norm()) == (x, y, norm)

    @pytest.mark.parametrize("d", [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 19, 21, 94])
    def test_against_pell_oracle(self, d):
        unit = fundamental_unit(d)
        x, y, norm = pell_fundamental_oracle(d)
        assert (unit.x, unit.y, unit.norm()) == (x, y, norm)

    def test_rejects_square(self):
        with pytest.raises(InvalidInputError):
            fundamental_unit(9)

    def test_value_exceeds_one(self):
        for d in (2, 3, 5, 13):
            assert float(fundamental_unit(d)) > 1

    @pytest.mark.parametrize("d", [2, 3, 5, 6, 7, 10])
    def test_matches_period_matrix_eigenvalue(self, d):
        """The unit from the period matrix of omega_d is a power of the
        fundamental unit found independently (here: the first power)."""
        eps = fundamental_unit(d)
        theta = QuadraticIrrational(1, d, 2) if d % 4 == 1 else QuadraticIrrational(0, d, 1)
        lam = fundamental_unit_of(theta)
        powers = [eps.pow(k) for k in range(1, 5)]
        assert lam in powers
        assert lam == powers[0]


class TestUnitIndex:
    def test_n1_is_always_1(self, golden):
        assert unit_index(golden, 1) == 1
        assert unit_index(QuadraticIrrational(0, 7, 1), 1) == 1

    def test_golden_n2_fibonacci(self, golden):
        # y-coordinates of eps^g are 1, 1, 2: first even at g = 3
        assert unit_index(golden, 2) == 3

    def test_one_plus_sqrt2_n5(self):
        # y-coordinates are 1, 2, 5: first divisible by 5 at g = 3
        assert unit_index(QuadraticIrrational(1, 2, 1), 5) == 3

    def test_cap_exceeded(self, golden):
        with pytest.raises(UnitIndexBoundError):
            unit_index(golden, 2, max_power=2)

    @pytest.mark.parametrize("theta_args", [(1, 5, 2), (1, 2, 1), (0, 3, 1)])
    def test_divisibility_of_index_map(self, theta_args):
        theta = QuadraticIrrational(*theta_args)
        values = {}
        for n in (2, 3, 4, 5, 6, 8, 10, 12, 15, 20):
            values[n] = unit_index(theta, n)
        for n in (2, 3, 4, 5):
            for m in (2, 3, 4):
                if n * m in values:
                    assert values[n * m] % values[n] == 0

    def test_powers_stay_in_lattice(self, golden):
        """Unit powers have integer coordinates in the basis {1, theta}."""
        eps = fundamental_unit_of(golden)
        xi = QuadFieldElement(1, 0, 5)
        for _ in range(12):
            xi = xi * eps
            y = xi.v * golden.q
            x = xi.u - xi.v * golden.p
            assert x.denominator == 1 and y.denominator == 1


class TestPeriodicTail:
    def test_tail_of_purely_periodic_is_itself(self, golden):
        assert periodic_tail(golden) == golden

    def test_tail_of_sqrt2(self):
        assert periodic_tail(QuadraticIrrational(0, 2, 1)) == QuadraticIrrational(1, 2, 1)


class TestRealQuadraticUnit:
    def test_norm_validation(self):
        with pytest.raises(InvalidInputError):
            RealQuadraticUnit(2, 1, 5)  # norm 2+2-1 = 5, not a unit

    def test_power_coordinates(self):
        eps = fundamental_unit(2)
        cube = eps.pow(3)
        # (1+sqrt(2))^3 = 7 + 5*sqrt(2)
        assert (cube.u, cube.v) == (7, 5)

    def test_repeated_multiplication_consistency(self):
        for d in (2, 3, 5, 6, 7, 10):
            eps = fundamental_unit(d)
            xi = QuadFieldElement(1, 0, d)
            for k in range(1, 8):
                xi = xi * eps.as_field_element()
                assert xi == eps.pow(k)
