import math
import random
from fractions import Fraction

import pytest
from scipy import integrate

from bergpoly import (
    IntMatrix,
    NonConvergentError,
    Window,
    WindowTooSmallError,
    assemble_kernel,
    compare_with_closed_form,
    monomial_norm,
    numeric_spot_check,
    oracle_series,
    prepare,
)
from bergpoly.kernel import BergmanKernelForm
from bergpoly.laurent import LaurentPolynomial

from conftest import sample_interior_point


def shadow_integral(vm, m, inner_cut=0.0):
    """Independent 2-D oracle for the squared monomial norm, in pi^2 units:
    direct radial integration 4 * dblquad(r1^(2m1+1) r2^(2m2+1)) over the
    Reinhardt shadow {r : r^(b^1) < 1, r^(b^2) < 1}.  Valid 2x2 matrices
    have a >= 0, d >= 0 on the diagonal and b, c <= 0 off it, so the
    shadow is r2 in (0,1) with r1 between power curves."""
    (a, b), (c, d) = vm.matrix.rows
    m1, m2 = m

    def r1_hi(r2):
        return min(1.0, r2 ** (-b / a)) if a else 1.0

    def r1_lo(r2):
        return max(inner_cut, r2 ** (d / -c)) if c else inner_cut

    val, err = integrate.dblquad(
        lambda r1, r2: 4 * r1 ** (2 * m1 + 1) * r2 ** (2 * m2 + 1),
        0.0,
        1.0,
        r1_lo,
        r1_hi,
        epsabs=1e-11,
        epsrel=1e-11,
    )
    return val


class TestMonomialNorm:
    def test_polydisc_constant(self):
        vm = prepare(IntMatrix.identity(3))
        assert monomial_norm(vm, (0, 0, 0)) == 1

    def test_hartogs_values(self, hartogs_vm):
        assert monomial_norm(hartogs_vm, (0, 0)) == Fraction(1, 2)
        assert monomial_norm(hartogs_vm, (0, -1)) == 1
        assert monomial_norm(hartogs_vm, (-1, 0)) is None

    @pytest.mark.parametrize(
        "rows,m",
        [
            (((1, -1), (0, 1)), (0, 0)),
            (((1, -1), (0, 1)), (0, -1)),
            (((1, -1), (0, 1)), (1, 0)),
            (((1, -1), (0, 1)), (2, 1)),
            (((1, -1), (0, 1)), (1, -1)),
            (((2, -1), (0, 1)), (0, 0)),
            (((2, -1), (0, 1)), (1, 0)),
            (((2, -1), (0, 1)), (3, 2)),
            (((3, -2), (-1, 1)), (0, 0)),
            (((3, -2), (-1, 1)), (0, -1)),
            (((3, -2), (-1, 1)), (1, 1)),
            (((1, 0), (0, 1)), (0, 0)),
            (((1, 0), (0, 1)), (2, 3)),
        ],
    )
    def test_formula_against_numeric_integration(self, rows, m):
        # the mandated independent validation of the norm formula at n = 2
        vm = prepare(IntMatrix(rows))
        exact = monomial_norm(vm, m)
        assert exact is not None
        numeric = shadow_integral(vm, m)
        assert numeric == pytest.approx(float(exact), rel=1e-7)

    def test_divergence_when_not_square_integrable(self, hartogs_vm):
        # z1^(-1) on the Hartogs triangle: inner integral diverges like log
        assert monomial_norm(hartogs_vm, (-1, 0)) is None
        grown = [shadow_integral(hartogs_vm, (-1, 0), inner_cut=eps)
                 for eps in (1e-2, 1e-4, 1e-6)]
        assert grown[1] > grown[0] + 1 and grown[2] > grown[1] + 1


class TestOracleSeries:
    def test_polydisc_linear_coefficient(self):
        vm = prepare(IntMatrix.identity(3))
        series = oracle_series(vm, Window.cube(3, 3))
        assert series.coefficient((1, 0, 0)) == 2  # 1/(1-t)^2 = sum (k+1) t^k

    def test_hartogs_values(self, hartogs_vm):
        series = oracle_series(hartogs_vm, Window.cube(2, 4))
        assert series.coefficient((0, 0)) == 2
        assert series.coefficient((1, 0)) == 6
        assert series.coefficient((-1, 0)) == 0

    def test_positivity_and_denominator(self, sweep_family):
        for vm in sweep_family[:20]:
            det_adj = vm.det ** (vm.n - 1)
            series = oracle_series(vm, Window.cube(vm.n, 3))
            for m, c in series.items():
                assert c > 0
                assert det_adj % c.denominator == 0
                assert c * monomial_norm(vm, m) == 1  # reciprocal norms

    def test_window_monotonicity(self, worked_vm):
        small = oracle_series(worked_vm, Window.cube(2, 3)).to_dict()
        large = oracle_series(worked_vm, Window.cube(2, 6)).to_dict()
        for m, c in small.items():
            assert large[m] == c

    def test_parseval_constant(self, sweep_family):
        for vm in sweep_family[:15]:
            series = oracle_series(vm, Window.cube(vm.n, 1))
            assert series.coefficient((0,) * vm.n) == 1 / monomial_norm(
                vm, (0,) * vm.n
            )


class TestCompare:
    def test_hartogs_spec_window(self, hartogs_vm):
        rep = compare_with_closed_form(hartogs_vm, Window.of((-2, -2), (10, 10)))
        assert rep.ok and rep.checked > 0
        assert rep.safe_lower == (0, 2) and rep.safe_upper == (10, 10)

    def test_worked_spec_window(self, worked_vm):
        rep = compare_with_closed_form(worked_vm, Window.of((-2, -2), (12, 12)))
        assert rep.ok
        assert rep.matched == rep.checked

    def test_polydisc(self):
        for n in (2, 3):
            vm = prepare(IntMatrix.identity(n))
            rep = compare_with_closed_form(vm, Window.of((0,) * n, (6,) * n))
            assert rep.ok

    def test_detects_corruption(self, worked_vm):
        form = assemble_kernel(worked_vm)
        tampered_terms = {e: c for e, c in form.numerator.items()}
        tampered_terms[(1, 1)] = Fraction(2)  # true coefficient is 4
        tampered = BergmanKernelForm(
            n=form.n,
            det=form.det,
            prefactor=form.prefactor,
            pi_exponent=form.pi_exponent,
            numerator=LaurentPolynomial(2, tampered_terms),
            factors=form.factors,
            source=form.source,
            box=form.box,
        )
        rep = compare_with_closed_form(
            worked_vm, Window.of((-2, -2), (12, 12)), form=tampered
        )
        assert not rep.ok
        bad = {e for e, _, _ in rep.mismatches}
        assert (1, 1) in bad
        for e, closed, oracle in rep.mismatches:
            if e == (1, 1):
                assert closed == 1 and oracle == 2  # scaled by 1/det A = 1/2

    def test_window_too_small(self, worked_vm):
        with pytest.raises(WindowTooSmallError):
            compare_with_closed_form(worked_vm, Window.cube(2, 1))

    def test_jobs_deterministic(self, worked_vm):
        w = Window.of((-2, -2), (12, 12))
        a = compare_with_closed_form(worked_vm, w, jobs=1)
        b = compare_with_closed_form(worked_vm, w, jobs=3)
        assert (a.checked, a.matched, a.mismatches) == (
            b.checked,
            b.matched,
            b.mismatches,
        )


class TestNumericSpotCheck:
    def test_polydisc(self):
        vm = prepare(IntMatrix.identity(2))
        err = numeric_spot_check(vm, [0.3, 0.4], [0.3, 0.4], terms=60)
        assert err < 1e-10

    def test_hartogs(self, hartogs_vm):
        err = numeric_spot_check(hartogs_vm, [0.1, 0.6], [0.1, 0.6], terms=80)
        assert err < 1e-8

    def test_off_diagonal_points(self, hartogs_vm):
        p = [0.1 * 1j, 0.55]
        q = [0.08, 0.5 * (1 + 1j) / math.sqrt(2)]
        err = numeric_spot_check(hartogs_vm, p, q, terms=80)
        assert err < 1e-8

    def test_singular_direction_flagged(self, hartogs_vm):
        with pytest.raises(NonConvergentError):
            numeric_spot_check(hartogs_vm, [0.69, 0.7], [0.69, 0.7], terms=40)

    def test_random_family_points(self, sweep_family):
        rng = random.Random(5)
        for vm in sweep_family[:4]:
            form = assemble_kernel(vm)
            p = sample_interior_point(vm, form, rng)
            assert p is not None
            assert numeric_spot_check(vm, p, p, terms=128, form=form) < 1e-8
