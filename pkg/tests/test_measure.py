"""
Test module for fractalqm mass, dimension and staircases.

Tests:
- coarse_mass on the full interval and triadic approximants
- mass_function trends and convergence flag
- gamma_dimension recovery of similarity dimensions
- Staircase backends, odd extension and inversion
"""

import math
import sys
import unittest
from pathlib import Path

import numpy as np

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from fractalqm.errors import ComputationError, ParameterError
from fractalqm.fractalset import CantorSpec, build_cantor
from fractalqm.measure import (
    CantorStaircase,
    NumericStaircase,
    PowerLawStaircase,
    StaircaseBackend,
    coarse_mass,
    default_mesh_schedule,
    gamma_dimension,
    gamma_dimension_report,
    make_staircase,
    mass_function,
    staircase_eval,
)
from fractalqm.specfun import gamma_fn

TRIADIC_DIM = math.log(2) / math.log(3)


class TestCoarseMass(unittest.TestCase):
    """Test cases for coarse_mass."""

    def setUp(self):
        self.full = build_cantor(CantorSpec(0.5), 6)
        self.triadic8 = build_cantor(CantorSpec(1 / 3), 8)

    def test_full_interval(self):
        for delta in (2.0, 0.5, 0.013, 1e-3):
            estimate = coarse_mass(self.full, 1.0, 0.0, 1.0, delta)
            self.assertAlmostEqual(estimate.value, 1.0, places=9)
            self.assertEqual(estimate.delta, delta)

    def test_triadic_lebesgue_measure(self):
        estimate = coarse_mass(self.triadic8, 1.0, 0.0, 1.0, 3.0 ** -8)
        self.assertAlmostEqual(estimate.value, (2 / 3) ** 8, delta=1e-6)

    def test_triadic_at_dimension(self):
        estimate = coarse_mass(self.triadic8, TRIADIC_DIM, 0.0, 1.0, 3.0 ** -8)
        self.assertAlmostEqual(estimate.value, gamma_fn(TRIADIC_DIM + 1.0), delta=1e-3)
        self.assertAlmostEqual(estimate.value, 0.897371, delta=1e-3)

    def test_larger_budget_never_increases(self):
        for alpha in (0.4, TRIADIC_DIM, 0.9):
            for delta in (0.1, 3.0 ** -5, 0.004):
                values = [
                    coarse_mass(self.triadic8, alpha, 0.0, 1.0, delta, budget).value
                    for budget in (1, 2, 4, 8)
                ]
                for earlier, later in zip(values, values[1:]):
                    self.assertLessEqual(later, earlier)

    def test_non_decreasing_as_mesh_shrinks(self):
        values = [
            coarse_mass(self.triadic8, TRIADIC_DIM, 0.0, 1.0, 3.0 ** -k).value for k in range(1, 9)
        ]
        for coarse, fine in zip(values, values[1:]):
            self.assertGreaterEqual(fine, coarse * (1 - 1e-9))

    def test_window_inside_gap(self):
        self.assertEqual(coarse_mass(self.triadic8, 0.7, 0.4, 0.6, 0.01).value, 0.0)

    def test_invalid_arguments(self):
        with self.assertRaises(ParameterError):
            coarse_mass(self.full, 1.5, 0.0, 1.0, 0.1)
        with self.assertRaises(ParameterError):
            coarse_mass(self.full, 0.0, 0.0, 1.0, 0.1)
        with self.assertRaises(ParameterError):
            coarse_mass(self.full, 1.0, 1.0, 0.0, 0.1)
        with self.assertRaises(ParameterError):
            coarse_mass(self.full, 1.0, 0.0, 1.0, 0.0)


class TestMassFunction(unittest.TestCase):
    """Test cases for mass_function."""

    def setUp(self):
        self.triadic10 = build_cantor(CantorSpec(1 / 3), 10)

    def test_full_interval_converges(self):
        fset = build_cantor(CantorSpec(0.5), 8)
        estimate = mass_function(fset, 1.0, 0.0, 1.0, default_mesh_schedule(fset))
        self.assertAlmostEqual(estimate.value, 1.0, places=9)
        self.assertTrue(estimate.converged)

    def test_vanishing_above_dimension(self):
        estimate = mass_function(self.triadic10, 0.9, 0.0, 1.0, default_mesh_schedule(self.triadic10))
        self.assertFalse(estimate.converged)
        self.assertLess(estimate.value, 0.1 * estimate.history[0])
        self.assertTrue(all(b < a for a, b in zip(estimate.history, estimate.history[1:])))

    def test_diverging_below_dimension(self):
        estimate = mass_function(self.triadic10, 0.4, 0.0, 1.0, default_mesh_schedule(self.triadic10))
        self.assertFalse(estimate.converged)
        self.assertGreater(estimate.value, 5.0 * estimate.history[0])

    def test_threshold_margin(self):
        dimension = gamma_dimension(self.triadic10, 0.0, 1.0, 0.01)
        schedule = default_mesh_schedule(self.triadic10)
        below = mass_function(self.triadic10, dimension - 0.3, 0.0, 1.0, schedule)
        above = mass_function(self.triadic10, dimension + 0.3, 0.0, 1.0, schedule)
        self.assertGreater(below.value, 10.0 * below.history[0])
        self.assertLess(above.value, 0.1 * above.history[0])

    def test_schedule_validation(self):
        with self.assertRaises(ParameterError):
            mass_function(self.triadic10, 0.5, 0.0, 1.0, [])
        with self.assertRaises(ParameterError):
            mass_function(self.triadic10, 0.5, 0.0, 1.0, [0.1, 0.2])
        with self.assertRaises(ParameterError):
            mass_function(self.triadic10, 0.5, 0.0, 1.0, [0.1, -0.01])


class TestGammaDimension(unittest.TestCase):
    """Test cases for gamma_dimension."""

    def test_full_interval(self):
        fset = build_cantor(CantorSpec(0.5), 8)
        self.assertAlmostEqual(gamma_dimension(fset, 0.0, 1.0, 0.01), 1.0, delta=0.01)

    def test_triadic(self):
        fset = build_cantor(CantorSpec(1 / 3), 12)
        self.assertAlmostEqual(gamma_dimension(fset, 0.0, 1.0, 0.01), TRIADIC_DIM, delta=0.01)

    def test_quarter(self):
        fset = build_cantor(CantorSpec(0.25), 10)
        self.assertAlmostEqual(gamma_dimension(fset, 0.0, 1.0, 0.01), 0.5, delta=0.01)

    def test_report_records_trials(self):
        fset = build_cantor(CantorSpec(1 / 3), 10)
        report = gamma_dimension_report(fset, 0.0, 1.0, 0.02)
        self.assertEqual(report.tol, 0.02)
        self.assertGreaterEqual(len(report.trials), 3)
        for trial in report.trials:
            if trial.alpha >= report.value + report.tol:
                self.assertTrue(trial.vanishing)
            elif trial.alpha <= report.value - report.tol:
                self.assertFalse(trial.vanishing)

    def test_empty_window(self):
        fset = build_cantor(CantorSpec(1 / 3), 8)
        with self.assertRaises(ComputationError):
            gamma_dimension(fset, 0.4, 0.6, 0.01)

    def test_invalid_tol(self):
        with self.assertRaises(ParameterError):
            gamma_dimension(build_cantor(CantorSpec(1 / 3), 4), 0.0, 1.0, 0.0)


class TestStaircase(unittest.TestCase):
    """Test cases for the staircase backends."""

    def test_power_law_examples(self):
        self.assertEqual(staircase_eval(PowerLawStaircase(0.5), 4.0), 2.0)
        self.assertAlmostEqual(staircase_eval(PowerLawStaircase(0.8), -2.0), -(2.0 ** 0.8), places=14)
        self.assertAlmostEqual(staircase_eval(PowerLawStaircase(0.8), -2.0), -1.7411, places=4)
        for alpha in (0.2, 0.5, 1.0):
            s = PowerLawStaircase(alpha)
            self.assertEqual(s(0.0), 0.0)
            self.assertEqual(s(1.0), 1.0)

    def test_power_law_identity_at_one(self):
        s = PowerLawStaircase(1.0)
        for x in (-3.5, 0.0, 0.25, 17.0):
            self.assertEqual(s(x), x)

    def test_cantor_analytic_examples(self):
        s = CantorStaircase(CantorSpec(1 / 3))
        self.assertEqual(s(1.0), 1.0)
        self.assertAlmostEqual(s(1 / 3), 0.5, places=9)
        self.assertAlmostEqual(s(0.5), 0.5, places=12)
        self.assertAlmostEqual(s(2 / 9), 0.25, places=9)
        self.assertAlmostEqual(s(-1 / 3), -0.5, places=9)
        self.assertEqual(CantorStaircase(CantorSpec(1 / 3), normalization=3.0)(2.0), 3.0)
        self.assertAlmostEqual(s.alpha, TRIADIC_DIM, places=12)

    def test_numeric_full_interval_is_identity(self):
        s = NumericStaircase(build_cantor(CantorSpec(0.5), 4), 1.0)
        for x in (0.1, 0.37, 0.5, 0.99):
            self.assertAlmostEqual(s(x), x, delta=1e-6)
        self.assertAlmostEqual(s(-0.3), -0.3, delta=1e-6)

    def test_numeric_negative_branch(self):
        s = NumericStaircase(build_cantor(CantorSpec(0.5), 4), 1.0, reference=0.5)
        self.assertAlmostEqual(s(0.2), -0.3, delta=1e-6)
        self.assertAlmostEqual(s(0.9), 0.4, delta=1e-6)
        self.assertEqual(s(0.5), 0.0)

    def test_numeric_support_below_zero(self):
        s = NumericStaircase(build_cantor(CantorSpec(0.5, (-1.0, 2.0)), 4), 1.0)
        self.assertAlmostEqual(s(-0.5), 0.5, delta=1e-6)
        self.assertAlmostEqual(s(0.5), 1.5, delta=1e-6)
        self.assertAlmostEqual(s(-1.0), 0.0, delta=1e-6)
        self.assertLess(s(-0.9), s(-0.1))
        self.assertTrue(s.is_increasing_at(-0.5))
        self.assertAlmostEqual(s.inverse(0.5), -0.5, delta=1e-5)

    def test_monotone(self):
        rng = np.random.default_rng(5)
        staircases = [
            PowerLawStaircase(0.35),
            PowerLawStaircase(0.8),
            CantorStaircase(CantorSpec(1 / 3)),
            CantorStaircase(CantorSpec(0.2), normalization=2.0),
        ]
        for s in staircases:
            for _ in range(100):
                x1, x2 = np.sort(rng.uniform(-2.0, 2.0, 2))
                self.assertLessEqual(s(float(x1)), s(float(x2)))

    def test_numeric_monotone_on_grid(self):
        s = make_staircase(StaircaseBackend.NUMERIC, TRIADIC_DIM, depth=6)
        values = [s(float(x)) for x in np.linspace(0.0, 1.0, 12)]
        for a, b in zip(values, values[1:]):
            self.assertLessEqual(a, b + 1e-12)

    def test_inverse(self):
        s = PowerLawStaircase(0.6)
        for u in (-2.0, 0.0, 0.3, 5.0):
            self.assertAlmostEqual(s(s.inverse(u)), u, places=12)
        np.testing.assert_allclose(s.evaluate_many(s.inverse_many([0.2, -1.5, 3.0])), [0.2, -1.5, 3.0])

        c = CantorStaircase(CantorSpec(1 / 3))
        for u in (0.1, 0.5, 0.9, -0.25):
            self.assertAlmostEqual(c(c.inverse(u)), u, places=7)
        with self.assertRaises(ComputationError):
            c.inverse(1.5)

    def test_inverse_numeric(self):
        s = NumericStaircase(build_cantor(CantorSpec(0.5), 4), 1.0)
        for u in (0.25, 0.5, 0.8, -0.4):
            self.assertAlmostEqual(s.inverse(u), u, delta=1e-5)
        with self.assertRaises(ComputationError):
            s.inverse(5.0)

    def test_is_increasing_at(self):
        c = CantorStaircase(CantorSpec(1 / 3))
        self.assertTrue(c.is_increasing_at(0.0))
        self.assertTrue(c.is_increasing_at(1.0))
        self.assertFalse(c.is_increasing_at(0.5))
        self.assertTrue(PowerLawStaircase(0.5).is_increasing_at(0.3))

    def test_make_staircase(self):
        self.assertIsInstance(make_staircase("power_law", 0.7), PowerLawStaircase)
        cantor = make_staircase(StaircaseBackend.CANTOR_ANALYTIC, 0.5, normalization=2.0)
        self.assertIsInstance(cantor, CantorStaircase)
        self.assertAlmostEqual(cantor.spec.keep_ratio, 0.25, places=12)
        self.assertIsInstance(make_staircase("numeric", 0.5, depth=4), NumericStaircase)
        with self.assertRaises(ValueError):
            make_staircase("fourier", 0.5)
        with self.assertRaises(ParameterError):
            PowerLawStaircase(1.2)
        with self.assertRaises(ParameterError):
            PowerLawStaircase(0.5)(math.inf)


if __name__ == "__main__":
    unittest.main()
