"""
Test module for the fractalqm command line.

Tests:
- Every subcommand on its documented examples
- Exit codes: 0 success, 1 runtime failure, 2 usage error
- CSV and JSON output, --output files and config files
- Byte-identical output across runs
"""

import csv
import io
import json
import math
import sys
import tempfile
import unittest
from pathlib import Path

from click.testing import CliRunner

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from fractalqm.cli import main


def _rows(text: str) -> list[dict[str, float]]:
    reader = csv.DictReader(io.StringIO(text))
    return [{key: float(value) for key, value in row.items()} for row in reader]


class CliTestCase(unittest.TestCase):
    """Shared runner and temporary directory."""

    def setUp(self):
        self.runner = CliRunner()
        self.temp_dir = tempfile.TemporaryDirectory()
        self.temp_path = Path(self.temp_dir.name)

    def tearDown(self):
        self.temp_dir.cleanup()

    def invoke(self, *args: str, exit_code: int = 0):
        result = self.runner.invoke(main, list(args))
        self.assertEqual(result.exit_code, exit_code, result.output)
        return result


class TestDimension(CliTestCase):
    """Test cases for the dimension command."""

    def test_triadic(self):
        result = self.invoke("dimension", "--keep-ratio", "0.3333333", "--depth", "12", "--tol", "0.01")
        line = next(l for l in result.output.splitlines() if l.startswith("gamma-dimension:"))
        value = float(line.split()[1])
        self.assertAlmostEqual(value, math.log(2) / math.log(3), delta=0.01)

    def test_full_interval(self):
        result = self.invoke("dimension", "--keep-ratio", "0.5", "--depth", "8")
        self.assertIn("gamma-dimension: 1.000000", result.output)

    def test_invalid_keep_ratio(self):
        self.invoke("dimension", "--keep-ratio", "1.5", exit_code=2)

    def test_trial_table_file(self):
        out = self.temp_path / "trials.csv"
        self.invoke("--output", str(out), "dimension", "--keep-ratio", "0.25", "--depth", "8", "--tol", "0.05")
        rows = _rows(out.read_text())
        self.assertGreaterEqual(len(rows), 3)
        alphas = [row["alpha"] for row in rows]
        self.assertEqual(alphas, sorted(alphas))
        self.assertEqual(rows[-1]["vanishing"], 1.0)
        self.assertEqual(rows[0]["vanishing"], 0.0)


class TestStaircase(CliTestCase):
    """Test cases for the staircase command."""

    def test_power_law(self):
        result = self.invoke("staircase", "--alpha", "0.5", "--xmax", "4", "--samples", "5")
        self.assertEqual(result.output, "x,S\n0,0\n1,1\n2,1.41421356237\n3,1.73205080757\n4,2\n")

    def test_cantor(self):
        result = self.invoke(
            "staircase", "--alpha", str(math.log(2) / math.log(3)), "--backend", "cantor_analytic", "--samples", "3"
        )
        rows = _rows(result.output)
        self.assertEqual([row["S"] for row in rows], [0.0, 0.5, 1.0])

    def test_bad_backend(self):
        self.invoke("staircase", "--backend", "spline", exit_code=2)


class TestHydrogen(CliTestCase):
    """Test cases for the hydrogen commands."""

    def test_density_rows(self):
        result = self.invoke(
            "hydrogen-density", "--n", "1", "--l", "0", "--alpha", "0.6,0.8,1.0", "--rmax", "10", "--samples", "200"
        )
        rows = _rows(result.output)
        self.assertEqual(len(rows), 600)
        self.assertEqual(result.output.splitlines()[0], "r,alpha,P")
        first_alpha_one = next(row for row in rows if row["alpha"] == 1.0)
        self.assertEqual(first_alpha_one["r"], 0.0)
        self.assertEqual(first_alpha_one["P"], 4.0)
        self.assertTrue(all(row["P"] >= 0.0 for row in rows))

    def test_density_invalid_l(self):
        self.invoke("hydrogen-density", "--n", "2", "--l", "2", exit_code=2)

    def test_density_paper_literal(self):
        result = self.invoke("hydrogen-density", "--alpha", "1.0", "--rmax", "1", "--samples", "2", "--mode", "paper_literal")
        self.assertAlmostEqual(_rows(result.output)[1]["P"], 4 * math.exp(-1), places=10)

    def test_density_normalized(self):
        args = ["hydrogen-density", "--alpha", "1.0", "--rmax", "1", "--samples", "2", "--normalize", "fractal"]
        result = self.invoke(*args)
        self.assertAlmostEqual(_rows(result.output)[0]["P"], 2.0, delta=1e-3)

        coarse = self.invoke(*args, "--cells", "8")
        self.assertGreater(abs(_rows(coarse.output)[0]["P"] - 2.0), 0.01)

        config = self.temp_path / "run.toml"
        config.write_text("integration_cells = 8\n")
        from_file = self.invoke("--config", str(config), *args)
        self.assertEqual(from_file.output, coarse.output)

        self.invoke(*args, "--cells", "0", exit_code=2)
        self.invoke("hydrogen-density", "--normalize", "spherical", exit_code=2)

    def test_energies(self):
        result = self.invoke("hydrogen-energies", "--n-max", "3", "--alpha", "0.6,0.8,1.0")
        rows = _rows(result.output)
        self.assertEqual(len(rows), 9)
        by_key = {(int(row["n"]), row["alpha"]): row for row in rows}
        self.assertAlmostEqual(by_key[(1, 1.0)]["E_eV"], -13.606, delta=1e-3)
        self.assertAlmostEqual(by_key[(2, 0.8)]["E_hartree"], -0.16494, places=5)
        for alpha in (0.6, 0.8, 1.0):
            self.assertAlmostEqual(by_key[(1, alpha)]["E_hartree"], -0.5, places=12)

    def test_energies_invalid_n(self):
        self.invoke("hydrogen-energies", "--n-min", "0", exit_code=2)

    def test_energies_si(self):
        result = self.invoke("hydrogen-energies", "--n-max", "1", "--units", "si")
        self.assertAlmostEqual(_rows(result.output)[0]["E_eV"], -13.606, delta=1e-3)


class TestOscillator(CliTestCase):
    """Test cases for the oscillator commands."""

    def test_density(self):
        result = self.invoke("ho-density", "--n", "0,1", "--alpha", "0.5,1.0")
        rows = _rows(result.output)
        self.assertEqual(len(rows), 2 * 2 * 201)
        self.assertEqual(result.output.splitlines()[0], "x,alpha,n,P")
        centre = next(r for r in rows if r["n"] == 0 and r["alpha"] == 1.0 and abs(r["x"]) < 1e-9)
        self.assertAlmostEqual(centre["P"], 0.56419, places=5)
        self.assertTrue(all(row["P"] >= 0.0 for row in rows))

    def test_ladder(self):
        result = self.invoke("ho-energies", "--n-max", "5", "--omega-alpha", "1.5")
        energies = [row["E"] for row in _rows(result.output)]
        self.assertEqual(len(energies), 6)
        for a, b in zip(energies, energies[1:]):
            self.assertAlmostEqual(b - a, 1.5, places=10)

    def test_position_form(self):
        result = self.invoke(
            "ho-energies", "--form", "position", "--n-max", "1", "--alpha", "0.5", "--xmax", "16", "--samples", "2"
        )
        rows = _rows(result.output)
        self.assertEqual(result.output.splitlines()[0], "n,alpha,x,E")
        self.assertEqual(rows[-1], {"n": 1.0, "alpha": 0.5, "x": 16.0, "E": 3.0})

    def test_bad_flags(self):
        self.invoke("ho-density", "--n", "a,b", exit_code=2)
        self.invoke("ho-density", "--alpha", "0", exit_code=2)
        self.invoke("ho-energies", "--form", "spiral", exit_code=2)


class TestResidual(CliTestCase):
    """Test cases for the residual command."""

    def test_oscillator(self):
        result = self.invoke("residual", "--n", "0,1,2,3", "--alpha", "1.0")
        self.assertEqual(result.output.splitlines()[0], "x,alpha,n,residual")
        rows = _rows(result.output)
        self.assertEqual(len(rows), 16)
        self.assertTrue(all(row["residual"] < 1e-4 for row in rows))

    def test_hydrogen(self):
        result = self.invoke("residual", "--system", "hydrogen", "--n", "1", "--alpha", "1.0", "--points", "1.5")
        self.assertLess(_rows(result.output)[0]["residual"], 1e-4)

    def test_step(self):
        args = ["residual", "--n", "2", "--alpha", "1.0", "--points", "0.7"]
        fine = _rows(self.invoke(*args).output)[0]["residual"]
        coarse = _rows(self.invoke(*args, "--step", "0.01").output)[0]["residual"]
        self.assertLess(fine, coarse)

        config = self.temp_path / "run.yaml"
        config.write_text("step: 0.01\n")
        from_file = _rows(self.invoke("--config", str(config), *args).output)[0]["residual"]
        self.assertEqual(from_file, coarse)

    def test_usage_errors(self):
        self.invoke("residual", "--step", "0", exit_code=2)
        self.invoke("residual", "--system", "hydrogen", "--n", "1", "--l", "1", exit_code=2)
        self.invoke("residual", "--system", "hydrogen", "--n", "1", "--points", "0", exit_code=2)

    def test_cantor_gap(self):
        self.invoke(
            "residual", "--alpha", str(math.log(2) / math.log(3)), "--backend", "cantor_analytic",
            "--points", "0.5", exit_code=1,
        )


class TestEvolve(CliTestCase):
    """Test cases for the evolve command."""

    def test_single_term_constant(self):
        for alpha in ("0.5", "1.0"):
            for beta in ("0.5", "1.0"):
                result = self.invoke("evolve", "--term", "1,0,2", "--alpha", alpha, "--beta", beta, "--point", "0.8")
                abs2 = [row["abs2"] for row in _rows(result.output)]
                self.assertEqual(len(abs2), 101)
                self.assertLess(max(abs2) - min(abs2), 1e-12)

    def test_two_term_period(self):
        c = repr(1 / math.sqrt(2))
        result = self.invoke(
            "evolve", "--term", f"{c},0,0", "--term", f"{c},0,1",
            "--tmax", repr(2 * math.pi), "--samples", "2",
        )
        rows = _rows(result.output)
        self.assertAlmostEqual(rows[0]["abs2"], rows[1]["abs2"], delta=1e-6)

    def test_hydrogen(self):
        result = self.invoke(
            "evolve", "--system", "hydrogen", "--term", "1,0,2,1,-1", "--point", "1.5,0.7,0.2", "--samples", "11"
        )
        rows = _rows(result.output)
        self.assertEqual(len(rows), 11)
        self.assertEqual(result.output.splitlines()[0], "t,re,im,abs2")

    def test_usage_errors(self):
        self.invoke("evolve", exit_code=2)
        self.invoke("evolve", "--term", "1,0", exit_code=2)
        self.invoke("evolve", "--system", "hydrogen", "--term", "1,0,1,1,0", exit_code=2)
        self.invoke("evolve", "--term", "1,0,0", "--point", "1,2", exit_code=2)
        self.invoke("evolve", "--term", "1,0,0", "--tmin", "-1", exit_code=2)


class TestPlotScript(CliTestCase):
    """Test cases for the plot-script command."""

    def test_density_script(self):
        data = self.temp_path / "density.csv"
        self.invoke("--output", str(data), "hydrogen-density", "--alpha", "0.6,1.0", "--samples", "10")
        result = self.invoke("plot-script", str(data), "--kind", "hydrogen-density")
        self.assertIn('strcol(2) eq "0.6"', result.output)
        self.assertIn('strcol(2) eq "1"', result.output)

    def test_energies_script_to_file(self):
        data = self.temp_path / "energies.csv"
        script = self.temp_path / "energies.gp"
        self.invoke("--output", str(data), "hydrogen-energies", "--alpha", "0.8,1.0")
        self.invoke("--output", str(script), "plot-script", str(data), "--kind", "hydrogen-energies")
        text = script.read_text()
        self.assertIn('set xlabel "n"', text)
        self.assertEqual(text.count("linespoints"), 2)

    def test_unknown_kind(self):
        data = self.temp_path / "s.csv"
        self.invoke("--output", str(data), "staircase")
        self.invoke("plot-script", str(data), "--kind", "contour", exit_code=2)

    def test_missing_data(self):
        self.invoke("plot-script", str(self.temp_path / "missing.csv"), "--kind", "staircase", exit_code=1)

    def test_wrong_header(self):
        data = self.temp_path / "s.csv"
        self.invoke("--output", str(data), "staircase")
        self.invoke("plot-script", str(data), "--kind", "evolve", exit_code=1)


class TestGlobalOptions(CliTestCase):
    """Test cases for --format, --output, --config and determinism."""

    def test_json(self):
        result = self.invoke("--format", "json", "hydrogen-energies", "--n-max", "2")
        records = json.loads(result.output)
        self.assertEqual(list(records[0]), ["n", "alpha", "E_hartree", "E_eV"])
        self.assertEqual(records[1]["n"], 2)

    def test_output_file(self):
        out = self.temp_path / "levels.csv"
        result = self.invoke("--output", str(out), "hydrogen-energies", "--n-max", "2")
        self.assertEqual(result.output, "")
        self.assertEqual(len(_rows(out.read_text())), 2)

    def test_config_file(self):
        config = self.temp_path / "run.toml"
        config.write_text('alpha = 0.8\nradial_mode = "paper_literal"\n')
        result = self.invoke("--config", str(config), "hydrogen-energies", "--n-max", "2")
        self.assertEqual({row["alpha"] for row in _rows(result.output)}, {0.8})
        result = self.invoke("--config", str(config), "hydrogen-energies", "--n-max", "2", "--alpha", "1.0")
        self.assertEqual({row["alpha"] for row in _rows(result.output)}, {1.0})

    def test_invalid_config(self):
        config = self.temp_path / "bad.toml"
        config.write_text("alpha = 2.0\n")
        self.invoke("--config", str(config), "hydrogen-energies", exit_code=2)
        self.invoke("--config", str(self.temp_path / "missing.toml"), "hydrogen-energies", exit_code=2)

    def test_deterministic(self):
        args = ["ho-density", "--n", "0,1,2,3", "--alpha", "0.6,0.8,1.0"]
        first = self.temp_path / "a.csv"
        second = self.temp_path / "b.csv"
        self.invoke("--output", str(first), *args)
        self.invoke("--output", str(second), *args)
        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_version(self):
        result = self.invoke("--version")
        self.assertIn("0.1.0", result.output)


if __name__ == "__main__":
    unittest.main()
