"""Contract tests for the kiang command-line tool.

Usage: test_cli.py <path-to-kiang> <schema-dir>
"""

import csv
import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

KIANG = None
SCHEMAS = {}
REGISTRY = Registry()


def run(*args, env=None, check=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    proc = subprocess.run([KIANG, *map(str, args)], capture_output=True,
                          text=True, env=full_env, timeout=300)
    if check is not None and proc.returncode != check:
        raise AssertionError(
            f"exit {proc.returncode} (wanted {check}) for {args}\n{proc.stderr}")
    return proc


def validate(doc, name):
    validator = jsonschema.Draft202012Validator(SCHEMAS[name], registry=REGISTRY)
    validator.validate(doc)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def without(doc, *keys):
    return {k: v for k, v in doc.items() if k not in keys}


class CliContract(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def test_exit_codes(self):
        self.assertEqual(run("--help").returncode, 0)
        self.assertEqual(run().returncode, 2)
        self.assertEqual(run("analyze-blocks", "--bogus").returncode, 2)
        self.assertEqual(run("gen-digits", "--constant", "tau", "--n", "5",
                             "--out", self.dir / "x").returncode, 2)
        self.assertEqual(run("gen-digits", "--constant", "pi", "--n", "0",
                             "--out", self.dir / "x").returncode, 2)

    def test_gen_digits_single_digit(self):
        out = self.dir / "one.txt"
        run("gen-digits", "--constant", "pi", "--n", "1", "--out", out, check=0)
        self.assertEqual(out.read_text(), "1\n")

    def test_gen_digits_wraps_lines(self):
        out = self.dir / "e.txt"
        run("gen-digits", "--constant", "e", "--n", "200", "--out", out, check=0)
        lines = out.read_text().splitlines()
        self.assertTrue(all(len(line) <= 80 for line in lines))
        self.assertTrue("".join(lines).startswith("7182818284"))

    def test_unwritable_output(self):
        target = "/nonexistent/dir/pi.txt"
        proc = run("gen-digits", "--constant", "pi", "--n", "10", "--out", target)
        self.assertEqual(proc.returncode, 3)
        self.assertIn(target, proc.stderr)

    def test_resource_cap_from_environment(self):
        proc = run("gen-digits", "--constant", "pi", "--n", "1000", "--out",
                   self.dir / "x", env={"KIANG_MAX_DIGITS": "100"})
        self.assertEqual(proc.returncode, 2)

    def test_data_errors(self):
        tiny = self.dir / "tiny.txt"
        tiny.write_text("14159\n")
        proc = run("analyze-blocks", "--digits", tiny, "--out", self.dir / "r.json")
        self.assertEqual(proc.returncode, 3)

        bad = self.dir / "bad.txt"
        bad.write_text("14x59\n")
        proc = run("analyze-blocks", "--digits", bad, "--out", self.dir / "r.json")
        self.assertEqual(proc.returncode, 3)
        self.assertIn("2", proc.stderr)

        proc = run("analyze-blocks", "--digits", self.dir / "missing.txt",
                   "--out", self.dir / "r.json")
        self.assertEqual(proc.returncode, 3)

    def test_blocks_report_is_reproducible(self):
        args = ["analyze-blocks", "--constant", "pi", "--n", "200000",
                "--m", "100000", "--rho", "0.001", "--seed", "5"]
        a, b = self.dir / "a.json", self.dir / "b.json"
        run(*args, "--out", a, check=0)
        run(*args, "--out", b, check=0)
        ra, rb = load(a), load(b)
        validate(ra, "analysis_report")
        self.assertEqual(without(ra, "runtime_seconds"), without(rb, "runtime_seconds"))
        self.assertEqual(ra["config"]["seed"], 5)
        self.assertEqual(ra["seed"], 5)
        self.assertEqual(ra["n_digits"], 200000)
        self.assertAlmostEqual(ra["abs_dev_from_2"], abs(2 - ra["alpha"]), places=12)

        hist = self.dir / "a.hist.csv"
        with open(hist, newline="") as fh:
            rows = list(csv.reader(fh))
        self.assertEqual(rows[0], ["bin_left", "bin_right", "count", "density"])
        self.assertEqual(len(rows) - 1, len(ra["histogram"]["counts"]))

    def test_round_trip_through_a_digit_file(self):
        digits = self.dir / "pi.txt"
        run("gen-digits", "--constant", "pi", "--n", "200000", "--out", digits, check=0)
        common = ["--m", "100000", "--seed", "9"]
        from_file = self.dir / "file.json"
        from_const = self.dir / "const.json"
        run("analyze-blocks", "--digits", digits, *common, "--out", from_file, check=0)
        run("analyze-blocks", "--constant", "pi", "--n", "200000", *common,
            "--out", from_const, check=0)
        source_keys = ("constant", "digits_file", "format")
        rf, rc = load(from_file), load(from_const)
        for r in (rf, rc):
            r["config"] = without(r["config"], *source_keys)
        ignore = ("source_label", "runtime_seconds")
        self.assertEqual(without(rf, *ignore), without(rc, *ignore))

    def test_config_file_matches_flags(self):
        conf = self.dir / "run.conf"
        conf.write_text("m = 100000\nrho = 0.002\nseed = 11\n")
        a, b = self.dir / "a.json", self.dir / "b.json"
        run("analyze-blocks", "--constant", "e", "--n", "200000", "--config", conf,
            "--out", a, check=0)
        run("analyze-blocks", "--constant", "e", "--n", "200000", "--m", "100000",
            "--rho", "0.002", "--seed", "11", "--out", b, check=0)
        self.assertEqual(without(load(a), "runtime_seconds"),
                         without(load(b), "runtime_seconds"))
        self.assertEqual(load(a)["config"]["rho"], 0.002)

        # Command-line flags take precedence over the file.
        run("analyze-blocks", "--constant", "e", "--n", "200000", "--config", conf,
            "--seed", "12", "--out", a, check=0)
        self.assertEqual(load(a)["config"]["seed"], 12)
        self.assertEqual(load(a)["config"]["m"], 100000)

        bad = self.dir / "bad.conf"
        bad.write_text("lattice = 5\n")
        proc = run("analyze-blocks", "--constant", "e", "--n", "1000", "--config",
                   bad, "--out", a)
        self.assertEqual(proc.returncode, 2)
        proc = run("analyze-blocks", "--constant", "e", "--n", "1000", "--config",
                   self.dir / "none.conf", "--out", a)
        self.assertEqual(proc.returncode, 3)

    def test_all_digits(self):
        out = self.dir / "digits.json"
        run("analyze-digit", "--constant", "phi", "--n", "100000", "--digit", "all",
            "--out", out, check=0)
        doc = load(out)
        validate(doc, "digit_summary")
        self.assertEqual(len(doc["reports"]), 10)
        self.assertEqual([row["digit"] for row in doc["summary"]], list(range(10)))
        self.assertTrue((self.dir / "digits.summary.csv").exists())
        for d in range(10):
            self.assertTrue((self.dir / f"digits.d{d}.hist.csv").exists())

    def test_single_digit(self):
        out = self.dir / "d1.json"
        run("analyze-digit", "--constant", "phi", "--n", "100000", "--digit", "1",
            "--out", out, check=0)
        doc = load(out)
        validate(doc, "analysis_report")
        self.assertEqual(doc["routine"], "digit_positions")
        self.assertEqual(doc["details"]["target_digit"], 1)
        self.assertIsNone(doc["seed"])

    def test_baselines(self):
        out = self.dir / "uni.json"
        exported = self.dir / "uni.txt"
        run("baseline", "--mode", "uniform", "--seed", "3", "--n", "300000",
            "--m", "100000", "--export-digits", exported, "--out", out, check=0)
        doc = load(out)
        validate(doc, "analysis_report")
        self.assertEqual(doc["config"]["stream_seed"], 3)
        self.assertEqual(len(exported.read_text().replace("\n", "")), 300000)

        perm = self.dir / "perm.json"
        run("baseline", "--mode", "perm-blocks", "--seed", "3", "--n-perms", "100",
            "--n-blocks", "300", "--m", "100000", "--out", perm, check=0)
        doc = load(perm)
        validate(doc, "analysis_report")
        self.assertEqual(doc["config"]["n_perms"], 100)

        # Every 10-digit window of this stream is a permutation, so digit
        # gaps are nearly regular and no per-digit fit has an interior optimum.
        proc = run("baseline", "--mode", "perm-blocks", "--seed", "3",
                   "--n-perms", "100", "--n-blocks", "300", "--routine",
                   "digit-positions", "--digit", "all", "--out", perm)
        self.assertEqual(proc.returncode, 3)
        self.assertIn("digit 0", proc.stderr)

    def test_hardcore_sweep(self):
        out = self.dir / "sweep.csv"
        run("hardcore-sweep", "--m", "200000", "--rho", "0.001", "--lstar",
            "0,50,100,200", "--replicates", "3", "--seed", "4", "--out", out, check=0)
        with open(out, newline="") as fh:
            rows = list(csv.DictReader(fh))
        self.assertEqual([int(r["l_star"]) for r in rows], [0, 50, 100, 200])
        self.assertTrue(all(int(r["n_replicates"]) == 3 for r in rows))
        fit = load(self.dir / "sweep.fit.json")
        validate(fit, "hardcore_fit")
        self.assertIsNotNone(fit["quadratic_fit"])

        self.assertEqual(run("hardcore-sweep", "--lstar", "0,x", "--out", out).returncode, 2)

    def test_reproduce(self):
        out = self.dir / "repro"
        run("reproduce-paper", "--out-dir", out, "--seed", "5", check=0)
        for name in ("blocks_rnd", "blocks_pi", "blocks_e", "blocks_phi",
                     "positions_rnd_d3", "positions_pi_d3", "positions_e_d2",
                     "positions_phi_d1", "blocks_perm"):
            validate(load(out / f"{name}.json"), "analysis_report")
            self.assertTrue((out / f"{name}.hist.csv").exists())
        validate(load(out / "hardcore_sweep.fit.json"), "hardcore_fit")


def main():
    global KIANG, REGISTRY
    if len(sys.argv) < 3:
        print(__doc__, file=sys.stderr)
        return 2
    KIANG = sys.argv[1]
    schema_dir = Path(sys.argv[2])
    resources = []
    for name in ("analysis_report", "digit_summary", "hardcore_fit"):
        schema = load(schema_dir / f"{name}.schema.json")
        SCHEMAS[name] = schema
        resources.append((schema["$id"], Resource.from_contents(schema)))
    REGISTRY = Registry().with_resources(resources)
    suite = unittest.defaultTestLoader.loadTestsFromTestCase(CliContract)
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    return 0 if result.wasSuccessful() else 1


if __name__ == "__main__":
    sys.exit(main())
