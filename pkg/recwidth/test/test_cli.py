#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Tests the command line front end.

These tests may all be executed by running tox from the
root level of the project.
"""
import unittest
from csv import reader
from io import StringIO
from os.path import join
from tempfile import TemporaryDirectory

from pytest import MonkeyPatch, raises

from .. import cli
from ..config import configure, settings
from ..poly import Poly
from ..rng import SplitMix64, randomSpec
from ..specfile import dumpSpec


class TestCli(unittest.TestCase):
    """
    Define our command line tests.
    """
    maxDiff = None

    def setUp(self):
        """Capture output and remember the settings main will change."""
        self.saved = dict(vars(settings))
        self.scratch = TemporaryDirectory()
        self.patch = MonkeyPatch()
        self.out = StringIO()
        self.patch.setattr(cli, 'stdout', self.out)

    def tearDown(self):
        """Undo the patches and restore the settings."""
        self.patch.undo()
        self.scratch.cleanup()
        configure(**self.saved)

    def test_parseHelpers(self):
        """Size lists and seed ranges."""
        self.assertEqual(cli.parseIntList("8,16,,32"), [8, 16, 32])
        self.assertEqual(cli.parseSeeds("0..3"), [0, 1, 2, 3])
        self.assertEqual(cli.parseSeeds("4,9"), [4, 9])

    def test_verifyPasses(self):
        """Every case at N = 8 agrees with the oracle."""
        self.assertEqual(cli.main(["verify", "--sizes", "8", "--t", "1", "--seeds", "0..1"]), 0)
        lines = self.out.getvalue().splitlines()
        self.assertEqual(lines, ["PASS n=8 t=1 seed=0", "PASS n=8 t=1 seed=1"])

    def test_verifyJobs(self):
        """Concurrent cases report in order."""
        self.assertEqual(cli.main(["verify", "--sizes", "8,12", "--t", "2", "--seeds", "3", "--jobs", "2"]), 0)
        self.assertEqual(self.out.getvalue().splitlines(), ["PASS n=8 t=2 seed=3", "PASS n=12 t=2 seed=3"])

    def test_verifyCatchesBrokenProduct(self):
        """A corrupted fast path is reported with its case."""
        original = cli.transposeMult
        self.patch.setattr(cli, 'transposeMult', lambda spec, tree, b: (original(spec, tree, b) + 1) % cli.P)
        self.assertEqual(cli.main(["verify", "--sizes", "8", "--t", "1", "--seeds", "0"]), 1)
        self.assertIn("FAIL (transpose_mult, 8, 1, 0)", self.out.getvalue())

    def test_verifyCatchesBrokenResolvent(self):
        """A resolvent with a wrong denominator fails its point checks."""
        original = cli.resolvent

        def shifted(B, R, C):
            num, den = original(B, R, C)
            den = den.copy()
            den[0] = (den[0] + 1) % cli.P
            return num, den

        self.patch.setattr(cli, 'resolvent', shifted)
        self.assertEqual(cli.main(["verify", "--sizes", "8", "--t", "1", "--seeds", "0"]), 1)
        self.assertIn("FAIL (resolvent, 8, 1, 0)", self.out.getvalue())

    def test_verifyCatchesBrokenApplications(self):
        """The application checks run as part of every case."""
        self.patch.setattr(cli, 'stirlingApply', lambda n, x, transposed=False: x)
        self.assertEqual(cli.main(["verify", "--sizes", "8", "--t", "1", "--seeds", "0"]), 1)
        self.assertIn("FAIL (stirling_apply, 8, 1, 0) forward", self.out.getvalue())

    def test_verifyCatchesBrokenStructure(self):
        """Wrong entries h_{i,j} break H G = I."""
        self.patch.setattr(cli, 'structureEntry', lambda spec, tree, i, j: Poly([1]))
        self.assertEqual(cli.main(["verify", "--sizes", "8", "--t", "1", "--seeds", "0"]), 1)
        self.assertIn("FAIL (structure_entry, 8, 1, 0) shift", self.out.getvalue())

    def test_verifySpecFile(self):
        """A spec file is checked on its own."""
        filename = join(self.scratch.name, 'spec.json')
        dumpSpec(randomSpec(SplitMix64(5), 10, 2, 1, kind='diagonal'), filename)
        self.assertEqual(cli.main(["verify", "--spec", filename]), 0)
        self.assertEqual(self.out.getvalue().splitlines(), ["PASS " + filename])

    def test_verifyMissingSpecFile(self):
        """An unreadable spec file is an error exit."""
        self.assertEqual(cli.main(["verify", "--spec", join(self.scratch.name, 'absent.json')]), -1)

    def test_noSizes(self):
        """An empty size list is rejected by the parser."""
        with raises(SystemExit):
            cli.main(["verify", "--sizes", ""])

    def test_bench(self):
        """One CSV row per size and seed below the header."""
        for op in cli.BENCH_OPS:
            filename = join(self.scratch.name, op + '.csv')
            self.assertEqual(cli.main(["bench", "--op", op, "--sizes", "16,32", "--t", "2", "--seeds", "0..1",
                                       "--csv", filename]), 0)
            with open(filename, newline='') as inFile:
                rows = list(reader(inFile))
            self.assertEqual(tuple(rows[0]), cli.CSV_HEADER)
            self.assertEqual(len(rows), 5)
            self.assertEqual(rows[1][:5], [op, '16', '2', '1', '0'])
            self.assertTrue(all(int(value) > 0 for row in rows[1:] for value in row[5:]))

    def test_benchUnwritable(self):
        """A CSV path in a missing directory is an error exit."""
        filename = join(self.scratch.name, 'missing', 'out.csv')
        self.assertEqual(cli.main(["bench", "--sizes", "16", "--csv", filename]), -1)

    def test_demos(self):
        """Every demo agrees with its oracle."""
        for name in cli.DEMOS:
            self.assertEqual(cli.main(["demo", name, "--n", "8", "--d", "2"]), 0, name)
        self.assertIn("oracle match: True", self.out.getvalue())

    def test_tuningOptions(self):
        """Global options reach the shared settings."""
        self.assertEqual(cli.main(["--leaf-block", "4", "demo", "bernoulli", "--n", "4"]), 0)
        self.assertEqual(settings.leafBlock, 4)
