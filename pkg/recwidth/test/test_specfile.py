#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Tests reading and writing JSON spec files.

These tests may all be executed by running tox from the
root level of the project.
"""
import unittest
from codecs import BOM_UTF8
from json import dumps
from os.path import join
from tempfile import TemporaryDirectory

import numpy as np
from pytest import raises

from ..errors import SpecFileError
from ..oracle import denseFromSpec
from ..rng import R_KINDS, SplitMix64, randomSpec
from ..specfile import decodeBytes, dumpSpec, loadSpec, parseSpec, specToDict

SHIFT_DOC = {
    "n": 3, "t": 1, "r": 1, "degree": [1, 0], "modulus": None, "r_kind": "shift", "r_data": {},
    "g": [[[1]], [[1], [0, 1]], [[1], [0, 1]]],
    "c": [[1], [0], [0]], "d": [[1, 2, 3]],
}


class TestSpecFile(unittest.TestCase):
    """
    Define our spec file tests.
    """
    maxDiff = None

    def setUp(self):
        """Scratch directory for written files."""
        self.scratch = TemporaryDirectory()

    def tearDown(self):
        """Remove the scratch directory."""
        self.scratch.cleanup()

    def test_parse(self):
        """A hand written shift spec."""
        spec = parseSpec(dumps(SHIFT_DOC))
        self.assertEqual((spec.rows, spec.cols, spec.width, spec.rank), (3, 3, 1, 1))
        self.assertEqual(denseFromSpec(spec).tolist(), [[1, 2, 3], [0, 1, 2], [0, 0, 1]])

    def test_decodeBom(self):
        """A UTF-8 byte order mark is stripped."""
        self.assertEqual(decodeBytes(BOM_UTF8 + b'{"n": 3}'), '{"n": 3}')

    def test_decodeUtf16(self):
        """UTF-16 files are recognised."""
        text = dumps(SHIFT_DOC)
        self.assertEqual(decodeBytes(text.encode('utf-16')), text)

    def test_roundTrip(self):
        """Every descriptor kind survives a trip through a file."""
        for kind in R_KINDS:
            rng = SplitMix64(R_KINDS.index(kind))
            spec = randomSpec(rng, 6, 2, 1, kind=kind)
            filename = join(self.scratch.name, kind + '.json')
            dumpSpec(spec, filename)
            loaded = loadSpec(filename)
            written, read = specToDict(spec), specToDict(loaded)
            if kind == 'quasi':
                del written['r_data'], read['r_data']
            self.assertEqual(read, written)
            np.testing.assert_array_equal(loaded.R.dense(), spec.R.dense())
            np.testing.assert_array_equal(denseFromSpec(loaded), denseFromSpec(spec))

    def test_malformed(self):
        """Broken JSON, missing keys and invalid contents are all spec file errors."""
        with raises(SpecFileError):
            parseSpec("{not json")
        broken = dict(SHIFT_DOC)
        del broken['g']
        with raises(SpecFileError):
            parseSpec(dumps(broken))
        broken = dict(SHIFT_DOC, g=[[[1]], [[1], [0, 1], [1]], [[1]]])
        with raises(SpecFileError):
            parseSpec(dumps(broken))

    def test_unknownKind(self):
        """Only the five descriptor kinds are accepted."""
        with raises(SpecFileError) as info:
            parseSpec(dumps(dict(SHIFT_DOC, r_kind="toeplitz")))
        self.assertIn("toeplitz", str(info.value))

    def test_missingFile(self):
        """Unreadable files are reported."""
        with raises(SpecFileError):
            loadSpec(join(self.scratch.name, 'absent.json'))
