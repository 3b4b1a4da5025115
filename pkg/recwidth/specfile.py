# -*- coding: utf-8 -*-
"""
JSON spec files.

A spec file is one JSON object:

    {"n": N, "rows": M, "t": t, "r": r, "degree": [d, dbar],
     "modulus": [coeffs] or null, "r_kind": "shift" | "companion" |
     "diagonal" | "band" | "quasi", "r_data": {...},
     "g": [[[coeffs], ...], ...], "c": [[...]], "d": [[...]]}

r_data holds "points" for diagonal, "bands" and "lower" for band and
"dense" (plus an optional "order") for quasi; companion takes "modulus".
Files are read as bytes and decoded with the encoding chardet reports.
"""
from codecs import BOM_UTF8
from json import dumps, loads
from logging import getLogger

from chardet import detect

from .descriptors import Companion, Diagonal, Quasi, Shift, TriangularBand
from .errors import RecurrenceWidthError, SpecFileError
from .quasisep import QuasiSep
from .recurrence import RecurrenceSpec

logger = getLogger(__name__)


def decodeBytes(raw):
    """Decode file contents, honouring a UTF-8 BOM and the detected encoding."""
    if raw.startswith(BOM_UTF8):
        encoding = 'UTF-8-SIG'
    else:
        encoding = detect(raw[:4096])['encoding'] or 'ascii'
        if encoding.startswith("UTF-16"):
            encoding = "UTF-16"
        elif encoding.startswith("UTF-32"):
            encoding = "UTF-32"
    try:
        return raw.decode(encoding)
    except (LookupError, UnicodeDecodeError) as error:
        raise SpecFileError("cannot decode spec file as {0}: {1}".format(encoding, error))


def _descriptor(doc):
    kind = doc.get('r_kind', 'shift')
    data = doc.get('r_data') or {}
    n = doc['n']
    if kind == 'shift':
        return Shift(n)
    if kind == 'companion':
        return Companion(doc['modulus'])
    if kind == 'diagonal':
        return Diagonal(data['points'])
    if kind == 'band':
        return TriangularBand(data['bands'], lower=data.get('lower', True))
    if kind == 'quasi':
        return Quasi(QuasiSep.fromDense(data['dense'], order=data.get('order')))
    raise SpecFileError("unknown r_kind: {0}".format(kind))


def parseSpec(text):
    """Build a RecurrenceSpec from JSON text."""
    try:
        doc = loads(text)
        R = _descriptor(doc)
        return RecurrenceSpec(rows=doc.get('rows', doc['n']), cols=doc['n'], width=doc['t'], rank=doc['r'],
                              degree=tuple(doc.get('degree', (1, 0))), g=tuple(tuple(row) for row in doc['g']),
                              C=doc['c'], D=doc['d'], R=R)
    except SpecFileError:
        raise
    except RecurrenceWidthError as error:
        raise SpecFileError("invalid spec: {0}".format(error))
    except (ValueError, KeyError, TypeError) as error:
        raise SpecFileError("malformed spec file: {0}".format(error))


def loadSpec(filename):
    """Read and parse a spec file."""
    try:
        with open(filename, 'rb') as inFile:
            raw = inFile.read()
    except OSError as error:
        raise SpecFileError("cannot read {0}: {1}".format(filename, error))
    logger.debug("read %d bytes from %s", len(raw), filename)
    return parseSpec(decodeBytes(raw))


def specToDict(spec):
    """The JSON document of a spec."""
    R = spec.R
    doc = {
        'n': spec.cols, 'rows': spec.rows, 't': spec.width, 'r': spec.rank, 'degree': list(spec.degree),
        'modulus': None, 'r_kind': R.kind, 'r_data': {},
        'g': [[[int(c) for c in p] for p in row] for row in spec.g],
        'c': spec.C.tolist(), 'd': spec.D.tolist(),
    }
    if R.kind == 'companion':
        doc['modulus'] = [int(c) for c in R.modulus]
    elif R.kind == 'diagonal':
        doc['r_data'] = {'points': R.points.tolist()}
    elif R.kind == 'band':
        doc['r_data'] = {'bands': R.bands.tolist(), 'lower': R.lower}
    elif R.kind == 'quasi':
        doc['r_data'] = {'dense': R.dense().tolist(), 'order': R.matrix.order}
    return doc


def dumpSpec(spec, filename):
    """Write a spec file."""
    with open(filename, 'w') as outFile:
        outFile.write(dumps(specToDict(spec)))
