#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Command line front end.

    recwidth verify --sizes 8,16 --t 1,2 --seeds 0..4
    recwidth bench --op transpose-mult --sizes 1024,2048 --t 2 --csv out.csv
    recwidth demo bernoulli --n 16

verify checks the fast paths against the dense oracle, bench times them
against a dense product of the same size, and demo runs the applications.
"""
from argparse import ArgumentParser
from concurrent.futures import ThreadPoolExecutor
from csv import writer
from logging import basicConfig, getLogger, DEBUG, WARNING
from math import isqrt
from os import linesep
from os.path import basename
from sys import argv, stderr, stdout, exit as sysExit
from time import perf_counter_ns

import numpy as np

from .apps import (bernoulliNumbers, bivariateEvalSpec, chebyshevFamily, orthogonalTransform, stirlingApply,
                   FORWARD, PROJECTION, OrthoFamily)
from .config import configure
from .descriptors import Diagonal
from .displacement import DisplacementRep, SYLVESTER, STEIN, dispMult
from .errors import RecurrenceWidthError
from .field import P, matMul
from .krylov import krylovApply, krylovApplyTranspose
from .linalg import solve
from .multiply import forwardMult, transposeMult, transposeMultBatched
from .oracle import (bernoulliRecursive, bivariateMatrix, denseDisplacementResidual, denseFromDisplacement,
                     denseFromSpec, denseKrylov, orthoMatrix, stirlingTable)
from .poly import EMPTY, polyAdd, polyEval, polyMul, polyNeg, polyRem
from .quasisep import resolvent
from .recovery import recoverRecurrence, unknownCount
from .recurrence import buildDyadicTree, structureEntry
from .rng import R_KINDS, SplitMix64, randomDescriptor, randomQuasiSep, randomRep, randomSpec, randomTriangularSpec
from .solvers import displacementInverse, rootBlock, triangularSolve
from .specfile import loadSpec

logger = getLogger(__name__)

BENCH_OPS = ('transpose-mult', 'forward-mult', 'triangular-solve', 'disp-mult')
DEMOS = ('chebyshev', 'bernoulli', 'stirling', 'bivariate', 'cauchy')
CSV_HEADER = ('op', 'n', 't', 'r', 'seed', 'pre_ns', 'query_ns', 'dense_ns')
DENSE_CHUNK = 1024
# The quasiseparable path is checked on small sizes only; its oracle is cubic.
QUASI_VERIFY_LIMIT = 64
# H G = I is checked entry by entry, so only on tiny sizes.
STRUCTURE_VERIFY_LIMIT = 16


def parseIntList(text):
    """'8,16,32' -> [8, 16, 32]; empty entries are dropped."""
    return [int(part) for part in text.split(',') if part.strip()]


def parseSeeds(text):
    """'0..4' (inclusive) or '1,5,9'."""
    if '..' in text:
        low, high = text.split('..', 1)
        return list(range(int(low), int(high) + 1))
    return parseIntList(text)


def caseStream(op, n, t, seed):
    """Random stream for one verification case."""
    mixed = SplitMix64(seed)
    for value in (n, t, sum(map(ord, op))):
        mixed = SplitMix64(mixed.next() ^ value)
    return mixed


def _same(a, b):
    return np.array_equal(np.asarray(a, dtype=np.int64) % P, np.asarray(b, dtype=np.int64) % P)


def _checkProducts(n, t, seed):
    """transpose_mult, forward_mult and the batched product against dense_from_spec."""
    failures = []
    cases = [(kind, (1, 0)) for kind in R_KINDS] + [('diagonal', (1, 1)), ('companion', (1, 1))]
    for kind, degree in cases:
        if kind == 'quasi' and n > QUASI_VERIFY_LIMIT:
            continue
        label = kind if degree == (1, 0) else '{0} degree {1}'.format(kind, degree)
        rng = caseStream(label, n, t, seed)
        spec = randomSpec(rng, n, t, 1 + rng.below(2), kind=kind, degree=degree)
        dense = denseFromSpec(spec)
        tree = buildDyadicTree(spec)
        b, c = rng.residues(n), rng.residues(n)
        batch = rng.residues(n, 3)
        if not _same(transposeMult(spec, tree, b), matMul(dense.T.copy(), b)):
            failures.append(('transpose_mult', label))
        if not _same(forwardMult(spec, tree, c), matMul(dense, c)):
            failures.append(('forward_mult', label))
        if not _same(transposeMultBatched(spec, tree, batch), matMul(dense.T.copy(), batch)):
            failures.append(('transpose_mult_batched', label))
    return failures


def _checkKrylov(n, t, seed):
    failures = []
    for kind in R_KINDS:
        if kind == 'quasi' and n > QUASI_VERIFY_LIMIT:
            continue
        rng = caseStream('krylov' + kind, n, t, seed)
        R = randomDescriptor(rng, kind, n, delta=max(t, 1))
        y, x = rng.residues(n), rng.residues(n)
        K = denseKrylov(R, y)
        if not _same(krylovApply(R, y, x), matMul(K, x)):
            failures.append(('krylov_apply', kind))
        if not _same(krylovApplyTranspose(R, y, x), matMul(K.T.copy(), x)):
            failures.append(('krylov_apply_transpose', kind))
    return failures


def _checkDisplacement(n, t, seed):
    failures = []
    kinds = [('diagonal', 'diagonal'), ('band', 'diagonal')]
    if n <= QUASI_VERIFY_LIMIT:
        kinds.append(('quasi', 'quasi'))
    for op in (SYLVESTER, STEIN):
        for leftKind, rightKind in kinds:
            label = op + '/' + leftKind
            rng = caseStream(op + leftKind, n, t, seed)
            rep = randomRep(rng, n, 1 + rng.below(2), op=op, leftKind=leftKind, rightKind=rightKind)
            dense = denseFromDisplacement(rep)
            b = rng.residues(n)
            if not _same(dispMult(rep, b), matMul(dense, b)):
                failures.append(('disp_mult', label))
            if not _same(dispMult(rep, b, transposed=True), matMul(dense.T.copy(), b)):
                failures.append(('disp_mult_transposed', label))
    return failures


def _checkResolvent(n, t, seed):
    """Numerator and denominator of B^T (XI - R)^{-1} C at random points against a dense solve."""
    if n > QUASI_VERIFY_LIMIT:
        return []
    rng = caseStream('resolvent', n, t, seed)
    R = randomQuasiSep(rng, n, order=1 + t % 2)
    B, C = rng.residues(n, 2), rng.residues(n, 1)
    num, den = resolvent(B, R, C)
    for _ in range(4):
        xi = rng.residue()
        scale = int(polyEval(den, [xi])[0])
        if not scale:
            continue
        w = solve((xi * np.eye(n, dtype=np.int64) - R.dense()) % P, C)
        expected = matMul(B.T.copy(), w) * scale % P
        actual = [[int(polyEval(num[a, 0], [xi])[0])] for a in range(2)]
        if not _same(actual, expected):
            return [('resolvent', 'point {0}'.format(xi))]
    return []


def _inverseHolds(spec, tree):
    """H G = I modulo c_R, where G holds the coefficients g_{i,j} and H the entries h_{i,j}."""
    n = spec.rows
    H = [[structureEntry(spec, tree, i, j).coeffs for j in range(i + 1)] for i in range(n)]
    G = [dict() for _ in range(n)]
    for i, row in enumerate(spec.g):
        G[i][i] = row[0]
        for j in range(1, len(row)):
            G[i][i - j] = polyNeg(row[j])
    for i in range(n):
        for k in range(i + 1):
            total = EMPTY
            for j in range(k, i + 1):
                if k in G[j]:
                    total = polyAdd(total, polyMul(H[i][j], G[j][k]))
            if polyRem(total, spec.modulus).tolist() != ([1] if i == k else []):
                return False
    return True


def _checkStructure(n, t, seed):
    if n > STRUCTURE_VERIFY_LIMIT:
        return []
    failures = []
    for kind in R_KINDS:
        rng = caseStream('structure' + kind, n, t, seed)
        spec = randomSpec(rng, n, t, 1, kind=kind)
        if not _inverseHolds(spec, buildDyadicTree(spec)):
            failures.append(('structure_entry', kind))
    return failures


def _checkApps(n, t, seed):
    """Orthogonal transforms, Stirling products and bivariate evaluation against their references."""
    rng = caseStream('apps', n, t, seed)
    failures = []
    family = OrthoFamily(alpha=[rng.residue(nonzero=True) for _ in range(n)], beta=rng.residues(n),
                         gamma=rng.residues(n), points=rng.distinct(n))
    table = orthoMatrix(family)
    b = rng.residues(n)
    if not _same(orthogonalTransform(family, b, FORWARD), matMul(table.T.copy(), b)):
        failures.append(('orthogonal_transform', FORWARD))
    if not _same(orthogonalTransform(family, b, PROJECTION), matMul(table, b)):
        failures.append(('orthogonal_transform', PROJECTION))
    stirling = stirlingTable(n)
    x = rng.residues(n)
    if not _same(stirlingApply(n, x), matMul(stirling, x)):
        failures.append(('stirling_apply', 'forward'))
    if not _same(stirlingApply(n, x, transposed=True), matMul(stirling.T.copy(), x)):
        failures.append(('stirling_apply', 'transposed'))
    d = isqrt(n)
    points = [(rng.residue(nonzero=True), rng.residue(nonzero=True)) for _ in range(d * d)]
    spec = bivariateEvalSpec(points, d)
    f = rng.residues(d * d)
    if not _same(forwardMult(spec, buildDyadicTree(spec), f), matMul(bivariateMatrix(points, d), f)):
        failures.append(('bivariate_eval', 'd={0}'.format(d)))
    return failures


def _checkSolver(n, t, seed):
    rng = caseStream('solve', n, t, seed)
    spec = randomTriangularSpec(rng, n, t)
    tree = buildDyadicTree(spec)
    y = rng.residues(n)
    failures = []
    if not _same(transposeMult(spec, tree, triangularSolve(spec, y)), y):
        failures.append(('triangular_solve', 'transpose'))
    if not _same(forwardMult(spec, tree, triangularSolve(spec, y, transposed=True)), y):
        failures.append(('triangular_solve', 'forward'))
    return failures


def _checkRecovery(n, t, seed):
    if n <= unknownCount(t):
        return []
    rng = caseStream('recover', n, t, seed)
    dense = denseFromSpec(randomTriangularSpec(rng, n, t))
    report = recoverRecurrence(dense, t)
    if not report.ok or not _same(denseFromSpec(report.spec), dense):
        return [('recover_recurrence', report.reason or 'mismatch')]
    return []


CHECKS = (_checkProducts, _checkKrylov, _checkDisplacement, _checkResolvent, _checkStructure, _checkSolver,
          _checkRecovery, _checkApps)


def runCase(n, t, seed):
    """All checks for one (N, t, seed); returns a list of (op, detail) failures."""
    failures = []
    for check in CHECKS:
        try:
            failures.extend(check(n, t, seed))
        except RecurrenceWidthError as error:
            failures.append((check.__name__.replace('_check', '').lower(), str(error)))
    return failures


def _specCheck(spec):
    dense = denseFromSpec(spec)
    tree = buildDyadicTree(spec)
    rng = SplitMix64(spec.rows * 7919 + spec.cols)
    b, c = rng.residues(spec.rows), rng.residues(spec.cols)
    failures = []
    if not _same(transposeMult(spec, tree, b), matMul(dense.T.copy(), b)):
        failures.append(('transpose_mult', 'spec file'))
    if not _same(forwardMult(spec, tree, c), matMul(dense, c)):
        failures.append(('forward_mult', 'spec file'))
    return failures


def cmdVerify(args, out=None):
    """Run the oracle comparisons; 0 when every case passes."""
    out = stdout if out is None else out
    if args.spec:
        failures = _specCheck(loadSpec(args.spec))
        for op, detail in failures:
            out.write("FAIL {0} ({1}){2}".format(op, detail, linesep))
        if not failures:
            out.write("PASS {0}{1}".format(args.spec, linesep))
        return 1 if failures else 0
    cases = [(n, t, seed) for n in args.sizes for t in args.t for seed in args.seeds]
    with ThreadPoolExecutor(max_workers=max(args.jobs, 1)) as pool:
        results = list(pool.map(lambda case: runCase(*case), cases))
    status = 0
    for (n, t, seed), failures in zip(cases, results):
        if not failures:
            out.write("PASS n={0} t={1} seed={2}{3}".format(n, t, seed, linesep))
            continue
        status = 1
        for op, detail in failures:
            out.write("FAIL ({0}, {1}, {2}, {3}) {4}{5}".format(op, n, t, seed, detail, linesep))
    return status


def _denseBaseline(rng, n):
    """Time an exact dense matvec of size n, generating rows in chunks."""
    x = rng.residues(n)
    elapsed = 0
    for start in range(0, n, DENSE_CHUNK):
        rows = min(DENSE_CHUNK, n - start)
        block = np.random.default_rng(rng.next()).integers(0, P, size=(rows, n), dtype=np.int64)
        begin = perf_counter_ns()
        matMul(block, x)
        elapsed += perf_counter_ns() - begin
    return max(elapsed, 1)


def _timed(fn):
    begin = perf_counter_ns()
    value = fn()
    return value, max(perf_counter_ns() - begin, 1)


def benchRecord(op, n, t, r, seed):
    """(pre_ns, query_ns, dense_ns) for one benchmark case."""
    rng = caseStream(op, n, t, seed)
    if op == 'transpose-mult':
        spec = randomSpec(rng, n, t, r)
        tree, pre = _timed(lambda: buildDyadicTree(spec))
        b = rng.residues(n)
        _, query = _timed(lambda: transposeMult(spec, tree, b))
    elif op == 'forward-mult':
        spec = randomSpec(rng, n, t, r)
        tree, pre = _timed(lambda: buildDyadicTree(spec))
        b = rng.residues(n)
        _, query = _timed(lambda: forwardMult(spec, tree, b))
    elif op == 'triangular-solve':
        spec = randomTriangularSpec(rng, n, t)
        block, pre = _timed(lambda: rootBlock(spec))
        y = rng.residues(n)
        _, query = _timed(lambda: triangularSolve(spec, y, block=block))
    elif op == 'disp-mult':
        rep = randomRep(rng, n, r, leftKind='band', rightKind='diagonal')
        _, pre = _timed(lambda: (rep.transposed.bandPreparation, rep.bandPreparation))
        b = rng.residues(n)
        _, query = _timed(lambda: dispMult(rep, b))
    else:
        raise ValueError("unknown benchmark op: {0}".format(op))
    return pre, query, _denseBaseline(rng, n)


def cmdBench(args):
    """Write one CSV row per (size, seed)."""
    with open(args.csv, 'w', newline='') as outFile:
        table = writer(outFile)
        table.writerow(CSV_HEADER)
        for n in args.sizes:
            for seed in args.seeds:
                pre, query, dense = benchRecord(args.op, n, args.t, args.r, seed)
                logger.debug("%s n=%d seed=%d: query %d ns, dense %d ns", args.op, n, seed, query, dense)
                table.writerow((args.op, n, args.t, args.r, seed, pre, query, dense))
    return 0


def _demoChebyshev(args, out):
    rng = SplitMix64(args.seed)
    family = chebyshevFamily(np.arange(args.n))
    b = rng.residues(args.n)
    fast = orthogonalTransform(family, b, FORWARD)
    mismatches = int(np.count_nonzero((fast - matMul(orthoMatrix(family).T.copy(), b)) % P))
    out.write("chebyshev transform at {0} points: max-mismatch count {1}{2}".format(args.n, mismatches, linesep))
    return mismatches == 0


def _demoBernoulli(args, out):
    numbers = bernoulliNumbers(args.n)
    match = numbers == bernoulliRecursive(args.n)
    for i, value in enumerate(numbers):
        out.write("B_{0} = {1}{2}".format(i, value, linesep))
    out.write("oracle match: {0}{1}".format(match, linesep))
    return match


def _demoStirling(args, out):
    rng = SplitMix64(args.seed)
    x = rng.residues(args.n)
    table = stirlingTable(args.n)
    forward = _same(stirlingApply(args.n, x), matMul(table, x))
    backward = _same(stirlingApply(args.n, x, transposed=True), matMul(table.T.copy(), x))
    rows = min(args.n, 6)
    for i in range(rows):
        out.write("{0}{1}".format(' '.join(str(v) for v in table[i, :rows]), linesep))
    out.write("W x oracle match: {0}, W^T x oracle match: {1}{2}".format(forward, backward, linesep))
    return forward and backward


def _demoBivariate(args, out):
    rng = SplitMix64(args.seed)
    d = args.d
    points = [(rng.residue(nonzero=True), rng.residue(nonzero=True)) for _ in range(d * d)]
    spec = bivariateEvalSpec(points, d)
    f = rng.residues(d * d)
    fast = forwardMult(spec, buildDyadicTree(spec), f)
    match = _same(fast, matMul(bivariateMatrix(points, d), f))
    out.write("bivariate evaluation at {0} points, d = {1}: oracle match {2}{3}".format(d * d, d, match, linesep))
    return match


def _demoCauchy(args, out):
    rng = SplitMix64(args.seed)
    n, r = args.n, args.r
    left = rng.distinct(n)
    right = rng.distinct(n, avoid=left)
    rep = DisplacementRep(op=SYLVESTER, L=Diagonal(left), R=Diagonal(right), C=rng.residues(n, r),
                          D=rng.residues(r, n))
    A = denseFromDisplacement(rep)
    residual = int(np.count_nonzero(denseDisplacementResidual(rep, A)))
    inverse = displacementInverse(rep)
    product = matMul(A, denseFromDisplacement(inverse))
    ok = _same(product, np.eye(n, dtype=np.int64))
    out.write("cauchy-like n={0} r={1}: displacement residual {2}{3}".format(n, r, residual, linesep))
    out.write("inverse generators: width {0}, A A^-1 = I: {1}{2}".format(inverse.rank, ok, linesep))
    return residual == 0 and ok


def cmdDemo(args, out=None):
    """Run one named demo; 0 when its oracle comparison holds."""
    out = stdout if out is None else out
    runner = {
        'chebyshev': _demoChebyshev, 'bernoulli': _demoBernoulli, 'stirling': _demoStirling,
        'bivariate': _demoBivariate, 'cauchy': _demoCauchy,
    }[args.name]
    return 0 if runner(args, out) else 1


def main(arguments=None):
    """
    Start it up.

    Parses the command line, applies the tuning options and dispatches to
    the verify, bench or demo command; returns the exit status.
    """
    def argParse():
        """Parse command line options."""
        prog = basename(argv[0])
        parser = ArgumentParser(prog=prog, description="Exact structured matrix arithmetic.")
        parser.add_argument(
            "--ntt-threshold",
            action="store", type=int, dest="nttThreshold", default=None,
            help="degree sum above which polynomial products use the NTT"
        )
        parser.add_argument(
            "--leaf-block",
            action="store", type=int, dest="leafBlock", default=None,
            help="smallest block handled directly by the dyadic recursions"
        )
        group = parser.add_argument_group("Debug Options")
        group.add_argument(
            "-d", "--debug",
            action="store_true", dest="debug",
            help="enable debug output on stderr and internal self-checks"
        )
        commands = parser.add_subparsers(dest="command", metavar="command")
        commands.required = True

        verify = commands.add_parser("verify", help="compare fast paths with the dense oracle")
        verify.add_argument("--sizes", type=parseIntList, default=[8, 16], help="comma separated sizes")
        verify.add_argument("--t", type=parseIntList, default=[1, 2], help="comma separated widths")
        verify.add_argument("--seeds", type=parseSeeds, default=[0], help="seed range a..b or list")
        verify.add_argument("--jobs", type=int, default=1, help="cases run concurrently")
        verify.add_argument("--spec", help="check one JSON spec file instead")

        bench = commands.add_parser("bench", help="time fast products against dense ones")
        bench.add_argument("--op", choices=BENCH_OPS, default='transpose-mult')
        bench.add_argument("--sizes", type=parseIntList, default=[1024], help="comma separated sizes")
        bench.add_argument("--t", type=int, default=1, help="recurrence width")
        bench.add_argument("--r", type=int, default=1, help="error rank")
        bench.add_argument("--seeds", type=parseSeeds, default=[0], help="seed range a..b or list")
        bench.add_argument("--csv", required=True, help="output CSV path")

        demo = commands.add_parser("demo", help="run an application demo")
        demo.add_argument("name", choices=DEMOS)
        demo.add_argument("--n", type=int, default=16, help="problem size")
        demo.add_argument("--r", type=int, default=1, help="displacement rank (cauchy)")
        demo.add_argument("--d", type=int, default=3, help="degree bound per variable (bivariate)")
        demo.add_argument("--seed", type=int, default=0, help="random seed")

        args = parser.parse_args(arguments)
        needsSizes = args.command == "bench" or (args.command == "verify" and not args.spec)
        if needsSizes and not args.sizes:
            parser.error("no sizes given")
        return args

    args = argParse()
    basicConfig(stream=stderr, level=DEBUG if args.debug else WARNING)
    overrides = {name: getattr(args, name) for name in ('nttThreshold', 'leafBlock')
                 if getattr(args, name) is not None}
    configure(debug=args.debug, **overrides)

    try:
        if args.command == "verify":
            return cmdVerify(args)
        if args.command == "bench":
            return cmdBench(args)
        return cmdDemo(args)
    except RecurrenceWidthError as error:
        stderr.write(str(error) + linesep)
        return -1
    except OSError as error:
        stderr.write("{0}{1}".format(error, linesep))
        return -1


# See if we're running as a script.
if __name__ == "__main__":
    sysExit(main())
