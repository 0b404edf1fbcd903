# ------------------------------------------------------------------------------
# This file is part of frametuner.
#
# Distributed under the terms of the GNU General Public License,
# either version 3 of the License, or (at your option) any later version.
# See LICENSE.txt for more info.
#
# You should have received a copy of the GNU General Public License
# along with frametuner. If not, see <http://www.gnu.org/licenses/>.
# ------------------------------------------------------------------------------

"""
Command line front end.

    frametuner analyze --input F.json
    frametuner tune --input F.json --output G.json --report R.json
    frametuner gabor-tune --input gabor.json --output tuned.json
    frametuner make harmonic --M 2 --N 5 --output H.json
    frametuner step --input F.json

Exit codes: 0 success, 2 input error, 3 invariant violation, 4 stalled.
"""

import argparse
import logging
import math
import os
import sys

from .constants import *
from .autotune import PAPER, tune
from .descent import (DescentConfig, DescentError, DescentTrace,
                      guaranteed_decrease, gradient, step_and_check)
from .fileio import (read_frame, write_frame, write_trace, write_report,
                     read_system, write_system)
from .frame import (UnitNormError, analyze, frame_potential, harmonic_frame,
                    random_frame, perturb, example_frame, example_tight_frame)
from .partition import op_threshold
from .structured import commutation_check, orbit_equality_residual
from . import structured


log = logging.getLogger(__name__)

LOG_LEVELS = {'error': logging.ERROR,
              'info': logging.INFO,
              'debug': logging.DEBUG}

MAKE_KINDS = ('harmonic', 'random', 'example_theta')


def configure_logging():
    """
    Configures the root logger from the FRAME_TUNER_LOG environment
    variable.
    """
    name = os.environ.get(LOG_ENV_VAR, 'error').lower()
    level = LOG_LEVELS.get(name)
    logging.basicConfig(level=level or logging.ERROR, stream=sys.stderr,
                        format='%(asctime)s %(name)s %(levelname)s: '
                               '%(message)s')
    if level is None:
        log.warning('Unknown %s value %r, using error' % (LOG_ENV_VAR, name))


def _step_type(value):
    if value == 'auto':
        return None
    return float(value)


def _epsilon_type(value):
    if value == PAPER:
        return PAPER
    return float(value)


def _add_descent_args(parser):
    parser.add_argument('--step', help='step size, auto = 1/(4N)',
                        type=_step_type, default=None)
    parser.add_argument('--tol', help='tightness tolerance', type=float,
                        default=DEFAULT_UNTF_TOL)
    parser.add_argument('--grad-tol', help='gradient norm tolerance',
                        type=float, default=DEFAULT_GRADIENT_TOL)
    parser.add_argument('--max-iter', help='iteration budget', type=int,
                        default=DEFAULT_MAX_ITER)
    parser.add_argument('--trace', help='trace CSV output', type=str)


def build_parser():
    parser = argparse.ArgumentParser(
        prog='frametuner',
        description='Tunes unit norm frames towards unit norm tight frames')
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('analyze', help='spectral summary of a frame')
    p.add_argument('--input', help='frame file', type=str, required=True)
    p.add_argument('--normalize', help='normalize the columns',
                   action='store_true')

    p = sub.add_parser('tune', help='tune a frame')
    p.add_argument('--input', help='frame file', type=str, required=True)
    p.add_argument('--output', help='tuned frame file', type=str)
    p.add_argument('--report', help='report JSON output', type=str)
    p.add_argument('--epsilon', help='partitionability threshold: paper or '
                   'a number', type=_epsilon_type, default=PAPER)
    p.add_argument('--normalize', help='normalize the columns',
                   action='store_true')
    _add_descent_args(p)

    p = sub.add_parser('gabor-tune', help='structured descent of a Gabor '
                       'system or filter bank')
    p.add_argument('--input', help='configuration file', type=str,
                   required=True)
    p.add_argument('--output', help='tuned configuration file', type=str)
    p.add_argument('--report', help='report JSON output', type=str)
    _add_descent_args(p)

    p = sub.add_parser('make', help='build a fixture frame')
    p.add_argument('kind', help='frame family', choices=MAKE_KINDS)
    p.add_argument('--M', help='space dimension', type=int, dest='m')
    p.add_argument('--N', help='number of vectors', type=int, dest='n')
    p.add_argument('--theta', help='angle of example_theta', type=float)
    p.add_argument('--seed', help='random seed', type=int, default=0)
    p.add_argument('--field', help='scalar field', choices=Field.values,
                   default=Field.REAL)
    p.add_argument('--perturb', help='largest perturbation angle',
                   type=float, default=0.)
    p.add_argument('--tilde', help='also write the nearest tight frame of '
                   'example_theta', type=str)
    p.add_argument('--output', help='frame file', type=str, required=True)

    p = sub.add_parser('step', help='one descent step')
    p.add_argument('--input', help='frame file', type=str, required=True)
    p.add_argument('--output', help='stepped frame file', type=str)
    p.add_argument('--step', help='step size, auto = 1/(4N)',
                   type=_step_type, default=None)
    p.add_argument('--normalize', help='normalize the columns',
                   action='store_true')
    return parser


def _config(args):
    return DescentConfig(step=args.step, untf_tol=args.tol,
                         gradient_tol=args.grad_tol, max_iter=args.max_iter)


def _print_outcome(outcome, reason):
    print('outcome: %s (%s)' % (outcome, reason))
    print(Outcome.outcome_txt[outcome])
    if reason in TerminationReason.reason_txt:
        print(TerminationReason.reason_txt[reason])


def cmd_analyze(args):
    f = read_frame(args.input, args.normalize)
    result = analyze(f)
    m, n = f.space_dim, f.count
    print('M: %d' % m)
    print('N: %d' % n)
    print('gcd(M, N): %d' % math.gcd(m, n))
    print('frame potential: %.17g' % result.frame_potential)
    print('N^2/M: %.17g' % (float(n) ** 2 / m))
    print('distance: %.4e' % result.distance)
    print('frame bounds: A=%.17g B=%.17g' % (result.lower_frame_bound,
                                             result.upper_frame_bound))
    if n >= 2:
        tau, partition = op_threshold(f)
        print('tau: %.17g I=%s J=%s' % (tau, list(partition.block_i),
                                        list(partition.block_j)))
    else:
        print('tau: n/a')
    print('UNTF: %s' % ('yes' if result.is_untf else 'no'))
    return ExitCode.SUCCESS


def _write_traces(report, path):
    """
    Writes the descent trace of a tuning report to `path` and the traces of
    its blocks next to it: trace.I.csv, trace.J.csv, trace.I.J.csv, ...
    """
    root, ext = os.path.splitext(path)

    def walk(node, label):
        target = '%s.%s%s' % (root, label, ext) if label else path
        trace = node.trace if node.trace is not None else DescentTrace()
        write_trace(trace, target)
        for name, child in zip('IJ', node.children):
            walk(child, '%s.%s' % (label, name) if label else name)

    walk(report, '')


def cmd_tune(args):
    f = read_frame(args.input, args.normalize)
    cfg = _config(args)
    cfg.step_for(f.count)
    report = tune(f, cfg, epsilon=args.epsilon)
    if args.output:
        write_frame(report.frame, args.output)
    if args.report:
        write_report(report, args.report)
    if args.trace:
        _write_traces(report, args.trace)
    _print_outcome(report.outcome, report.reason)
    print('iterations: %d' % report.total_iterations)
    print('distance: %.4e' % report.final_distance)
    print('displacement: %.6g' % report.displacement)
    if report.succeeded:
        return ExitCode.SUCCESS
    return ExitCode.STALLED


def cmd_gabor_tune(args):
    system = read_system(args.input)
    cfg = _config(args)
    t = cfg.step_for(system.count)
    passed, violation = commutation_check(system)
    tuned, trace = structured.run(system, cfg)
    # verification step from the final generators
    residual = orbit_equality_residual(tuned, t)
    if args.output:
        write_system(tuned, args.output)
    if args.trace:
        write_trace(trace, args.trace)
    final = trace.last.distance
    reached = trace.reason == TerminationReason.TOLERANCE
    report = {'outcome': Outcome.UNTF if reached else Outcome.STALLED,
              'reason': trace.reason,
              'iterations': trace.iterations,
              'final_distance': final,
              'M': system.m,
              'N': system.count,
              'commutation_violation': violation,
              'commutes': passed,
              'orbit_equality_residual': residual}
    if args.report:
        write_report(report, args.report)
    _print_outcome(report['outcome'], trace.reason)
    print('iterations: %d' % trace.iterations)
    print('distance: %.4e' % final)
    print('orbit equality residual: %.3e' % residual)
    return ExitCode.SUCCESS if reached else ExitCode.STALLED


def cmd_make(args):
    if args.kind == 'example_theta':
        if args.theta is None:
            raise ValueError('example_theta needs --theta')
        f = example_frame(args.theta)
        if args.tilde:
            write_frame(example_tight_frame(args.theta), args.tilde)
    else:
        if args.m is None or args.n is None:
            raise ValueError('%s needs --M and --N' % args.kind)
        if args.m < 1:
            raise ValueError('Valid M range: [1, inf)')
        if args.kind == 'harmonic':
            f = harmonic_frame(args.m, args.n)
        else:
            f = random_frame(args.m, args.n, args.seed, args.field)
    f = perturb(f, args.perturb, args.seed)
    write_frame(f, args.output)
    return ExitCode.SUCCESS


def cmd_step(args):
    f = read_frame(args.input, args.normalize)
    t = DescentConfig(step=args.step).step_for(f.count)
    before = frame_potential(f)
    decrease = guaranteed_decrease(f.count, t, gradient(f).total_sq_norm)
    stepped, after, distance = step_and_check(f, t)
    if args.output:
        write_frame(stepped, args.output)
    print('step: %.17g' % t)
    print('frame potential before: %.17g' % before)
    print('frame potential after: %.17g' % after)
    print('guaranteed decrease: %.17g' % decrease)
    print('distance after: %.4e' % distance)
    return ExitCode.SUCCESS


COMMANDS = {'analyze': cmd_analyze,
            'tune': cmd_tune,
            'gabor-tune': cmd_gabor_tune,
            'make': cmd_make,
            'step': cmd_step}


def main(argv=None):
    """
    :param argv: argument list, sys.argv[1:] when None.
    :return: exit code.
    """
    configure_logging()
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code
    try:
        return COMMANDS[args.command](args)
    except UnitNormError as e:
        sys.stderr.write('error: %s (use --normalize to normalize the '
                         'columns)\n' % e)
        return ExitCode.INVARIANT_VIOLATION
    except DescentError as e:
        sys.stderr.write('error: %s\n' % e)
        return ExitCode.INVARIANT_VIOLATION
    except (ValueError, OSError) as e:
        sys.stderr.write('error: %s\n' % e)
        return ExitCode.INPUT_ERROR


if __name__ == '__main__':
    sys.exit(main())
