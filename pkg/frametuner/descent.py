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
Gradient descent of the frame potential over the product of unit spheres.
Each vector moves along the great circle leaving it in the direction of its
projected gradient g_n = FF*f_n - <FF*f_n, f_n> f_n.
"""

import logging
import math
from collections import namedtuple

import numpy as np

from .constants import *
from .frame import Frame, frame_operator, frame_potential
from .linalg import matmul, hs_norm
from .partition import is_epsilon_op


log = logging.getLogger(__name__)


Gradient = namedtuple('Gradient', ['directions', 'total_sq_norm'])

TraceRecord = namedtuple('TraceRecord', ['iteration', 'frame_potential',
                                         'distance', 'grad_sq_norm',
                                         'displacement'])

TaylorBounds = namedtuple('TaylorBounds', ['potential_upper',
                                           'displacement_sq_upper'])


class DescentError(RuntimeError):
    pass


class DescentConfig(object):
    """
    Parameters of the descent loop. The step may be left as None, meaning
    1/(4N) for whichever frame the configuration is applied to.
    """
    def __init__(self, step=None, untf_tol=DEFAULT_UNTF_TOL,
                 gradient_tol=DEFAULT_GRADIENT_TOL, max_iter=DEFAULT_MAX_ITER,
                 op_stride=DEFAULT_OP_STRIDE, trace_limit=TRACE_FULL_ROWS,
                 record_trace=True):
        """
        :param step: step size t in (0, 1/(2N)), or None for 1/(4N).
        :param untf_tol: distance from tightness accepted as tight.
        :param gradient_tol: gradient norm under which the descent stops.
        :param max_iter: iteration budget.
        :param op_stride: iterations between two epsilon-OP checks.
        :param trace_limit: iterations recorded in full before thinning.
        :param record_trace: record intermediate iterations at all.
        """
        if step is not None and not step > 0:
            raise ValueError('Valid step range: (0, 1/(2N))')
        is_tolerance_in_range([untf_tol, gradient_tol])
        is_max_iter_in_range(max_iter)
        is_max_iter_in_range(op_stride)
        self.step = step
        self.untf_tol = untf_tol
        self.gradient_tol = gradient_tol
        self.max_iter = int(max_iter)
        self.op_stride = int(op_stride)
        self.trace_limit = trace_limit
        self.record_trace = record_trace

    def step_for(self, n):
        """
        Step size to use on a frame with n vectors.

        :param n: number of vectors N.
        :return: step t, validated against (0, 1/(2N)).
        """
        step = 1. / (4 * n) if self.step is None else self.step
        is_step_in_range(step, n)
        return step

    def __repr__(self):
        return ('DescentConfig(step=%s, untf_tol=%g, gradient_tol=%g, '
                'max_iter=%d)' % (self.step, self.untf_tol,
                                  self.gradient_tol, self.max_iter))


class DescentTrace(object):
    """
    Per-iteration records of a descent run. Every iteration is kept up to
    `limit` rows, then only iterations at a geometric spacing.
    """
    def __init__(self, limit=TRACE_FULL_ROWS, enabled=True):
        self.records = []
        self.reason = None
        self.limit = limit
        self.enabled = enabled
        self._next_kept = limit

    def add(self, record, force=False):
        if not force:
            if not self.enabled:
                return
            k = record.iteration
            if k >= self.limit:
                if k < self._next_kept:
                    return
                self._next_kept = max(k + 1,
                                      int(round(k * TRACE_THINNING)))
        if self.records and self.records[-1].iteration == record.iteration:
            return
        self.records.append(record)

    @property
    def last(self):
        return self.records[-1]

    @property
    def iterations(self):
        """
        Number of descent steps taken.
        """
        return self.records[-1].iteration if self.records else 0

    def potentials(self):
        return [r.frame_potential for r in self.records]

    def distances(self):
        return [r.distance for r in self.records]

    def __len__(self):
        return len(self.records)


def _gradient_directions(x, s):
    sx = matmul(s, x)
    coeffs = np.real(np.sum(np.conj(x) * sx, axis=0))
    return sx - x * coeffs


def gradient(f):
    """
    Projected gradient of the frame potential: for each n, the component of
    FF*f_n orthogonal to f_n.

    :param f: Frame.
    :return: Gradient(directions, total_sq_norm), directions as M x N matrix.
    """
    directions = _gradient_directions(f.synthesis, frame_operator(f))
    return Gradient(directions, float(np.sum(np.abs(directions) ** 2)))


def geodesic_step(f, g, t):
    """
    Moves each f_n along its great circle:
    f_n(t) = cos(||g_n|| t) f_n - sin(||g_n|| t) g_n/||g_n||,
    leaving f_n unchanged where g_n = 0. Columns are renormalized afterwards
    to keep floating point drift off the unit sphere constraint.

    :param f: Frame.
    :param g: Gradient (or M x N matrix) of directions tangent to f.
    :param t: step.
    :return: Frame
    """
    directions = getattr(g, 'directions', g)
    x = f.synthesis
    norms = np.linalg.norm(directions, axis=0)
    moving = norms > 0
    safe = np.where(moving, norms, 1.)
    angles = norms * t
    moved = np.cos(angles) * x - np.sin(angles) * directions / safe
    moved = np.where(moving, moved, x)
    return Frame(moved / np.linalg.norm(moved, axis=0), f.field)


def guaranteed_decrease(n, t, grad_sq_norm):
    """
    Guaranteed frame potential decrease of one step: 4t(1-2Nt) sum||g_n||^2.
    """
    return 4 * t * (1 - 2 * n * t) * grad_sq_norm


def _checked_step(f, g, potential, t):
    nxt = geodesic_step(f, g, t)
    nxt_potential = frame_potential(nxt)
    bound = potential - guaranteed_decrease(f.count, t, g.total_sq_norm)
    if nxt_potential > bound + DECREASE_SLACK:
        msg = ('Frame potential %.17g exceeds the guaranteed value %.17g' %
               (nxt_potential, bound))
        raise DescentError(msg)
    return nxt, nxt_potential


def step_and_check(f, t):
    """
    One descent step with verification of the guaranteed decrease
    FP(F(t)) <= FP(F) - 4t(1-2Nt) sum||P_n FF* f_n||^2.

    :param f: Frame.
    :param t: step in (0, 1/(2N)).
    :return: (next frame, its frame potential, its distance from tightness)
    """
    is_step_in_range(t, f.count)
    nxt, potential = _checked_step(f, gradient(f), frame_potential(f), t)
    s = frame_operator(nxt)
    distance = hs_norm(s - nxt.redundancy * np.eye(nxt.space_dim))
    return nxt, potential, distance


def taylor_bounds(f, g, t):
    """
    Upper bounds for one geodesic step with arbitrary tangent directions:
    FP(F(t)) <= FP(F) - 4t Re sum<FF*f_n, g_n> + 8N t^2 sum||g_n||^2 and
    ||F(t) - F||^2 <= t^2 sum||g_n||^2.

    :param f: Frame.
    :param g: M x N matrix of tangent directions.
    :param t: step.
    :return: TaylorBounds
    """
    directions = getattr(g, 'directions', g)
    sx = matmul(frame_operator(f), f.synthesis)
    linear = float(np.real(np.sum(np.conj(directions) * sx)))
    sq = float(np.sum(np.abs(directions) ** 2))
    potential = (frame_potential(f) - 4 * t * linear +
                 8 * f.count * t ** 2 * sq)
    return TaylorBounds(potential, t ** 2 * sq)


def gradient_sandwich(f, epsilon, distance):
    """
    Bounds on sum||P_n FF* f_n||^2 for a frame at the given distance from
    tightness: the upper bound 4N d^2 always holds, the lower bound
    (eps^2/(4M^4)) d^2 holds when d <= N/(2M) and the frame is not
    epsilon-orthogonally partitionable.

    :return: (lower, upper)
    """
    m, n = f.space_dim, f.count
    lower = epsilon ** 2 / (4. * m ** 4) * distance ** 2
    upper = 4. * n * distance ** 2
    return lower, upper


def convergence_bounds(m, n, t, epsilon, k, d0):
    """
    Linear convergence guarantees for descent iterates that never become
    epsilon-orthogonally partitionable.

    :param m: space dimension M.
    :param n: number of vectors N.
    :param t: step in (0, 1/(2N)).
    :param epsilon: partitionability threshold in (0, 1].
    :param k: iteration index K.
    :param d0: initial distance from tightness.
    :return: (bound on ||F_inf - F_0||, bound on the distance of F_K)
    """
    is_step_in_range(t, n)
    if not (0 < epsilon <= 1):
        raise ValueError('Valid epsilon range: (0, 1]')
    if k < 0 or d0 < 0:
        raise ValueError('Iteration index and distance must be non negative')
    rate = 1 - t * (1 - 2 * n * t) * epsilon ** 2 / m ** 4
    displacement = (4. * m ** 4 * math.sqrt(n) /
                    ((1 - 2 * n * t) * epsilon ** 2)) * d0
    return displacement, rate ** (k / 2.) * d0


def _resolve_epsilon(op_monitor, distance):
    if op_monitor is None:
        return 0.
    if callable(op_monitor):
        return op_monitor(distance)
    return op_monitor


def run(f0, cfg, op_monitor=None, observer=None):
    """
    Iterates F_{k+1} = F_k(t) until the frame is tight, the gradient
    vanishes, the budget is spent or (with a monitor) an iterate becomes
    epsilon-orthogonally partitionable.

    :param f0: initial Frame, N >= M.
    :param cfg: DescentConfig.
    :param op_monitor: None, a fixed epsilon, or a callable returning an
        epsilon for the current distance from tightness.
    :param observer: optional callable(k, frame, gradient) run on every
        iterate.
    :return: (final Frame, DescentTrace)
    """
    if f0.count < f0.space_dim:
        raise ValueError('Tuning needs N >= M (got M=%d, N=%d)' %
                         (f0.space_dim, f0.count))
    t = cfg.step_for(f0.count)
    trace = DescentTrace(cfg.trace_limit, cfg.record_trace)
    identity = f0.redundancy * np.eye(f0.space_dim)
    log.info('Descent start: M=%d N=%d t=%g' % (f0.space_dim, f0.count, t))

    f = f0
    potential = frame_potential(f)
    k = 0
    while True:
        s = frame_operator(f)
        distance = hs_norm(s - identity)
        directions = _gradient_directions(f.synthesis, s)
        g = Gradient(directions, float(np.sum(np.abs(directions) ** 2)))
        displacement = hs_norm(f.synthesis - f0.synthesis)
        record = TraceRecord(k, potential, distance, g.total_sq_norm,
                             displacement)
        trace.add(record)
        if observer is not None:
            observer(k, f, g)

        reason = None
        if distance <= cfg.untf_tol:
            reason = TerminationReason.TOLERANCE
        elif g.total_sq_norm <= cfg.gradient_tol ** 2:
            reason = TerminationReason.GRADIENT_VANISHED
        elif op_monitor is not None and k % cfg.op_stride == 0:
            epsilon = _resolve_epsilon(op_monitor, distance)
            if epsilon > 0 and is_epsilon_op(f, epsilon) is not None:
                reason = TerminationReason.OP_DETECTED
        if reason is None and k >= cfg.max_iter:
            reason = TerminationReason.BUDGET
        if reason is not None:
            trace.add(record, force=True)
            trace.reason = reason
            break

        log.debug('iter %d FP %.17g distance %.6e' % (k, potential,
                                                       distance))
        f, potential = _checked_step(f, g, potential, t)
        k += 1

    log.info('Descent stop after %d iterations: %s (distance %.3e)' %
             (k, trace.reason, distance))
    return f, trace
