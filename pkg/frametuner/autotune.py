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
End to end tuning of a unit norm frame towards a unit norm tight frame.

When M and N are relatively prime and the frame is already fairly tight,
plain descent converges linearly and the iterates never come close to being
orthogonally partitionable. Otherwise descent is monitored: as soon as an
iterate becomes epsilon-OP the frame jumps to an exactly orthogonally
partitionable one, and each block is tuned recursively inside its own
subspace before the results are summed back together.
"""

import logging
import math

import numpy as np

from .constants import *
from .descent import run, convergence_bounds
from .frame import Frame, distance_from_tightness
from .linalg import matmul, adjoint, hs_norm, orthonormality_residual
from .partition import (JumpError, is_epsilon_op, jump_to_op, op_threshold,
                        jump_bound)


log = logging.getLogger(__name__)

PAPER = 'paper'


class TheoremConstants(object):
    """
    Thresholds and bounds of the convergence guarantees, evaluated for one
    frame size.
    """
    def __init__(self, m, n):
        self.m = m
        self.n = n
        self.coprime = math.gcd(m, n) == 1
        # iterates of a sufficiently tight frame with gcd(M, N) = 1 are
        # never this partitionable
        self.coprime_epsilon = 1. / (m ** 8 * n ** 4)
        # squared distance gate for the coprime guarantee
        self.coprime_gate = 2. / m ** 3
        # distance gate of the descend-or-jump guarantee
        self.noncoprime_gate = 1. / (2. ** 21 * float(m) ** 27 *
                                     float(n) ** 14)

    def noncoprime_epsilon(self, distance):
        """
        Unclamped epsilon 2^(3/2) 3^(3/7) M^(11/7) d^(3/7).
        """
        return (2 ** 1.5 * 3 ** (3. / 7) * self.m ** (11. / 7) *
                distance ** (3. / 7))

    def coprime_displacement_bound(self, t, d0):
        """
        Bound (4 M^20 N^8.5 / (1-2Nt)) d0 on the distance to the limit.
        """
        return convergence_bounds(self.m, self.n, t, self.coprime_epsilon,
                                  0, d0)[0]

    def noncoprime_displacement_bound(self, d0):
        """
        Bound 3 M^(6/7) N^(1/2) d0^(1/7) of one descend-or-jump round.
        """
        return (3 * self.m ** (6. / 7) * math.sqrt(self.n) *
                d0 ** (1. / 7))

    @classmethod
    def for_frame(cls, m, n, d, t):
        """
        Every constant, gate and bound evaluated for one frame.

        :param m: space dimension M.
        :param n: number of vectors N.
        :param d: distance from tightness.
        :param t: step in (0, 1/(2N)).
        :return: dict
        """
        c = cls(m, n)
        epsilon, clamped = paper_epsilon(m, n, d)
        return {'coprime': c.coprime,
                'coprime_epsilon': c.coprime_epsilon,
                'coprime_gate': c.coprime_gate,
                'coprime_gate_passes': c.coprime_gate_passes(d),
                'coprime_displacement_bound':
                    c.coprime_displacement_bound(t, d),
                'noncoprime_epsilon': epsilon,
                'noncoprime_epsilon_clamped': clamped,
                'noncoprime_gate': c.noncoprime_gate,
                'hypothesis_holds': c.noncoprime_gate_passes(d),
                'noncoprime_displacement_bound':
                    c.noncoprime_displacement_bound(d)}

    def coprime_gate_passes(self, d0):
        return self.coprime and d0 ** 2 <= self.coprime_gate

    def noncoprime_gate_passes(self, d0):
        return d0 <= self.noncoprime_gate


def paper_epsilon(m, n, distance):
    """
    Partitionability threshold of the descend-or-jump procedure for a frame
    at the given distance from tightness, clamped to (0, 1/(2M)] so that the
    jump is admissible. Zero distance gives zero, which disables monitoring.

    :return: (epsilon, clamped)
    """
    if distance < 0:
        raise ValueError('Distance must be non negative')
    raw = TheoremConstants(m, n).noncoprime_epsilon(distance)
    upper = 1. / (2 * m)
    if raw > upper:
        return upper, True
    return raw, False


class TuneReport(object):
    """
    Outcome tree of a tuning run. Each node covers one frame in its own
    coordinates; op-split nodes carry two children, one per block.
    """
    def __init__(self, space_dim, count, depth=0):
        self.space_dim = space_dim
        self.count = count
        self.depth = depth
        self.outcome = None
        self.reason = None
        self.iterations = 0
        self.frame = None
        self.initial_distance = None
        self.final_distance = None
        self.displacement = 0.
        self.phase_displacements = {}
        self.bounds = {}
        self.epsilon = None
        self.epsilon_clamped = False
        self.partition = None
        self.sub_dims = None
        self.equal_redundancy = None
        self.children = []
        self.trace = None

    @property
    def succeeded(self):
        """
        True when the final frame of this node is a unit norm tight frame.
        """
        return self.outcome != Outcome.STALLED and all(
            c.succeeded for c in self.children)

    @property
    def total_iterations(self):
        return self.iterations + sum(c.total_iterations
                                     for c in self.children)

    @property
    def max_depth(self):
        return max([self.depth] + [c.max_depth for c in self.children])

    def leaves(self):
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def to_dict(self):
        result = {'outcome': self.outcome,
                  'reason': self.reason,
                  'M': self.space_dim,
                  'N': self.count,
                  'depth': self.depth,
                  'iterations': self.iterations,
                  'total_iterations': self.total_iterations,
                  'initial_distance': self.initial_distance,
                  'final_distance': self.final_distance,
                  'displacement': self.displacement,
                  'phase_displacements': dict(self.phase_displacements),
                  'bounds': dict(self.bounds),
                  'epsilon': self.epsilon,
                  'epsilon_clamped': self.epsilon_clamped,
                  'children': [c.to_dict() for c in self.children]}
        if self.partition is not None:
            result['partition'] = self.partition.to_dict()
            result['sub_dims'] = list(self.sub_dims)
            result['equal_redundancy'] = self.equal_redundancy
        return result

    def __repr__(self):
        return 'TuneReport(M=%d, N=%d, outcome=%s, iterations=%d)' % (
            self.space_dim, self.count, self.outcome, self.total_iterations)


def restrict_to_subspace(vectors, basis):
    """
    Coordinates of vectors lying in the span of an orthonormal basis.

    :param vectors: M x k matrix (or Frame) with columns in span(basis).
    :param basis: M x r matrix with orthonormal columns.
    :return: Frame of k unit vectors in dimension r.
    """
    vectors = getattr(vectors, 'synthesis', vectors)
    if orthonormality_residual(basis) > SUBSPACE_TOL:
        raise ValueError('Subspace basis is not orthonormal')
    coords = matmul(adjoint(basis), vectors)
    residual = np.linalg.norm(matmul(basis, coords) - vectors, axis=0)
    if np.max(residual) > SUBSPACE_TOL:
        msg = ('Vector %d lies %.3e away from the subspace' %
               (int(np.argmax(residual)), np.max(residual)))
        raise ValueError(msg)
    coords = coords / np.linalg.norm(coords, axis=0)
    return Frame(coords)


def embed(f, basis):
    """
    Inverse of restrict_to_subspace: maps coordinates back into the ambient
    space.

    :param f: Frame in dimension r.
    :param basis: M x r matrix with orthonormal columns.
    :return: M x N matrix.
    """
    return matmul(basis, f.synthesis)


def _finish(report, f0, frame, cfg):
    report.frame = frame
    report.final_distance = distance_from_tightness(frame)
    report.displacement = hs_norm(frame.synthesis - f0.synthesis)
    if (report.outcome == Outcome.OP_SPLIT and
            report.final_distance > cfg.untf_tol):
        report.outcome = Outcome.STALLED
        stalled = [c for c in report.children if not c.succeeded]
        if stalled:
            report.reason = 'child-stalled: %s' % stalled[0].reason
            log.warning('Block of %d vectors stalled (%s), the direct sum '
                        'is not tight' % (stalled[0].count,
                                          stalled[0].reason))
        elif not report.equal_redundancy:
            # tight blocks only sum to a tight frame at equal redundancies
            report.reason = 'unequal-redundancy'
            log.warning('Blocks tuned but the direct sum is not tight '
                        '(distance %.3e)' % report.final_distance)
        else:
            report.reason = 'assembly-not-tight'
            log.warning('Tight blocks of equal redundancy assembled to a '
                        'frame at distance %.3e' % report.final_distance)
    return report


def _descent_report(report, f0, cfg, epsilon_monitor):
    frame, trace = run(f0, cfg, op_monitor=epsilon_monitor)
    report.trace = trace
    report.iterations = trace.iterations
    report.phase_displacements['descent'] = hs_norm(frame.synthesis -
                                                    f0.synthesis)
    report.reason = trace.reason
    if trace.reason == TerminationReason.TOLERANCE:
        report.outcome = Outcome.UNTF
    elif trace.reason != TerminationReason.OP_DETECTED:
        report.outcome = Outcome.STALLED
    return frame


def tune_coprime(f0, cfg, depth=0):
    """
    Plain descent for relatively prime M and N starting from a frame whose
    squared distance from tightness is at most 2/M^3. Every iterate is spot
    checked against the partitionability threshold 1/(M^8 N^4).

    :param f0: Frame.
    :param cfg: DescentConfig.
    :return: TuneReport
    """
    m, n = f0.space_dim, f0.count
    constants = TheoremConstants(m, n)
    d0 = distance_from_tightness(f0)
    if not constants.coprime:
        raise ValueError('M=%d and N=%d are not relatively prime' % (m, n))
    if not constants.coprime_gate_passes(d0):
        msg = ('Squared distance %.6g exceeds the coprime gate 2/M^3 = %.6g'
               % (d0 ** 2, constants.coprime_gate))
        raise ValueError(msg)

    report = TuneReport(m, n, depth)
    report.initial_distance = d0
    t = cfg.step_for(n)
    violations = []

    def spot_check(k, frame, g):
        if k % COPRIME_SPOT_CHECK == 0:
            tau, _ = op_threshold(frame)
            if tau < constants.coprime_epsilon:
                violations.append((k, tau))
                log.warning('Iterate %d is %.3e-OP despite the coprime '
                            'guarantee' % (k, tau))

    frame, trace = run(f0, cfg, observer=spot_check)
    report.trace = trace
    report.iterations = trace.iterations
    report.reason = trace.reason
    report.outcome = (Outcome.UNTF
                      if trace.reason == TerminationReason.TOLERANCE
                      else Outcome.STALLED)
    report.phase_displacements['descent'] = hs_norm(frame.synthesis -
                                                    f0.synthesis)
    report.bounds = TheoremConstants.for_frame(m, n, d0, t)
    report.bounds['coprime_guarantee_violations'] = len(violations)
    bound = report.bounds['coprime_displacement_bound']
    _finish(report, f0, frame, cfg)
    if report.displacement > bound:
        log.warning('Displacement %.6g exceeds the coprime bound %.6g' %
                    (report.displacement, bound))
    elif report.displacement > 0:
        log.info('Coprime displacement %.3e, bound %.3e (slack factor %.3e)'
                 % (report.displacement, bound, bound / report.displacement))
    if report.displacement > EMPIRICAL_DISPLACEMENT_FACTOR * d0:
        log.warning('Displacement %.6g is more than %g times the initial '
                    'distance %.6g' % (report.displacement,
                                       EMPIRICAL_DISPLACEMENT_FACTOR, d0))
    return report


def tune(f0, cfg, epsilon=PAPER, recompute_epsilon=False, _depth=0):
    """
    Tunes a unit norm frame towards a unit norm tight frame.

    :param f0: Frame with N >= M.
    :param cfg: DescentConfig.
    :param epsilon: 'paper' for the threshold derived from the distance
        from tightness at the start of each recursion level, or a fixed
        number.
    :param recompute_epsilon: with the 'paper' policy, derive the threshold
        from the current distance at every check instead.
    :return: TuneReport
    """
    m, n = f0.space_dim, f0.count
    constants = TheoremConstants(m, n)
    d0 = distance_from_tightness(f0)
    log.info('Tune level %d: M=%d N=%d distance %.3e' % (_depth, m, n, d0))

    if n < m:
        report = TuneReport(m, n, _depth)
        report.initial_distance = d0
        report.outcome = Outcome.STALLED
        report.reason = 'rank-deficient'
        log.warning('Block with N=%d < M=%d cannot be tight' % (n, m))
        return _finish(report, f0, f0, cfg)
    if d0 > cfg.untf_tol and constants.coprime_gate_passes(d0):
        return tune_coprime(f0, cfg, depth=_depth)

    report = TuneReport(m, n, _depth)
    report.initial_distance = d0
    if d0 <= cfg.untf_tol:
        report.outcome = Outcome.UNTF
        report.reason = TerminationReason.TOLERANCE
        return _finish(report, f0, f0, cfg)
    if _depth >= m:
        report.outcome = Outcome.STALLED
        report.reason = 'recursion-cap'
        log.warning('Recursion cap reached at depth %d' % _depth)
        return _finish(report, f0, f0, cfg)

    hypothesis = constants.noncoprime_gate_passes(d0)
    if epsilon == PAPER:
        value, clamped = paper_epsilon(m, n, d0)
        monitor = value
        if recompute_epsilon:
            def monitor(distance):
                return paper_epsilon(m, n, distance)[0]
    else:
        is_epsilon_in_range(epsilon)
        value = min(epsilon, 1. / (2 * m))
        clamped = value < epsilon
        monitor = value
    report.epsilon = value
    report.epsilon_clamped = clamped
    report.bounds = TheoremConstants.for_frame(m, n, d0, cfg.step_for(n))
    report.bounds['jump_bound'] = jump_bound(m, n, value) if value else None
    if not hypothesis:
        log.info('Distance %.3e is above the gate %.3e: the displacement '
                 'bound is not guaranteed' % (d0, constants.noncoprime_gate))

    frame = _descent_report(report, f0, cfg,
                            monitor if value > 0 else None)
    if report.outcome is not None:
        return _finish(report, f0, frame, cfg)

    current = distance_from_tightness(frame)
    if recompute_epsilon and epsilon == PAPER:
        value = paper_epsilon(m, n, current)[0]
    try:
        partition = is_epsilon_op(frame, value)
        if partition is None:
            raise JumpError('Iterate is not %.6g-OP' % value)
        jump = jump_to_op(frame, value, partition)
    except (JumpError, ValueError) as e:
        report.outcome = Outcome.STALLED
        report.reason = 'jump-failed'
        log.warning('Jump failed: %s' % e)
        return _finish(report, f0, frame, cfg)

    report.outcome = Outcome.OP_SPLIT
    report.partition = jump.partition
    report.sub_dims = jump.sub_dims
    report.phase_displacements['jump'] = jump.displacement
    block_i, block_j = jump.partition.block_i, jump.partition.block_j
    m_i, m_j = jump.sub_dims
    report.equal_redundancy = (len(block_i) * m == n * m_i and
                               len(block_j) * m == n * m_j)
    if not report.equal_redundancy:
        level = logging.WARNING if hypothesis else logging.INFO
        log.log(level, 'Unequal redundancies after the jump: %d/%d and %d/%d'
                % (len(block_i), m_i, len(block_j), m_j))

    assembled = np.array(jump.op_frame.synthesis)
    children_displacement = 0.
    for block, basis in ((block_i, jump.basis_i), (block_j, jump.basis_j)):
        sub = restrict_to_subspace(jump.op_frame.subframe(block).synthesis,
                                   basis)
        child = tune(sub, cfg, epsilon, recompute_epsilon, _depth + 1)
        report.children.append(child)
        children_displacement += child.displacement
        assembled[:, list(block)] = embed(child.frame, basis)
    report.phase_displacements['children'] = children_displacement
    final = Frame(assembled / np.linalg.norm(assembled, axis=0), f0.field)
    return _finish(report, f0, final, cfg)
