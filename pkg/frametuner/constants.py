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


# Numerical tolerances
UNIT_NORM_TOL = 1e-12
ZERO_COLUMN_TOL = 1e-14
HERMITIAN_TOL = 1e-12
RANK_TOL = 1e-12
OP_EXACT_TOL = 1e-10
SUBSPACE_TOL = 1e-9
DECREASE_SLACK = 1e-9
COMMUTATION_TOL = 1e-9

# Descent defaults
DEFAULT_UNTF_TOL = 1e-8
DEFAULT_GRADIENT_TOL = 1e-10
DEFAULT_MAX_ITER = 10**6
DEFAULT_OP_STRIDE = 1
TRACE_FULL_ROWS = 10**4
TRACE_THINNING = 1.1

# Pipeline
COPRIME_SPOT_CHECK = 1000
# ||F_inf - F_0|| observed against this multiple of the initial distance
EMPIRICAL_DISPLACEMENT_FACTOR = 10.
BRUTE_FORCE_MAX_N = 16

# Environment variable read by the command line front end
LOG_ENV_VAR = 'FRAME_TUNER_LOG'


class Field(object):
    """
    Scalar fields supported by the frames.
    """
    REAL = 'real'
    COMPLEX = 'complex'

    values = (REAL, COMPLEX)


class TerminationReason(object):
    """
    Reasons for a descent loop to stop.
    """
    TOLERANCE = 'tolerance'
    GRADIENT_VANISHED = 'gradient-vanished'
    BUDGET = 'budget'
    OP_DETECTED = 'op-detected'

    reason_txt = {TOLERANCE: 'The frame reached the tightness tolerance.',
                  GRADIENT_VANISHED: 'The projected gradient vanished at a '
                                     'frame which is not tight (critical '
                                     'frame).',
                  BUDGET: 'The iteration budget was exhausted.',
                  OP_DETECTED: 'The iterate became epsilon-orthogonally '
                               'partitionable.'}


class Outcome(object):
    """
    Outcomes of the tuning pipeline.
    """
    UNTF = 'untf'
    OP_SPLIT = 'op-split'
    STALLED = 'stalled'

    outcome_txt = {UNTF: 'Unit norm tight frame reached.',
                   OP_SPLIT: 'Orthogonally partitioned and tuned blockwise.',
                   STALLED: 'The pipeline stopped before reaching a unit '
                            'norm tight frame.'}


class ExitCode(object):
    """
    Exit codes of the command line front end.
    """
    SUCCESS = 0
    INPUT_ERROR = 2
    INVARIANT_VIOLATION = 3
    STALLED = 4


def is_step_in_range(step, n):
    """
    Checks that the step lies in the open interval (0, 1/(2N)).
    :param step: step size t.
    :param n: number of frame vectors N.
    :return: None
    """
    upper = 1. / (2 * n)
    if not (0 < step < upper):
        msg = 'Valid step range for N=%d: (0, %.17g)' % (n, upper)
        raise ValueError(msg)


def is_tolerance_in_range(values):
    """
    Checks that tolerances are strictly positive.
    :param values: (list of) tolerance value(s).
    :return: None
    """
    if type(values) is not list:
        values = [values]
    for value in values:
        if not value > 0:
            raise ValueError('Valid tolerance range: (0, inf)')


def is_max_iter_in_range(value):
    """
    Checks the iteration budget.
    :param value: maximum number of iterations.
    :return: None
    """
    if int(value) != value or value < 1:
        raise ValueError('Valid iteration budget range: [1, inf)')


def is_epsilon_in_range(value):
    """
    Checks an orthogonal partitionability threshold.
    :param value: epsilon.
    :return: None
    """
    if not value > 0:
        raise ValueError('Valid epsilon range: (0, inf)')


def is_jump_epsilon_in_range(value, m):
    """
    Checks the epsilon admissible for the jump to an orthogonally
    partitionable frame.
    :param value: epsilon.
    :param m: space dimension M.
    :return: None
    """
    upper = 1. / (2 * m)
    if not (0 < value <= upper):
        msg = 'Valid jump epsilon range for M=%d: (0, %.17g]' % (m, upper)
        raise ValueError(msg)


def is_magnitude_in_range(value):
    """
    Checks a perturbation magnitude.
    :param value: geodesic angle.
    :return: None
    """
    if value < 0:
        raise ValueError('Valid magnitude range: [0, inf)')


def is_lattice_valid(m, values):
    """
    Checks that every lattice step divides the signal length.
    :param m: signal length M.
    :param values: (list of) lattice step(s) A, B.
    :return: None
    """
    if type(values) is not list:
        values = [values]
    for value in values:
        if value < 1 or m % value != 0:
            msg = 'Lattice step %s does not divide M=%d' % (value, m)
            raise ValueError(msg)
