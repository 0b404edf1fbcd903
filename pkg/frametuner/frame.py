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

import logging
from collections import namedtuple

import numpy as np

from .constants import *
from .linalg import (as_matrix, field_of, matmul, adjoint, hs_norm,
                     hermitian_eig, inverse_sqrt)


log = logging.getLogger(__name__)


FrameAnalysis = namedtuple('FrameAnalysis',
                           ['eigenvalues', 'frame_potential', 'distance',
                            'is_untf', 'lower_frame_bound',
                            'upper_frame_bound'])


class UnitNormError(ValueError):
    pass


class RankDeficientError(ValueError):
    pass


class Frame(object):
    """
    Finite unit norm frame: a sequence of N unit vectors in an M dimensional
    real or complex Hilbert space, stored as the columns of the M x N
    synthesis matrix. The matrix is read-only once the frame is built.
    """
    def __init__(self, synthesis, field=None):
        """
        :param synthesis: M x N array-like with unit norm columns.
        :param field: Field.REAL or Field.COMPLEX; inferred when None.
        """
        synthesis = as_matrix(synthesis, field)
        norms = np.linalg.norm(synthesis, axis=0)
        bad = np.flatnonzero(np.abs(norms - 1) > UNIT_NORM_TOL)
        if len(bad):
            msg = ('Column %d is not unit norm (norm %.17g)' %
                   (bad[0], norms[bad[0]]))
            raise UnitNormError(msg)
        synthesis.flags.writeable = False
        self._synthesis = synthesis

    @property
    def synthesis(self):
        """
        The M x N synthesis matrix F.
        """
        return self._synthesis

    @property
    def space_dim(self):
        return self._synthesis.shape[0]

    @property
    def count(self):
        return self._synthesis.shape[1]

    @property
    def field(self):
        return field_of(self._synthesis)

    @property
    def redundancy(self):
        """
        :return: N/M, the tight frame bound of a unit norm tight frame.
        """
        return float(self.count) / self.space_dim

    def column(self, n):
        return self._synthesis[:, n]

    def subframe(self, indices):
        """
        :param indices: column indices.
        :return: Frame with the selected columns, in the given order.
        """
        return Frame(self._synthesis[:, list(indices)])

    def __len__(self):
        return self.count

    def __repr__(self):
        return 'Frame(M=%d, N=%d, field=%s)' % (self.space_dim, self.count,
                                                self.field)


def normalize_columns(raw):
    """
    Replaces each column by its normalization.

    :param raw: M x N matrix without zero columns.
    :return: Frame
    """
    raw = as_matrix(raw)
    norms = np.linalg.norm(raw, axis=0)
    zero = np.flatnonzero(norms <= ZERO_COLUMN_TOL)
    if len(zero):
        raise ValueError('Column %d is zero and cannot be normalized' %
                         zero[0])
    return Frame(raw / norms)


def frame_operator(f):
    """
    Frame operator FF*, an M x M Hermitian positive semidefinite matrix with
    trace N.
    """
    s = matmul(f.synthesis, adjoint(f.synthesis))
    return 0.5 * (s + adjoint(s))


def gram_matrix(f):
    """
    Gram matrix F*F: the N x N matrix of inner products <f_n', f_n>.
    """
    return matmul(adjoint(f.synthesis), f.synthesis)


def frame_potential(f):
    """
    Frame potential FP(F) = ||F*F||_HS^2, the sum of |<f_n, f_n'>|^2 over all
    pairs. It is bounded below by N^2/M with equality exactly for unit norm
    tight frames.
    """
    return hs_norm(gram_matrix(f)) ** 2


def distance_from_tightness(f):
    """
    ||FF* - (N/M)I||_HS, evaluated on the M x M frame operator.
    """
    s = frame_operator(f)
    return hs_norm(s - f.redundancy * np.eye(f.space_dim))


def analyze(f, untf_tol=DEFAULT_UNTF_TOL):
    """
    Spectral summary of a frame.

    :param f: Frame.
    :param untf_tol: distance under which the frame counts as tight.
    :return: FrameAnalysis
    """
    is_tolerance_in_range(untf_tol)
    s = frame_operator(f)
    eigenvalues = hermitian_eig(s).eigenvalues
    distance = hs_norm(s - f.redundancy * np.eye(f.space_dim))
    return FrameAnalysis(eigenvalues=eigenvalues,
                         frame_potential=frame_potential(f),
                         distance=distance,
                         is_untf=bool(distance <= untf_tol),
                         lower_frame_bound=float(eigenvalues[0]),
                         upper_frame_bound=float(eigenvalues[-1]))


def harmonic_frame(m, n):
    """
    Harmonic frame: the first M rows of the N x N discrete Fourier transform,
    scaled by 1/sqrt(M), with entries exp(2 pi i m n / N)/sqrt(M).

    :param m: space dimension M.
    :param n: number of vectors N >= M.
    :return: complex unit norm tight Frame.
    """
    if m > n:
        raise ValueError('A harmonic frame needs M <= N (got M=%d, N=%d)' %
                         (m, n))
    rows = np.arange(m).reshape(-1, 1)
    cols = np.arange(n).reshape(1, -1)
    synthesis = np.exp(2j * np.pi * ((rows * cols) % n) / n) / np.sqrt(m)
    return Frame(synthesis, Field.COMPLEX)


def random_frame(m, n, seed, field=Field.REAL):
    """
    Random frame with independent standard Gaussian entries (numpy PCG64
    generator seeded with `seed`), normalized column by column. Complex
    entries have independent Gaussian real and imaginary parts.

    :param m: space dimension M.
    :param n: number of vectors N >= M.
    :param seed: integer seed.
    :param field: Field value.
    :return: Frame
    """
    if m > n:
        raise ValueError('A random frame needs M <= N (got M=%d, N=%d)' %
                         (m, n))
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((m, n))
    if field == Field.COMPLEX:
        raw = raw + 1j * rng.standard_normal((m, n))
    return normalize_columns(raw)


def perturb(f, magnitude, seed):
    """
    Moves every column along a random great circle by an angle drawn
    uniformly from [0, magnitude].

    :param f: Frame.
    :param magnitude: largest geodesic angle.
    :param seed: integer seed.
    :return: Frame
    """
    is_magnitude_in_range(magnitude)
    if magnitude == 0:
        return f
    rng = np.random.default_rng(seed)
    x = f.synthesis
    shape = x.shape
    directions = rng.standard_normal(shape)
    if f.field == Field.COMPLEX:
        directions = directions + 1j * rng.standard_normal(shape)
    # project onto the tangent space of each column
    coeffs = np.sum(np.conj(x) * directions, axis=0)
    directions = directions - x * coeffs
    norms = np.linalg.norm(directions, axis=0)
    # a one dimensional real sphere has no tangent directions
    norms[norms <= ZERO_COLUMN_TOL] = np.inf
    directions = directions / norms
    angles = magnitude * rng.uniform(0, 1, shape[1])
    moved = np.cos(angles) * x + np.sin(angles) * directions
    return Frame(moved / np.linalg.norm(moved, axis=0))


def nearest_tight_frame(f):
    """
    Closest tight frame with the same Hilbert-Schmidt norm, obtained from the
    polar decomposition: sqrt(N/M) (FF*)^(-1/2) F. The columns are not unit
    norm in general.

    :param f: Frame whose frame operator is invertible.
    :return: M x N matrix G with GG* = (N/M) I.
    """
    try:
        root = inverse_sqrt(frame_operator(f), RANK_TOL)
    except ValueError as e:
        raise RankDeficientError('Frame operator is rank deficient: %s' % e)
    return np.sqrt(f.redundancy) * matmul(root, f.synthesis)


def example_frame(theta):
    """
    Four vectors in R^2: (cos, sin), (cos, -sin), e_2, e_2 at angle theta.
    Its limit under frame potential descent is two copies of the standard
    basis.
    """
    c, s = np.cos(theta), np.sin(theta)
    return Frame([[c, c, 0., 0.],
                  [s, -s, 1., 1.]])


def example_tight_frame(theta):
    """
    The unit norm tight frame closest to example_frame(theta) for theta in
    [0, pi/8], at distance 4 sin(theta/4).
    """
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return Frame([[c, c, -s, s],
                  [s, -s, c, c]])


def double_angle_distance(f):
    """
    Distance from tightness of a real frame in R^2 through the double angle
    identity: ||FF* - (N/2)I|| = ||sum_n (cos 2t_n, sin 2t_n)|| / sqrt(2).
    """
    if f.space_dim != 2 or f.field != Field.REAL:
        raise ValueError('Double angle identity needs a real frame in R^2')
    angles = np.arctan2(f.synthesis[1], f.synthesis[0])
    chain = np.array([np.sum(np.cos(2 * angles)),
                      np.sum(np.sin(2 * angles))])
    return float(np.linalg.norm(chain) / np.sqrt(2))
