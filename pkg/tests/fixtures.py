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
Frames with known answers shared by the test cases.
"""

import numpy as np

from frametuner.frame import (Frame, example_frame, harmonic_frame, perturb)


GOLDEN_THETAS = [0.1, 0.3, np.pi / 6, 0.7]

COPRIME_SIZES = [(2, 3), (2, 5), (3, 4), (3, 5), (4, 7)]


def example_distance(theta):
    """
    Distance from tightness of example_frame(theta): sqrt(8) sin^2(theta).
    """
    return np.sqrt(8.) * np.sin(theta) ** 2


def example_grad_sq_norm(theta):
    """
    Gradient squared norm of example_frame(theta): 32 sin^6 cos^2.
    """
    return 32. * np.sin(theta) ** 6 * np.cos(theta) ** 2


def example_next_theta(theta, t):
    """
    Angle of the example frame after one descent step of size t.
    """
    return theta - 4 * t * np.cos(theta) * np.sin(theta) ** 3


def split_limit():
    """
    {e1, e1, e2, e2}, the limit of descent started at example_frame.
    """
    return Frame([[1., 1., 0., 0.],
                  [0., 0., 1., 1.]])


def perturbed_harmonic(m, n, magnitude, seed):
    return perturb(harmonic_frame(m, n), magnitude, seed)


def random_unitary(m, seed):
    """
    Haar distributed unitary from the QR decomposition of a complex Gaussian
    matrix.
    """
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(m, seed, complex_field=True):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((m, m))
    if complex_field:
        a = a + 1j * rng.standard_normal((m, m))
    return 0.5 * (a + np.conj(a).T)


def op_frame(seed, m=3, n=7):
    """
    Random exactly orthogonally partitionable real frame: the first block
    lives in span(e1, e2), the second on e3.
    """
    rng = np.random.default_rng(seed)
    k = int(rng.integers(2, n))
    block_i = rng.standard_normal((m - 1, k))
    x = np.zeros((m, n))
    x[:m - 1, :k] = block_i / np.linalg.norm(block_i, axis=0)
    x[m - 1, k:] = np.where(rng.uniform(size=n - k) < 0.5, -1., 1.)
    return Frame(x), list(range(k)), list(range(k, n))


__all__ = ['GOLDEN_THETAS', 'COPRIME_SIZES', 'example_distance',
           'example_grad_sq_norm', 'example_next_theta', 'split_limit',
           'perturbed_harmonic', 'random_unitary', 'random_hermitian',
           'op_frame', 'example_frame']
