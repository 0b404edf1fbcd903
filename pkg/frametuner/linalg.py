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
Dense linear algebra over real and complex scalars. Matrices are numpy
arrays: float64 for the real field, complex128 for the complex field.
"""

from collections import namedtuple

import numpy as np

from .constants import HERMITIAN_TOL, Field


EigenDecomposition = namedtuple('EigenDecomposition',
                                ['eigenvalues', 'eigenvectors'])


class NotHermitianError(ValueError):
    pass


def field_of(a):
    """
    Scalar field of an array.

    :param a: numpy array.
    :return: Field.REAL or Field.COMPLEX
    """
    if np.iscomplexobj(a):
        return Field.COMPLEX
    return Field.REAL


def as_matrix(a, field=None):
    """
    Converts input into a two dimensional array of the requested field.

    :param a: array-like.
    :param field: Field value, or None to keep the field of the input.
    :return: numpy array with finite entries.
    """
    if field is None:
        field = field_of(np.asarray(a))
    dtype = np.complex128 if field == Field.COMPLEX else np.float64
    if field == Field.REAL and np.iscomplexobj(a):
        if np.any(np.imag(a) != 0):
            raise ValueError('Complex entries given for a real matrix')
        a = np.real(a)
    result = np.array(a, dtype=dtype)
    if result.ndim == 1:
        result = result.reshape(-1, 1)
    if result.ndim != 2 or 0 in result.shape:
        raise ValueError('A matrix needs two positive dimensions, got shape '
                         '%s' % (result.shape,))
    if not np.all(np.isfinite(result)):
        raise ValueError('Matrix entries must be finite')
    return result


def matmul(a, b):
    """
    Matrix product.

    :param a: rows x k matrix.
    :param b: k x cols matrix.
    :return: rows x cols matrix.
    """
    if a.shape[1] != b.shape[0]:
        msg = 'Dimension mismatch: %s x %s' % (a.shape, b.shape)
        raise ValueError(msg)
    return np.matmul(a, b)


def adjoint(a):
    """
    Conjugate transpose.
    """
    return np.conj(a).T


def hs_norm(a):
    """
    Hilbert-Schmidt (Frobenius) norm: the square root of the sum of the
    squared moduli of the entries.
    """
    return float(np.linalg.norm(a))


def hermitian_residual(a):
    """
    :param a: square matrix.
    :return: ||a - a*||_HS
    """
    return hs_norm(a - adjoint(a))


def hermitian_eig(a):
    """
    Eigendecomposition of a Hermitian matrix with eigenvalues in ascending
    order and orthonormal eigenvectors as columns. The phase of each
    eigenvector is fixed so that its largest-modulus component (lowest index
    on ties) is real and positive, which makes the result deterministic.

    :param a: square Hermitian matrix.
    :return: EigenDecomposition(eigenvalues, eigenvectors)
    """
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError('Eigendecomposition needs a square matrix, got '
                         'shape %s' % (a.shape,))
    residual = hermitian_residual(a)
    if residual > HERMITIAN_TOL * (1 + hs_norm(a)):
        raise NotHermitianError('Matrix is not Hermitian: ||A - A*|| = %g'
                                % residual)
    a = 0.5 * (a + adjoint(a))
    values, vectors = np.linalg.eigh(a)
    # largest modulus component of each column; argmax returns the first
    # index among equal moduli
    pivots = np.argmax(np.round(np.abs(vectors), 12), axis=0)
    pivot_values = vectors[pivots, np.arange(vectors.shape[1])]
    phases = pivot_values / np.abs(pivot_values)
    vectors = vectors / phases
    if not np.iscomplexobj(a):
        vectors = np.real(vectors)
    return EigenDecomposition(values, vectors)


def orthonormality_residual(v):
    """
    :param v: matrix with columns expected to be orthonormal.
    :return: ||V*V - I||_HS
    """
    return hs_norm(matmul(adjoint(v), v) - np.eye(v.shape[1]))


def inverse_sqrt(a, rank_tol):
    """
    Inverse square root of a Hermitian positive definite matrix.

    :param a: Hermitian matrix.
    :param rank_tol: smallest admissible eigenvalue.
    :return: a^(-1/2)
    """
    values, vectors = hermitian_eig(a)
    if values[0] <= rank_tol:
        msg = 'Smallest eigenvalue %g is below %g' % (values[0], rank_tol)
        raise ValueError(msg)
    return matmul(vectors * (1. / np.sqrt(values)), adjoint(vectors))
