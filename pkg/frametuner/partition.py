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
Orthogonal partitionability. A frame is epsilon-orthogonally partitionable
(epsilon-OP) when its indices split into two nonempty blocks I, J with
|<f_i, f_j>| < epsilon for every i in I and j in J.
"""

import itertools
import logging
from collections import namedtuple

import numpy as np

from .constants import *
from .frame import Frame, gram_matrix
from .linalg import matmul, adjoint, hermitian_eig, hs_norm


log = logging.getLogger(__name__)


JumpResult = namedtuple('JumpResult', ['op_frame', 'partition',
                                       'displacement', 'sub_dims',
                                       'basis_i', 'basis_j', 'bound'])


class JumpError(RuntimeError):
    pass


class Partition(object):
    """
    Nontrivial split of the column indices {0..N-1} into two blocks, with the
    largest modulus of a cross inner product (the bottleneck).
    """
    def __init__(self, block_i, block_j, bottleneck):
        self.block_i = tuple(sorted(block_i))
        self.block_j = tuple(sorted(block_j))
        if not self.block_i or not self.block_j:
            raise ValueError('Both blocks of a partition must be nonempty')
        if set(self.block_i) & set(self.block_j):
            raise ValueError('Partition blocks must be disjoint')
        self.bottleneck = float(bottleneck)

    @classmethod
    def from_frame(cls, f, block_i, block_j):
        """
        Builds a partition measuring its bottleneck on a frame.
        """
        block_i, block_j = list(block_i), list(block_j)
        if sorted(block_i + block_j) != list(range(f.count)):
            raise ValueError('Partition blocks must cover 0..%d' %
                             (f.count - 1))
        weights = np.abs(gram_matrix(f))
        return cls(block_i, block_j, _bottleneck(weights, block_i, block_j))

    def swapped(self):
        return Partition(self.block_j, self.block_i, self.bottleneck)

    def to_dict(self):
        return {'I': list(self.block_i), 'J': list(self.block_j),
                'bottleneck': self.bottleneck}

    def __eq__(self, other):
        return (isinstance(other, Partition) and
                {self.block_i, self.block_j} ==
                {other.block_i, other.block_j})

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(frozenset([self.block_i, self.block_j]))

    def __repr__(self):
        return 'Partition(I=%s, J=%s, bottleneck=%.6g)' % (
            list(self.block_i), list(self.block_j), self.bottleneck)


class UnionFind(object):
    """
    Disjoint-set forest over the integers 0..n-1 with path compression and
    union by size.
    """
    def __init__(self, n):
        self.parents = list(range(n))
        self.sizes = [1] * n
        self.components = n

    def __getitem__(self, item):
        path = [item]
        root = self.parents[item]
        while root != path[-1]:
            path.append(root)
            root = self.parents[root]
        for node in path:
            self.parents[node] = root
        return root

    def union(self, a, b):
        """
        :return: True when a and b were in different sets.
        """
        ra, rb = self[a], self[b]
        if ra == rb:
            return False
        if self.sizes[ra] < self.sizes[rb]:
            ra, rb = rb, ra
        self.parents[rb] = ra
        self.sizes[ra] += self.sizes[rb]
        self.components -= 1
        return True

    def to_sets(self):
        groups = {}
        for item in range(len(self.parents)):
            groups.setdefault(self[item], []).append(item)
        return sorted(groups.values())


def _bottleneck(weights, block_i, block_j):
    return float(np.max(weights[np.ix_(list(block_i), list(block_j))]))


def op_threshold(f):
    """
    Smallest bottleneck over all nontrivial partitions, tau(F). The frame is
    epsilon-OP exactly when tau(F) < epsilon. Edges of the complete graph
    weighted by |<f_i, f_j>| are merged in descending weight order (ties in
    ascending (i, j) order); the edge joining the last two components has
    weight tau, and those two components form an optimal partition.

    :param f: Frame with N >= 2.
    :return: (tau, Partition)
    """
    n = f.count
    if n < 2:
        raise ValueError('Partitions need at least two vectors (N=%d)' % n)
    weights = np.abs(gram_matrix(f))
    edges = sorted(((-weights[i, j], i, j)
                    for i in range(n) for j in range(i + 1, n)))
    components = UnionFind(n)
    for negative, i, j in edges:
        if components.components == 2 and components[i] != components[j]:
            block_i, block_j = components.to_sets()
            return -negative, Partition(block_i, block_j, -negative)
        components.union(i, j)
    # n == 2 never merges before the check above
    raise AssertionError('Union-find ended without a final merge')


def brute_force_op_threshold(f):
    """
    Exhaustive minimum of the bottleneck over all 2^(N-1) - 1 nontrivial
    partitions.

    :param f: Frame with 2 <= N <= 16.
    :return: (tau, Partition)
    """
    n = f.count
    if n < 2:
        raise ValueError('Partitions need at least two vectors (N=%d)' % n)
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError('Exhaustive search limited to N <= %d (N=%d)' %
                         (BRUTE_FORCE_MAX_N, n))
    weights = np.abs(gram_matrix(f))
    best = None
    others = range(1, n)
    for size in range(0, n - 1):
        for rest in itertools.combinations(others, size):
            block_i = [0] + list(rest)
            block_j = [k for k in others if k not in rest]
            value = _bottleneck(weights, block_i, block_j)
            if best is None or value < best[0]:
                best = (value, block_i, block_j)
    value, block_i, block_j = best
    return value, Partition(block_i, block_j, value)


def is_epsilon_op(f, epsilon):
    """
    :param f: Frame.
    :param epsilon: threshold > 0.
    :return: a Partition with bottleneck < epsilon, or None.
    """
    is_epsilon_in_range(epsilon)
    if f.count < 2:
        return None
    tau, partition = op_threshold(f)
    if tau < epsilon:
        return partition
    return None


def jump_threshold(m, n, epsilon):
    """
    Eigenvalue cut lambda' = (2N/3) (epsilon^2/M)^(1/3) of the jump.
    """
    return (2. * n / 3.) * (epsilon ** 2 / m) ** (1. / 3)


def jump_bound(m, n, epsilon):
    """
    Guaranteed jump distance sqrt(2N) (M epsilon)^(1/3).
    """
    return np.sqrt(2. * n) * (m * epsilon) ** (1. / 3)


def _project_block(x, projector, fallback):
    projected = matmul(projector, x)
    norms = np.linalg.norm(projected, axis=0)
    degenerate = norms <= RANK_TOL
    if np.any(degenerate):
        log.debug('Projection vanished for %d vectors, using the leading '
                  'eigenvector' % np.count_nonzero(degenerate))
    projected[:, degenerate] = fallback.reshape(-1, 1)
    norms[degenerate] = 1.
    return projected / norms


def jump_to_op(f, epsilon, partition):
    """
    Jumps from an epsilon-OP frame to a nearby frame which is exactly
    orthogonally partitionable across the same partition. With the larger
    block I, the eigenvectors of F_I F_I* whose eigenvalues reach lambda'
    span the range of a projection P; vectors of I are replaced by
    Pf/||Pf|| and vectors of J by (I-P)f/||(I-P)f||.

    :param f: Frame.
    :param epsilon: threshold in (0, 1/(2M)].
    :param partition: Partition with bottleneck below epsilon.
    :return: JumpResult, with the partition oriented so that |I| >= |J|.
    """
    m, n = f.space_dim, f.count
    is_jump_epsilon_in_range(epsilon, m)
    # measured on f, whatever the caller recorded
    partition = Partition.from_frame(f, partition.block_i, partition.block_j)
    if partition.bottleneck >= epsilon:
        msg = ('Partition bottleneck %.6g is not below epsilon %.6g' %
               (partition.bottleneck, epsilon))
        raise JumpError(msg)
    if len(partition.block_i) < len(partition.block_j):
        partition = partition.swapped()
    block_i, block_j = list(partition.block_i), list(partition.block_j)

    x = f.synthesis
    x_i = x[:, block_i]
    values, vectors = hermitian_eig(matmul(x_i, adjoint(x_i)))
    # descending order
    values, vectors = values[::-1], vectors[:, ::-1]
    cut = jump_threshold(m, n, epsilon)
    m_i = int(np.count_nonzero(values >= cut))
    if m_i == 0 or m_i == m:
        msg = ('Jump needs 0 < M_I < M, got M_I=%d (cut %.6g, eigenvalues '
               '%s)' % (m_i, cut, values))
        raise JumpError(msg)
    basis_i, basis_j = vectors[:, :m_i], vectors[:, m_i:]
    projector = matmul(basis_i, adjoint(basis_i))
    complement = np.eye(m) - projector

    jumped = np.array(x)
    jumped[:, block_i] = _project_block(x[:, block_i], projector,
                                        basis_i[:, 0])
    jumped[:, block_j] = _project_block(x[:, block_j], complement,
                                        basis_j[:, 0])
    op_frame = Frame(jumped, f.field)

    cross = np.abs(gram_matrix(op_frame))[np.ix_(block_i, block_j)]
    displacement = hs_norm(jumped - x)
    bound = jump_bound(m, n, epsilon)
    log.info('Jump: |I|=%d |J|=%d M_I=%d displacement %.3e (bound %.3e)' %
             (len(block_i), len(block_j), m_i, displacement, bound))
    if np.max(cross) > OP_EXACT_TOL:
        log.warning('Jumped frame has cross inner product %.3e' %
                    np.max(cross))
    if displacement > bound:
        log.warning('Jump displacement %.6g exceeds its bound %.6g' %
                    (displacement, bound))
    return JumpResult(op_frame=op_frame,
                      partition=Partition(block_i, block_j, np.max(cross)),
                      displacement=displacement,
                      sub_dims=(m_i, m - m_i),
                      basis_i=basis_i,
                      basis_j=basis_j,
                      bound=bound)
