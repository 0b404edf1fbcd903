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


import unittest

import numpy as np

from frametuner.constants import Field
from frametuner.frame import *
from frametuner.linalg import hs_norm, matmul, adjoint

from .fixtures import *


class TestFrame(unittest.TestCase):

    def test_properties(self):
        f = example_frame(0.3)
        self.assertEqual((f.space_dim, f.count, len(f)), (2, 4, 4))
        self.assertEqual(f.field, Field.REAL)
        self.assertEqual(f.redundancy, 2.)
        np.testing.assert_array_equal(f.column(2), [0., 1.])
        self.assertEqual(f.subframe([3, 0]).count, 2)

    def test_read_only(self):
        f = example_frame(0.3)
        with self.assertRaises(ValueError):
            f.synthesis[0, 0] = 2.

    def test_unit_norm_error(self):
        with self.assertRaises(UnitNormError) as context:
            Frame([[1., 2.], [0., 0.]])
        self.assertIn('Column 1', str(context.exception))

    def test_normalize_columns(self):
        f = normalize_columns([[3., 0.], [4., 2.]])
        np.testing.assert_allclose(f.synthesis, [[0.6, 0.], [0.8, 1.]])
        with self.assertRaises(ValueError):
            normalize_columns([[1., 0.], [0., 0.]])


class TestPotential(unittest.TestCase):

    def test_orthonormal_basis(self):
        f = Frame(np.eye(3))
        self.assertAlmostEqual(frame_potential(f), 3.)
        self.assertAlmostEqual(distance_from_tightness(f), 0.)

    def test_repeated_vector(self):
        f = Frame([[1., 1.], [0., 0.]])
        self.assertAlmostEqual(frame_potential(f), 4.)
        self.assertAlmostEqual(distance_from_tightness(f), np.sqrt(2.))

    def test_distance_identity(self):
        for seed in range(20):
            m = 2 + seed % 3
            f = random_frame(m, m + 1 + seed % 4, seed,
                             Field.COMPLEX if seed % 2 else Field.REAL)
            n = f.count
            d = distance_from_tightness(f)
            fp = frame_potential(f)
            self.assertAlmostEqual(d ** 2, fp - float(n) ** 2 / m,
                                   delta=1e-10 * fp)
            self.assertGreaterEqual(fp, float(n) ** 2 / m - 1e-10)

    def test_gram_consistency(self):
        f = random_frame(3, 5, 4, Field.COMPLEX)
        s = frame_operator(f)
        self.assertAlmostEqual(hs_norm(gram_matrix(f)), hs_norm(s),
                               delta=1e-12)
        self.assertAlmostEqual(np.real(np.trace(s)), 5., delta=1e-12)

    def test_example_distance(self):
        for theta in GOLDEN_THETAS:
            f = example_frame(theta)
            self.assertAlmostEqual(distance_from_tightness(f),
                                   example_distance(theta), delta=1e-14)
            self.assertAlmostEqual(double_angle_distance(f),
                                   example_distance(theta), delta=1e-14)
        self.assertAlmostEqual(distance_from_tightness(
            example_frame(np.pi / 6)), 0.70710678118654757, delta=1e-12)

    def test_double_angle_oracle(self):
        for seed in range(10):
            f = random_frame(2, 3 + seed, seed)
            self.assertAlmostEqual(double_angle_distance(f),
                                   distance_from_tightness(f), delta=1e-12)
        with self.assertRaises(ValueError):
            double_angle_distance(harmonic_frame(2, 3))

    def test_unitary_invariance(self):
        f = random_frame(3, 6, 9, Field.COMPLEX)
        u = random_unitary(3, 10)
        g = Frame(matmul(u, f.synthesis))
        self.assertAlmostEqual(frame_potential(g), frame_potential(f),
                               delta=1e-12)
        self.assertAlmostEqual(distance_from_tightness(g),
                               distance_from_tightness(f), delta=1e-12)


class TestAnalyze(unittest.TestCase):

    def test_harmonic_is_untf(self):
        for m, n in [(2, 3), (2, 5), (3, 4), (4, 7)]:
            result = analyze(harmonic_frame(m, n))
            self.assertTrue(result.is_untf)
            self.assertLessEqual(result.distance, 1e-12)
            np.testing.assert_allclose(result.eigenvalues,
                                       np.full(m, float(n) / m), atol=1e-12)

    def test_bounds(self):
        result = analyze(example_frame(0.3))
        c2, s2 = np.cos(0.3) ** 2, np.sin(0.3) ** 2
        self.assertAlmostEqual(result.lower_frame_bound, 2 * c2)
        self.assertAlmostEqual(result.upper_frame_bound, 2 + 2 * s2)
        self.assertFalse(result.is_untf)


class TestBuilders(unittest.TestCase):

    def test_harmonic_entries(self):
        f = harmonic_frame(2, 3)
        self.assertEqual(f.field, Field.COMPLEX)
        np.testing.assert_allclose(f.synthesis[0], np.ones(3) / np.sqrt(2))
        self.assertAlmostEqual(f.synthesis[1, 1],
                               np.exp(2j * np.pi / 3) / np.sqrt(2))
        with self.assertRaises(ValueError):
            harmonic_frame(4, 3)

    def test_random_deterministic(self):
        a = random_frame(3, 7, 42)
        b = random_frame(3, 7, 42)
        self.assertEqual(a.synthesis.tobytes(), b.synthesis.tobytes())
        self.assertNotEqual(a.synthesis.tobytes(),
                            random_frame(3, 7, 43).synthesis.tobytes())

    def test_perturb(self):
        f = harmonic_frame(3, 5)
        g = perturb(f, 0.01, 1)
        self.assertIs(perturb(f, 0., 1), f)
        moved = np.linalg.norm(g.synthesis - f.synthesis, axis=0)
        self.assertTrue(np.all(moved <= 2 * np.sin(0.005) + 1e-12))
        self.assertGreater(distance_from_tightness(g), 0.)
        with self.assertRaises(ValueError):
            perturb(f, -1., 1)


class TestNearestTightFrame(unittest.TestCase):

    def test_tight(self):
        f = random_frame(3, 6, 5, Field.COMPLEX)
        g = nearest_tight_frame(f)
        np.testing.assert_allclose(matmul(g, adjoint(g)), 2 * np.eye(3),
                                   atol=1e-12)
        self.assertAlmostEqual(hs_norm(g) ** 2, 6., delta=1e-12)

    def test_lower_bound(self):
        # no unit norm tight frame is closer than the nearest tight frame
        for theta in [0.05, 0.2, np.pi / 8]:
            f = example_frame(theta)
            closest = hs_norm(nearest_tight_frame(f) - f.synthesis)
            witness = hs_norm(example_tight_frame(theta).synthesis -
                              f.synthesis)
            self.assertLessEqual(closest, witness + 1e-12)

    def test_rank_deficient(self):
        with self.assertRaises(RankDeficientError):
            nearest_tight_frame(Frame([[1., 1.], [0., 0.]]))


class TestExampleFamily(unittest.TestCase):

    def test_tight_partner(self):
        for theta in [0., 0.1, 0.3, np.pi / 8]:
            tilde = example_tight_frame(theta)
            self.assertLessEqual(distance_from_tightness(tilde), 1e-14)
            gap = hs_norm(tilde.synthesis - example_frame(theta).synthesis)
            self.assertAlmostEqual(gap, 4 * np.sin(theta / 4), delta=1e-14)

    def test_square_root_rate(self):
        # displacement to the tight partner scales like the square root of
        # the distance from tightness
        for theta in [1e-2, 1e-3, 1e-4]:
            f = example_frame(theta)
            gap = hs_norm(example_tight_frame(theta).synthesis - f.synthesis)
            ratio = gap / np.sqrt(distance_from_tightness(f))
            self.assertAlmostEqual(ratio, 1. / 8 ** 0.25, delta=1e-3)


if __name__ == '__main__':
    unittest.main(verbosity=2)
