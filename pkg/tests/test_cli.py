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


import contextlib
import io
import json
import math
import os
import shutil
import tempfile
import unittest

import numpy as np

from frametuner.cli import main
from frametuner.constants import ExitCode, Outcome, TerminationReason
from frametuner.fileio import read_frame, write_frame, write_system
from frametuner.structured import GaborSystem

from .fixtures import example_frame


class TestCommandLine(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def path(self, name):
        return os.path.join(self.tmp, name)

    def call(self, *argv):
        out = io.StringIO()
        err = io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue()

    def test_make_harmonic_and_analyze(self):
        code, _ = self.call('make', 'harmonic', '--M', '2', '--N', '5',
                            '--output', self.path('h.json'))
        self.assertEqual(code, ExitCode.SUCCESS)
        code, out = self.call('analyze', '--input', self.path('h.json'))
        self.assertEqual(code, ExitCode.SUCCESS)
        self.assertIn('UNTF: yes', out)
        self.assertIn('gcd(M, N): 1', out)

    def test_make_random_is_deterministic(self):
        for name in ('a.json', 'b.json'):
            self.call('make', 'random', '--M', '3', '--N', '7', '--seed',
                      '42', '--output', self.path(name))
        with open(self.path('a.json')) as fd:
            first = fd.read()
        with open(self.path('b.json')) as fd:
            self.assertEqual(fd.read(), first)

    def test_make_example(self):
        code, _ = self.call('make', 'example_theta', '--theta', '0.5236',
                            '--output', self.path('e.json'),
                            '--tilde', self.path('t.json'))
        self.assertEqual(code, ExitCode.SUCCESS)
        f = read_frame(self.path('e.json'))
        c, s = math.cos(0.5236), math.sin(0.5236)
        np.testing.assert_allclose(f.synthesis, [[c, c, 0, 0],
                                                 [s, -s, 1, 1]])
        tilde = read_frame(self.path('t.json'))
        self.assertEqual(tilde.count, 4)
        code, _ = self.call('make', 'example_theta',
                            '--output', self.path('x.json'))
        self.assertEqual(code, ExitCode.INPUT_ERROR)

    def test_analyze_distance(self):
        write_frame(example_frame(math.pi / 6), self.path('f.json'))
        code, out = self.call('analyze', '--input', self.path('f.json'))
        self.assertEqual(code, ExitCode.SUCCESS)
        self.assertIn('distance: 7.0711e-01', out)
        self.assertIn('UNTF: no', out)
        self.assertTrue('I=[0, 1] J=[2, 3]' in out or
                        'I=[2, 3] J=[0, 1]' in out)

    def test_input_errors(self):
        write_frame(example_frame(0.3), self.path('f.json'))
        with open(self.path('f.json')) as fd:
            text = fd.read()
        with open(self.path('t.json'), 'w') as fd:
            fd.write(text[:20])
        code, _ = self.call('analyze', '--input', self.path('t.json'))
        self.assertEqual(code, ExitCode.INPUT_ERROR)
        code, _ = self.call('analyze', '--input', self.path('none.json'))
        self.assertEqual(code, ExitCode.INPUT_ERROR)
        code, _ = self.call('frobnicate')
        self.assertEqual(code, ExitCode.INPUT_ERROR)
        code, _ = self.call('tune', '--input', self.path('f.json'),
                            '--step', '0.5')
        self.assertEqual(code, ExitCode.INPUT_ERROR)

    def test_not_unit_norm(self):
        data = {'field': 'real', 'rows': 2, 'cols': 2,
                'columns': [[3., 4.], [0., 2.]]}
        with open(self.path('f.json'), 'w') as fd:
            json.dump(data, fd)
        code, _ = self.call('analyze', '--input', self.path('f.json'))
        self.assertEqual(code, ExitCode.INVARIANT_VIOLATION)
        code, out = self.call('analyze', '--input', self.path('f.json'),
                              '--normalize')
        self.assertEqual(code, ExitCode.SUCCESS)
        self.assertIn('N: 2', out)

    def test_tune_example(self):
        write_frame(example_frame(0.3), self.path('f.json'))
        code, out = self.call('tune', '--input', self.path('f.json'),
                              '--output', self.path('g.json'),
                              '--report', self.path('r.json'),
                              '--trace', self.path('trace.csv'))
        self.assertEqual(code, ExitCode.SUCCESS)
        self.assertIn('outcome: op-split', out)
        self.assertIn(Outcome.outcome_txt[Outcome.OP_SPLIT], out)
        g = read_frame(self.path('g.json'))
        np.testing.assert_allclose(np.abs(g.synthesis),
                                   [[1, 1, 0, 0], [0, 0, 1, 1]], atol=1e-8)
        with open(self.path('r.json')) as fd:
            report = json.load(fd)
        for key in ('outcome', 'iterations', 'initial_distance',
                    'final_distance', 'displacement', 'bounds', 'epsilon',
                    'partition', 'children'):
            self.assertIn(key, report)
        self.assertEqual(len(report['children']), 2)
        for name in ('trace.csv', 'trace.I.csv', 'trace.J.csv'):
            self.assertTrue(os.path.exists(self.path(name)), name)

    def test_tune_perturbed_harmonic(self):
        self.call('make', 'harmonic', '--M', '2', '--N', '5', '--perturb',
                  '0.02', '--seed', '3', '--output', self.path('p.json'))
        code, out = self.call('tune', '--input', self.path('p.json'),
                              '--output', self.path('q.json'))
        self.assertEqual(code, ExitCode.SUCCESS)
        self.assertIn('outcome: untf', out)
        self.assertIn(TerminationReason.reason_txt[
            TerminationReason.TOLERANCE], out)
        code, out = self.call('analyze', '--input', self.path('q.json'))
        self.assertIn('UNTF: yes', out)

    def test_gabor_tune(self):
        data = {'M': 6, 'A': 4, 'B': 2, 'field': 'complex',
                'generator': [[1., 0.]] + [[0., 0.]] * 5}
        with open(self.path('bad.json'), 'w') as fd:
            json.dump(data, fd)
        code, _ = self.call('gabor-tune', '--input', self.path('bad.json'))
        self.assertEqual(code, ExitCode.INPUT_ERROR)

        tight = GaborSystem(4, 1, 1, np.array([1, 0, 0, 0], dtype=complex))
        write_system(tight, self.path('tight.json'))
        code, out = self.call('gabor-tune', '--input',
                              self.path('tight.json'),
                              '--report', self.path('r.json'))
        self.assertEqual(code, ExitCode.SUCCESS)
        self.assertIn('iterations: 0', out)
        with open(self.path('r.json')) as fd:
            report = json.load(fd)
        self.assertEqual(report['N'], 16)
        self.assertTrue(report['commutes'])

        rng = np.random.default_rng(5)
        g = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        write_system(GaborSystem(6, 2, 3, g / np.linalg.norm(g)),
                     self.path('g.json'))
        code, out = self.call('gabor-tune', '--input', self.path('g.json'),
                              '--output', self.path('tuned.json'),
                              '--report', self.path('r.json'))
        with open(self.path('r.json')) as fd:
            report = json.load(fd)
        # a stall is only acceptable at a critical point
        if report['reason'] == 'tolerance':
            self.assertEqual(code, ExitCode.SUCCESS)
            self.assertLessEqual(report['final_distance'], 1e-8)
        else:
            self.assertEqual(report['reason'], 'gradient-vanished')
            self.assertEqual(code, ExitCode.STALLED)
        self.assertLessEqual(report['orbit_equality_residual'], 1e-9)

    def test_step(self):
        write_frame(example_frame(0.7), self.path('f.json'))
        code, out = self.call('step', '--input', self.path('f.json'),
                              '--output', self.path('g.json'))
        self.assertEqual(code, ExitCode.SUCCESS)
        self.assertIn('step: 0.0625', out)
        g = read_frame(self.path('g.json'))
        theta = 0.7 - 4 * 0.0625 * math.cos(0.7) * math.sin(0.7) ** 3
        self.assertAlmostEqual(g.synthesis[1, 0], math.sin(theta), places=12)


if __name__ == '__main__':
    unittest.main(verbosity=2)
