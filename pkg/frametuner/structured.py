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
Frames with group structure on discrete M-periodic signals: synthesis filter
banks {T^(Ai) f_j} and Gabor systems {T^(Ai) E^(Bj) f}. Their frame operators
commute with the lattice unitaries, so descent only has to move the
generators.
"""

import logging

import numpy as np

from .constants import *
from .descent import DescentTrace, TraceRecord, geodesic_step, gradient
from .frame import Frame, frame_operator, frame_potential
from .linalg import matmul, hs_norm


log = logging.getLogger(__name__)


def translate(v, steps, m=None):
    """
    Cyclic translation (T^steps v)(k) = v(k - steps).

    :param v: vector of length M.
    :param steps: integer number of unit translations.
    :param m: signal length, checked against len(v) when given.
    :return: translated vector.
    """
    v = np.asarray(v)
    _check_length(v, m)
    return np.roll(v, steps)


def modulate(v, steps, m=None):
    """
    Modulation (E^steps v)(k) = exp(2 pi i steps k / M) v(k).

    :param v: complex vector of length M.
    :param steps: integer number of unit modulations.
    :param m: signal length, checked against len(v) when given.
    :return: modulated vector.
    """
    v = np.asarray(v)
    if not np.iscomplexobj(v):
        raise ValueError('Modulation needs a complex vector')
    _check_length(v, m)
    size = len(v)
    k = np.arange(size)
    return np.exp(2j * np.pi * ((steps * k) % size) / size) * v


def _check_length(v, m):
    if m is not None and len(v) != m:
        raise ValueError('Vector length %d does not match M=%d' %
                         (len(v), m))


def _unit(v, name):
    dtype = np.complex128 if np.iscomplexobj(v) else np.float64
    v = np.array(v, dtype=dtype).ravel()
    norm = np.linalg.norm(v)
    if abs(norm - 1) > UNIT_NORM_TOL:
        raise ValueError('%s is not unit norm (norm %.17g)' % (name, norm))
    v.flags.writeable = False
    return v


class FilterBank(object):
    """
    Synthesis filter bank: translates T^(Ai) f_j, i = 0..C-1, of unit norm
    generators f_j in C^M (or R^M), where M = AC.
    """
    def __init__(self, m, a, generators):
        """
        :param m: signal length M.
        :param a: translation step A dividing M.
        :param generators: sequence of unit vectors of length M.
        """
        is_lattice_valid(m, a)
        self.m = m
        self.a = a
        self.c = m // a
        self.generators = tuple(_unit(g, 'Generator %d' % j)
                                for j, g in enumerate(generators))
        if not self.generators:
            raise ValueError('A filter bank needs at least one generator')
        for g in self.generators:
            _check_length(g, m)

    @property
    def count(self):
        return self.c * len(self.generators)

    def unitaries(self):
        """
        Lattice operators T^(Ai) as M x M matrices, i = 0..C-1.
        """
        eye = np.eye(self.m)
        return [np.roll(eye, self.a * i, axis=0) for i in range(self.c)]

    def with_generators(self, generators):
        return FilterBank(self.m, self.a, generators)

    def orbit(self, j):
        """
        Columns generated by the j-th generator, translation index ascending.
        """
        g = self.generators[j]
        return [translate(g, self.a * i) for i in range(self.c)]

    def __repr__(self):
        return 'FilterBank(M=%d, A=%d, generators=%d)' % (
            self.m, self.a, len(self.generators))


class GaborSystem(object):
    """
    Gabor system T^(Ai) E^(Bj) f, i = 0..C-1, j = 0..D-1, of one unit norm
    generator f in C^M, where M = AC = BD.
    """
    def __init__(self, m, a, b, generator):
        """
        :param m: signal length M.
        :param a: translation step A dividing M.
        :param b: modulation step B dividing M.
        :param generator: complex unit vector of length M.
        """
        is_lattice_valid(m, [a, b])
        self.m = m
        self.a = a
        self.b = b
        self.c = m // a
        self.d = m // b
        generator = np.asarray(generator)
        if not np.iscomplexobj(generator):
            raise ValueError('Gabor systems need a complex generator')
        self.generator = _unit(generator, 'Generator')
        _check_length(self.generator, m)

    @property
    def generators(self):
        return (self.generator,)

    @property
    def count(self):
        return self.c * self.d

    def unitaries(self):
        """
        Lattice operators T^(Ai) E^(Bj) as M x M matrices, (i, j)
        lexicographic.
        """
        eye = np.eye(self.m, dtype=np.complex128)
        result = []
        for i in range(self.c):
            for j in range(self.d):
                columns = [translate(modulate(eye[:, k], self.b * j),
                                     self.a * i) for k in range(self.m)]
                result.append(np.array(columns).T)
        return result

    def with_generators(self, generators):
        generator, = generators
        return GaborSystem(self.m, self.a, self.b, generator)

    def orbit(self, j=0):
        """
        Columns of the system, (i, j) lexicographic.
        """
        return [translate(modulate(self.generator, self.b * k), self.a * i)
                for i in range(self.c) for k in range(self.d)]

    def __repr__(self):
        return 'GaborSystem(M=%d, A=%d, B=%d)' % (self.m, self.a, self.b)


def synthesize(system):
    """
    Frame of a filter bank (translation index outer, generator inner) or of a
    Gabor system ((i, j) lexicographic).

    :param system: FilterBank or GaborSystem.
    :return: Frame with N = system.count columns.
    """
    if isinstance(system, GaborSystem):
        columns = system.orbit()
    else:
        columns = []
        for i in range(system.c):
            for g in system.generators:
                columns.append(translate(g, system.a * i))
    return Frame(np.array(columns).T)


def commutation_residual(f, unitaries):
    """
    Largest ||FF* U - U FF*||_HS over the given unitaries.

    :param f: Frame.
    :param unitaries: sequence of M x M matrices.
    :return: float
    """
    s = frame_operator(f)
    return max(hs_norm(matmul(s, u) - matmul(u, s)) for u in unitaries)


def commutation_check(system):
    """
    Checks that the frame operator of the synthesized system commutes with
    every lattice unitary.

    :param system: FilterBank or GaborSystem.
    :return: (passed, largest violation)
    """
    violation = commutation_residual(synthesize(system), system.unitaries())
    return violation <= COMMUTATION_TOL, violation


def _orbit_frame_operator_apply(system, v):
    # FF* v = sum over the orbit of <v, u> u
    result = np.zeros(system.m, dtype=np.result_type(v, np.complex128))
    for j in range(len(system.generators)):
        for u in system.orbit(j):
            result = result + np.vdot(u, v) * u
    if not np.iscomplexobj(v) and not any(np.iscomplexobj(g)
                                          for g in system.generators):
        result = np.real(result)
    return result


def structured_gradient(system):
    """
    Projected gradient of each generator, g = FF*f - <FF*f, f> f, with FF*f
    evaluated as the orbit sum of <f, U f'> U f' instead of through the
    synthesis matrix.

    :param system: FilterBank or GaborSystem.
    :return: list of gradient vectors, one per generator.
    """
    result = []
    for f in system.generators:
        sf = _orbit_frame_operator_apply(system, f)
        result.append(sf - np.real(np.vdot(f, sf)) * f)
    return result


def structured_step(system, t):
    """
    Moves every generator along its great circle. The synthesized frame of
    the result equals one full frame descent step of the synthesized frame.

    :param system: FilterBank or GaborSystem.
    :param t: step in (0, 1/(2N)), N the orbit size.
    :return: system of the same type.
    """
    is_step_in_range(t, system.count)
    return _step(system, structured_gradient(system), t)


def _step(system, gradients, t):
    generators = []
    for f, g in zip(system.generators, gradients):
        norm = np.linalg.norm(g)
        if norm > 0:
            f = np.cos(norm * t) * f - np.sin(norm * t) * g / norm
            f = f / np.linalg.norm(f)
        generators.append(f)
    return system.with_generators(generators)


def orbit_equality_residual(system, t):
    """
    Largest entrywise difference between synthesizing after a structured
    step and taking a full frame step after synthesizing.
    """
    full = synthesize(system)
    expected = geodesic_step(full, gradient(full), t)
    stepped = synthesize(structured_step(system, t))
    return float(np.max(np.abs(stepped.synthesis - expected.synthesis)))


def run(system, cfg):
    """
    Structured descent: iterates structured_step until the synthesized frame
    is tight, the generator gradients vanish or the budget is spent.

    :param system: FilterBank or GaborSystem.
    :param cfg: DescentConfig.
    :return: (final system, DescentTrace of the synthesized frames)
    """
    t = cfg.step_for(system.count)
    trace = DescentTrace(cfg.trace_limit, cfg.record_trace)
    f0 = synthesize(system)
    log.info('Structured descent start: %r, N=%d, t=%g' %
             (system, system.count, t))
    k = 0
    while True:
        f = synthesize(system)
        s = frame_operator(f)
        distance = hs_norm(s - f.redundancy * np.eye(f.space_dim))
        gradients = structured_gradient(system)
        # every orbit vector carries the norm of its generator's gradient
        sq_norm = system.c * sum(float(np.sum(np.abs(g) ** 2))
                                 for g in gradients)
        if isinstance(system, GaborSystem):
            sq_norm *= system.d
        record = TraceRecord(k, frame_potential(f), distance, sq_norm,
                             hs_norm(f.synthesis - f0.synthesis))
        trace.add(record)
        reason = None
        if distance <= cfg.untf_tol:
            reason = TerminationReason.TOLERANCE
        elif sq_norm <= cfg.gradient_tol ** 2:
            reason = TerminationReason.GRADIENT_VANISHED
        elif k >= cfg.max_iter:
            reason = TerminationReason.BUDGET
        if reason is not None:
            trace.add(record, force=True)
            trace.reason = reason
            break
        system = _step(system, gradients, t)
        k += 1
    log.info('Structured descent stop after %d iterations: %s' %
             (k, trace.reason))
    return system, trace
