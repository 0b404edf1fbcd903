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
File formats: frames and generator configurations as JSON, descent traces as
CSV, tuning reports as JSON.

A frame file is a JSON object {"field", "rows", "cols", "columns"} with the
columns listed outermost. Real entries are numbers, complex entries are
[re, im] pairs. Floats are written with the shortest representation that
reads back to the same double.
"""

import functools
import json
import logging

import numpy as np
import pandas as pd

from .constants import *
from .frame import Frame, UnitNormError, normalize_columns
from .structured import FilterBank, GaborSystem


log = logging.getLogger(__name__)

TRACE_HEADER = ['iter', 'frame_potential', 'distance', 'grad_sq_norm',
                'displacement']


class FrameFormatError(ValueError):
    pass


def format_error_handler(f):
    """
    Error handling function (decorator).

    :param f: target parsing function.
    :return: decorated function raising FrameFormatError on malformed input.
    """
    @functools.wraps(f)
    def new_func(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (FrameFormatError, UnitNormError):
            raise
        except KeyError as e:
            raise FrameFormatError('Missing field %s' % e)
        except Exception as e:
            msg = 'Malformed frame data in %s: %s' % (f.__name__, e)
            raise FrameFormatError(msg)
    return new_func


def _encode_entry(z, field):
    if field == Field.COMPLEX:
        return [float(z.real), float(z.imag)]
    return float(z)


def _decode_entry(value, field, where):
    if field == Field.COMPLEX:
        if not isinstance(value, list) or len(value) != 2:
            raise FrameFormatError('Field "columns": entry %s must be a '
                                   '[re, im] pair' % where)
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (list, dict, str)) or value is None:
        raise FrameFormatError('Field "columns": entry %s must be a number'
                               % where)
    return float(value)


def _columns_to_list(synthesis, field):
    return [[_encode_entry(z, field) for z in column]
            for column in synthesis.T]


def _columns_from_list(columns, rows, field):
    if not isinstance(columns, list):
        raise FrameFormatError('Field "columns" must be a list')
    decoded = []
    for n, column in enumerate(columns):
        if not isinstance(column, list) or len(column) != rows:
            raise FrameFormatError('Field "columns": column %d must have %d '
                                   'entries' % (n, rows))
        decoded.append([_decode_entry(v, field, '(%d, %d)' % (m, n))
                        for m, v in enumerate(column)])
    dtype = np.complex128 if field == Field.COMPLEX else np.float64
    return np.array(decoded, dtype=dtype).reshape(len(columns), rows).T


def frame_to_dict(f):
    """
    :param f: Frame.
    :return: JSON-ready dict.
    """
    return {'field': f.field,
            'rows': f.space_dim,
            'cols': f.count,
            'columns': _columns_to_list(f.synthesis, f.field)}


@format_error_handler
def frame_from_dict(data, normalize=False):
    """
    :param data: dict in the frame file layout.
    :param normalize: normalize the columns instead of rejecting non unit
        norm ones.
    :return: Frame
    """
    field = data['field']
    if field not in Field.values:
        raise FrameFormatError('Field "field" must be one of %s' %
                               (Field.values,))
    rows, cols = data['rows'], data['cols']
    for name, value in (('rows', rows), ('cols', cols)):
        if type(value) is not int or value < 1:
            raise FrameFormatError('Field "%s" must be a positive integer' %
                                   name)
    columns = data['columns']
    if not isinstance(columns, list) or len(columns) != cols:
        raise FrameFormatError('Field "columns" must list %d columns' % cols)
    synthesis = _columns_from_list(columns, rows, field)
    if normalize:
        return normalize_columns(synthesis)
    return Frame(synthesis, field)


def _dump(data, path):
    with open(path, 'w') as fd:
        json.dump(data, fd, indent=1)
        fd.write('\n')


@format_error_handler
def _load(path):
    with open(path) as fd:
        return json.load(fd)


def write_frame(f, path):
    _dump(frame_to_dict(f), path)
    log.info('Frame M=%d N=%d written to %s' % (f.space_dim, f.count, path))


def read_frame(path, normalize=False):
    """
    :param path: frame file.
    :param normalize: normalize the columns on reading.
    :return: Frame
    """
    return frame_from_dict(_load(path), normalize)


def write_trace(trace, path):
    """
    Writes the recorded iterations of a DescentTrace as CSV.
    """
    df = pd.DataFrame([tuple(r) for r in trace.records], columns=TRACE_HEADER)
    df.to_csv(path, index=False, float_format='%.17g')
    log.info('Trace with %d rows written to %s' % (len(trace), path))


@format_error_handler
def read_trace(path):
    """
    :return: list of rows (iteration first) as floats.
    """
    df = pd.read_csv(path, float_precision='round_trip')
    if list(df.columns) != TRACE_HEADER:
        raise FrameFormatError('Trace header must be %s' %
                               ','.join(TRACE_HEADER))
    return [[int(row[0])] + [float(v) for v in row[1:]]
            for row in df.itertuples(index=False)]


def write_report(report, path, **extra):
    """
    Writes a tuning report (TuneReport or plain dict) as JSON; keyword
    arguments are added at top level.
    """
    data = report.to_dict() if hasattr(report, 'to_dict') else dict(report)
    data.update(extra)
    _dump(data, path)


def system_to_dict(system):
    """
    :param system: FilterBank or GaborSystem.
    :return: JSON-ready configuration dict.
    """
    generators = np.array(system.generators).T
    field = Field.COMPLEX if np.iscomplexobj(generators) else Field.REAL
    data = {'M': system.m, 'A': system.a, 'field': field}
    columns = _columns_to_list(generators, field)
    if isinstance(system, GaborSystem):
        data['B'] = system.b
        data['generator'] = columns[0]
    else:
        data['generators'] = columns
    return data


@format_error_handler
def system_from_dict(data):
    """
    Gabor configuration when "B" is present, filter bank otherwise.

    :return: GaborSystem or FilterBank
    """
    m, a = int(data['M']), int(data['A'])
    field = data.get('field', Field.COMPLEX)
    if field not in Field.values:
        raise FrameFormatError('Field "field" must be one of %s' %
                               (Field.values,))
    if 'B' in data:
        generator = _columns_from_list([data['generator']], m, field)[:, 0]
        return GaborSystem(m, a, int(data['B']), generator)
    columns = data['generators']
    generators = _columns_from_list(columns, m, field).T
    return FilterBank(m, a, list(generators))


def read_system(path):
    """
    :return: GaborSystem or FilterBank read from a configuration file.
    """
    return system_from_dict(_load(path))


def write_system(system, path):
    _dump(system_to_dict(system), path)
