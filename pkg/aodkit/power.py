# -*- coding: utf-8 -*-
"""
Transmit power distribution of a code over a finite constellation.

For every symbol tuple, time slot t and antenna m the instantaneous power is
P = |G[t, m]|^2. Averaging uniformly over all (t, m, tuple) gives `ave`; the
report holds peak/ave, ave/min (infinite when some entry can vanish), the
fraction P_o of zero-power entries, and the type sum of the code's
underlying design with the two design guidelines:

1. every symbol has the same type (f_i = g_i = constant);
2. the type sum is at least 2n.

Evaluation is exact whenever every constellation point lies in the exact
ring (BPSK, QPSK, 8-PSK and their 45 degree rotations); other constellations
fall back to numpy with an amplitude threshold for "zero".

"""

import csv
import io
import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

from aodkit.codes import coefficient_arrays, extract_dispersion, fixture, rotate_symbol
from aodkit.design import gram_types, integral_scaling
from aodkit.errors import EnumerationError
from aodkit.exact import ExactScalar, ZERO, float_rotation
from aodkit.exact import rotation as exact_rotation
from aodkit.printing import format_table

MAX_TUPLES = 10 ** 6

class Constellation:
    """
    A finite unit-energy signal set with Gray bit labels.

    Parameters
    ----------
    name : str
    points : sequence
        ExactScalar values (exact constellations) or complex numbers.
    labels : sequence of tuple of int
        Bit label of each point.
    rotation : int or float, optional
        Rotation in degrees already applied to `points`.

    """

    def __init__(self, name, points, labels, rotation=0):
        if len(points) != len(labels):
            raise ValueError('every constellation point needs a bit label')
        self.name = name
        self.points = tuple(points)
        self.labels = tuple(tuple(b) for b in labels)
        self.rotation = rotation

    @property
    def exact(self):
        return all(isinstance(p, ExactScalar) for p in self.points)

    @property
    def bits_per_symbol(self):
        return len(self.labels[0])

    @property
    def spec(self):
        return self.name if not self.rotation else f'{self.name}@{self.rotation:g}'

    def complex_points(self):
        return np.array([complex(p) for p in self.points], dtype=complex)

    def average_energy(self):
        return float(np.mean(np.abs(self.complex_points()) ** 2))

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f'Constellation({self.spec!r}, M={len(self)})'

def _gray(k):
    return k ^ (k >> 1)

def _bits(value, width):
    return tuple((value >> (width - 1 - b)) & 1 for b in range(width))

def _bpsk():
    return [ExactScalar(1), ExactScalar(-1)], [(0,), (1,)]

def _qpsk():
    points, labels = [], []
    for b0, b1 in itertools.product((0, 1), repeat=2):
        points.append(ExactScalar(0, 0, 1 - 2 * b0, 1 - 2 * b1, 1))
        labels.append((b0, b1))
    return points, labels

def _8psk():
    points = [None] * 8
    for k in range(8):
        points[_gray(k)] = exact_rotation(45 * k)
    return points, [_bits(v, 3) for v in range(8)]

def _16qam():
    levels = (-3, -1, 1, 3)
    points = [None] * 16
    for i, q in itertools.product(range(4), repeat=2):
        label = (_gray(i) << 2) | _gray(q)
        points[label] = complex(levels[i], levels[q]) / math.sqrt(10)
    return points, [_bits(v, 4) for v in range(16)]

CONSTELLATION_DICT = {'bpsk': _bpsk,
                      'qpsk': _qpsk,
                      '8psk': _8psk,
                      '16qam': _16qam}

def get_constellation(name, rotation=0):
    """
    Build a preset constellation, optionally rotated by `rotation` degrees.

    Rotations by multiples of 45 degrees keep exact constellations exact.

    Raises
    ------
    ValueError
        Unknown constellation name.

    Examples
    --------
    >>> len(get_constellation('qpsk'))
    4

    """
    if name not in CONSTELLATION_DICT:
        raise ValueError(f'{name!r} is not a constellation; choose from '
                         f'{", ".join(CONSTELLATION_DICT)}')
    points, labels = CONSTELLATION_DICT[name]()
    if rotation:
        exact = all(isinstance(p, ExactScalar) for p in points)
        if exact and float(rotation).is_integer() and int(rotation) % 45 == 0:
            factor = exact_rotation(int(rotation))
            points = [p * factor for p in points]
        else:
            factor = float_rotation(rotation)
            points = [complex(p) * factor for p in points]
    return Constellation(name, points, labels, rotation)

def parse_constellation_spec(spec, k):
    """
    Per-symbol constellations from text such as ``'qpsk; x2=qpsk@45'``.

    The first item is the default for every symbol; ``xI=name[@degrees]``
    items override symbol I (1-based).

    Raises
    ------
    ValueError
        Malformed spec, unknown name or a symbol outside 1..k.

    """
    def one(text):
        name, _, deg = text.strip().partition('@')
        return get_constellation(name.strip(), float(deg) if deg else 0)

    items = [s.strip() for s in spec.split(';') if s.strip()]
    if not items or '=' in items[0]:
        raise ValueError(f'constellation spec {spec!r} needs a default first')
    out = [one(items[0])] * k
    for item in items[1:]:
        sym, _, text = item.partition('=')
        sym = sym.strip()
        if not sym.startswith('x') or not sym[1:].isdigit():
            raise ValueError(f'bad constellation override {item!r}')
        idx = int(sym[1:])
        if not 1 <= idx <= k:
            raise ValueError(f'symbol {sym} outside x1..x{k}')
        out[idx - 1] = one(text)
    return out

def resolve_constellations(constellations, k):
    """
    Normalize a constellation argument (spec string, one Constellation or
    a per-symbol sequence) to a list of k Constellation objects.
    """
    if isinstance(constellations, str):
        return parse_constellation_spec(constellations, k)
    if isinstance(constellations, Constellation):
        return [constellations] * k
    out = [get_constellation(c) if isinstance(c, str) else c for c in constellations]
    if len(out) != k:
        raise ValueError(f'{len(out)} constellations given for {k} symbols')
    return out

def describe_constellations(consts):
    """Inverse of `parse_constellation_spec` for display."""
    default = consts[0].spec
    overrides = [f'x{i + 1}={c.spec}' for i, c in enumerate(consts) if c.spec != default]
    return '; '.join([default] + overrides)

@dataclass(frozen=True)
class PowerReport:
    """
    Power distribution of one code under one constellation assignment.

    Exact reports hold sympy numbers (`sympy.oo` for an infinite ave/min);
    float reports hold floats (`math.inf`).
    """
    label: str
    constellation_spec: str
    peak: object
    ave: object
    minimum: object
    peak_ave: object
    ave_min: object
    p_o: Fraction
    types: object
    type_sum: Fraction
    guideline_constant_type: bool
    guideline_sum_ge_2n: bool
    exact: bool = True

def guideline_check(types, n):
    """
    Evaluate the two design guidelines for a type vector and order n.

    Returns
    -------
    (bool, bool)
        (all types equal, type sum >= 2n)

    """
    values = types.values()
    constant = len(set(values)) <= 1
    return constant, types.type_sum >= 2 * n

def _count_tuples(consts):
    count = 1
    for c in consts:
        count *= len(c)
    return count

def _enumerate_exact(code, consts):
    forms = [[(i, part == 'R', c) for i, part, c in f.terms] for f in code.forms()]
    parts = [[(p.real, p.imag) for p in c.points] for c in consts]
    total = ZERO
    peak = low = None
    zeros = 0
    for idx in itertools.product(*(range(len(c)) for c in consts)):
        values = [parts[i][j] for i, j in enumerate(idx)]
        for terms in forms:
            val = ZERO
            for i, is_re, c in terms:
                val = val + c * values[i][0 if is_re else 1]
            pw = val.abs2()
            total = total + pw
            if peak is None or pw > peak:
                peak = pw
            if low is None or pw < low:
                low = pw
            if pw.is_zero():
                zeros += 1
    return total, peak, low, zeros

def _enumerate_float(code, consts, zero_threshold):
    ar, ai = coefficient_arrays(code)
    grids = np.meshgrid(*[c.complex_points() for c in consts], indexing='ij')
    xs = np.stack([g.reshape(-1) for g in grids], axis=1)
    g = (np.einsum('bk,kpn->bpn', xs.real, ar)
         + np.einsum('bk,kpn->bpn', xs.imag, ai))
    pw = np.abs(g) ** 2
    ave = float(pw.mean())
    zero = pw <= (zero_threshold ** 2) * ave
    return ave, float(pw.max()), float(pw.min()), int(zero.sum())

def code_types(code):
    """Integral type vector of the design underneath a code."""
    return gram_types(integral_scaling(extract_dispersion(code)))

def power_report(code, constellations='qpsk', zero_threshold=1e-12,
                 max_tuples=MAX_TUPLES):
    """
    Enumerate every symbol tuple and summarize the transmit power.

    Parameters
    ----------
    code : SymbolicCode
    constellations : str, Constellation or sequence, optional
        Spec string (``'qpsk'``, ``'qpsk; x2=qpsk@45'``), one constellation
        for all symbols, or one per symbol.
    zero_threshold : float, optional
        For non-exact constellations, amplitudes at or below
        ``zero_threshold * sqrt(ave)`` count as zero.
    max_tuples : int, optional
        Enumeration limit.

    Returns
    -------
    PowerReport

    Raises
    ------
    EnumerationError
        More than `max_tuples` symbol tuples.

    Examples
    --------
    >>> from aodkit.codes import fixture
    >>> power_report(fixture('G8')).peak_ave
    1

    """
    consts = resolve_constellations(constellations, code.k)
    count = _count_tuples(consts)
    if count > max_tuples:
        raise EnumerationError(f'{count} symbol tuples exceed the limit of '
                               f'{max_tuples}')
    entries = count * code.p * code.n_t
    types = code_types(code)
    g1, g2 = guideline_check(types, code.n_t)
    spec = describe_constellations(consts)
    if all(c.exact for c in consts):
        total, peak, low, zeros = _enumerate_exact(code, consts)
        ave = total.to_sympy() / entries
        peak_s = peak.to_sympy()
        low_s = low.to_sympy()
        peak_ave = sympy.radsimp(peak_s / ave)
        ave_min = sympy.oo if low.is_zero() else sympy.radsimp(ave / low_s)
        return PowerReport(code.label, spec, peak_s, ave, low_s, peak_ave,
                           ave_min, Fraction(zeros, entries), types,
                           types.type_sum, g1, g2, exact=True)
    warnings.warn(f'{spec} is not exact; {code.label or "code"} is evaluated '
                  'in floating point')
    ave, peak, low, zeros = _enumerate_float(code, consts, zero_threshold)
    ave_min = math.inf if zeros else ave / low
    return PowerReport(code.label, spec, peak, ave, low, peak / ave, ave_min,
                       Fraction(zeros, entries), types, types.type_sum, g1, g2,
                       exact=False)

def codeword_energy(code, constellations='qpsk'):
    """Average of sum_{t,m} |G[t, m]|^2 over all symbol tuples."""
    report = power_report(code, constellations)
    return report.ave * code.p * code.n_t

# ---- table reproduction ----

@dataclass(frozen=True)
class PublishedRow:
    """Published values of one table row (None where not applicable)."""
    code: str
    constellation_spec: str
    peak_ave: float
    ave_min: float
    p_o: Fraction
    type_sum: int = None
    sum_ok: bool = None
    reference_only: bool = False
    stated_type_sum: int = None

INF = math.inf

TABLE_DICT = {
    8: [PublishedRow('TH', 'qpsk', 2, INF, Fraction(1, 2), 8, False),
        PublishedRow('TS', 'qpsk', 2, INF, Fraction(1, 8), 10, False,
                 stated_type_sum=14),
        PublishedRow('G8', 'qpsk', 1, 1, Fraction(0), 16, True)],
    4: [PublishedRow('TJC', 'qpsk', 1.33, 1.5, Fraction(0), 8, True),
        PublishedRow('GS', 'qpsk', 1.33, INF, Fraction(1, 4), 6, False),
        PublishedRow('PB-GS1', '', 3, 3, Fraction(0),
                 reference_only=True),
        PublishedRow('PB-GS2', '', 2.6, 17.5, Fraction(0),
                 reference_only=True),
        PublishedRow('G4', 'qpsk; x2=qpsk@45', 2.28, 2.56, Fraction(0), 12, True)],
}

MATCH_TOLERANCE = 0.005

@dataclass(frozen=True)
class TableRow:
    published: PublishedRow
    report: PowerReport = None
    match: bool = None
    type_match: bool = None

def _close(computed, published):
    computed = float(computed)
    if math.isinf(published) or math.isinf(computed):
        return math.isinf(published) and math.isinf(computed)
    return abs(computed - published) <= MATCH_TOLERANCE

def table_report(n_t):
    """
    Recompute every reproducible row of a published power table.

    Parameters
    ----------
    n_t : 8 or 4
        8: eight-antenna codes TH, TS, G8; 4: four-antenna codes TJC, GS, G4
        plus two reference-only rows.

    Returns
    -------
    list of TableRow

    Raises
    ------
    ValueError
        No table for that antenna count.

    """
    if n_t not in TABLE_DICT:
        raise ValueError(f'tables exist for {sorted(TABLE_DICT)} antennas, got {n_t!r}')
    rows = []
    for pub in TABLE_DICT[n_t]:
        if pub.reference_only:
            rows.append(TableRow(pub))
            continue
        report = power_report(fixture(pub.code), pub.constellation_spec)
        match = (_close(report.peak_ave, pub.peak_ave)
                 and _close(report.ave_min, pub.ave_min)
                 and _close(report.p_o, float(pub.p_o)))
        rows.append(TableRow(pub, report, match,
                             report.type_sum == pub.type_sum))
    return rows

def rotated_g4():
    """G4 with x2 rotated by 45 degrees folded into the code."""
    return rotate_symbol(fixture('G4'), 2, 45)

def format_value(value):
    """Text for a metric: 'inf', an exact rational, or 6 decimals."""
    if value is None:
        return 'NA'
    if isinstance(value, bool):
        return 'Yes' if value else 'No'
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, sympy.Basic):
        if value == sympy.oo:
            return 'inf'
        if value.is_Rational:
            return str(value)
        return f'{float(value):.6f}'
    if math.isinf(value):
        return 'inf'
    if float(value).is_integer():
        return str(int(value))
    return f'{value:.6g}'

DELIMITED_COLUMNS = ['code', 'constellation-spec', 'peak_ave', 'ave_min', 'p_o',
                     'type_sum', 'guideline1', 'guideline2', 'published_peak_ave',
                     'published_ave_min', 'published_p_o', 'match-flag',
                     'published_type_sum', 'stated_type_sum']

def _row_values(row):
    p, r = row.published, row.report
    computed = ([r.peak_ave, r.ave_min, r.p_o, r.type_sum,
                 r.guideline_constant_type, r.guideline_sum_ge_2n]
                if r is not None else [None] * 6)
    flag = 'reference-only' if p.reference_only else ('match' if row.match else 'MISMATCH')
    return ([p.code, p.constellation_spec or 'qpsk']
            + [format_value(v) for v in computed]
            + [format_value(v) for v in (p.peak_ave, p.ave_min, p.p_o)]
            + [flag, format_value(p.type_sum), format_value(p.stated_type_sum)])

def format_delimited(rows, delimiter=','):
    """Table rows as delimited text with a header line."""
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator='\n')
    writer.writerow(DELIMITED_COLUMNS)
    for row in rows:
        writer.writerow(_row_values(row))
    return buf.getvalue()

def format_reports_delimited(reports, delimiter=','):
    """Delimited text for PowerReports with no published counterpart."""
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator='\n')
    writer.writerow(DELIMITED_COLUMNS[:8])
    for r in reports:
        writer.writerow([r.label, r.constellation_spec]
                        + [format_value(v) for v in
                           (r.peak_ave, r.ave_min, r.p_o, r.type_sum,
                            r.guideline_constant_type, r.guideline_sum_ge_2n)])
    return buf.getvalue()

def format_report_table(rows):
    """Human readable table; exact irrational values are shown after the float."""
    headers = ['code', 'constellation', 'peak/ave', 'ave/min', 'P_o', 'sum type',
               'const type', 'sum>=2n', 'published', 'flag']
    body = []
    for row in rows:
        vals = _row_values(row)
        published = '/'.join(vals[8:11])
        if row.published.type_sum is not None:
            published += f' (sum {vals[12]}'
            published += f', stated {vals[13]})' if row.published.stated_type_sum else ')'
        body.append(vals[:8] + [published, vals[11]])
        r = row.report
        if r is not None and r.exact:
            extra = [f'{name} = {value}' for name, value in
                     (('peak/ave', r.peak_ave), ('ave/min', r.ave_min))
                     if isinstance(value, sympy.Basic) and value != sympy.oo
                     and not value.is_Rational]
            if extra:
                body.append(['', ''] + ['; '.join(extra)] + [''] * 7)
    return format_table(headers, body)

def format_power_report(report):
    """Multi-line summary of one PowerReport."""
    lines = [f'{report.label}: {report.constellation_spec}'
             + ('' if report.exact else ' (floating point)'),
             f'  peak/ave  {format_value(report.peak_ave)}'
             + _exact_suffix(report.peak_ave),
             f'  ave/min   {format_value(report.ave_min)}'
             + _exact_suffix(report.ave_min),
             f'  P_o       {format_value(report.p_o)}',
             f'  type      {report.types} (sum {report.type_sum})',
             f'  constant type: {format_value(report.guideline_constant_type)}, '
             f'sum >= 2n: {format_value(report.guideline_sum_ge_2n)}']
    return '\n'.join(lines)

def _exact_suffix(value):
    if isinstance(value, sympy.Basic) and value != sympy.oo and not value.is_Rational:
        return f'  ({value})'
    return ''
