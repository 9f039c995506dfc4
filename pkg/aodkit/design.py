# -*- coding: utf-8 -*-
"""
Dispersion families and the constraint systems they are checked against.

A `DispersionFamily` holds two ordered lists of square matrices,
{A_1..A_s; B_1..B_t}. The checks in this module are all exact:

- `verify_af`: every A_i^H A_i and B_q^H B_q is a positive rational multiple
  of I (4i), pairs within each list anti-commute (4ii) and every A/B pair is
  amicable, A_i^H B_q = B_q^H A_i (4iii).
- `verify_aod`: the above plus pairwise disjointness (4-0) and the entry
  alphabet {0, 1, -1} ({0, 1, -1, j, -j} for complex families).
- `verify_ostbc`: the square-code constraints (2i, 2ii, 2iii) on the
  dispersion matrices of a `SymbolicCode`, with one common Gram scalar.

Failures are reported, never raised: each check returns a `VerifyReport`
listing `Violation` records with the offending product attached.

"""

from dataclasses import dataclass, field
from fractions import Fraction

from aodkit.errors import DesignError, ShapeError, WeighingError
from aodkit.exact import (ExactMatrix, ONE, J, ZERO,
                          mat_hadamard, mat_hermitian, mat_mul, sqrt2_power)

AOD = 'AOD'
AF = 'AF'
INVALID = 'invalid'

_REAL_ALPHABET = frozenset([ZERO, ONE, -ONE])
_COMPLEX_ALPHABET = frozenset([ZERO, ONE, -ONE, J, -J])

class DispersionFamily:
    """
    Ordered lists {A_1..A_s; B_1..B_t} of order-n exact matrices.

    Parameters
    ----------
    order : int
        The common matrix order n.
    a_mats, b_mats : iterable of ExactMatrix
        The A and B lists (either may be empty, not both).
    label : str, optional
        Human readable name.
    complex_entries : bool or None, optional
        Whether complex entries are admitted by `verify_aod`. When None
        (default), the flag is set if any entry has an imaginary part.
    provenance : aodkit.constructions.Provenance, optional
        How the family was built, when it came out of a construction.

    Raises
    ------
    DesignError
        Empty family or a matrix that is not order x order.

    """

    def __init__(self, order, a_mats, b_mats, label='', complex_entries=None,
                 provenance=None):
        a_mats = tuple(a_mats)
        b_mats = tuple(b_mats)
        if order < 1:
            raise DesignError(f'order must be positive, got {order}')
        if not a_mats and not b_mats:
            raise DesignError('a family needs at least one matrix')
        for name, m in _named(a_mats, b_mats):
            if m.shape != (order, order):
                raise DesignError(f'{name} is {m.rows}x{m.cols}, '
                                  f'expected {order}x{order}')
        if complex_entries is None:
            complex_entries = not all(m.is_real() for m in a_mats + b_mats)
        self.order = order
        self.a_mats = a_mats
        self.b_mats = b_mats
        self.label = label
        self.complex_entries = bool(complex_entries)
        self.provenance = provenance

    @property
    def s(self):
        return len(self.a_mats)

    @property
    def t(self):
        return len(self.b_mats)

    @property
    def variables(self):
        """Number of real variables, s + t."""
        return self.s + self.t

    @property
    def rate(self):
        """(s + t) / 2n, the rate of the square code the family assembles to."""
        return Fraction(self.variables, 2 * self.order)

    def with_label(self, label):
        return DispersionFamily(self.order, self.a_mats, self.b_mats, label,
                                self.complex_entries, self.provenance)

    def scaled(self, a_factors, b_factors):
        """Family with A_i scaled by a_factors[i] and B_q by b_factors[q]."""
        a_factors = list(a_factors)
        b_factors = list(b_factors)
        if len(a_factors) != self.s or len(b_factors) != self.t:
            raise DesignError(f'need {self.s} A factors and {self.t} B factors')
        a = [m.scale(f) for m, f in zip(self.a_mats, a_factors)]
        b = [m.scale(f) for m, f in zip(self.b_mats, b_factors)]
        return DispersionFamily(self.order, a, b, self.label,
                                self.complex_entries, self.provenance)

    def __eq__(self, other):
        if not isinstance(other, DispersionFamily):
            return NotImplemented
        return (self.order == other.order and self.a_mats == other.a_mats
                and self.b_mats == other.b_mats)

    def __hash__(self):
        return hash((self.order, self.a_mats, self.b_mats))

    def __repr__(self):
        return (f'DispersionFamily({self.label!r}, order={self.order}, '
                f's={self.s}, t={self.t})')

@dataclass(frozen=True)
class TypeVector:
    """Gram scalars (f_1..f_s; g_1..g_t) of a family."""
    f: tuple
    g: tuple

    @property
    def type_sum(self):
        return sum(self.f, Fraction(0)) + sum(self.g, Fraction(0))

    def values(self):
        return self.f + self.g

    def __str__(self):
        fs = ', '.join(str(v) for v in self.f)
        gs = ', '.join(str(v) for v in self.g)
        return f'({fs}; {gs})'

@dataclass(frozen=True)
class Violation:
    """
    One failed condition.

    `condition` is one of 2i, 2ii, 2iii, 4-0, 4i, 4ii, 4iii, 4-alphabet (or a
    5x id for seed checks), `indices` names the matrices involved (e.g.
    ('A1', 'B2')) and `product` is the matrix that should have vanished or
    been scalar.
    """
    condition: str
    indices: tuple
    product: ExactMatrix = None

    def __str__(self):
        return f'[{self.condition}] {", ".join(self.indices)}'

@dataclass(frozen=True)
class VerifyReport:
    label: str
    level: str
    violations: tuple = ()
    scale: Fraction = None
    notes: tuple = field(default=())

    @property
    def passed(self):
        return not self.violations

    def conditions(self):
        """Set of failed condition ids."""
        return {v.condition for v in self.violations}

    def summary(self):
        status = 'PASS' if self.passed else 'FAIL'
        lines = [f'{self.label or "<unnamed>"}: {self.level} {status}']
        if self.scale is not None:
            lines.append(f'  common Gram scalar: {self.scale}')
        lines.extend(f'  note: {n}' for n in self.notes)
        for v in self.violations:
            lines.append(f'  {v}')
            if v.product is not None:
                lines.extend('    ' + r for r in str(v.product).splitlines())
        return '\n'.join(lines)

    def __str__(self):
        return self.summary()

def _named(a_mats, b_mats):
    out = [(f'A{i + 1}', m) for i, m in enumerate(a_mats)]
    out += [(f'B{q + 1}', m) for q, m in enumerate(b_mats)]
    return out

def _gram(m):
    return mat_mul(mat_hermitian(m), m)

def _gram_scalar(m):
    """(Gram matrix, its positive rational scalar or None)."""
    g = _gram(m)
    c = g.scalar_of_identity()
    if c is None or not c.is_rational() or c.sign() <= 0:
        return g, None
    return g, c.to_fraction()

# ---- condition kernels ----

def _weighing(named, condition):
    out = []
    for name, m in named:
        g, c = _gram_scalar(m)
        if c is None:
            out.append(Violation(condition, (name,), g))
    return out

def _anticommuting(named, condition):
    """X_i^H X_l + X_l^H X_i = 0 for every i < l."""
    out = []
    for idx, (ni, mi) in enumerate(named):
        for nl, ml in named[idx + 1:]:
            p = mat_mul(mat_hermitian(mi), ml) + mat_mul(mat_hermitian(ml), mi)
            if not p.is_zero():
                out.append(Violation(condition, (ni, nl), p))
    return out

def _amicable(named_a, named_b, condition):
    """A_i^H B_q - B_q^H A_i = 0 for every pair."""
    out = []
    for na, ma in named_a:
        for nb, mb in named_b:
            p = mat_mul(mat_hermitian(ma), mb) - mat_mul(mat_hermitian(mb), ma)
            if not p.is_zero():
                out.append(Violation(condition, (na, nb), p))
    return out

def _disjoint(named, condition):
    out = []
    for idx, (ni, mi) in enumerate(named):
        for nl, ml in named[idx + 1:]:
            p = mat_hadamard(mi, ml)
            if not p.is_zero():
                out.append(Violation(condition, (ni, nl), p))
    return out

def _alphabet(named, allowed, condition):
    return [Violation(condition, (name,), m) for name, m in named
            if any(v not in allowed for v in m.entries)]

# ---- public checks ----

def gram_types(fam):
    """
    Extract the type vector (f_1..f_s; g_1..g_t) of a family.

    Parameters
    ----------
    fam : DispersionFamily

    Returns
    -------
    TypeVector
        Rational Gram scalars, A_i^H A_i = f_i I and B_q^H B_q = g_q I.

    Raises
    ------
    WeighingError
        Some Gram matrix is not a positive rational multiple of I.

    """
    values = []
    for name, m in _named(fam.a_mats, fam.b_mats):
        g = _gram(m)
        c = g.scalar_of_identity()
        if c is None or not c.is_rational() or c.sign() <= 0:
            raise WeighingError(f'{name} of {fam.label or "family"} is not a '
                                f'weighing-type matrix: {name}^H {name} = \n{g}')
        values.append(c.to_fraction())
    return TypeVector(tuple(values[:fam.s]), tuple(values[fam.s:]))

def verify_af(fam):
    """
    Check the amicable family conditions 4i, 4ii and 4iii.

    Returns
    -------
    VerifyReport
        `passed` is True exactly when the family is an AF.

    """
    na = _named(fam.a_mats, ())
    nb = [(f'B{q + 1}', m) for q, m in enumerate(fam.b_mats)]
    violations = _weighing(na + nb, '4i')
    violations += _anticommuting(na, '4ii') + _anticommuting(nb, '4ii')
    violations += _amicable(na, nb, '4iii')
    return VerifyReport(fam.label, AF, tuple(violations))

def verify_aod(fam):
    """
    Check the amicable orthogonal design conditions: 4-0 (disjointness), the
    entry alphabet, then 4i to 4iii.
    """
    named = _named(fam.a_mats, fam.b_mats)
    allowed = _COMPLEX_ALPHABET if fam.complex_entries else _REAL_ALPHABET
    violations = _disjoint(named[:fam.s], '4-0') + _disjoint(named[fam.s:], '4-0')
    violations += _alphabet(named, allowed, '4-alphabet')
    violations += list(verify_af(fam).violations)
    return VerifyReport(fam.label, AOD, tuple(violations))

def check_amicable(a_mats, b_mats):
    """
    True when the designs sum(A_i a_i) and sum(B_q b_q) satisfy
    A^H B = B^H A for all variable values.

    Parameters
    ----------
    a_mats, b_mats : sequence of ExactMatrix
        Coefficient matrices of the two designs.

    Raises
    ------
    ShapeError
        The matrices are not all square of one order.

    """
    mats = list(a_mats) + list(b_mats)
    if not mats:
        return True
    order = mats[0].rows
    if any(m.shape != (order, order) for m in mats):
        raise ShapeError('amicable designs must be square and of one order')
    na = _named(a_mats, ())
    nb = [(f'B{q + 1}', m) for q, m in enumerate(b_mats)]
    return not _amicable(na, nb, '3')

def verify_family_ostbc(fam):
    """
    The square O-STBC constraints on a family with one A and one B matrix
    per symbol (A_i, B_i).

    2i requires every Gram matrix to equal one common c*I (reported as
    `scale`); 2ii is anti-commutation within each list; 2iii amicability
    across lists.
    """
    na = _named(fam.a_mats, ())
    nb = [(f'B{q + 1}', m) for q, m in enumerate(fam.b_mats)]
    violations = []
    scale = None
    for name, m in na + nb:
        g, c = _gram_scalar(m)
        if c is None:
            violations.append(Violation('2i', (name,), g))
        elif scale is None:
            scale = c
        elif c != scale:
            violations.append(Violation('2i', (name,), g))
    violations += _anticommuting(na, '2ii') + _anticommuting(nb, '2ii')
    violations += _amicable(na, nb, '2iii')
    return VerifyReport(fam.label, 'ostbc', tuple(violations),
                        scale=None if violations else scale)

def verify_ostbc(code):
    """
    Check the square orthogonal code constraints on a `SymbolicCode`.

    The code's dispersion matrices are extracted (A_i from the x_i^R
    coefficients, B_i from the x_i^I coefficients with j removed) and passed
    to `verify_family_ostbc`.

    Examples
    --------
    >>> from aodkit.codes import fixture
    >>> verify_ostbc(fixture('G8')).passed
    True

    """
    from aodkit.codes import extract_dispersion
    return verify_family_ostbc(extract_dispersion(code))

def classify(fam):
    """Return 'AOD', 'AF' or 'invalid'."""
    if verify_aod(fam).passed:
        return AOD
    if verify_af(fam).passed:
        return AF
    return INVALID

def max_variables_bound(n):
    """
    Largest s + t of an AOD of order n = 2**a * b (b odd): 2a + 2.

    >>> max_variables_bound(12)
    6

    """
    if n < 1:
        raise ValueError(f'order must be positive, got {n}')
    a = (n & -n).bit_length() - 1
    return 2 * a + 2

def is_maximal(fam):
    return fam.variables == max_variables_bound(fam.order)

def _integral_power(m):
    for k in range(0, 2 * max(v.e for v in m.entries) + 2):
        scaled = m.scale(sqrt2_power(k))
        if all(v.e == 0 and v.b_re == 0 and v.b_im == 0 for v in scaled.entries):
            return k
    return None

def integral_scaling(fam):
    """
    Rescale every matrix by the smallest power of sqrt(2) that puts all its
    entries in Z[j].

    This undoes per-symbol normalization: the types of the result are the
    integer types of the underlying design.

    Raises
    ------
    DesignError
        A matrix has entries (e.g. 1 + sqrt(2)) that no power of sqrt(2)
        makes Gaussian integers.

    """
    factors = []
    for name, m in _named(fam.a_mats, fam.b_mats):
        k = _integral_power(m)
        if k is None:
            raise DesignError(f'{name} has no integral rescaling by a power '
                              'of sqrt(2)')
        factors.append(sqrt2_power(k))
    out = fam.scaled(factors[:fam.s], factors[fam.s:])
    return out.with_label(f'{fam.label} (integral)' if fam.label else '')

def family_from_lists(a_rows, b_rows, label='', complex_entries=None):
    """
    Convenience constructor from nested lists, e.g. the 2x2 seeds.

    >>> fam = family_from_lists([[[1, 0], [0, 1]]], [], 'I2')
    >>> fam.order, fam.s, fam.t
    (2, 1, 0)

    """
    a = [ExactMatrix.from_rows(r) for r in a_rows]
    b = [ExactMatrix.from_rows(r) for r in b_rows]
    order = (a or b)[0].rows if (a or b) else 1
    return DispersionFamily(order, a, b, label, complex_entries)

