# -*- coding: utf-8 -*-
"""
Exact arithmetic for dispersion matrices.

Every entry that appears in the designs handled by aodkit lives in the ring
Z[j, sqrt(2), 1/2]: values of the form

    ((a_re + j*a_im) + (b_re + j*b_im)*sqrt(2)) / 2**e

with integer components and e >= 0. `ExactScalar` stores such a value in a
canonical form (the components are not all even whenever e > 0), so that two
scalars are equal exactly when their components are. Real scalars are totally
ordered, which is what the power metrics need to find peaks and minima
without floating point.

`ExactMatrix` is a small immutable row-major matrix of scalars with the
handful of products the design checks require: matrix product, Hermitian
transpose, Kronecker product and Hadamard (entrywise) product.

"""

import cmath
import math
from fractions import Fraction
from functools import total_ordering

import numpy as np
import sympy

from aodkit.errors import ShapeError

__pdoc__ = {'ExactScalar.__init__': False}

def _gmul(p, q):
    """Multiply two Gaussian integers given as (re, im) pairs."""
    return (p[0] * q[0] - p[1] * q[1], p[0] * q[1] + p[1] * q[0])

def _quadratic_sign(a, b):
    """Sign of the real number a + b*sqrt(2), for integers a and b."""
    if a >= 0 and b >= 0:
        return 0 if a == 0 and b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    # opposite signs: compare a**2 with 2*b**2, equality is impossible
    if a > 0:
        return 1 if a * a > 2 * b * b else -1
    return 1 if 2 * b * b > a * a else -1

def _gaussian_str(re, im):
    if im == 0:
        return str(re)
    if re == 0:
        if im == 1:
            return 'j'
        if im == -1:
            return '-j'
        return f'{im}j'
    sign = '+' if im > 0 else '-'
    mag = '' if abs(im) == 1 else str(abs(im))
    return f'({re}{sign}{mag}j)'

@total_ordering
class ExactScalar:
    """
    A value ((a_re + j*a_im) + (b_re + j*b_im)*sqrt(2)) / 2**e.

    Instances are hashable and compare equal exactly when their values do.
    Ordering (`<`, `>`, ...) is only defined between real scalars and is
    computed exactly.

    Parameters
    ----------
    a_re, a_im, b_re, b_im : int
        Integer components of the numerator.
    e : int
        Non-negative power of two in the denominator.

    Raises
    ------
    ValueError
        A negative exponent or a non-integer component.

    Examples
    --------
    >>> from aodkit.exact import ExactScalar
    >>> h = ExactScalar(0, 0, 1, 0, 1)   # sqrt(2)/2
    >>> h * h == ExactScalar(1, 0, 0, 0, 1)
    True

    """

    __slots__ = ('a_re', 'a_im', 'b_re', 'b_im', 'e')

    def __init__(self, a_re=0, a_im=0, b_re=0, b_im=0, e=0):
        comps = (a_re, a_im, b_re, b_im, e)
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in comps):
            raise ValueError(f'ExactScalar components must be integers, got {comps}')
        if e < 0:
            raise ValueError(f'ExactScalar exponent must be >= 0, got {e}')
        while e > 0 and not ((a_re | a_im | b_re | b_im) & 1):
            a_re >>= 1
            a_im >>= 1
            b_re >>= 1
            b_im >>= 1
            e -= 1
        self.a_re = a_re
        self.a_im = a_im
        self.b_re = b_re
        self.b_im = b_im
        self.e = e

    @classmethod
    def from_value(cls, value):
        """
        Coerce an int, a Gaussian-integer complex, a dyadic Fraction or an
        ExactScalar into an ExactScalar.

        Raises
        ------
        TypeError
            The value cannot be represented exactly.

        """
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, bool):
            raise TypeError('booleans are not ring elements')
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, Fraction):
            den = value.denominator
            if den & (den - 1):
                raise TypeError(f'{value} has a non dyadic denominator')
            return cls(value.numerator, e=den.bit_length() - 1)
        if isinstance(value, (complex, float)):
            value = complex(value)
            if value.real.is_integer() and value.imag.is_integer():
                return cls(int(value.real), int(value.imag))
        raise TypeError(f'cannot represent {value!r} exactly')

    def components(self):
        """Return (a_re, a_im, b_re, b_im, e)."""
        return (self.a_re, self.a_im, self.b_re, self.b_im, self.e)

    def to_list(self):
        """Serialize as the 5-integer list [a_re, a_im, b_re, b_im, e]."""
        return list(self.components())

    @classmethod
    def from_list(cls, values):
        """Inverse of `to_list`; ValueError unless given five integers."""
        values = list(values)
        if len(values) != 5:
            raise ValueError(f'expected 5 integers, got {values!r}')
        return cls(*values)

    def _scaled(self, e):
        """Numerator components brought to the denominator 2**e (e >= self.e)."""
        k = 1 << (e - self.e)
        return (self.a_re * k, self.a_im * k, self.b_re * k, self.b_im * k)

    # ---- arithmetic ----

    def __add__(self, other):
        try:
            other = ExactScalar.from_value(other)
        except TypeError:
            return NotImplemented
        e = max(self.e, other.e)
        x = self._scaled(e)
        y = other._scaled(e)
        return ExactScalar(x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3], e)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.a_re, -self.a_im, -self.b_re, -self.b_im, self.e)

    def __sub__(self, other):
        try:
            other = ExactScalar.from_value(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = ExactScalar.from_value(other)
        except TypeError:
            return NotImplemented
        p = (self.a_re, self.a_im)
        q = (self.b_re, self.b_im)
        r = (other.a_re, other.a_im)
        s = (other.b_re, other.b_im)
        pr = _gmul(p, r)
        qs = _gmul(q, s)
        ps = _gmul(p, s)
        qr = _gmul(q, r)
        return ExactScalar(pr[0] + 2 * qs[0], pr[1] + 2 * qs[1],
                           ps[0] + qr[0], ps[1] + qr[1],
                           self.e + other.e)

    __rmul__ = __mul__

    def conjugate(self):
        """Complex conjugate."""
        return ExactScalar(self.a_re, -self.a_im, self.b_re, -self.b_im, self.e)

    @property
    def real(self):
        return ExactScalar(self.a_re, 0, self.b_re, 0, self.e)

    @property
    def imag(self):
        return ExactScalar(self.a_im, 0, self.b_im, 0, self.e)

    def abs2(self):
        """Squared modulus |z|^2, a real ExactScalar."""
        return self * self.conjugate()

    # ---- predicates ----

    def is_zero(self):
        return not (self.a_re or self.a_im or self.b_re or self.b_im)

    def is_real(self):
        return self.a_im == 0 and self.b_im == 0

    def is_rational(self):
        """True for real values without a sqrt(2) part."""
        return self.a_im == 0 and self.b_im == 0 and self.b_re == 0

    def sign(self):
        """
        Sign (-1, 0 or 1) of a real scalar.

        Raises
        ------
        ValueError
            The scalar has an imaginary part.

        """
        if not self.is_real():
            raise ValueError(f'sign of non-real value {self}')
        return _quadratic_sign(self.a_re, self.b_re)

    # ---- comparison ----

    def __eq__(self, other):
        try:
            other = ExactScalar.from_value(other)
        except TypeError:
            return NotImplemented
        return self.components() == other.components()

    def __lt__(self, other):
        try:
            other = ExactScalar.from_value(other)
        except TypeError:
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self):
        return hash(self.components())

    # ---- conversions ----

    def to_fraction(self):
        """
        Return the value as a Fraction.

        Raises
        ------
        ValueError
            The value is not rational.

        """
        if not self.is_rational():
            raise ValueError(f'{self} is not rational')
        return Fraction(self.a_re, 1 << self.e)

    def to_complex(self):
        """Floating point approximation."""
        scale = 2.0 ** -self.e
        return complex((self.a_re + self.b_re * math.sqrt(2)) * scale,
                       (self.a_im + self.b_im * math.sqrt(2)) * scale)

    def to_sympy(self):
        """Exact sympy expression for the value."""
        a = sympy.Integer(self.a_re) + sympy.I * self.a_im
        b = sympy.Integer(self.b_re) + sympy.I * self.b_im
        return sympy.expand((a + b * sympy.sqrt(2)) / sympy.Integer(2) ** self.e)

    def __complex__(self):
        return self.to_complex()

    def __repr__(self):
        return 'ExactScalar({}, {}, {}, {}, {})'.format(*self.components())

    def __str__(self):
        parts = []
        if self.a_re or self.a_im:
            parts.append(_gaussian_str(self.a_re, self.a_im))
        if self.b_re or self.b_im:
            g = _gaussian_str(self.b_re, self.b_im)
            parts.append({'1': '√2', '-1': '-√2'}.get(g, g + '√2'))
        if not parts:
            return '0'
        text = parts[0]
        for p in parts[1:]:
            text += p if p.startswith('-') else '+' + p
        if self.e:
            if len(parts) > 1:
                text = f'({text})'
            text += f'/{1 << self.e}'
        return text

ZERO = ExactScalar()
ONE = ExactScalar(1)
J = ExactScalar(0, 1)
SQRT2 = ExactScalar(0, 0, 1)
HALF = ExactScalar(1, e=1)
INV_SQRT2 = ExactScalar(0, 0, 1, 0, 1)

def sqrt2_power(k):
    """
    Return sqrt(2)**k for any integer k.

    >>> sqrt2_power(-1) == ExactScalar(0, 0, 1, 0, 1)
    True

    """
    if k >= 0:
        if k % 2 == 0:
            return ExactScalar(1 << (k // 2))
        return ExactScalar(0, 0, 1 << (k // 2))
    m = -k
    if m % 2 == 0:
        return ExactScalar(1, e=m // 2)
    return ExactScalar(0, 0, 1, 0, (m + 1) // 2)

def dyadic_log2(value):
    """
    Return m with value == 2**m, for a positive Fraction (or int).

    Raises
    ------
    ValueError
        The value is not a power of two.

    """
    value = Fraction(value)
    num, den = value.numerator, value.denominator
    if num <= 0 or num & (num - 1) or den & (den - 1):
        raise ValueError(f'{value} is not a power of two')
    return (num.bit_length() - 1) - (den.bit_length() - 1)

def sqrt_dyadic(value):
    """Exact square root of a power of two, as an ExactScalar."""
    return sqrt2_power(dyadic_log2(value))

_ROTATIONS = {
    0: ONE,
    45: ExactScalar(0, 0, 1, 1, 1),
    90: J,
    135: ExactScalar(0, 0, -1, 1, 1),
    180: -ONE,
    225: ExactScalar(0, 0, -1, -1, 1),
    270: -J,
    315: ExactScalar(0, 0, 1, -1, 1),
}

def rotation(degrees):
    """
    Exact exp(j*pi*degrees/180) for a multiple of 45 degrees.

    Raises
    ------
    ValueError
        The angle is not a multiple of 45 degrees.

    """
    if isinstance(degrees, float):
        if not degrees.is_integer():
            raise ValueError(f'{degrees} degrees is not exactly representable')
        degrees = int(degrees)
    if degrees % 45:
        raise ValueError(f'{degrees} degrees is not a multiple of 45')
    return _ROTATIONS[degrees % 360]

def float_rotation(degrees):
    return cmath.exp(1j * math.pi * degrees / 180)

class ExactMatrix:
    """
    Immutable rows x cols matrix of ExactScalar entries.

    Parameters
    ----------
    rows, cols : int
        Dimensions.
    entries : iterable
        Row-major entries; anything `ExactScalar.from_value` accepts.

    Raises
    ------
    ShapeError
        Number of entries does not match rows * cols.

    """

    __slots__ = ('rows', 'cols', 'entries')

    def __init__(self, rows, cols, entries):
        entries = tuple(ExactScalar.from_value(v) for v in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ShapeError(f'{len(entries)} entries do not fill a '
                             f'{rows}x{cols} matrix')
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def _raw(cls, rows, cols, entries):
        obj = cls.__new__(cls)
        obj.rows = rows
        obj.cols = cols
        obj.entries = tuple(entries)
        return obj

    @classmethod
    def from_rows(cls, rows):
        """Build from a nested list; every row must have the same length."""
        rows = [list(r) for r in rows]
        if not rows:
            raise ShapeError('matrix needs at least one row')
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError('ragged rows')
        return cls(len(rows), width, [v for r in rows for v in r])

    @classmethod
    def identity(cls, n):
        return cls._raw(n, n, [ONE if i == j else ZERO
                               for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls._raw(rows, cols, [ZERO] * (rows * cols))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f'({i}, {j}) outside a {self.rows}x{self.cols} matrix')
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def sparse_rows(self):
        """Per row, the list of (col, value) pairs with a nonzero value."""
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append([(j, v) for j, v in enumerate(r) if not v.is_zero()])
        return out

    def is_zero(self):
        return all(v.is_zero() for v in self.entries)

    def is_real(self):
        return all(v.is_real() for v in self.entries)

    def scalar_of_identity(self):
        """
        Return c when the matrix equals c*I, else None.
        """
        if self.rows != self.cols:
            return None
        c = self.entries[0] if self.entries else ZERO
        for i in range(self.rows):
            for j in range(self.cols):
                v = self.entries[i * self.cols + j]
                if i == j:
                    if v != c:
                        return None
                elif not v.is_zero():
                    return None
        return c

    def scale(self, factor):
        factor = ExactScalar.from_value(factor)
        return ExactMatrix._raw(self.rows, self.cols,
                                [v * factor for v in self.entries])

    def conjugate(self):
        return ExactMatrix._raw(self.rows, self.cols,
                                [v.conjugate() for v in self.entries])

    def transpose(self):
        return ExactMatrix._raw(self.cols, self.rows,
                                [self[r, c] for c in range(self.cols)
                                 for r in range(self.rows)])

    def permute(self, row_map, col_map):
        """New matrix with out[i, j] = self[row_map[i], col_map[j]]."""
        return ExactMatrix._raw(len(row_map), len(col_map),
                                [self[r, c] for r in row_map for c in col_map])

    def block(self, bi, bj, size):
        """The size x size block at block coordinates (bi, bj)."""
        rows = range(bi * size, (bi + 1) * size)
        cols = range(bj * size, (bj + 1) * size)
        return self.permute(list(rows), list(cols))

    def _check_same_shape(self, other, op):
        if self.shape != other.shape:
            raise ShapeError(f'{op} of {self.rows}x{self.cols} and '
                             f'{other.rows}x{other.cols}')

    def __add__(self, other):
        self._check_same_shape(other, 'sum')
        return ExactMatrix._raw(self.rows, self.cols,
                                [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check_same_shape(other, 'difference')
        return ExactMatrix._raw(self.rows, self.cols,
                                [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return ExactMatrix._raw(self.rows, self.cols, [-v for v in self.entries])

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def to_numpy(self):
        """Complex128 numpy array approximating the matrix."""
        arr = np.array([v.to_complex() for v in self.entries], dtype=complex)
        return arr.reshape(self.rows, self.cols)

    def __repr__(self):
        return f'ExactMatrix({self.rows}, {self.cols}, {list(self.entries)!r})'

    def __str__(self):
        cells = [[str(v) for v in self.row(i)] for i in range(self.rows)]
        width = max((len(c) for r in cells for c in r), default=1)
        return '\n'.join(' '.join(c.rjust(width) for c in r) for r in cells)

def mat_mul(x, y):
    """
    Exact matrix product x @ y.

    Zero entries are skipped, which keeps the Kronecker-built designs (mostly
    zeros) cheap to verify.

    Raises
    ------
    ShapeError
        Inner dimensions differ.

    """
    if x.cols != y.rows:
        raise ShapeError(f'cannot multiply {x.rows}x{x.cols} by {y.rows}x{y.cols}')
    yrows = y.sparse_rows()
    out = []
    for i in range(x.rows):
        acc = {}
        for k, v in enumerate(x.row(i)):
            if v.is_zero():
                continue
            for col, w in yrows[k]:
                p = v * w
                acc[col] = acc[col] + p if col in acc else p
        out.extend(acc.get(col, ZERO) for col in range(y.cols))
    return ExactMatrix._raw(x.rows, y.cols, out)

def mat_hermitian(x):
    """Conjugate transpose."""
    return ExactMatrix._raw(x.cols, x.rows,
                            [x.entries[j * x.cols + i].conjugate()
                             for i in range(x.cols) for j in range(x.rows)])

def mat_kron(x, y):
    """
    Kronecker product: entry (i*ry + k, l*cy + m) is x[i, l] * y[k, m].
    """
    out = []
    for i in range(x.rows):
        xr = x.row(i)
        for k in range(y.rows):
            yr = y.row(k)
            for a in xr:
                if a.is_zero():
                    out.extend([ZERO] * y.cols)
                else:
                    out.extend(a * b for b in yr)
    return ExactMatrix._raw(x.rows * y.rows, x.cols * y.cols, out)

def mat_hadamard(x, y):
    """Entrywise product."""
    x._check_same_shape(y, 'Hadamard product')
    return ExactMatrix._raw(x.rows, x.cols,
                            [a * b for a, b in zip(x.entries, y.entries)])

def commutation_permutation(m, n):
    """
    Index map p with (Y kron X)[i, j] == (X kron Y)[p[i], p[j]] for an m x m
    matrix X and an n x n matrix Y.

    >>> commutation_permutation(2, 2)
    [0, 2, 1, 3]

    """
    return [(i % m) * n + i // m for i in range(m * n)]
