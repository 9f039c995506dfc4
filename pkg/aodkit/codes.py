# -*- coding: utf-8 -*-
"""
Symbolic square space-time block codes.

A codeword G is a p x n_t grid of `LinearForm` entries in the real symbol
parts x_i^R and x_i^I, following G = sum_i (x_i^R A_i + j x_i^I B_i). The j
multiplying the imaginary parts is folded into the stored coefficient, so the
entry x_1 is stored as {(0, R): 1, (0, I): j} and its conjugate x_1^* as
{(0, R): 1, (0, I): -j}.

Codes are built either from a `DispersionFamily` with `assemble` or written
out by hand with the small helpers `x`, `xc`, `xr` and `xi`. The module holds
the catalog of eight literal codes (`fixture`), the four of them that come
out of a construction (G8, H8, F8, G4) together with their frozen symbol
pairings, and `find_pairing`, which recovers such a pairing.

"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from natsort import natsorted

from aodkit.constructions import (construct1, construct2, seed_catalog,
                                  seed_names)
from aodkit.design import DispersionFamily, gram_types
from aodkit.errors import (CatalogError, DesignError, PairingError, ShapeError)
from aodkit.exact import (ExactMatrix, ExactScalar, HALF, INV_SQRT2, J, ONE,
                          ZERO, rotation, sqrt_dyadic)

PARTS = ('R', 'I')

def _coef_str(c):
    special = {ONE: '', -ONE: '-', J: 'j', -J: '-j'}
    if c in special:
        return special[c]
    text = str(c)
    if text.lstrip('-').isdigit():
        return text
    return f'({text})'

class LinearForm:
    """
    A linear combination of real symbol parts x_i^R, x_i^I with exact
    coefficients.

    Parameters
    ----------
    terms : iterable of (int, str, value)
        (symbol index, 'R' or 'I', coefficient). Repeated (index, part)
        pairs are summed and zero coefficients dropped. Symbol indices are
        0-based.

    Raises
    ------
    ValueError
        A part other than 'R' / 'I' or a negative symbol index.

    """

    __slots__ = ('_terms',)

    def __init__(self, terms=()):
        acc = {}
        for i, part, coeff in terms:
            if part not in PARTS:
                raise ValueError(f"part must be 'R' or 'I', got {part!r}")
            if i < 0:
                raise ValueError(f'symbol index must be >= 0, got {i}')
            key = (i, part)
            acc[key] = acc.get(key, ZERO) + ExactScalar.from_value(coeff)
        self._terms = {k: v for k, v in acc.items() if not v.is_zero()}

    @property
    def terms(self):
        """Sorted list of (index, part, coefficient)."""
        keys = sorted(self._terms, key=lambda k: (k[0], k[1] == 'I'))
        return [(i, p, self._terms[(i, p)]) for i, p in keys]

    def coefficient(self, i, part):
        return self._terms.get((i, part), ZERO)

    def symbols(self):
        return {i for i, _ in self._terms}

    def is_zero(self):
        return not self._terms

    def __add__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return LinearForm(self.terms + other.terms)

    def __neg__(self):
        return LinearForm((i, p, -c) for i, p, c in self.terms)

    def __sub__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, factor):
        try:
            factor = ExactScalar.from_value(factor)
        except TypeError:
            return NotImplemented
        return LinearForm((i, p, c * factor) for i, p, c in self.terms)

    __rmul__ = __mul__

    def conjugate(self):
        """
        Conjugate of the form; x_i^R and x_i^I are real, so only the
        coefficients are conjugated.
        """
        return LinearForm((i, p, c.conjugate()) for i, p, c in self.terms)

    def evaluate(self, values):
        """
        Exact value for the complex symbols `values` (ExactScalar each).
        """
        total = ZERO
        for (i, part), c in self._terms.items():
            v = values[i]
            total = total + c * (v.real if part == 'R' else v.imag)
        return total

    def substitute_rotation(self, symbol, factor):
        """
        The form with x_symbol replaced by factor * x_symbol, for a unit
        modulus `factor` = c + j s.
        """
        cos, sin = factor.real, factor.imag
        cr = self.coefficient(symbol, 'R')
        ci = self.coefficient(symbol, 'I')
        keep = [(i, p, c) for i, p, c in self.terms if i != symbol]
        return LinearForm(keep + [(symbol, 'R', cos * cr + sin * ci),
                                  (symbol, 'I', cos * ci - sin * cr)])

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self.terms))

    def __repr__(self):
        return f'LinearForm({self.terms!r})'

    def __str__(self):
        if not self._terms:
            return '0'
        pieces = []
        for i in sorted(self.symbols()):
            cr = self.coefficient(i, 'R')
            ci = self.coefficient(i, 'I')
            name = f'x{i + 1}'
            if not cr.is_zero() and ci == cr * J:
                pieces.append(_coef_str(cr) + name)
            elif not cr.is_zero() and ci == -(cr * J):
                pieces.append(_coef_str(cr) + name + '*')
            else:
                if not cr.is_zero():
                    pieces.append(_coef_str(cr) + name + 'R')
                if not ci.is_zero():
                    d = ci * -J
                    if d.is_real():
                        coef = _coef_str(d)
                        sign = '-' if coef.startswith('-') else ''
                        pieces.append(sign + coef.lstrip('-') + 'j' + name + 'I')
                    else:
                        pieces.append(_coef_str(ci) + name + 'I')
        text = pieces[0]
        for p in pieces[1:]:
            text += ' - ' + p[1:] if p.startswith('-') else ' + ' + p
        return text

def x(i):
    """The complex symbol x_i (1-based), x_i^R + j x_i^I."""
    return LinearForm([(i - 1, 'R', ONE), (i - 1, 'I', J)])

def xc(i):
    """The conjugate x_i^*, x_i^R - j x_i^I."""
    return LinearForm([(i - 1, 'R', ONE), (i - 1, 'I', -J)])

def xr(i):
    """The real part x_i^R."""
    return LinearForm([(i - 1, 'R', ONE)])

def xi(i):
    """j times the imaginary part, j x_i^I."""
    return LinearForm([(i - 1, 'I', J)])

ZERO_FORM = LinearForm()

class SymbolicCode:
    """
    A p x n_t codeword template.

    Parameters
    ----------
    grid : iterable of iterables of LinearForm
        Rows of the codeword (time slots); columns are antennas.
    k : int, optional
        Number of complex symbols. Defaults to one more than the largest
        symbol index used.
    label : str, optional

    Raises
    ------
    ShapeError
        Ragged or non-square grid.
    DesignError
        A symbol index is >= k.

    """

    def __init__(self, grid, k=None, label=''):
        rows = tuple(tuple(r) for r in grid)
        if not rows or not rows[0]:
            raise ShapeError('code grid is empty')
        n_t = len(rows[0])
        if any(len(r) != n_t for r in rows):
            raise ShapeError('ragged code grid')
        if len(rows) != n_t:
            raise ShapeError(f'only square codes are handled, got '
                             f'{len(rows)}x{n_t}')
        used = set()
        for r in rows:
            for form in r:
                if not isinstance(form, LinearForm):
                    raise TypeError(f'code entries must be LinearForm, got {form!r}')
                used |= form.symbols()
        inferred = max(used) + 1 if used else 0
        if k is None:
            k = inferred
        elif inferred > k:
            raise DesignError(f'symbol x{inferred} used in a code with k={k}')
        self.grid = rows
        self.k = k
        self.label = label

    @property
    def p(self):
        return len(self.grid)

    @property
    def n_t(self):
        return len(self.grid[0])

    def __getitem__(self, idx):
        t, m = idx
        return self.grid[t][m]

    def forms(self):
        """All entries in row-major order."""
        return [f for r in self.grid for f in r]

    def with_label(self, label):
        return SymbolicCode(self.grid, self.k, label)

    def __eq__(self, other):
        if not isinstance(other, SymbolicCode):
            return NotImplemented
        return self.k == other.k and self.grid == other.grid

    def __hash__(self):
        return hash((self.k, self.grid))

    def __repr__(self):
        return f'SymbolicCode({self.label!r}, p={self.p}, n_t={self.n_t}, k={self.k})'

    def __str__(self):
        cells = [[str(f) for f in r] for r in self.grid]
        width = max(len(c) for r in cells for c in r)
        return '\n'.join('  '.join(c.rjust(width) for c in r) for r in cells)

def rate(code):
    """k / p."""
    return Fraction(code.k, code.p)

def structural_zeros(code):
    """Number of entries that are identically zero."""
    return sum(f.is_zero() for f in code.forms())

@dataclass(frozen=True)
class SymbolPairing:
    """
    Which dispersion matrices carry each complex symbol.

    Symbol i (0-based) takes A_{a_slots[i]} on its real part and
    sign_i * B_{perm[i]} on its imaginary part. `a_slots` defaults to the
    identity.
    """
    perm: tuple
    signs: tuple
    a_slots: tuple = None

    def __post_init__(self):
        k = len(self.perm)
        a_slots = tuple(range(k)) if self.a_slots is None else tuple(self.a_slots)
        object.__setattr__(self, 'perm', tuple(self.perm))
        object.__setattr__(self, 'signs', tuple(self.signs))
        object.__setattr__(self, 'a_slots', a_slots)
        if sorted(self.perm) != list(range(k)) or sorted(a_slots) != list(range(k)):
            raise PairingError(f'pairing slots must be bijections on 0..{k - 1}')
        if len(self.signs) != k or any(s not in (1, -1) for s in self.signs):
            raise PairingError('pairing signs must be k values of +1/-1')

    @property
    def k(self):
        return len(self.perm)

    @classmethod
    def identity(cls, k):
        return cls(tuple(range(k)), (1,) * k)

def _normalization(fam, normalize):
    if normalize is None:
        return [ONE] * fam.s, [ONE] * fam.t
    types = gram_types(fam)
    if normalize == 'unit':
        targets = [Fraction(1)] * (fam.s + fam.t)
    elif normalize == 'relative':
        targets = [min(types.values())] * (fam.s + fam.t)
    else:
        raise ValueError(f"normalize must be 'relative', 'unit' or None, "
                         f"got {normalize!r}")
    try:
        factors = [sqrt_dyadic(goal / f) for goal, f in zip(targets, types.values())]
    except ValueError as err:
        raise DesignError(f'{fam.label or "family"} has type ratios that are '
                          f'not powers of two ({err}); use normalize=None') from err
    return factors[:fam.s], factors[fam.s:]

def normalized_family(fam, normalize='relative'):
    """The family with the per-matrix scaling `assemble` applies."""
    a, b = _normalization(fam, normalize)
    return fam.scaled(a, b)

def assemble(fam, pairing=None, normalize='relative', label=None):
    """
    Build the codeword G = sum_i (x_i^R A_i + j sign_i x_i^I B_perm(i)).

    Parameters
    ----------
    fam : DispersionFamily
        Needs s == t.
    pairing : SymbolPairing, optional
        Defaults to the identity pairing.
    normalize : 'relative', 'unit' or None, optional
        'relative' (default) scales each matrix by sqrt(f_min / f_i), so every
        symbol gets the same Gram scalar f_min while constant-type families
        keep their integer coefficients. 'unit' scales by 1 / sqrt(f_i).
        None leaves the matrices alone.
    label : str, optional
        Defaults to the family label.

    Returns
    -------
    SymbolicCode

    Raises
    ------
    PairingError
        s != t, or the pairing has the wrong size.

    """
    if fam.s != fam.t:
        raise PairingError(f'cannot pair s={fam.s} real with t={fam.t} '
                           'imaginary dispersion matrices')
    k = fam.s
    pairing = SymbolPairing.identity(k) if pairing is None else pairing
    if pairing.k != k:
        raise PairingError(f'pairing for {pairing.k} symbols used on a family '
                           f'with {k}')
    fa, fb = _normalization(fam, normalize)
    n = fam.order
    cells = [[[] for _ in range(n)] for _ in range(n)]
    for sym in range(k):
        a = fam.a_mats[pairing.a_slots[sym]].scale(fa[pairing.a_slots[sym]])
        b = fam.b_mats[pairing.perm[sym]].scale(fb[pairing.perm[sym]] * pairing.signs[sym])
        for t in range(n):
            for m in range(n):
                cells[t][m].append((sym, 'R', a[t, m]))
                cells[t][m].append((sym, 'I', J * b[t, m]))
    grid = [[LinearForm(c) for c in row] for row in cells]
    return SymbolicCode(grid, k, fam.label if label is None else label)

def extract_dispersion(code):
    """
    Recover A_i (x_i^R coefficients) and B_i (x_i^I coefficients with j
    removed) from a code.

    `assemble(extract_dispersion(code), normalize=None)` gives back the code.
    """
    forms = code.forms()
    a_mats = []
    b_mats = []
    for sym in range(code.k):
        a_mats.append(ExactMatrix(code.p, code.n_t,
                                  [f.coefficient(sym, 'R') for f in forms]))
        b_mats.append(ExactMatrix(code.p, code.n_t,
                                  [f.coefficient(sym, 'I') * -J for f in forms]))
    return DispersionFamily(code.p, a_mats, b_mats, label=code.label)

def find_pairing(fam, code, normalize='relative'):
    """
    Find the pairing under which `assemble(fam, pairing)` equals `code`.

    Every code symbol is matched to the one normalized A matrix equal to its
    real dispersion matrix and the one normalized B matrix equal to plus or
    minus its imaginary dispersion matrix.

    Raises
    ------
    PairingError
        Some symbol has no match, or the matches are not a bijection.

    """
    if fam.s != fam.t or fam.s != code.k:
        raise PairingError(f'family with s={fam.s}, t={fam.t} cannot produce '
                           f'a code with k={code.k}')
    if fam.order != code.p:
        raise PairingError(f'order {fam.order} family cannot produce a '
                           f'{code.p}x{code.n_t} code')
    norm = normalized_family(fam, normalize)
    target = extract_dispersion(code)
    a_slots, perm, signs = [], [], []
    for sym in range(code.k):
        a_hit = [i for i, m in enumerate(norm.a_mats) if m == target.a_mats[sym]]
        b_hit = [(q, 1) for q, m in enumerate(norm.b_mats) if m == target.b_mats[sym]]
        b_hit += [(q, -1) for q, m in enumerate(norm.b_mats) if m == -target.b_mats[sym]]
        if not a_hit or not b_hit:
            raise PairingError(f'x{sym + 1} of {code.label or "code"} matches no '
                               f'matrix of {fam.label or "family"}')
        a_slots.append(a_hit[0])
        perm.append(b_hit[0][0])
        signs.append(b_hit[0][1])
    return SymbolPairing(tuple(perm), tuple(signs), tuple(a_slots))

def rotate_symbol(code, symbol, degrees):
    """
    Replace x_symbol (1-based) by exp(j degrees) x_symbol throughout the code.

    Only multiples of 45 degrees are exact.

    Raises
    ------
    ValueError
        The angle is not a multiple of 45 degrees or the symbol is not in
        the code.

    """
    if not 1 <= symbol <= code.k:
        raise ValueError(f'symbol {symbol} outside 1..{code.k}')
    factor = rotation(degrees)
    grid = [[f.substitute_rotation(symbol - 1, factor) for f in r] for r in code.grid]
    return SymbolicCode(grid, code.k, f'{code.label} (x{symbol}@{degrees})')

def scale_code(code, factor):
    grid = [[f * factor for f in r] for r in code.grid]
    return SymbolicCode(grid, code.k, code.label)

def conjugate_code(code):
    grid = [[f.conjugate() for f in r] for r in code.grid]
    return SymbolicCode(grid, code.k, code.label)

# ---- catalog ----

_H4 = ((1, 1, 1, 1), (1, -1, 1, -1), (1, 1, -1, -1), (1, -1, -1, 1))

def _th():
    z = ZERO_FORM
    return [
        [x(1), x(2), x(3), z, x(4), z, z, z],
        [-xc(2), xc(1), z, -x(3), z, -x(4), z, z],
        [-xc(3), z, xc(1), x(2), z, z, -x(4), z],
        [z, xc(3), -xc(2), x(1), z, z, z, x(4)],
        [-xc(4), z, z, z, xc(1), x(2), x(3), z],
        [z, xc(4), z, z, -xc(2), x(1), z, -x(3)],
        [z, z, xc(4), z, -xc(3), z, x(1), x(2)],
        [z, z, z, -xc(4), z, xc(3), -xc(2), xc(1)],
    ]

def _ts():
    z = ZERO_FORM
    top = [
        [x(1), z, xr(3) + xi(2), xr(2) + xi(3)],
        [z, x(1), -xr(2) + xi(3), xr(3) - xi(2)],
        [-xr(3) + xi(2), xr(2) + xi(3), xc(1), z],
        [-xr(2) + xi(3), -xr(3) - xi(2), z, xc(1)],
    ]
    bottom = [
        [xr(1) - xi(3), xc(2), xr(3) - xi(1), z],
        [-x(2), xr(1) + xi(3), z, xr(3) - xi(1)],
        [-xr(3) - xi(1), z, xr(1) + xi(3), -xc(2)],
        [z, -xr(3) - xi(1), x(2), xr(1) - xi(3)],
    ]
    right = [[-xc(4) * HALF * h for h in row] for row in _H4]
    left = [[x(4) * HALF * h for h in row] for row in _H4]
    return ([top[r] + right[r] for r in range(4)]
            + [left[r] + bottom[r] for r in range(4)])

def _tjc():
    r = INV_SQRT2
    return [
        [x(1), x(2), x(3) * r, x(3) * r],
        [-xc(2), xc(1), x(3) * r, -x(3) * r],
        [xc(3) * r, xc(3) * r, -xr(1) + xi(2), -xr(2) + xi(1)],
        [xc(3) * r, -xc(3) * r, xr(2) + xi(1), -xr(1) - xi(2)],
    ]

def _gs():
    z = ZERO_FORM
    return [
        [x(1), z, x(2), -x(3)],
        [z, x(1), xc(3), xc(2)],
        [-xc(2), -x(3), xc(1), z],
        [xc(3), -x(2), z, xc(1)],
    ]

def _g8():
    return [
        [xc(1), xc(1), x(2), -x(2), x(3), -x(3), x(4), -x(4)],
        [x(1), -x(1), xc(2), xc(2), xc(3), xc(3), xc(4), xc(4)],
        [-x(2), x(2), xc(1), xc(1), xc(4), -xc(4), -xc(3), xc(3)],
        [-xc(2), -xc(2), x(1), -x(1), x(4), x(4), -x(3), -x(3)],
        [-x(3), x(3), -xc(4), xc(4), xc(1), xc(1), xc(2), -xc(2)],
        [-xc(3), -xc(3), -x(4), -x(4), x(1), -x(1), x(2), x(2)],
        [-x(4), x(4), xc(3), -xc(3), -xc(2), xc(2), xc(1), xc(1)],
        [-xc(4), -xc(4), x(3), x(3), -x(2), -x(2), x(1), -x(1)],
    ]

def _h8():
    # rows 2, 4, 6 and 8 of G8 times j
    rows = _g8()
    return [row if t % 2 == 0 else [f * J for f in row] for t, row in enumerate(rows)]

def _f8():
    return [
        [xc(1), xc(1), x(2), -x(2), x(3), -x(3), x(4), -x(4)],
        [x(1), -x(1), xc(2), xc(2), xc(3), xc(3), xc(4), xc(4)],
        [-x(2), x(2), xc(1), xc(1), -xc(4), xc(4), xc(3), -xc(3)],
        [-xc(2), -xc(2), x(1), -x(1), -x(4), -x(4), x(3), x(3)],
        [-x(3), x(3), xc(4), -xc(4), xc(1), xc(1), -xc(2), xc(2)],
        [-xc(3), -xc(3), x(4), x(4), x(1), -x(1), -x(2), -x(2)],
        [-x(4), x(4), -xc(3), xc(3), xc(2), -xc(2), xc(1), xc(1)],
        [-xc(4), -xc(4), -x(3), -x(3), x(2), x(2), x(1), -x(1)],
    ]

def _g4():
    return [
        [x(1) - xc(2), x(1) + xc(2), x(3), -x(3)],
        [xc(1) + x(2), -xc(1) + x(2), x(3), x(3)],
        [-xc(3), xc(3), x(1) - x(2), x(1) + x(2)],
        [-xc(3), -xc(3), xc(1) + xc(2), -xc(1) + xc(2)],
    ]

# name: (grid builder, number of symbols, description)
FIXTURE_DICT = {
    'G4': (_g4, 3, 'rate 3/4, four antennas, no zero entries'),
    'G8': (_g8, 4, 'rate 1/2, eight antennas, power balanced'),
    'H8': (_h8, 4, 'rate 1/2, eight antennas, complex-entry family'),
    'F8': (_f8, 4, 'rate 1/2, eight antennas, second {M, N} seed'),
    'TH': (_th, 4, 'rate 1/2, eight antennas, half the entries zero'),
    'TS': (_ts, 4, 'rate 1/2, eight antennas, one zero per row'),
    'TJC': (_tjc, 3, 'rate 3/4, four antennas, irrational coefficients'),
    'GS': (_gs, 3, 'rate 3/4, four antennas, one zero per row'),
}

# symbol i uses A_{a_slots[i]} and B_{perm[i]} of the constructed family
G8_PAIRING = SymbolPairing(perm=(3, 0, 1, 2), signs=(1, 1, 1, 1), a_slots=(3, 0, 1, 2))
H8_PAIRING = G8_PAIRING
F8_PAIRING = G8_PAIRING
G4_PAIRING = SymbolPairing(perm=(2, 1, 0), signs=(1, 1, 1), a_slots=(2, 1, 0))

# name: (input family, {M, N} seed or None for construct2, pairing)
CONSTRUCTED_DICT = {
    'G8': ('af2-ex1', 'mn-eq6', G8_PAIRING),
    'H8': ('af2-ex2-complex', 'mn-eq6', H8_PAIRING),
    'F8': ('af2-ex1', 'mn-eq16', F8_PAIRING),
    'G4': ('aod2-ex3', None, G4_PAIRING),
}

def fixture_names():
    return natsorted(FIXTURE_DICT)

def fixture(name):
    """
    A catalog code transcribed entry by entry.

    Parameters
    ----------
    name : str
        One of G4, G8, H8, F8, TH, TS, TJC, GS.

    Raises
    ------
    CatalogError
        Unknown name.

    Examples
    --------
    >>> str(fixture('G8')[0, 0])
    'x1*'

    """
    try:
        builder, k, _ = FIXTURE_DICT[name]
    except KeyError:
        raise CatalogError(f'unknown code {name!r}; choose from '
                           f'{", ".join(fixture_names())}') from None
    return SymbolicCode(builder(), k, name)

def constructed_family(name):
    """The construction output behind a constructed catalog code."""
    try:
        fam_name, seed_name, _ = CONSTRUCTED_DICT[name]
    except KeyError:
        raise CatalogError(f'{name!r} has no construction; choose from '
                           f'{", ".join(natsorted(CONSTRUCTED_DICT))}') from None
    fam = seed_catalog(fam_name)
    if seed_name is None:
        return construct2(fam)
    return construct1(fam, seed_catalog(seed_name))

def constructed_fixture(name):
    """Assemble G8, H8, F8 or G4 through its construction."""
    pairing = CONSTRUCTED_DICT[name][2] if name in CONSTRUCTED_DICT else None
    return assemble(constructed_family(name), pairing, label=name)

def catalog_entries():
    """
    (name, description) rows for the code and seed catalogs, naturally
    sorted, as a nested dict {'codes': [...], 'seeds': [...]}.
    """
    codes = [(n, FIXTURE_DICT[n][2]) for n in fixture_names()]
    seeds = [(n, '{M, N} seed' if n.startswith('mn') else 'order-2 amicable family')
             for n in seed_names()]
    return {'codes': codes, 'seeds': seeds}

def coefficient_arrays(code):
    """
    Floating point coefficient matrices of a code.

    Returns
    -------
    (numpy.ndarray, numpy.ndarray)
        Arrays of shape (k, p, n_t): the x_i^R coefficients and the x_i^I
        coefficients (j included), so that G = sum_i x_i^R AR[i] + x_i^I AI[i].

    """
    forms = code.forms()
    ar = np.array([[f.coefficient(i, 'R').to_complex() for f in forms]
                   for i in range(code.k)], dtype=complex)
    ai = np.array([[f.coefficient(i, 'I').to_complex() for f in forms]
                   for i in range(code.k)], dtype=complex)
    shape = (code.k, code.p, code.n_t)
    return ar.reshape(shape), ai.reshape(shape)
