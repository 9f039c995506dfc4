# -*- coding: utf-8 -*-
"""
Kronecker constructions of higher-order amicable families.

`construct1` takes an order-n family and an {M, N} seed (six 4x4 matrices)
to an order-4n family with four more variables; `construct2` takes an
order-n family to an order-2n family with two more variables, using three
fixed 2x2 matrices. Chaining them from the order-1 family {[1]; [1]} reaches
the largest variable count allowed at every order that is a power of two.

Both constructions take a `layout`:

- ``'displayed'`` (default) multiplies as seed (x) X. The catalog codes G4, G8,
  H8 and F8 are written in this layout, so they come out entry for entry.
- ``'stated'`` multiplies as X (x) seed.

The two differ by a perfect shuffle of rows and columns
(`aodkit.exact.commutation_permutation`).

The module also holds the seed catalog: the order-2 starting families and
the two {M, N} seeds.

"""

from dataclasses import dataclass

from natsort import natsorted

from aodkit.design import (DispersionFamily, TypeVector, VerifyReport,
                           Violation, _anticommuting, _amicable, _disjoint,
                           _named, gram_types, verify_af)
from aodkit.errors import CatalogError, ConstructionError, DesignError
from aodkit.exact import (ExactMatrix, mat_hadamard, mat_hermitian, mat_kron)

LAYOUTS = ('displayed', 'stated')

@dataclass(frozen=True)
class Provenance:
    """
    How a family was built: construction id (c1 or c2), input and seed
    labels, the Kronecker layout and the provenance of the input, if any.
    """
    construction: str
    input_label: str
    seed_label: str = ''
    layout: str = 'displayed'
    parent: 'Provenance' = None

    def describe(self):
        seed = f', seed {self.seed_label}' if self.seed_label else ''
        return f'{self.construction}({self.input_label}{seed}) [{self.layout}]'

class MnSeed:
    """
    The six order-4 matrices {M_1, M_2, M_3; N_1, N_2, N_3} used by
    `construct1`.

    Raises
    ------
    DesignError
        Not exactly three 4x4 matrices per side.

    """

    def __init__(self, m_mats, n_mats, label=''):
        m_mats = tuple(m_mats)
        n_mats = tuple(n_mats)
        if len(m_mats) != 3 or len(n_mats) != 3:
            raise DesignError('an {M, N} seed has three M and three N matrices')
        for name, m in _named(m_mats, n_mats):
            if m.shape != (4, 4):
                raise DesignError(f'seed matrix {name} is {m.rows}x{m.cols}, '
                                  'expected 4x4')
        self.m_mats = m_mats
        self.n_mats = n_mats
        self.label = label

    def as_family(self):
        """The seed viewed as an order-4 family with six variables."""
        return DispersionFamily(4, self.m_mats, self.n_mats, self.label)

    @property
    def complex_entries(self):
        return not all(m.is_real() for m in self.m_mats + self.n_mats)

    def __eq__(self, other):
        if not isinstance(other, MnSeed):
            return NotImplemented
        return self.m_mats == other.m_mats and self.n_mats == other.n_mats

    def __hash__(self):
        return hash((self.m_mats, self.n_mats))

    def __repr__(self):
        return f'MnSeed({self.label!r})'

def _seed_named(seed):
    m = [(f'M{i + 1}', x) for i, x in enumerate(seed.m_mats)]
    n = [(f'N{i + 1}', x) for i, x in enumerate(seed.n_mats)]
    return m, n

def verify_mn_seed(seed, target='AOD'):
    """
    Check an {M, N} seed for use in `construct1`.

    Parameters
    ----------
    seed : MnSeed
    target : 'AOD' or 'AF'
        For an AF target the disjointness conditions (5-0 and 5iv) are
        skipped. For an AOD target every u_i and v_i must also equal 1
        (condition id ``5i-unit``).

    Returns
    -------
    VerifyReport

    Raises
    ------
    ValueError
        Unknown target.

    """
    if target not in ('AOD', 'AF'):
        raise ValueError(f'target must be AOD or AF, got {target!r}')
    named_m, named_n = _seed_named(seed)
    violations = []
    if target == 'AOD':
        violations += _disjoint(named_m, '5-0') + _disjoint(named_n, '5-0')
    for name, m in named_m + named_n:
        g = mat_hermitian(m) @ m
        c = g.scalar_of_identity()
        if c is None or not c.is_rational() or c.sign() <= 0:
            violations.append(Violation('5i', (name,), g))
        elif target == 'AOD' and c != 1:
            violations.append(Violation('5i-unit', (name,), g))
    violations += _anticommuting(named_m, '5ii') + _anticommuting(named_n, '5ii')
    violations += _amicable(named_m, named_n, '5iii')
    eye = ExactMatrix.identity(4)
    for name, m in named_m + named_n:
        if target == 'AOD':
            p = mat_hadamard(m, eye)
            if not p.is_zero():
                violations.append(Violation('5iv', (name,), p))
        p = mat_hermitian(m) + m
        if not p.is_zero():
            violations.append(Violation('5v', (name,), p))
    return VerifyReport(seed.label, f'mn-seed ({target})', tuple(violations))

def seed_types(seed):
    """Type vector (u_1, u_2, u_3; v_1, v_2, v_3) of a seed."""
    return gram_types(seed.as_family())

def _kron(layout):
    if layout == 'displayed':
        return lambda x, y: mat_kron(y, x)
    if layout == 'stated':
        return mat_kron
    raise ValueError(f'layout must be one of {LAYOUTS}, got {layout!r}')

def construct1(fam, seed, layout='displayed'):
    """
    Order n -> 4n construction.

    Returns the family

        {B_1 (x) M_1, B_1 (x) M_2, B_1 (x) M_3, A_i (x) I_4 (2 <= i <= s);
         A_1 (x) N_1, A_1 (x) N_2, A_1 (x) N_3, B_q (x) I_4 (2 <= q <= t)}

    with (x) applied in the requested layout.

    Parameters
    ----------
    fam : DispersionFamily
        Needs s >= 1 and t >= 1.
    seed : MnSeed
    layout : 'displayed' or 'stated'

    Returns
    -------
    DispersionFamily
        Order 4n with s + t + 4 variables and a `Provenance` attached.

    Raises
    ------
    ConstructionError
        s == 0 or t == 0.

    """
    if fam.s == 0 or fam.t == 0:
        raise ConstructionError(f'construct1 needs s >= 1 and t >= 1, '
                                f'{fam.label or "input"} has s={fam.s}, t={fam.t}')
    kr = _kron(layout)
    eye = ExactMatrix.identity(4)
    a1, b1 = fam.a_mats[0], fam.b_mats[0]
    a_out = [kr(b1, m) for m in seed.m_mats] + [kr(a, eye) for a in fam.a_mats[1:]]
    b_out = [kr(a1, n) for n in seed.n_mats] + [kr(b, eye) for b in fam.b_mats[1:]]
    prov = Provenance('c1', fam.label, seed.label, layout, fam.provenance)
    return DispersionFamily(4 * fam.order, a_out, b_out,
                            label=f'c1({fam.label}, {seed.label})',
                            complex_entries=fam.complex_entries or seed.complex_entries,
                            provenance=prov)

C2_N1 = ExactMatrix.from_rows([[0, 1], [-1, 0]])
C2_N2 = ExactMatrix.from_rows([[0, 1], [1, 0]])
C2_N3 = ExactMatrix.from_rows([[1, 0], [0, -1]])

def construct2(fam, layout='displayed'):
    """
    Order n -> 2n construction.

    Returns {B_1 (x) N_1, A_i (x) I_2 (1 <= i <= s); B_1 (x) N_2,
    B_1 (x) N_3, B_q (x) I_2 (2 <= q <= t)} with the fixed matrices
    N_1 = [0 1; -1 0], N_2 = [0 1; 1 0], N_3 = [1 0; 0 -1].

    Raises
    ------
    ConstructionError
        t == 0.

    """
    if fam.t == 0:
        raise ConstructionError(f'construct2 needs t >= 1, '
                                f'{fam.label or "input"} has t=0')
    kr = _kron(layout)
    eye = ExactMatrix.identity(2)
    b1 = fam.b_mats[0]
    a_out = [kr(b1, C2_N1)] + [kr(a, eye) for a in fam.a_mats]
    b_out = [kr(b1, C2_N2), kr(b1, C2_N3)] + [kr(b, eye) for b in fam.b_mats[1:]]
    prov = Provenance('c2', fam.label, '', layout, fam.provenance)
    return DispersionFamily(2 * fam.order, a_out, b_out,
                            label=f'c2({fam.label})',
                            complex_entries=fam.complex_entries,
                            provenance=prov)

def expected_types_c1(types, seed_types):
    """
    Type of construct1's output predicted from the input type (f; g) and the
    seed type (u; v): (g_1 u_1, g_1 u_2, g_1 u_3, f_2..f_s;
    f_1 v_1, f_1 v_2, f_1 v_3, g_2..g_t).
    """
    f, g = types.f, types.g
    u, v = seed_types.f, seed_types.g
    return TypeVector(tuple(g[0] * x for x in u) + tuple(f[1:]),
                      tuple(f[0] * x for x in v) + tuple(g[1:]))

def expected_types_c2(types):
    """(g_1, f_1..f_s; g_1, g_1, g_2..g_t)."""
    f, g = types.f, types.g
    return TypeVector((g[0],) + tuple(f), (g[0], g[0]) + tuple(g[1:]))

def trivial_family():
    """The order-1 AOD {[1]; [1]}."""
    one = ExactMatrix.from_rows([[1]])
    return DispersionFamily(1, [one], [one], label='order-1')

def build_chain(start, steps, seed='mn-eq6', layout='displayed'):
    """
    Apply a sequence of constructions.

    Parameters
    ----------
    start : DispersionFamily
    steps : str or iterable of str
        'c1' / 'c2' tokens; a string is split on whitespace and commas.
    seed : str or MnSeed, optional
        Seed used by every c1 step.
    layout : str, optional

    Returns
    -------
    list of DispersionFamily
        ``[start, after step 1, after step 2, ...]``.

    Examples
    --------
    >>> chain = build_chain(trivial_family(), 'c2 c1 c1')
    >>> [f.order for f in chain]
    [1, 2, 8, 32]

    """
    if isinstance(steps, str):
        steps = steps.replace(',', ' ').split()
    if isinstance(seed, str):
        seed = seed_catalog(seed)
    chain = [start]
    for step in steps:
        if step == 'c1':
            chain.append(construct1(chain[-1], seed, layout))
        elif step == 'c2':
            chain.append(construct2(chain[-1], layout))
        else:
            raise ValueError(f'unknown construction step {step!r}')
    return chain

# ---- seed catalog ----

def _m(rows):
    return ExactMatrix.from_rows(rows)

def _af2_real():
    return DispersionFamily(
        2,
        [_m([[1, -1], [-1, -1]]), _m([[1, 1], [1, -1]])],
        [_m([[1, -1], [1, 1]]), _m([[-1, -1], [1, -1]])],
        label='af2-ex1')

def _af2_complex():
    j = 1j
    return DispersionFamily(
        2,
        [_m([[1, -1], [-j, -j]]), _m([[1, 1], [j, -j]])],
        [_m([[1, -1], [j, j]]), _m([[-1, -1], [j, -j]])],
        label='af2-ex2-complex', complex_entries=True)

def _af2_overlap():
    return DispersionFamily(
        2,
        [_m([[-1, 1], [1, 1]]), _m([[1, 1], [1, -1]])],
        [_m([[1, -1], [1, 1]]), _m([[1, 1], [-1, 1]])],
        label='aod2-ex3')

_BASE_M = ([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
          [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]],
          [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])
_BASE_N = ([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
          [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
          [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]])

def _mn_base():
    return MnSeed([_m(r) for r in _BASE_M], [_m(r) for r in _BASE_N], 'mn-eq6')

def _mn_swapped():
    # the M and N roles of the first seed swapped
    return MnSeed([_m(r) for r in _BASE_N], [_m(r) for r in _BASE_M], 'mn-eq16')

# name: (builder, self-check)
SEED_DICT = {
    'af2-ex1': (_af2_real, verify_af),
    'af2-ex2-complex': (_af2_complex, verify_af),
    # fails disjointness (both A matrices fill every position), so it is
    # checked as an amicable family
    'aod2-ex3': (_af2_overlap, verify_af),
    'mn-eq6': (_mn_base, lambda s: verify_mn_seed(s, 'AOD')),
    'mn-eq16': (_mn_swapped, lambda s: verify_mn_seed(s, 'AOD')),
}

# descriptive alternative names
SEED_ALIASES = {
    'af2-real': 'af2-ex1',
    'af2-complex': 'af2-ex2-complex',
    'af2-overlap': 'aod2-ex3',
    'mn-base': 'mn-eq6',
    'mn-swapped': 'mn-eq16',
}

def seed_names():
    return natsorted(SEED_DICT)

def seed_catalog(name):
    """
    Load a catalog seed by name.

    Parameters
    ----------
    name : str
        One of ``af2-ex1``, ``af2-ex2-complex``, ``aod2-ex3``, ``mn-eq6``,
        ``mn-eq16``, or an alias from `SEED_ALIASES` (``af2-real``,
        ``af2-complex``, ``af2-overlap``, ``mn-base``, ``mn-swapped``).
        The returned object is labelled with the primary name.

    Returns
    -------
    DispersionFamily or MnSeed

    Raises
    ------
    CatalogError
        Unknown name.
    DesignError
        The entry failed its own verifier.

    """
    name = SEED_ALIASES.get(name, name)
    try:
        builder, check = SEED_DICT[name]
    except KeyError:
        raise CatalogError(f'unknown seed {name!r}; choose from '
                           f'{", ".join(seed_names())}') from None
    obj = builder()
    report = check(obj)
    if not report.passed:
        raise DesignError(f'catalog seed {name} fails its self-check:\n{report}')
    return obj
