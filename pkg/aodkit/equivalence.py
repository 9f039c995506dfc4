# -*- coding: utf-8 -*-
"""
Signed permutation transforms of codes and 2x2 block pattern recognition.

Left and right multiplication by signed permutation matrices keeps a code
orthogonal and only permutes its entry powers. A transform is stored as two
lists of (column, sign) pairs, one pair per matrix row:

- left: row i of the output is sign_i times row col_i of the input;
- right: column col_k of the output is sign_k times column k of the input.

`extract_blocks` splits an 8x8 code into 2x2 blocks and tests it against the
block layouts Q8, Q2 and T2.

"""

from dataclasses import dataclass, field

from aodkit.codes import SymbolicCode
from aodkit.errors import ShapeError
from aodkit.exact import ExactMatrix

class MonomialTransform:
    """
    A pair (L, R) of signed permutation matrices acting as G -> L G R.

    Parameters
    ----------
    left, right : sequence of (int, int)
        (column, sign) of the single nonzero entry of each row.

    Raises
    ------
    ShapeError
        Columns do not form a permutation.
    ValueError
        A sign other than +1 / -1.

    """

    def __init__(self, left, right):
        self.left = self._check(left, 'left')
        self.right = self._check(right, 'right')

    @staticmethod
    def _check(rows, side):
        rows = tuple((int(c), int(s)) for c, s in rows)
        cols = sorted(c for c, _ in rows)
        if cols != list(range(len(rows))):
            raise ShapeError(f'{side} factor is not a permutation: {rows}')
        if any(s not in (1, -1) for _, s in rows):
            raise ValueError(f'{side} factor signs must be +1 or -1')
        return rows

    @classmethod
    def identity(cls, n, m=None):
        m = n if m is None else m
        return cls([(i, 1) for i in range(n)], [(i, 1) for i in range(m)])

    @staticmethod
    def expand(perm, signs, block=2):
        """
        Rows of (P with signs) kron I_block: row block*b + r has its entry in
        column block*perm[b] + r.
        """
        return [(block * p + r, s) for p, s in zip(perm, signs) for r in range(block)]

    @classmethod
    def from_block(cls, left_perm, left_signs, right_perm, right_signs, block=2):
        """Transform built from block-level signed permutations kron I_block."""
        return cls(cls.expand(left_perm, left_signs, block),
                   cls.expand(right_perm, right_signs, block))

    @classmethod
    def random(cls, n, rng, m=None):
        """Uniformly random signed permutations from a numpy Generator."""
        m = n if m is None else m
        def side(size):
            perm = rng.permutation(size)
            signs = rng.choice([-1, 1], size=size)
            return list(zip(perm.tolist(), signs.tolist()))
        return cls(side(n), side(m))

    @staticmethod
    def _matrix(rows):
        n = len(rows)
        entries = [0] * (n * n)
        for i, (c, s) in enumerate(rows):
            entries[i * n + c] = s
        return ExactMatrix(n, n, entries)

    def to_matrix(self, side='left'):
        if side not in ('left', 'right'):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        return self._matrix(self.left if side == 'left' else self.right)

    def __eq__(self, other):
        if not isinstance(other, MonomialTransform):
            return NotImplemented
        return self.left == other.left and self.right == other.right

    def __repr__(self):
        return f'MonomialTransform(n={len(self.left)}, m={len(self.right)})'

# diag(1, 1, -1, -1) kron I2 on the left, swap of the two block-column pairs
# kron I2 on the right
BLOCK_SWAP_TRANSFORM = MonomialTransform.from_block(
    (0, 1, 2, 3), (1, 1, -1, -1),
    (2, 3, 0, 1), (1, 1, 1, 1))

def apply_transform(code, tr):
    """
    Return L G R for a code G.

    Raises
    ------
    ShapeError
        Transform and code dimensions differ.

    Examples
    --------
    >>> from aodkit.codes import fixture
    >>> g8 = fixture('G8')
    >>> apply_transform(g8, MonomialTransform.identity(8)) == g8
    True

    """
    if len(tr.left) != code.p or len(tr.right) != code.n_t:
        raise ShapeError(f'{len(tr.left)}x{len(tr.right)} transform does not fit '
                         f'a {code.p}x{code.n_t} code')
    lg = [[code[c, m] * s for m in range(code.n_t)] for c, s in tr.left]
    out = [[None] * code.n_t for _ in range(code.p)]
    for i in range(code.p):
        for k, (c, s) in enumerate(tr.right):
            out[i][c] = lg[i][k] * s
    return SymbolicCode(out, code.k, code.label)

# ---- block patterns ----

PATTERN_DICT = {
    'Q8': (('P', 'Q', 'R', 'S'),
           ('-Q', 'P', 'S*', '-R*'),
           ('-R', '-S*', 'P', 'Q*'),
           ('-S', 'R*', '-Q*', 'P')),
    'Q2': (('P', 'Q', 'R', 'S'),
           ('-Q', 'P', '-S*', 'R*'),
           ('-R', 'S*', 'P', '-Q*'),
           ('-S', '-R*', 'Q*', 'P')),
    'T2': (('R', 'S', 'P', 'Q'),
           ('-S*', 'R*', '-Q', 'P'),
           ('-P', 'Q*', 'R', '-S*'),
           ('-Q*', '-P', 'S', 'R*')),
}

@dataclass(frozen=True)
class BlockPattern:
    """
    Result of `extract_blocks`: the matching layout id ('none' when no
    layout matches) and the 2x2 blocks named by the layout's first block row.
    """
    pattern_id: str
    blocks: dict = field(default_factory=dict)

    @property
    def matched(self):
        return self.pattern_id != 'none'

def _parse_token(token):
    neg = token.startswith('-')
    conj = token.endswith('*')
    return neg, conj, token.strip('-*')

def _transform_block(block, neg, conj):
    out = []
    for row in block:
        new = []
        for f in row:
            if conj:
                f = f.conjugate()
            if neg:
                f = -f
            new.append(f)
        out.append(tuple(new))
    return tuple(out)

def code_blocks(code, size=2):
    """The code as a grid of size x size blocks of LinearForm."""
    n = code.p // size
    return [[tuple(tuple(code[bi * size + r, bj * size + c] for c in range(size))
                   for r in range(size))
             for bj in range(n)] for bi in range(n)]

def _match(blocks, layout):
    letters = {}
    for c, token in enumerate(layout[0]):
        neg, conj, letter = _parse_token(token)
        letters[letter] = _transform_block(blocks[0][c], neg, conj)
    for r, row in enumerate(layout):
        for c, token in enumerate(row):
            neg, conj, letter = _parse_token(token)
            if _transform_block(letters[letter], neg, conj) != blocks[r][c]:
                return None
    return letters

def extract_blocks(code, patterns=('Q8', 'Q2', 'T2')):
    """
    Identify the 2x2 block layout of an 8x8 code.

    Conjugating a block conjugates every entry as a linear form.

    Parameters
    ----------
    code : SymbolicCode
        8x8 code.
    patterns : sequence of str, optional
        Layout ids from `PATTERN_DICT`, tried in order.

    Returns
    -------
    BlockPattern
        pattern_id 'none' with no blocks when nothing matches.

    Raises
    ------
    ShapeError
        The code is not 8x8.

    """
    if code.p != 8 or code.n_t != 8:
        raise ShapeError(f'block layouts are defined for 8x8 codes, got '
                         f'{code.p}x{code.n_t}')
    blocks = code_blocks(code)
    for pid in patterns:
        letters = _match(blocks, PATTERN_DICT[pid])
        if letters is not None:
            return BlockPattern(pid, letters)
    return BlockPattern('none')

def format_blocks(pattern):
    """Text rendering of a BlockPattern."""
    if not pattern.matched:
        return 'pattern: none'
    lines = [f'pattern: {pattern.pattern_id}']
    for letter in sorted(pattern.blocks):
        block = pattern.blocks[letter]
        cells = [[str(f) for f in row] for row in block]
        width = max(len(c) for row in cells for c in row)
        lines.append(f'{letter} =')
        lines.extend('  ' + '  '.join(c.rjust(width) for c in row) for row in cells)
    return '\n'.join(lines)
