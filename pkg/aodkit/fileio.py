# -*- coding: utf-8 -*-
"""
Structured text (JSON) documents for families, {M, N} seeds, codes and
transforms.

Every document carries a "kind" field. Scalars are written as the
5-integer list [a_re, a_im, b_re, b_im, e] of `ExactScalar.to_list`, so a
write followed by a read reproduces the object exactly.

"""

import json

from aodkit.codes import LinearForm, SymbolicCode
from aodkit.constructions import MnSeed, Provenance
from aodkit.design import DispersionFamily
from aodkit.equivalence import MonomialTransform
from aodkit.errors import AodkitError, FormatError
from aodkit.exact import ExactMatrix, ExactScalar

KINDS = ('family', 'mn-seed', 'code', 'transform')

# ---- encoding ----

def _matrix_to_list(m):
    return [[v.to_list() for v in row] for row in m.to_rows()]

def _provenance_to_dict(prov):
    if prov is None:
        return None
    return {'construction': prov.construction,
            'input_label': prov.input_label,
            'seed_label': prov.seed_label,
            'layout': prov.layout,
            'parent': _provenance_to_dict(prov.parent)}

def to_document(obj):
    """
    The JSON-ready dict of a DispersionFamily, MnSeed, SymbolicCode or
    MonomialTransform.

    Raises
    ------
    TypeError
        Any other object.

    """
    if isinstance(obj, DispersionFamily):
        return {'kind': 'family',
                'order': obj.order,
                'complex': obj.complex_entries,
                'label': obj.label,
                'a_mats': [_matrix_to_list(m) for m in obj.a_mats],
                'b_mats': [_matrix_to_list(m) for m in obj.b_mats],
                'provenance': _provenance_to_dict(obj.provenance)}
    if isinstance(obj, MnSeed):
        return {'kind': 'mn-seed',
                'label': obj.label,
                'm_mats': [_matrix_to_list(m) for m in obj.m_mats],
                'n_mats': [_matrix_to_list(m) for m in obj.n_mats]}
    if isinstance(obj, SymbolicCode):
        return {'kind': 'code',
                'p': obj.p,
                'n_t': obj.n_t,
                'k': obj.k,
                'label': obj.label,
                'grid': [[[[i, part, c.to_list()] for i, part, c in obj[t, m].terms]
                          for m in range(obj.n_t)] for t in range(obj.p)]}
    if isinstance(obj, MonomialTransform):
        return {'kind': 'transform',
                'left': [list(r) for r in obj.left],
                'right': [list(r) for r in obj.right]}
    raise TypeError(f'cannot serialize {type(obj).__name__}')

def dumps(obj):
    return json.dumps(to_document(obj), indent=1)

def write(obj, path):
    """Write `obj` to `path`; OSError propagates."""
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(obj))
        f.write('\n')

# ---- decoding ----

def _field(doc, key, kind):
    try:
        return doc[key]
    except (KeyError, TypeError):
        raise FormatError(f'{kind} document has no {key!r} field') from None

def _matrix(rows):
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise FormatError(f'matrix must be a non-empty list of rows, got {rows!r}')
    return ExactMatrix.from_rows([[ExactScalar.from_list(v) for v in row] for row in rows])

def _provenance(doc):
    if doc is None:
        return None
    return Provenance(_field(doc, 'construction', 'provenance'),
                      _field(doc, 'input_label', 'provenance'),
                      doc.get('seed_label', ''),
                      doc.get('layout', 'displayed'),
                      _provenance(doc.get('parent')))

def _family(doc):
    return DispersionFamily(_field(doc, 'order', 'family'),
                            [_matrix(m) for m in _field(doc, 'a_mats', 'family')],
                            [_matrix(m) for m in _field(doc, 'b_mats', 'family')],
                            label=doc.get('label', ''),
                            complex_entries=doc.get('complex'),
                            provenance=_provenance(doc.get('provenance')))

def _mn_seed(doc):
    return MnSeed([_matrix(m) for m in _field(doc, 'm_mats', 'mn-seed')],
                  [_matrix(m) for m in _field(doc, 'n_mats', 'mn-seed')],
                  label=doc.get('label', ''))

def _code(doc):
    grid = [[LinearForm((i, part, ExactScalar.from_list(c)) for i, part, c in cell)
             for cell in row] for row in _field(doc, 'grid', 'code')]
    code = SymbolicCode(grid, _field(doc, 'k', 'code'), doc.get('label', ''))
    if (code.p, code.n_t) != (doc.get('p', code.p), doc.get('n_t', code.n_t)):
        raise FormatError(f'code grid is {code.p}x{code.n_t} but the header says '
                          f'{doc.get("p")}x{doc.get("n_t")}')
    return code

def _transform(doc):
    return MonomialTransform(_field(doc, 'left', 'transform'),
                             _field(doc, 'right', 'transform'))

_READERS = {'family': _family,
            'mn-seed': _mn_seed,
            'code': _code,
            'transform': _transform}

def from_document(doc, expect=None):
    """
    Rebuild an object from a parsed document.

    Parameters
    ----------
    doc : dict
    expect : str or sequence of str, optional
        Accepted kinds; others raise FormatError.

    Raises
    ------
    FormatError
        Unknown or unexpected kind, missing fields, or contents that do not
        form a valid object.

    """
    if not isinstance(doc, dict):
        raise FormatError('document must be a JSON object')
    kind = doc.get('kind')
    if kind not in _READERS:
        raise FormatError(f'unknown document kind {kind!r}; expected one of '
                          f'{", ".join(KINDS)}')
    if expect is not None:
        expect = (expect,) if isinstance(expect, str) else tuple(expect)
        if kind not in expect:
            raise FormatError(f'expected a {" or ".join(expect)} document, got {kind}')
    try:
        return _READERS[kind](doc)
    except FormatError:
        raise
    except (AodkitError, ValueError, TypeError) as e:
        raise FormatError(f'invalid {kind} document: {e}') from e

def loads(text, expect=None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f'not valid JSON: {e}') from e
    return from_document(doc, expect)

def read(path, expect=None):
    """Read a document from `path`; OSError propagates for bad paths."""
    with open(path, encoding='utf-8') as f:
        return loads(f.read(), expect)
