# -*- coding: utf-8 -*-
"""
Tree diagrams and plain text tables used to print catalogs, construction
histories and reports.

"""

__pdoc__ = {'TreeNode': False}

import natsort

from aodkit.codes import CONSTRUCTED_DICT, catalog_entries
from aodkit.constructions import SEED_ALIASES

BRANCH = '├─'
LAST = '└─'
PIPE = '│ '
BLANK = '  '

class TreeNode:
    """A labelled node; nodes with children are drawn with a trailing '/'."""

    def __init__(self, name, children=()):
        self.name = name
        self.children = list(children)

    @property
    def isgroup(self):
        return bool(self.children)

    def __repr__(self):
        return f'TreeNode({self.name!r}, {len(self.children)} children)'

def _tree_lines(node, prefix, sort):
    children = node.children
    if sort:
        children = natsort.natsorted(children, key=lambda n: n.name)
    for i, child in enumerate(children):
        last = i == len(children) - 1
        yield prefix + (LAST if last else BRANCH) + _title(child)
        yield from _tree_lines(child, prefix + (BLANK if last else PIPE), sort)

def _title(node):
    return node.name + ('/' if node.isgroup else '')

def render_tree(root, sort=False, printout=False):
    '''
    Draw a TreeNode hierarchy with box drawing branches.

    Parameters
    ----------
    root : TreeNode
    sort : bool, optional
        Naturally sort siblings by name. The default is False.
    printout : bool, optional
        Print instead of returning the string. The default is False.

    Returns
    -------
    str or None

    Examples
    --------
    >>> tree = TreeNode('codes', [TreeNode('G8'), TreeNode('G4')])
    >>> print(render_tree(tree, sort=True))
    codes/
    ├─G4
    └─G8

    '''
    s = '\n'.join([_title(root), *_tree_lines(root, '', sort)])
    if printout:
        print(s)
    else:
        return s

def catalog_tree():
    """
    The code and seed catalogs as a tree. Constructed codes list the
    construction that reproduces them; seeds list their alternative names.
    """
    entries = catalog_entries()
    aliases = {}
    for alias, name in SEED_ALIASES.items():
        aliases.setdefault(name, []).append(alias)
    codes = []
    for name, desc in entries['codes']:
        children = [TreeNode(desc)]
        if name in CONSTRUCTED_DICT:
            fam, seed, _ = CONSTRUCTED_DICT[name]
            how = f'c1({fam}, {seed})' if seed else f'c2({fam})'
            children.append(TreeNode(f'built by {how}'))
        codes.append(TreeNode(name, children))
    seeds = []
    for name, desc in entries['seeds']:
        children = [TreeNode(desc)]
        if name in aliases:
            children.append(TreeNode('alias ' + ', '.join(aliases[name])))
        seeds.append(TreeNode(name, children))
    root = TreeNode('aodkit', [TreeNode('codes', codes), TreeNode('seeds', seeds)])
    return render_tree(root)

def _provenance_node(label, prov):
    if prov is None:
        return TreeNode(label)
    children = [TreeNode(f'{prov.construction} [{prov.layout}]'),
                _provenance_node(prov.input_label, prov.parent)]
    if prov.seed_label:
        children.append(TreeNode(f'seed {prov.seed_label}'))
    return TreeNode(label, children)

def provenance_tree(fam):
    """
    Construction history of a family, newest step at the root.

    Examples
    --------
    >>> from aodkit.constructions import seed_catalog, construct2
    >>> print(provenance_tree(construct2(seed_catalog('aod2-ex3'))))
    c2(aod2-ex3)/
    ├─c2 [displayed]
    └─aod2-ex3

    """
    return render_tree(_provenance_node(fam.label or 'family', fam.provenance))

def format_table(headers, rows, sep='  '):
    """
    Left aligned plain text table with a dashed rule under the header.

    >>> print(format_table(['a', 'bb'], [['1', '2']]))
    a  bb
    -  --
    1  2

    """
    rows = [[str(c) for c in row] for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(headers)]
    def line(cells):
        return sep.join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(headers), line(['-' * w for w in widths])]
    out.extend(line(r) for r in rows)
    return '\n'.join(out)

def format_matrix(cells, sep='  '):
    """Right aligned grid of strings."""
    cells = [[str(c) for c in row] for row in cells]
    width = max((len(c) for row in cells for c in row), default=0)
    return '\n'.join(sep.join(c.rjust(width) for c in row) for row in cells)

def format_family(fam):
    """Every matrix of a family under its name (A1, ..., B1, ...)."""
    lines = [f'{fam.label or "<unnamed>"}: order {fam.order}, '
             f'{fam.s} A + {fam.t} B matrices']
    named = ([(f'A{i + 1}', m) for i, m in enumerate(fam.a_mats)]
             + [(f'B{q + 1}', m) for q, m in enumerate(fam.b_mats)])
    for name, m in named:
        lines.append(f'{name} =')
        lines.extend('  ' + r for r in format_matrix(m.to_rows()).splitlines())
    return '\n'.join(lines)
