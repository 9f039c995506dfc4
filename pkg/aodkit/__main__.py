#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Command line interface of aodkit.

Codes, families and seeds are accepted either as catalog names or as paths
to JSON documents written by `aodkit.fileio`. Errors are printed as
``error: <category>: <message>`` on stderr and mapped to exit statuses:

    0  success
    1  verification failed
    2  usage (argparse)
    3  bad path
    4  malformed file
    5  unknown name
    6  precondition error

"""

import argparse
import os
import sys

from aodkit import fileio
from aodkit.codes import SymbolicCode, extract_dispersion, fixture, rotate_symbol
from aodkit.constructions import (LAYOUTS, MnSeed, construct1, construct2,
                                  seed_catalog, verify_mn_seed)
from aodkit.design import DispersionFamily, verify_aod, verify_af, verify_ostbc
from aodkit.equivalence import (BLOCK_SWAP_TRANSFORM, apply_transform,
                                extract_blocks, format_blocks)
from aodkit.errors import AodkitError, CatalogError, FormatError
from aodkit.power import (format_delimited, format_power_report,
                          format_report_table, format_reports_delimited,
                          power_report, table_report)
from aodkit.printing import catalog_tree, format_family, provenance_tree
from aodkit.simulator import SimConfig, run_ber, snr_grid

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_PATH = 3
EXIT_FORMAT = 4
EXIT_NAME = 5
EXIT_PRECONDITION = 6

helptxt = """
aodkit: amicable orthogonal designs and orthogonal space-time block codes.

Subcommands:

    catalog list
    catalog show NAME [--format text|structured]
    verify SOURCE --level ostbc|aod|af|mn-seed
    construct c1 --input FAMILY --mn SEED [--layout displayed|stated] [--out FILE]
    construct c2 --input FAMILY [--layout displayed|stated] [--out FILE]
    metrics --code CODE [--rotate xI=DEG]... [--constellation SPEC] [--format table|delimited]
    tables (--table 1|2 | --antennas 8|4) [--format table|delimited]
    equiv apply --code CODE --transform FILE|appendix|block-swap [--out FILE]
    equiv blocks --code CODE
    simulate --code CODE --snr START:STEP:STOP --trials N --seed S [--nr N]
             [--constellation SPEC] [--workers N] [--out FILE]

Run `aodkit <subcommand> -h` for the options of one subcommand.
"""

class CliError(Exception):
    """Error carrying an exit status and category for the CLI."""

    def __init__(self, status, category, message):
        super().__init__(message)
        self.status = status
        self.category = category

def _looks_like_path(value):
    return value.endswith('.json') or os.sep in value or '/' in value

def _load(value, expect, by_name):
    """A document from a path or a catalog object from a name."""
    if os.path.isfile(value):
        return fileio.read(value, expect)
    if _looks_like_path(value):
        raise CliError(EXIT_PATH, 'bad path', f'no such file: {value}')
    return by_name(value)

def load_code(value):
    return _load(value, 'code', fixture)

def load_any(value):
    """Code, family or {M, N} seed from a path, code name or seed name."""
    def by_name(name):
        try:
            return fixture(name)
        except CatalogError:
            return seed_catalog(name)
    return _load(value, ('code', 'family', 'mn-seed'), by_name)

def load_family(value):
    fam = _load(value, 'family', seed_catalog)
    if not isinstance(fam, DispersionFamily):
        raise CliError(EXIT_PRECONDITION, 'precondition', f'{value} is not a family')
    return fam

def load_seed(value):
    seed = _load(value, 'mn-seed', seed_catalog)
    if not isinstance(seed, MnSeed):
        raise CliError(EXIT_PRECONDITION, 'precondition', f'{value} is not an {{M, N}} seed')
    return seed

# named signed permutation transforms accepted by equiv apply
TRANSFORM_DICT = {'appendix': BLOCK_SWAP_TRANSFORM,
                  'block-swap': BLOCK_SWAP_TRANSFORM}

# table number: antenna count
TABLE_ANTENNAS = {1: 8, 2: 4}

def named_transform(name):
    try:
        return TRANSFORM_DICT[name]
    except KeyError:
        raise CatalogError(f'unknown transform {name!r}; use a file or one of '
                           f'{", ".join(TRANSFORM_DICT)}') from None

def _emit(obj, out):
    """Write a document to `out`, or print it when no path is given."""
    if out is None:
        print(fileio.dumps(obj))
    else:
        fileio.write(obj, out)

def parse_rotation(text):
    """'x2=45' or '2=45' -> (2, 45.0)."""
    try:
        sym, deg = text.split('=')
        return int(sym.strip().lstrip('xX')), float(deg)
    except ValueError:
        raise CliError(EXIT_USAGE, 'usage',
                       f'rotation must look like x2=45, got {text!r}') from None

# ---- subcommands ----

def cmd_catalog(args):
    if args.action == 'list':
        print(catalog_tree())
        return EXIT_OK
    if args.name is None:
        raise CliError(EXIT_USAGE, 'usage', 'catalog show needs a NAME')
    obj = load_any(args.name)
    if args.format == 'structured':
        print(fileio.dumps(obj))
    elif isinstance(obj, SymbolicCode):
        print(f'{obj.label}: {obj.p}x{obj.n_t}, k={obj.k}')
        print(obj)
    elif isinstance(obj, MnSeed):
        print(format_family(obj.as_family()))
    else:
        print(format_family(obj))
    return EXIT_OK

def cmd_verify(args):
    obj = load_any(args.source)
    if args.level == 'ostbc':
        if not isinstance(obj, SymbolicCode):
            raise CliError(EXIT_PRECONDITION, 'precondition',
                           'level ostbc needs a code')
        report = verify_ostbc(obj)
    elif args.level == 'mn-seed':
        if not isinstance(obj, MnSeed):
            raise CliError(EXIT_PRECONDITION, 'precondition',
                           'level mn-seed needs an {M, N} seed')
        report = verify_mn_seed(obj)
    else:
        if isinstance(obj, SymbolicCode):
            obj = extract_dispersion(obj)
        elif isinstance(obj, MnSeed):
            obj = obj.as_family()
        report = verify_aod(obj) if args.level == 'aod' else verify_af(obj)
    print(report)
    return EXIT_OK if report.passed else EXIT_FAILED

def cmd_construct(args):
    fam = load_family(args.input)
    if args.construction == 'c1':
        if args.mn is None:
            raise CliError(EXIT_USAGE, 'usage', 'construct c1 needs --mn')
        out = construct1(fam, load_seed(args.mn), layout=args.layout)
    else:
        out = construct2(fam, layout=args.layout)
    _emit(out, args.out)
    if args.out is not None:
        print(provenance_tree(out))
    return EXIT_OK

def cmd_metrics(args):
    code = load_code(args.code)
    for sym, deg in (parse_rotation(r) for r in args.rotate or []):
        code = rotate_symbol(code, sym, deg)
    report = power_report(code, args.constellation)
    if args.format == 'delimited':
        print(format_reports_delimited([report]), end='')
    else:
        print(format_power_report(report))
    return EXIT_OK

def cmd_tables(args):
    n_t = args.antennas or TABLE_ANTENNAS[args.table]
    rows = table_report(n_t)
    if args.format == 'delimited':
        print(format_delimited(rows), end='')
    else:
        print(format_report_table(rows))
    return EXIT_OK

def cmd_equiv(args):
    code = load_code(args.code)
    if args.action == 'blocks':
        print(format_blocks(extract_blocks(code)))
        return EXIT_OK
    if args.transform is None:
        raise CliError(EXIT_USAGE, 'usage', 'equiv apply needs --transform')
    tr = _load(args.transform, 'transform', named_transform)
    _emit(apply_transform(code, tr), args.out)
    return EXIT_OK

def cmd_simulate(args):
    cfg = SimConfig(load_code(args.code), constellations=args.constellation,
                    n_r=args.nr, snr_grid_db=snr_grid(args.snr),
                    trials=args.trials, seed=args.seed, block_size=args.block_size)
    text = run_ber(cfg, workers=args.workers).to_delimited()
    if args.out is None:
        print(text, end='')
    else:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(text)
    return EXIT_OK

# ---- parsing ----

def parse(argv=None):
    """Parse command line arguments with argparse."""

    parser = argparse.ArgumentParser(prog='aodkit', description=helptxt,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('catalog', help='list or show catalog entries')
    p.add_argument('action', choices=['list', 'show'])
    p.add_argument('name', nargs='?', default=None)
    p.add_argument('--format', default='text', choices=['text', 'structured'])
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser('verify', help='check a code, family or seed')
    p.add_argument('source')
    p.add_argument('--level', required=True, choices=['ostbc', 'aod', 'af', 'mn-seed'])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('construct', help='build a larger family')
    p.add_argument('construction', choices=['c1', 'c2'])
    p.add_argument('--input', required=True)
    p.add_argument('--mn', default=None)
    p.add_argument('--layout', default='displayed', choices=LAYOUTS)
    p.add_argument('--out', default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser('metrics', help='power distribution of a code')
    p.add_argument('--code', required=True)
    p.add_argument('--rotate', action='append', default=None)
    p.add_argument('--constellation', default='qpsk')
    p.add_argument('--format', default='table', choices=['table', 'delimited'])
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser('tables', help='recompute the published power tables')
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument('--table', type=int, choices=sorted(TABLE_ANTENNAS))
    which.add_argument('--antennas', type=int, choices=[8, 4])
    p.add_argument('--format', default='table', choices=['table', 'delimited'])
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser('equiv', help='signed permutation transforms and block layouts')
    p.add_argument('action', choices=['apply', 'blocks'])
    p.add_argument('--code', required=True)
    p.add_argument('--transform', default=None)
    p.add_argument('--out', default=None)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser('simulate', help='Monte Carlo BER over Rayleigh fading')
    p.add_argument('--code', required=True)
    p.add_argument('--snr', required=True)
    p.add_argument('--trials', required=True, type=int)
    p.add_argument('--seed', required=True, type=int)
    p.add_argument('--nr', default=1, type=int)
    p.add_argument('--constellation', default='qpsk')
    p.add_argument('--workers', default=1, type=int)
    p.add_argument('--block-size', dest='block_size', default=1000, type=int)
    p.add_argument('--out', default=None)
    p.set_defaults(func=cmd_simulate)

    return parser.parse_args(argv)

def _fail(status, category, message):
    print(f'error: {category}: {message}', file=sys.stderr)
    return status

def main(argv=None):
    """Parse arguments, run one subcommand and return its exit status."""
    try:
        args = parse(argv)
    except SystemExit as e:
        return e.code
    try:
        return args.func(args)
    except CliError as e:
        return _fail(e.status, e.category, e)
    except OSError as e:
        return _fail(EXIT_PATH, 'bad path', e)
    except FormatError as e:
        return _fail(EXIT_FORMAT, 'malformed file', e)
    except CatalogError as e:
        return _fail(EXIT_NAME, 'unknown name', e)
    except (AodkitError, ValueError, TypeError) as e:
        return _fail(EXIT_PRECONDITION, 'precondition', e)

if __name__ == '__main__':
    sys.exit(main())
