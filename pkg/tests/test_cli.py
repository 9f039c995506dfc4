# -*- coding: utf-8 -*-
"""
Tests for the aodkit command line (aodkit.__main__).

Test methods MUST start with "test"
"""

import json

import pytest

from aodkit import fileio
from aodkit.codes import fixture
from aodkit.__main__ import (EXIT_FAILED, EXIT_FORMAT, EXIT_NAME, EXIT_OK,
                             EXIT_PATH, EXIT_PRECONDITION, EXIT_USAGE, main,
                             parse_rotation)
from aodkit.equivalence import extract_blocks

def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err

class TestCatalog:
    def test_list(self, capsys):
        status, out, _ = run(capsys, 'catalog', 'list')
        assert status == EXIT_OK
        assert 'G8' in out and 'mn-eq6' in out

    def test_list_shows_aliases(self, capsys):
        status, out, _ = run(capsys, 'catalog', 'list')
        assert status == EXIT_OK
        assert 'alias af2-overlap' in out

    def test_list_rejects_style(self, capsys):
        assert run(capsys, 'catalog', 'list', '--style', 'spaces')[0] == EXIT_USAGE

    def test_show_alias(self, capsys):
        status, out, _ = run(capsys, 'catalog', 'show', 'mn-base')
        assert status == EXIT_OK
        assert out.splitlines()[0] == 'mn-eq6: order 4, 3 A + 3 B matrices'

    def test_show_code(self, capsys):
        status, out, _ = run(capsys, 'catalog', 'show', 'G8')
        assert status == EXIT_OK
        assert out.splitlines()[0] == 'G8: 8x8, k=4'

    def test_show_seed(self, capsys):
        status, out, _ = run(capsys, 'catalog', 'show', 'mn-eq6')
        assert status == EXIT_OK
        assert out.splitlines()[0] == 'mn-eq6: order 4, 3 A + 3 B matrices'

    def test_show_structured(self, capsys):
        status, out, _ = run(capsys, 'catalog', 'show', 'af2-ex1', '--format', 'structured')
        assert status == EXIT_OK
        assert json.loads(out)['kind'] == 'family'

    def test_show_needs_name(self, capsys):
        status, _, err = run(capsys, 'catalog', 'show')
        assert status == EXIT_USAGE
        assert err.startswith('error: usage:')

    def test_unknown_name(self, capsys):
        status, _, err = run(capsys, 'catalog', 'show', 'G16')
        assert status == EXIT_NAME
        assert err.startswith('error: unknown name:')

class TestVerify:
    def test_ostbc(self, capsys):
        status, out, _ = run(capsys, 'verify', 'G8', '--level', 'ostbc')
        assert status == EXIT_OK
        assert 'PASS' in out

    def test_aod_failure(self, capsys):
        status, out, _ = run(capsys, 'verify', 'aod2-ex3', '--level', 'aod')
        assert status == EXIT_FAILED
        assert '4-0' in out

    def test_af(self, capsys):
        status, _, _ = run(capsys, 'verify', 'aod2-ex3', '--level', 'af')
        assert status == EXIT_OK

    def test_code_as_family(self, capsys):
        status, _, _ = run(capsys, 'verify', 'G8', '--level', 'aod')
        assert status == EXIT_OK

    def test_mn_seed(self, capsys):
        assert run(capsys, 'verify', 'mn-eq16', '--level', 'mn-seed')[0] == EXIT_OK

    def test_wrong_object(self, capsys):
        status, _, err = run(capsys, 'verify', 'G8', '--level', 'mn-seed')
        assert status == EXIT_PRECONDITION
        assert err.startswith('error: precondition:')

    def test_missing_level(self, capsys):
        assert run(capsys, 'verify', 'G8')[0] == EXIT_USAGE

    def test_missing_file(self, capsys, tmp_path):
        status, _, err = run(capsys, 'verify', str(tmp_path / 'none.json'), '--level', 'af')
        assert status == EXIT_PATH
        assert err.startswith('error: bad path:')

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text('{"kind": "family"')
        status, _, err = run(capsys, 'verify', str(path), '--level', 'af')
        assert status == EXIT_FORMAT
        assert err.startswith('error: malformed file:')

    def test_from_file(self, capsys, tmp_path):
        path = tmp_path / 'g4.json'
        fileio.write(fixture('G4'), path)
        assert run(capsys, 'verify', str(path), '--level', 'ostbc')[0] == EXIT_OK

class TestConstruct:
    def test_c1_to_file(self, capsys, tmp_path):
        path = tmp_path / 'g8.json'
        status, out, _ = run(capsys, 'construct', 'c1', '--input', 'af2-ex1',
                             '--mn', 'mn-eq6', '--out', str(path))
        assert status == EXIT_OK
        assert out.splitlines()[0] == 'c1(af2-ex1, mn-eq6)/'
        fam = fileio.read(path, expect='family')
        assert fam.order == 8
        assert run(capsys, 'verify', str(path), '--level', 'aod')[0] == EXIT_OK

    def test_c2_to_stdout(self, capsys):
        status, out, _ = run(capsys, 'construct', 'c2', '--input', 'aod2-ex3',
                             '--layout', 'stated')
        assert status == EXIT_OK
        doc = json.loads(out)
        assert doc['order'] == 4
        assert doc['provenance']['layout'] == 'stated'

    def test_c1_needs_seed(self, capsys):
        assert run(capsys, 'construct', 'c1', '--input', 'af2-ex1')[0] == EXIT_USAGE

    def test_seed_is_not_family(self, capsys):
        status = run(capsys, 'construct', 'c2', '--input', 'mn-eq6')[0]
        assert status == EXIT_PRECONDITION

    def test_family_is_not_seed(self, capsys):
        status = run(capsys, 'construct', 'c1', '--input', 'af2-ex1', '--mn', 'af2-ex1')[0]
        assert status == EXIT_PRECONDITION

    def test_code_name_is_unknown_family(self, capsys):
        assert run(capsys, 'construct', 'c2', '--input', 'G8')[0] == EXIT_NAME

    def test_unwritable(self, capsys, tmp_path):
        out = str(tmp_path / 'missing-dir' / 'x.json')
        status = run(capsys, 'construct', 'c2', '--input', 'af2-ex1', '--out', out)[0]
        assert status == EXIT_PATH

class TestMetrics:
    def test_rotated_g4(self, capsys):
        status, out, _ = run(capsys, 'metrics', '--code', 'G4', '--rotate', 'x2=45')
        assert status == EXIT_OK
        assert 'P_o       0' in out
        assert 'peak/ave  2.276142' in out

    def test_delimited(self, capsys):
        status, out, _ = run(capsys, 'metrics', '--code', 'TH', '--format', 'delimited')
        assert status == EXIT_OK
        assert out.splitlines()[1] == 'TH,qpsk,2,inf,1/2,8,Yes,No'

    def test_constellation(self, capsys):
        status, out, _ = run(capsys, 'metrics', '--code', 'G4',
                             '--constellation', 'qpsk; x2=qpsk@45')
        assert status == EXIT_OK
        assert 'G4: qpsk; x2=qpsk@45' in out

    def test_bad_rotation_text(self, capsys):
        assert run(capsys, 'metrics', '--code', 'G4', '--rotate', 'x2')[0] == EXIT_USAGE

    def test_inexact_rotation(self, capsys):
        assert run(capsys, 'metrics', '--code', 'G4', '--rotate', 'x2=30')[0] == EXIT_PRECONDITION

    def test_parse_rotation(self):
        assert parse_rotation('x2=45') == (2, 45.0)
        assert parse_rotation('3=90') == (3, 90.0)

class TestTables:
    def test_table_one(self, capsys):
        status, out, _ = run(capsys, 'tables', '--table', '1')
        assert status == EXIT_OK
        assert 'MISMATCH' not in out
        assert 'TS' in out
        assert out == run(capsys, 'tables', '--antennas', '8')[1]

    def test_table_two_delimited(self, capsys):
        status, out, _ = run(capsys, 'tables', '--table', '2', '--format', 'delimited')
        assert status == EXIT_OK
        lines = out.splitlines()
        assert lines[0].startswith('code,constellation-spec,peak_ave')
        assert len(lines) == 6
        assert out == run(capsys, 'tables', '--antennas', '4', '--format', 'delimited')[1]

    @pytest.mark.parametrize('argv', [['--table', '3'], ['--antennas', '2'],
                                      ['--table', '1', '--antennas', '8'], []])
    def test_bad_selection(self, capsys, argv):
        assert run(capsys, 'tables', *argv)[0] == EXIT_USAGE

class TestEquiv:
    def test_blocks(self, capsys):
        status, out, _ = run(capsys, 'equiv', 'blocks', '--code', 'G8')
        assert status == EXIT_OK
        assert out.startswith('pattern: Q8')

    def test_apply_block_swap(self, capsys, tmp_path):
        path = tmp_path / 'f8.json'
        status = run(capsys, 'equiv', 'apply', '--code', 'F8',
                     '--transform', 'appendix', '--out', str(path))[0]
        assert status == EXIT_OK
        assert extract_blocks(fileio.read(path, expect='code')).pattern_id == 'T2'

    def test_transform_names_agree(self, capsys):
        appendix = run(capsys, 'equiv', 'apply', '--code', 'G8', '--transform', 'appendix')
        swap = run(capsys, 'equiv', 'apply', '--code', 'G8', '--transform', 'block-swap')
        assert appendix[0] == swap[0] == EXIT_OK
        assert appendix[1] == swap[1]

    def test_apply_needs_transform(self, capsys):
        assert run(capsys, 'equiv', 'apply', '--code', 'F8')[0] == EXIT_USAGE

    def test_unknown_transform(self, capsys):
        status = run(capsys, 'equiv', 'apply', '--code', 'F8', '--transform', 'twist')[0]
        assert status == EXIT_NAME

    def test_blocks_need_eight(self, capsys):
        assert run(capsys, 'equiv', 'blocks', '--code', 'G4')[0] == EXIT_PRECONDITION

class TestSimulate:
    def test_noiseless(self, capsys):
        status, out, _ = run(capsys, 'simulate', '--code', 'G4', '--snr', '200',
                             '--trials', '20', '--seed', '1')
        assert status == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == 'snr_db,trials,bit_errors,ber,std_err,code,seed'
        assert lines[1].startswith('200,20,0,')

    def test_to_file(self, capsys, tmp_path):
        path = tmp_path / 'ber.csv'
        status = run(capsys, 'simulate', '--code', 'GS', '--snr', '0:10:20',
                     '--trials', '30', '--seed', '3', '--workers', '2',
                     '--block-size', '10', '--out', str(path))[0]
        assert status == EXIT_OK
        assert len(path.read_text().splitlines()) == 4

    @pytest.mark.parametrize('extra', [['--trials', '0', '--seed', '1', '--snr', '0'],
                                       ['--trials', '5', '--seed', '1', '--snr', '9:1:0']])
    def test_bad_values(self, capsys, extra):
        assert run(capsys, 'simulate', '--code', 'G4', *extra)[0] == EXIT_PRECONDITION
