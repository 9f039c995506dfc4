# -*- coding: utf-8 -*-
"""
Tests for aodkit.fileio.

Test methods MUST start with "test"
"""

import json

import pytest

from aodkit import fileio
from aodkit.codes import fixture, fixture_names
from aodkit.constructions import build_chain, seed_catalog, seed_names, trivial_family
from aodkit.equivalence import BLOCK_SWAP_TRANSFORM
from aodkit.errors import FormatError

class TestRoundTrip:
    @pytest.mark.parametrize('name', fixture_names())
    def test_codes(self, name):
        code = fixture(name)
        back = fileio.loads(fileio.dumps(code))
        assert back == code
        assert back.label == name

    @pytest.mark.parametrize('name', seed_names())
    def test_seeds(self, name):
        obj = seed_catalog(name)
        assert fileio.loads(fileio.dumps(obj)) == obj

    def test_constructed_family(self, tmp_path):
        fam = build_chain(trivial_family(), 'c2 c1', layout='stated')[-1]
        path = tmp_path / 'fam.json'
        fileio.write(fam, path)
        back = fileio.read(path, expect='family')
        assert back == fam
        assert back.label == fam.label
        assert back.provenance == fam.provenance
        assert back.provenance.layout == 'stated'

    def test_transform(self):
        back = fileio.loads(fileio.dumps(BLOCK_SWAP_TRANSFORM), expect='transform')
        assert back == BLOCK_SWAP_TRANSFORM

    def test_scalars_are_integer_lists(self):
        doc = fileio.to_document(fixture('TJC'))
        cell = doc['grid'][0][2]
        assert cell[0][:2] == [2, 'R']
        assert all(isinstance(v, int) for v in cell[0][2])
        assert len(cell[0][2]) == 5

class TestErrors:
    def test_unknown_kind(self):
        with pytest.raises(FormatError, match='unknown document kind'):
            fileio.loads(json.dumps({'kind': 'matrix'}))

    def test_unexpected_kind(self):
        with pytest.raises(FormatError, match='expected a family'):
            fileio.loads(fileio.dumps(fixture('G4')), expect='family')

    def test_not_json(self):
        with pytest.raises(FormatError):
            fileio.loads('{"kind": ')

    def test_not_object(self):
        with pytest.raises(FormatError):
            fileio.loads('[1, 2]')

    def test_missing_field(self):
        with pytest.raises(FormatError, match="'b_mats'"):
            fileio.loads(json.dumps({'kind': 'family', 'order': 1,
                                     'a_mats': [[[[1, 0, 0, 0, 0]]]]}))

    def test_bad_scalar(self):
        doc = {'kind': 'family', 'order': 1, 'a_mats': [[[[1, 0, 0, 0]]]], 'b_mats': []}
        with pytest.raises(FormatError, match='invalid family'):
            fileio.from_document(doc)

    def test_bad_shape(self):
        doc = fileio.to_document(seed_catalog('af2-ex1'))
        doc['order'] = 3
        with pytest.raises(FormatError):
            fileio.from_document(doc)

    def test_grid_header_mismatch(self):
        doc = fileio.to_document(fixture('G4'))
        doc['p'] = 8
        with pytest.raises(FormatError, match='header'):
            fileio.from_document(doc)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            fileio.read(tmp_path / 'absent.json')

    def test_cannot_serialize(self):
        with pytest.raises(TypeError):
            fileio.to_document(42)
