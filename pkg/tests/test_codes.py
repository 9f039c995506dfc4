# -*- coding: utf-8 -*-
"""
Tests for aodkit.codes.

Test methods MUST start with "test"
"""

from fractions import Fraction

import numpy as np
import pytest

from aodkit.codes import (CONSTRUCTED_DICT, ZERO_FORM, LinearForm,
                          SymbolicCode, SymbolPairing, assemble,
                          catalog_entries, coefficient_arrays,
                          constructed_family, constructed_fixture,
                          extract_dispersion, find_pairing, fixture,
                          fixture_names, normalized_family, rate,
                          rotate_symbol, structural_zeros, x, xc, xi, xr)
from aodkit.constructions import seed_catalog
from aodkit.design import family_from_lists, verify_aod, verify_ostbc
from aodkit.errors import CatalogError, DesignError, PairingError, ShapeError
from aodkit.exact import INV_SQRT2, J, ExactScalar

alamouti = SymbolicCode([[x(1), x(2)], [-xc(2), xc(1)]], label='alamouti')

def catalog_family(kind, name):
    if kind == 'code':
        return constructed_family(name)
    obj = seed_catalog(name)
    return obj.as_family() if kind == 'mn' else obj

catalog_families = ([('seed', n) for n in ('af2-ex1', 'af2-ex2-complex', 'aod2-ex3')]
                    + [('mn', n) for n in ('mn-eq6', 'mn-eq16')]
                    + [('code', n) for n in sorted(CONSTRUCTED_DICT)])

class TestLinearForm:
    def test_symbol_strings(self):
        assert str(x(1)) == 'x1'
        assert str(xc(1)) == 'x1*'
        assert str(-xc(2)) == '-x2*'
        assert str(ZERO_FORM) == '0'

    def test_sums(self):
        assert str(x(1) - xc(2)) == 'x1 - x2*'
        assert str(xr(3) + xi(2)) == 'jx2I + x3R'
        assert str(x(1) * 2) == '2x1'
        assert str(x(3) * INV_SQRT2) == '(√2/2)x3'

    def test_parts_combine(self):
        assert xr(1) + xi(1) == x(1)
        assert xr(1) - xi(1) == xc(1)
        assert (x(1) - x(1)).is_zero()

    def test_conjugate(self):
        assert x(2).conjugate() == xc(2)
        assert (x(1) * J).conjugate() == xc(1) * -J

    def test_evaluate(self):
        values = [ExactScalar(1, 1, 0, 0), ExactScalar(2, -1, 0, 0)]
        form = x(1) + xc(2)
        assert form.evaluate(values) == ExactScalar(3, 2, 0, 0)

    def test_bad_terms(self):
        with pytest.raises(ValueError):
            LinearForm([(0, 'Q', 1)])
        with pytest.raises(ValueError):
            LinearForm([(-1, 'R', 1)])

class TestSymbolicCode:
    def test_shape(self):
        assert (alamouti.p, alamouti.n_t, alamouti.k) == (2, 2, 2)
        assert rate(alamouti) == 1
        assert rate(fixture('G4')) == Fraction(3, 4)

    def test_ragged(self):
        with pytest.raises(ShapeError):
            SymbolicCode([[x(1), x(2)], [x(1)]])

    def test_not_square(self):
        with pytest.raises(ShapeError):
            SymbolicCode([[x(1), x(2)]])

    def test_empty(self):
        with pytest.raises(ShapeError):
            SymbolicCode([])

    def test_bad_entry(self):
        with pytest.raises(TypeError):
            SymbolicCode([[x(1), 0], [0, x(1)]])

    def test_k_too_small(self):
        with pytest.raises(DesignError):
            SymbolicCode([[x(1), x(2)], [-xc(2), xc(1)]], k=1)

    def test_equality_ignores_label(self):
        assert alamouti.with_label('other') == alamouti

    @pytest.mark.parametrize('name, zeros', [('TH', 32), ('TS', 8), ('GS', 4),
                                             ('G4', 0), ('G8', 0), ('H8', 0),
                                             ('F8', 0), ('TJC', 0)])
    def test_structural_zeros(self, name, zeros):
        assert structural_zeros(fixture(name)) == zeros

class TestCatalog:
    def test_names(self):
        assert set(fixture_names()) == {'G4', 'G8', 'H8', 'F8', 'TH', 'TS', 'TJC', 'GS'}

    def test_unknown(self):
        with pytest.raises(CatalogError):
            fixture('G16')

    def test_first_entry(self):
        assert str(fixture('G8')[0, 0]) == 'x1*'
        assert str(fixture('G4')[0, 0]) == 'x1 - x2*'

    def test_h8_rows(self):
        g8, h8 = fixture('G8'), fixture('H8')
        assert h8.grid[0] == g8.grid[0]
        assert h8.grid[1] == tuple(f * J for f in g8.grid[1])

    def test_entries(self):
        entries = catalog_entries()
        assert [n for n, _ in entries['codes']] == fixture_names()
        assert len(entries['seeds']) == 5

    @pytest.mark.parametrize('name', sorted(CONSTRUCTED_DICT))
    def test_constructed_matches_literal(self, name):
        assert constructed_fixture(name) == fixture(name)
        assert constructed_fixture(name).label == name

    @pytest.mark.parametrize('name', sorted(CONSTRUCTED_DICT))
    def test_find_pairing(self, name):
        pairing = find_pairing(constructed_family(name), fixture(name))
        assert pairing == CONSTRUCTED_DICT[name][2]

    def test_constructed_families_are_aod(self):
        for name in ('G8', 'H8', 'F8'):
            assert verify_aod(constructed_family(name)).passed

    def test_no_construction(self):
        with pytest.raises(CatalogError):
            constructed_family('TH')

class TestAssemble:
    @pytest.mark.parametrize('name', fixture_names())
    def test_round_trip(self, name):
        code = fixture(name)
        assert assemble(extract_dispersion(code), normalize=None) == code

    @pytest.mark.parametrize('kind, name', catalog_families)
    def test_extract_after_assemble(self, kind, name):
        fam = catalog_family(kind, name)
        assert extract_dispersion(assemble(fam)) == normalized_family(fam)

    @pytest.mark.parametrize('name', sorted(CONSTRUCTED_DICT))
    def test_extract_after_paired_assemble(self, name):
        fam = constructed_family(name)
        pairing = CONSTRUCTED_DICT[name][2]
        norm = normalized_family(fam)
        out = extract_dispersion(assemble(fam, pairing))
        assert out.a_mats == tuple(norm.a_mats[i] for i in pairing.a_slots)
        assert out.b_mats == tuple(norm.b_mats[q].scale(s)
                                   for q, s in zip(pairing.perm, pairing.signs))

    def test_relative_keeps_integers(self):
        code = fixture('G8')
        assert assemble(extract_dispersion(code)) == code

    def test_unit(self):
        code = assemble(extract_dispersion(fixture('G8')), normalize='unit')
        assert verify_ostbc(code).scale == 1

    def test_bad_normalize(self):
        with pytest.raises(ValueError):
            assemble(extract_dispersion(alamouti), normalize='max')

    def test_unpaired(self):
        fam = family_from_lists([[[1, 0], [0, 1]]], [], 'lonely')
        with pytest.raises(PairingError):
            assemble(fam)

    def test_wrong_pairing_size(self):
        with pytest.raises(PairingError):
            assemble(extract_dispersion(alamouti), SymbolPairing.identity(3))

    def test_pairing_validation(self):
        with pytest.raises(PairingError):
            SymbolPairing((0, 0), (1, 1))
        with pytest.raises(PairingError):
            SymbolPairing((0, 1), (1, 2))

    def test_pairing_mismatch(self):
        with pytest.raises(PairingError):
            find_pairing(seed_catalog('af2-ex1'), fixture('G8'))

class TestRotation:
    def test_quarter_turn(self):
        code = rotate_symbol(alamouti, 1, 90)
        assert str(code[0, 0]) == 'jx1'
        assert code.label == 'alamouti (x1@90)'

    def test_full_turn(self):
        code = fixture('G4')
        assert rotate_symbol(code, 2, 360) == code

    def test_rotation_keeps_orthogonality(self):
        assert verify_ostbc(rotate_symbol(fixture('TH'), 4, 45)).passed

    def test_bad_angle(self):
        with pytest.raises(ValueError):
            rotate_symbol(alamouti, 1, 30)

    def test_bad_symbol(self):
        with pytest.raises(ValueError):
            rotate_symbol(alamouti, 3, 45)

class TestCoefficientArrays:
    def test_alamouti(self):
        ar, ai = coefficient_arrays(alamouti)
        assert ar.shape == ai.shape == (2, 2, 2)
        assert np.allclose(ar[0], np.eye(2))
        assert np.allclose(ai[0], np.diag([1j, -1j]))
        assert np.allclose(ar[1], [[0, 1], [-1, 0]])

    def test_codeword(self):
        ar, ai = coefficient_arrays(alamouti)
        s = np.array([1 + 2j, -1 + 1j])
        g = np.einsum('i,imn->mn', s.real, ar) + np.einsum('i,imn->mn', s.imag, ai)
        expected = np.array([[s[0], s[1]], [-s[1].conjugate(), s[0].conjugate()]])
        assert np.allclose(g, expected)
