# -*- coding: utf-8 -*-
"""
Tests for aodkit.constructions.

Test methods MUST start with "test"
"""

import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from aodkit.constructions import (C2_N1, C2_N2, C2_N3, SEED_ALIASES, SEED_DICT,
                                  MnSeed, Provenance,
                                  build_chain, construct1, construct2,
                                  expected_types_c1, expected_types_c2,
                                  seed_catalog, seed_names, seed_types,
                                  trivial_family, verify_mn_seed)
from aodkit.design import (AF, AOD, DispersionFamily, classify, gram_types,
                           is_maximal, verify_af, verify_aod)
from aodkit.errors import CatalogError, ConstructionError, DesignError
from aodkit.exact import SQRT2, ExactMatrix, commutation_permutation

eye4 = ExactMatrix.identity(4)
bad_seed = MnSeed([eye4, eye4, eye4], [eye4, eye4, eye4], 'identity')

def widened_seed():
    """mn-eq6 with M3 scaled by sqrt(2): seed type (1, 1, 2; 1, 1, 1)."""
    base = seed_catalog('mn-eq6')
    m_mats = base.m_mats[:2] + (base.m_mats[2].scale(SQRT2),)
    return MnSeed(m_mats, base.n_mats, 'mn-eq6 (M3 x sqrt2)')

def flip_entry(fam, which, pos):
    """
    Copy of `fam` with one nonzero entry of matrix `which` (A list first)
    negated; `pos` counts nonzero entries and wraps around.
    """
    mats = list(fam.a_mats + fam.b_mats)
    m = mats[which]
    nonzero = [i for i, v in enumerate(m.entries) if not v.is_zero()]
    idx = nonzero[pos % len(nonzero)]
    entries = list(m.entries)
    entries[idx] = -entries[idx]
    mats[which] = ExactMatrix(m.rows, m.cols, entries)
    return DispersionFamily(fam.order, mats[:fam.s], mats[fam.s:], fam.label)

# every row of every matrix in these outputs has two nonzero entries
perturbable = {
    'c1 ex1 eq6': lambda: construct1(seed_catalog('af2-ex1'), seed_catalog('mn-eq6')),
    'c1 ex1 eq16': lambda: construct1(seed_catalog('af2-ex1'), seed_catalog('mn-eq16')),
    'c1 ex3 eq6': lambda: construct1(seed_catalog('aod2-ex3'), seed_catalog('mn-eq6')),
    'c2 ex1': lambda: construct2(seed_catalog('af2-ex1')),
    'c2 ex3': lambda: construct2(seed_catalog('aod2-ex3')),
}

class TestSeedCatalog:
    def test_names_sorted(self):
        assert seed_names() == ['af2-ex1', 'af2-ex2-complex', 'aod2-ex3',
                                'mn-eq6', 'mn-eq16']

    @pytest.mark.parametrize('name', seed_names())
    def test_self_check(self, name):
        assert seed_catalog(name).label == name

    @pytest.mark.parametrize('alias, name', sorted(SEED_ALIASES.items()))
    def test_aliases(self, alias, name):
        assert name in SEED_DICT
        obj = seed_catalog(alias)
        assert obj == seed_catalog(name)
        assert obj.label == name

    def test_unknown(self):
        with pytest.raises(CatalogError):
            seed_catalog('mn-missing')
        with pytest.raises(LookupError):
            seed_catalog('mn-missing')

    @pytest.mark.parametrize('name', ['mn-eq6', 'mn-eq16'])
    def test_mn_seeds_unit_type(self, name):
        seed = seed_catalog(name)
        assert verify_mn_seed(seed).passed
        assert set(seed_types(seed).values()) == {1}

    def test_swapped(self):
        base, swapped = seed_catalog('mn-eq6'), seed_catalog('mn-eq16')
        assert swapped.m_mats == base.n_mats
        assert swapped.n_mats == base.m_mats

class TestVerifyMnSeed:
    def test_identity_seed(self):
        conditions = verify_mn_seed(bad_seed).conditions()
        assert {'5-0', '5ii', '5iv', '5v'} <= conditions

    def test_af_target_skips_disjointness(self):
        conditions = verify_mn_seed(bad_seed, target='AF').conditions()
        assert '5-0' not in conditions
        assert '5iv' not in conditions
        assert '5v' in conditions

    def test_widened_seed_af_only(self):
        seed = widened_seed()
        assert seed_types(seed).f == (1, 1, 2)
        assert verify_mn_seed(seed, target='AOD').conditions() == {'5i-unit'}
        assert verify_mn_seed(seed, target='AF').passed

    def test_bad_target(self):
        with pytest.raises(ValueError):
            verify_mn_seed(seed_catalog('mn-eq6'), target='OSTBC')

    def test_seed_shape(self):
        with pytest.raises(DesignError):
            MnSeed([eye4, eye4], [eye4, eye4, eye4])
        with pytest.raises(DesignError):
            MnSeed([ExactMatrix.identity(2)] * 3, [eye4] * 3)

class TestConstruct1:
    def test_g8_family(self):
        fam = construct1(seed_catalog('af2-ex1'), seed_catalog('mn-eq6'))
        assert fam.order == 8
        assert (fam.s, fam.t) == (4, 4)
        assert fam.label == 'c1(af2-ex1, mn-eq6)'
        assert verify_aod(fam).passed
        assert classify(fam) == AOD

    def test_provenance(self):
        fam = construct1(seed_catalog('af2-ex1'), seed_catalog('mn-eq6'))
        assert fam.provenance == Provenance('c1', 'af2-ex1', 'mn-eq6', 'displayed')
        assert fam.provenance.describe() == 'c1(af2-ex1, seed mn-eq6) [displayed]'

    @pytest.mark.parametrize('fam_name', ['af2-ex1', 'af2-ex2-complex', 'aod2-ex3'])
    @pytest.mark.parametrize('seed_name', ['mn-eq6', 'mn-eq16'])
    def test_predicted_types(self, fam_name, seed_name):
        fam, seed = seed_catalog(fam_name), seed_catalog(seed_name)
        out = construct1(fam, seed)
        assert gram_types(out) == expected_types_c1(gram_types(fam), seed_types(seed))

    @pytest.mark.parametrize('fam_name', ['af2-ex1', 'af2-ex2-complex', 'aod2-ex3'])
    @pytest.mark.parametrize('seed_name', ['mn-eq6', 'mn-eq16'])
    def test_af_closure(self, fam_name, seed_name):
        out = construct1(seed_catalog(fam_name), seed_catalog(seed_name))
        assert verify_af(out).passed

    def test_af_input_gives_aod(self):
        fam = seed_catalog('af2-ex1')
        assert classify(fam) == AF
        assert classify(construct1(fam, seed_catalog('mn-eq6'))) == AOD

    def test_widened_seed(self):
        fam, seed = seed_catalog('af2-ex1'), widened_seed()
        out = construct1(fam, seed)
        assert verify_af(out).passed
        assert gram_types(out) == expected_types_c1(gram_types(fam), seed_types(seed))
        assert gram_types(out).f == (2, 2, 4, 2)

    def test_layouts_differ_by_shuffle(self):
        fam, seed = seed_catalog('af2-ex1'), seed_catalog('mn-eq6')
        shown = construct1(fam, seed, layout='displayed')
        stated = construct1(fam, seed, layout='stated')
        p = commutation_permutation(2, 4)
        for a, b in zip(shown.a_mats + shown.b_mats, stated.a_mats + stated.b_mats):
            assert a == b.permute(p, p)
        assert verify_aod(stated).passed

    def test_bad_layout(self):
        with pytest.raises(ValueError):
            construct1(seed_catalog('af2-ex1'), seed_catalog('mn-eq6'), layout='sideways')

    def test_needs_both_lists(self):
        one = ExactMatrix.identity(1)
        with pytest.raises(ConstructionError):
            construct1(DispersionFamily(1, [one], []), seed_catalog('mn-eq6'))
        with pytest.raises(ConstructionError):
            construct1(DispersionFamily(1, [], [one]), seed_catalog('mn-eq6'))

class TestConstruct2:
    def test_fixed_matrices(self):
        assert C2_N1 == ExactMatrix.from_rows([[0, 1], [-1, 0]])
        assert C2_N2 == ExactMatrix.from_rows([[0, 1], [1, 0]])
        assert C2_N3 == ExactMatrix.from_rows([[1, 0], [0, -1]])

    def test_g4_family(self):
        fam = construct2(seed_catalog('aod2-ex3'))
        assert fam.order == 4
        assert (fam.s, fam.t) == (3, 3)
        assert fam.label == 'c2(aod2-ex3)'
        assert fam.provenance.construction == 'c2'
        assert fam.provenance.seed_label == ''

    def test_predicted_types(self):
        fam = seed_catalog('af2-ex1')
        assert gram_types(construct2(fam)) == expected_types_c2(gram_types(fam))

    def test_needs_b(self):
        with pytest.raises(ConstructionError):
            construct2(DispersionFamily(1, [ExactMatrix.identity(1)], []))

class TestChains:
    def test_doubling_chain(self):
        chain = build_chain(trivial_family(), ['c2'] * 5)
        assert [f.order for f in chain] == [1, 2, 4, 8, 16, 32]
        assert [f.variables for f in chain] == [2, 4, 6, 8, 10, 12]
        for fam in chain:
            assert verify_aod(fam).passed
            assert is_maximal(fam)

    def test_mixed_chain(self):
        chain = build_chain(trivial_family(), 'c2 c1 c1')
        assert [f.order for f in chain] == [1, 2, 8, 32]
        assert [f.variables for f in chain] == [2, 4, 8, 12]
        for fam in chain:
            assert verify_aod(fam).passed
            assert is_maximal(fam)

    def test_chain_with_swapped_seed(self):
        chain = build_chain(trivial_family(), 'c2, c1', seed='mn-eq16')
        assert verify_aod(chain[-1]).passed

    def test_provenance_chain(self):
        last = build_chain(trivial_family(), 'c2 c1')[-1]
        assert last.provenance.construction == 'c1'
        assert last.provenance.parent.construction == 'c2'
        assert last.provenance.parent.input_label == 'order-1'
        assert last.provenance.parent.parent is None

    def test_unknown_step(self):
        with pytest.raises(ValueError):
            build_chain(trivial_family(), 'c3')

class TestSignFlips:
    @pytest.mark.parametrize('name', sorted(perturbable))
    def test_unflipped_pass(self, name):
        assert verify_af(perturbable[name]()).passed

    @seed(20241)
    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from(sorted(perturbable)), st.integers(0, 7), st.integers(0, 63))
    def test_one_flip_breaks_family(self, name, which, pos):
        fam = perturbable[name]()
        flipped = flip_entry(fam, which % fam.variables, pos)
        assert '4i' in verify_af(flipped).conditions()
        assert not verify_aod(flipped).passed
