# -*- coding: utf-8 -*-
"""
Tests for aodkit.equivalence.

Test methods MUST start with "test"
"""

import numpy as np
import pytest

from aodkit.codes import extract_dispersion, fixture
from aodkit.design import verify_ostbc
from aodkit.equivalence import (BLOCK_SWAP_TRANSFORM, MonomialTransform,
                                apply_transform, code_blocks, extract_blocks,
                                format_blocks)
from aodkit.errors import ShapeError
from aodkit.power import power_report

class TestMonomialTransform:
    def test_identity(self):
        for name in ('G4', 'G8', 'TH'):
            code = fixture(name)
            tr = MonomialTransform.identity(code.p)
            assert apply_transform(code, tr) == code

    def test_not_permutation(self):
        with pytest.raises(ShapeError):
            MonomialTransform([(0, 1), (0, 1)], [(0, 1), (1, 1)])

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            MonomialTransform([(0, 1), (1, 2)], [(0, 1), (1, 1)])

    def test_size_mismatch(self):
        with pytest.raises(ShapeError):
            apply_transform(fixture('G4'), MonomialTransform.identity(8))

    def test_expand(self):
        assert MonomialTransform.expand((1, 0), (1, -1)) == [(2, 1), (3, 1),
                                                               (0, -1), (1, -1)]

    def test_bad_side(self):
        with pytest.raises(ValueError):
            MonomialTransform.identity(2).to_matrix('middle')

    def test_matches_matrix_product(self):
        code = fixture('G8')
        tr = MonomialTransform.random(8, np.random.default_rng(11))
        left, right = tr.to_matrix('left'), tr.to_matrix('right')
        before = extract_dispersion(code)
        after = extract_dispersion(apply_transform(code, tr))
        for a, b in zip(before.a_mats + before.b_mats, after.a_mats + after.b_mats):
            assert b == left @ a @ right

    @pytest.mark.parametrize('name', ['G8', 'TH', 'TS', 'GS'])
    def test_random_keeps_orthogonality(self, name):
        rng = np.random.default_rng(7)
        code = fixture(name)
        for _ in range(3):
            tr = MonomialTransform.random(code.p, rng)
            assert verify_ostbc(apply_transform(code, tr)).passed

    def test_power_unchanged(self):
        code = fixture('GS')
        tr = MonomialTransform.random(4, np.random.default_rng(3))
        before, after = power_report(code), power_report(apply_transform(code, tr))
        assert (after.peak_ave, after.ave_min, after.p_o) == \
            (before.peak_ave, before.ave_min, before.p_o)

class TestBlocks:
    def test_g8_layout(self):
        pattern = extract_blocks(fixture('G8'))
        assert pattern.pattern_id == 'Q8'
        assert sorted(pattern.blocks) == ['P', 'Q', 'R', 'S']

    def test_f8_layout(self):
        assert extract_blocks(fixture('F8')).pattern_id == 'Q2'

    def test_block_swap(self):
        swapped = apply_transform(fixture('F8'), BLOCK_SWAP_TRANSFORM)
        assert extract_blocks(swapped).pattern_id == 'T2'
        assert verify_ostbc(swapped).passed

    def test_block_swap_twice(self):
        code = fixture('F8')
        twice = apply_transform(apply_transform(code, BLOCK_SWAP_TRANSFORM),
                                BLOCK_SWAP_TRANSFORM)
        assert twice == code

    def test_no_layout(self):
        pattern = extract_blocks(fixture('TH'))
        assert not pattern.matched
        assert pattern.blocks == {}
        assert format_blocks(pattern) == 'pattern: none'

    def test_only_eight(self):
        with pytest.raises(ShapeError):
            extract_blocks(fixture('G4'))

    def test_code_blocks(self):
        blocks = code_blocks(fixture('G8'))
        assert len(blocks) == 4
        assert str(blocks[0][0][0][0]) == 'x1*'

    def test_format(self):
        text = format_blocks(extract_blocks(fixture('G8')))
        lines = text.splitlines()
        assert lines[0] == 'pattern: Q8'
        assert 'P =' in lines
