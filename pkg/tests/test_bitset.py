from math import comb

from tokengraph.utils.bitset import (
    format_subset,
    iter_bits,
    iter_k_subsets,
    list_to_bits,
    popcount,
    rank_subset,
    unrank_subset,
)


class TestSubsets:
    def test_iter_k_subsets_is_rank_order(self):
        masks = list(iter_k_subsets(6, 3))
        assert len(masks) == comb(6, 3)
        assert masks == sorted(masks)
        assert [rank_subset(m) for m in masks] == list(range(len(masks)))

    def test_unrank_inverts_rank(self):
        for rank, mask in enumerate(iter_k_subsets(7, 4)):
            assert unrank_subset(rank, 4) == mask

    def test_edge_sizes(self):
        assert list(iter_k_subsets(4, 0)) == [0]
        assert list(iter_k_subsets(4, 4)) == [0b1111]
        assert list(iter_k_subsets(3, 4)) == []

    def test_c4_pairs_in_colex_order(self):
        assert list(iter_k_subsets(4, 2)) == [3, 5, 6, 9, 10, 12]


class TestBits:
    def test_iter_bits_ascending(self):
        assert list(iter_bits(0b100101)) == [0, 2, 5]

    def test_list_roundtrip_and_popcount(self):
        mask = list_to_bits([5, 0, 2])
        assert mask == 0b100101
        assert popcount(mask) == 3

    def test_format_subset(self):
        assert format_subset(0b100101) == "{0,2,5}"
        assert format_subset(0) == "{}"
