from math import comb

import pytest
from hypothesis import given, strategies as st

from laguerre_mp.errors import DomainError
from laguerre_mp.lattice_paths import (
    catalan,
    cut_and_glue,
    cut_and_glue_census,
    enumerate_legal_paths,
    iter_legal_paths,
    narayana,
    path_table_recursion,
)
from laguerre_mp.power_sums import homogeneous_part, symbolic_power_sum


def _brute_force(k, l, j):
    # independent oracle: every height sequence in a generous box, no pruning
    from itertools import product

    count = 0
    for hs in product(range(1, l + k + 1), repeat=k):
        if hs[-1] != l:
            continue
        nodes = (0,) + hs
        steps = [b - a for a, b in zip(nodes, nodes[1:])]
        if all(s >= -1 for s in steps) and sum(s >= 0 for s in steps) == j:
            count += 1
    return count


class TestEnumeration:
    @pytest.mark.parametrize("k, l, j, expected", [(1, 1, 1, 1), (3, 1, 2, 3), (3, 1, 1, 1), (3, 1, 3, 1)])
    def test_examples(self, k, l, j, expected):
        assert enumerate_legal_paths(k, l, j) == expected

    @pytest.mark.parametrize("k", range(1, 6))
    @pytest.mark.parametrize("l", [1, 2, 3])
    def test_against_unpruned_search(self, k, l):
        for j in range(0, k + 2):
            assert enumerate_legal_paths(k, l, j) == _brute_force(k, l, j)

    def test_paths_are_legal(self):
        for path in iter_legal_paths(5, 2):
            assert path[0] == 0 and path[-1] == 2
            assert all(h >= 1 for h in path[1:])
            assert all(b - a >= -1 for a, b in zip(path, path[1:]))

    def test_out_of_range_j(self):
        assert enumerate_legal_paths(3, 1, 0) == 0
        assert enumerate_legal_paths(3, 1, 4) == 0

    def test_domain(self):
        with pytest.raises(DomainError):
            enumerate_legal_paths(0, 1, 1)


class TestRecursionTable:
    def test_examples(self):
        t = path_table_recursion(4, 3)
        assert all(t.get(1, l, 1) == 1 for l in range(1, 4))
        assert t.get(2, 1, 2) == 1
        assert [t.get(4, 1, j) for j in range(1, 5)] == [1, 6, 6, 1]
        assert t.get(3, 1, 0) == 0 and t.get(3, 1, 4) == 0

    def test_matches_enumeration(self):
        t = path_table_recursion(7, 3)
        for k in range(1, 8):
            for l in range(1, 4):
                for j in range(1, k + 1):
                    assert t.get(k, l, j) == enumerate_legal_paths(k, l, j), (k, l, j)

    def test_narayana_row(self):
        t = path_table_recursion(10, 1)
        for k in range(1, 11):
            assert [t.get(k, 1, j) for j in range(1, k + 1)] == [narayana(k, j) for j in range(1, k + 1)]

    def test_csv(self):
        text = path_table_recursion(2, 1).to_csv()
        assert text.splitlines()[0] == "k,l,j,count"
        assert "\r" not in text


class TestNarayana:
    @pytest.mark.parametrize("k, j, expected", [(1, 1, 1), (5, 1, 1), (3, 2, 3), (4, 2, 6)])
    def test_examples(self, k, j, expected):
        assert narayana(k, j) == expected

    @given(st.integers(1, 30).flatmap(lambda k: st.tuples(st.just(k), st.integers(1, k))))
    def test_symmetry_and_integrality(self, kj):
        k, j = kj
        assert narayana(k, j) == narayana(k, k + 1 - j)
        assert narayana(k, j).denominator == 1

    def test_row_sum_is_catalan(self):
        assert [catalan(k) for k in range(6)] == [1, 1, 2, 5, 14, 42]
        for k in range(1, 11):
            assert sum(narayana(k, j) for j in range(1, k + 1)) == catalan(k)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_leading_triangle(self, k):
        lead = homogeneous_part(symbolic_power_sum(k), k + 1)
        for j in range(1, k + 1):
            assert lead.coeff(j, k - j + 1) == narayana(k, j)

    def test_domain(self):
        with pytest.raises(DomainError):
            narayana(3, 0)


class TestCutAndGlue:
    @pytest.mark.parametrize("k, j, expected", [(2, 1, (2, 1)), (3, 2, (9, 3)), (4, 4, (4, 1))])
    def test_examples(self, k, j, expected):
        assert cut_and_glue_census(k, j) == expected

    @pytest.mark.parametrize("k", range(1, 7))
    def test_counts(self, k):
        for j in range(1, k + 1):
            free, classes = cut_and_glue_census(k, j)
            assert free == comb(k, j) * comb(k, j - 1)
            assert classes == narayana(k, j)

    def test_rotation_is_legal(self):
        out = cut_and_glue((-1, -1, 2, -1, 2))
        nodes = [0]
        for s in out:
            nodes.append(nodes[-1] + s)
        assert all(h >= 1 for h in nodes[1:]) and nodes[-1] == 1
