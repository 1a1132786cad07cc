from fractions import Fraction as F
from math import comb, factorial

import pytest

from waring.geom import (
    dim_sab,
    grass_series_degree,
    known_secant_degree,
    secant_dim,
    segre_grass,
    segre_sym,
    sym_series_degree,
)


def test_dim_sab_values():
    assert dim_sab(1, 0) == 3
    assert dim_sab(3, 2) == 15
    assert dim_sab(4, 1) == 24
    with pytest.raises(ValueError):
        dim_sab(1, 2)


def _binom(n, k):
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def test_segre_sym_series():
    assert [sym_series_degree(p) for p in (1, 2, 3, 4)] == [
        4,
        112,
        28314,
        81662152,
    ]


def test_segre_sym_midrange_against_direct_product():
    # independent evaluation of the product with factorial-based binomials
    n, r = 5, 3
    total = F(1)
    for i in range(n - r + 1):
        total *= F(_binom(n + 1 + i, n - r - i + 1), _binom(2 * i + 1, i))
    codim, degree = segre_sym(n, r)
    assert total == degree
    assert codim == _binom(n - r + 2, 2)


def test_segre_sym_full_rank_edge():
    codim, degree = segre_sym(4, 5)
    assert codim == 0 and degree == 1
    with pytest.raises(ValueError):
        segre_sym(4, 6)


def test_segre_grass_series():
    assert [grass_series_degree(p) for p in (1, 2, 3, 4)] == [
        4,
        140,
        65780,
        563178924,
    ]


def test_segre_grass_midrange_against_direct_product():
    n, r = 9, 3
    total = F(1, 2 ** (n - 2 * r))
    for i in range(n - 2 * r):
        total *= F(_binom(n + 1 + i, n - 2 * r - i), _binom(2 * i + 1, i))
    codim, degree = segre_grass(n, r)
    assert degree == total
    assert codim == _binom(n - 2 * r + 1, 2)


def test_segre_grass_degenerate():
    codim, degree = segre_grass(7, 3)
    assert codim == 1
    codim0, degree0 = segre_grass(8, 4)
    assert codim0 == 0 and degree0 == 1


def test_degrees_are_integers_across_range():
    for n in range(2, 12):
        for r in range(1, n + 2):
            _, deg = segre_sym(n, r)
            assert deg >= 1
    for n in range(3, 16):
        for r in range(1, (n + 1) // 2 + 1):
            if n - 2 * r + 1 >= 0:
                _, deg = segre_grass(n, r)
                assert deg >= 1


def test_codim_decreases_with_rank():
    codims = [segre_sym(6, r)[0] for r in range(1, 8)]
    assert codims == sorted(codims, reverse=True)


def test_known_secant_degrees():
    assert known_secant_degree(2, 4, 3) == 112
    assert known_secant_degree(2, 4, 4) == 35
    assert known_secant_degree(2, 5, 6) == 140
    assert known_secant_degree(2, 6, 6) == 28314
    assert known_secant_degree(2, 9, 9) is None


def test_known_degrees_match_series():
    assert known_secant_degree(2, 4, 3) == sym_series_degree(2)
    assert known_secant_degree(2, 6, 6) == sym_series_degree(3)
    assert known_secant_degree(2, 5, 6) == grass_series_degree(2)


def test_secant_dim_reports():
    r = secant_dim(2, 3, 3)
    assert r.expected_dim == 8 and r.actual_dim == 8 and not r.defective

    defect = secant_dim(2, 4, 5)
    assert defect.defective and defect.actual_dim == 13 and defect.expected_dim == 14

    weakly = secant_dim(2, 6, 9)
    assert weakly.weakly_defective and not weakly.defective
    assert weakly.actual_dim == weakly.expected_dim == 26

    for (n, d, r_, drop) in [(3, 4, 9, 1), (4, 4, 14, 1), (4, 3, 7, 1)]:
        rep = secant_dim(n, d, r_)
        assert rep.defective and rep.expected_dim - rep.actual_dim == drop


def test_secant_dim_quadrics_use_codim_formula():
    rep = secant_dim(3, 2, 2)
    # sigma_2 of quadric surfaces in P^9: actual dim 9 - C(3,2) = 6
    assert rep.actual_dim == 9 - comb(3, 2)
    assert rep.defective
    full = secant_dim(3, 2, 4)
    assert full.actual_dim == full.expected_dim == 9
