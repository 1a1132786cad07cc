"""Acceptance suite: one test per criterion, each printing a PASS line.

Exact criteria admit no tolerance at all; the decomposition round trips
use the stated numeric tolerances (1e-8 projective matching, 1e-8 or
1e-10 residuals).  Genericity-dependent draws follow the documented
policy: a draw that fails its generic-rank assertion is reseeded once,
and a second failure fails the test.
"""

import random
import time
from fractions import Fraction as F
from itertools import permutations
from math import comb

from waring.decompose import decompose_binary, decompose_quintic
from waring.exactla import ExactMatrix
from waring.flattenings import (
    cat_matrix,
    grass_border_rank_lb,
    grass_skew_flattening,
    random_skew_sum,
    rank_profile,
    wedge_of_vectors,
)
from waring.forms import (
    LinearForm,
    power_form,
    random_form,
    random_linear_form,
    random_power_sum,
)
from waring.geom import (
    dim_sab,
    grass_series_degree,
    known_secant_degree,
    sym_series_degree,
)
from waring.invariants import aronhold, sextic_det33
from waring.youngflat import (
    euler_kernel_vectors,
    koszul_matrix,
    symmetric_twisted_flattening,
    x_power_yf_rank,
    young_flattening,
)
from helpers import (
    K2_REFERENCE,
    K4_REFERENCE,
    distinct_power_sum,
    pattern_cells,
    projective_distance,
    signed_permutation_match,
)


def _report(num, text):
    print(f"ACCEPTANCE {num:2d}: PASS - {text}")


def test_acceptance_01_published_degree_numbers():
    assert [sym_series_degree(p) for p in (1, 2, 3, 4)] == [4, 112, 28314, 81662152]
    assert [grass_series_degree(p) for p in (1, 2, 3, 4)] == [4, 140, 65780, 563178924]
    assert known_secant_degree(2, 4, 3) == 112
    assert known_secant_degree(2, 4, 4) == 35
    assert known_secant_degree(2, 5, 6) == 140
    assert known_secant_degree(2, 6, 6) == 28314
    _report(1, "degree series 4/112/28314/81662152 and 4/140/65780/563178924, "
               "lookup 112/35/140/28314, exact integer equality")


def test_acceptance_02_rank_one_law():
    """100 seeds spread round-robin over the full grid n in 1..4, d in 2..7:
    every catalecticant of a d-th power has rank 1 and the Young
    flattening has rank C(n, floor(n/2)), exactly."""
    t0 = time.time()
    grid = [(n, d) for n in (1, 2, 3, 4) for d in range(2, 8)]
    checked = 0
    for seed in range(100):
        n, d = grid[seed % len(grid)]
        l = random_linear_form(random.Random(seed), n + 1, 10)
        f = power_form(l, d)
        for a in range(1, d):
            assert cat_matrix(f, a).rank() == 1, (n, d, a, seed)
        assert young_flattening(f).matrix.rank() == comb(n, n // 2), (n, d, seed)
        checked += 1
    elapsed = time.time() - t0
    assert checked == 100
    assert elapsed < 30, f"rank-one law took {elapsed:.1f}s"
    _report(2, f"rank-one law on 100 seeds across the (n, d) grid in {elapsed:.1f}s")


def test_acceptance_03_generic_rank_profile_law():
    t0 = time.time()
    draws = 0
    seed = 0
    configs = []
    for d in range(2, 9):
        delta = d // 2
        for r in range(1, comb(delta + 1, 2) + 1):
            configs.append((d, r))
    while draws < 50:
        d, r = configs[draws % len(configs)]
        expected = [
            min(r, comb(a + 2, 2), comb(d - a + 2, 2))
            for a in range(1, d // 2 + 1)
        ]
        phi, _ = random_power_sum(3, d, r, seed=seed)
        if rank_profile(phi) != expected:
            # one reseed permitted per draw
            phi, _ = random_power_sum(3, d, r, seed=100000 + seed)
            assert rank_profile(phi) == expected, (d, r, seed)
        draws += 1
        seed += 1
    elapsed = time.time() - t0
    assert elapsed < 60
    _report(3, f"rank-profile law on 50 ternary draws in {elapsed:.1f}s")


def test_acceptance_04_young_flattening_boundary():
    t0 = time.time()
    for seed in range(20):
        phi, _ = distinct_power_sum(3, 5, 7, seed=seed)
        rank = young_flattening(phi).matrix.rank()
        if rank != 14:
            phi, _ = distinct_power_sum(3, 5, 7, seed=100000 + seed)
            rank = young_flattening(phi).matrix.rank()
        assert rank == 14, seed
    for r in range(1, 11):
        phi, _ = random_power_sum(3, 7, r, seed=600 + r)
        assert young_flattening(phi).matrix.rank() <= 2 * r, r
    elapsed = time.time() - t0
    assert elapsed < 60
    _report(4, f"quintic flattening rank 14 on 20 draws and septic bound 2r "
               f"for r <= 10 in {elapsed:.1f}s")


def test_acceptance_05_structure_checks():
    for seed in range(20):
        d = (3, 5, 7)[seed % 3]
        phi = random_form(3, d, seed=seed)
        assert young_flattening(phi).matrix.is_skew_symmetric(), (d, seed)
    for seed in range(20):
        phi = random_form(5, 3, seed=seed)
        assert young_flattening(phi).matrix.is_symmetric(), seed
    m2 = signed_permutation_match(pattern_cells(koszul_matrix(2, 1)), K2_REFERENCE, 3)
    m4 = signed_permutation_match(pattern_cells(koszul_matrix(4, 2)), K4_REFERENCE, 10)
    assert m2 is not None and m4 is not None
    _report(5, "exact skew/symmetric structure on 20+20 draws; wedge patterns "
               f"match references via row maps {sorted(m2[0].items())[:2]}... and "
               f"{sorted(m4[0].items())[:2]}...")


def test_acceptance_06_aronhold():
    t0 = time.time()
    for seed in range(100):
        phi, _ = random_power_sum(3, 3, 1 + seed % 3, seed=seed)
        assert aronhold(phi) == 0, seed
    for seed in range(100):
        phi, _ = distinct_power_sum(3, 3, 4, seed=seed)
        if aronhold(phi) == 0:
            phi, _ = distinct_power_sum(3, 3, 4, seed=100000 + seed)
            assert aronhold(phi) != 0, seed
    phi, _ = random_power_sum(3, 3, 4, seed=3)
    base = aronhold(phi)
    rng = random.Random(0)
    for _ in range(10):
        t = F(rng.randint(1, 40), rng.randint(1, 40)) * rng.choice((1, -1))
        assert aronhold(phi.scale(t)) == t**4 * base
    values = []
    for seed in range(20):
        psi, _ = random_power_sum(3, 3, 5, seed=700 + seed)
        m = young_flattening(psi).matrix
        values.append(
            [m.principal_submatrix([i for i in range(9) if i != k]).pfaffian()
             for k in range(9)]
        )
    assert ExactMatrix(values).rank() == 1
    elapsed = time.time() - t0
    assert elapsed < 60
    _report(6, f"Aronhold: 100 exact zeros on sigma_3, 100 nonzeros on 4-cube sums, "
               f"degree-4 scaling, 9 proportional Pfaffians, in {elapsed:.1f}s")


def test_acceptance_07_sextic_hypersurface():
    t0 = time.time()
    for seed in range(50):
        phi, _ = random_power_sum(3, 6, 9, seed=seed)
        assert sextic_det33(phi) == 0, seed
    for seed in range(50):
        phi, _ = distinct_power_sum(3, 6, 10, seed=seed)
        if sextic_det33(phi) == 0:
            phi, _ = distinct_power_sum(3, 6, 10, seed=100000 + seed)
            assert sextic_det33(phi) != 0, seed
    elapsed = time.time() - t0
    assert elapsed < 60
    _report(7, f"determinantal sextic: 50 exact zeros on 9-power sums, 50 "
               f"nonzeros on 10-power sums, in {elapsed:.1f}s")


def test_acceptance_08_quintic_decomposition_round_trip():
    worst_residual = 0.0
    worst_time = 0.0
    for seed in range(25):
        phi, gens = distinct_power_sum(3, 5, 7, seed=seed)
        if len(young_flattening(phi).matrix.kernel_basis()) != 4:
            phi, gens = distinct_power_sum(3, 5, 7, seed=100000 + seed)
        t0 = time.time()
        kernel_dim = len(young_flattening(phi).matrix.kernel_basis())
        assert kernel_dim == 4, seed
        dec = decompose_quintic(phi)
        elapsed = time.time() - t0
        assert elapsed < 10, f"run {seed} took {elapsed:.1f}s"
        worst_time = max(worst_time, elapsed)
        assert dec.residual < 1e-8, (seed, dec.residual)
        worst_residual = max(worst_residual, dec.residual)
        gen_dirs = [tuple(l.coeffs) for l in gens]
        found = [p for _, p in dec.summands]
        best = min(
            max(projective_distance(found[i], gen_dirs[perm[i]]) for i in range(7))
            for perm in permutations(range(7))
        )
        assert best < 1e-8, (seed, best)
    _report(8, f"25 quintic round trips, kernel dim 4 each, points within 1e-8 "
               f"after optimal matching, worst residual {worst_residual:.1e}, "
               f"worst time {worst_time:.2f}s")


def test_acceptance_09_binary_decomposition():
    runs = 0
    seed = 0
    while runs < 50:
        d = 3 + (runs % 10)
        rmax = d // 2
        r = 1 + runs % rmax if rmax > 1 else 1
        phi, _ = distinct_power_sum(2, d, r, seed=900 + seed)
        dec = decompose_binary(phi, r)
        assert dec.exact or dec.residual <= 1e-10, (d, r, seed, dec.residual)
        runs += 1
        seed += 1
    import pytest

    from waring.decompose import DecompositionError
    from waring.forms import parse_polynomial

    with pytest.raises(DecompositionError, match="rank gap"):
        decompose_binary(parse_polynomial("x0^2*x1", nvars=2), 2)
    _report(9, "50 binary decompositions exact or residual <= 1e-10; "
               "repeated-root input raises the documented error")


def test_acceptance_10_euler_kernel_soundness():
    vectors = euler_kernel_vectors(5)
    for seed in range(50):
        phi = random_form(3, 5, seed=seed)  # arbitrary quintics, any rank
        m = young_flattening(phi).matrix
        for v in vectors:
            assert all(x == 0 for x in m.mat_vec(list(v))), seed
    _report(10, "3 universal kernel vectors lie exactly in every quintic "
                "flattening kernel, 50 arbitrary forms")


def test_acceptance_11_formula_cross_checks():
    for a in range(0, 9):
        for b in range(0, a + 1):
            assert x_power_yf_rank(a, b, 0, 0) == dim_sab(a, b)
    for p in range(1, 6):
        assert x_power_yf_rank(p + 1, p, p, 1) == 2
        l = random_linear_form(random.Random(p), 3, 8)
        assert young_flattening(power_form(l, 2 * p + 1)).matrix.rank() == 2
        assert x_power_yf_rank(p + 2, p, p, 2) == 3
        m = symmetric_twisted_flattening(power_form(l, 2 * p + 2), p)
        assert m.rank() == 3
    _report(11, "closed-form ranks match dimensions at (0,0) for a,b <= 8 and "
                "the constructed matrices' exact ranks (2 and 3) for p <= 5")


def test_acceptance_12_grassmann_skew_flattening():
    t0 = time.time()
    rng = random.Random(1)
    for draw in range(30):
        vecs = [
            [F(rng.randint(-5, 5)) for _ in range(9)] for _ in range(3)
        ]
        t = wedge_of_vectors(vecs, 9)
        if t.is_zero():
            continue
        for a in (1, 2):
            assert grass_skew_flattening(t, a).rank() == comb(3, a), draw
    for r in (1, 2, 3, 4):
        total, _ = random_skew_sum(9, 3, r, seed=30 + r)
        for a in (1, 2):
            assert grass_skew_flattening(total, a).rank() <= r * comb(3, a)
        assert grass_border_rank_lb(total, 1) <= r
    elapsed = time.time() - t0
    assert elapsed < 30
    _report(12, f"wedge flattenings: rank C(3, a) at 30 decomposables and "
                f"additivity bound on sums, in {elapsed:.1f}s")
