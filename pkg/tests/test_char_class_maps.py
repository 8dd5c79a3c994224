"""Cohomology rings of BO-products and the line-summing maps between them.
The Whitney-formula images are checked against hand expansions and a
test-side polynomial multiplier built on parity counting."""

from __future__ import annotations

from collections import Counter
from itertools import product as iproduct

import pytest

from gmfkit.char_class_maps import (
    ProductSWRing,
    build_Y,
    build_Y1,
    map_f,
    map_g,
)

# ---------------------------------------------------------------------------
# oracles


def _pmul(P, Q) -> frozenset:
    """F2 polynomial product via coefficient counting (not set xor)."""
    counts = Counter()
    for p in P:
        for q in Q:
            counts[tuple(a + b for a, b in zip(p, q))] += 1
    return frozenset(m for m, c in counts.items() if c % 2 == 1)


def _ppow(P, e, nslots) -> frozenset:
    acc = frozenset({tuple([0] * nslots)})
    for _ in range(e):
        acc = _pmul(acc, P)
    return acc


def _count_monomials(degrees, n) -> int:
    """Brute-force count of exponent vectors with sum e_j * deg_j = n."""
    if not degrees:
        return 1 if n == 0 else 0
    ranges = [range(n // d + 1) for d in degrees]
    return sum(
        1 for e in iproduct(*ranges)
        if sum(a * d for a, d in zip(e, degrees)) == n
    )


# ---------------------------------------------------------------------------
# rings


def test_ring_dims_match_series_and_brute_force():
    for ring in (build_Y(1, 3, 12), build_Y1(0, 3, 12), build_Y(0, 2, 12)):
        degrees = [d for _, d in ring.generators]
        series = ring.series()
        for n in range(13):
            want = _count_monomials(degrees, n)
            assert ring.dim(n) == want
            assert series.coeff(n) == want


def test_ring_frozen_dims():
    # BO(1) x BO(2): generators in degrees 1, 1, 2
    y13 = build_Y(1, 3, 8)
    assert [y13.dim(n) for n in range(5)] == [1, 2, 4, 6, 9]
    # BO(0) is a point: one basis element in degree 0 only
    y00 = ProductSWRing([("BO", 0)], 6)
    assert [y00.dim(n) for n in range(7)] == [1, 0, 0, 0, 0, 0, 0]


def test_bso_factor():
    ring = ProductSWRing([("BSO", 3)], 6)
    assert [d for _, d in ring.generators] == [2, 3]
    assert [ring.dim(n) for n in range(7)] == [1, 0, 1, 1, 1, 1, 2]
    series = ring.series()
    assert [series.coeff(n) for n in range(7)] == [1, 0, 1, 1, 1, 1, 2]


def test_ring_validation():
    with pytest.raises(ValueError):
        ProductSWRing([("BU", 2)], 8)
    with pytest.raises(ValueError):
        ProductSWRing([("BO", -1)], 8)
    with pytest.raises(ValueError):
        build_Y(3, 2, 8)
    with pytest.raises(ValueError):
        build_Y1(2, 2, 8)


# ---------------------------------------------------------------------------
# the two line-summing maps


def test_map_f_generator_images_rank_two_block():
    # line into BO(2): w1 -> w1' + a, w2 -> a w1'  (codomain slots: a, w1')
    fm = map_f(0, 2, 8)
    assert fm.gen_images == [
        frozenset({(1, 0), (0, 1)}),
        frozenset({(1, 1)}),
    ]


def test_map_f_generator_images_rank_three_block():
    # line into BO(3): w3 -> a w2'  (codomain slots: a, w1', w2')
    fm = map_f(0, 3, 8)
    assert fm.gen_images == [
        frozenset({(1, 0, 0), (0, 1, 0)}),
        frozenset({(0, 0, 1), (1, 1, 0)}),
        frozenset({(1, 0, 1)}),
    ]


def test_map_g_generator_images():
    # line into the first block BO(1): w1 -> a; identity on the second
    gm = map_g(0, 2, 8)
    assert gm.gen_images == [
        frozenset({(1, 0)}),
        frozenset({(0, 1)}),
    ]


def test_map_images_are_multiplicative():
    """image(prod of generators) = product of generator images."""
    for rm in (map_f(1, 3, 10), map_g(1, 3, 10), map_f(0, 4, 8)):
        ngen = len(rm.domain.generators)
        nslots = len(rm.codomain.generators)
        for n in range(1, 9):
            for mono in rm.domain.basis(n):
                want = frozenset({tuple([0] * nslots)})
                for j, e in enumerate(mono):
                    if e:
                        want = _pmul(want, _ppow(rm.gen_images[j], e, nslots))
                assert rm.image_of_monomial(mono) == want


def test_map_images_preserve_degree():
    rm = map_f(1, 3, 10)
    deg_cod = [d for _, d in rm.codomain.generators]
    for n in range(1, 10):
        for mono in rm.domain.basis(n):
            for img in rm.image_of_monomial(mono):
                assert sum(a * d for a, d in zip(img, deg_cod)) == n


def test_homology_matrix_is_transpose_of_cohomology():
    fm = map_f(0, 2, 10)
    hm = fm.homology_map()
    for n in range(11):
        rows, (nrows, ncols) = fm.cohomology_matrix(n)
        cols = fm.cohomology_columns(n)
        # reading the column masks as rows gives the homology matrix
        assert hm.rows[n] == list(cols)
        assert hm.shapes[n] == (fm.domain.dim(n), fm.codomain.dim(n))
        # and transposing again recovers the original column masks
        assert nrows == fm.codomain.dim(n) and ncols == fm.domain.dim(n)


def test_degree_one_example():
    # w1 of BO(2) hits both degree-1 classes downstairs: matrix [1 1]
    fm = map_f(0, 2, 8)
    assert fm.cohomology_columns(1) == [0b11]
    hm = fm.homology_map()
    assert hm.rows[1] == [0b11]
    assert hm.shapes[1] == (1, 2)


def test_cohomology_injective_small_cases():
    for d in range(1, 5):
        for i in range(0, d):
            fm, gm = map_f(i, d, 12), map_g(i, d, 12)
            for n in range(13):
                assert fm.cohomology_rank(n) == fm.domain.dim(n)
                assert gm.cohomology_rank(n) == gm.domain.dim(n)


def test_homology_and_cohomology_ranks_agree():
    for rm in (map_f(1, 3, 10), map_g(0, 3, 10)):
        hm = rm.homology_map()
        for n in range(11):
            assert hm.rank(n) == rm.cohomology_rank(n)
