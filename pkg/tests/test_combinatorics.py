import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cactusflower.combinatorics import (
    AffinePermutation,
    CyclicInterval,
    CyclicSetPartition,
    ExtAffinePermutation,
    Permutation,
    SetPartition,
    affine_decompose,
    affine_interval_reversal,
    affine_recompose,
    all_permutations,
    all_set_partitions,
    ext_affine_to_semidirect,
    interval_reversal,
    is_translation,
    refines,
    semidirect_mul,
    semidirect_to_ext_affine,
)


def test_refines_examples():
    assert refines(SetPartition([{1}, {2}, {3}]), SetPartition([{1, 2}, {3}]))
    s = SetPartition([{1, 2, 3}])
    assert refines(s, s)
    assert not refines(SetPartition([{1, 2}, {3}]), SetPartition([{1, 3}, {2}]))
    with pytest.raises(ValueError):
        refines(SetPartition([{1}, {2}]), SetPartition([{1, 2}, {3}]))


def test_refines_partial_order_on_5():
    parts = all_set_partitions(5)
    assert len(parts) == 52
    for a in parts:
        assert refines(a, a)
    rng = random.Random(1)
    sample = rng.sample(parts, 20)
    for a, b in itertools.combinations(sample, 2):
        if refines(a, b) and refines(b, a):
            assert a == b
    for a in sample[:8]:
        for b in sample[:8]:
            for c in sample[:8]:
                if refines(a, b) and refines(b, c):
                    assert refines(a, c)


def test_interval_reversal_paper_examples():
    assert interval_reversal(4, 1, 4).images == (4, 2, 3, 1)  # transposition (14)
    assert interval_reversal(1, 4, 4).images == (4, 3, 2, 1)  # (14)(23)
    assert interval_reversal(1, 2, 5).images == (2, 1, 3, 4, 5)


def test_interval_reversal_involution():
    for n in range(2, 9):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                w = interval_reversal(i, j, n)
                assert (w * w).is_identity()
                wa = affine_interval_reversal(i, j, n)
                assert (wa * wa).is_identity()
                assert wa.reduce_mod_n() == w


def test_interval_reversal_rejects_degenerate():
    with pytest.raises(ValueError):
        interval_reversal(2, 2, 4)
    with pytest.raises(ValueError):
        affine_interval_reversal(3, 3, 5)


def test_affine_interval_reversal_examples():
    assert affine_interval_reversal(1, 3, 3).window == (3, 2, 1)
    # reversing the integer intervals over the wrapped [2,1] in rank 2:
    # {2,3} reverses to give f(2) = 3, and {0,1} gives f(1) = 0
    assert affine_interval_reversal(2, 1, 2).window == (0, 3)
    assert sum(affine_interval_reversal(2, 1, 2).window) == 3
    assert affine_interval_reversal(3, 1, 3).window == (0, 2, 4)


def test_affine_decompose_examples():
    n = 3
    assert affine_decompose(AffinePermutation.identity(n)) == (
        Permutation.identity(n),
        (0, 0, 0),
    )
    sigma = Permutation((2, 1, 3))
    f = AffinePermutation.from_permutation(sigma)
    assert affine_decompose(f) == (sigma, (0, 0, 0))
    f = AffinePermutation((4, 2, 0))
    s, k = affine_decompose(f)
    assert affine_recompose(s, k) == f


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.data())
def test_affine_decompose_roundtrip(n, data):
    sigma = Permutation(tuple(data.draw(st.permutations(list(range(1, n + 1))))))
    k = [data.draw(st.integers(-3, 3)) for _ in range(n - 1)]
    k.append(-sum(k))
    f = affine_recompose(sigma, tuple(k))
    s2, k2 = affine_decompose(f)
    assert affine_recompose(s2, k2) == f
    assert s2 == sigma and tuple(k) == k2


def test_affine_window_validation():
    with pytest.raises(ValueError):
        AffinePermutation((1, 1, 4))  # residues collide
    with pytest.raises(ValueError):
        AffinePermutation((2, 3, 4))  # wrong sum


def test_ext_affine_examples():
    g = ExtAffinePermutation(AffinePermutation.identity(3), 0)
    assert ext_affine_to_semidirect(g) == (Permutation.identity(3), (0, 0, 0))
    g = ExtAffinePermutation(AffinePermutation.identity(3), 1)
    u, k = ext_affine_to_semidirect(g)
    assert u == Permutation.long_cycle(3)
    assert sorted(k) in ([0, 0, 1], [-1, 0, 0])  # a standard basis vector mod diagonal


def test_ext_affine_bijection_and_group_law():
    # exhaustive with small windows for rank 2, randomized for rank 4
    n = 2
    elements = []
    for sigma in all_permutations(n):
        for k1 in range(-2, 3):
            for c in range(n):
                f = affine_recompose(sigma, (k1, -k1))
                elements.append(ExtAffinePermutation(f, c))
    for g in elements:
        u, k = ext_affine_to_semidirect(g)
        h = semidirect_to_ext_affine(u, k)
        assert h.base == g.base and h.shift == g.shift
    for g in elements[:20]:
        for h in elements[:20]:
            lhs = ext_affine_to_semidirect(g * h)
            rhs = semidirect_mul(ext_affine_to_semidirect(g), ext_affine_to_semidirect(h))
            assert lhs == rhs

    rng = random.Random(3)
    n = 4
    pool = []
    for _ in range(40):
        sigma = Permutation(tuple(rng.sample(range(1, n + 1), n)))
        k = [rng.randrange(-2, 3) for _ in range(n - 1)]
        k.append(-sum(k))
        pool.append(
            ExtAffinePermutation(affine_recompose(sigma, tuple(k)), rng.randrange(n))
        )
    for _ in range(400):
        g, h = rng.choice(pool), rng.choice(pool)
        assert ext_affine_to_semidirect(g * h) == semidirect_mul(
            ext_affine_to_semidirect(g), ext_affine_to_semidirect(h)
        )


def test_is_translation():
    for n in (3, 4, 5):
        ident = Permutation.identity(n)
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                assert is_translation(ident, i, j)
    w = Permutation((2, 1, 3, 4))
    assert is_translation(w, 3, 4)
    r = Permutation.long_cycle(4)
    assert is_translation(r, 1, 2)
    assert not is_translation(r, 3, 4)  # wraps


def test_cyclic_intervals():
    assert not CyclicInterval(3, 1, 3).is_subinterval_of(CyclicInterval(1, 3, 3))
    assert CyclicInterval(1, 2, 3).is_subinterval_of(CyclicInterval(3, 2, 3))
    assert CyclicInterval(3, 1, 4).elements() == (3, 4, 1)
    with pytest.raises(ValueError):
        CyclicInterval(2, 2, 4)


def test_cyclic_set_partition_canonical():
    a = CyclicSetPartition([(4,), (1, 2), (3,)])
    b = CyclicSetPartition([(1, 2), (3,), (4,)])
    assert a == b
    assert a.parts[0] == frozenset({1, 2})


def test_json_encodings():
    s = SetPartition([{2, 5}, {1}, {3, 4}])
    assert SetPartition.from_json(s.to_json()) == s
    f = AffinePermutation((0, 2, 4))
    assert AffinePermutation.from_json(f.to_json()) == f
