import itertools
import math
import random
from fractions import Fraction as F

import pytest

from cactusflower.combinatorics import Permutation
from cactusflower.forests import (
    PlanarForest,
    collapse,
    enumerate_planar_forests,
    flip,
    is_binary,
    random_binary_tree,
)
from cactusflower.projective import VarietySpec, chart_membership, check_membership
from cactusflower.realgeometry import (
    DEFAULT_F,
    INF,
    CubePoint,
    PathPoint,
    StarPoint,
    affine_cactus_path,
    b_map,
    chart_H,
    chart_b,
    gamma,
    path_sigma_residual,
    star_equivalence_class,
    star_related,
    theta,
    theta_images_equal,
    theta_star,
    tree_of_configuration,
    tree_of_projective_configuration,
)

RUNNING = PlanarForest([((1, (2, 3)), 4)])
T_RUNNING = {
    frozenset({1, 2, 3, 4}): F(1, 2),
    frozenset({1, 2, 3}): F(1, 3),
    frozenset({2, 3}): F(1, 5),
}


def test_default_f_properties():
    f = DEFAULT_F
    assert f(F(0)) == 0
    assert f(F(1)) == INF
    grid = [F(k, 10) for k in range(-9, 10)]
    values = [f(t) for t in grid]
    assert all(a < b for a, b in zip(values, values[1:]))  # increasing
    for t in grid:
        assert f(-t) == -f(t)  # odd
        assert f.inverse(f(t)) == t  # exact partial inverse on its image


def test_gamma_running_example():
    p = CubePoint(RUNNING, T_RUNNING)
    x = gamma(p)
    t1, t2, t3 = F(1, 2), F(1, 3), F(1, 5)
    assert x.order == (1, 2, 3, 4)
    assert x.diffs == (t1 * t2, t1 * t2 * t3, t1)
    zeros = CubePoint(RUNNING, {e: F(0) for e in RUNNING.edges()})
    assert all(d == 0 for d in gamma(zeros).diffs)


def test_gamma_one_cube_midpoint():
    # one tree over a middle interval at trunk value 0: differences vanish
    # inside the interval and are 1 outside it
    forest = PlanarForest([1, (2, 3, 4), 5])
    p = CubePoint(forest, {frozenset({2, 3, 4}): F(0)})
    x = gamma(p)
    assert x.diffs == (F(1), F(0), F(0), F(1))


def test_star_equivalence():
    rho = StarPoint.star_point(3)
    part, _ = star_equivalence_class(rho)
    assert len(part) == 3
    for w in (Permutation((2, 1, 3)), Permutation((3, 1, 2)), Permutation((1, 3, 2))):
        assert star_related(rho, rho.relabel(w))
    interior = StarPoint((1, 2, 3), (F(1, 2), F(1, 3)))
    assert star_related(interior, interior)
    assert not star_related(interior, interior.relabel(Permutation((2, 1, 3))))
    # boundary points related across different orders
    x = StarPoint((1, 2, 3), (F(1, 2), F(1)))
    y = StarPoint((1, 2, 3), (F(1, 2), F(1)))
    assert star_related(x, y)
    z = StarPoint((3, 1, 2), (F(1), F(1, 2)))
    assert star_related(x, z)  # blocks {1,2} (same reduced data) and {3}


def test_theta_star_membership_and_infinity():
    x = StarPoint((1, 2, 3, 4), (F(1, 2), F(1, 3), F(1, 7)))
    nut = theta_star(x)
    assert check_membership(VarietySpec("Flower", 4), nut).ok
    zero_diffs = StarPoint((1, 2, 3), (F(0), F(0)))
    nut = theta_star(zero_diffs)
    assert all(p.is_infinite() for p in nut.as_dict().values())  # delta = 0
    wall = StarPoint((1, 2, 3, 4), (F(1, 2), F(1), F(1, 7)))
    nb = theta_star(wall)
    assert check_membership(VarietySpec("Flower", 4), nb).ok
    assert nb[(2, 3)].is_zero() and nb[(1, 4)].is_zero() and not nb[(1, 2)].is_zero()


def test_theta_star_equivariance():
    rng = random.Random(2)
    for _ in range(30):
        diffs = tuple(F(rng.randrange(0, 16), 16) for _ in range(3))
        order = tuple(rng.sample(range(1, 5), 4))
        x = StarPoint(order, diffs)
        w = Permutation(tuple(rng.sample(range(1, 5), 4)))
        assert theta_star(x.relabel(w)).nu == theta_star(x).relabel(w).nu


def test_theta_star_conventions():
    x = StarPoint((1, 2, 3), (F(1, 2), F(1, 3)))
    down = theta_star(x, convention="descending")
    up = theta_star(x, convention="ascending")
    # the two conventions differ by a global sign on distances
    for (i, j), p in down.as_dict().items():
        q = up[(i, j)]
        assert q.u * p.v == -p.u * q.v or (p.is_infinite() and q.is_infinite())


def test_b_map_running_example_and_zero_case():
    f = DEFAULT_F
    tree = ((1, (2, 3)), 4)
    t1, t2, t3 = F(1, 2), F(1, 3), F(1, 5)
    b = b_map(tree, T_RUNNING)
    assert b[frozenset({1, 2, 3, 4})] == f(t1)
    assert b[frozenset({1, 2, 3})] == f(t1 * t2) / f(t1)
    assert b[frozenset({2, 3})] == f(t1 * t2 * t3) / f(t1 * t2)
    t0 = dict(T_RUNNING)
    t0[frozenset({1, 2, 3, 4})] = F(0)
    b0 = b_map(tree, t0)
    assert b0[frozenset({1, 2, 3})] == t2 and b0[frozenset({2, 3})] == t3
    with pytest.raises(ValueError):
        b_map(tree, {**T_RUNNING, frozenset({1, 2, 3, 4}): F(1)})


def test_b_map_injective_on_grid():
    f = DEFAULT_F
    grid = [F(1, 4), F(2, 4), F(3, 4)]
    rng = random.Random(3)
    for n in range(2, 6):
        trees = [t for t in (random_binary_tree(range(1, n + 1), rng) for _ in range(12))]
        for tree in trees:
            edges = PlanarForest([tree]).edges()
            seen = {}
            for combo in itertools.product(grid, repeat=len(edges)):
                t = dict(zip(edges, combo))
                key = tuple(sorted(b_map(tree, t).items()))
                assert key not in seen, (tree, combo, seen[key])
                seen[key] = combo


def test_chart_b_inverts_chart_H():
    rng = random.Random(5)
    for n in range(2, 6):
        for _ in range(15):
            tree = random_binary_tree(range(1, n + 1), rng)
            forest = PlanarForest([tree])
            t = {e: F(rng.randrange(1, 10), 10) for e in forest.edges()}
            b = b_map(tree, t)
            delta, _ = chart_H(tree, b)
            order = forest.leaf_order()
            zdiffs = {(a, c): delta[(a, c)] for a, c in zip(order, order[1:])}
            assert chart_b(tree, zdiffs) == b


def test_equal_b_values_give_equal_spacing():
    tree = ((1, 2), (3, 4))
    edges = PlanarForest([tree]).edges()
    b = {e: F(1) for e in edges}
    delta, mu = chart_H(tree, b)
    assert delta[(1, 2)] == delta[(2, 3)] == delta[(3, 4)] == F(1)
    assert mu[(1, 2, 3)] == F(2)


def test_theta_running_example_and_commuting_square():
    p = CubePoint(RUNNING, T_RUNNING)
    image = theta(p)
    assert image.nu.nu == theta_star(gamma(p)).nu
    assert chart_membership(RUNNING, image.mu_dict()) == []
    rng = random.Random(7)
    for n in (3, 4, 5):
        for _ in range(25):
            k = rng.randrange(0, n)
            forest = rng.choice(enumerate_planar_forests(n, k))
            t = {e: F(rng.randrange(0, 9), 8) for e in forest.edges()}
            pp = CubePoint(forest, t)
            assert theta(pp).nu.nu == theta_star(gamma(pp)).nu


def test_theta_gluing():
    rng = random.Random(11)
    for k in (1, 2, 3):
        for forest in enumerate_planar_forests(4, k):
            for e in forest.edges():
                vals = {x: F(rng.randrange(1, 8), 8) for x in forest.edges()}
                v0 = dict(vals)
                v0[e] = F(0)
                assert theta_images_equal(
                    theta(CubePoint(forest, v0)), theta(CubePoint(flip(forest, e), v0))
                )
                v1 = dict(vals)
                v1[e] = F(1)
                a = theta(CubePoint(forest, v1))
                del v1[e]
                b = theta(CubePoint(collapse(forest, e), v1))
                assert theta_images_equal(a, b)


def test_gamma_well_definedness():
    rng = random.Random(13)
    for k in (1, 2, 3):
        for forest in enumerate_planar_forests(4, k):
            for e in forest.edges():
                for _ in range(3):
                    vals = {x: F(rng.randrange(1, 8), 8) for x in forest.edges()}
                    v0 = dict(vals)
                    v0[e] = F(0)
                    assert star_related(
                        gamma(CubePoint(forest, v0)), gamma(CubePoint(flip(forest, e), v0))
                    )
                    v1 = dict(vals)
                    v1[e] = F(1)
                    a = gamma(CubePoint(forest, v1))
                    del v1[e]
                    b = gamma(CubePoint(collapse(forest, e), v1))
                    assert star_related(a, b)


def test_big_cube_centre_hits_zero_section():
    p = CubePoint(RUNNING, {e: F(0) for e in RUNNING.edges()})
    image = theta(p)
    assert image.b_part() == image.s_part


def test_tree_of_configuration_examples():
    assert tree_of_configuration({1: F(0), 2: F(1), 3: F(2)}).trees[0] == (3, 2, 1)
    fr = tree_of_configuration({1: F(0), 2: F(1), 3: F(2), 4: F(4)})
    assert fr.trees[0] == (4, (3, 2, 1))
    with pytest.raises(ValueError):
        tree_of_configuration({1: F(0), 2: F(0)})


def test_tree_of_configuration_roundtrip():
    rng = random.Random(17)
    for _ in range(120):
        n = rng.randrange(2, 8)
        tree = random_binary_tree(range(1, n + 1), rng)
        forest = PlanarForest([tree])
        t = {e: F(rng.randrange(1, 16), 16) for e in forest.edges()}
        image = theta(CubePoint(forest, t))
        order = forest.leaf_order()
        zs = {order[0]: F(0)}
        for a, b in zip(order, order[1:]):
            zs[b] = zs[a] - image.nu.delta(a, b).value()
        assert tree_of_configuration(zs).trees[0] == tree


def test_tree_of_projective_configuration_reversal():
    zs = {1: F(0), 2: F(1), 3: F(3)}
    a = tree_of_projective_configuration(zs)
    flipped = {k: -v for k, v in zs.items()}
    assert tree_of_projective_configuration(flipped) == a
    assert len(a.decorated_edges()) == 1


def test_cube_point_json():
    p = CubePoint(RUNNING, T_RUNNING)
    assert CubePoint.from_json(p.to_json()) == p


def test_affine_cactus_path():
    rng = random.Random(19)
    for n in (3, 4, 5):
        for _ in range(30):
            k = rng.randrange(2, n + 1)
            point = affine_cactus_path(n, k, rng.random(), rng.random())
            assert path_sigma_residual(point) <= 1e-9
            wall = affine_cactus_path(n, k, 0.5, rng.random())
            assert all(v == 2.0 for v in wall.mu_dict().values())
    with pytest.raises(ValueError):
        affine_cactus_path(2, 2, 0.1, 0.1)
    with pytest.raises(ValueError):
        affine_cactus_path(4, 1, 0.1, 0.1)


def test_path_matches_one_cube_at_s_zero():
    # H(t, 0) runs along the one-cube of the interval sequence: it equals the
    # chart image of the flipped interval tree at the reparameterized time
    f = DEFAULT_F
    n, k = 4, 3
    # the one-cube of the sequence (1,2,3): its reversed-interval subcube
    forest = PlanarForest([(3, 2, 1), 4])
    trunk = frozenset({1, 2, 3})
    for t in (0.1, 0.2, 0.35, 0.45):
        point = affine_cactus_path(n, k, t, 0.0)
        y = 1 / (2 * t / (1 - (2 * t) ** 2))  # 1/f(2t)
        tc = (math.sqrt(1 + 4 * y * y) - 1) / (2 * y)
        image = theta(CubePoint(forest, {trunk: F(tc)}))
        for (i, j), v in point.nu_dict().items():
            got = image.nu[(i, j)]
            if got.is_zero():
                assert abs(v) < 1e-9 or abs(v) > 1e8
            else:
                expect = 1 / float(got.reciprocal().u) if not got.is_infinite() else 0.0
                assert abs(v - expect) < 1e-9, ((i, j), v, expect)
