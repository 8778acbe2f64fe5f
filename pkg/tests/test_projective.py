import itertools
import random
from fractions import Fraction as F

import pytest

from cactusflower.combinatorics import Permutation, SetPartition
from cactusflower.forests import PlanarForest
from cactusflower.projective import (
    InvariantViolation,
    MuTuple,
    NuTuple,
    PP_INF,
    PP_ONE,
    PP_ZERO,
    ProjPoint,
    QTuple,
    VarietySpec,
    chart_membership,
    check_membership,
    classify_strata,
    collapse_to_LM,
    cross_ratios,
    dm_to_q_identification,
    eps_family_delta,
    extend_nu,
    g_inv,
    g_mul,
    g_sigma,
    losev_manin_iso,
    losev_manin_iso_inverse,
    natural_chart,
    open_cover_membership,
    orbit_map,
    ordered_pairs,
    ordered_triples,
    point_from_json,
    point_to_json,
    q_to_dm_identification,
    sigma_dm,
    sigma_flower,
    sigma_mau_woodward,
)
from cactusflower.scalars import GaussianRational, I


def q_member(xs, eps, n):
    nut = orbit_map(xs, eps)
    if eps == 0:
        mu = cross_ratios(xs, None)
    else:
        special = max(xs) + 1
        zs = dict(xs)
        zs[special] = 1 / eps
        full = cross_ratios(zs, special)
        mu = MuTuple(sorted(xs), {t: full[t] for t in ordered_triples(sorted(xs))})
    return QTuple(n, nut, mu, eps)


def test_projpoint_canonical():
    assert ProjPoint(F(2), F(4)) == ProjPoint(F(1), F(2))
    assert ProjPoint(5, 0) == PP_INF
    assert ProjPoint(3, 1).reciprocal() == ProjPoint(1, 3)
    with pytest.raises(ValueError):
        ProjPoint(0, 0)


def test_flower_membership_examples():
    spec = VarietySpec("Flower", 3)
    all_deltas_zero = NuTuple(3, {(i, j): PP_INF for (i, j) in [(1, 2), (1, 3), (2, 3)]})
    assert check_membership(spec, all_deltas_zero).ok
    all_deltas_inf = NuTuple(3, {(i, j): PP_ZERO for (i, j) in [(1, 2), (1, 3), (2, 3)]})
    assert check_membership(spec, all_deltas_inf).ok
    # delta_12 = 1, delta_23 = delta_13 = infinity
    mixed = NuTuple(3, {(1, 2): PP_ONE, (2, 3): PP_ZERO, (1, 3): PP_ZERO})
    assert check_membership(spec, mixed).ok
    # and a non-member: delta_12 = 1, delta_23 = 1, delta_13 = 3 breaks the triangle
    bad = NuTuple(3, {(1, 2): PP_ONE, (2, 3): PP_ONE, (1, 3): ProjPoint(1, 3)})
    rep = check_membership(spec, bad)
    assert not rep.ok and any(v[0] == "nu_triangle" for v in rep.violations)


def test_q3_example():
    q = q_member({1: F(0), 2: F(1), 3: F(5)}, F(0), 3)
    rep = check_membership(VarietySpec("MauWoodward", 3), q)
    assert rep.ok
    # mu*b = c and a(mu-1) = c in the named coordinates
    a, b, c = q.nu[(2, 3)], q.nu[(1, 3)], q.nu[(1, 2)]
    mu = q.mu[(1, 2, 3)]
    assert mu.u * b.u * c.v == c.u * mu.v * b.v
    lhs = a.u * (mu.u - mu.v)
    assert lhs * c.v == c.u * a.v * mu.v


def test_homogenization_soundness():
    # on all-finite points each homogenized equation vanishes iff the affine
    # relation holds
    rng = random.Random(5)
    for _ in range(200):
        vals = [F(rng.randrange(-9, 10), rng.randrange(1, 5)) for _ in range(3)]
        a, b, c = (ProjPoint.finite(v) for v in vals)
        from cactusflower.projective import _eq_prod, _eq_sum_const, _eq_triangle

        assert (_eq_prod(a, b, c) == 0) == (vals[0] * vals[1] == vals[2])
        assert (_eq_sum_const(a, b, F(1)) == 0) == (vals[0] + vals[1] == 1)
        eps = F(rng.randrange(-2, 3))
        affine = eps * vals[2] + vals[0] * vals[1] == vals[2] * vals[1] + vals[0] * vals[2]
        assert (_eq_triangle(a, b, c, eps) == 0) == affine


def test_classify_strata_examples():
    n = 3
    all_inf = NuTuple(3, {(i, j): PP_ZERO for (i, j) in [(1, 2), (1, 3), (2, 3)]})
    s, b, dims = classify_strata(all_inf)
    assert s == SetPartition.discrete(3) and b == SetPartition.discrete(3)
    assert dims == (0, 2)
    all_zero = NuTuple(3, {(i, j): PP_INF for (i, j) in [(1, 2), (1, 3), (2, 3)]})
    s, b, dims = classify_strata(all_zero)
    assert s == SetPartition.indiscrete(3) and b == SetPartition.indiscrete(3)
    assert dims == (3 - 1, 3 - 1 - 1 + 0)


def test_classify_strata_rejects_nonmembers():
    bad = NuTuple(3, {(1, 2): PP_ONE, (2, 3): PP_ONE, (1, 3): ProjPoint(1, 3)})
    with pytest.raises(ValueError):
        classify_strata(bad)


def test_strata_partition_property():
    rng = random.Random(11)
    from cactusflower.combinatorics import refines

    for _ in range(60):
        xs = {}
        while len(set(xs.values())) < 4:
            xs = {i: F(rng.randrange(-12, 13), rng.randrange(1, 5)) for i in range(1, 5)}
        point = orbit_map(xs, F(0))
        s, b, _ = classify_strata(point)
        assert refines(b, s)


def test_open_cover():
    rng = random.Random(13)
    for eps in (F(0), F(1), I):
        for _ in range(40):
            xs = {}
            while len(set(xs.values())) < 4 or any(1 - eps * v == 0 for v in xs.values()):
                xs = {i: F(rng.randrange(-12, 13), rng.randrange(1, 5)) for i in range(1, 5)}
            point = orbit_map(xs, eps)
            chart = natural_chart(point)
            assert open_cover_membership(chart, point)
    # generic finite distinct distances lie in the one-petal chart
    point = orbit_map({1: F(0), 2: F(1), 3: F(3)}, F(0))
    assert natural_chart(point) == SetPartition.indiscrete(3)
    # the all-infinite-distance point lies in the all-singletons chart only
    all_inf = NuTuple(3, {(i, j): PP_ZERO for (i, j) in [(1, 2), (1, 3), (2, 3)]})
    assert natural_chart(all_inf) == SetPartition.discrete(3)
    assert open_cover_membership(SetPartition.discrete(3), all_inf)
    assert not open_cover_membership(SetPartition.indiscrete(3), all_inf)


def test_extend_nu_examples():
    # trivial: one part, nothing to extend
    xs = {1: F(0), 2: F(1), 3: F(4)}
    point = orbit_map(xs, F(0))
    out = extend_nu(
        SetPartition.indiscrete(3), {frozenset({1, 2, 3}): point}, NuTuple(1, {}, F(0)), F(0)
    )
    assert out.nu == point.nu
    # n = 3, parts {1,2} and {3}: the completed delta satisfies the triangle
    spart = SetPartition([{1, 2}, {3}])
    blocks = {
        frozenset({1, 2}): orbit_map({1: F(0), 2: F(2)}, F(0)),
        frozenset({3}): NuTuple(1, {}, F(0)),
    }
    core = orbit_map({1: F(0), 2: F(5)}, F(0))
    full = extend_nu(spart, blocks, core, F(0))
    assert check_membership(VarietySpec("DeformedFlower", 3), full).ok
    d12, d13, d23 = full.delta(1, 2), full.delta(1, 3), full.delta(2, 3)
    assert d23.u == d13.u - d12.u  # oracle: solve in distance coordinates
    assert open_cover_membership(spart, full)
    # a random rational instance at eps = 1 passes all equations
    rng = random.Random(17)
    spart = SetPartition([{1, 3}, {2, 4}])
    blocks = {
        frozenset({1, 3}): orbit_map({1: F(0), 2: F(1, 3)}, F(1)),
        frozenset({2, 4}): orbit_map({1: F(1, 5), 2: F(2, 7)}, F(1)),
    }
    core = orbit_map({1: F(0), 2: F(4, 9)}, F(1))
    full = extend_nu(spart, blocks, core, F(1))
    assert check_membership(VarietySpec("DeformedFlower", 4), full).ok


def test_losev_manin_iso():
    point = orbit_map({1: F(0), 2: F(3), 3: F(5), 4: F(7)}, F(1))
    alpha = losev_manin_iso(point)
    assert check_membership(VarietySpec("LosevManin", 4), alpha).ok
    assert losev_manin_iso_inverse(alpha, F(1)).nu == point.nu
    # delta = 0 (nu infinite) maps to alpha = 1; delta infinite to alpha inf
    nut = NuTuple(2, {(1, 2): PP_INF}, F(1))
    assert losev_manin_iso(nut)[(1, 2)] == PP_ONE
    nut = NuTuple(2, {(1, 2): PP_ZERO}, F(1))
    assert losev_manin_iso(nut)[(1, 2)].is_infinite()
    with pytest.raises(ValueError):
        losev_manin_iso(orbit_map({1: F(0), 2: F(1)}, F(0)))


def test_group_scheme():
    assert g_mul(F(2), F(5), F(0)) == 7  # plain addition at the special fibre
    # x -> 1 - x conjugates the law to multiplication at eps = 1
    rng = random.Random(19)
    for _ in range(50):
        x1, x2 = F(rng.randrange(-5, 6), 3), F(rng.randrange(-5, 6), 3)
        if 1 - x1 == 0 or 1 - x2 == 0:
            continue
        assert (1 - x1) * (1 - x2) == 1 - g_mul(x1, x2, F(1))
        assert g_mul(x1, g_inv(x1, F(1)), F(1)) == 0
    # orbit invariance under translations
    for eps in (F(0), F(1), F(2)):
        xs = {1: F(0), 2: F(1, 3), 3: F(2), 4: F(5)}
        base = orbit_map(xs, eps)
        for _ in range(10):
            g = F(rng.randrange(-6, 7), 5)
            if 1 - eps * g == 0:
                continue
            try:
                shifted = {i: g_mul(g, x, eps) for i, x in xs.items()}
                moved = orbit_map(shifted, eps)
            except ValueError:
                continue
            assert moved.nu == base.nu


def test_group_scheme_sigma():
    # fixed on the special fibre; the twisted-real circle at eps = i
    x, eps = F(3, 7), F(0)
    assert g_sigma(x, eps) == (x, 0)
    # points with |x|^2 = 2 Im(x) satisfy conj(x) = x/(1 + i x)
    t = F(1, 3)
    a, b = 2 * t / (1 + t * t), 2 * t * t / (1 + t * t)
    x = GaussianRational(a, b)
    assert a * a + b * b == 2 * b
    sx, seps = g_sigma(x, I)
    assert sx == GaussianRational(a, -b)  # the conjugate
    assert seps == -I


def test_cross_ratios_and_relations():
    mu = cross_ratios({1: F(0), 2: F(1), 3: F(2)})
    assert mu[(1, 2, 3)] == F(2)
    rng = random.Random(23)
    for _ in range(30):
        vals = set()
        while len(vals) < 4:
            vals.add(F(rng.randrange(-9, 10), rng.randrange(1, 4)))
        zs = dict(enumerate(sorted(vals), start=1))
        mu = cross_ratios(zs)
        assert check_membership(VarietySpec("DeligneMumford", 4), mu).ok
        d = mu.as_dict()
        for (i, j, k) in ordered_triples(range(1, 5)):
            s = d[(i, j, k)]
            t = d[(j, i, k)]
            assert s.u * t.v + t.u * s.v == s.v * t.v  # mu_ijk + mu_jik = 1


def test_collapse_functoriality():
    # cross ratios of n+2 labelled points, then the caterpillar collapse,
    # equals the multiplicative pairwise ratios after sending the two
    # distinguished points to 0 and infinity
    rng = random.Random(29)
    n = 3
    for _ in range(25):
        vals = set()
        while len(vals) < n + 2:
            vals.add(F(rng.randrange(-20, 21), rng.randrange(1, 6)))
        ordered = sorted(vals)
        z0, ztop = ordered[0], ordered[-1]
        zs = {0: z0}
        for i, v in enumerate(ordered[1:], start=1):
            zs[i] = v
        mu = cross_ratios(zs, distinguished=0)
        alpha = collapse_to_LM(mu, n)
        assert check_membership(VarietySpec("LosevManin", n), alpha).ok
        xs = {i: (zs[i] - z0) / (ztop - zs[i]) for i in range(1, n + 1)}
        for (i, j) in ordered_pairs(range(1, n + 1)):
            expect = xs[i] / xs[j]
            assert alpha[(i, j)] == expect


def test_eps_family():
    nut = eps_family_delta({1: F(1), 2: F(0), 3: F(4)}, F(1), F(0))
    assert check_membership(VarietySpec("DeformedFlower", 3), nut).ok
    assert nut.delta(1, 2) == F(1)  # u_i - u_j at the special fibre
    nut = eps_family_delta({1: F(1), 2: F(0), 3: F(4)}, F(1), F(2))
    assert check_membership(VarietySpec("DeformedFlower", 3), nut).ok


def test_sigma_flower():
    point = orbit_map({1: F(0), 2: F(1), 3: F(3)}, F(0))
    assert sigma_flower(point).nu == point.nu  # identity on the special fibre
    for eps in (F(1), I, F(2)):
        pt = orbit_map({1: F(0), 2: F(1, 3), 3: F(3)}, eps)
        img = sigma_flower(pt)
        assert check_membership(VarietySpec("DeformedFlower", 3), img).ok
        assert sigma_flower(img).nu == pt.nu


def test_sigma_mau_woodward_and_dm():
    rng = random.Random(31)
    for eps in (F(0), I, F(2)):
        for _ in range(15):
            vals = set()
            while len(vals) < 4:
                v = F(rng.randrange(-9, 10), rng.randrange(1, 4))
                if 1 - eps * v != 0 and (eps == 0 or v != 1 / eps):
                    vals.add(v)
            xs = dict(enumerate(sorted(vals), start=1))
            q = q_member(xs, eps, 4)
            spec = VarietySpec("DeformedMauWoodward", 4)
            assert check_membership(spec, q).ok
            s1 = sigma_mau_woodward(q)
            assert check_membership(spec, s1).ok
            s2 = sigma_mau_woodward(s1)
            assert s2.nu.nu == q.nu.nu and s2.mu.mu == q.mu.mu
    # the marked-point swap on the moduli of five points
    zs5 = {1: F(0), 2: F(1), 3: F(3), 4: F(11), 5: F(4, 7)}
    mu5 = cross_ratios(zs5)
    spec5 = VarietySpec("DeligneMumford", 5, tuple(range(1, 6)))
    assert check_membership(spec5, mu5).ok
    sd = sigma_dm(mu5, 4)
    assert check_membership(spec5, sd).ok
    assert sigma_dm(sd, 4).mu == mu5.mu


def test_dm_q_identification_roundtrip():
    zs5 = {1: F(0), 2: F(1), 3: F(3), 4: F(11), 5: F(4, 7)}
    mu5 = cross_ratios(zs5)
    for eps in (F(1), F(3), I):
        q = dm_to_q_identification(mu5, eps)
        assert check_membership(VarietySpec("DeformedMauWoodward", 4), q).ok
        back = q_to_dm_identification(q)
        assert back.mu == mu5.mu
    with pytest.raises(ValueError):
        dm_to_q_identification(mu5, F(0))


def test_chart_membership_trichotomy():
    tau = PlanarForest([((1, (2, 3)), 4)])
    part = frozenset({1, 2, 3, 4})
    # every configuration of distinct points lies in every tree chart
    zs = {1: F(10), 2: F(9), 3: F(8), 4: F(0)}
    assert chart_membership(tau, {part: cross_ratios(zs)}) == []
    zs = {1: F(10), 2: F(0), 3: F(-1), 4: F(9)}
    assert chart_membership(tau, {part: cross_ratios(zs)}) == []
    # colliding a pair whose meet is at the bottom of its comparison chain
    # produces an excluded value (an infinite ratio at an equal-meet triple)
    zs_bad = {1: F(10), 2: F(10), 3: F(8), 4: F(0)}
    bad = chart_membership(tau, {part: cross_ratios(zs_bad)})
    assert any(case == "equal" for case, _, _ in bad)
    # colliding a pair whose meet is highest stays inside the chart
    zs_ok = {1: F(10), 2: F(9), 3: F(9), 4: F(0)}
    assert chart_membership(tau, {part: cross_ratios(zs_ok)}) == []


def test_json_point_roundtrip():
    q = q_member({1: F(0), 2: F(1), 3: F(5)}, F(0), 3)
    q2 = point_from_json(point_to_json(q))
    assert q2.nu.nu == q.nu.nu and q2.mu.mu == q.mu.mu
    nut = orbit_map({1: F(0), 2: F(1, 3), 3: F(3)}, I)
    nut2 = point_from_json(point_to_json(nut))
    assert nut2.nu == nut.nu and nut2.epsilon == I
