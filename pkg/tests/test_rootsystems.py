import itertools
from fractions import Fraction as F

import pytest

from cactusflower.realgeometry import INF, NEG_INF
from cactusflower.rootsystems import (
    EXPECTED_ROOT_COUNTS,
    FaceDatum,
    build_root_system,
    face_center,
    face_vertices,
    parallel_face_related,
    permutahedron_membership,
    star_faces_related,
    star_membership,
    star_point_coords,
    theta_root,
    verify_face_center,
    xi,
)


def test_root_counts():
    for name, expected in EXPECTED_ROOT_COUNTS.items():
        assert len(build_root_system(name).roots) == expected


def test_weyl_orders():
    for name, order in {"A2": 6, "A3": 24, "B2": 8, "B3": 48, "D4": 192, "G2": 12}.items():
        assert build_root_system(name).order == order


def test_invalid_cartan_rejected():
    with pytest.raises(ValueError):
        build_root_system([[2, -1], [-5, 2]])
    with pytest.raises(ValueError):
        build_root_system([[1]])
    with pytest.raises(ValueError):
        build_root_system("E8")


def test_face_center_trivial_cases():
    rs = build_root_system("A2")
    for ss in rs.simple_systems():
        # delta = everything: the face is the vertex itself
        fd = FaceDatum(ss, frozenset(range(rs.rank)))
        assert face_center(fd) == ss.rho()
        assert face_vertices(fd) == frozenset([ss.rho()])
        # delta empty: the whole permutahedron, centred at the origin
        fd = FaceDatum(ss, frozenset())
        assert face_center(fd) == (F(0), F(0))


def test_face_centers_small_types():
    for name in ("A2", "B2", "A3", "G2"):
        rs = build_root_system(name)
        for ss in rs.simple_systems():
            for size in range(rs.rank + 1):
                for delta in itertools.combinations(range(rs.rank), size):
                    assert verify_face_center(FaceDatum(ss, frozenset(delta)))


def test_xi_vertices_and_membership():
    rs = build_root_system("A2")
    for ss in rs.simple_systems():
        fd = FaceDatum(ss, frozenset())
        zeros = {i: F(0) for i in range(2)}
        ones = {i: F(1) for i in range(2)}
        assert xi(fd, zeros) == face_center(fd)
        assert xi(fd, ones) == ss.rho()
        for tt in itertools.product([F(0), F(1, 2), F(1)], repeat=2):
            y = xi(fd, dict(enumerate(tt)))
            assert permutahedron_membership(rs, y)
            for i in range(rs.rank):
                root = rs.roots[ss.root_indices[i]]
                assert rs.copair(root, y) >= 0  # image stays in the chamber


def test_xi_glues_and_is_injective_per_chamber():
    for name in ("A2", "B2"):
        rs = build_root_system(name)
        grid = [F(k, 3) for k in range(4)]
        by_star_point = {}
        for ss in rs.simple_systems():
            fd = FaceDatum(ss, frozenset())
            images = {}
            for tt in itertools.product(grid, repeat=rs.rank):
                t = dict(enumerate(tt))
                y = xi(fd, t)
                assert y not in images or images[y] == tt  # injective on the grid
                images[y] = tt
                by_star_point.setdefault(star_point_coords(ss, t), set()).add(y)
        assert all(len(v) == 1 for v in by_star_point.values())


def test_translation_formula_for_related_points():
    # related boundary points map to translates by the difference of the
    # chamber vertices
    rs = build_root_system("A2")
    systems = rs.simple_systems()
    for ss1 in systems:
        for ss2 in systems:
            for d1 in range(2):
                fd1, fd2 = FaceDatum(ss1, frozenset([d1])), None
                keep1 = {ss1.root_indices[i] for i in range(2) if i != d1}
                for d2 in range(2):
                    keep2 = {ss2.root_indices[i] for i in range(2) if i != d2}
                    if keep1 == keep2:
                        fd2 = FaceDatum(ss2, frozenset([d2]))
                        break
                if fd2 is None or fd1 == fd2:
                    continue
                free1 = next(i for i in range(2) if i not in fd1.delta)
                free2 = next(i for i in range(2) if i not in fd2.delta)
                for tval in (F(0), F(1, 3), F(1)):
                    x1 = xi(fd1, {free1: tval})
                    x2 = xi(fd2, {free2: tval})
                    shift = tuple(a - b for a, b in zip(ss1.rho(), ss2.rho()))
                    assert x1 == tuple(a + s for a, s in zip(x2, shift))
                    assert star_faces_related(fd1, {free1: tval}, fd2, {free2: tval})
                    assert parallel_face_related(x2, fd2, x1, fd1)


def test_theta_root_values():
    rs = build_root_system("A2")
    base = rs.simple_systems()[0]
    z = theta_root(base, {0: F(0), 1: F(0)})
    assert all(v == 0 for v in z.values())
    # one coordinate at the wall: infinite exactly off the parabolic
    z = theta_root(base, {0: F(1, 2), 1: F(1)})
    finite_roots = {r.simple for r in rs.roots if z[r.simple] not in (INF, NEG_INF)}
    expected = {r.simple for r in rs.roots if base.coords_in(r)[1] == 0}
    assert finite_roots == expected
    # the finite part is closed under addition of roots (a root subsystem
    # spanned by the kept simple roots)
    roots = {r.simple for r in rs.roots}
    for a in finite_roots:
        for b in finite_roots:
            s = tuple(x + y for x, y in zip(a, b))
            if s in roots:
                assert s in finite_roots


def test_theta_root_triangle_relation():
    rs = build_root_system("B2")
    base = rs.simple_systems()[0]
    z = theta_root(base, {0: F(1, 3), 1: F(2, 7)})
    roots = {r.simple for r in rs.roots}
    for a in roots:
        for b in roots:
            s = tuple(x + y for x, y in zip(a, b))
            if s in roots:
                assert z[a] + z[b] == z[s]


def test_theta_root_glues():
    rs = build_root_system("A2")
    grid = [F(k, 2) for k in range(3)]
    by_point = {}
    for ss in rs.simple_systems():
        for tt in itertools.product(grid, repeat=2):
            t = dict(enumerate(tt))
            x = star_point_coords(ss, t)
            z = tuple(sorted(theta_root(ss, t).items()))
            by_point.setdefault(x, set()).add(z)
    assert all(len(v) == 1 for v in by_point.values())


def test_membership():
    rs = build_root_system("A2")
    assert permutahedron_membership(rs, rs.rho)
    found = star_membership(rs, rs.rho)
    assert found is not None and all(v == 1 for v in found[1].values())
    assert star_membership(rs, (F(0), F(0))) is not None
    assert not permutahedron_membership(rs, (F(2), F(2)))
    assert star_membership(rs, (F(2), F(2))) is None
    # an interior permutahedron point that is outside the star
    rs3 = build_root_system("A3")
    probe = (F(17, 16), F(0), F(17, 16))
    if permutahedron_membership(rs3, probe):
        assert star_membership(rs3, probe) is None


def test_parallel_faces_hexagon():
    # in the hexagon each edge has a unique genuinely parallel partner edge
    rs = build_root_system("A2")
    systems = rs.simple_systems()
    fd1 = FaceDatum(systems[0], frozenset([0]))
    c1 = face_center(fd1)
    partners = set()
    for ss in systems:
        for d in range(2):
            fd2 = FaceDatum(ss, frozenset([d]))
            c2 = face_center(fd2)
            if parallel_face_related(c1, fd1, c2, fd2):
                partners.add(frozenset(face_vertices(fd2)))
    assert len(partners) == 2  # the edge itself and the opposite edge
    assert parallel_face_related(c1, fd1, c1, fd1)
