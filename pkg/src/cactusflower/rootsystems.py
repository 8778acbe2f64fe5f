"""Finite crystallographic root systems from Cartan data, permutahedron
faces and their centres, the star-to-permutahedron map, and the
star-to-real-locus coordinates.

Conventions.  Vectors live in the fundamental-weight basis of a fixed base
simple system, so a weight is a tuple of rational pairings with the base
simple coroots; roots additionally carry their integer coordinates in the
base simple roots.  Other simple systems are Weyl translates of the base and
are represented by the translating group element.  With these choices every
pairing used below is exact and almost everything is integer arithmetic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .realgeometry import INF, NEG_INF, RationalDiffeo, DEFAULT_F

Vec = Tuple[Fraction, ...]

NAMED_CARTAN = {}


def _chain(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


for _r in range(1, 5):
    NAMED_CARTAN[f"A{_r}"] = _chain(_r)
for _r in (2, 3):
    _m = _chain(_r)
    _m[_r - 2][_r - 1] = -2  # short last root
    NAMED_CARTAN[f"B{_r}"] = _m
    _m2 = _chain(_r)
    _m2[_r - 1][_r - 2] = -2
    NAMED_CARTAN[f"C{_r}"] = _m2
_d4 = _chain(4)
_d4[2][3] = _d4[3][2] = 0
_d4[1][3] = _d4[3][1] = -1
NAMED_CARTAN["D4"] = _d4
NAMED_CARTAN["G2"] = [[2, -1], [-3, 2]]

EXPECTED_ROOT_COUNTS = {
    "A1": 2, "A2": 6, "A3": 12, "A4": 20,
    "B2": 8, "B3": 18, "C2": 8, "C3": 18, "D4": 24, "G2": 12,
}


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vscale(c, a):
    return tuple(c * x for x in a)


@dataclass(frozen=True)
class Root:
    """A root: simple-root coordinates (integers, one sign) and weight-basis
    coordinates, plus the coroot's pairing functional on weight vectors."""

    simple: Tuple[int, ...]
    weight: Tuple[int, ...]
    copairing: Vec  # <alpha^vee, x> = sum copairing[j] * x_j

    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.simple)


class RootSystem:
    """The full root set generated from a Cartan matrix by reflection
    closure, with the Weyl group enumerated as matrices on weight space."""

    def __init__(self, cartan):
        a = [list(map(int, row)) for row in cartan]
        r = len(a)
        if any(len(row) != r for row in a):
            raise ValueError("Cartan matrix must be square")
        for i in range(r):
            if a[i][i] != 2:
                raise ValueError("diagonal entries must equal 2")
            for j in range(r):
                if i != j:
                    if a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0):
                        raise ValueError("off-diagonal entries invalid")
                    if a[i][j] * a[j][i] not in (0, 1, 2, 3):
                        raise ValueError("not a finite-type Cartan matrix")
        self.cartan = tuple(tuple(row) for row in a)
        self.rank = r
        self._ainv = _invert(a)
        # symmetrizer: d_i A_ij = d_j A_ji
        d = [Fraction(1)] * r
        changed = True
        while changed:
            changed = False
            for i in range(r):
                for j in range(r):
                    if a[i][j] and d[i] * a[i][j] != d[j] * a[j][i]:
                        d[j] = d[i] * a[i][j] / a[j][i]
                        changed = True
        self.symmetrizer = tuple(d)

        # reflection closure on simple-root coordinates
        simples = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
        roots = set(simples)
        frontier = list(simples)
        while frontier:
            nxt = []
            for c in frontier:
                m = [sum(a[i][j] * c[j] for j in range(r)) for i in range(r)]
                for i in range(r):
                    c2 = list(c)
                    c2[i] -= m[i]
                    c2 = tuple(c2)
                    if c2 not in roots:
                        roots.add(c2)
                        nxt.append(c2)
            frontier = nxt

        self.roots: List[Root] = []
        for c in sorted(roots):
            w = tuple(sum(a[i][j] * c[j] for j in range(r)) for i in range(r))
            norm = self._norm_c(c)
            # coroot coordinates: <alpha^vee, omega_j> = c_j (a_j, a_j)/(a, a)
            cop = tuple(c[j] * 2 * d[j] / norm for j in range(r))
            self.roots.append(Root(c, w, cop))
        self._root_index = {rt.simple: k for k, rt in enumerate(self.roots)}
        self._simple_idx = [self._root_index[s] for s in simples]

        # Weyl group as matrices on weight coordinates (columns = images of
        # the fundamental weights) together with the induced root permutation
        ident = tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))
        self.elements: Dict[tuple, tuple] = {self._root_perm(ident): ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                for i in range(r):
                    m2 = self._reflect_matrix(i, m)
                    key = self._root_perm(m2)
                    if key not in self.elements:
                        self.elements[key] = m2
                        nxt.append(m2)
            frontier = nxt
        self.order = len(self.elements)

    # -- pairings -----------------------------------------------------------

    def _inner_c(self, c) -> Vec:
        """(alpha, .) against the simple roots: row of B = D A."""
        r = self.rank
        return tuple(
            sum(self.symmetrizer[i] * self.cartan[i][j] * c[i] for i in range(r))
            for j in range(r)
        )

    def _norm_c(self, c) -> Fraction:
        row = self._inner_c(c)
        return sum(row[j] * c[j] for j in range(self.rank))

    def copair(self, root: Root, x: Vec) -> Fraction:
        """<alpha^vee, x> for a weight-basis vector x."""
        return sum(q * xi for q, xi in zip(root.copairing, x))

    def reflect(self, root: Root, x: Vec) -> Vec:
        return _vsub(x, _vscale(self.copair(root, x), tuple(map(Fraction, root.weight))))

    def _reflect_matrix(self, i: int, m) -> tuple:
        root = self.roots[self._simple_idx[i]]
        cols = list(zip(*m))
        new_cols = [self.reflect(root, tuple(map(Fraction, col))) for col in cols]
        return tuple(tuple(row) for row in zip(*new_cols))

    def _root_perm(self, m) -> tuple:
        out = []
        for rt in self.roots:
            img = self.apply_matrix(m, tuple(map(Fraction, rt.weight)))
            out.append(self._root_index[self.simple_coords(img)])
        return tuple(out)

    def apply_matrix(self, m, x: Vec) -> Vec:
        r = self.rank
        return tuple(sum(m[i][j] * x[j] for j in range(r)) for i in range(r))

    def simple_coords(self, y: Vec) -> tuple:
        """Exact simple-root coordinates of a weight-basis vector."""
        r = self.rank
        c = tuple(
            sum(self._ainv[i][j] * Fraction(y[j]) for j in range(r)) for i in range(r)
        )
        if all(x.denominator == 1 for x in c):
            return tuple(int(x) for x in c)
        return c

    # -- derived data --------------------------------------------------------

    @property
    def rho(self) -> Vec:
        return tuple(Fraction(1) for _ in range(self.rank))

    def simple_systems(self) -> list["SimpleSystem"]:
        out = []
        inverse_matrix = {}
        for perm, m in self.elements.items():
            inv = [0] * len(perm)
            for a, b in enumerate(perm):
                inv[b] = a
            inverse_matrix[perm] = self.elements[tuple(inv)]
        for perm, m in self.elements.items():
            inv = [0] * len(perm)
            for a, b in enumerate(perm):
                inv[b] = a
            out.append(
                SimpleSystem(
                    self,
                    tuple(perm[i] for i in self._simple_idx),
                    m,
                    tuple(inv),
                    inverse_matrix[perm],
                )
            )
        out.sort(key=lambda s: s.root_indices)
        return out


def _invert(a):
    r = len(a)
    m = [[Fraction(a[i][j]) for j in range(r)] + [Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    for col in range(r):
        piv = next(row for row in range(col, r) if m[row][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for row in range(r):
            if row != col and m[row][col] != 0:
                f = m[row][col]
                m[row] = [x - f * y for x, y in zip(m[row], m[col])]
    return tuple(tuple(m[i][r + j] for j in range(r)) for i in range(r))


def build_root_system(cartan_or_name) -> RootSystem:
    """Construct the root system from a Cartan matrix or a named type.

    >>> len(build_root_system("A2").roots)
    6
    >>> len(build_root_system("G2").roots)
    12
    """
    if isinstance(cartan_or_name, str):
        try:
            cartan = NAMED_CARTAN[cartan_or_name]
        except KeyError:
            raise ValueError(f"unknown type {cartan_or_name!r}") from None
    else:
        cartan = cartan_or_name
    return RootSystem(cartan)


@dataclass(frozen=True)
class SimpleSystem:
    """A simple system: the Weyl image of the base, carried by its element."""

    system: RootSystem
    root_indices: Tuple[int, ...]  # images of the base simple roots
    matrix: tuple
    inv_perm: Tuple[int, ...]  # inverse of the induced root permutation
    matrix_inv: tuple

    def roots(self) -> list[Root]:
        return [self.system.roots[i] for i in self.root_indices]

    def coords_of_vector(self, v: Vec) -> tuple:
        """Rational coordinates of a weight-space vector in this system's
        simple roots."""
        back = self.system.apply_matrix(self.matrix_inv, tuple(map(Fraction, v)))
        return tuple(map(Fraction, self.system.simple_coords(back)))

    def fundamental_weights(self) -> list[Vec]:
        return [tuple(map(Fraction, col)) for col in zip(*self.matrix)]

    def rho(self) -> Vec:
        return self.system.apply_matrix(self.matrix, self.system.rho)

    def coords_in(self, root: Root) -> tuple:
        """Integer coordinates of a root in this simple system."""
        idx = self.system._root_index[root.simple]
        return self.system.roots[self.inv_perm[idx]].simple

    def __str__(self):
        return f"Pi{self.root_indices}"


@dataclass(frozen=True)
class FaceDatum:
    """A face of the permutahedron presented as (Pi, Delta subset of Pi);
    delta is a set of positions into the simple system."""

    simple_system: SimpleSystem
    delta: FrozenSet[int]

    def __post_init__(self):
        if not all(0 <= i < self.simple_system.system.rank for i in self.delta):
            raise ValueError("delta positions out of range")


def _parabolic_positive_sum(ss: SimpleSystem, keep_positions) -> Vec:
    """Half the sum of the roots that are nonnegative combinations of the
    kept simple roots of the system."""
    sys_ = ss.system
    keep = set(keep_positions)
    total = tuple(Fraction(0) for _ in range(sys_.rank))
    for root in sys_.roots:
        c = ss.coords_in(root)
        if all(x >= 0 for x in c) and all(c[i] == 0 or i in keep for i in range(sys_.rank)):
            total = _vadd(total, tuple(map(Fraction, root.weight)))
    return _vscale(Fraction(1, 2), total)


def face_center(fd: FaceDatum) -> Vec:
    """The centre of the face: rho_Pi minus the parabolic half-sum."""
    ss = fd.simple_system
    keep = [i for i in range(ss.system.rank) if i not in fd.delta]
    return _vsub(ss.rho(), _parabolic_positive_sum(ss, keep))


def face_vertices(fd: FaceDatum) -> FrozenSet[Vec]:
    """The vertex set of the face: the orbit of rho_Pi under the parabolic
    subgroup generated by the reflections in Pi minus Delta."""
    ss = fd.simple_system
    sys_ = ss.system
    gens = [sys_.roots[ss.root_indices[i]] for i in range(sys_.rank) if i not in fd.delta]
    start = ss.rho()
    orbit = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = sys_.reflect(g, x)
                if y not in orbit:
                    orbit.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(orbit)


def verify_face_center(fd: FaceDatum) -> bool:
    """The vertex average of the face equals the centre formula, exactly."""
    verts = face_vertices(fd)
    total = tuple(Fraction(0) for _ in range(fd.simple_system.system.rank))
    for v in verts:
        total = _vadd(total, v)
    avg = _vscale(Fraction(1, len(verts)), total)
    return avg == face_center(fd)


# ---------------------------------------------------------------------------
# the star-to-permutahedron map


def xi(fd: FaceDatum, t: Dict[int, Fraction]) -> Vec:
    """The face-respecting map into the permutahedron.

    t assigns [0,1] values to the positions outside delta; delta positions
    are pinned at one.  Vertices go to face centres by design.
    """
    ss = fd.simple_system
    r = ss.system.rank
    tv = {}
    for i in range(r):
        if i in fd.delta:
            tv[i] = Fraction(1)
        else:
            tv[i] = Fraction(t[i])
            if not 0 <= tv[i] <= 1:
                raise ValueError("coordinates lie in [0, 1]")
    rho_pi = ss.rho()
    out = tuple(Fraction(0) for _ in range(r))
    for dsize in range(r + 1):
        for d in itertools.combinations(range(r), dsize):
            dset = set(d)
            if not fd.delta <= dset:
                continue
            coeff = Fraction(1)
            for i in range(r):
                coeff *= tv[i] if i in dset else (1 - tv[i])
            if coeff == 0:
                continue
            keep = [i for i in range(r) if i not in dset]
            centre = _vsub(rho_pi, _parabolic_positive_sum(ss, keep))
            out = _vadd(out, _vscale(coeff, centre))
    return out


def star_point_coords(ss: SimpleSystem, t: Dict[int, Fraction]) -> Vec:
    """The point sum_i t_i * omega_i^Pi of the parallelepiped."""
    fw = ss.fundamental_weights()
    out = tuple(Fraction(0) for _ in range(ss.system.rank))
    for i, w in enumerate(fw):
        out = _vadd(out, _vscale(Fraction(t[i]), w))
    return out


def theta_root(
    ss: SimpleSystem, t: Dict[int, Fraction], f: RationalDiffeo = DEFAULT_F
) -> Dict[Tuple[int, ...], object]:
    """The coordinates of the real locus point attached to a parallelepiped
    point: z_alpha is the pairing-weighted sum of reparameterized
    coordinates, with value infinity when a coordinate at one participates.

    Keyed by the root's base simple coordinates.
    """
    sys_ = ss.system
    fv = {i: f(Fraction(t[i])) for i in range(sys_.rank)}
    out = {}
    for root in sys_.roots:
        c = ss.coords_in(root)
        total = Fraction(0)
        infinite = 0
        for i, ci in enumerate(c):
            if ci == 0:
                continue
            v = fv[i]
            if v == INF:
                infinite = 1 if ci > 0 else -1
            elif v == NEG_INF:
                infinite = -1 if ci > 0 else 1
            else:
                total += ci * v
        if infinite > 0:
            out[root.simple] = INF
        elif infinite < 0:
            out[root.simple] = NEG_INF
        else:
            out[root.simple] = total
    return out


# ---------------------------------------------------------------------------
# membership


def permutahedron_membership(sys_: RootSystem, x: Vec) -> bool:
    """Dominance criterion: bring x into the closed fundamental chamber and
    test that rho - x is a nonnegative rational combination of the simple
    roots."""
    y = tuple(Fraction(v) for v in x)
    guard = 0
    while any(v < 0 for v in y):
        i = next(k for k, v in enumerate(y) if v < 0)
        y = sys_.reflect(sys_.roots[sys_._simple_idx[i]], y)
        guard += 1
        if guard > 10 * sys_.order:
            raise RuntimeError("dominance loop failed to terminate")
    diff = _vsub(sys_.rho, y)
    c = sys_.simple_coords(diff)
    return all(Fraction(v) >= 0 for v in c)


def star_membership(sys_: RootSystem, x: Vec):
    """The first simple system (in canonical order) whose parallelepiped
    contains x, with the [0,1] coordinates; None if x is outside the star.

    The enumeration order fixes the representative deterministically (the
    lexicographically least admissible system)."""
    y = tuple(Fraction(v) for v in x)
    for ss in sys_.simple_systems():
        t = [sys_.copair(sys_.roots[ss.root_indices[i]], y) for i in range(sys_.rank)]
        if all(0 <= v <= 1 for v in t):
            return ss, {i: t[i] for i in range(sys_.rank)}
    return None


# ---------------------------------------------------------------------------
# parallel faces


def parallel_face_related(v1: Vec, fd1: FaceDatum, v2: Vec, fd2: FaceDatum) -> bool:
    """Whether the two faces are parallel translates and the translation
    carrying the first onto the second carries the first point to the
    second."""
    verts1, verts2 = face_vertices(fd1), face_vertices(fd2)
    shift = _vsub(face_center(fd2), face_center(fd1))
    if {tuple(_vadd(v, shift)) for v in verts1} != set(verts2):
        return False
    return tuple(_vadd(tuple(map(Fraction, v1)), shift)) == tuple(map(Fraction, v2))


def star_faces_related(
    fd1: FaceDatum, t1: Dict[int, Fraction], fd2: FaceDatum, t2: Dict[int, Fraction]
) -> bool:
    """The equivalence on the star: both faces span the same set of retained
    simple roots and the retained coordinates agree."""
    ss1, ss2 = fd1.simple_system, fd2.simple_system
    keep1 = {ss1.root_indices[i] for i in range(ss1.system.rank) if i not in fd1.delta}
    keep2 = {ss2.root_indices[i] for i in range(ss2.system.rank) if i not in fd2.delta}
    if keep1 != keep2:
        return False
    pair1 = {ss1.root_indices[i]: Fraction(t1[i]) for i in range(ss1.system.rank) if i not in fd1.delta}
    pair2 = {ss2.root_indices[i]: Fraction(t2[i]) for i in range(ss2.system.rank) if i not in fd2.delta}
    return pair1 == pair2


# ---------------------------------------------------------------------------
# the two point relations (quantified over all face presentations)


def star_presentations(sys_: RootSystem, x: Vec):
    """All presentations of x as a parallelepiped point: per containing
    simple system, the map root-index -> coordinate and the set of roots
    whose coordinate is strictly below one (which any retained set must
    contain)."""
    out = []
    y = tuple(Fraction(v) for v in x)
    for ss in sys_.simple_systems():
        t = tuple(
            sys_.copair(sys_.roots[ss.root_indices[i]], y) for i in range(sys_.rank)
        )
        if all(0 <= v <= 1 for v in t):
            pairing = {ss.root_indices[i]: t[i] for i in range(sys_.rank)}
            need = frozenset(
                ss.root_indices[i] for i in range(sys_.rank) if t[i] != 1
            )
            out.append((pairing, need))
    return out


def star_points_related(sys_: RootSystem, x: Vec, y: Vec, pres_x=None, pres_y=None) -> bool:
    """Whether two star points are identified: some pair of face
    presentations retains the same simple roots with equal coordinates."""
    pres_x = pres_x if pres_x is not None else star_presentations(sys_, x)
    pres_y = pres_y if pres_y is not None else star_presentations(sys_, y)
    for pair1, need1 in pres_x:
        for pair2, need2 in pres_y:
            keep = need1 | need2
            ok = True
            for k in keep:
                v1, v2 = pair1.get(k), pair2.get(k)
                if v1 is None or v1 != v2:
                    ok = False
                    break
            if ok:
                return True
    return False


def permutahedron_faces_containing(sys_: RootSystem, y: Vec):
    """All face data (Pi, Delta) whose face contains the permutahedron
    point."""
    out = []
    yy = tuple(Fraction(v) for v in y)
    for ss in sys_.simple_systems():
        diff = _vsub(yy, ss.rho())
        coords = ss.coords_of_vector(diff)
        zero_positions = [i for i in range(sys_.rank) if coords[i] == 0]
        for size in range(len(zero_positions) + 1):
            for delta in itertools.combinations(zero_positions, size):
                out.append(FaceDatum(ss, frozenset(delta)))
    return out


def permutahedron_points_related(
    sys_: RootSystem, y1: Vec, y2: Vec, faces1=None, faces2=None, _vertex_cache=None
) -> bool:
    """Whether the parallel-face identification relates the two points."""
    faces1 = faces1 if faces1 is not None else permutahedron_faces_containing(sys_, y1)
    faces2 = faces2 if faces2 is not None else permutahedron_faces_containing(sys_, y2)
    cache = _vertex_cache if _vertex_cache is not None else {}

    def verts(fd):
        if fd not in cache:
            cache[fd] = (face_vertices(fd), face_center(fd))
        return cache[fd]

    y1 = tuple(Fraction(v) for v in y1)
    y2 = tuple(Fraction(v) for v in y2)
    for fd1 in faces1:
        v1, c1 = verts(fd1)
        for fd2 in faces2:
            v2, c2 = verts(fd2)
            if len(v1) != len(v2):
                continue
            shift = _vsub(c2, c1)
            if tuple(_vadd(y1, shift)) != y2:
                continue
            if {tuple(_vadd(v, shift)) for v in v1} == set(v2):
                return True
    return False
