"""The star, the cube-to-star map, tree charts on the real cactus-flower
space, and the inverse tree-of-configuration algorithm.

Everything here is exact rational arithmetic except affine_cactus_path,
which evaluates an analytic path (it needs cot(pi/n)) in floating point.

The interval-to-line reparameterization f defaults to t / (1 - t^2): odd,
strictly increasing on (-1, 1), with f(0) = 0 and f(+-1) = +-infinity, and
rational at rationals.  Any替代 with those properties can be plugged in.

Sign convention: on the fundamental domain the positions decrease along the
order (consecutive differences x_i - x_{i+1} lie in [0, 1]), and the default
"descending" convention sums f over these nonnegative differences, which
makes the square gamma-then-star-map = flower-map-then-theta commute
exactly.  The alternative "ascending" convention (sum of f over
x_{k+1} - x_k, nonpositive on the domain) is exposed as a flag.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Optional, Tuple

from .combinatorics import Permutation, SetPartition
from .forests import (
    PlanarForest,
    PlanarForestWithZeros,
    binary_refinement,
    collapse,
    internal_nodes,
    is_binary,
    leafset,
    leaves,
    meet as forest_meet,
    path_edges,
    z_from_plain,
)
from .projective import (
    MuTuple,
    NuTuple,
    PP_INF,
    PP_ZERO,
    ProjPoint,
    ordered_pairs,
    ordered_triples,
)
from .scalars import sqrt_fraction

INF = "inf"
NEG_INF = "-inf"


def ext_to_nu(delta) -> ProjPoint:
    """A delta value (rational or +-infinity) as the nu = 1/delta point."""
    if delta in (INF, NEG_INF):
        return PP_ZERO
    if delta == 0:
        return PP_INF
    return ProjPoint(1, delta)


# ---------------------------------------------------------------------------
# the reparameterization


@dataclass(frozen=True)
class RationalDiffeo:
    """An odd increasing bijection [-1,1] -> [-inf, inf] with f(0) = 0,
    rational on rationals, with a partial exact inverse."""

    name: str
    func: Callable[[Fraction], Fraction]
    inv: Callable[[Fraction], Optional[Fraction]]

    def __call__(self, t: Fraction):
        t = Fraction(t)
        if not -1 <= t <= 1:
            raise ValueError(f"argument {t} outside [-1, 1]")
        if t == 1:
            return INF
        if t == -1:
            return NEG_INF
        return self.func(t)

    def inverse(self, y) -> Optional[Fraction]:
        if y == INF:
            return Fraction(1)
        if y == NEG_INF:
            return Fraction(-1)
        return self.inv(Fraction(y))


def _default_func(t: Fraction) -> Fraction:
    return t / (1 - t * t)


def _default_inv(y: Fraction) -> Optional[Fraction]:
    # t/(1-t^2) = y  <=>  y t^2 + t - y = 0; the branch inside (-1,1)
    if y == 0:
        return Fraction(0)
    disc = sqrt_fraction(1 + 4 * y * y)
    if disc is None:
        return None
    t = (disc - 1) / (2 * y)
    return t


DEFAULT_F = RationalDiffeo("t/(1-t^2)", _default_func, _default_inv)


# ---------------------------------------------------------------------------
# star points and cube points


@dataclass(frozen=True)
class StarPoint:
    """A parallelepiped point: a total order of [n] and the consecutive
    differences x_{w(k)} - x_{w(k+1)}, each in [0, 1]."""

    order: Tuple[int, ...]
    diffs: Tuple[Fraction, ...]

    def __init__(self, order, diffs):
        order = tuple(order)
        diffs = tuple(Fraction(d) for d in diffs)
        if sorted(order) != list(range(1, len(order) + 1)):
            raise ValueError("order must be a permutation of [n]")
        if len(diffs) != len(order) - 1:
            raise ValueError("need one difference per consecutive pair")
        if any(not 0 <= d <= 1 for d in diffs):
            raise ValueError("differences must lie in [0, 1]")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "diffs", diffs)

    @property
    def n(self) -> int:
        return len(self.order)

    def is_interior(self) -> bool:
        return all(d < 1 for d in self.diffs)

    def relabel(self, w: Permutation) -> "StarPoint":
        return StarPoint(tuple(w(x) for x in self.order), self.diffs)

    @staticmethod
    def star_point(n: int) -> "StarPoint":
        return StarPoint(tuple(range(1, n + 1)), (Fraction(1),) * (n - 1))


@dataclass(frozen=True)
class CubePoint:
    """A point of a cube: a planar forest and a [0,1] value per internal
    edge (edges are addressed by the leaf set above them)."""

    forest: PlanarForest
    t: Tuple[Tuple[FrozenSet[int], Fraction], ...]

    def __init__(self, forest: PlanarForest, t: Dict[FrozenSet[int], Fraction]):
        t = {frozenset(e): Fraction(v) for e, v in t.items()}
        edges = set(forest.edges())
        if set(t) != edges:
            raise ValueError("t must assign a value to every internal edge")
        if any(not 0 <= v <= 1 for v in t.values()):
            raise ValueError("edge values must lie in [0, 1]")
        object.__setattr__(self, "forest", forest)
        object.__setattr__(self, "t", tuple(sorted(t.items(), key=lambda kv: (min(kv[0]), len(kv[0])))))

    def t_dict(self) -> Dict[FrozenSet[int], Fraction]:
        return dict(self.t)

    def to_json(self) -> str:
        from .forests import forest_to_newick

        return json.dumps(
            {
                "forest": forest_to_newick(self.forest),
                "t": {",".join(map(str, sorted(e))): str(v) for e, v in self.t},
            }
        )

    @staticmethod
    def from_json(text: str) -> "CubePoint":
        from .forests import forest_from_newick

        d = json.loads(text)
        forest = forest_from_newick(d["forest"])
        t = {
            frozenset(map(int, key.split(","))): Fraction(v)
            for key, v in d["t"].items()
        }
        return CubePoint(forest, t)


def gamma(p: CubePoint) -> StarPoint:
    """The cube-to-star map: consecutive differences are products of the
    edge values along the path from the meet to the root, and 1 across
    trees."""
    order = p.forest.leaf_order()
    t = p.t_dict()
    diffs = []
    for a, b in zip(order, order[1:]):
        if p.forest.tree_of(a) != p.forest.tree_of(b):
            diffs.append(Fraction(1))
        else:
            v = forest_meet(p.forest, a, b)
            prod = Fraction(1)
            for e in path_edges(p.forest, v):
                prod *= t[e]
            diffs.append(prod)
    return StarPoint(order, tuple(diffs))


# ---------------------------------------------------------------------------
# the star equivalence


def star_equivalence_class(x: StarPoint):
    """The set partition into maximal consecutive blocks with difference
    below 1, together with the reduced per-block points.

    A block's point is its position function normalised to put the minimal
    label at zero; this is what two equivalent boundary representatives must
    share (orders may differ where positions coincide)."""
    blocks = [[x.order[0]]]
    block_diffs = [[]]
    for d, lab in zip(x.diffs, x.order[1:]):
        if d < 1:
            blocks[-1].append(lab)
            block_diffs[-1].append(d)
        else:
            blocks.append([lab])
            block_diffs.append([])
    part = SetPartition(blocks)
    reduced = {}
    for b, ds in zip(blocks, block_diffs):
        run = Fraction(0)
        pos = {b[0]: Fraction(0)}
        for lab, d in zip(b[1:], ds):
            run -= d  # positions decrease along the order
            pos[lab] = run
        base = pos[min(b)]
        reduced[frozenset(b)] = tuple(sorted((lab, p - base) for lab, p in pos.items()))
    return part, reduced


def star_related(x: StarPoint, y: StarPoint) -> bool:
    px, rx = star_equivalence_class(x)
    py, ry = star_equivalence_class(y)
    return px == py and rx == ry


def theta_star(
    x: StarPoint, f: RationalDiffeo = DEFAULT_F, convention: str = "descending"
) -> NuTuple:
    """The star-to-flower map: distances are sums of reparameterized
    consecutive differences, extended off the fundamental domain by
    equivariance.  Returns the point in nu coordinates (nu = 1/delta)."""
    if convention not in ("descending", "ascending"):
        raise ValueError("convention is 'descending' or 'ascending'")
    n = x.n
    fd = [f(d) for d in x.diffs]
    if convention == "ascending":
        fd = [NEG_INF if v == INF else (INF if v == NEG_INF else -v) for v in fd]
    nu = {}
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            terms = fd[a - 1 : b - 1]
            if any(v in (INF, NEG_INF) for v in terms):
                delta = INF  # all terms share a sign per convention
            else:
                delta = sum(terms)
            nu[(x.order[a - 1], x.order[b - 1])] = ext_to_nu(delta)
    return NuTuple(n, nu, None)


# ---------------------------------------------------------------------------
# tree charts


def _consecutive_pair_at(tree, vertex: FrozenSet[int]) -> tuple[int, int]:
    """The unique consecutive leaf pair (in planar order) whose meet is the
    given vertex, for a binary tree."""
    f = PlanarForest([tree])
    order = leaves(tree)
    for a, b in zip(order, order[1:]):
        if forest_meet(f, a, b) == vertex:
            return a, b
    raise LookupError(vertex)


def b_map(tree, t: Dict[FrozenSet[int], Fraction], f: RationalDiffeo = DEFAULT_F):
    """The chart reparameterization: on a binary tree with trunk value
    below 1, b_trunk = f(t_trunk) and otherwise

        b_e = f(t_e * P) / f(P),  P the product over the edges below e,

    falling back to b_e = t_e when some edge below carries 0."""
    if not is_binary(tree):
        raise ValueError("charts are indexed by binary trees")
    edges = [ls for ls, _ in internal_nodes(tree)]
    trunk = leafset(tree)
    if t[trunk] == 1:
        raise ValueError("the chart needs trunk value < 1")
    forest = PlanarForest([tree])
    b = {}
    for e in edges:
        below = [x for x in path_edges(forest, e) if x != e]
        if e == trunk:
            b[e] = f(t[e])
            continue
        prod = Fraction(1)
        for x in below:
            prod *= t[x]
        if prod == 0:
            b[e] = t[e]
        else:
            b[e] = f(t[e] * prod) / f(prod)
    return b


class _Chart:
    """Precomputed evaluation data for one binary tree and one b-vector.

    The consecutive planar gaps z_r - z_{r+1} are monomials in the b values
    (the root path of the consecutive pair's meet); any pair difference is a
    contiguous sum of them, and any triple ratio is a pair of such sums
    divided by the common monomial of the spanning interval (which keeps the
    denominator's constant term alive when b values vanish)."""

    def __init__(self, tree, b: Dict[FrozenSet[int], Fraction]):
        forest = PlanarForest([tree])
        self.order = leaves(tree)
        self.pos = {lab: r for r, lab in enumerate(self.order)}
        zero_edges = {e for e, v in b.items() if v == 0}
        # per-vertex path data: product of nonzero b's and set of zero edges
        self.path_nonzero: Dict[FrozenSet[int], Fraction] = {}
        self.path_zeros: Dict[FrozenSet[int], FrozenSet] = {}
        for ls, _ in internal_nodes(tree):
            path = path_edges(forest, ls)
            prod = Fraction(1)
            zs = set()
            for e in path:
                if e in zero_edges:
                    zs.add(e)
                else:
                    prod *= b[e]
            self.path_nonzero[ls] = prod
            self.path_zeros[ls] = frozenset(zs)
        # consecutive meets and their absolute gap values
        self.gap_vertex = []
        self.gap_value = []
        for r in range(len(self.order) - 1):
            v = forest_meet(forest, self.order[r], self.order[r + 1])
            self.gap_vertex.append(v)
            self.gap_value.append(
                Fraction(0) if self.path_zeros[v] else self.path_nonzero[v]
            )
        self.prefix = [Fraction(0)]
        for g in self.gap_value:
            self.prefix.append(self.prefix[-1] + g)
        self._span_meet: Dict[tuple, FrozenSet[int]] = {}

    def delta(self, a: int, c: int) -> Fraction:
        pa, pc = self.pos[a], self.pos[c]
        if pa <= pc:
            return self.prefix[pc] - self.prefix[pa]
        return -(self.prefix[pa] - self.prefix[pc])

    def _meet_of_span(self, lo: int, hi: int) -> FrozenSet[int]:
        key = (lo, hi)
        v = self._span_meet.get(key)
        if v is None:
            # the shallowest vertex among the consecutive meets in the span
            v = min(self.gap_vertex[lo:hi], key=lambda ls: -len(ls))
            self._span_meet[key] = v
        return v

    def _slice_sum_rel(self, lo: int, hi: int, common: FrozenSet[int]):
        czeros = self.path_zeros[common]
        cprod = self.path_nonzero[common]
        total = Fraction(0)
        for r in range(lo, hi):
            v = self.gap_vertex[r]
            if self.path_zeros[v] - czeros:
                continue  # a zero edge survives the cancellation
            total += self.path_nonzero[v] / cprod
        return total

    def mu(self, i: int, j: int, k: int) -> ProjPoint:
        pi, pj, pk = self.pos[i], self.pos[j], self.pos[k]
        lo, hi = min(pi, pj, pk), max(pi, pj, pk)
        common = self._meet_of_span(lo, hi)
        nlo, nhi = min(pi, pk), max(pi, pk)
        dlo, dhi = min(pi, pj), max(pi, pj)
        s1 = 1 if pi <= pk else -1
        s2 = 1 if pi <= pj else -1
        nv = self._slice_sum_rel(nlo, nhi, common)
        dv = self._slice_sum_rel(dlo, dhi, common)
        if nv == 0 and dv == 0:
            raise ValueError("degenerate ratio outside the chart domain")
        return ProjPoint(s1 * nv, s2 * dv)


def chart_H(tree, b: Dict[FrozenSet[int], Fraction]):
    """Evaluate the chart: per-pair distances (exact rationals) and the full
    tuple of triple ratios as projective points.

    Ratios whose denominators vanish come out at infinity via cancellation of
    the common positive monomial; a (0:0) ratio cannot arise on the chart
    domain because the factored denominator has constant term one.
    """
    chart = _Chart(tree, b)
    labels = sorted(leafset(tree))
    delta = {}
    for a in labels:
        for c in labels:
            if a != c:
                delta[(a, c)] = chart.delta(a, c)
    mu = {t: chart.mu(*t) for t in ordered_triples(labels)}
    return delta, MuTuple(labels, mu)


def chart_b(tree, zdiffs: Dict[tuple, Fraction]):
    """Inverse direction of the chart coordinates: from the consecutive
    planar differences read off the b ratios,

        b_e = (z_i - z_j)/(z_k - z_l)

    with (i,j) meeting at the upper vertex of e and (k,l) at the lower (the
    trunk takes the bare difference)."""
    if not is_binary(tree):
        raise ValueError("charts are indexed by binary trees")
    forest = PlanarForest([tree])
    trunk = leafset(tree)
    b = {}
    for e, _ in internal_nodes(tree):
        i, j = _consecutive_pair_at(tree, e)
        num = zdiffs[(i, j)]
        if e == trunk:
            b[e] = num
            continue
        below = [x for x in path_edges(forest, e) if x != e]
        lower = min(below, key=len)
        k, l = _consecutive_pair_at(tree, lower)
        b[e] = num / zdiffs[(k, l)]
    return b


# ---------------------------------------------------------------------------
# the full chart map


@dataclass(frozen=True)
class ThetaImage:
    """A real cactus-flower point in chart coordinates: the tree partition,
    the nu tuple (cross-part distances are infinite, i.e. nu = 0), and the
    per-part triple ratios."""

    s_part: SetPartition
    nu: NuTuple
    mus: Tuple[Tuple[FrozenSet[int], MuTuple], ...]

    def mu_dict(self) -> Dict[FrozenSet[int], MuTuple]:
        return dict(self.mus)

    def b_part(self) -> SetPartition:
        """The coincidence partition: i ~ j iff the distance vanishes."""
        n = self.nu.n
        parts = {i: {i} for i in range(1, n + 1)}
        d = self.nu.as_dict()
        for (i, j) in ordered_pairs(range(1, n + 1)):
            if i < j and d[(i, j)].is_infinite() and parts[i] is not parts[j]:
                merged = parts[i] | parts[j]
                for x in merged:
                    parts[x] = merged
        return SetPartition({frozenset(b) for b in parts.values()})


def theta(p: CubePoint, f: RationalDiffeo = DEFAULT_F) -> ThetaImage:
    """The chart map on a cube point.

    Trunk values equal to one are removed first by the collapse
    identification (splitting trees); each remaining tree is refined to a
    binary tree with value one on the added edges, reparameterized by
    b_map, and evaluated through its chart.
    """
    forest, t = p.forest, p.t_dict()
    # collapse trunks at value 1
    changed = True
    while changed:
        changed = False
        for tree in forest.trees:
            if isinstance(tree, int):
                continue
            trunk = leafset(tree)
            if t.get(trunk) == 1:
                forest = collapse(forest, trunk)
                del t[trunk]
                changed = True
                break
    parts = []
    nu: Dict[tuple, ProjPoint] = {}
    mus = {}
    n = p.forest.n
    for tree in forest.trees:
        part = leafset(tree) if not isinstance(tree, int) else frozenset([tree])
        parts.append(part)
        if isinstance(tree, int):
            continue
        btree, added = binary_refinement(tree)
        tt = {e: t[e] for e in PlanarForest([tree]).edges()}
        for e in added:
            tt[e] = Fraction(1)
        b = b_map(btree, tt, f)
        delta, mu = chart_H(btree, b)
        for (a, c), val in delta.items():
            nu[(a, c)] = ext_to_nu(val)
        mus[part] = mu
    s_part = SetPartition(parts)
    for (a, c) in ordered_pairs(range(1, n + 1)):
        if (a, c) not in nu:
            nu[(a, c)] = PP_ZERO  # infinite distance across trees
    return ThetaImage(
        s_part,
        NuTuple(n, nu, None),
        tuple(sorted(mus.items(), key=lambda kv: min(kv[0]))),
    )


def theta_images_equal(a: ThetaImage, b: ThetaImage) -> bool:
    return (
        a.s_part == b.s_part
        and a.nu.nu == b.nu.nu
        and {k: v.mu for k, v in a.mu_dict().items()}
        == {k: v.mu for k, v in b.mu_dict().items()}
    )


# ---------------------------------------------------------------------------
# the inverse algorithm


def tree_of_configuration(zs: Dict[int, Fraction]) -> PlanarForest:
    """The unique planar tree whose open chart contains the configuration.

    The input is a labelled configuration of distinct rationals; the planar
    order of the output is by decreasing position (matching the charts).
    The recursion groups maximal runs of neighbouring points at the minimal
    gap, collapses each group to a point, and repeats.
    """
    items = sorted(zs.items(), key=lambda kv: kv[1], reverse=True)
    if len(items) != len({v for _, v in zs.items()}):
        raise ValueError("positions must be distinct")
    seq = [(Fraction(v), lab) for lab, v in items]
    while len(seq) > 1:
        gaps = [seq[r][0] - seq[r + 1][0] for r in range(len(seq) - 1)]
        ell = min(gaps)
        groups = []
        cur = [seq[0]]
        for r, g in enumerate(gaps):
            if g == ell:
                cur.append(seq[r + 1])
            else:
                groups.append(cur)
                cur = [seq[r + 1]]
        groups.append(cur)
        new_seq = []
        pos = seq[0][0]
        prev_tail = None
        for grp in groups:
            if prev_tail is not None:
                pos = pos - (prev_tail - grp[0][0])
            if len(grp) == 1:
                new_seq.append((pos, grp[0][1]))
            else:
                new_seq.append((pos, tuple(x[1] for x in grp)))
            prev_tail = grp[-1][0]
        seq = new_seq
    return PlanarForest([seq[0][1]])


def tree_of_projective_configuration(zs: Dict[int, Fraction]) -> PlanarForestWithZeros:
    """The same tree considered up to overall reversal, recorded by
    decorating the trunk with a zero."""
    forest = tree_of_configuration(zs)
    tree = forest.trees[0]
    if isinstance(tree, int):
        raise ValueError("need at least two points")
    return PlanarForestWithZeros(
        [z_from_plain(tree, frozenset([leafset(tree)]))]
    )


# ---------------------------------------------------------------------------
# the analytic path (floating point by design)


@dataclass(frozen=True)
class PathPoint:
    """A sample of the twisting path: deformation parameter, the consecutive
    nu coordinates, and the triple ratios that stay meaningful at the wall."""

    epsilon: complex
    nu: Tuple[Tuple[Tuple[int, int], complex], ...]
    mu: Tuple[Tuple[Tuple[int, int, int], complex], ...]

    def nu_dict(self):
        return dict(self.nu)

    def mu_dict(self):
        return dict(self.mu)


def _float_f(x: float) -> float:
    if x >= 1:
        return math.inf
    return x / (1 - x * x)


def affine_cactus_path(n: int, k: int, t: float, s: float) -> PathPoint:
    """The path H(t, s) joining the k-interval reverser loop at s = 0 to its
    twisted-form representative at s = 1.

    For t in [0, 1/2): the point has consecutive coordinates

        nu_{j,j+1} = i s/2 + (s/2) cot(pi/n) - f(2t)        (j < k)
        nu_{j,j+1} = i s/2 + (s/2)((1-2t) cot(pi/n)
                                   + 2t cot(pi/(n-k+1)))    (j >= k)

    over epsilon = i s.  At t = 1/2 the first block hits infinity and the
    surviving chart carries mu_{j,j+1,j+2} = 2 exactly.  For t > 1/2 the
    path continues by the reflection H(t,s) = w_{1k}(H(1-t,s)).
    """
    if n < 3 or not 1 < k <= n:
        raise ValueError("need n >= 3 and 1 < k <= n")
    if not (0 <= t <= 1 and 0 <= s <= 1):
        raise ValueError("parameters lie in the unit square")
    if t > 0.5:
        base = affine_cactus_path(n, k, 1 - t, s)
        w = None
        from .combinatorics import interval_reversal

        w = interval_reversal(1, k, n)
        nu = {}
        for (i, j), v in base.nu_dict().items():
            nu[(w(i), w(j))] = v
        mu = {(w(a), w(b), w(c)): v for (a, b, c), v in base.mu_dict().items()}
        # renormalise onto consecutive pairs where possible
        return PathPoint(base.epsilon, tuple(sorted(nu.items())), tuple(sorted(mu.items())))

    eps = 1j * s
    cot_n = 1 / math.tan(math.pi / n)
    a = 1j * s / 2 + (s / 2) * cot_n - _float_f(2 * t)
    if k < n:
        cot_m = 1 / math.tan(math.pi / (n - k + 1))
        b = 1j * s / 2 + (s / 2) * ((1 - 2 * t) * cot_n + 2 * t * cot_m)
    else:
        b = None
    nu = {}
    for j in range(1, n):
        nu[(j, j + 1)] = a if j < k else b
    mu = {}
    if t == 0.5:
        for j in range(1, k - 1):
            mu[(j, j + 1, j + 2)] = 2.0
    else:
        # complete the remaining coordinates through the triangle relation;
        # a vanishing denominator only occurs on the all-zero block at the
        # s = 0 wall, where the completed coordinate vanishes too
        full = dict(nu)
        for span in range(2, n):
            for i in range(1, n - span + 1):
                j = i + span
                p, q = full[(i, j - 1)], full[(j - 1, j)]
                den = p + q - eps
                full[(i, j)] = (p * q / den) if den != 0 else 0j
        nu = full
        for j in range(1, n - 1):
            if nu[(j, j + 2)] != 0:
                mu[(j, j + 1, j + 2)] = nu[(j, j + 1)] / nu[(j, j + 2)]
    pairs = {}
    for (i, j), v in nu.items():
        pairs[(i, j)] = v
        pairs[(j, i)] = eps - v
    return PathPoint(eps, tuple(sorted(pairs.items())), tuple(sorted(mu.items())))


def path_sigma_residual(p: PathPoint) -> float:
    """max |conj(nu) - (nu - eps)| over the finite coordinates: zero exactly
    on the twisted real locus."""
    worst = 0.0
    for _, v in p.nu:
        if v is None or not cmath.isfinite(v):
            continue
        worst = max(worst, abs(v.conjugate() - (v - p.epsilon)))
    return worst
