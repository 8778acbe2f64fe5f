"""Exact projective-line coordinates and the defining equations of the
deformation families.

Every coordinate is a point of P^1 over Q or Q(i), stored as a homogeneous
pair.  Equations between P^1-valued coordinates are multihomogenized: each
relation is cleared to a polynomial of degree at most one in each
participating homogeneous pair (so "ab = c" means a1*b1*c2 = c1*a2*b2, which
is satisfied by a = 0, b = infinity, c arbitrary).  The deformation parameter
epsilon enters as an affine scalar.

Space families (VarietySpec tags):

  LosevManin            alpha on ordered pairs:  a_ij a_jk = a_ik, a_ij a_ji = 1
  Flower                nu on ordered pairs:     nu_ij + nu_ji = 0 and the
                        triangle nu_ij nu_jk = nu_ik nu_jk + nu_ij nu_ik
  DeformedFlower        the epsilon version of Flower
  DeligneMumford        mu on ordered triples of a label set:
                        m_ijk m_ikj = 1, m_ijk + m_jik = 1, m_ijk m_ilj = m_ilk
  MauWoodward           nu and mu jointly, with the link m_ijk nu_ik = nu_ij
  DeformedMauWoodward   the epsilon version of MauWoodward
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from .combinatorics import Permutation, SetPartition
from .forests import PlanarForest, meet as forest_meet
from .scalars import (
    ONE,
    ZERO,
    GaussianRational,
    Scalar,
    canon_scalar,
    conjugate,
    format_scalar,
    parse_scalar,
)


class InvariantViolation(RuntimeError):
    """A precondition certified impossible by the theory was hit anyway."""


# ---------------------------------------------------------------------------
# points of the projective line


@dataclass(frozen=True)
class ProjPoint:
    """A point (u : v) of P^1, canonically scaled.

    Finite values are stored as (x : 1), infinity as (1 : 0).
    """

    u: Scalar
    v: Scalar

    def __init__(self, u, v):
        u, v = canon_scalar(u), canon_scalar(v)
        if u == 0 and v == 0:
            raise ValueError("(0 : 0) is not a point of P^1")
        if v != 0:
            u, v = canon_scalar(u / v), ONE
        else:
            u, v = ONE, ZERO
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @staticmethod
    def finite(x) -> "ProjPoint":
        return ProjPoint(x, ONE)

    @staticmethod
    def infinity() -> "ProjPoint":
        return ProjPoint(ONE, ZERO)

    def is_infinite(self) -> bool:
        return self.v == 0

    def is_zero(self) -> bool:
        return self.u == 0

    def value(self) -> Scalar:
        if self.is_infinite():
            raise ZeroDivisionError("point at infinity has no affine value")
        return self.u

    def reciprocal(self) -> "ProjPoint":
        return ProjPoint(self.v, self.u)

    def conj(self) -> "ProjPoint":
        return ProjPoint(conjugate(self.u), conjugate(self.v))

    def __eq__(self, other):
        if isinstance(other, ProjPoint):
            return self.u == other.u and self.v == other.v
        if isinstance(other, (int, Fraction, GaussianRational)):
            return not self.is_infinite() and self.u == other
        return NotImplemented

    def __hash__(self):
        return hash((self.u, self.v))

    def __str__(self):
        if self.is_infinite():
            return "inf"
        return format_scalar(self.u)

    def __repr__(self):
        return f"ProjPoint({self.u!r}, {self.v!r})"


PP_ZERO = ProjPoint(ZERO, ONE)
PP_ONE = ProjPoint(ONE, ONE)
PP_INF = ProjPoint(ONE, ZERO)


def pp_sub_scalar(p: ProjPoint, c: Scalar) -> ProjPoint:
    """p - c on P^1 (infinity is fixed)."""
    return ProjPoint(p.u - c * p.v, p.v)


def pp_mul(p: ProjPoint, q: ProjPoint) -> ProjPoint:
    return ProjPoint(p.u * q.u, p.v * q.v)


def compose_nu(p: ProjPoint, q: ProjPoint, eps: Scalar) -> ProjPoint:
    """The unique z with eps*z + p*q' ... : solves the deformed triangle for
    nu_ik given nu_ij = p and nu_jk = q, i.e. z = p*q/(p + q - eps)."""
    u = p.u * q.u
    v = p.u * q.v + p.v * q.u - eps * p.v * q.v
    if u == 0 and v == 0:
        raise InvariantViolation("triangle completion degenerated to (0:0)")
    return ProjPoint(u, v)


# ---------------------------------------------------------------------------
# coordinate tuples


def ordered_pairs(labels: Iterable[int]):
    ls = sorted(labels)
    return [(i, j) for i in ls for j in ls if i != j]


def ordered_triples(labels: Iterable[int]):
    ls = sorted(labels)
    return [t for t in itertools.permutations(ls, 3)]


@dataclass(frozen=True)
class NuTuple:
    """A map p([n]) -> P^1, with optional deformation parameter.

    Constructors may pass values only for i < j; the (j, i) values are
    synthesized from the antisymmetry nu_ij + nu_ji = eps.
    """

    n: int
    nu: Tuple[Tuple[Tuple[int, int], ProjPoint], ...]
    epsilon: Optional[Scalar]

    def __init__(self, n: int, nu: Dict[Tuple[int, int], ProjPoint], epsilon=None):
        if epsilon is not None:
            epsilon = canon_scalar(epsilon)
        full = dict(nu)
        eps = epsilon if epsilon is not None else ZERO
        for (i, j), p in list(full.items()):
            if (j, i) not in full:
                full[(j, i)] = ProjPoint(eps * p.v - p.u, p.v)
        missing = [ij for ij in ordered_pairs(range(1, n + 1)) if ij not in full]
        if missing:
            raise ValueError(f"missing nu coordinates: {missing}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "nu", tuple(sorted(full.items())))
        object.__setattr__(self, "epsilon", epsilon)

    def as_dict(self) -> Dict[Tuple[int, int], ProjPoint]:
        return dict(self.nu)

    def __getitem__(self, ij) -> ProjPoint:
        return self.as_dict()[ij]

    def delta(self, i: int, j: int) -> ProjPoint:
        """delta_ij = 1/nu_ij, the coordinate swap."""
        return self[(i, j)].reciprocal()

    def relabel(self, w: Permutation) -> "NuTuple":
        wi = w.inverse()
        return NuTuple(
            self.n,
            {(i, j): self[(wi(i), wi(j))] for (i, j) in ordered_pairs(range(1, self.n + 1))},
            self.epsilon,
        )


AlphaTuple = NuTuple  # same shape; alpha obeys the multiplicative equations


@dataclass(frozen=True)
class MuTuple:
    """A map t(S) -> P^1 for a finite label set S."""

    labels: Tuple[int, ...]
    mu: Tuple[Tuple[Tuple[int, int, int], ProjPoint], ...]

    def __init__(self, labels: Iterable[int], mu: Dict[Tuple[int, int, int], ProjPoint]):
        ls = tuple(sorted(labels))
        missing = [t for t in ordered_triples(ls) if t not in mu]
        if missing:
            raise ValueError(f"missing mu coordinates: {missing[:4]}...")
        object.__setattr__(self, "labels", ls)
        object.__setattr__(self, "mu", tuple(sorted(mu.items())))

    def as_dict(self) -> Dict[Tuple[int, int, int], ProjPoint]:
        return dict(self.mu)

    def __getitem__(self, t) -> ProjPoint:
        return self.as_dict()[t]


@dataclass(frozen=True)
class QTuple:
    """A joint (nu, mu) tuple for the Mau-Woodward family."""

    n: int
    nu: NuTuple
    mu: MuTuple
    epsilon: Optional[Scalar]

    def __init__(self, n, nu: NuTuple, mu: MuTuple, epsilon=None):
        if epsilon is not None:
            epsilon = canon_scalar(epsilon)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "epsilon", epsilon)


@dataclass(frozen=True)
class VarietySpec:
    tag: str
    n: int
    labels: Tuple[int, ...] = ()

    TAGS = (
        "LosevManin",
        "Flower",
        "DeformedFlower",
        "DeligneMumford",
        "MauWoodward",
        "DeformedMauWoodward",
    )

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise ValueError(f"unknown variety tag {self.tag!r}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, self.n + 1)))


@dataclass
class MembershipReport:
    spec: VarietySpec
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, name: str, indices, residual):
        self.violations.append((name, tuple(indices), residual))

    def __str__(self):
        if self.ok:
            return f"member of {self.spec.tag}(n={self.spec.n})"
        lines = [f"NOT a member of {self.spec.tag}(n={self.spec.n}):"]
        for name, idx, res in sorted(self.violations)[:12]:
            lines.append(f"  {name}{idx} residual {format_scalar(res)}")
        return "\n".join(lines)


# equation evaluators: each returns a scalar residual, zero iff satisfied


def _eq_prod(a: ProjPoint, b: ProjPoint, c: ProjPoint) -> Scalar:
    """a*b = c  homogenized as a1 b1 c2 = c1 a2 b2."""
    return a.u * b.u * c.v - c.u * a.v * b.v


def _eq_prod_one(a: ProjPoint, b: ProjPoint) -> Scalar:
    return a.u * b.u - a.v * b.v


def _eq_sum_const(a: ProjPoint, b: ProjPoint, c: Scalar) -> Scalar:
    """a + b = c with c an affine scalar."""
    return a.u * b.v + b.u * a.v - c * a.v * b.v


def _eq_triangle(x: ProjPoint, y: ProjPoint, z: ProjPoint, eps: Scalar) -> Scalar:
    """eps*z + x*y = z*y + x*z for (x, y, z) = (nu_ij, nu_jk, nu_ik)."""
    return eps * z.u * x.v * y.v + x.u * y.u * z.v - z.u * y.u * x.v - x.u * z.u * y.v


def _eq_link(m: ProjPoint, x: ProjPoint, y: ProjPoint) -> Scalar:
    """m * x = y for (m, x, y) = (mu_ijk, nu_ik, nu_ij)."""
    return m.u * x.u * y.v - y.u * m.v * x.v


def _mu_equations(labels, mu: MuTuple, report: MembershipReport, quad_style: str):
    d = mu.as_dict()
    for i, j, k in itertools.combinations(labels, 3):
        for a, b, c in itertools.permutations((i, j, k)):
            r = _eq_prod_one(d[(a, b, c)], d[(a, c, b)])
            if r != 0:
                report.add("mu_reciprocal", (a, b, c), r)
            r = _eq_sum_const(d[(a, b, c)], d[(b, a, c)], ONE)
            if r != 0:
                report.add("mu_sum", (a, b, c), r)
    for quad in itertools.permutations(labels, 4):
        i, j, k, l = quad
        if quad_style == "dm":
            # mu_ijk * mu_ilj = mu_ilk
            r = _eq_prod(d[(i, j, k)], d[(i, l, j)], d[(i, l, k)])
        else:
            # mu_ijk * mu_ikl = mu_ijl
            r = _eq_prod(d[(i, j, k)], d[(i, k, l)], d[(i, j, l)])
        if r != 0:
            report.add("mu_quad", quad, r)


def _nu_equations(n, nu: NuTuple, eps: Scalar, report: MembershipReport):
    d = nu.as_dict()
    for i, j in itertools.combinations(range(1, n + 1), 2):
        r = _eq_sum_const(d[(i, j)], d[(j, i)], eps)
        if r != 0:
            report.add("nu_antisym", (i, j), r)
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        r = _eq_triangle(d[(i, j)], d[(j, k)], d[(i, k)], eps)
        if r != 0:
            report.add("nu_triangle", (i, j, k), r)


def check_membership(spec: VarietySpec, point) -> MembershipReport:
    """Evaluate every defining polynomial of the family at the point."""
    report = MembershipReport(spec)
    tag = spec.tag
    if tag == "LosevManin":
        d = point.as_dict()
        for i, j in itertools.combinations(spec.labels, 2):
            r = _eq_prod_one(d[(i, j)], d[(j, i)])
            if r != 0:
                report.add("alpha_reciprocal", (i, j), r)
        for i, j, k in itertools.permutations(spec.labels, 3):
            r = _eq_prod(d[(i, j)], d[(j, k)], d[(i, k)])
            if r != 0:
                report.add("alpha_transitive", (i, j, k), r)
        return report
    if tag in ("Flower", "DeformedFlower"):
        eps = point.epsilon if (tag == "DeformedFlower" and point.epsilon is not None) else ZERO
        _nu_equations(spec.n, point, eps, report)
        return report
    if tag == "DeligneMumford":
        _mu_equations(spec.labels, point, report, quad_style="dm")
        return report
    if tag in ("MauWoodward", "DeformedMauWoodward"):
        eps = point.epsilon if (tag == "DeformedMauWoodward" and point.epsilon is not None) else ZERO
        _nu_equations(spec.n, point.nu, eps, report)
        _mu_equations(spec.labels, point.mu, report, quad_style="mw")
        nud, mud = point.nu.as_dict(), point.mu.as_dict()
        for i, j, k in itertools.permutations(spec.labels, 3):
            r = _eq_link(mud[(i, j, k)], nud[(i, k)], nud[(i, j)])
            if r != 0:
                report.add("mu_nu_link", (i, j, k), r)
        return report
    raise ValueError(tag)


# ---------------------------------------------------------------------------
# strata


def classify_strata(point: NuTuple):
    """For a flower-space member, read off the two stratification partitions.

    S: i ~ j iff delta_ij != infinity (equivalently nu_ij != 0);
    B: i ~ j iff delta_ij = 0 (equivalently nu_ij = infinity).

    Returns (S, B, (dim_S, dim_B)) with dim_S = n - m and
    dim_B = n - 1 - r + p, the dimensions of the corresponding strata of the
    cactus-flower space (m, r = numbers of parts, p = singleton parts of B).
    B always refines S for members.
    """
    if point.epsilon not in (None, ZERO):
        raise ValueError("strata classification is for the epsilon = 0 fibre")
    rep = check_membership(VarietySpec("Flower", point.n), point)
    if not rep.ok:
        raise ValueError(f"not a flower-space member:\n{rep}")
    n = point.n
    d = point.as_dict()

    def closure(related) -> SetPartition:
        parts = {i: {i} for i in range(1, n + 1)}
        for i, j in itertools.combinations(range(1, n + 1), 2):
            if related(i, j) and parts[i] is not parts[j]:
                merged = parts[i] | parts[j]
                for x in merged:
                    parts[x] = merged
        blocks = {frozenset(b) for b in parts.values()}
        return SetPartition(blocks)

    s_part = closure(lambda i, j: not d[(i, j)].is_zero())
    b_part = closure(lambda i, j: d[(i, j)].is_infinite())
    # members give genuine equivalence relations; assert no mixed pairs
    for i, j in itertools.combinations(range(1, n + 1), 2):
        if s_part.same_block(i, j) != (not d[(i, j)].is_zero()):
            raise InvariantViolation(f"finiteness relation not transitive at {(i, j)}")
        if b_part.same_block(i, j) != d[(i, j)].is_infinite():
            raise InvariantViolation(f"vanishing relation not transitive at {(i, j)}")
    if not _refines(b_part, s_part):
        raise InvariantViolation("vanishing partition does not refine finiteness partition")
    m, r = len(s_part), len(b_part)
    p = sum(1 for b in b_part if len(b) == 1)
    return s_part, b_part, (n - m, n - 1 - r + p)


def _refines(b: SetPartition, s: SetPartition) -> bool:
    return all(blk <= s.block_of(min(blk)) for blk in b.blocks)


def open_cover_membership(s_part: SetPartition, point: NuTuple) -> bool:
    """Membership of the affine chart attached to a set partition: nu != inf
    across parts and nu not in {0, eps} within parts."""
    eps = point.epsilon if point.epsilon is not None else ZERO
    d = point.as_dict()
    for (i, j), p in d.items():
        if s_part.same_block(i, j):
            if p.is_zero() or p == eps:
                return False
        else:
            if p.is_infinite():
                return False
    return True


def natural_chart(point: NuTuple) -> SetPartition:
    """The set partition whose chart contains the point: i ~ j iff
    nu_ij is not 0 or eps."""
    eps = point.epsilon if point.epsilon is not None else ZERO
    n, d = point.n, point.as_dict()
    parts = {i: {i} for i in range(1, n + 1)}
    for i, j in itertools.combinations(range(1, n + 1), 2):
        p = d[(i, j)]
        if not (p.is_zero() or p == eps) and parts[i] is not parts[j]:
            merged = parts[i] | parts[j]
            for x in merged:
                parts[x] = merged
    return SetPartition({frozenset(b) for b in parts.values()})


def chart_membership(tau: PlanarForest, mus: Dict[frozenset, MuTuple]) -> list:
    """The tree-chart inequality check: classify each triple by comparing the
    meets of (i,k) and (i,j) in the tree, and demand

        above  -> mu_ijk not in {1, inf}
        equal  -> mu_ijk not in {0, inf}
        below  -> mu_ijk not in {0, 1}

    Returns the list of violations (empty means the point lies in the chart).
    """
    bad = []
    for part, mu in mus.items():
        for (i, j, k) in ordered_triples(part):
            v_ik = forest_meet(tau, i, k)
            v_ij = forest_meet(tau, i, j)
            m = mu[(i, j, k)]
            # vertices nearer the leaves carry smaller leaf sets
            if v_ik < v_ij:  # meet of i,k is above meet of i,j
                if m == PP_ONE or m.is_infinite():
                    bad.append(("above", (i, j, k), m))
            elif v_ik == v_ij:
                if m.is_zero() or m.is_infinite():
                    bad.append(("equal", (i, j, k), m))
            else:
                if m.is_zero() or m == PP_ONE:
                    bad.append(("below", (i, j, k), m))
    return bad


# ---------------------------------------------------------------------------
# the extension solver for chart products


def extend_nu(
    s_part: SetPartition,
    block_tuples: Dict[frozenset, NuTuple],
    core: NuTuple,
    eps: Scalar,
) -> NuTuple:
    """Complete a chart product to a full nu-tuple.

    block_tuples maps each part of the partition to a nu-tuple on that part's
    labels (relabelled 1..|part| in sorted order); core is a nu-tuple on the
    m part representatives (the minima, relabelled 1..m in sorted order).
    Every missing cross coordinate has exactly one consistent value, obtained
    by composing triangles through the representatives.
    """
    eps = canon_scalar(eps)
    parts = sorted(s_part.blocks, key=min)
    reps = [min(b) for b in parts]
    n = sum(len(b) for b in parts)
    nu: Dict[Tuple[int, int], ProjPoint] = {}

    for b in parts:
        labels = sorted(b)
        bt = block_tuples[frozenset(b)]
        for (x, y) in ordered_pairs(range(1, len(labels) + 1)):
            nu[(labels[x - 1], labels[y - 1])] = bt[(x, y)]
    for (x, y) in ordered_pairs(range(1, len(reps) + 1)):
        nu[(reps[x - 1], reps[y - 1])] = core[(x, y)]

    # first the representative-to-foreign-label coordinates ...
    for k, bk in enumerate(parts):
        for l, bl in enumerate(parts):
            if k == l:
                continue
            ik, il = reps[k], reps[l]
            for b in sorted(bl):
                if b == il:
                    continue
                nu[(ik, b)] = compose_nu(nu[(ik, il)], nu[(il, b)], eps)
                nu[(b, ik)] = ProjPoint(
                    eps * nu[(ik, b)].v - nu[(ik, b)].u, nu[(ik, b)].v
                )
    # ... then everything else through the representative of the first label
    for k, bk in enumerate(parts):
        for a in sorted(bk):
            if a == reps[k]:
                continue
            for l, bl in enumerate(parts):
                if l == k:
                    continue
                for b in sorted(bl):
                    if (a, b) in nu:
                        continue
                    nu[(a, b)] = compose_nu(nu[(a, reps[k])], nu[(reps[k], b)], eps)
                    nu[(b, a)] = ProjPoint(eps * nu[(a, b)].v - nu[(a, b)].u, nu[(a, b)].v)
    return NuTuple(n, nu, eps)


# ---------------------------------------------------------------------------
# isomorphisms, group scheme, cross ratios


def losev_manin_iso(point: NuTuple) -> AlphaTuple:
    """alpha_ij = 1 - eps*delta_ij = (nu_ij - eps)/nu_ij, for eps != 0."""
    eps = point.epsilon
    if eps is None or eps == 0:
        raise ValueError("the multiplicative chart needs epsilon != 0")
    alpha = {}
    for (i, j), p in point.as_dict().items():
        alpha[(i, j)] = ProjPoint(p.u - eps * p.v, p.u)
    return AlphaTuple(point.n, alpha, None)


def losev_manin_iso_inverse(alpha: AlphaTuple, eps: Scalar) -> NuTuple:
    eps = canon_scalar(eps)
    if eps == 0:
        raise ValueError("the multiplicative chart needs epsilon != 0")
    nu = {}
    for (i, j), a in alpha.as_dict().items():
        nu[(i, j)] = ProjPoint(a.v * eps, a.v - a.u)
    return NuTuple(alpha.n, nu, eps)


def g_mul(x1: Scalar, x2: Scalar, eps: Scalar) -> Scalar:
    """The deformed addition x1 + x2 - eps*x1*x2 (addition at eps = 0,
    conjugate to multiplication via x -> 1 - eps*x otherwise)."""
    for x in (x1, x2):
        if 1 - eps * x == 0:
            raise ValueError("1 - eps*x must not vanish")
    return canon_scalar(x1 + x2 - eps * x1 * x2)


def g_inv(x: Scalar, eps: Scalar) -> Scalar:
    if 1 - eps * x == 0:
        raise ValueError("1 - eps*x must not vanish")
    return canon_scalar(-x / (1 - eps * x))


def g_sigma(x: Scalar, eps: Scalar) -> tuple[Scalar, Scalar]:
    """The twisting involution (x, eps) -> (x/(1 + x*eps), -eps)."""
    if 1 + x * eps == 0:
        raise ValueError("1 + x*eps must not vanish")
    return canon_scalar(x / (1 + x * eps)), canon_scalar(-eps)


def orbit_map(xs: Dict[int, Scalar], eps: Scalar) -> NuTuple:
    """nu_ij = (1 - eps*x_j)/(x_i - x_j) for a configuration of distinct
    group-scheme points; the image is a chart member and is invariant under
    the diagonal group action."""
    eps = canon_scalar(eps)
    labels = sorted(xs)
    for i in labels:
        if 1 - eps * xs[i] == 0:
            raise ValueError(f"1 - eps*x_{i} = 0")
    for i, j in itertools.combinations(labels, 2):
        if xs[i] == xs[j]:
            raise ValueError(f"coincident points x_{i} = x_{j}")
    nu = {}
    n = len(labels)
    for a, i in enumerate(labels, start=1):
        for b, j in enumerate(labels, start=1):
            if a != b:
                nu[(a, b)] = ProjPoint(1 - eps * xs[j], xs[i] - xs[j])
    return NuTuple(n, nu, eps)


def cross_ratios(zs: Dict[int, Scalar], distinguished: Optional[int] = None) -> MuTuple:
    """mu_ijk = (z_i - z_k)(z_l - z_j) / ((z_i - z_j)(z_l - z_k)) with l the
    distinguished label; distinguished None places the extra point at
    infinity, reducing to (z_i - z_k)/(z_i - z_j)."""
    labels = sorted(k for k in zs if k != distinguished)
    mu = {}
    for i, j, k in itertools.permutations(labels, 3):
        if distinguished is None:
            mu[(i, j, k)] = ProjPoint(zs[i] - zs[k], zs[i] - zs[j])
        else:
            zl = zs[distinguished]
            mu[(i, j, k)] = ProjPoint(
                (zs[i] - zs[k]) * (zl - zs[j]), (zs[i] - zs[j]) * (zl - zs[k])
            )
    return MuTuple(labels, mu)


def collapse_to_LM(mu: MuTuple, n: int) -> AlphaTuple:
    """The caterpillar collapse: alpha_ij = mu_{n+1, i, j} on labels [n]."""
    d = mu.as_dict()
    alpha = {(i, j): d[(n + 1, i, j)] for (i, j) in ordered_pairs(range(1, n + 1))}
    return AlphaTuple(n, alpha, None)


def eps_family_delta(us: Dict[int, Scalar], y: Scalar, eps: Scalar) -> NuTuple:
    """delta_ij = (u_i - u_j)/(y + eps*u_i): the line-bundle family chart."""
    eps, y = canon_scalar(eps), canon_scalar(y)
    labels = sorted(us)
    for i in labels:
        if y + eps * us[i] == 0:
            raise ValueError(f"y + eps*u_{i} = 0")
    nu = {}
    for a, i in enumerate(labels, start=1):
        for b, j in enumerate(labels, start=1):
            if a != b:
                nu[(a, b)] = ProjPoint(y + eps * us[i], us[i] - us[j])
    return NuTuple(len(labels), nu, eps)


# ---------------------------------------------------------------------------
# involutions


def sigma_flower(point: NuTuple) -> NuTuple:
    """(nu, eps) -> (nu - eps, -eps); the identity on the eps = 0 fibre."""
    eps = point.epsilon if point.epsilon is not None else ZERO
    nu = {ij: pp_sub_scalar(p, eps) for ij, p in point.as_dict().items()}
    new_eps = None if point.epsilon is None else canon_scalar(-eps)
    return NuTuple(point.n, nu, new_eps)


def sigma_mau_woodward(point: QTuple) -> QTuple:
    """nu_ij -> nu_ij - eps and mu_ijk -> mu_ijk * (1 - eps/nu_kj)."""
    eps = point.epsilon if point.epsilon is not None else ZERO
    nud = point.nu.as_dict()
    new_nu = {ij: pp_sub_scalar(p, eps) for ij, p in nud.items()}
    new_mu = {}
    for (i, j, k), m in point.mu.as_dict().items():
        nkj = nud[(k, j)]
        q = ProjPoint(m.u * (nkj.u - eps * nkj.v), m.v * nkj.u)
        new_mu[(i, j, k)] = q
    new_eps = None if point.epsilon is None else canon_scalar(-eps)
    return QTuple(point.n, NuTuple(point.n, new_nu, new_eps), MuTuple(point.mu.labels, new_mu), new_eps)


def sigma_dm(mu: MuTuple, n: int) -> MuTuple:
    """The marked-point swap z_0 <-> z_{n+1} on the moduli of n+2 points:
    mu_ijk -> mu_ijk * mu_{n+1,k,j} on triples inside [n], and transposition
    of the two non-distinguished indices on triples containing n+1."""
    d = mu.as_dict()
    top = n + 1
    out = {}
    for (i, j, k) in d:
        if top not in (i, j, k):
            out[(i, j, k)] = pp_mul(d[(i, j, k)], d[(top, k, j)])
        elif i == top:
            out[(i, j, k)] = d[(top, k, j)]
        elif j == top:
            out[(i, j, k)] = d[(k, top, i)]
        else:
            out[(i, j, k)] = d[(j, i, top)]
    return MuTuple(mu.labels, out)


def involution_sigma(tag: str, point):
    if tag in ("Flower", "DeformedFlower"):
        return sigma_flower(point)
    if tag in ("MauWoodward", "DeformedMauWoodward"):
        return sigma_mau_woodward(point)
    if tag == "DeligneMumford":
        return sigma_dm(point, len(point.labels) - 1)
    raise ValueError(f"no involution for {tag!r}")


# ---------------------------------------------------------------------------
# the generic-fibre identification


def dm_to_q_identification(mu: MuTuple, eps: Scalar) -> QTuple:
    """Turn a moduli point on labels [n+1] into a deformed Mau-Woodward point
    on [n] via nu_ij = eps * mu_{i,j,n+1}, for eps != 0."""
    eps = canon_scalar(eps)
    if eps == 0:
        raise ValueError("identification needs epsilon != 0")
    labels = mu.labels
    n = len(labels) - 1
    top = n + 1
    if labels != tuple(range(1, n + 2)):
        raise ValueError("expected labels [n+1]")
    d = mu.as_dict()
    nu = {}
    for (i, j) in ordered_pairs(range(1, n + 1)):
        m = d[(i, j, top)]
        nu[(i, j)] = ProjPoint(eps * m.u, m.v)
    sub = {t: d[t] for t in ordered_triples(range(1, n + 1))}
    return QTuple(n, NuTuple(n, nu, eps), MuTuple(range(1, n + 1), sub), eps)


def q_to_dm_identification(q: QTuple) -> MuTuple:
    """Inverse of dm_to_q_identification (exact)."""
    eps = q.epsilon
    if eps is None or eps == 0:
        raise ValueError("identification needs epsilon != 0")
    n = q.n
    top = n + 1
    nud, mud = q.nu.as_dict(), q.mu.as_dict()
    out = dict(mud)
    for (i, j) in ordered_pairs(range(1, n + 1)):
        p = nud[(i, j)]
        out[(i, j, top)] = ProjPoint(p.u, eps * p.v)
        out[(i, top, j)] = ProjPoint(eps * p.v, p.u)
        # mu_{top,i,j} = 1 - mu_{i,top,j} = 1 - eps/nu_ij = (nu_ij - eps)/nu_ij
        out[(top, i, j)] = ProjPoint(p.u - eps * p.v, p.u)
    return MuTuple(range(1, n + 2), out)


# ---------------------------------------------------------------------------
# JSON interchange


def point_to_json(point) -> str:
    d = {"n": getattr(point, "n", None)}
    if isinstance(point, NuTuple):
        d["epsilon"] = format_scalar(point.epsilon) if point.epsilon is not None else None
        d["nu"] = {
            f"{i},{j}": [format_scalar(p.u), format_scalar(p.v)]
            for (i, j), p in point.as_dict().items()
        }
    elif isinstance(point, MuTuple):
        d["n"] = len(point.labels)
        d["mu"] = {
            f"{i},{j},{k}": [format_scalar(p.u), format_scalar(p.v)]
            for (i, j, k), p in point.as_dict().items()
        }
    elif isinstance(point, QTuple):
        d["epsilon"] = format_scalar(point.epsilon) if point.epsilon is not None else None
        d["nu"] = {
            f"{i},{j}": [format_scalar(p.u), format_scalar(p.v)]
            for (i, j), p in point.nu.as_dict().items()
        }
        d["mu"] = {
            f"{i},{j},{k}": [format_scalar(p.u), format_scalar(p.v)]
            for (i, j, k), p in point.mu.as_dict().items()
        }
    else:
        raise TypeError(type(point))
    return json.dumps(d, sort_keys=True)


def point_from_json(text: str):
    d = json.loads(text)
    n = d["n"]
    eps = parse_scalar(d["epsilon"]) if d.get("epsilon") else None
    nu = mu = None
    if "nu" in d:
        nu_dict = {}
        for key, (u, v) in d["nu"].items():
            i, j = map(int, key.split(","))
            nu_dict[(i, j)] = ProjPoint(parse_scalar(u), parse_scalar(v))
        nu = NuTuple(n, nu_dict, eps)
    if "mu" in d:
        mu_dict = {}
        labels = set()
        for key, (u, v) in d["mu"].items():
            i, j, k = map(int, key.split(","))
            labels |= {i, j, k}
            mu_dict[(i, j, k)] = ProjPoint(parse_scalar(u), parse_scalar(v))
        mu = MuTuple(sorted(labels), mu_dict)
    if nu is not None and mu is not None:
        return QTuple(n, nu, mu, eps)
    return nu if nu is not None else mu
