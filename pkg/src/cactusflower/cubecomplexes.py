"""Cube complexes indexed by planar forests, and permutahedron cell
complexes indexed by ordered set partitions, together with the curvature and
local-isometry certificates and presentation extraction from 2-skeleta.

Complex kinds:

    D       cubes indexed by planar forests modulo flipping
    hatD    additionally modulo permuting the trees
    breveD  additionally modulo cyclically permuting the trees
    P       cells indexed by ordered set partitions
    hatP    modulo forgetting the order
    breveP  modulo cyclic rotation of the order

For the cube complexes, a sub-k-cube is a forest with k internal edges (with
the tree order reduced per kind); the big k-cube containing it is its class
modulo flipping.  Each sub-cube touches exactly one 0-cube, reached by
collapsing all its edges, and the link of a 0-cube has one vertex per
incident sub-1-cube and one (k-1)-simplex per incident sub-k-cube.  The
non-positive-curvature certificate checks Gromov's flag condition in exactly
this combinatorial form.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from .combinatorics import CyclicSetPartition, Permutation, SetPartition
from .forests import (
    PlanarForest,
    PlanarForestWithZeros,
    canon_forest,
    collapse,
    collapse_all,
    enumerate_planar_forests,
    flip,
    forest_key,
    forest_to_newick,
    z_from_plain,
    zeros_to_planar,
)
from .groups import Presentation, canonical_cyclic, _word_key

D_KINDS = {"D": "ordered", "hatD": "unordered", "breveD": "cyclic"}
P_KINDS = {"P": "ordered", "hatP": "unordered", "breveP": "cyclic"}


# ---------------------------------------------------------------------------
# the forest cube complexes


def _canon_sub(kind: str, f: PlanarForest) -> PlanarForest:
    return canon_forest(D_KINDS[kind], f, mod_flips=False)


def _canon_big(kind: str, f: PlanarForest) -> PlanarForest:
    return canon_forest(D_KINDS[kind], f, mod_flips=True)


def _rev(f: PlanarForest) -> PlanarForest:
    """Reverse a sub-1-cube: flip at its unique internal edge."""
    (e,) = f.edges()
    return flip(f, e)


@dataclass
class CubeComplex:
    kind: str
    n: int
    subcubes: Dict[int, set] = field(default_factory=dict)
    bigcubes: Dict[int, set] = field(default_factory=dict)
    cells: Dict[int, set] = field(default_factory=dict)  # P-family only

    @property
    def is_cubical(self) -> bool:
        return self.kind in D_KINDS

    @property
    def dim(self) -> int:
        table = self.bigcubes if self.is_cubical else self.cells
        return max((k for k, v in table.items() if v), default=0)

    def f_vector(self) -> Tuple[int, ...]:
        table = self.bigcubes if self.is_cubical else self.cells
        return tuple(len(table.get(k, ())) for k in range(self.dim + 1))

    def counts(self) -> Dict[int, int]:
        return {k: c for k, c in enumerate(self.f_vector())}

    # --- cube-complex structure -------------------------------------------

    def canon_sub(self, f: PlanarForest) -> PlanarForest:
        return _canon_sub(self.kind, f)

    def canon_big(self, f: PlanarForest) -> PlanarForest:
        return _canon_big(self.kind, f)

    def vertex_of(self, f: PlanarForest) -> PlanarForest:
        return self.canon_sub(collapse_all(f, f.edges()))

    def sub_face(self, f: PlanarForest, keep) -> PlanarForest:
        keep = set(keep)
        return self.canon_sub(collapse_all(f, [e for e in f.edges() if e not in keep]))

    def vertices(self) -> list:
        return sorted(self.subcubes.get(0, ()), key=forest_key)


def build_complex(kind: str, n: int) -> CubeComplex:
    """Build one of the six complexes at the given rank."""
    if kind in D_KINDS:
        if n < 2:
            raise ValueError("need n >= 2")
        c = CubeComplex(kind, n)
        for k in range(n):
            subs = {_canon_sub(kind, f) for f in enumerate_planar_forests(n, k)}
            bigs = {_canon_big(kind, f) for f in subs}
            c.subcubes[k] = subs
            c.bigcubes[k] = bigs
        return c
    if kind in P_KINDS:
        c = CubeComplex(kind, n)
        for k in range(n):
            c.cells[k] = {
                _canon_p_cell(kind, parts)
                for parts in _ordered_set_partitions(n, n - k)
            }
        return c
    raise ValueError(f"unknown complex kind {kind!r}")


def build_D(n: int) -> CubeComplex:
    return build_complex("D", n)


def build_hatD(n: int) -> CubeComplex:
    return build_complex("hatD", n)


def build_breveD(n: int) -> CubeComplex:
    return build_complex("breveD", n)


def build_P(n: int) -> CubeComplex:
    return build_complex("P", n)


def build_hatP(n: int) -> CubeComplex:
    return build_complex("hatP", n)


def build_breveP(n: int) -> CubeComplex:
    return build_complex("breveP", n)


def _ordered_set_partitions(n: int, parts: int):
    """Ordered set partitions of [n] with the given number of parts."""
    items = list(range(1, n + 1))

    def rec(rest, blocks):
        if not rest:
            if len(blocks) == parts:
                yield tuple(frozenset(b) for b in blocks)
            return
        if len(blocks) > parts:
            return
        x = rest[0]
        for b in blocks:
            b.append(x)
            yield from rec(rest[1:], blocks)
            b.pop()
        for pos in range(len(blocks) + 1):
            blocks.insert(pos, [x])
            yield from rec(rest[1:], blocks)
            blocks.pop(pos)

    seen = set()
    for p in rec(items, []):
        if p not in seen:
            seen.add(p)
            yield p


def _canon_p_cell(kind: str, parts: Tuple[FrozenSet[int], ...]):
    if kind == "P":
        return tuple(parts)
    if kind == "hatP":
        return SetPartition(parts)
    if kind == "breveP":
        return CyclicSetPartition(parts)
    raise ValueError(kind)


# ---------------------------------------------------------------------------
# the curvature certificate


@dataclass
class FlagReport:
    ok: bool
    witness: Optional[tuple] = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "flag condition holds" if self.ok else f"FAIL: {self.detail} {self.witness}"


@dataclass(frozen=True)
class VertexLink:
    """The link of a 0-cube: one vertex per incident sub-1-cube, one simplex
    per incident sub-cube, closed under faces."""

    vertex: PlanarForest
    vertices: Tuple[PlanarForest, ...]
    simplices: FrozenSet[FrozenSet]

    def is_simplex(self, verts) -> bool:
        return frozenset(forest_key(v) for v in verts) in self.simplices


def vertex_link(c: CubeComplex, vertex: PlanarForest) -> VertexLink:
    """Assemble the link at a 0-cube from the incident sub-cubes."""
    if not c.is_cubical:
        raise ValueError("links are computed for the cube complexes")
    ones = sorted(
        (s for s in c.subcubes.get(1, ()) if c.vertex_of(s) == vertex), key=forest_key
    )
    simplices = set()
    for k in range(1, c.dim + 1):
        for sigma in c.subcubes.get(k, ()):
            if c.vertex_of(sigma) != vertex:
                continue
            corners = [forest_key(c.sub_face(sigma, [e])) for e in sigma.edges()]
            for size in range(1, len(corners) + 1):
                for combo in itertools.combinations(corners, size):
                    simplices.add(frozenset(combo))
    return VertexLink(vertex, tuple(ones), frozenset(simplices))


def check_gromov_flag(c: CubeComplex) -> FlagReport:
    """Certify non-positive curvature combinatorially.

    Checks, at every 0-cube: the two sub-1-cubes of each sub-2-cube are
    distinct and determine it uniquely, and every clique of sub-1-cubes
    pairwise joined by sub-2-cubes spans a unique sub-cube.  A missing
    2-face of a higher cube is reported with the expected square as witness.
    """
    if not c.is_cubical:
        raise ValueError("the flag certificate needs subcube data (a cube complex)")
    squares = c.subcubes.get(2, set())
    # face closure: every 2-face of every higher subcube must be present
    for k in range(3, c.dim + 1):
        for sigma in c.subcubes.get(k, ()):
            for pair in itertools.combinations(sigma.edges(), 2):
                face = c.sub_face(sigma, pair)
                if face not in squares:
                    return FlagReport(
                        False,
                        (forest_to_newick(sigma), forest_to_newick(face)),
                        "missing square face",
                    )

    by_vertex_1: Dict[PlanarForest, list] = {}
    for s1 in c.subcubes.get(1, ()):
        by_vertex_1.setdefault(c.vertex_of(s1), []).append(s1)

    pair_to_square: Dict[tuple, PlanarForest] = {}
    for sq in squares:
        e, f = sq.edges()
        a, b = c.sub_face(sq, [e]), c.sub_face(sq, [f])
        if a == b:
            return FlagReport(False, (forest_to_newick(sq),), "degenerate square link")
        key = (c.vertex_of(sq), frozenset({forest_key(a), forest_key(b)}))
        if key in pair_to_square and pair_to_square[key] != sq:
            return FlagReport(
                False,
                (forest_to_newick(pair_to_square[key]), forest_to_newick(sq)),
                "two squares on the same corner pair",
            )
        pair_to_square[key] = sq

    # simplices of each link, indexed by their vertex sets
    simplex_to_cube: Dict[tuple, PlanarForest] = {}
    for k in range(2, c.dim + 1):
        for sigma in c.subcubes.get(k, ()):
            verts = frozenset(forest_key(c.sub_face(sigma, [e])) for e in sigma.edges())
            if len(verts) != k:
                return FlagReport(
                    False, (forest_to_newick(sigma),), "repeated corner in a link simplex"
                )
            key = (c.vertex_of(sigma), verts)
            if key in simplex_to_cube and simplex_to_cube[key] != sigma:
                return FlagReport(
                    False,
                    (forest_to_newick(simplex_to_cube[key]), forest_to_newick(sigma)),
                    "two cubes span the same link simplex",
                )
            simplex_to_cube[key] = sigma

    # flagness: every clique spans a unique simplex
    for v, ones in by_vertex_1.items():
        keys = {forest_key(s): s for s in ones}
        adj = {kk: set() for kk in keys}
        for (vv, pair), _sq in pair_to_square.items():
            if vv == v:
                a, b = tuple(pair)
                adj[a].add(b)
                adj[b].add(a)

        names = sorted(keys)

        def extend(clique, candidates):
            size = len(clique)
            if size >= 2:
                key = (v, frozenset(clique))
                if key not in simplex_to_cube:
                    return FlagReport(
                        False,
                        (str(v and forest_to_newick(v)), tuple(map(str, clique))),
                        f"{size}-clique spans no cube",
                    )
            for idx, cand in enumerate(candidates):
                rep = extend(clique + [cand], [x for x in candidates[idx + 1 :] if x in adj[cand]])
                if rep is not None:
                    return rep
            return None

        for idx, a in enumerate(names):
            rep = extend([a], [b for b in names[idx + 1 :] if b in adj[a]])
            if rep is not None:
                return rep
    return FlagReport(True)


def remove_subcube(c: CubeComplex, sigma: PlanarForest) -> CubeComplex:
    """A mutated copy with one subcube deleted (negative-control tool)."""
    k = sigma.num_edges()
    if sigma not in c.subcubes.get(k, ()):
        raise ValueError("subcube not present")
    out = CubeComplex(c.kind, c.n)
    out.subcubes = {d: set(v) for d, v in c.subcubes.items()}
    out.bigcubes = {d: set(v) for d, v in c.bigcubes.items()}
    out.subcubes[k] = out.subcubes[k] - {sigma}
    out.bigcubes[k] = {_canon_big(c.kind, f) for f in out.subcubes[k]}
    return out


# ---------------------------------------------------------------------------
# combinatorial maps and the local-isometry certificate


@dataclass
class CombinatorialMap:
    source: CubeComplex
    target: CubeComplex
    name: str

    def apply(self, f: PlanarForest) -> PlanarForest:
        return self.target.canon_sub(f)


def quotient_map(source: CubeComplex, target: CubeComplex) -> CombinatorialMap:
    order = ["D", "breveD", "hatD"]
    if source.kind not in order or target.kind not in order:
        raise ValueError("quotient maps are between the forest cube complexes")
    if order.index(source.kind) > order.index(target.kind) or source.n != target.n:
        raise ValueError(f"no quotient map {source.kind} -> {target.kind}")
    return CombinatorialMap(source, target, f"{source.kind}->{target.kind}")


@dataclass
class IsometryReport:
    ok: bool
    witness: Optional[tuple] = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def check_local_isometry(phi: CombinatorialMap) -> IsometryReport:
    """Link injectivity plus the edge-pair completion condition.

    At every source 0-cube: distinct incident sub-1-cubes must stay distinct
    in the target link, and whenever two image link vertices span a square in
    the target, the original pair must span a square in the source (the
    higher simplices follow because both links are flag).
    """
    src, dst = phi.source, phi.target
    src_ones: Dict[PlanarForest, list] = {}
    for s1 in src.subcubes.get(1, ()):
        src_ones.setdefault(src.vertex_of(s1), []).append(s1)

    def square_pairs(c: CubeComplex):
        pairs = set()
        for sq in c.subcubes.get(2, ()):
            e, f = sq.edges()
            a, b = c.sub_face(sq, [e]), c.sub_face(sq, [f])
            pairs.add((c.vertex_of(sq), frozenset({forest_key(a), forest_key(b)})))
        return pairs

    src_sq = square_pairs(src)
    dst_sq = square_pairs(dst)

    for v, ones in src_ones.items():
        images = {}
        for s1 in ones:
            im = phi.apply(s1)
            if im in images:
                return IsometryReport(
                    False,
                    (forest_to_newick(images[im]), forest_to_newick(s1)),
                    "link not injective",
                )
            images[im] = s1
        vi = dst.vertex_of(next(iter(ones)))
        for a, b in itertools.combinations(ones, 2):
            key = (vi, frozenset({forest_key(phi.apply(a)), forest_key(phi.apply(b))}))
            if key in dst_sq:
                src_key = (v, frozenset({forest_key(a), forest_key(b)}))
                if src_key not in src_sq:
                    return IsometryReport(
                        False,
                        (forest_to_newick(a), forest_to_newick(b)),
                        "image square has no preimage square",
                    )
    return IsometryReport(True)


def identity_map(c: CubeComplex) -> CombinatorialMap:
    return CombinatorialMap(c, c, "identity")


# ---------------------------------------------------------------------------
# cubical subdivision


def _z_canon_for_kind(kind: str, zf_trees) -> tuple:
    from .forests import _z_canon_tree, _z_key  # orbit reduction per tree

    ts = [_z_canon_tree(t) for t in zf_trees]
    if kind == "hatD":
        return tuple(sorted(ts, key=_z_key))
    if kind == "D":
        return tuple(ts)
    if kind == "breveD":
        rots = [tuple(ts[i:] + ts[:i]) for i in range(len(ts))]
        return min(rots, key=lambda tt: tuple(_z_key(t) for t in tt))
    raise ValueError(kind)


@dataclass
class Subdivision:
    complex: CubeComplex
    little: Dict[int, set]  # dim -> set of canonical zero-forests

    def counts(self) -> Dict[int, int]:
        return {k: len(v) for k, v in sorted(self.little.items())}


def cubical_subdivision(c: CubeComplex) -> Subdivision:
    """Little cubes indexed by zero-decorated forests: the dimension is the
    number of undecorated internal edges, and forgetting the decoration is
    the embedding into the big cubes."""
    if not c.is_cubical:
        raise ValueError("subdivision applies to the forest cube complexes")
    little: Dict[int, set] = {}
    for k in range(c.n):
        for sub in c.subcubes.get(k, ()):
            edges = sub.edges()
            for r in range(len(edges) + 1):
                for dec in itertools.combinations(edges, r):
                    zt = tuple(z_from_plain(t, frozenset(dec)) for t in sub.trees)
                    if c.kind == "hatD":
                        cell = PlanarForestWithZeros(zt)
                    else:
                        cell = _z_canon_for_kind(c.kind, zt)
                    little.setdefault(k - r, set()).add(cell)
    return Subdivision(c, little)


def little_to_big(c: CubeComplex, cell: PlanarForestWithZeros) -> PlanarForest:
    if c.kind != "hatD":
        raise ValueError("decorated-forest cells index the unordered quotient")
    return zeros_to_planar(cell)


# ---------------------------------------------------------------------------
# 1-skeleta, 2-cell boundaries, presentation extraction


def _directed_edges_D(c: CubeComplex):
    """Directed 1-cells: the sub-1-cubes themselves (a direction of a 1-cube
    is the choice of which sub-1-cube is traversed first)."""
    return sorted(c.subcubes.get(1, ()), key=forest_key)


def _edge_symbol_D(c: CubeComplex, sigma: PlanarForest):
    if c.kind == "hatD":
        for t in sigma.trees:
            if not isinstance(t, int):
                from .forests import leaves

                return ("sA", tuple(leaves(t)))
        raise AssertionError
    return ("e", forest_to_newick(sigma))


def _boundary_words_D(c: CubeComplex):
    """Boundary walks of the big squares, as directed sub-1-cube lists."""
    walks = []
    for big in sorted(c.bigcubes.get(2, ()), key=forest_key):
        e, f = big.edges()
        tau = big
        sides = [
            collapse(tau, e),
            collapse(flip(tau, f), f),
            collapse(flip(flip(tau, e), f), e),
            collapse(flip(tau, e), f),
        ]
        walks.append([c.canon_sub(s) for s in sides])
    return walks


def _vertex_key(v) -> str:
    if isinstance(v, PlanarForest):
        return forest_to_newick(v)
    if isinstance(v, (tuple, SetPartition, CyclicSetPartition)):
        return _p_cell_str(v)
    return str(v)


def skeleton_D(c: CubeComplex):
    """(vertices, directed edge table) of the 1-skeleton.

    Each directed edge is (symbol, start, end, partner_symbol).
    """
    table = {}
    for sigma in _directed_edges_D(c):
        sym = _edge_symbol_D(c, sigma)
        rev = c.canon_sub(_rev(sigma))
        table[sym] = (
            _vertex_key(c.vertex_of(sigma)),
            _vertex_key(c.vertex_of(rev)),
            _edge_symbol_D(c, rev),
        )
    return [_vertex_key(v) for v in c.vertices()], table


def _p_cell_blocks(cell):
    if isinstance(cell, tuple):
        return cell
    if isinstance(cell, SetPartition):
        return cell.blocks
    return cell.parts


def _p_cell_str(cell) -> str:
    blocks = _p_cell_blocks(cell)
    body = "|".join(",".join(map(str, sorted(b))) for b in blocks)
    if isinstance(cell, SetPartition):
        return "{" + body + "}"
    if isinstance(cell, CyclicSetPartition):
        return "(" + body + ")"
    return "[" + body + "]"


def skeleton_P(c: CubeComplex):
    """Directed edges of a permutahedron quotient: (pair (x, y), context).

    A directed 1-cell is the traversal from the refinement with x before y.
    For the plain permutahedron the context is the full ordered partition.
    """
    table = {}
    for cell in sorted(c.cells.get(1, ()), key=_p_cell_str):
        blocks = _p_cell_blocks(cell)
        fat = next(b for b in blocks if len(b) == 2)
        x, y = sorted(fat)
        for (u, vv) in ((x, y), (y, x)):
            sym = _p_edge_symbol(c, cell, (u, vv))
            start = _p_refined_vertex(c, blocks, fat, (u, vv))
            end = _p_refined_vertex(c, blocks, fat, (vv, u))
            table[sym] = (start, end, _p_edge_symbol(c, cell, (vv, u)))
    verts = sorted({_p_cell_str(v) for v in c.cells.get(0, ())})
    return verts, table


def _p_edge_symbol(c: CubeComplex, cell, pair):
    if c.kind == "hatP":
        return ("sig", pair[0], pair[1])
    return ("pe", _p_cell_str(cell), pair)


def _p_refined_vertex(c: CubeComplex, blocks, fat, pair) -> str:
    out = []
    for b in blocks:
        if b == fat:
            out.append(frozenset([pair[0]]))
            out.append(frozenset([pair[1]]))
        else:
            out.append(b)
    return _p_cell_str(_canon_p_cell(c.kind, tuple(out)))


def _boundary_words_P(c: CubeComplex):
    """Boundary walks of squares and hexagons as directed-pair letters.

    Each letter is (edge cell, (x, y)); the walk starts at the representative
    refinement and alternately swaps the two fat parts (square) or the two
    adjacent positions inside the fat triple (hexagon).
    """
    walks = []
    for cell in sorted(c.cells.get(2, ()), key=_p_cell_str):
        blocks = list(_p_cell_blocks(cell))
        fats = [b for b in blocks if len(b) > 1]
        if len(fats) == 2:  # square
            (a, b) = sorted(fats[0])
            (x, y) = sorted(fats[1])
            seq = []
            state = {fats[0]: (a, b), fats[1]: (x, y)}
            for swap in (fats[0], fats[1], fats[0], fats[1]):
                other = fats[1] if swap is fats[0] else fats[0]
                edge_blocks = []
                for blk in blocks:
                    if blk == swap:
                        edge_blocks.append(blk)
                    elif blk == other:
                        edge_blocks.extend(
                            frozenset([t]) for t in state[other]
                        )
                    else:
                        edge_blocks.append(blk)
                ecell = _canon_p_cell(c.kind, tuple(edge_blocks))
                seq.append((ecell, state[swap]))
                state[swap] = (state[swap][1], state[swap][0])
            walks.append(seq)
        else:  # hexagon: one part of size three
            fat = fats[0]
            o = tuple(sorted(fat))
            order = list(o)
            seq = []
            for step in range(6):
                pos = 0 if step % 2 == 0 else 1
                u, vv = order[pos], order[pos + 1]
                edge_blocks = []
                for blk in blocks:
                    if blk == fat:
                        if pos == 0:
                            edge_blocks.append(frozenset([u, vv]))
                            edge_blocks.append(frozenset([order[2]]))
                        else:
                            edge_blocks.append(frozenset([order[0]]))
                            edge_blocks.append(frozenset([u, vv]))
                    else:
                        edge_blocks.append(blk)
                ecell = _canon_p_cell(c.kind, tuple(edge_blocks))
                seq.append((ecell, (u, vv)))
                order[pos], order[pos + 1] = order[pos + 1], order[pos]
            walks.append(seq)
    return walks


def extract_presentation(c: CubeComplex, base=None) -> Presentation:
    """Generators: directed 1-cells (with the reversal pairing); relators:
    boundary words of the 2-cells, rewritten over a spanning tree when the
    complex has several 0-cells, then freely reduced."""
    if c.is_cubical:
        verts, table = skeleton_D(c)
        walks = []
        for walk in _boundary_words_D(c):
            walks.append([_edge_symbol_D(c, s) for s in walk])
    else:
        verts, table = skeleton_P(c)
        raw = _boundary_words_P(c)
        walks = []
        for walk in raw:
            walks.append([_p_edge_symbol(c, ecell, pair) for (ecell, pair) in walk])

    partner = {sym: info[2] for sym, info in table.items()}
    # spanning tree over the 1-skeleton
    adj: Dict[str, list] = {v: [] for v in verts}
    for sym, (start, end, _rev_sym) in table.items():
        adj[start].append((end, sym))
    base_v = _vertex_key(base) if base is not None else verts[0]
    in_tree = set()
    seen = {base_v}
    frontier = [base_v]
    while frontier:
        nxt = []
        for v in frontier:
            for (w, sym) in sorted(adj[v], key=lambda t: _word_key((t[1],))):
                if w not in seen:
                    seen.add(w)
                    in_tree.add(sym)
                    in_tree.add(partner[sym])
                    nxt.append(w)
        frontier = nxt
    if seen != set(verts):
        raise ValueError("complex is not connected")

    gens = tuple(sym for sym in sorted(table, key=lambda s: _word_key((s,))) if sym not in in_tree)
    genset = set(gens)
    relators = set()
    for walk in walks:
        word = tuple(x for x in walk if x in genset)
        word = _free_reduce(word, partner)
        if word:
            relators.add(canonical_cyclic(word, partner))
    return Presentation(
        f"extracted-{c.kind}",
        c.n,
        gens,
        tuple(sorted(relators, key=_word_key)),
        tuple((g, partner[g]) for g in gens),
    )


def _free_reduce(word, partner):
    out = []
    for x in word:
        if out and partner.get(out[-1]) == x:
            out.pop()
        else:
            out.append(x)
    # cyclic reduction
    while len(out) >= 2 and partner.get(out[0]) == out[-1]:
        out = out[1:-1]
    return tuple(out)


def simplify_presentation(p: Presentation) -> Presentation:
    """Tietze simplification by free reduction and removal of generators
    killed by length-one relators."""
    partner = dict(p.partner)
    gens = set(p.generators)
    relators = [list(r) for r in p.relators]
    changed = True
    while changed:
        changed = False
        dead = set()
        for r in relators:
            if len(r) == 1:
                dead.add(r[0])
                dead.add(partner[r[0]])
        if dead:
            gens -= dead
            relators = [[x for x in r if x not in dead] for r in relators]
            changed = True
        new_rel = []
        for r in relators:
            rr = list(_free_reduce(tuple(r), partner))
            if rr != r:
                changed = True
            if rr:
                new_rel.append(rr)
        relators = new_rel
    return Presentation(
        p.family + "-simplified",
        p.n,
        tuple(sorted(gens, key=lambda s: _word_key((s,)))),
        tuple(sorted((tuple(r) for r in relators), key=_word_key)),
        tuple((g, partner[g]) for g in sorted(gens, key=lambda s: _word_key((s,)))),
    )


def presentations_match(a: Presentation, b: Presentation) -> bool:
    """Equality of presentations in the declared sense: same generator set
    with the same inverse pairing, and the same set of relators up to cyclic
    rotation and inversion."""
    if set(a.generators) != set(b.generators):
        return False
    if dict(a.partner) != {g: dict(b.partner)[g] for g in b.generators if g in set(a.generators)}:
        pass  # partner maps may list extra paired generators; compare on shared set
    pa, pb = dict(a.partner), dict(b.partner)
    for g in a.generators:
        if pa[g] != pb.get(g, pa[g]):
            return False
    ra = {canonical_cyclic(r, pa) for r in a.relators if len(r) != 2 or r[0] != r[1]}
    rb = {canonical_cyclic(r, pb) for r in b.relators if len(r) != 2 or r[0] != r[1]}
    return ra == rb


# ---------------------------------------------------------------------------
# group actions and exports


def act_on_forest(w: Permutation, f: PlanarForest) -> PlanarForest:
    def rec(s):
        if isinstance(s, int):
            return w(s)
        return tuple(rec(c) for c in s)

    return PlanarForest([rec(t) for t in f.trees])


def complex_action_commutes(c: CubeComplex, w: Permutation) -> bool:
    """Relabelling permutes the subcubes and commutes with the face maps."""
    for k, subs in c.subcubes.items():
        for sigma in subs:
            im = c.canon_sub(act_on_forest(w, sigma))
            if im not in subs:
                return False
            for e in sigma.edges():
                left = c.canon_sub(act_on_forest(w, collapse(sigma, e)))
                right = c.canon_sub(collapse(im, frozenset(w(x) for x in e)))
                if left != right:
                    return False
    return True


def export_dot(c: CubeComplex) -> str:
    """The 1-skeleton in DOT format."""
    if c.is_cubical:
        verts, table = skeleton_D(c)
    else:
        verts, table = skeleton_P(c)
    lines = ["graph skeleton {"]
    for v in verts:
        lines.append(f'  "{v}";')
    seen = set()
    for sym, (start, end, rev) in sorted(table.items(), key=lambda kv: str(kv[0])):
        if rev in seen:
            continue
        seen.add(sym)
        lines.append(f'  "{start}" -- "{end}" [label="{sym}"];')
    lines.append("}")
    return "\n".join(lines)


def export_poset(c: CubeComplex) -> str:
    """The graded cell poset with faces, as JSON."""
    out: Dict[str, dict] = {}
    if c.is_cubical:
        for k in sorted(c.bigcubes):
            cells = {}
            for big in sorted(c.bigcubes[k], key=forest_key):
                faces = set()
                for e in big.edges():
                    faces.add(forest_to_newick(c.canon_big(collapse(big, e))))
                    faces.add(forest_to_newick(c.canon_big(collapse(flip(big, e), e))))
                cells[forest_to_newick(big)] = sorted(faces)
            out[str(k)] = cells
    else:
        for k in sorted(c.cells):
            cells = {}
            for cell in sorted(c.cells[k], key=_p_cell_str):
                faces = set()
                blocks = _p_cell_blocks(cell)
                for bi, blk in enumerate(blocks):
                    if len(blk) < 2:
                        continue
                    for r in range(1, len(blk)):
                        for sub in itertools.combinations(sorted(blk), r):
                            split = (
                                list(blocks[:bi])
                                + [frozenset(sub), blk - frozenset(sub)]
                                + list(blocks[bi + 1 :])
                            )
                            faces.add(_p_cell_str(_canon_p_cell(c.kind, tuple(split))))
                cells[_p_cell_str(cell)] = sorted(faces)
            out[str(k)] = cells
    return json.dumps(out, sort_keys=True)
