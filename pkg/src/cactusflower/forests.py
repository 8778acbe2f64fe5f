"""Planar rooted forests and their flip / collapse calculus.

A subtree is either a leaf label (int) or a tuple of at least two subtrees,
giving the ordered ascending edges at an internal vertex.  A tree of a forest
hangs from its own root by a trunk; the trunk is an internal edge unless the
tree is a bare leaf.  Internal edges are identified with their upper vertices,
and an upper vertex is identified by the frozenset of leaf labels above it
(distinct vertices of a forest always carry distinct leaf sets, so this gives
stable edge ids that survive flips and collapses of other edges).

Flipping at an edge mirrors the whole subtree above it.  Collapsing a
non-trunk edge splices the children into the parent; collapsing a trunk
splits the tree into the consecutive sequence of its top-level subtrees.

Zero-decorated forests mark a subset of internal edges; they are considered
up to flips at the marked edges only.  Bushy forests allow roots of degree
greater than one and are considered up to order reversal at non-root
vertices.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, Sequence, Tuple, Union

from .combinatorics import Permutation

Subtree = Union[int, tuple]


class NoMeetError(LookupError):
    """Raised when two leaves lie in different trees of a forest."""


# ---------------------------------------------------------------------------
# basic subtree helpers


def leaves(s: Subtree) -> list[int]:
    if isinstance(s, int):
        return [s]
    out: list[int] = []
    for c in s:
        out.extend(leaves(c))
    return out


def leafset(s: Subtree) -> FrozenSet[int]:
    return frozenset(leaves(s))


def mirror(s: Subtree) -> Subtree:
    if isinstance(s, int):
        return s
    return tuple(mirror(c) for c in reversed(s))


def _validate(s: Subtree) -> None:
    if isinstance(s, int):
        return
    if not isinstance(s, tuple) or len(s) < 2:
        raise ValueError(f"internal vertex needs >= 2 ordered children: {s!r}")
    for c in s:
        _validate(c)


def internal_nodes(s: Subtree):
    """Yield (leafset, node) for every internal vertex of the subtree."""
    if isinstance(s, int):
        return
    yield leafset(s), s
    for c in s:
        yield from internal_nodes(c)


@dataclass(frozen=True)
class PlanarForest:
    """An ordered sequence of planar rooted trees with distinct leaf labels."""

    trees: Tuple[Subtree, ...]

    def __init__(self, trees: Iterable[Subtree]):
        ts = tuple(trees)
        labels = []
        for t in ts:
            _validate(t)
            labels.extend(leaves(t))
        if len(labels) != len(set(labels)):
            raise ValueError("duplicate leaf labels")
        object.__setattr__(self, "trees", ts)

    @property
    def labels(self) -> FrozenSet[int]:
        return frozenset(x for t in self.trees for x in leaves(t))

    @property
    def n(self) -> int:
        return len(self.labels)

    def edges(self) -> list[FrozenSet[int]]:
        """Internal edges, as leaf sets of their upper vertices."""
        out = []
        for t in self.trees:
            out.extend(ls for ls, _ in internal_nodes(t))
        return out

    def num_edges(self) -> int:
        return len(self.edges())

    def tree_of(self, label: int) -> int:
        for i, t in enumerate(self.trees):
            if label in leafset(t):
                return i
        raise KeyError(label)

    def leaf_order(self) -> Tuple[int, ...]:
        out = []
        for t in self.trees:
            out.extend(leaves(t))
        return tuple(out)

    def __str__(self):
        return forest_to_newick(self)


def total_order(forest: PlanarForest) -> Permutation:
    """The depth-first leaf reading order, as a permutation when labels = [n].

    >>> total_order(PlanarForest([((1, (2, 3)), 4)])).images
    (1, 2, 3, 4)
    """
    order = forest.leaf_order()
    if set(order) != set(range(1, len(order) + 1)):
        raise ValueError("labels are not [n]; use leaf_order() instead")
    return Permutation(order)


def _replace_node(s: Subtree, target: FrozenSet[int], new: Subtree) -> Subtree:
    if isinstance(s, int):
        return s
    if leafset(s) == target:
        return new
    return tuple(_replace_node(c, target, new) for c in s)


def _find_node(s: Subtree, target: FrozenSet[int]) -> Subtree:
    if isinstance(s, int):
        raise KeyError(target)
    if leafset(s) == target:
        return s
    for c in s:
        if not isinstance(c, int) and target <= leafset(c):
            return _find_node(c, target)
    raise KeyError(target)


def flip(forest: PlanarForest, edge: FrozenSet[int]) -> PlanarForest:
    """Mirror the subtree above the given internal edge."""
    edge = frozenset(edge)
    if edge not in forest.edges():
        raise ValueError(f"not an internal edge: {set(edge)}")
    trees = []
    for t in forest.trees:
        if not isinstance(t, int) and edge <= leafset(t):
            node = _find_node(t, edge)
            t = _replace_node(t, edge, mirror(node))
        trees.append(t)
    return PlanarForest(trees)


def collapse(forest: PlanarForest, edge: FrozenSet[int]) -> PlanarForest:
    """Contract the given internal edge.

    Contracting a trunk splits its tree into the consecutive sequence of
    top-level subtrees; contracting any other edge splices the children into
    the parent's child list in place.
    """
    edge = frozenset(edge)
    trees: list[Subtree] = []
    done = False
    for t in forest.trees:
        if done or isinstance(t, int) or not edge <= leafset(t):
            trees.append(t)
            continue
        if leafset(t) == edge:
            trees.extend(t)  # trunk: split into consecutive trees
        else:
            trees.append(_collapse_inner(t, edge))
        done = True
    if not done:
        raise ValueError(f"not an internal edge: {set(edge)}")
    return PlanarForest(trees)


def _collapse_inner(s: Subtree, target: FrozenSet[int]) -> Subtree:
    assert not isinstance(s, int)
    out = []
    for c in s:
        if isinstance(c, int) or not target <= leafset(c):
            out.append(c)
        elif leafset(c) == target:
            out.extend(c)  # splice grandchildren in place
        else:
            out.append(_collapse_inner(c, target))
    return tuple(out)


def collapse_all(forest: PlanarForest, edges: Iterable[FrozenSet[int]]) -> PlanarForest:
    out = forest
    for e in edges:
        out = collapse(out, e)
    return out


def meet(forest: PlanarForest, a: int, b: int) -> FrozenSet[int]:
    """The meet of two leaves: the maximal vertex lying below both.

    Returns the vertex as its leaf set.  Raises NoMeetError if the leaves lie
    in different trees.
    """
    ta, tb = forest.tree_of(a), forest.tree_of(b)
    if ta != tb:
        raise NoMeetError(f"leaves {a}, {b} lie in different trees")
    node = forest.trees[ta]
    while True:
        if isinstance(node, int):
            raise NoMeetError(f"need distinct leaves, got {a}, {b}")
        nxt = None
        for c in node:
            ls = frozenset([c]) if isinstance(c, int) else leafset(c)
            if a in ls and b in ls:
                nxt = c
                break
        if nxt is None or isinstance(nxt, int):
            return leafset(node)
        node = nxt


def path_edges(forest: PlanarForest, vertex: FrozenSet[int]) -> list[FrozenSet[int]]:
    """Internal edges on the path from a vertex to the root of its tree.

    These are exactly the edges whose leaf sets contain the given vertex's
    leaf set (the vertex's own descending edge included).
    """
    ti = forest.tree_of(min(vertex))
    t = forest.trees[ti]
    return [ls for ls, _ in internal_nodes(t) if vertex <= ls]


# ---------------------------------------------------------------------------
# enumeration


def _unordered_partitions(items: Tuple[int, ...]):
    """Set partitions of the items, each as a tuple of sorted tuples."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for sub in _unordered_partitions(rest):
        # put `first` in its own block
        yield ((first,),) + sub
        # or into an existing block
        for i in range(len(sub)):
            yield sub[:i] + ((first,) + sub[i],) + sub[i + 1 :]


def _ordered_partitions(items: Tuple[int, ...], min_parts: int = 1):
    """Ordered sequences of disjoint nonempty parts covering the items."""
    for blocks in _unordered_partitions(items):
        if len(blocks) < min_parts:
            continue
        for perm in itertools.permutations(blocks):
            yield perm


@lru_cache(maxsize=None)
def _trees_on(labels: Tuple[int, ...], k: int) -> Tuple[Subtree, ...]:
    """All planar trees on the given labels with exactly k internal edges."""
    if len(labels) == 1:
        return (labels[0],) if k == 0 else ()
    if k == 0:
        return ()
    out = []
    for parts in _ordered_partitions(labels, min_parts=2):
        for split in _compositions(k - 1, len(parts)):
            choices = [_trees_on(tuple(sorted(p)), e) for p, e in zip(parts, split)]
            if any(not c for c in choices):
                continue
            for combo in itertools.product(*choices):
                out.append(tuple(combo))
    return tuple(out)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_planar_trees(labels: Sequence[int], k: int) -> list[Subtree]:
    return list(_trees_on(tuple(sorted(labels)), k))


def enumerate_planar_forests(n: int, k: int) -> list[PlanarForest]:
    """All planar forests labelled by [n] with exactly k internal edges.

    >>> [len(enumerate_planar_forests(3, k)) for k in range(3)]
    [6, 18, 12]
    """
    if not 0 <= k <= max(n - 1, 0):
        raise ValueError("need 0 <= k <= n-1")
    items = tuple(range(1, n + 1))
    out = []
    for parts in _ordered_partitions(items):
        for split in _compositions(k, len(parts)):
            choices = [_trees_on(tuple(sorted(p)), e) for p, e in zip(parts, split)]
            if any(not c for c in choices):
                continue
            for combo in itertools.product(*choices):
                out.append(PlanarForest(combo))
    out.sort(key=forest_key)
    return out


def catalan(n: int) -> int:
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


# ---------------------------------------------------------------------------
# canonical forms


def _subtree_key(s: Subtree):
    if isinstance(s, int):
        return (0, s)
    return (1, tuple(_subtree_key(c) for c in s))


def canon_tree_mod_flips(s: Subtree) -> Subtree:
    """Canonical representative of a tree modulo flips at all its edges.

    Flips generate an independent orientation choice at every internal
    vertex, so the bottom-up lexicographic minimum is canonical.
    """
    if isinstance(s, int):
        return s
    kids = tuple(canon_tree_mod_flips(c) for c in s)
    rev = tuple(reversed(kids))
    return min(kids, rev, key=lambda t: tuple(map(_subtree_key, t)))


def forest_key(f: PlanarForest):
    return tuple(_subtree_key(t) for t in f.trees)


def canon_forest(kind: str, f: PlanarForest, mod_flips: bool) -> PlanarForest:
    """Canonical form of a forest for a complex kind.

    kind "ordered" keeps the tree sequence, "unordered" sorts it, "cyclic"
    takes the minimal rotation.  With mod_flips, each tree is first reduced
    modulo flipping.
    """
    trees = list(f.trees)
    if mod_flips:
        trees = [canon_tree_mod_flips(t) for t in trees]
    if kind == "ordered":
        return PlanarForest(trees)
    if kind == "unordered":
        return PlanarForest(sorted(trees, key=_subtree_key))
    if kind == "cyclic":
        rots = [tuple(trees[i:] + trees[:i]) for i in range(len(trees))]
        best = min(rots, key=lambda ts: tuple(_subtree_key(t) for t in ts))
        return PlanarForest(best)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# serialization


def _subtree_to_newick(s: Subtree) -> str:
    if isinstance(s, int):
        return str(s)
    return "(" + ",".join(_subtree_to_newick(c) for c in s) + ")"


def forest_to_newick(f: PlanarForest) -> str:
    return ";".join(_subtree_to_newick(t) for t in f.trees)


def _parse_subtree(s: str, pos: int):
    """Parse one subtree; decorated groups come back as ("z", 1, kids)."""
    if s[pos] == "(":
        pos += 1
        kids = []
        while True:
            kid, pos = _parse_subtree(s, pos)
            kids.append(kid)
            if s[pos] == ",":
                pos += 1
                continue
            if s[pos] == ")":
                pos += 1
                break
        if s[pos : pos + 2] == ":0":
            return ("z", 1, tuple(kids)), pos + 2
        return tuple(kids), pos
    j = pos
    while j < len(s) and s[j].isdigit():
        j += 1
    if j == pos:
        raise ValueError(f"parse error at {pos} in {s!r}")
    return int(s[pos:j]), j


def forest_from_newick(text: str) -> PlanarForest:
    trees = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        t, pos = _parse_subtree(part, 0)
        if pos != len(part):
            raise ValueError(f"trailing characters in {part!r}")
        trees.append(t)
    return PlanarForest(trees)


def subtree_to_json(s: Subtree):
    if isinstance(s, int):
        return s
    return {"children": [subtree_to_json(c) for c in s]}


def forest_to_json(f: PlanarForest) -> str:
    return json.dumps({"trees": [subtree_to_json(t) for t in f.trees]})


def _subtree_from_json(d) -> Subtree:
    if isinstance(d, int):
        return d
    return tuple(_subtree_from_json(c) for c in d["children"])


def forest_from_json(text: str) -> PlanarForest:
    d = json.loads(text)
    return PlanarForest([_subtree_from_json(t) for t in d["trees"]])


# ---------------------------------------------------------------------------
# zero-decorated forests
#
# A z-subtree is int | ("z", flag, children) where flag marks the descending
# edge of this vertex as decorated.  The string tag keeps the encoding
# unambiguous.

ZSubtree = Union[int, tuple]


def z_from_plain(s: Subtree, zeros: FrozenSet[FrozenSet[int]]) -> ZSubtree:
    """Attach zero decorations (given as edge leaf sets) to a plain subtree."""
    if isinstance(s, int):
        return s
    flag = 1 if leafset(s) in zeros else 0
    return ("z", flag, tuple(z_from_plain(c, zeros) for c in s))


def z_strip(s: ZSubtree) -> Subtree:
    if isinstance(s, int):
        return s
    _, _, kids = s
    return tuple(z_strip(c) for c in kids)


def z_leafset(s: ZSubtree) -> FrozenSet[int]:
    return leafset(z_strip(s))


def z_mirror(s: ZSubtree) -> ZSubtree:
    if isinstance(s, int):
        return s
    _, flag, kids = s
    return ("z", flag, tuple(z_mirror(c) for c in reversed(kids)))


def _z_decorated(s: ZSubtree):
    if isinstance(s, int):
        return
    _, flag, kids = s
    if flag:
        yield z_leafset(s)
    for c in kids:
        yield from _z_decorated(c)


def _z_flip_at(s: ZSubtree, target: FrozenSet[int]) -> ZSubtree:
    if isinstance(s, int):
        return s
    _, flag, kids = s
    if z_leafset(s) == target:
        return z_mirror(s)
    return ("z", flag, tuple(_z_flip_at(c, target) for c in kids))


def _z_key(s: ZSubtree):
    if isinstance(s, int):
        return (0, s)
    _, flag, kids = s
    return (1, flag, tuple(_z_key(c) for c in kids))


def _z_canon_tree(t: ZSubtree) -> ZSubtree:
    """Minimum of the orbit under flips at decorated edges."""
    seen = {t}
    frontier = [t]
    while frontier:
        nxt = []
        for cur in frontier:
            for e in set(_z_decorated(cur)):
                v = _z_flip_at(cur, e)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return min(seen, key=_z_key)


@dataclass(frozen=True)
class PlanarForestWithZeros:
    """An unordered planar forest with zero-decorated internal edges, up to
    flipping at the decorated edges.  Stored canonically: minimum over the
    flip orbit, trees sorted."""

    trees: Tuple[ZSubtree, ...]

    def __init__(self, trees: Iterable[ZSubtree]):
        ts = sorted((_z_canon_tree(t) for t in trees), key=_z_key)
        labels = [x for t in ts for x in leaves(z_strip(t))]
        if len(labels) != len(set(labels)):
            raise ValueError("duplicate leaf labels")
        object.__setattr__(self, "trees", tuple(ts))

    @property
    def labels(self) -> FrozenSet[int]:
        return frozenset(x for t in self.trees for x in leaves(z_strip(t)))

    def decorated_edges(self) -> list[FrozenSet[int]]:
        out = []
        for t in self.trees:
            out.extend(_z_decorated(t))
        return out

    def undecorated_edges(self) -> list[FrozenSet[int]]:
        dec = set(self.decorated_edges())
        out = []
        for t in self.trees:
            for ls, _ in internal_nodes(z_strip(t)):
                if ls not in dec:
                    out.append(ls)
        return out

    def __str__(self):
        return ";".join(_z_to_newick(t) for t in self.trees)


def _z_to_newick(s: ZSubtree) -> str:
    if isinstance(s, int):
        return str(s)
    _, flag, kids = s
    body = "(" + ",".join(_z_to_newick(c) for c in kids) + ")"
    return body + ":0" if flag else body


def _z_normalise(s) -> ZSubtree:
    """Accept plain tuples (undecorated vertices) from the shared parser."""
    if isinstance(s, int):
        return s
    if isinstance(s, tuple) and len(s) == 3 and s[0] == "z":
        return ("z", s[1], tuple(_z_normalise(c) for c in s[2]))
    return ("z", 0, tuple(_z_normalise(c) for c in s))


def zforest_from_newick(text: str) -> PlanarForestWithZeros:
    trees = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        t, pos = _parse_subtree(part, 0)
        if pos != len(part):
            raise ValueError(f"trailing characters in {part!r}")
        trees.append(_z_normalise(t))
    return PlanarForestWithZeros(trees)


def zeros_to_planar(zf: PlanarForestWithZeros) -> PlanarForest:
    """Forget the decorations; the result is well defined modulo flipping, so
    it is returned in the fully flip-reduced unordered canonical form."""
    plain = PlanarForest([z_strip(t) for t in zf.trees])
    return canon_forest("unordered", plain, mod_flips=True)


def enumerate_zero_forests(n: int) -> list[PlanarForestWithZeros]:
    """All zero-decorated unordered planar forests labelled by [n]."""
    seen = set()
    out = []
    for k in range(n):
        for f in enumerate_planar_forests(n, k):
            edges = f.edges()
            for r in range(len(edges) + 1):
                for dec in itertools.combinations(edges, r):
                    zf = PlanarForestWithZeros(
                        [z_from_plain(t, frozenset(dec)) for t in f.trees]
                    )
                    if zf not in seen:
                        seen.add(zf)
                        out.append(zf)
    return out


# ---------------------------------------------------------------------------
# bushy forests


@dataclass(frozen=True)
class BushyForest:
    """A set of bushy rooted trees: each tree is the ordered tuple of subtrees
    hanging off its root (the root may have any degree >= 1).  Orders at
    non-root vertices are reduced modulo reversal; trees are sorted."""

    trees: Tuple[tuple, ...]

    def __init__(self, trees: Iterable[tuple]):
        ts = []
        for t in trees:
            if not isinstance(t, tuple) or len(t) < 1:
                raise ValueError("a bushy tree is a nonempty tuple of subtrees")
            ts.append(tuple(_bushy_canon(c) for c in t))
        ts.sort(key=lambda t: tuple(_subtree_key(c) for c in t))
        labels = [x for t in ts for c in t for x in leaves(c)]
        if len(labels) != len(set(labels)):
            raise ValueError("duplicate leaf labels")
        object.__setattr__(self, "trees", tuple(ts))

    @property
    def labels(self) -> FrozenSet[int]:
        return frozenset(x for t in self.trees for c in t for x in leaves(c))


def _bushy_canon(s: Subtree) -> Subtree:
    """Reduce orientations at non-root internal vertices, bottom-up."""
    if isinstance(s, int):
        return s
    kids = tuple(_bushy_canon(c) for c in s)
    rev = tuple(reversed(kids))
    return min(kids, rev, key=lambda t: tuple(map(_subtree_key, t)))


def zeros_to_bushy(zf: PlanarForestWithZeros) -> BushyForest:
    """Contract all undecorated internal edges, then erase the decorations."""
    return BushyForest([tuple(_bushy_contract(t)) for t in zf.trees])


def _bushy_contract(s: ZSubtree) -> list[Subtree]:
    """Children of the (merged) vertex at the bottom of this subtree.

    A decorated vertex survives; an undecorated vertex merges downward,
    contributing its recursively contracted children in order.
    """
    if isinstance(s, int):
        return [s]
    _, flag, kids = s
    spliced: list[Subtree] = []
    for c in kids:
        spliced.extend(_bushy_contract(c))
    if flag:
        assert len(spliced) >= 2
        return [tuple(spliced)]
    return spliced


def random_binary_tree(labels: Sequence[int], rng) -> Subtree:
    """A random planar binary tree on the given labels."""
    items: list[Subtree] = list(labels)
    rng.shuffle(items)
    while len(items) > 1:
        i = rng.randrange(len(items) - 1)
        pair = (items[i], items[i + 1])
        items[i : i + 2] = [pair]
    return items[0]


def is_binary(s: Subtree) -> bool:
    if isinstance(s, int):
        return True
    return len(s) == 2 and all(is_binary(c) for c in s)


def binary_refinement(s: Subtree) -> tuple[Subtree, list[FrozenSet[int]]]:
    """A planar binary tree refining s (left-comb expansion at each vertex),
    together with the list of edges added by the refinement.

    Collapsing the added edges recovers s, and the planar leaf order is
    unchanged.
    """
    added: list[FrozenSet[int]] = []

    def rec(t: Subtree) -> Subtree:
        if isinstance(t, int):
            return t
        kids = [rec(c) for c in t]
        while len(kids) > 2:
            pair = (kids[0], kids[1])
            added.append(leafset(pair))
            kids[0:2] = [pair]
        return tuple(kids)

    return rec(s), added
