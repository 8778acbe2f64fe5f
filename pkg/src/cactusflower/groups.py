"""Presentations of the cactus-family groups and evaluable homomorphisms.

Words are tuples of letters:

    ("s", i, j)    interval reverser; a standard generator needs i < j, the
                   affine family allows any i != j (cyclic intervals)
    ("w", perm)    an element of the symmetric-group letter copy
    ("a", perm)    the other symmetric-group copy (virtual symmetric words)
    ("r",)         the rotation of the extended (affine) groups
    ("sigma", k)   Coxeter generator of the affine symmetric group, k = 0..n-1
    ("sA", seq)    pure virtual cactus generator, seq an ordered subset
    ("sig", i, j)  pure virtual symmetric generator

The word problem is solved only where a faithful evaluation exists (symmetric,
affine symmetric, extended affine symmetric); elsewhere verification is by
bounded rewriting with an honest Inconclusive outcome.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

from .combinatorics import (
    AffinePermutation,
    CyclicInterval,
    ExtAffinePermutation,
    Permutation,
    affine_interval_reversal,
    all_permutations,
    interval_reversal,
    is_translation,
)

Letter = tuple
Word = Tuple[Letter, ...]

FAMILIES = (
    "cactus",
    "affine_cactus",
    "ext_affine_cactus",
    "virtual_cactus",
    "virtual_sym",
    "pure_virtual_cactus",
    "pure_virtual_sym",
)


def _cyc(i: int, k: int, n: int) -> int:
    """Index shift modulo n, writing n instead of 0."""
    return (i + k - 1) % n + 1


def shift_pair(i: int, j: int, k: int, n: int) -> tuple[int, int]:
    return _cyc(i, k, n), _cyc(j, k, n)


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    family: str
    n: int
    generators: Tuple[Letter, ...]
    relators: Tuple[Word, ...]
    # partner[g] is the designated inverse generator (g itself for involutions)
    partner: Tuple[Tuple[Letter, Letter], ...]

    def partner_of(self, g: Letter) -> Letter:
        return dict(self.partner)[g]

    def inverse_word(self, w: Word) -> Word:
        p = dict(self.partner)
        return tuple(p[x] for x in reversed(w))


def _letter_key(x: Letter):
    return tuple((0, t) if isinstance(t, int) else (1, str(t)) for t in x)


def _word_key(w: Word):
    return tuple(_letter_key(x) for x in w)


def canonical_cyclic(w: Word, partner: Dict[Letter, Letter]) -> Word:
    """Canonical form of a relator: minimum over rotations of the word and of
    its inverse (reverse with letters replaced by their partners)."""
    inv = tuple(partner[x] for x in reversed(w))
    cands = []
    for word in (w, inv):
        for k in range(len(word)):
            cands.append(word[k:] + word[:k])
    return min(cands, key=_word_key)


def _standard_pairs(n: int):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def _cyclic_pairs(n: int):
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def _cactus_relators(pairs, n: int, cyclic: bool) -> list[Word]:
    """The involution, disjointness and nesting relators on interval

    reversers; `pairs` fixes the generating set (standard or cyclic)."""
    rel: list[Word] = []
    gens = {p: ("s", *p) for p in pairs}
    for p in pairs:
        rel.append((gens[p], gens[p]))
    ivals = {p: CyclicInterval(p[0], p[1], n) for p in pairs}
    for p, q in itertools.combinations(pairs, 2):
        if not cyclic and not (p[0] < p[1] and q[0] < q[1]):
            continue
        ip, iq = ivals[p], ivals[q]
        if ip.as_set() & iq.as_set() == frozenset():
            rel.append((gens[p], gens[q], gens[p], gens[q]))
    for p in pairs:
        for q in pairs:
            if p == q:
                continue
            ip, iq = ivals[p], ivals[q]
            if iq.is_subinterval_of(ip):
                w = interval_reversal(p[0], p[1], n)
                image = (w(q[1]), w(q[0]))
                rel.append((gens[p], gens[q], gens[p], ("s", *image)))
    return rel


def _coxeter_sym_relators(tag: str, n: int) -> list[Word]:
    """Relators of the symmetric group on adjacent transpositions, with
    letters tagged by the copy they belong to."""
    rel: list[Word] = []
    for k in range(1, n):
        g = (tag, k)
        rel.append((g, g))
    for k in range(1, n - 1):
        a, b = (tag, k), (tag, k + 1)
        rel.append((a, b, a, b, a, b))
    for k in range(1, n):
        for l in range(k + 2, n):
            a, b = (tag, k), (tag, l)
            rel.append((a, b, a, b))
    return rel


def ordered_subsets(n: int, min_len: int = 2):
    for size in range(min_len, n + 1):
        for combo in itertools.permutations(range(1, n + 1), size):
            yield combo


def make_presentation(family: str, n: int) -> Presentation:
    """Generators and relators of one of the cactus-family groups.

    For the pure virtual cactus group the commuting relation is imposed for
    disjoint pairs {A, B} and the exchange relation for pairwise disjoint
    triples {A, B, C} (with B, C allowed empty but not both); this is the
    reading that matches the boundary squares of the quotient cube complex.

    >>> make_presentation("cactus", 3).generators
    (('s', 1, 2), ('s', 1, 3), ('s', 2, 3))
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if n < 2:
        raise ValueError("need n >= 2")

    if family == "cactus":
        pairs = _standard_pairs(n)
        gens = tuple(("s", *p) for p in pairs)
        rel = _cactus_relators(pairs, n, cyclic=False)
        partner = tuple((g, g) for g in gens)
        return Presentation(family, n, gens, tuple(rel), partner)

    if family == "affine_cactus":
        pairs = _cyclic_pairs(n)
        gens = tuple(("s", *p) for p in pairs)
        rel = _cactus_relators(pairs, n, cyclic=True)
        partner = tuple((g, g) for g in gens)
        return Presentation(family, n, gens, tuple(rel), partner)

    if family == "ext_affine_cactus":
        base = make_presentation("affine_cactus", n)
        r = ("r",)
        rinv = ("r-",)
        gens = base.generators + (r, rinv)
        rel = list(base.relators)
        rel.append(tuple([r] * n))
        rel.append((r, rinv))
        for (i, j) in _cyclic_pairs(n):
            i2, j2 = shift_pair(i, j, 1, n)
            rel.append((r, ("s", i, j), rinv, ("s", i2, j2)))
        partner = tuple((g, g) for g in base.generators) + ((r, rinv), (rinv, r))
        return Presentation(family, n, gens, tuple(rel), partner)

    if family == "virtual_sym":
        rel = _coxeter_sym_relators("a", n) + _coxeter_sym_relators("b", n)
        for w in all_permutations(n):
            for k in range(1, n):
                if w(k + 1) == w(k) + 1:
                    bw = _sym_word("b", w)
                    bwi = _sym_word("b", w.inverse())
                    rel.append(bw + (("a", k),) + bwi + (("a", w(k)),))
        gens = tuple(("a", k) for k in range(1, n)) + tuple(("b", k) for k in range(1, n))
        partner = tuple((g, g) for g in gens)
        return Presentation(family, n, gens, tuple(rel), partner)

    if family == "virtual_cactus":
        pairs = _standard_pairs(n)
        rel = _cactus_relators(pairs, n, cyclic=False)
        rel += _coxeter_sym_relators("b", n)
        for (i, j) in pairs:
            for w in all_permutations(n):
                if w.is_identity() or not is_translation(w, i, j):
                    continue
                bw = _sym_word("b", w)
                bwi = _sym_word("b", w.inverse())
                rel.append(bw + (("s", i, j),) + bwi + (("s", w(i), w(j)),))
        gens = tuple(("s", *p) for p in pairs) + tuple(("b", k) for k in range(1, n))
        partner = tuple((g, g) for g in gens)
        return Presentation(family, n, gens, tuple(rel), partner)

    if family == "pure_virtual_sym":
        gens = tuple(("sig", i, j) for (i, j) in _cyclic_pairs(n))
        partner_d = {("sig", i, j): ("sig", j, i) for (i, j) in _cyclic_pairs(n)}
        rels = set()
        for (i, j) in _cyclic_pairs(n):
            for (l, m) in _cyclic_pairs(n):
                if {i, j} & {l, m}:
                    continue
                w = (("sig", i, j), ("sig", l, m), ("sig", j, i), ("sig", m, l))
                rels.add(canonical_cyclic(w, partner_d))
        for i, j, l in itertools.permutations(range(1, n + 1), 3):
            w = (
                ("sig", i, j), ("sig", i, l), ("sig", j, l),
                ("sig", j, i), ("sig", l, i), ("sig", l, j),
            )
            rels.add(canonical_cyclic(w, partner_d))
        return Presentation(
            family, n, gens, tuple(sorted(rels, key=_word_key)), tuple(partner_d.items())
        )

    if family == "pure_virtual_cactus":
        gens = tuple(("sA", a) for a in ordered_subsets(n))
        partner_d = {("sA", a): ("sA", tuple(reversed(a))) for a in ordered_subsets(n)}
        rels = set()
        subsets = list(ordered_subsets(n))
        for a in subsets:
            for b in subsets:
                if set(a) & set(b):
                    continue
                w = (("sA", a), ("sA", b), partner_d[("sA", a)], partner_d[("sA", b)])
                rels.add(canonical_cyclic(w, partner_d))
        # nesting: A inside the context (C, ..., B); C and B may be empty but
        # not both, and the whole ordered subset C A B stays inside [n]
        for a in subsets:
            rest = [x for x in range(1, n + 1) if x not in a]
            for csize in range(len(rest) + 1):
                for c in itertools.permutations(rest, csize):
                    left = [x for x in rest if x not in c]
                    for bsize in range(len(left) + 1):
                        if csize + bsize == 0:
                            continue
                        for b in itertools.permutations(left, bsize):
                            ar = tuple(reversed(a))
                            cab = c + a + b
                            bracr = tuple(reversed(b)) + a + tuple(reversed(c))
                            w = (("sA", ar), ("sA", cab), ("sA", ar), ("sA", bracr))
                            rels.add(canonical_cyclic(w, partner_d))
        return Presentation(
            family, n, gens, tuple(sorted(rels, key=_word_key)), tuple(partner_d.items())
        )

    raise AssertionError


def _sym_word(tag: str, w: Permutation) -> Word:
    """A fixed reduced word for w in adjacent transpositions (bubble sort)."""
    images = list(w.images)
    out = []
    changed = True
    while changed:
        changed = False
        for k in range(len(images) - 1):
            if images[k] > images[k + 1]:
                images[k], images[k + 1] = images[k + 1], images[k]
                out.append((tag, k + 1))
                changed = True
    # out sorts w to the identity multiplying on the right; reversal gives w
    return tuple(reversed(out))


def ac_rotate_generator(i: int, j: int, n: int) -> tuple[int, int]:
    """The rotation action r . s_ij = s_{i+1, j+1} (indices mod n)."""
    return shift_pair(i, j, 1, n)


# ---------------------------------------------------------------------------
# evaluation into solvable targets


def eval_letter_sym(x: Letter, n: int) -> Permutation:
    kind = x[0]
    if kind == "s":
        return interval_reversal(x[1], x[2], n)
    if kind in ("w", "a", "b"):
        if isinstance(x[1], Permutation):
            return x[1]
        return Permutation.transposition(n, x[1], x[1] + 1)
    if kind == "sigma":
        k = x[1]
        if k == 0:
            return Permutation.transposition(n, 1, n)
        return Permutation.transposition(n, k, k + 1)
    if kind == "r":
        return Permutation.long_cycle(n)
    if kind == "r-":
        return Permutation.long_cycle(n).inverse()
    if kind in ("sA", "sig"):
        return Permutation.identity(n)
    raise ValueError(f"letter {x!r} has no symmetric-group shadow")


def eval_word_sym(w: Word, n: int) -> Permutation:
    out = Permutation.identity(n)
    for x in w:
        out = out * eval_letter_sym(x, n)
    return out


def affine_sigma(k: int, n: int) -> AffinePermutation:
    if k == 0:
        win = list(range(1, n + 1))
        win[0], win[n - 1] = 0, n + 1
        return AffinePermutation(tuple(win))
    win = list(range(1, n + 1))
    win[k - 1], win[k] = k + 1, k
    return AffinePermutation(tuple(win))


def eval_letter_affine(x: Letter, n: int) -> AffinePermutation:
    kind = x[0]
    if kind == "s":
        return affine_interval_reversal(x[1], x[2], n)
    if kind == "sigma":
        return affine_sigma(x[1], n)
    if kind in ("w", "a", "b"):
        return AffinePermutation.from_permutation(eval_letter_sym(x, n))
    raise ValueError(f"letter {x!r} has no affine evaluation")


def eval_word_affine(w: Word, n: int) -> AffinePermutation:
    out = AffinePermutation.identity(n)
    for x in w:
        out = out * eval_letter_affine(x, n)
    return out


def eval_letter_ext_affine(x: Letter, n: int) -> ExtAffinePermutation:
    if x[0] == "r":
        return ExtAffinePermutation(AffinePermutation.identity(n), 1)
    if x[0] == "r-":
        return ExtAffinePermutation(AffinePermutation.identity(n), -1)
    return ExtAffinePermutation(eval_letter_affine(x, n), 0)


def eval_word_ext_affine(w: Word, n: int) -> ExtAffinePermutation:
    out = ExtAffinePermutation.identity(n)
    for x in w:
        out = out * eval_letter_ext_affine(x, n)
    return out


# ---------------------------------------------------------------------------
# homomorphisms

GROUPS = ("C", "AC", "EAC", "vC", "vS", "S", "AS", "EAS", "PvC", "PvS")

_DIAGRAM_ARROWS = {
    ("C", "S"), ("C", "EAC"),
    ("AC", "AS"), ("AC", "S"), ("AC", "vC"),
    ("EAC", "vC"), ("EAC", "EAS"), ("EAC", "S"),
    ("EAS", "vS"), ("EAS", "S"),
    ("vC", "vS"), ("vC", "S"),
    ("vS", "S"),
    ("S", "EAS"), ("S", "S"),
}


@dataclass(frozen=True)
class GroupHom:
    source: str
    target: str
    n: int
    images: Tuple[Tuple[Letter, object], ...]

    def image_of(self, g: Letter):
        return dict(self.images)[g]

    def map_word(self, w: Word) -> Word:
        """Substitute generator images (for presentation targets)."""
        out: list[Letter] = []
        table = dict(self.images)
        for x in w:
            img = table.get(x)
            if img is None:
                img = _generic_letter_image(self.source, self.target, x, self.n)
            out.extend(img)
        return tuple(out)


def _generic_letter_image(source: str, target: str, x: Letter, n: int):
    """Images of letters outside the finite generator table: symmetric-copy
    letters map across by relabelling."""
    if x[0] == "w" and target in ("vC", "vS"):
        return (("w", x[1]),)
    if x[0] == "b" and target in ("vC", "vS"):
        return (("w", Permutation.transposition(n, x[1], x[1] + 1)),)
    raise KeyError(x)


def hom(pair: tuple[str, str], n: int) -> GroupHom:
    """The named arrow of the group diagram, as a generator-image table."""
    src, dst = pair
    if (src, dst) not in _DIAGRAM_ARROWS:
        raise ValueError(f"arrow {src} -> {dst} is not in the diagram")
    images: dict[Letter, object] = {}

    if (src, dst) == ("C", "S"):
        for (i, j) in _standard_pairs(n):
            images[("s", i, j)] = interval_reversal(i, j, n)
    elif (src, dst) == ("AC", "AS"):
        for (i, j) in _cyclic_pairs(n):
            images[("s", i, j)] = affine_interval_reversal(i, j, n)
    elif (src, dst) == ("AC", "S"):
        for (i, j) in _cyclic_pairs(n):
            images[("s", i, j)] = interval_reversal(i, j, n)
    elif (src, dst) == ("C", "EAC"):
        for (i, j) in _standard_pairs(n):
            images[("s", i, j)] = (("s", i, j),)
    elif (src, dst) in (("AC", "vC"), ("EAC", "vC")):
        r = Permutation.long_cycle(n)
        for (i, j) in _cyclic_pairs(n):
            if i < j:
                images[("s", i, j)] = (("s", i, j),)
            else:
                i2, j2 = shift_pair(i, j, -(i - 1), n)
                assert i2 == 1 and i2 < j2
                images[("s", i, j)] = (
                    ("w", r ** (i - 1)), ("s", i2, j2), ("w", r ** (1 - i)),
                )
        if src == "EAC":
            images[("r",)] = (("w", r),)
            images[("r-",)] = (("w", r.inverse()),)
    elif (src, dst) == ("EAC", "EAS"):
        for (i, j) in _cyclic_pairs(n):
            images[("s", i, j)] = ExtAffinePermutation(
                affine_interval_reversal(i, j, n), 0
            )
        images[("r",)] = ExtAffinePermutation(AffinePermutation.identity(n), 1)
        images[("r-",)] = ExtAffinePermutation(AffinePermutation.identity(n), -1)
    elif (src, dst) == ("EAC", "S"):
        for (i, j) in _cyclic_pairs(n):
            images[("s", i, j)] = interval_reversal(i, j, n)
        images[("r",)] = Permutation.long_cycle(n)
        images[("r-",)] = Permutation.long_cycle(n).inverse()
    elif (src, dst) == ("EAS", "vS"):
        r = Permutation.long_cycle(n)
        for k in range(1, n):
            images[("sigma", k)] = (("a", Permutation.transposition(n, k, k + 1)),)
        images[("sigma", 0)] = (
            ("w", r.inverse()),
            ("a", Permutation.transposition(n, 1, 2)),
            ("w", r),
        )
        images[("r",)] = (("w", r),)
    elif (src, dst) == ("EAS", "S"):
        for k in range(1, n):
            images[("sigma", k)] = Permutation.transposition(n, k, k + 1)
        images[("sigma", 0)] = Permutation.transposition(n, 1, n)
        images[("r",)] = Permutation.long_cycle(n)
    elif (src, dst) == ("vC", "vS"):
        for (i, j) in _standard_pairs(n):
            images[("s", i, j)] = (("a", interval_reversal(i, j, n)),)
        for k in range(1, n):
            images[("b", k)] = (("w", Permutation.transposition(n, k, k + 1)),)
    elif (src, dst) == ("vC", "S"):
        for (i, j) in _standard_pairs(n):
            images[("s", i, j)] = interval_reversal(i, j, n)
        for k in range(1, n):
            images[("b", k)] = Permutation.transposition(n, k, k + 1)
    elif (src, dst) == ("vS", "S"):
        for k in range(1, n):
            images[("a", k)] = Permutation.transposition(n, k, k + 1)
            images[("b", k)] = Permutation.transposition(n, k, k + 1)
    elif (src, dst) == ("S", "EAS"):
        for k in range(1, n):
            images[("sigma", k)] = ExtAffinePermutation(
                AffinePermutation.from_permutation(
                    Permutation.transposition(n, k, k + 1)
                ),
                0,
            )
    elif (src, dst) == ("S", "S"):
        for k in range(1, n):
            images[("sigma", k)] = Permutation.transposition(n, k, k + 1)
    return GroupHom(src, dst, n, tuple(sorted(images.items(), key=lambda kv: _letter_key(kv[0]))))


# ---------------------------------------------------------------------------
# verification


@dataclass
class HomReport:
    hom: GroupHom
    results: list = field(default_factory=list)  # (relator, status, witness)

    @property
    def all_proven(self) -> bool:
        return all(st == "proven" for _, st, _ in self.results)

    @property
    def failures(self):
        return [r for r in self.results if r[1] == "failed"]

    @property
    def inconclusive(self):
        return [r for r in self.results if r[1] == "inconclusive"]

    def __str__(self):
        counts = {}
        for _, st, _ in self.results:
            counts[st] = counts.get(st, 0) + 1
        return f"{self.hom.source}->{self.hom.target} n={self.hom.n}: {counts}"


SOLVABLE_TARGETS = ("S", "AS", "EAS")


def verify_hom(h: GroupHom, mode="solvable_target", depth: int = 6) -> HomReport:
    """Check that every relator of the source maps to the identity.

    For solvable targets the check is complete (evaluation).  Otherwise each
    relator image is attacked by bounded rewriting: a non-identity
    symmetric-group shadow is a definite failure; otherwise the status is
    proven or inconclusive, never a false negative.
    """
    pres = make_presentation(_family_of(h.source), h.n)
    report = HomReport(h)
    if mode == "solvable_target":
        if h.target not in SOLVABLE_TARGETS:
            raise ValueError(f"target {h.target} has no evaluation; use bounded_rewrite")
        for rel in pres.relators:
            img = [h.image_of(x) for x in rel]
            acc = img[0]
            for x in img[1:]:
                acc = acc * x
            ok = acc.is_identity()
            report.results.append((rel, "proven" if ok else "failed", None if ok else acc))
        return report
    if mode == "bounded_rewrite":
        if h.target not in ("vC", "vS"):
            raise ValueError("bounded rewriting targets a presentation")
        for rel in pres.relators:
            word = h.map_word(rel)
            shadow = eval_word_sym(word, h.n)
            if not shadow.is_identity():
                report.results.append((rel, "failed", shadow))
                continue
            ok = rewrite_to_identity(word, h.n, depth=depth, flavour=h.target)
            report.results.append((rel, "proven" if ok else "inconclusive", None))
        return report
    raise ValueError(f"unknown mode {mode!r}")


def _family_of(code: str) -> str:
    return {
        "C": "cactus",
        "AC": "affine_cactus",
        "EAC": "ext_affine_cactus",
        "vC": "virtual_cactus",
        "vS": "virtual_sym",
        "PvC": "pure_virtual_cactus",
        "PvS": "pure_virtual_sym",
    }[code]


# ---------------------------------------------------------------------------
# bounded rewriting in the virtual groups


def normalise_vc(word: Word) -> Word:
    """Merge symmetric letters, drop identities, cancel doubled involutions."""
    out: list[Letter] = []
    for x in word:
        if x[0] in ("w", "a"):
            if x[1].is_identity():
                continue
            if out and out[-1][0] == x[0]:
                merged = out[-1][1] * x[1]
                out.pop()
                if not merged.is_identity():
                    out.append((x[0], merged))
                # a cancellation may expose a doubled involution
                while len(out) >= 2 and out[-1] == out[-2] and out[-1][0] == "s":
                    out.pop()
                    out.pop()
                continue
            out.append(x)
        else:
            if out and out[-1] == x and x[0] == "s":
                out.pop()
                while (
                    len(out) >= 2
                    and out[-1] == out[-2]
                    and out[-1][0] == "s"
                ):
                    out.pop()
                    out.pop()
                continue
            out.append(x)
    return tuple(out)


def _vc_pair_moves(x: Letter, y: Letter, n: int):
    """Rewrites of an adjacent pair of letters in a virtual cactus word."""
    # disjoint commutation and nesting between interval reversers
    if x[0] == "s" and y[0] == "s":
        (i, j), (k, l) = (x[1], x[2]), (y[1], y[2])
        si, sj = set(range(i, j + 1)), set(range(k, l + 1))
        if not si & sj:
            yield (y, x)
        if si > sj:
            w = interval_reversal(i, j, n)
            yield (("s", w(l), w(k)), x)
        if sj > si:
            w = interval_reversal(k, l, n)
            yield (y, ("s", w(j), w(i)))
    # translation relations across a symmetric letter
    if x[0] == "w" and y[0] == "s":
        u, (i, j) = x[1], (y[1], y[2])
        if is_translation(u, i, j):
            yield (("s", u(i), u(j)), x)
    if x[0] == "s" and y[0] == "w":
        u, (i, j) = y[1], (x[1], x[2])
        ui, uj = u.inverse()(i), u.inverse()(j)
        if ui < uj and uj - ui == j - i and is_translation(u, ui, uj):
            yield (y, ("s", ui, uj))


def _vs_pair_moves(x: Letter, y: Letter, n: int):
    """Rewrites for virtual symmetric words (whole-permutation letters)."""
    if x[0] == "w" and y[0] == "a":
        u, p = x[1], y[1]
        # u p u^{-1} = u(p) whenever p reverses an interval u translates; the
        # basic case of an adjacent transposition suffices for our chains
        for k in range(1, n):
            if p == Permutation.transposition(n, k, k + 1) and u(k + 1) == u(k) + 1:
                yield (("a", Permutation.transposition(n, u(k), u(k) + 1)), x)
    if x[0] == "a" and y[0] == "w":
        p, u = x[1], y[1]
        for k in range(1, n):
            t = Permutation.transposition(n, k, k + 1)
            if u(k + 1) == u(k) + 1 and p == Permutation.transposition(n, u(k), u(k) + 1):
                yield (y, ("a", t))


def rewrite_to_identity(
    word: Word, n: int, depth: int = 6, flavour: str = "vC", max_states: int = 200000
) -> bool:
    """Breadth-first search for a proof that the word is trivial.

    Moves apply one defining relation at one position; symmetric-group
    bookkeeping (merging adjacent permutation letters, cancelling doubled
    involutions) is free.  Returns True iff the empty word is reached within
    the depth bound; False is honest ignorance, not a disproof.
    """
    start = normalise_vc(word)
    if not start:
        return True
    pair_moves = _vc_pair_moves if flavour == "vC" else _vs_pair_moves
    seen = {start}
    frontier = [start]
    maxlen = len(start) + 4
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for pos in range(len(w) - 1):
                for rep in pair_moves(w[pos], w[pos + 1], n):
                    cand = normalise_vc(w[:pos] + rep + w[pos + 2 :])
                    if not cand:
                        return True
                    if len(cand) <= maxlen and cand not in seen:
                        seen.add(cand)
                        nxt.append(cand)
                        if len(seen) > max_states:
                            return False
        frontier = nxt
    return False


# ---------------------------------------------------------------------------
# pure generators and the semidirect actions


def _witness_for_pair(i: int, j: int, n: int) -> Permutation:
    rest = [x for x in range(1, n + 1) if x not in (i, j)]
    return Permutation(tuple([i, j] + rest))


def pure_generator(family: str, data, n: int, witness=None) -> Word:
    """The pure generators as words in the ambient virtual group.

    pure_virtual_sym: data = (i, j), word w sigma_k w_{k,k+1} w^{-1};
    pure_virtual_cactus: data = ordered subset A, word w s_{ij} w_{ij} w^{-1}.
    The default witness places the data at the left edge.
    """
    if family == "pure_virtual_sym":
        i, j = data
        if i == j:
            raise ValueError("need distinct indices")
        if witness is None:
            w, k = _witness_for_pair(i, j, n), 1
        else:
            w, k = witness
            if (w(k), w(k + 1)) != (i, j):
                raise ValueError("witness does not present the pair")
        t = Permutation.transposition(n, k, k + 1)
        return normalise_vc((("w", w), ("a", t), ("w", t), ("w", w.inverse())))
    if family == "pure_virtual_cactus":
        a = tuple(data)
        if len(set(a)) != len(a) or len(a) < 2:
            raise ValueError("ordered subset needs >= 2 distinct entries")
        if witness is None:
            rest = [x for x in range(1, n + 1) if x not in a]
            w, i, j = Permutation(tuple(list(a) + rest)), 1, len(a)
        else:
            w, i, j = witness
            if tuple(w(i + t) for t in range(j - i + 1)) != a:
                raise ValueError("witness does not present the ordered subset")
        wij = interval_reversal(i, j, n)
        return normalise_vc(
            (("w", w), ("s", i, j), ("w", wij), ("w", w.inverse()))
        )
    raise ValueError(f"unknown pure family {family!r}")


def semidirect_action(u: Permutation, family: str, data):
    """Relabelling action on pure generator indices: u . s_A = s_{u(A)} and
    u . sigma_ij = sigma_{u(i) u(j)}."""
    if family == "pure_virtual_sym":
        i, j = data
        return (u(i), u(j))
    if family == "pure_virtual_cactus":
        return tuple(u(x) for x in data)
    raise ValueError(f"unknown pure family {family!r}")


# ---------------------------------------------------------------------------
# word syntax and presentation dumps


def format_word(word: Word) -> str:
    """Render a word in the text syntax: s[1,3] w(2 3 1) r^2 s[A:1,4,2]."""
    out = []
    i = 0
    while i < len(word):
        x = word[i]
        if x[0] == "s":
            out.append(f"s[{x[1]},{x[2]}]")
        elif x[0] == "sA":
            out.append("s[A:" + ",".join(map(str, x[1])) + "]")
        elif x[0] == "sig":
            out.append(f"sig[{x[1]},{x[2]}]")
        elif x[0] in ("w", "a"):
            tag = x[0]
            out.append(f"{tag}(" + " ".join(map(str, x[1].images)) + ")")
        elif x[0] in ("r", "r-"):
            k = 0
            while i < len(word) and word[i][0] in ("r", "r-"):
                k += 1 if word[i][0] == "r" else -1
                i += 1
            i -= 1
            out.append("r" if k == 1 else f"r^{k}")
        elif x[0] in ("sigma", "b"):
            out.append(f"{x[0]}[{x[1]}]")
        else:
            raise ValueError(f"cannot format letter {x!r}")
        i += 1
    return " ".join(out)


_TOKEN_RE = None


def _word_tokens(text: str) -> list[str]:
    global _TOKEN_RE
    if _TOKEN_RE is None:
        import re

        _TOKEN_RE = re.compile(
            r"s\[A:[\d,]+\]|s\[\d+,\d+\]|sig\[\d+,\d+\]|[wa]\([\d ]+\)"
            r"|sigma\[\d+\]|b\[\d+\]|r\^-?\d+|r\b"
        )
    tokens = _TOKEN_RE.findall(text)
    if "".join(tokens).replace(" ", "") != text.replace(" ", ""):
        raise ValueError(f"cannot parse word {text!r}")
    return tokens


def parse_word(text: str) -> Word:
    """Parse the text word syntax back into letters."""
    out: list[Letter] = []
    for tok in _word_tokens(text):
        if tok.startswith("s[A:"):
            seq = tuple(int(v) for v in tok[4:-1].split(","))
            out.append(("sA", seq))
        elif tok.startswith("s["):
            i, j = (int(v) for v in tok[2:-1].split(","))
            out.append(("s", i, j))
        elif tok.startswith("sig["):
            i, j = (int(v) for v in tok[4:-1].split(","))
            out.append(("sig", i, j))
        elif tok.startswith(("w(", "a(")):
            images = tuple(int(v) for v in tok[2:-1].split())
            out.append((tok[0], Permutation(images)))
        elif tok.startswith(("sigma[", "b[")):
            tag, rest = tok.split("[")
            out.append((tag, int(rest[:-1])))
        elif tok == "r":
            out.append(("r",))
        elif tok.startswith("r^"):
            k = int(tok[2:])
            out.extend([("r",) if k > 0 else ("r-",)] * abs(k))
        else:
            raise ValueError(f"cannot parse token {tok!r}")
    return tuple(out)


def presentation_to_json(p: Presentation) -> str:
    import json

    return json.dumps(
        {
            "family": p.family,
            "n": p.n,
            "generators": [format_word((g,)) for g in p.generators],
            "relators": [format_word(r) for r in p.relators],
        },
        sort_keys=True,
    )


# ---------------------------------------------------------------------------
# the diagram of groups


def generators_of(code: str, n: int) -> list[Letter]:
    if code == "C":
        return [("s", i, j) for (i, j) in _standard_pairs(n)]
    if code == "AC":
        return [("s", i, j) for (i, j) in _cyclic_pairs(n)]
    if code == "EAC":
        return [("s", i, j) for (i, j) in _cyclic_pairs(n)] + [("r",)]
    if code == "EAS":
        return [("sigma", k) for k in range(n)] + [("r",)]
    if code == "AS":
        return [("sigma", k) for k in range(n)]
    if code == "S":
        return [("sigma", k) for k in range(1, n)]
    if code == "vC":
        return [("s", i, j) for (i, j) in _standard_pairs(n)] + [
            ("b", k) for k in range(1, n)
        ]
    if code == "vS":
        return [("a", k) for k in range(1, n)] + [("b", k) for k in range(1, n)]
    raise ValueError(code)


def _as_word(img) -> Word:
    return img if isinstance(img, tuple) and (not img or isinstance(img[0], tuple)) else None


def push_word(word: Word, arrow: tuple[str, str], n: int) -> Word:
    """Map a word through an arrow whose target is a presentation."""
    return hom(arrow, n).map_word(word)


def evaluate_word(code: str, word: Word, n: int):
    if code == "S":
        return eval_word_sym(word, n)
    if code == "AS":
        return eval_word_affine(word, n)
    if code == "EAS":
        return eval_word_ext_affine(word, n)
    raise ValueError(f"{code} is not a solvable evaluation target")


def _project_solvable(src: str, dst: str, x, n: int):
    if (src, dst) == ("EAS", "S"):
        return x.to_symmetric()
    if (src, dst) == ("AS", "S"):
        return x.reduce_mod_n()
    if (src, dst) == ("S", "EAS"):
        return ExtAffinePermutation(AffinePermutation.from_permutation(x), 0)
    if (src, dst) == ("S", "S"):
        return x
    raise ValueError(f"no concrete projection {src} -> {dst}")


def evaluate_path(word: Word, path: list[tuple[str, str]], n: int):
    """Map a word along a chain of diagram arrows.

    While the targets are presentations, the word is rewritten by generator
    substitution; at the first solvable target it is evaluated, and any
    remaining arrows must be concrete projections between solvable groups.
    """
    element = None
    for (src, dst) in path:
        if element is not None:
            element = _project_solvable(src, dst, element, n)
            continue
        if dst in SOLVABLE_TARGETS:
            h = hom((src, dst), n)
            table = dict(h.images)
            acc = None
            for x in word:
                img = table.get(x)
                if img is None:
                    if x[0] not in ("w", "a", "b"):
                        raise KeyError(x)
                    img = evaluate_word(dst, (x,), n)
                acc = img if acc is None else acc * img
            element = acc if acc is not None else evaluate_word(dst, (), n)
        else:
            word = push_word(word, (src, dst), n)
    if element is None:
        raise ValueError("path must end in a solvable group")
    return element


# every composable chain of diagram arrows from each source into S_n, plus
# the two routes from the cactus group into the extended affine symmetric
DIAGRAM_PATHS_TO_S = {
    "C": [
        [("C", "S")],
        [("C", "EAC"), ("EAC", "S")],
        [("C", "EAC"), ("EAC", "vC"), ("vC", "S")],
        [("C", "EAC"), ("EAC", "EAS"), ("EAS", "S")],
        [("C", "EAC"), ("EAC", "vC"), ("vC", "vS"), ("vS", "S")],
    ],
    "AC": [
        [("AC", "S")],
        [("AC", "vC"), ("vC", "S")],
        [("AC", "AS"), ("AS", "S")],
        [("AC", "vC"), ("vC", "vS"), ("vS", "S")],
    ],
    "EAC": [
        [("EAC", "S")],
        [("EAC", "vC"), ("vC", "S")],
        [("EAC", "EAS"), ("EAS", "S")],
        [("EAC", "vC"), ("vC", "vS"), ("vS", "S")],
    ],
    "EAS": [[("EAS", "S")], [("EAS", "vS"), ("vS", "S")]],
    "vC": [[("vC", "S")], [("vC", "vS"), ("vS", "S")]],
    "S": [[("S", "S")], [("S", "EAS"), ("EAS", "S")]],
}

DIAGRAM_PATHS_TO_EAS = {
    "C": [
        [("C", "EAC"), ("EAC", "EAS")],
        [("C", "S"), ("S", "EAS")],
    ],
}


def diagram_report(n: int) -> list[tuple[str, Letter, bool]]:
    """Commutativity of the diagram of groups on all generators, judged by
    evaluation in the symmetric group (all six sources) and additionally in
    the extended affine symmetric group where two routes exist."""
    out = []
    for src, paths in DIAGRAM_PATHS_TO_S.items():
        for g in generators_of(src, n):
            vals = [evaluate_path((g,), path, n) for path in paths]
            ok = all(v.images == vals[0].images for v in vals)
            out.append((src, g, ok))
    for src, paths in DIAGRAM_PATHS_TO_EAS.items():
        for g in generators_of(src, n):
            vals = [evaluate_path((g,), path, n) for path in paths]
            ok = all(
                v.base == vals[0].base and v.shift == vals[0].shift for v in vals
            )
            out.append((src + "=>EAS", g, ok))
    return out


def diagram_commutes(n: int) -> bool:
    return all(ok for _, _, ok in diagram_report(n))


# A separating quotient for witness checks: the symmetric group acting on the
# rank-one lattice spanned by ordered pairs with e_ji = -e_ij.


def _transposition_word(p: Permutation) -> list[int]:
    images = list(p.images)
    out = []
    changed = True
    while changed:
        changed = False
        for k in range(len(images) - 1):
            if images[k] > images[k + 1]:
                images[k], images[k + 1] = images[k + 1], images[k]
                out.append(k + 1)
                changed = True
    return list(reversed(out))


def _pair_vec_add(acc: dict, key: tuple[int, int], sign: int):
    a, b = key
    if a > b:
        a, b, sign = b, a, -sign
    acc[(a, b)] = acc.get((a, b), 0) + sign
    if acc[(a, b)] == 0:
        del acc[(a, b)]


def vs_lattice_image(word: Word, n: int):
    """Image in the semidirect product of S_n with the pair lattice.

    The sigma-copy generator at k maps to (transposition, e_{k,k+1}); the
    other copy acts by relabelling only.  This quotient separates the pure
    generators sigma_ij by their lattice coordinates.
    """
    u = Permutation.identity(n)
    vec: dict = {}
    for x in word:
        if x[0] in ("w", "b-perm"):
            u = u * x[1]
        elif x[0] == "b":
            u = u * Permutation.transposition(n, x[1], x[1] + 1)
        elif x[0] == "a":
            for k in _transposition_word(x[1]):
                _pair_vec_add(vec, (u(k), u(k + 1)), 1)
                u = u * Permutation.transposition(n, k, k + 1)
        elif x[0] == "s":
            i, j = x[1], x[2]
            for k in _transposition_word(interval_reversal(i, j, n)):
                _pair_vec_add(vec, (u(k), u(k + 1)), 1)
                u = u * Permutation.transposition(n, k, k + 1)
        else:
            raise ValueError(f"letter {x!r} not supported in the quotient")
    return u, tuple(sorted(vec.items()))
