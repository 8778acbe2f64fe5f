import random

import pytest

from cactusflower.combinatorics import (
    AffinePermutation,
    ExtAffinePermutation,
    Permutation,
)
from cactusflower.groups import (
    GroupHom,
    canonical_cyclic,
    diagram_commutes,
    diagram_report,
    eval_word_affine,
    eval_word_ext_affine,
    eval_word_sym,
    generators_of,
    hom,
    make_presentation,
    normalise_vc,
    pure_generator,
    rewrite_to_identity,
    semidirect_action,
    shift_pair,
    verify_hom,
    vs_lattice_image,
)


def test_affine_cactus_3_relators():
    p = make_presentation("affine_cactus", 3)
    # the wrapped-interval nesting: s13 s12 = s23 s13
    assert (("s", 1, 3), ("s", 1, 2), ("s", 1, 3), ("s", 2, 3)) in p.relators
    assert len(p.generators) == 6


def test_affine_cactus_2_is_free_product_of_involutions():
    p = make_presentation("affine_cactus", 2)
    assert len(p.generators) == 2
    assert all(len(r) == 2 and r[0] == r[1] for r in p.relators)


def test_cactus_generator_count():
    for n in range(2, 7):
        p = make_presentation("cactus", n)
        assert len(p.generators) == n * (n - 1) // 2


def test_unknown_family_rejected():
    with pytest.raises(ValueError):
        make_presentation("coxeter", 3)
    with pytest.raises(ValueError):
        hom(("C", "AC"), 3)


def test_hom_examples():
    h = hom(("EAC", "vC"), 4)
    assert h.image_of(("s", 1, 3)) == (("s", 1, 3),)
    # the wrapped generator conjugates a standard one by the rotation
    img = h.image_of(("s", 3, 1))
    assert img[0][0] == "w" and img[1] == ("s", 1, 3) and img[2][0] == "w"
    # its affine image squares to the identity
    h2 = hom(("AC", "AS"), 3)
    word = (("s", 1, 3), ("s", 1, 2), ("s", 1, 3), ("s", 2, 3))
    acc = AffinePermutation.identity(3)
    for x in word:
        acc = acc * h2.image_of(x)
    assert acc.is_identity()


def test_verify_hom_solvable_complete():
    for n in range(2, 7):
        rep = verify_hom(hom(("AC", "AS"), n), "solvable_target")
        assert rep.all_proven
    rep = verify_hom(hom(("C", "S"), 5), "solvable_target")
    assert rep.all_proven


def test_verify_hom_detects_shadow_failure():
    # corrupt one generator image and watch the shadow witness appear
    h = hom(("AC", "vC"), 3)
    images = dict(h.images)
    images[("s", 1, 2)] = (("s", 1, 3),)
    broken = GroupHom("AC", "vC", 3, tuple(sorted(images.items(), key=repr)))
    rep = verify_hom(broken, "bounded_rewrite", depth=3)
    assert rep.failures
    relator, status, witness = rep.failures[0]
    assert status == "failed" and isinstance(witness, Permutation)
    assert not witness.is_identity()


def test_bounded_rewrite_certificates():
    for n in (3, 4):
        rep = verify_hom(hom(("AC", "vC"), n), "bounded_rewrite", depth=6)
        assert rep.all_proven
        assert not rep.inconclusive


def test_rewrite_inconclusive_is_honest():
    # a deliberately hostile word at depth 0 is inconclusive, not false
    word = (("s", 1, 2), ("w", Permutation((2, 1, 3))), ("s", 1, 2), ("w", Permutation((2, 1, 3))))
    assert eval_word_sym(word, 3).is_identity()
    assert not rewrite_to_identity(word, 3, depth=0)


def test_diagram_commutes():
    for n in range(2, 7):
        assert diagram_commutes(n)


def test_involution_images_square_to_identity():
    for n in (3, 4, 5):
        for pair in (("C", "S"), ("AC", "AS"), ("EAC", "EAS")):
            h = hom(pair, n)
            for g, img in h.images:
                if g[0] != "s":
                    continue
                sq = img * img
                assert sq.is_identity()


def test_pure_generator_examples():
    # the consecutive ordered subset reduces to the standard interval pair
    w = pure_generator("pure_virtual_cactus", tuple(range(1, 4)), 4)
    assert w == ((("s", 1, 3), ("w", Permutation((3, 2, 1, 4)))))
    # identity witness for an adjacent pair
    w = pure_generator("pure_virtual_sym", (2, 3), 4, witness=(Permutation.identity(4), 2))
    t = Permutation.transposition(4, 2, 3)
    assert w == (("a", t), ("w", t))
    with pytest.raises(ValueError):
        pure_generator("pure_virtual_cactus", (1, 1), 4)


def test_pure_generator_witness_independence():
    im1 = vs_lattice_image(pure_generator("pure_virtual_sym", (1, 3), 4), 4)
    im2 = vs_lattice_image(
        pure_generator("pure_virtual_sym", (1, 3), 4, witness=(Permutation((4, 1, 3, 2)), 2)),
        4,
    )
    assert im1 == im2
    assert im1[0].is_identity()  # pure: trivial shadow
    assert im1 != vs_lattice_image(pure_generator("pure_virtual_sym", (3, 1), 4), 4)
    # cactus-side witnesses through the lattice quotient of the image words
    a = pure_generator("pure_virtual_cactus", (2, 4), 4)
    b = pure_generator(
        "pure_virtual_cactus", (2, 4), 4, witness=(Permutation((1, 2, 4, 3)), 2, 3)
    )
    assert vs_lattice_image(a, 4) == vs_lattice_image(b, 4)


def test_semidirect_action_examples():
    r = Permutation.long_cycle(3)
    assert semidirect_action(Permutation.identity(3), "pure_virtual_cactus", (1, 2)) == (1, 2)
    assert semidirect_action(r, "pure_virtual_cactus", (1, 2)) == (2, 3)
    assert semidirect_action(r, "pure_virtual_sym", (1, 3)) == (2, 1)
    # the relabelled generator has the relabelled lattice image
    u = Permutation((2, 3, 1, 4))
    im = vs_lattice_image(pure_generator("pure_virtual_sym", (1, 3), 4), 4)
    im_u = vs_lattice_image(
        pure_generator("pure_virtual_sym", semidirect_action(u, "pure_virtual_sym", (1, 3)), 4), 4
    )
    (pairs,) = (dict(im[1]),)
    relabelled = {}
    for (a, b), v in pairs.items():
        x, y = u(a), u(b)
        if x > y:
            x, y, v = y, x, -v
        relabelled[(x, y)] = v
    assert dict(im_u[1]) == relabelled


def test_rotation_preserves_affine_relators():
    for n in range(2, 7):
        p = make_presentation("affine_cactus", n)
        partner = dict(p.partner)
        canon = {canonical_cyclic(r, partner) for r in p.relators}
        rotated = {
            canonical_cyclic(
                tuple(("s", *shift_pair(x[1], x[2], 1, n)) for x in rel), partner
            )
            for rel in p.relators
        }
        assert rotated == canon


def test_ext_affine_relators_evaluate():
    # the extension relators hold in the concrete extended group
    p = make_presentation("ext_affine_cactus", 4)
    h = hom(("EAC", "EAS"), 4)
    for rel in p.relators:
        acc = ExtAffinePermutation.identity(4)
        for x in rel:
            acc = acc * h.image_of(x)
        assert acc.is_identity()


def test_pure_presentation_shapes():
    p = make_presentation("pure_virtual_sym", 4)
    assert len(p.generators) == 12
    lengths = sorted(len(r) for r in p.relators)
    assert lengths == [4, 4, 4, 6, 6, 6, 6]  # three squares, four hexagons
    p = make_presentation("pure_virtual_cactus", 3)
    assert len(p.generators) == 12  # ordered subsets of sizes 2 and 3
    assert len(p.relators) == 3


def test_word_syntax_roundtrip():
    from cactusflower.groups import format_word, parse_word, presentation_to_json
    import json

    w = parse_word("s[1,3] w(2 3 1) r^2 s[A:1,4,2]")
    assert format_word(w) == "s[1,3] w(2 3 1) r^2 s[A:1,4,2]"
    assert parse_word(format_word(w)) == w
    with pytest.raises(ValueError):
        parse_word("q[1,2]")
    dump = json.loads(presentation_to_json(make_presentation("affine_cactus", 3)))
    assert "s[1,3] s[1,2] s[1,3] s[2,3]" in dump["relators"]
