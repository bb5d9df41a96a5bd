import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from galrep.cyclo import make_root
from galrep.linalg import Mat, det, rank
from galrep.groups import (
    ClassifyResult,
    ExplicitGroup,
    GroupError,
    GroupSpec,
    MonomialElement,
    ambient_t,
    central_word,
    check_relations,
    classify,
    conjugacy_classes,
    element_from_obj,
    element_to_obj,
    enumerate_group,
    generator_map,
    generators,
    group_from_obj,
    group_to_obj,
    identity,
    is_reflection,
    is_reflection_by_rank,
    linear_characters,
    matrix_closure,
    relations_for,
)


def test_generators_g212():
    spec = GroupSpec(2, 1, 2)
    gens = dict(generators(spec))
    assert set(gens) == {"tp", "s1"}
    assert gens["tp"].to_matrix() == Mat.from_rows([[-1, 0], [0, 1]])
    assert gens["s1"].to_matrix() == Mat.from_rows([[0, 1], [1, 0]])


def test_generators_g332_omits_tp():
    gens = dict(generators(GroupSpec(1, 3, 2)))
    assert set(gens) == {"sp", "s1"}


def test_generators_g113():
    gens = dict(generators(GroupSpec(1, 1, 3)))
    assert set(gens) == {"s1", "s2"}


def test_tp_matrix_is_diag_zeta_d():
    spec = GroupSpec(3, 2, 2)  # G(6,2,2)
    tp = generator_map(spec)["tp"]
    assert tp.to_matrix() == Mat.from_rows([[make_root(3), 0], [0, 1]])
    t = ambient_t(spec)
    assert (t ** spec.e).key() == tp.key()


def test_element_ops_basics():
    spec = GroupSpec(2, 2, 2)  # G(4,2,2)
    gens = generator_map(spec)
    assert (gens["s1"] * gens["s1"]).is_identity()
    assert gens["sp"].order() == 2
    g = gens["sp"] * gens["s1"] * gens["tp"]
    assert (g * g.inverse()).is_identity()
    assert (g.inverse() * g).is_identity()


@pytest.mark.parametrize("e", [2, 3, 4, 5, 6])
def test_dihedral_rotation_order(e):
    spec = GroupSpec(1, e, 2)
    gens = generator_map(spec)
    assert (gens["sp"] * gens["s1"]).order() == e


def test_spec_mismatch_raises():
    a = identity(GroupSpec(2, 1, 2))
    b = identity(GroupSpec(3, 1, 2))
    with pytest.raises(GroupError):
        a * b


def _random_element(spec, rnd):
    perm = list(range(spec.r))
    rnd.shuffle(perm)
    while True:
        exps = [rnd.randrange(spec.de) for _ in range(spec.r)]
        excess = sum(exps) % spec.e
        exps[-1] = (exps[-1] - excess) % spec.de
        if sum(exps) % spec.e == 0:
            return MonomialElement(spec, perm, exps)


def test_composition_matches_matrices():
    import random
    rnd = random.Random(7)
    for d, e, r in [(2, 1, 2), (1, 3, 2), (2, 2, 3), (3, 1, 3), (1, 1, 4)]:
        spec = GroupSpec(d, e, r)
        for _ in range(25):
            a = _random_element(spec, rnd)
            b = _random_element(spec, rnd)
            assert (a * b).to_matrix() == a.to_matrix() @ b.to_matrix()
            assert a.inverse().to_matrix() @ a.to_matrix() == Mat.identity(r)


def test_to_matrix_faithful_small():
    spec = GroupSpec(2, 2, 2)  # order 16
    elems = enumerate_group(spec)
    mats = {g: g.to_matrix() for g in elems}
    assert len({tuple(m.entries) for m in mats.values()}) == len(elems)
    for a in elems:
        for b in elems:
            assert (a * b).to_matrix() == mats[a] @ mats[b]


@pytest.mark.parametrize("d,e,r,n", [
    (3, 1, 2, 18),
    (1, 2, 2, 4),
    (1, 1, 3, 6),
    (2, 2, 2, 16),
    (1, 3, 3, 54),
    (2, 1, 3, 48),
])
def test_enumeration_counts(d, e, r, n):
    spec = GroupSpec(d, e, r)
    elems = enumerate_group(spec)
    assert len(elems) == n == spec.order
    assert len(set(elems)) == n
    keys = [(g.perm, g.exps) for g in elems]
    assert keys == sorted(keys)


def test_enumeration_bound():
    with pytest.raises(GroupError) as ei:
        enumerate_group(GroupSpec(10, 1, 5), bound=1000)
    assert "100000" in str(ei.value) or "12000000" in str(ei.value)


def test_diagonal_subgroup_order():
    for d, e, r in [(2, 2, 2), (3, 1, 2), (1, 3, 3), (2, 3, 2)]:
        spec = GroupSpec(d, e, r)
        diag = [g for g in enumerate_group(spec) if g.perm == tuple(range(r))]
        assert len(diag) == d ** r * e ** (r - 1)
        for a in diag:
            for b in diag:
                assert (a * b).perm == tuple(range(r))


@pytest.mark.parametrize("d,e,r", [(2, 1, 2), (1, 3, 2), (2, 2, 2), (3, 1, 2), (1, 1, 3), (1, 4, 2)])
def test_reflection_detector_matches_rank(d, e, r):
    spec = GroupSpec(d, e, r)
    for g in enumerate_group(spec):
        assert is_reflection(g) == is_reflection_by_rank(g)


def test_classify_g212():
    res = classify(GroupSpec(2, 1, 2))
    assert len(res.reflections) == 4
    assert len(res.center) == 2
    assert sum(len(c) for c in res.conjugacy_classes) == 8
    assert len(res.conjugacy_classes) == 5


def test_classify_center_orders():
    for d, e, r in [(2, 2, 2), (1, 3, 3), (3, 1, 2), (2, 1, 3), (1, 4, 2), (3, 2, 2)]:
        spec = GroupSpec(d, e, r)
        res = classify(spec)
        assert len(res.center) == d * gcd(e, r), spec.name()
        # center = scalar matrices in G
        for z in res.center:
            assert z.perm == tuple(range(r))
            assert len(set(z.exps)) == 1


def test_classify_degenerate_centers():
    assert len(classify(GroupSpec(1, 1, 2)).center) == 2
    assert len(classify(GroupSpec(1, 2, 2)).center) == 4


def test_central_word_generates_center():
    for d, e, r in [(2, 2, 2), (1, 3, 3), (3, 1, 2), (2, 1, 3), (6, 1, 2), (1, 6, 2)]:
        spec = GroupSpec(d, e, r)
        z = central_word(spec)
        gens = [g for _, g in generators(spec)]
        assert all(z * h == h * z for h in gens), spec.name()
        assert z.order() == d * gcd(e, r), spec.name()


def test_central_word_g312_value():
    z = central_word(GroupSpec(3, 1, 2))
    assert z.to_matrix() == Mat.from_rows([[make_root(3), 0], [0, make_root(3)]])


def test_conjugacy_class_sizes_divide_order():
    spec = GroupSpec(2, 2, 2)
    res = classify(spec)
    for c in res.conjugacy_classes:
        assert spec.order % len(c) == 0
        # classes are closed under conjugation by every element
    class_of = {}
    for idx, c in enumerate(res.conjugacy_classes):
        for g in c:
            class_of[g] = idx
    elems = enumerate_group(spec)
    for c in res.conjugacy_classes:
        rep = c[0]
        for h in elems:
            assert class_of[h.inverse() * rep * h] == class_of[rep]


def test_linear_characters_counts():
    assert len(linear_characters(GroupSpec(1, 1, 3))) == 2
    assert len(linear_characters(GroupSpec(3, 1, 2))) == 6
    assert len(linear_characters(GroupSpec(1, 2, 2))) == 4


def test_linear_characters_are_multiplicative():
    spec = GroupSpec(3, 1, 2)
    elems = enumerate_group(spec)
    chars = linear_characters(spec)
    for chi in chars:
        for a in elems[::3]:
            for b in elems[::4]:
                assert chi[a * b] == chi[a] * chi[b]
    # trivial character comes first
    assert all(v == 1 for v in chars[0].values())
    # characters are pairwise distinct
    tables = {tuple(sorted(((g.perm, g.exps), str(v.coeffs)) for g, v in chi.items()))
              for chi in chars}
    assert len(tables) == 6


def test_sign_character_s3():
    spec = GroupSpec(1, 1, 3)
    chars = linear_characters(spec)
    sign = chars[1]
    s1 = generator_map(spec)["s1"]
    assert sign[s1] == -1


def test_check_relations_canonical_all_pass():
    for d, e, r in [(2, 2, 3), (2, 1, 2), (1, 3, 2), (3, 1, 3), (1, 1, 4), (2, 3, 2), (1, 4, 2)]:
        spec = GroupSpec(d, e, r)
        report = check_relations(generator_map(spec), spec)
        assert report["all_hold"], (spec.name(), report)


def test_check_relations_swapped_images():
    spec = GroupSpec(1, 1, 4)
    gens = generator_map(spec)
    swapped = {"s1": gens["s2"], "s2": gens["s1"], "s3": gens["s3"]}
    report = check_relations(swapped, spec)
    by_name = {r["relation"]: r["holds"] for r in report["relations"]}
    assert by_name["s1.s2 braid"]          # braid between the two swapped ones
    assert not by_name["s1,s3 commute"]    # s2 does not commute with s3
    assert not report["all_hold"]


def test_check_relations_missing_image():
    spec = GroupSpec(2, 1, 2)
    with pytest.raises(GroupError):
        check_relations({"s1": generator_map(spec)["s1"]}, spec)


def test_relation_words_alternating_length():
    rels = dict((name, (lhs, rhs)) for name, lhs, rhs in relations_for(GroupSpec(2, 3, 2)))
    lhs, rhs = rels["alternating length 4"]
    assert len(lhs) == len(rhs) == 4


def test_matrix_closure_cyclic():
    g = Mat.from_rows([[make_root(5), 0], [0, 1]])
    elems = matrix_closure([g])
    assert len(elems) == 5
    assert elems[0].is_identity()


def test_matrix_closure_dihedral():
    e = 5
    z = make_root(e)
    sp = Mat.from_rows([[0, z], [z ** (e - 1), 0]])
    s = Mat.from_rows([[0, 1], [1, 0]])
    elems = matrix_closure([sp, s])
    assert len(elems) == 2 * e


def test_matrix_closure_matches_monomial_enumeration():
    spec = GroupSpec(2, 2, 2)
    gens = [g.to_matrix() for _, g in generators(spec)]
    elems = matrix_closure(gens)
    assert len(elems) == spec.order


def test_matrix_closure_bound():
    g = Mat.from_rows([[2]])  # infinite order
    with pytest.raises(GroupError):
        matrix_closure([g], bound=50)


def test_group_json_round_trip():
    spec = GroupSpec(3, 2, 2)
    obj = group_to_obj(spec)
    assert obj == {"kind": "imprimitive", "d": 3, "e": 2, "r": 2}
    assert group_from_obj(obj) == spec

    eg = ExplicitGroup("demo", {"a": Mat.from_rows([[0, 1], [1, 0]])})
    obj2 = group_to_obj(eg)
    back = group_from_obj(obj2)
    assert back.label == "demo"
    assert back.generators["a"] == eg.generators["a"]

    g = generator_map(spec)["sp"]
    assert element_from_obj(spec, element_to_obj(g)) == g


def test_degenerate_flags():
    assert GroupSpec(1, 1, 4).is_symmetric_degenerate
    assert GroupSpec(1, 2, 2).is_g222
    assert not GroupSpec(2, 2, 2).is_degenerate
