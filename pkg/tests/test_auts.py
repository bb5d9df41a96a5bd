from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from galrep.cyclo import GaloisAuto, galois_units
from galrep.groups import GroupSpec, load_explicit, _elem_key
from galrep.chars import irr_table, reflection_characters, class_data
from galrep.tableaux import (build_model, clifford_split, enumerate_tuples,
                             restricted_model, sigma_orbit_reps)
from galrep.auts import (AutError, Automorphism, ad_t_automorphism, aut_context,
                         aut_group, aut_to_obj, automorphism_from_images,
                         central_auts, central_factor, eta_automorphism,
                         inner_automorphisms, iota_assignment, iota_verify,
                         irr_signature, is_inner, nbar_order, outer_classes,
                         reflection_preserving, try_automorphism,
                         verify_structure, word_element)


# ---------------------------------------------------------------------------
# construction and validation

def test_identity_automorphism_from_generators():
    spec = GroupSpec(3, 1, 2)
    ctx = aut_context(spec)
    a, reason = try_automorphism(spec, dict(ctx.gen_elems))
    assert reason == ""
    assert a.is_identity()
    for g in ctx.elements:
        assert a.apply(g) == g


def test_non_multiplicative_images_rejected():
    spec = GroupSpec(3, 1, 2)
    ctx = aut_context(spec)
    images = dict(ctx.gen_elems)
    images["tp"] = ctx.gen_elems["s1"]          # wrong order
    a, reason = try_automorphism(spec, images)
    assert a is None
    assert reason


def test_failing_relation_is_named():
    spec = GroupSpec(3, 1, 2)
    ctx = aut_context(spec)
    images = dict(ctx.gen_elems)
    images["tp"] = ctx.gen_elems["s1"]
    with pytest.raises(AutError, match="tp\\^3"):
        automorphism_from_images(spec, images)


def test_image_outside_group_rejected():
    spec = GroupSpec(1, 2, 2)
    other = GroupSpec(3, 1, 2)
    images = dict(aut_context(spec).gen_elems)
    images["sp"] = aut_context(other).gen_elems["tp"]
    a, reason = try_automorphism(spec, images)
    assert a is None
    assert "not in the group" in reason


def test_multiplicative_on_all_pairs():
    # the Cayley-walk construction must agree with the literal definition
    spec = GroupSpec(2, 2, 2)
    for a in aut_group(spec):
        for x in a.ctx.elements:
            for y in a.ctx.elements:
                assert a.apply(x * y) == a.apply(x) * a.apply(y)


def test_compose_inverse_power():
    spec = GroupSpec(3, 1, 2)
    auts = aut_group(spec)
    perms = {a.perm for a in auts}
    for a in auts[:6]:
        assert a.compose(a.inverse()).is_identity()
        assert a.power(3).perm == a.compose(a).compose(a).perm
        for b in auts[:6]:
            assert a.compose(b).perm in perms


# ---------------------------------------------------------------------------
# inner automorphisms and the full group

@pytest.mark.parametrize("spec", [GroupSpec(3, 1, 2), GroupSpec(1, 3, 3),
                                  GroupSpec(1, 1, 4), GroupSpec(2, 2, 2)])
def test_inner_count(spec):
    ctx = aut_context(spec)
    inner = inner_automorphisms(spec)
    assert len(inner) == ctx.n // len(ctx.center)
    assert all(is_inner(a) for a in inner)


def test_aut_group_s4_all_inner():
    spec = GroupSpec(1, 1, 4)
    auts = aut_group(spec)
    assert len(auts) == 24
    assert len(outer_classes(spec)) == 1


def test_aut_group_dihedral_order_8():
    assert len(aut_group(GroupSpec(1, 4, 2))) == 8


def test_aut_group_sorted_and_distinct():
    auts = aut_group(GroupSpec(3, 1, 2))
    perms = [a.perm for a in auts]
    assert perms == sorted(perms)
    assert len(set(perms)) == len(perms)


def test_inner_signature_trivial():
    spec = GroupSpec(3, 1, 2)
    k = len(irr_table(spec))
    for a in inner_automorphisms(spec):
        assert irr_signature(spec, a) == tuple(range(k))


def test_outer_classes_separated_by_signature():
    spec = GroupSpec(1, 4, 2)
    classes = outer_classes(spec)
    inner = inner_automorphisms(spec)
    assert len(classes) == len(aut_group(spec)) // len(inner)
    assert len({c.signature for c in classes}) == len(classes)


# ---------------------------------------------------------------------------
# central and reflection-preserving subgroups

def test_central_auts_g312():
    assert len(central_auts(GroupSpec(3, 1, 2))) == 2


def test_central_auts_trivial_cases():
    assert len(central_auts(GroupSpec(1, 1, 4))) == 1      # trivial center
    assert len(central_auts(load_explicit("G4"))) == 1


def test_central_auts_normal_in_aut():
    for spec in [GroupSpec(2, 1, 2), GroupSpec(3, 1, 2)]:
        central = {c.perm for c in central_auts(spec)}
        for a in aut_group(spec):
            ainv = a.inverse()
            for c in central_auts(spec):
                assert a.compose(c).compose(ainv).perm in central


@pytest.mark.parametrize("spec", [GroupSpec(2, 1, 2), GroupSpec(3, 1, 2),
                                  GroupSpec(1, 4, 2), GroupSpec(1, 3, 3),
                                  GroupSpec(1, 2, 3)])
def test_structure_holds_on_series(spec):
    rep = verify_structure(spec)
    assert rep["holds"], rep
    if spec.r > 2:
        assert rep["trivial_intersection"] is True


def test_structure_holds_g4():
    rep = verify_structure(load_explicit("G4"))
    assert rep["holds"]
    assert rep["aut_order"] == 24 and rep["inn_order"] == 12


def test_structure_fails_g222():
    rep = verify_structure(GroupSpec(1, 2, 2))
    assert not rep["holds"]
    assert rep["aut_order"] == 6
    assert rep["witnesses"]


def test_structure_fails_s6_with_exceptional_class():
    spec = GroupSpec(1, 1, 6)
    rep = verify_structure(spec)
    assert not rep["holds"]
    assert rep["aut_order"] == 1440 and rep["out_order"] == 2
    ctx = aut_context(spec)
    moved = [c for c in outer_classes(spec)
             if {c.representative.perm[i] for i in ctx.reflections} != ctx.reflections]
    assert len(moved) == 1


def test_reflection_preserving_transitive_on_reflection_characters():
    spec = GroupSpec(3, 1, 2)
    rows = irr_table(spec)
    refl = reflection_characters(spec)
    assert len(refl) == 2
    idx = [rows.index(chi) for chi in refl]
    a_group = reflection_preserving(aut_group(spec), spec)
    sigs = {irr_signature(spec, a) for a in a_group}
    assert any(sig[idx[0]] == idx[1] for sig in sigs)


def test_aut_to_obj_roundtrippable_shape():
    spec = GroupSpec(3, 1, 2)
    obj = aut_to_obj(aut_group(spec)[0])
    assert obj["group"] == "G(3,1,2)"
    assert set(obj["generator_images"]) == {"tp", "s1"}


# ---------------------------------------------------------------------------
# the diagonal twist

@pytest.mark.parametrize("de,e,r", [(4, 2, 2), (3, 3, 3), (2, 2, 4), (6, 3, 2)])
def test_nbar_is_gcd(de, e, r):
    assert nbar_order(GroupSpec(de // e, e, r)) == gcd(e, r)


def test_nbar_against_literal_innerness():
    spec = GroupSpec(2, 2, 2)           # G(4,2,2)
    n = nbar_order(spec)
    assert not is_inner(ad_t_automorphism(spec, 1))
    assert is_inner(ad_t_automorphism(spec, n))


def test_ad_t_order_in_out():
    spec = GroupSpec(1, 3, 3)           # G(3,3,3)
    a = ad_t_automorphism(spec, 1)
    k = len(irr_table(spec))
    sig = irr_signature(spec, a)
    power, order = sig, 1
    while power != tuple(range(k)):
        power = tuple(sig[i] for i in power)
        order += 1
    assert order == nbar_order(spec) == 3


def test_eta_is_a_galois_to_aut_homomorphism():
    spec = GroupSpec(4, 1, 2)
    units = [g.exponent for g in galois_units(4)]
    for a in units:
        for b in units:
            lhs = eta_automorphism(spec, a).compose(eta_automorphism(spec, b))
            assert lhs.perm == eta_automorphism(spec, a * b % 4).perm


def test_eta_twist_is_conjugation():
    spec = GroupSpec(2, 2, 2)
    t1 = ad_t_automorphism(spec, 1)
    base = eta_automorphism(spec, 3)
    twisted = eta_automorphism(spec, 3, twist=1)
    assert twisted.perm == t1.compose(base).compose(t1.inverse()).perm


# ---------------------------------------------------------------------------
# Galois assignments

@pytest.mark.parametrize("label", ["G4", "G5", "G6", "G8"])
def test_iota_shipped_assignments(label):
    group = load_explicit(label)
    rep = iota_verify(group, iota_assignment(group), model="defining")
    assert rep["holds"], rep["witnesses"][:3]


def test_iota_negative_control_swapped_images():
    group = load_explicit("G4")
    assignment = iota_assignment(group)
    (gamma, images), = assignment.items()
    swapped = {gamma: {"s": images["t"], "t": images["s"]}}
    try:
        rep = iota_verify(group, swapped, model="defining")
    except AutError:
        return
    assert not rep["holds"]


def test_iota_wrong_galois_element_fails_characters():
    group = load_explicit("G4")
    (gamma, images), = iota_assignment(group).items()
    wrong = {GaloisAuto(gamma.conductor, 1): images}
    rep = iota_verify(group, wrong)
    assert not rep["checks"]["characters"]
    assert not rep["holds"]


def test_iota_full_models_eta_equivariant():
    for (d, r) in [(3, 2), (2, 3)]:
        spec = GroupSpec(d, 1, r)
        assignment = {g: eta_automorphism(spec, g.exponent)
                      for g in galois_units(d)}
        for shape in enumerate_tuples(d, r):
            rep = iota_verify(spec, assignment, chi_battery=[],
                              model=build_model(shape))
            assert rep["holds"], (shape, rep["witnesses"][:2])


def test_iota_restricted_models_twisted_equivariant():
    for (d, e, r) in [(2, 2, 2), (1, 3, 3)]:
        spec = GroupSpec(d, e, r)
        for shape in sigma_orbit_reps(d, e, r):
            cd = clifford_split(shape, e)
            theta = cd.theta()
            for i in range(cd.pieces):
                model = restricted_model(shape, e, theta ** i)
                assignment = {g: eta_automorphism(spec, g.exponent, twist=i)
                              for g in galois_units(d * e)}
                rep = iota_verify(spec, assignment, chi_battery=[], model=model)
                assert rep["holds"], (shape, i, rep["witnesses"][:2])


def test_iota_characters_equivariant_for_eta():
    spec = GroupSpec(3, 1, 2)
    assignment = {g: eta_automorphism(spec, g.exponent) for g in galois_units(3)}
    rep = iota_verify(spec, assignment)
    assert rep["holds"]


def test_word_element_inverse_tokens():
    group = load_explicit("G4")
    s = group.generators["s"]
    assert word_element(group, ["s", "s-"]).is_identity()
    assert word_element(group, ["s-"]) == s @ s  # order 3


# ---------------------------------------------------------------------------
# central factor

@pytest.mark.parametrize("d,e,r,kernel", [(3, 1, 2, 3), (3, 1, 3, 1),
                                          (6, 1, 2, 3), (2, 1, 3, 2)])
def test_central_factor_battery(d, e, r, kernel):
    rep = central_factor(GroupSpec(d, e, r))
    assert rep["holds"]
    assert rep["direct_product"]
    assert rep["max_kernel"] == kernel


def test_central_factor_two_nonabelian_complements():
    rep = central_factor(GroupSpec(2, 1, 3))
    assert rep["max_kernel_count"] == 2
    assert rep["complement_count"] == 2
    assert rep["complement"] == {"kind": "imprimitive", "d": 1, "e": 2, "r": 3}


def test_central_factor_special_dihedral_case():
    rep = central_factor(GroupSpec(3, 2, 2))   # G(6,2,2)
    assert rep["d_coprime"] == 3
    assert rep["max_kernel"] == 6 == rep["expected_max_kernel"]
    assert rep["holds"]


# ---------------------------------------------------------------------------
# property: automorphisms returned by the search are multiplicative

@settings(max_examples=60, deadline=None)
@given(st.data())
def test_aut_multiplicativity_property(data):
    spec = data.draw(st.sampled_from([GroupSpec(3, 1, 2), GroupSpec(1, 4, 2),
                                      GroupSpec(1, 2, 3)]))
    auts = aut_group(spec)
    ctx = aut_context(spec)
    a = data.draw(st.sampled_from(auts))
    i = data.draw(st.integers(0, ctx.n - 1))
    j = data.draw(st.integers(0, ctx.n - 1))
    x, y = ctx.elements[i], ctx.elements[j]
    assert a.apply(x * y) == a.apply(x) * a.apply(y)
