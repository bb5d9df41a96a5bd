from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from galrep.cyclo import (Cyclotomic, GaloisAuto, apply_galois, canonicalize,
                          galois_units, make_root, norm_cyclic)
from galrep.cyclo import inverse as cyclo_inverse
from galrep.groups import ExplicitGroup, GroupSpec, load_explicit, data_dir, _elem_key
from galrep.linalg import Mat, det, galois_map, inverse, trace
from galrep.linalg import from_obj as mat_from_obj
from galrep.auts import aut_context, aut_group, eta_automorphism, is_inner
from galrep.tableaux import build_model
from galrep.descent import (DescentError, NotIsomorphic, ObstructionClass,
                            ProjectiveCocycle, as_model, close_assignment,
                            cocycle_from_model, cocycle_to_obj, descend_tower,
                            dihedral_equivariant, dihedral_split,
                            hilbert90_solve, intertwiner, lift_action,
                            nakayama_class, norm_search, obstruction_to_obj,
                            propose_tower, scalar_equivalent, shipped_action,
                            _fixed_basis, _identity_aut, _model_table)

Q = Cyclotomic.from_rational
ONE = Q(1)
I4 = make_root(4, 1)
Z8 = make_root(8, 1)
SWAP = Mat.from_rows([[0, 1], [1, 0]])


def _rows(rows):
    return Mat.from_rows(rows)


# the rank-2 exceptional group with its stored 2-dimensional model, plus a
# starting model over the same degree-8 field and one over the degree-24
# field that are isomorphic but not equivariant as written
def _g9():
    return load_explicit("G9")


def _g9_start8():
    return {"s": _rows([[Q(0), -Z8], [make_root(8, 3), Q(0)]]),
            "t": _rows([[I4, Q(-1)], [Q(0), Q(1)]])}


def _g9_start24():
    return {"s": _rows([[Q(0), -make_root(24, 11)], [make_root(24, 1), Q(0)]]),
            "t": _rows([[I4, -make_root(3, 1)], [Q(0), Q(1)]])}


# the three intertwiners of the degree-8 starting model, one per nontrivial
# unit, in the representatives the data files use
def _g9_frozen_maps():
    return {7: _rows([[-I4, Q(0)], [Q(0), Q(1)]]),
            5: _rows([[Q(-1), Q(-1) - I4], [Q(0), Q(1)]]),
            3: _rows([[I4, Q(-1) + I4], [Q(0), Q(1)]])}


def _dihedral_raw(e, k=1):
    return {"sp": _rows([[Q(0), make_root(e, k)], [make_root(e, e - k), Q(0)]]),
            "s1": SWAP}


def _quaternion_group():
    gens = {"i": _rows([[I4, Q(0)], [Q(0), -I4]]),
            "j": _rows([[Q(0), Q(1)], [Q(-1), Q(0)]])}
    return ExplicitGroup("Q8", gens,
                         relations=[[["i", "i", "i", "i"], []],
                                    [["j", "j"], ["i", "i"]],
                                    [["j", "i"], ["i", "i", "i", "j"]]],
                         metadata={"order": 8})


# ---------------------------------------------------------------------------
# scalar comparison

def test_scalar_equivalent_basics():
    a = _rows([[Q(1), Q(2)], [Q(0), Q(1)]])
    assert scalar_equivalent(a, a.scale(I4))
    assert scalar_equivalent(Mat.zero(2, 2), Mat.zero(2, 2))
    assert not scalar_equivalent(a, Mat.zero(2, 2))
    assert not scalar_equivalent(_rows([[Q(1), Q(0)]]), _rows([[Q(0), Q(1)]]))
    assert not scalar_equivalent(a, Mat.identity(3))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=8, max_size=8),
       st.integers(0, 3), st.integers(0, 2))
def test_scalar_equivalence_under_scaling(parts, a, b):
    entries = [Q(parts[2 * k]) + I4 * Q(parts[2 * k + 1]) for k in range(4)]
    m = Mat(2, 2, entries)
    c = ONE
    for _ in range(a):
        c = c * I4
    for _ in range(b):
        c = c * (ONE + I4)
    assert scalar_equivalent(m.scale(c), m)


# ---------------------------------------------------------------------------
# intertwiners

def test_intertwiner_of_equal_models_is_identity():
    g9 = _g9()
    assert intertwiner(g9, g9) == Mat.identity(2)


def test_intertwiner_normalizes_first_nonzero_entry():
    imgs = dict(_g9().generators)
    p = _rows([[Q(2), Q(1)], [Q(1), Q(1)]])
    moved = {n: p @ m @ inverse(p) for n, m in imgs.items()}
    x = intertwiner(moved, imgs)
    assert x[(0, 0)] == ONE
    assert scalar_equivalent(x, p)


def test_intertwiner_no_nonzero_solution():
    triv = {"a": _rows([[Q(1)]]), "b": _rows([[Q(1)]])}
    sign = {"a": _rows([[Q(-1)]]), "b": _rows([[Q(-1)]])}
    with pytest.raises(NotIsomorphic):
        intertwiner(triv, sign)


def test_intertwiner_input_validation():
    one = {"a": _rows([[Q(1)]])}
    two = {"a": Mat.identity(2)}
    with pytest.raises(DescentError, match="different dimensions"):
        intertwiner(one, two)
    with pytest.raises(DescentError, match="different generators"):
        intertwiner({"a": Mat.identity(2)}, {"b": Mat.identity(2)})
    with pytest.raises(DescentError, match="not irreducible"):
        intertwiner({"a": Mat.identity(2)}, {"a": Mat.identity(2)})


def test_intertwiner_dihedral_conjugation_is_the_reflection():
    raw = _dihedral_raw(5)
    conj = GaloisAuto(5, 4)
    twisted = {n: galois_map(conj, m) for n, m in raw.items()}
    assert intertwiner(twisted, raw) == SWAP


# ---------------------------------------------------------------------------
# cocycles of models

def test_g9_cocycle_matches_stored_representatives():
    g9 = _g9()
    coc = cocycle_from_model(as_model(g9, _g9_start8(), kind="starting"),
                             shipped_action(g9), galois_units(8))
    assert coc.maps[GaloisAuto(8, 1)] == Mat.identity(2)
    for exp, m in _g9_frozen_maps().items():
        assert scalar_equivalent(coc.maps[GaloisAuto(8, exp)], m)


def test_equivariant_model_has_scalar_cocycle():
    g9 = _g9()
    coc = cocycle_from_model(as_model(g9), shipped_action(g9), galois_units(8))
    for m in coc.maps.values():
        assert scalar_equivalent(m, Mat.identity(2))


def test_dihedral_identity_assignment_gives_two_entry_cocycle():
    spec = GroupSpec(1, 5, 2)
    ctx = aut_context(spec)
    model = as_model(spec, _dihedral_raw(5), kind="starting")
    acting = (GaloisAuto(5, 1), GaloisAuto(5, 4))
    coc = cocycle_from_model(model, {GaloisAuto(5, 4): _identity_aut(ctx)},
                             acting)
    assert len(coc.maps) == 2
    assert coc.maps[GaloisAuto(5, 1)] == Mat.identity(2)
    assert coc.maps[GaloisAuto(5, 4)] == SWAP
    coc.verify()


def test_cocycle_missing_intertwiner_raises():
    spec = GroupSpec(1, 5, 2)
    ctx = aut_context(spec)
    model = as_model(spec, _dihedral_raw(5), kind="starting")
    with pytest.raises(DescentError, match="no intertwiner"):
        cocycle_from_model(model, {GaloisAuto(5, 2): _identity_aut(ctx)},
                           (GaloisAuto(5, 1), GaloisAuto(5, 2)))


def test_cocycle_requires_an_assignment_per_unit():
    g9 = _g9()
    model = as_model(g9, _g9_start8(), kind="starting")
    with pytest.raises(DescentError, match="no automorphism assigned"):
        cocycle_from_model(model, {}, galois_units(8))


def test_cocycle_verification_rejects_broken_families():
    units = galois_units(8)
    maps = {g: Mat.identity(2) for g in units}
    maps[GaloisAuto(8, 3)] = _rows([[Q(1), Q(1)], [Q(0), Q(1)]])
    with pytest.raises(DescentError, match="cocycle condition"):
        ProjectiveCocycle(8, units, maps).verify()
    partial = tuple(g for g in units if g.exponent in (1, 3, 5))
    with pytest.raises(DescentError, match="not closed"):
        ProjectiveCocycle(8, partial,
                          {g: Mat.identity(2) for g in partial}).verify()


# ---------------------------------------------------------------------------
# obstruction classes

def test_wraparound_of_scalar_cocycle_is_trivial():
    g9 = _g9()
    coc = cocycle_from_model(as_model(g9), shipped_action(g9), galois_units(8))
    for exp in (3, 5, 7):
        ob = nakayama_class(coc, GaloisAuto(8, exp))
        assert ob.scalar == ONE
        assert ob.status == "unresolved"


def _coboundary_cocycle():
    gamma = GaloisAuto(4, 3)
    m = _rows([[Q(1), I4], [Q(0), Q(1)]])
    a = galois_map(gamma, m) @ inverse(m)
    maps = {GaloisAuto(4, 1): Mat.identity(2), gamma: a}
    c = ProjectiveCocycle(4, tuple(maps), maps)
    c.verify()
    return c, gamma


def test_coboundary_wraparound_and_rescaling():
    c, gamma = _coboundary_cocycle()
    ob = nakayama_class(c, gamma)
    assert ob.scalar == ONE
    found = norm_search(ob.scalar, gamma, 2)
    assert found["status"] == "witness"
    assert canonicalize(norm_cyclic(found["witness"], gamma, 2)) == ONE
    ob2 = nakayama_class(c.rescaled({gamma: ONE + I4}), gamma)
    assert ob2.scalar == Q(2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 2))
def test_rescaling_moves_the_wraparound_by_a_norm(a, b):
    c, gamma = _coboundary_cocycle()
    w = ONE
    for _ in range(a):
        w = w * I4
    for _ in range(b):
        w = w * (ONE + I4)
    rescaled = c.rescaled({gamma: w})
    rescaled.verify()
    ob = nakayama_class(rescaled, gamma)
    assert ob.scalar == canonicalize(w * apply_galois(gamma, w))
    assert norm_search(ob.scalar, gamma, 2)["status"] == "witness"


def test_wraparound_must_be_scalar():
    gamma = GaloisAuto(4, 3)
    maps = {GaloisAuto(4, 1): Mat.identity(2),
            gamma: _rows([[Q(1), Q(1)], [Q(0), Q(1)]])}
    c = ProjectiveCocycle(4, tuple(maps), maps)
    with pytest.raises(DescentError, match="not a nonzero scalar"):
        nakayama_class(c, gamma)
    with pytest.raises(DescentError, match="does not cover"):
        nakayama_class(c, GaloisAuto(8, 3))


@pytest.mark.skipif(not (data_dir() / "G22.json").exists(),
                    reason="no stored matrices for the larger rank-2 group")
def test_g22_obstruction_class_is_one_third():
    g = load_explicit("G22")
    model = as_model(g)
    coc = cocycle_from_model(model, shipped_action(g),
                             galois_units(model.conductor))
    hit = False
    for tau in propose_tower(model.conductor):
        ob = nakayama_class(coc, tau)
        if ob.scalar == ONE:
            continue
        found = norm_search(ob.scalar * Q(3), tau, ob.order)
        assert found["status"] == "witness"
        hit = True
    assert hit


# ---------------------------------------------------------------------------
# norm searches

def test_norm_search_finds_the_simplest_gaussian_witness():
    r = norm_search(2, GaloisAuto(4, 3), 2)
    assert r["status"] == "witness"
    assert r["witness"] == ONE + I4
    assert r["height"] == 1
    assert r["unit"] == ONE
    assert not r["supplied"]


def test_norm_search_verifies_supplied_witnesses():
    gamma = GaloisAuto(4, 3)
    r = norm_search(2, gamma, 2, witness=ONE + I4)
    assert r["status"] == "witness" and r["supplied"]
    with pytest.raises(DescentError, match="supplied witness"):
        norm_search(2, gamma, 2, witness=I4)


def test_norm_search_exhausts_one_third():
    r = norm_search(Fraction(1, 3), GaloisAuto(4, 3), 2)
    assert r["status"] == "exhausted"
    assert not r["truncated"]
    assert r["height"] == 4


def test_norm_search_respects_the_candidate_cap():
    r = norm_search(Fraction(1, 3), GaloisAuto(4, 3), 2, max_candidates=5)
    assert r["status"] == "exhausted"
    assert r["truncated"]
    assert r["scanned"] == 5


def test_norm_search_over_a_fixed_subfield():
    r = norm_search(2, GaloisAuto(8, 5), 2, fixed_by=[GaloisAuto(8, 3)])
    assert r["status"] == "witness"
    assert r["witness"] == Z8 + make_root(8, 3)
    assert r["height"] == 1


def test_norm_search_accepts_unit_slack():
    r = norm_search(-2, GaloisAuto(4, 3), 2, units=(-1,))
    assert r["status"] == "witness"
    assert r["witness"] == ONE + I4
    assert r["unit"] == Q(-1)


def test_fixed_basis_shapes():
    assert _fixed_basis(8) == [make_root(8, j) for j in range(4)]
    subgroup = (GaloisAuto(24, 5), GaloisAuto(24, 7))
    basis = _fixed_basis(24, subgroup)
    assert len(basis) == 2
    for b in basis:
        for s in subgroup:
            assert apply_galois(s, b) == b
    assert canonicalize(basis[0]).conductor == 1
    assert canonicalize(basis[1]).conductor == 24


# ---------------------------------------------------------------------------
# exact cocycles

def test_exact_solver_on_the_trivial_family():
    B = {GaloisAuto(4, 1): Mat.identity(2), GaloisAuto(4, 3): Mat.identity(2)}
    assert hilbert90_solve(B) == Mat.identity(2)


def test_exact_solver_input_validation():
    gamma = GaloisAuto(4, 3)
    with pytest.raises(DescentError, match="no identity"):
        hilbert90_solve({gamma: Mat.identity(2)})
    with pytest.raises(DescentError, match="send the identity"):
        hilbert90_solve({GaloisAuto(4, 1): _rows([[Q(1), Q(1)], [Q(0), Q(1)]]),
                         gamma: Mat.identity(2)})
    with pytest.raises(DescentError, match="not an exact cocycle"):
        hilbert90_solve({GaloisAuto(4, 1): Mat.identity(2),
                         gamma: _rows([[Q(1), Q(1)], [Q(0), Q(1)]])})


def test_exact_solver_dihedral_involution():
    conj = GaloisAuto(12, 11)
    B = {GaloisAuto(12, 1): Mat.identity(2), conj: SWAP}
    m = hilbert90_solve(B)
    assert inverse(m) @ galois_map(conj, m) == SWAP
    # the closed-form conjugator of the real-form construction solves the
    # same family; the sweep returns a different but equally valid solution
    closed = _rows([[ONE + I4, -ONE + I4],
                    [-ONE + I4, ONE + I4]]).scale(cyclo_inverse(I4 * Q(4)))
    assert inverse(closed) @ galois_map(conj, closed) == SWAP


def test_exact_solver_on_the_lifted_g9_family():
    B = {GaloisAuto(8, 1): Mat.identity(2)}
    for exp, m in _g9_frozen_maps().items():
        B[GaloisAuto(8, exp)] = inverse(m)
    m = hilbert90_solve(B)
    for g, b in B.items():
        assert inverse(m) @ galois_map(g, m) == b
    # averaging against the scalar 1 + z8 + z8^3 already gives an
    # invertible combination whose entries stay in the degree-8 field
    lam = ONE + Z8 + make_root(8, 3)
    x = None
    for g, b in B.items():
        term = b.scale(apply_galois(g, lam))
        x = term if x is None else x + term
    assert not det(x).is_zero()
    assert all(canonicalize(c).conductor in (1, 2, 4, 8) for c in x.entries)
    alt = inverse(x)
    for g, b in B.items():
        assert inverse(alt) @ galois_map(g, alt) == b


# ---------------------------------------------------------------------------
# tower descent

def test_g9_descent_from_the_degree_24_field():
    g9 = _g9()
    ctx = aut_context(g9)
    act24 = lift_action(shipped_action(g9), 24)
    model = as_model(g9, _g9_start24(), kind="starting")
    final = descend_tower(model, act24)
    assert final.conductor == 8
    assert final.kind == "starting"
    table = _model_table(ctx, final.images)
    display = _model_table(ctx, dict(g9.generators))
    assert all(trace(a) == trace(b) for a, b in zip(table, display))
    for gamma in (GaloisAuto(24, 11), GaloisAuto(24, 5), GaloisAuto(24, 19)):
        aut = act24[gamma]
        for name, gen in ctx.gen_elems.items():
            want = table[ctx.eidx[_elem_key(aut.apply(gen))]]
            assert galois_map(gamma, final.images[name]) == want


def test_descent_with_an_explicit_tower_is_deterministic():
    g9 = _g9()
    act24 = lift_action(shipped_action(g9), 24)
    model = as_model(g9, _g9_start24(), kind="starting")
    default = descend_tower(model, act24)
    chosen = descend_tower(model, act24,
                           tower=[GaloisAuto(24, 5), GaloisAuto(24, 7),
                                  GaloisAuto(24, 13)])
    assert default.images == chosen.images


def test_descent_fixes_an_already_equivariant_model():
    g9 = _g9()
    model = as_model(g9)
    final = descend_tower(model, shipped_action(g9))
    assert final.images == model.images


def test_descent_obstruction_for_the_quaternion_model():
    q8 = _quaternion_group()
    assert q8.order == 8
    q8.check_relations()
    ctx = aut_context(q8)
    with pytest.raises(DescentError) as err:
        descend_tower(as_model(q8), {GaloisAuto(4, 3): _identity_aut(ctx)})
    ob = err.value.obstruction
    assert isinstance(ob, ObstructionClass)
    assert ob.scalar == Q(-1)
    assert ob.generator.exponent == 3
    assert ob.order == 2
    assert ob.status == "unresolved"
    # and the scalar really is stuck: its norms are complex absolute
    # values, which are never negative
    assert norm_search(Q(-1), GaloisAuto(4, 3), 2)["status"] == "exhausted"


def test_descent_of_a_three_dimensional_model():
    spec = GroupSpec(4, 1, 3)
    model = build_model(((2,), (1,), (), ()))
    t = _rows([[Q(1), I4, Q(0)], [Q(0), Q(1), Q(0)], [Q(0), Q(0), Q(1)]])
    moved = {n: t @ m @ inverse(t) for n, m in model.images.items()}
    eta3 = eta_automorphism(spec, 3)
    final = descend_tower(as_model(spec, moved, kind="starting"),
                          {GaloisAuto(4, 3): eta3})
    coc = cocycle_from_model(final, {GaloisAuto(4, 3): eta3}, galois_units(4))
    for m in coc.maps.values():
        assert scalar_equivalent(m, Mat.identity(3))


def test_descent_tower_validation():
    g9 = _g9()
    act8 = shipped_action(g9)
    model = as_model(g9, _g9_start8(), kind="starting")
    with pytest.raises(DescentError, match="tower conductor"):
        descend_tower(model, act8, tower=[GaloisAuto(24, 5)])
    only3 = {GaloisAuto(8, 3): act8[GaloisAuto(8, 3)]}
    with pytest.raises(DescentError, match="does not cover exponent 5"):
        descend_tower(model, only3, tower=[GaloisAuto(8, 5)])


# ---------------------------------------------------------------------------
# assignments and towers

def test_close_assignment_generates_the_full_action():
    g9 = _g9()
    act8 = shipped_action(g9)
    sub = close_assignment({GaloisAuto(8, 3): act8[GaloisAuto(8, 3)],
                            GaloisAuto(8, 5): act8[GaloisAuto(8, 5)]})
    assert sorted(g.exponent for g in sub) == [1, 3, 5, 7]
    for g, a in sub.items():
        assert a.perm == act8[g].perm


def test_close_assignment_detects_contradictions():
    g9 = _g9()
    a5 = shipped_action(g9)[GaloisAuto(8, 5)]
    with pytest.raises(DescentError, match="not multiplicative"):
        close_assignment({GaloisAuto(8, 1): a5})


def test_lift_action_reindexes_by_residue():
    g9 = _g9()
    act8 = shipped_action(g9)
    act24 = lift_action(act8, 24)
    assert act24[GaloisAuto(24, 17)].is_identity()
    assert act24[GaloisAuto(24, 11)].perm == act8[GaloisAuto(8, 3)].perm
    with pytest.raises(DescentError, match="not a multiple"):
        lift_action(act8, 12)
    partial = {GaloisAuto(8, 1): act8[GaloisAuto(8, 1)],
               GaloisAuto(8, 3): act8[GaloisAuto(8, 3)]}
    with pytest.raises(DescentError, match="misses residue"):
        lift_action(partial, 24)


def test_shipped_action_is_a_closed_homomorphism():
    act = shipped_action(_g9())
    assert sorted(g.exponent for g in act) == [1, 3, 5, 7]
    assert act[GaloisAuto(8, 1)].is_identity()
    for g1 in act:
        for g2 in act:
            assert act[g1.compose(g2)].perm == \
                act[g1].compose(act[g2]).perm


def test_propose_tower_prefers_small_prime_stages():
    assert [g.exponent for g in propose_tower(8)] == [3, 5]
    assert [g.exponent for g in propose_tower(24)] == [5, 7, 13]
    assert all(g.conductor == 24 for g in propose_tower(24))
    assert [g.exponent for g in propose_tower(24, [11])] == [11]


# ---------------------------------------------------------------------------
# the dihedral family

def test_dihedral_split_criterion():
    nonsplit = {e for e in range(3, 31) if not dihedral_split(e)["split"]}
    assert nonsplit == {5, 10, 13, 17, 25, 26, 29}
    with pytest.raises(DescentError):
        dihedral_split(2)
    assert dihedral_split(12)["four_divides"]
    assert dihedral_split(7)["odd_prime"] == 7
    # powers of two in e must not hide an odd prime factor
    assert dihedral_split(6)["split"]
    assert dihedral_split(14)["split"]
    assert dihedral_split(22)["split"]


def test_dihedral_real_forms():
    rep3 = dihedral_equivariant(3)
    assert rep3["split"]
    assert [m["conductor"] for m in rep3["models"]] == [1]
    rep7 = dihedral_equivariant(7)
    assert rep7["split"] and len(rep7["models"]) == 3
    rep12 = dihedral_equivariant(12)
    assert rep12["split"]
    assert [m["conductor"] for m in rep12["models"]] == [12, 12, 1, 12, 12]
    conj = GaloisAuto(12, 11)
    for model in rep12["models"]:
        for obj in model["images"].values():
            m = mat_from_obj(obj)
            assert galois_map(conj, m) == m
    inner = [v["inner_conjugator"] for v in rep12["iota"].values()]
    assert [] in inner and ["s1"] in inner


def test_dihedral_five_stays_at_the_full_field():
    rep = dihedral_equivariant(5)
    assert not rep["split"]
    assert len(rep["models"]) == 2
    assert all(m["conductor"] == 5 for m in rep["models"])
    assert "full cyclotomic" in rep["note"]
    # consistent with that: every involutive automorphism of the order-10
    # group is inner, so no assignment can separate the two conjugates
    auts = aut_group(GroupSpec(1, 5, 2))
    invol = [a for a in auts
             if not a.is_identity() and a.compose(a).is_identity()]
    assert invol
    assert all(is_inner(a) for a in invol)


def test_dihedral_ten_reduces_to_conductor_five():
    rep = dihedral_equivariant(10)
    assert not rep["split"]
    assert [m["conductor"] for m in rep["models"]] == [5, 5, 5, 5]


# ---------------------------------------------------------------------------
# serialization

def test_cocycle_serialization_is_deterministic():
    import json

    def build():
        g9 = _g9()
        coc = cocycle_from_model(as_model(g9, _g9_start8(), kind="starting"),
                                 shipped_action(g9), galois_units(8))
        return cocycle_to_obj(coc)

    one, two = build(), build()
    assert one["conductor"] == 8
    assert one["acting"] == [1, 3, 5, 7]
    assert set(one["maps"]) == {"1", "3", "5", "7"}
    assert json.dumps(one, sort_keys=True) == json.dumps(two, sort_keys=True)


def test_obstruction_serialization():
    gamma = GaloisAuto(4, 3)
    stuck = ObstructionClass(4, gamma, 2, Q(-1))
    obj = obstruction_to_obj(stuck)
    assert obj["status"] == "unresolved" and obj["witness"] is None
    assert obj["generator"] == 3 and obj["order"] == 2
    resolved = ObstructionClass(4, gamma, 2, Q(2), witness=ONE + I4)
    obj2 = obstruction_to_obj(resolved)
    assert obj2["status"] == "norm" and obj2["witness"] is not None
