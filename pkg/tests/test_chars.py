from fractions import Fraction

import pytest

from galrep.cyclo import Cyclotomic, make_root, conjugate, GaloisAuto
from galrep.groups import GroupSpec, generator_map, load_explicit
from galrep.tableaux import build_model, restricted_model, reflection_tuples
from galrep.chars import (CharacterError, ClassFunction, class_data,
                          character_of, natural_character, trivial_character,
                          inner_product, irr_table, galois_on_character,
                          galois_orbit, reflection_characters, tensor_data,
                          sym2_ext2, is_faithful, table_to_obj,
                          character_field_conductor)

ONE = Cyclotomic.from_rational(1)


def test_trivial_model_gives_all_ones():
    cf = character_of(build_model(((2,), (), ())))
    assert all(v == 1 for v in cf.values)
    assert cf == trivial_character(class_data(GroupSpec(3, 1, 2)))


def test_natural_character_of_g312():
    spec = GroupSpec(3, 1, 2)
    cf = natural_character(spec)
    data = class_data(spec)
    assert cf.values[0] == 2
    t = generator_map(spec)["tp"]
    assert cf(t) == ONE + make_root(3, 1)


def test_reflection_tuple_model_has_natural_character():
    spec = GroupSpec(3, 1, 2)
    assert character_of(build_model(((1,), (1,), ()))) == natural_character(spec)


def test_character_of_restricted_model():
    m = restricted_model(((1,), (), (1,), ()), 2, -1)
    cf = character_of(m)
    assert cf.values[0] == m.dim


def test_inner_products():
    spec = GroupSpec(3, 1, 2)
    chi_v = natural_character(spec)
    assert inner_product(chi_v, chi_v) == 1

    s3 = GroupSpec(1, 1, 3)
    triv = character_of(build_model(((3,),)))
    sign = character_of(build_model(((1, 1, 1),)))
    assert inner_product(triv, sign) == 0

    g212 = GroupSpec(2, 1, 2)
    data = class_data(g212)
    reg_values = [Cyclotomic.from_rational(data.order if i == 0 else 0)
                  for i in range(len(data.classes))]
    reg = ClassFunction(data, reg_values)
    for cf in irr_table(g212):
        assert inner_product(reg, cf) == cf.values[0].coeffs[0]


def test_inner_product_group_mismatch():
    a = natural_character(GroupSpec(2, 1, 2))
    b = natural_character(GroupSpec(3, 1, 2))
    with pytest.raises(CharacterError):
        inner_product(a, b)


def test_irr_table_g312():
    rows = irr_table(GroupSpec(3, 1, 2))
    assert len(rows) == 9
    assert rows[0].values == tuple([ONE] * len(rows[0].values))


def test_irr_table_s4_dims():
    rows = irr_table(GroupSpec(1, 1, 4))
    dims = sorted(int(cf.values[0].coeffs[0]) for cf in rows)
    assert dims == [1, 1, 2, 3, 3]


def test_irr_table_g4_explicit():
    g4 = load_explicit("G4")
    rows = irr_table(g4)
    assert len(rows) == 7
    dims = sorted(int(cf.values[0].coeffs[0]) for cf in rows)
    assert dims == [1, 1, 1, 2, 2, 2, 3]


def test_irr_table_g222_matches_linear_count():
    rows = irr_table(GroupSpec(1, 2, 2))
    assert len(rows) == 4
    assert all(cf.values[0] == 1 for cf in rows)


def test_galois_on_linear_character_of_cyclic():
    rows = irr_table(GroupSpec(3, 1, 1))
    zeta = make_root(3, 1)
    chi = next(cf for cf in rows if cf.values[1] == zeta or cf.values[2] == zeta)
    other = galois_on_character(GaloisAuto(3, 2), chi)
    assert other in rows and other != chi
    rational = rows[0]
    assert galois_on_character(GaloisAuto(3, 2), rational) == rational


def test_galois_permutes_irr_table():
    for spec in (GroupSpec(4, 1, 2), GroupSpec(1, 3, 2)):
        rows = irr_table(spec)
        data = class_data(spec)
        n = data.exponent
        from galrep.cyclo import galois_units
        for s in galois_units(n):
            mapped = [galois_on_character(s, cf) for cf in rows]
            assert sorted(m.sort_key() for m in mapped) == \
                sorted(cf.sort_key() for cf in rows)


def test_galois_orbit_of_reflection_character():
    chi_v = natural_character(GroupSpec(4, 1, 2))
    orbit = galois_orbit(chi_v)
    assert len(orbit) == 2
    models = {character_of(build_model(t)) for t in reflection_tuples(4, 2)}
    assert set(orbit) == models


def test_reflection_characters_series():
    for spec in (GroupSpec(4, 1, 3), GroupSpec(1, 3, 3), GroupSpec(2, 2, 2)):
        found = reflection_characters(spec)
        orbit = galois_orbit(natural_character(spec))
        assert set(found) == set(orbit), spec.name()
        assert len(found) == len(orbit)


def test_reflection_characters_symmetric_group():
    rows = reflection_characters(GroupSpec(1, 1, 4))
    assert len(rows) == 1
    assert rows[0] == character_of(build_model(((3, 1),)))


def test_reflection_characters_g4():
    g4 = load_explicit("G4")
    found = reflection_characters(g4)
    orbit = galois_orbit(natural_character(g4))
    assert set(found) == set(orbit)
    assert len(found) == 2


def test_column_orthogonality():
    for group in (GroupSpec(3, 1, 2), GroupSpec(1, 2, 3), load_explicit("G4")):
        data = class_data(group)
        rows = irr_table(group)
        k = len(data.classes)
        for c in range(k):
            for cp in range(c, k):
                acc = Cyclotomic.from_rational(0)
                for cf in rows:
                    acc = acc + cf.values[c] * conjugate(cf.values[cp])
                if c == cp:
                    assert acc == data.order // data.sizes[c]
                else:
                    assert acc == 0


def test_tensor_multiplicity_bound():
    spec = GroupSpec(3, 1, 2)
    rows = irr_table(spec)
    chi_v = natural_character(spec)
    for i, a in enumerate(rows):
        mults = tensor_data(a, chi_v)
        total = sum(m * int(cf.values[0].coeffs[0])
                    for m, cf in zip(mults, rows))
        assert total == int((a.values[0] * chi_v.values[0]).coeffs[0])
        for j, m in enumerate(mults):
            if j != i:
                assert m <= 1


def test_sym2_ext2():
    g212 = GroupSpec(2, 1, 2)
    chi_v = natural_character(g212)
    sym, ext = sym2_ext2(chi_v)
    assert inner_product(ext, ext) == 1
    for i in range(len(chi_v.values)):
        assert sym.values[i] + ext.values[i] == chi_v.values[i] * chi_v.values[i]

    s3 = GroupSpec(1, 1, 3)
    nat = natural_character(s3)
    sym3, ext3 = sym2_ext2(nat)
    for i in range(len(nat.values)):
        assert sym3.values[i] + ext3.values[i] == nat.values[i] * nat.values[i]


def test_is_faithful():
    spec = GroupSpec(3, 1, 2)
    assert is_faithful(natural_character(spec))
    assert not is_faithful(trivial_character(class_data(spec)))


def test_character_field_conductor():
    assert character_field_conductor(natural_character(GroupSpec(3, 1, 2))) == 3
    assert character_field_conductor(natural_character(GroupSpec(1, 1, 3))) == 1


def test_table_to_obj_shapes():
    obj = table_to_obj(GroupSpec(2, 1, 2))
    assert obj["group"] == {"kind": "imprimitive", "d": 2, "e": 1, "r": 2}
    assert len(obj["classes"]) == len(obj["rows"])
    assert all(len(row) == len(obj["classes"]) for row in obj["rows"])
    g4 = table_to_obj(load_explicit("G4"))
    assert g4["group"] == {"kind": "explicit", "label": "G4"}
    assert all(isinstance(c["rep"], str) for c in g4["classes"])


def test_unitarizable_check_on_character_of():
    cf = character_of(build_model(((1,), (1,), ())))
    data = cf.data
    for i in range(len(cf.values)):
        assert cf.values[data.inverse_class[i]] == conjugate(cf.values[i])
