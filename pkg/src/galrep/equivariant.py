"""Propagation of Galois-equivariant models through tensor decomposition.

Every irreducible character is assigned a level: the smallest tensor power
of the defining reflection model that contains it.  Models are then built
level by level.  A character of level n + 1 picks a parent of level n whose
product with the reflection character contains it exactly once, and its
model is cut out of parent (x) reflection with an exact isotypic projector.

When the reflection model commutes with a Galois-to-automorphism assignment
on the nose, the projector has entries in the fixed field, so the extracted
model satisfies the same commutation.  Nothing here relies on that argument:
equivariance of every output is re-checked generator by generator.

The fixpoint scan answers the reachability question alone.  It grows the
set of characters obtainable by multiplicity-one steps from the trivial and
reflection characters, without building any matrices, and reports how many
sweeps the growth took.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .auts import aut_context
from .chars import (ClassFunction, character_field_conductor, class_data,
                    galois_on_character, inner_product, irr_table, is_faithful,
                    natural_character, reflection_characters,
                    trivial_character)
from .cyclo import Cyclotomic
from .cyclo import inverse as cyclo_inverse
from .descent import _field_of, _model_table, close_assignment
from .groups import _elem_key
from .linalg import Mat, galois_map, kronecker, rank, trace
from .linalg import to_obj as mat_to_obj
from .tableaux import RepModel

ZERO = Cyclotomic.from_rational(0)


class EquivariantError(ValueError):
    pass


@dataclass(frozen=True)
class LevelIndex:
    """Position of a character in the tensor-power filtration.

    char_index is the row number in the irreducible table, or None when the
    class function is not one of its rows.  level is the smallest power of
    the reflection character that contains the character; the trivial
    character alone sits at level 0 and the reflection character at 1."""
    char_index: int | None
    level: int


# ---------------------------------------------------------------------------
# the reflection character and levels

def reflection_character(group) -> ClassFunction:
    """The character of the defining reflection action, as a row of the
    irreducible table.

    For monomial groups whose defining action is reducible (the symmetric
    groups, where it is trivial plus standard) the trivial summand is
    dropped.  Explicit matrix groups trace their stored generators."""
    data = class_data(group)
    irr = irr_table(group)
    nat = natural_character(group)
    for cf in irr:
        if cf == nat:
            return cf
    triv = trivial_character(data)
    dropped = ClassFunction(
        data, [nat.values[c] - triv.values[c] for c in range(len(nat.values))])
    for cf in irr:
        if cf == dropped:
            return cf
    orbit = reflection_characters(group)
    if orbit:
        return orbit[0]
    raise EquivariantError("group has no reflection character")


def _pointwise_product(a: ClassFunction, b: ClassFunction) -> ClassFunction:
    return ClassFunction(
        a.data, [a.values[c] * b.values[c] for c in range(len(a.values))])


def level(chi: ClassFunction, chi0: ClassFunction | None = None) -> LevelIndex:
    """The smallest n with <chi, chi0^n> >= 1, chi0 the reflection
    character.  Zero exactly for the trivial character; computed by exact
    iterated products, and bounded by the group order because chi0 is
    faithful."""
    data = chi.data
    irr = irr_table(data.group)
    idx = None
    for i, cf in enumerate(irr):
        if cf == chi:
            idx = i
            break
    if chi0 is None:
        chi0 = reflection_character(data.group)
    cur = trivial_character(data)
    if inner_product(cur, chi) >= 1:
        return LevelIndex(idx, 0)
    for n in range(1, data.order + 1):
        cur = _pointwise_product(cur, chi0)
        if inner_product(cur, chi) >= 1:
            return LevelIndex(idx, n)
    raise EquivariantError("level search passed the group order")


def _levels_for(data, irr: list, chi0: ClassFunction) -> list:
    """Levels of every irreducible row at once, by one shared iteration."""
    levels = [None] * len(irr)
    triv = trivial_character(data)
    for i, cf in enumerate(irr):
        if cf == triv:
            levels[i] = 0
    cur = triv
    n = 0
    while any(v is None for v in levels):
        n += 1
        if n > data.order:
            raise EquivariantError("level search passed the group order")
        cur = _pointwise_product(cur, chi0)
        for i, cf in enumerate(irr):
            if levels[i] is None and inner_product(cur, cf) >= 1:
                levels[i] = n
    return levels


# ---------------------------------------------------------------------------
# isotypic extraction

def _character_of_table(data, ctx, table: list) -> ClassFunction:
    vals = [trace(table[ctx.eidx[_elem_key(rep)]]) for rep in data.reps]
    return ClassFunction(data, vals)


def _column_solve(cmat: Mat, y: Mat) -> Mat:
    """Solve cmat @ x = y exactly, for cmat of full column rank.

    Gaussian elimination on the augmented matrix; rows beyond the rank must
    clear to zero on the right side, otherwise y leaves the column span."""
    n, k = cmat.rows, cmat.cols
    aug = [[cmat[(i, j)] for j in range(k)]
           + [y[(i, j)] for j in range(y.cols)] for i in range(n)]
    r = 0
    for c in range(k):
        sel = None
        for i in range(r, n):
            if aug[i][c] != ZERO:
                sel = i
                break
        if sel is None:
            raise EquivariantError("basis columns are not independent")
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = cyclo_inverse(aug[r][c])
        aug[r] = [v * inv for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != ZERO:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        r += 1
    for i in range(k, n):
        if any(v != ZERO for v in aug[i][k:]):
            raise EquivariantError("image vector leaves the column span")
    return Mat.from_rows([row[k:] for row in aug[:k]])


def isotypic_extract(big, chi: ClassFunction) -> RepModel:
    """Cut the chi-isotypic summand out of a model containing it once.

    Builds the projector (chi(1)/#G) sum chi(g^{-1}) rho(g), checks that it
    is idempotent of rank chi(1), takes the leftmost independent columns of
    its matrix as the new basis, and solves for the restricted generator
    images.  The output is re-verified: its generator images satisfy the
    group's relations and its character equals chi exactly."""
    group = big.group
    data = class_data(group)
    if chi.data.name != data.name:
        raise EquivariantError("character belongs to a different group")
    ctx = aut_context(group)
    images = dict(big.images)
    table = _model_table(ctx, images)
    field = _field_of(images)
    chi_field = character_field_conductor(chi)
    if field % chi_field != 0:
        raise EquivariantError(
            f"character values generate conductor {chi_field}, outside the "
            f"model field of conductor {field}")
    mult = inner_product(_character_of_table(data, ctx, table), chi)
    if mult != 1:
        raise EquivariantError(
            f"character occurs with multiplicity {mult}, extraction needs "
            "exactly 1")
    k = int(chi.values[0].coeffs[0])
    n = table[0].rows
    acc = Mat.zero(n, n)
    for pos, g in enumerate(ctx.elements):
        val = chi.values[data.inverse_class[data.class_of(g)]]
        if val != ZERO:
            acc = acc + table[pos].scale(val)
    p = acc.scale(Fraction(k, data.order))
    if p @ p != p:
        raise EquivariantError("isotypic projector is not idempotent")
    if rank(p) != k:
        raise EquivariantError("isotypic projector rank differs from the "
                               "character degree")
    cols: list = []
    for j in range(n):
        trial = cols + [p.col(j)]
        fat = Mat.from_rows(
            [[trial[c][i] for c in range(len(trial))] for i in range(n)])
        if rank(fat) == len(trial):
            cols.append(p.col(j))
        if len(cols) == k:
            break
    cmat = Mat.from_rows([[cols[c][i] for c in range(k)] for i in range(n)])
    new_images = {name: _column_solve(cmat, img @ cmat)
                  for name, img in images.items()}
    new_table = _model_table(ctx, new_images)
    if _character_of_table(data, ctx, new_table).values != chi.values:
        raise EquivariantError("extracted model has the wrong character")
    return RepModel(group=group, basis=list(range(k)), images=new_images,
                    conductor=_field_of(new_images), kind="isotypic")


# ---------------------------------------------------------------------------
# equivariance checks

def _equivariance_failures(ctx, images: dict, table: list,
                           itilde: dict) -> list:
    """Generator images violating gamma(rho(s)) = rho(itilde[gamma](s)),
    as (exponent, generator name) pairs."""
    bad = []
    for gamma, aut in itilde.items():
        for name, g in ctx.gen_elems.items():
            lhs = galois_map(gamma, images[name])
            rhs = table[ctx.eidx[_elem_key(aut.apply(g))]]
            if lhs != rhs:
                bad.append((gamma.exponent, name))
    return bad


def _character_stable(data, chi: ClassFunction, itilde: dict) -> bool:
    """Whether chi composed with each assigned automorphism equals the
    Galois image of chi, the condition for an equivariant model to exist."""
    for gamma, aut in itilde.items():
        moved = galois_on_character(gamma, chi)
        composed = [chi.values[data.class_of(aut.apply(rep))]
                    for rep in data.reps]
        if list(moved.values) != composed:
            return False
    return True


def multiplicity_bound_report(group, chi0: ClassFunction | None = None) -> dict:
    """Tensor multiplicities (chi_i * chi0 | chi_j) over distinct pairs.

    The level induction needs every such multiplicity at most one; the
    report lists the violating pairs so a caller can route around them."""
    data = class_data(group)
    irr = irr_table(group)
    if chi0 is None:
        chi0 = reflection_character(group)
    worst = 0
    violations = []
    for i, a in enumerate(irr):
        prod = _pointwise_product(a, chi0)
        for j, b in enumerate(irr):
            if j == i:
                continue
            m = inner_product(prod, b)
            if m > worst:
                worst = int(m)
            if m > 1:
                violations.append((i, j, int(m)))
    return {"max": worst, "violations": violations,
            "holds": not violations}


# ---------------------------------------------------------------------------
# the level induction

def build_by_level(group, rho0, itilde: dict | None = None) -> dict:
    """Build a model for every irreducible character, level by level.

    rho0 is the reflection model the levels are measured against; itilde an
    optional Galois-to-automorphism assignment it commutes with (checked up
    front, closed under composition).  Each character takes the first
    already-built parent containing it with tensor multiplicity exactly
    one, trying the previous level before the other built models; sweeps
    over the remaining characters repeat until one makes no progress, which
    lets a character whose previous-level parents all repeat it twice wait
    for a usable parent from a later level.  Characters moved by the
    twisted Galois action, or left without a multiplicity-one parent at the
    fixpoint, are reported unreachable rather than built.  Every built
    model is verified: character equal to its table row and equivariance
    under the full assignment."""
    data = class_data(group)
    ctx = aut_context(group)
    irr = irr_table(group)
    images0 = dict(rho0.images)
    table0 = _model_table(ctx, images0)
    chi0 = _character_of_table(data, ctx, table0)
    if inner_product(chi0, chi0) != 1:
        raise EquivariantError("starting model is reducible")
    if not is_faithful(chi0):
        raise EquivariantError("starting model is not faithful")
    if itilde:
        itilde = close_assignment(itilde)
        bad = _equivariance_failures(ctx, images0, table0, itilde)
        if bad:
            raise EquivariantError(
                f"starting model is not equivariant: failures at {bad}")
    else:
        itilde = {}
    report = multiplicity_bound_report(group, chi0)
    levels = _levels_for(data, irr, chi0)
    order = sorted(range(len(irr)), key=lambda i: (levels[i], i))
    models: dict = {}
    parents: dict = {}
    flags: dict = {}
    mults: dict = {}

    def tensor_mult(j: int, i: int) -> int:
        if (j, i) not in mults:
            prod = _pointwise_product(irr[j], chi0)
            for i2, cf in enumerate(irr):
                mults[(j, i2)] = int(inner_product(prod, cf))
        return mults[(j, i)]

    dead: dict = {}
    for i in order:
        if levels[i] > 0 and not _character_stable(data, irr[i], itilde):
            dead[i] = "character moves under the twisted Galois action"
    progress = True
    while progress:
        progress = False
        for i in order:
            if i in models or i in dead:
                continue
            chi = irr[i]
            lv = levels[i]
            if lv == 0:
                ident = {name: Mat.identity(1) for name in ctx.gen_names}
                models[i] = RepModel(group=group, basis=[0], images=ident,
                                     conductor=1, kind="isotypic")
                parents[i] = None
                flags[i] = {"equivariant": True, "character_matches": True}
                progress = True
                continue
            built = sorted(models)
            candidates = ([j for j in built if levels[j] == lv - 1]
                          + [j for j in built if levels[j] != lv - 1])
            parent = next((j for j in candidates
                           if tensor_mult(j, i) == 1), None)
            if parent is None:
                continue
            big_images = {name: kronecker(models[parent].images[name],
                                          images0[name])
                          for name in ctx.gen_names}
            big = RepModel(group=group,
                           basis=list(range(models[parent].dim * rho0.dim)),
                           images=big_images,
                           conductor=_field_of(big_images), kind="tensor")
            model = isotypic_extract(big, chi)
            new_table = _model_table(ctx, model.images, check=False)
            bad = _equivariance_failures(ctx, model.images, new_table,
                                         itilde)
            if bad:
                raise EquivariantError(
                    f"extracted model lost equivariance at {bad}")
            models[i] = model
            parents[i] = parent
            flags[i] = {"equivariant": True, "character_matches": True}
            progress = True
    unreachable = []
    for i in range(len(irr)):
        if i in models:
            continue
        unreachable.append(i)
        flags[i] = {"reason": dead.get(
            i, "no multiplicity-one parent among the built models")}
    return {"group": data.name, "order": data.order, "levels": levels,
            "parents": parents, "models": models, "flags": flags,
            "unreachable": unreachable, "multiplicity": report}


def bundle_to_obj(bundle: dict) -> dict:
    """JSON-ready form of a build_by_level result, characters in table
    order, matrices through the shared matrix serializer."""
    items = []
    for i, lv in enumerate(bundle["levels"]):
        model = bundle["models"].get(i)
        entry: dict = {"index": i, "level": lv,
                       "parent": bundle["parents"].get(i),
                       "built": model is not None}
        if model is not None:
            entry["dim"] = model.dim
            entry["conductor"] = model.conductor
            entry["images"] = {name: mat_to_obj(m)
                               for name, m in sorted(model.images.items())}
        for key, val in sorted(bundle["flags"].get(i, {}).items()):
            entry[key] = val
        items.append(entry)
    mult = bundle["multiplicity"]
    return {"group": bundle["group"],
            "items": items,
            "unreachable": list(bundle["unreachable"]),
            "multiplicity": {"max": mult["max"], "holds": mult["holds"],
                             "violations": [list(v)
                                            for v in mult["violations"]]}}


# ---------------------------------------------------------------------------
# the reachability fixpoint

def algorithm_L(group, exceptional=()) -> dict:
    """Grow the set of characters reachable by multiplicity-one tensor
    steps from the trivial and reflection characters.

    One round recomputes the frontier from the current set only, so the
    round count matches the depth of the induction.  Characters listed in
    exceptional are never added.  Returns the reached index set, the number
    of growing rounds, and whether everything outside the exceptional set
    was reached."""
    data = class_data(group)
    irr = irr_table(group)
    chi0 = reflection_character(group)
    excl = frozenset(exceptional)
    reached = {i for i, cf in enumerate(irr)
               if cf == trivial_character(data) or cf == chi0}
    rounds = 0
    while True:
        grown = set(reached)
        for j in sorted(reached):
            prod = _pointwise_product(irr[j], chi0)
            for i, cf in enumerate(irr):
                if i in grown or i in excl:
                    continue
                if inner_product(prod, cf) == 1:
                    grown.add(i)
        if len(grown) == len(reached):
            break
        reached = grown
        rounds += 1
    wanted = len(irr) - len(excl & set(range(len(irr))))
    return {"reached": sorted(reached), "rounds": rounds,
            "complete": len(reached) == wanted}
