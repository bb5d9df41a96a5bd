"""Automorphism groups of the reflection groups in this package.

An automorphism is stored as a permutation of the group's canonical element
list, so composition, inversion and equality are index operations.  Building
one from generator images walks the Cayley graph and checks
pi(x s) = pi(x) pi(s) for every element x and generator s; together with the
walk's defining assignments this forces multiplicativity on all pairs, and
bijectivity is checked separately.

aut_group finds all automorphisms by searching generator images over the
conjugacy classes with matching element order and class size, pruning with
the defining relations, then closing the survivors under composition with
inner automorphisms.  Outer classes are separated by the induced permutation
of the irreducible characters, on which the outer group acts faithfully.

Two distinguished subgroups are built directly: the reflection-preserving
automorphisms, and the central automorphisms g -> g * chi(g)^{-1} attached
to homomorphisms chi from the group into its subgroup of scalar central
elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from .cyclo import GaloisAuto, apply_galois
from .linalg import Mat, galois_map
from .groups import (ExplicitGroup, GroupError, GroupSpec, MonomialElement,
                     _class_order, _elem_key, _generic_inv, _generic_is_identity,
                     _generic_mul, ambient_t, element_to_obj, evaluate_word,
                     generator_map, group_to_obj, relations_for)
from .linalg import to_obj as mat_to_obj
from .chars import _is_reflection_element, class_data, irr_table
from .tableaux import RepModel, element_images


class AutError(ValueError):
    pass


# ---------------------------------------------------------------------------
# per-group context

@dataclass
class AutContext:
    group: object
    name: str
    data: object                  # conjugacy class data
    elements: list
    eidx: dict                    # element key -> position in elements
    gen_names: list
    gen_elems: dict               # name -> element
    gen_pos: dict                 # name -> position of the generator
    relations: list               # (name, lhs word, rhs word)
    right_gen: dict               # name -> right multiplication table
    reflections: frozenset        # positions of the reflections
    center: list                  # positions of central elements
    scalar_center: list           # positions of scalar central elements
    inner: list | None = None

    @property
    def n(self) -> int:
        return len(self.elements)


_CTX_CACHE: dict[str, AutContext] = {}


def _is_scalar_element(g) -> bool:
    if isinstance(g, MonomialElement):
        return (g.perm == tuple(range(g.spec.r))
                and len(set(g.exps)) == 1)
    first = g[(0, 0)]
    return g == Mat.identity(g.rows).scale(first)


def aut_context(group) -> AutContext:
    data = class_data(group)
    if data.name in _CTX_CACHE:
        return _CTX_CACHE[data.name]
    elements = data.elements
    eidx = {_elem_key(g): i for i, g in enumerate(elements)}
    if isinstance(group, GroupSpec):
        gens = generator_map(group)
        relations = relations_for(group)
    else:
        gens = dict(sorted(group.generators.items()))
        relations = [(f"rel{i}", lhs, rhs)
                     for i, (lhs, rhs) in enumerate(group.relations or [])]
    right = {name: [eidx[_elem_key(_generic_mul(x, s))] for x in elements]
             for name, s in gens.items()}
    reflections = frozenset(i for i, g in enumerate(elements)
                            if _is_reflection_element(g))
    center = [i for i, g in enumerate(elements)
              if all(_elem_key(_generic_mul(g, s)) == _elem_key(_generic_mul(s, g))
                     for s in gens.values())]
    scalar_center = [i for i in center if _is_scalar_element(elements[i])]
    if not _generic_is_identity(elements[0]):
        raise AutError("canonical element list does not start at the identity")
    ctx = AutContext(group, data.name, data, elements, eidx, list(gens), gens,
                     {name: eidx[_elem_key(s)] for name, s in gens.items()},
                     relations, right, reflections, center, scalar_center)
    _CTX_CACHE[data.name] = ctx
    return ctx


def _as_context(group_or_ctx) -> AutContext:
    if isinstance(group_or_ctx, AutContext):
        return group_or_ctx
    return aut_context(group_or_ctx)


# ---------------------------------------------------------------------------
# the automorphism type

class Automorphism:
    """A group automorphism as a permutation of element positions."""

    __slots__ = ("ctx", "perm")

    def __init__(self, ctx: AutContext, perm):
        perm = tuple(perm)
        if len(perm) != ctx.n:
            raise AutError("permutation length does not match the group")
        self.ctx = ctx
        self.perm = perm

    def apply(self, g):
        ctx = self.ctx
        return ctx.elements[self.perm[ctx.eidx[_elem_key(g)]]]

    def gen_images(self) -> dict:
        return {name: self.ctx.elements[self.perm[pos]]
                for name, pos in self.ctx.gen_pos.items()}

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other."""
        if self.ctx is not other.ctx:
            raise AutError("automorphisms of different groups")
        p = self.perm
        return Automorphism(self.ctx, tuple(p[i] for i in other.perm))

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return Automorphism(self.ctx, inv)

    def power(self, k: int) -> "Automorphism":
        if k < 0:
            return self.inverse().power(-k)
        out = Automorphism(self.ctx, range(self.ctx.n))
        base = self
        while k:
            if k & 1:
                out = out.compose(base)
            base = base.compose(base)
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    def __eq__(self, other):
        return (isinstance(other, Automorphism)
                and self.ctx.name == other.ctx.name and self.perm == other.perm)

    def __hash__(self):
        return hash((self.ctx.name, self.perm))

    def __repr__(self):
        imgs = ", ".join(f"{name}->{self.ctx.elements[self.perm[pos]]!r}"
                         for name, pos in self.ctx.gen_pos.items())
        return f"<aut of {self.ctx.name}: {imgs}>"


def _elem_obj(g):
    if isinstance(g, MonomialElement):
        return element_to_obj(g)
    return mat_to_obj(g)


def aut_to_obj(a: Automorphism) -> dict:
    return {"group": a.ctx.name,
            "generator_images": {name: _elem_obj(g)
                                 for name, g in a.gen_images().items()}}


# ---------------------------------------------------------------------------
# construction from generator images

def _extend_images(ctx: AutContext, images: dict, *, need_bijective=True):
    """Extend generator images to an index map over the whole group.

    Returns (perm, reason).  perm is None when the images are inconsistent
    with some product; a total but non-bijective endomorphism is returned
    with reason "not bijective" so callers can decide.
    """
    n = ctx.n
    perm = [-1] * n
    perm[0] = 0
    frontier = [0]
    elements, eidx, right = ctx.elements, ctx.eidx, ctx.right_gen
    while frontier:
        nxt = []
        for i in frontier:
            pi = elements[perm[i]]
            for name in ctx.gen_names:
                j = right[name][i]
                v = eidx[_elem_key(_generic_mul(pi, images[name]))]
                if perm[j] < 0:
                    perm[j] = v
                    nxt.append(j)
                elif perm[j] != v:
                    return None, "images are not multiplicative"
        frontier = nxt
    perm = tuple(perm)
    if need_bijective and len(set(perm)) != n:
        return perm, "not bijective"
    return perm, ""


def try_automorphism(group, images: dict):
    """(Automorphism, "") when the generator images define one, else
    (None, reason).  Image values may be elements or element positions."""
    ctx = _as_context(group)
    norm = {}
    for name in ctx.gen_names:
        if name not in images:
            return None, f"missing image for generator {name!r}"
        g = images[name]
        if isinstance(g, int):
            g = ctx.elements[g]
        if _elem_key(g) not in ctx.eidx:
            return None, f"image of {name!r} is not in the group"
        norm[name] = g
    perm, reason = _extend_images(ctx, norm)
    if perm is None or reason:
        return None, reason
    return Automorphism(ctx, perm), ""


def automorphism_from_images(group, images: dict) -> Automorphism:
    """As try_automorphism, but failures raise and name a failing relation."""
    ctx = _as_context(group)
    a, reason = try_automorphism(ctx, images)
    if a is not None:
        return a
    norm = {name: ctx.elements[g] if isinstance(g, int) else g
            for name, g in images.items() if name in ctx.gen_names}
    failing = []
    if len(norm) == len(ctx.gen_names) and all(
            _elem_key(g) in ctx.eidx for g in norm.values()):
        for relname, lhs, rhs in ctx.relations:
            if not _relation_holds(lhs, rhs, norm):
                failing.append(relname)
    if failing:
        raise AutError("images break the relations: " + ", ".join(failing))
    raise AutError(reason)


def _relation_holds(lhs, rhs, images) -> bool:
    lv = evaluate_word(lhs, images)
    rv = evaluate_word(rhs, images)
    if lv is None:
        lv, rv = rv, lv
    if rv is None:
        return lv is None or _generic_is_identity(lv)
    return _elem_key(lv) == _elem_key(rv)


def _verified_automorphism(ctx: AutContext, perm) -> Automorphism:
    """Wrap an index map after re-deriving it from its own generator images."""
    images = {name: ctx.elements[perm[pos]] for name, pos in ctx.gen_pos.items()}
    a, reason = try_automorphism(ctx, images)
    if a is None or a.perm != tuple(perm):
        raise AutError(f"map is not an automorphism ({reason or 'inconsistent'})")
    return a


# ---------------------------------------------------------------------------
# inner automorphisms

def inner_automorphisms(group) -> list:
    """All conjugations, as Automorphisms, sorted; |Inn| = |G|/|Z| is checked."""
    ctx = _as_context(group)
    if ctx.inner is not None:
        return list(ctx.inner)
    n = ctx.n
    seeds = []
    for name in ctx.gen_names:
        s = ctx.gen_elems[name]
        sinv = _generic_inv(s)
        seeds.append(tuple(ctx.eidx[_elem_key(
            _generic_mul(_generic_mul(s, x), sinv))] for x in ctx.elements))
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in seeds:
                c = tuple(q[i] for i in p)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    if len(seen) != n // len(ctx.center):
        raise AutError("inner automorphism count disagrees with |G|/|Z|")
    ctx.inner = [Automorphism(ctx, p) for p in sorted(seen)]
    return list(ctx.inner)


def is_inner(a: Automorphism) -> bool:
    return any(a.perm == b.perm for b in inner_automorphisms(a.ctx))


# ---------------------------------------------------------------------------
# the full automorphism group

def irr_signature(group, a: Automorphism) -> tuple:
    """The permutation of the irreducible characters induced by a."""
    ctx = _as_context(group)
    rows = irr_table(ctx.group)
    data = ctx.data
    by_values = {tuple(r.values): i for i, r in enumerate(rows)}
    moved = [data.class_of(a.apply(rep)) for rep in data.reps]
    sig = []
    for r in rows:
        key = tuple(r.values[c] for c in moved)
        if key not in by_values:
            raise AutError("map does not permute the character table")
        sig.append(by_values[key])
    return tuple(sig)


@dataclass(frozen=True)
class OuterClass:
    representative: Automorphism
    signature: tuple


_AUT_CACHE: dict[str, list] = {}


def aut_group(group, bound: int = 1000) -> list:
    """Every automorphism, sorted by element permutation.

    Generator images are searched over the conjugacy classes with the same
    element order and class size as the generator; the first generator is
    pinned to class representatives, which loses nothing once the survivors
    are composed with all inner automorphisms.
    """
    ctx = _as_context(group)
    if ctx.name in _AUT_CACHE:
        return list(_AUT_CACHE[ctx.name])
    if ctx.n > bound:
        raise AutError(f"{ctx.name} has {ctx.n} elements, above the bound {bound}")
    data = ctx.data

    candidates = {}
    for k, name in enumerate(ctx.gen_names):
        cls = data.class_of(ctx.gen_elems[name])
        key = (data.orders[cls], data.sizes[cls])
        pool = []
        for c in range(len(data.reps)):
            if (data.orders[c], data.sizes[c]) == key:
                pool.extend(data.classes[c][:1] if k == 0 else data.classes[c])
        candidates[name] = pool

    depth_of = {name: i for i, name in enumerate(ctx.gen_names)}
    rel_at = [[] for _ in ctx.gen_names]
    for rel in ctx.relations:
        names = set(rel[1]) | set(rel[2])
        if names:
            rel_at[max(depth_of[nm] for nm in names)].append(rel)

    survivors = []
    images: dict = {}

    def place(k: int):
        if k == len(ctx.gen_names):
            survivors.append(dict(images))
            return
        name = ctx.gen_names[k]
        for g in candidates[name]:
            images[name] = g
            if all(_relation_holds(lhs, rhs, images) for _, lhs, rhs in rel_at[k]):
                place(k + 1)
        del images[name]

    place(0)

    by_sig: dict = {}
    for imgs in survivors:
        a, _ = try_automorphism(ctx, imgs)
        if a is None:
            continue
        sig = irr_signature(ctx, a)
        cur = by_sig.get(sig)
        if cur is None or a.perm < cur.perm:
            by_sig[sig] = a

    inner = inner_automorphisms(ctx)
    perms = set()
    for rep in by_sig.values():
        for inn in inner:
            perms.add(tuple(inn.perm[j] for j in rep.perm))
    if len(perms) != len(inner) * len(by_sig):
        raise AutError("outer class bookkeeping failed")
    out = [Automorphism(ctx, p) for p in sorted(perms)]
    _AUT_CACHE[ctx.name] = out
    return list(out)


def outer_classes(group) -> list[OuterClass]:
    """One representative per coset of the inner automorphisms, keyed and
    sorted by the induced permutation of Irr."""
    ctx = _as_context(group)
    by_sig: dict = {}
    for a in aut_group(ctx.group):
        sig = irr_signature(ctx, a)
        cur = by_sig.get(sig)
        if cur is None or a.perm < cur.perm:
            by_sig[sig] = a
    return [OuterClass(by_sig[s], s) for s in sorted(by_sig)]


# ---------------------------------------------------------------------------
# distinguished subgroups

def reflection_preserving(auts, group) -> list:
    """The automorphisms in the given list that stabilize the reflection set."""
    ctx = _as_context(group)
    refl = ctx.reflections
    return [a for a in auts if {a.perm[i] for i in refl} == refl]


def central_auts(group) -> list:
    """Automorphisms of the form g -> g * chi(g)^{-1} with chi a homomorphism
    into the scalar central elements.

    Each candidate is determined by one central factor per generator; every
    factor tuple is tried, and the ones whose extension is a bijection are
    exactly the central automorphisms.  The list is closed under composition.
    """
    ctx = _as_context(group)
    found = []
    for tup in product(ctx.scalar_center, repeat=len(ctx.gen_names)):
        images = {}
        for name, zi in zip(ctx.gen_names, tup):
            z = ctx.elements[zi]
            images[name] = _generic_mul(ctx.gen_elems[name], _generic_inv(z))
        a, _ = try_automorphism(ctx, images)
        if a is not None:
            found.append(a)
    found.sort(key=lambda a: a.perm)
    perms = {a.perm for a in found}
    for a in found:
        for b in found:
            if tuple(a.perm[i] for i in b.perm) not in perms:
                raise AutError("central automorphisms are not closed")
    return found


def verify_structure(group) -> dict:
    """Check that every automorphism is central-times-reflection-preserving.

    Returns a report with the orders involved and, when the factorization
    fails, a witness automorphism outside the product set.
    """
    ctx = _as_context(group)
    auts = aut_group(ctx.group)
    refl_preserving = reflection_preserving(auts, ctx)
    central = central_auts(ctx)
    inner = inner_automorphisms(ctx)

    all_perms = {a.perm for a in auts}
    prod = set()
    for c in central:
        for a in refl_preserving:
            prod.add(tuple(c.perm[i] for i in a.perm))
    covers = prod == all_perms

    if isinstance(ctx.group, GroupSpec):
        rank = ctx.group.r
    else:
        rank = next(iter(ctx.group.generators.values())).rows
    trivial_meet = None
    if rank > 2:
        meet = {c.perm for c in central} & {a.perm for a in refl_preserving}
        trivial_meet = meet == {tuple(range(ctx.n))}

    witnesses = []
    if not covers:
        extra = sorted(all_perms - prod)[0]
        witnesses.append({"kind": "automorphism outside the product",
                          **aut_to_obj(Automorphism(ctx, extra))})
    if trivial_meet is False:
        witnesses.append({"kind": "nontrivial intersection",
                          "order": len(meet)})

    return {
        "group": ctx.name,
        "claim": "Aut = central * reflection-preserving",
        "aut_order": len(auts),
        "inn_order": len(inner),
        "out_order": len(auts) // len(inner),
        "central_order": len(central),
        "reflection_preserving_order": len(refl_preserving),
        "trivial_intersection": trivial_meet,
        "holds": bool(covers and trivial_meet is not False),
        "witnesses": witnesses,
    }


# ---------------------------------------------------------------------------
# the diagonal twist in the outer group

def nbar_order(spec: GroupSpec) -> int:
    """Order of conjugation-by-t in Out(G(de,e,r)).

    Conjugation by t^i is inner exactly when t^i agrees with a group element
    up to a scalar; a scalar zeta_de^c differs from t^i by a diagonal element
    whose exponent sum is i - r c, so the test is a congruence mod e.
    """
    reachable = {spec.r * c % spec.e for c in range(spec.e)}
    i = 1
    while i % spec.e not in reachable:
        i += 1
    return i


def ad_t_automorphism(spec: GroupSpec, i: int) -> Automorphism:
    """Conjugation by the i-th power of the ambient diagonal generator."""
    ctx = aut_context(spec)
    ambient = GroupSpec(spec.de, 1, spec.r)
    ti = ambient_t(spec) ** i
    tinv = ti.inverse()
    perm = []
    for x in ctx.elements:
        y = ti * MonomialElement(ambient, x.perm, x.exps) * tinv
        perm.append(ctx.eidx[(y.perm, y.exps)])
    return _verified_automorphism(ctx, perm)


def eta_automorphism(spec: GroupSpec, alpha: int, twist: int = 0) -> Automorphism:
    """The automorphism matching the field action on diagonal entries.

    On the ambient wreath product it raises every diagonal exponent to the
    alpha-th power; the optional twist conjugates by the twist-th power of
    the ambient diagonal generator, which is what the twisted restricted
    models are equivariant for.
    """
    if gcd(alpha, spec.de) != 1:
        raise AutError(f"{alpha} is not a unit modulo {spec.de}")
    ctx = aut_context(spec)
    ambient = GroupSpec(spec.de, 1, spec.r)
    tw = ambient_t(spec) ** twist
    twi = tw.inverse()
    perm = []
    for x in ctx.elements:
        y = twi * MonomialElement(ambient, x.perm, x.exps) * tw
        y = MonomialElement(ambient, y.perm, [alpha * a for a in y.exps])
        y = tw * y * twi
        perm.append(ctx.eidx[(y.perm, y.exps)])
    return _verified_automorphism(ctx, perm)


# ---------------------------------------------------------------------------
# Galois assignments

def word_element(group, tokens):
    """Evaluate a word in generator names; a trailing '-' inverts a letter."""
    ctx = _as_context(group)
    acc = None
    for tok in tokens:
        if tok.endswith("-"):
            g = _generic_inv(ctx.gen_elems[tok[:-1]])
        else:
            g = ctx.gen_elems[tok]
        acc = g if acc is None else _generic_mul(acc, g)
    return ctx.elements[0] if acc is None else acc


def iota_verify(group, assignment: dict, chi_battery=None, model=None) -> dict:
    """Check a proposed assignment of automorphisms to Galois elements.

    assignment maps GaloisAuto objects to Automorphisms, or to generator
    image dicts whose values are elements, element positions, or word token
    lists.  Checks: the images are automorphisms (raises naming a failing
    relation otherwise); the assignment respects the order and commutation
    relations of the abelian Galois group; every character in chi_battery
    (default: the full character table) satisfies chi(a_gamma(g)) =
    gamma(chi(g)); and, when a model is supplied (a RepModel, or "defining"
    for an explicit matrix group), the model is equivariant:
    rho(a_gamma(g)) = gamma(rho(g)) for every g.
    """
    ctx = _as_context(group)
    data = ctx.data
    gammas = sorted(assignment, key=lambda s: (s.conductor, s.exponent))
    auts = {}
    for gamma in gammas:
        val = assignment[gamma]
        if isinstance(val, Automorphism):
            auts[gamma] = val
        else:
            images = {}
            for name, v in val.items():
                if isinstance(v, (list, tuple)):
                    v = word_element(ctx, v)
                images[name] = v
            auts[gamma] = automorphism_from_images(ctx, images)

    checks = {"automorphisms": True}
    witnesses = []

    hom_ok = True
    for gamma in gammas:
        a = auts[gamma]
        if not a.power(gamma.order()).is_identity():
            hom_ok = False
            witnesses.append(f"image of {gamma!r} has order not dividing "
                             f"{gamma.order()}")
    for i, g1 in enumerate(gammas):
        for g2 in gammas[i + 1:]:
            a, b = auts[g1], auts[g2]
            if a.compose(b).perm != b.compose(a).perm:
                hom_ok = False
                witnesses.append(f"images of {g1!r} and {g2!r} do not commute")
    for g1 in gammas:
        for g2 in gammas:
            comp = g1.compose(g2)
            if comp in auts and auts[comp].perm != auts[g1].compose(auts[g2]).perm:
                hom_ok = False
                witnesses.append(f"image of {g1!r} * {g2!r} is not the "
                                 "composite of the images")
    checks["homomorphism"] = hom_ok

    battery = irr_table(ctx.group) if chi_battery is None else chi_battery
    char_ok = True
    for gamma in gammas:
        a = auts[gamma]
        moved = [data.class_of(a.apply(rep)) for rep in data.reps]
        for pos, chi in enumerate(battery):
            bad = [c for c in range(len(data.reps))
                   if chi.values[moved[c]] != apply_galois(gamma, chi.values[c])]
            if bad:
                char_ok = False
                witnesses.append(f"character {pos} is not equivariant under "
                                 f"{gamma!r} at class {bad[0]}")
    checks["characters"] = char_ok

    if model is not None:
        table = None
        if isinstance(model, RepModel):
            table = element_images(model)
            images_of = [table[_elem_key(g)] for g in ctx.elements]
        elif model == "defining":
            images_of = ctx.elements
        else:
            raise AutError(f"unsupported model {model!r}")
        model_ok = True
        for gamma in gammas:
            a = auts[gamma]
            for i in range(ctx.n):
                if galois_map(gamma, images_of[i]) != images_of[a.perm[i]]:
                    model_ok = False
                    witnesses.append(f"model is not equivariant under {gamma!r} "
                                     f"at element {i}")
                    break
        checks["model"] = model_ok

    return {"group": ctx.name, "claim": "Galois action by automorphisms",
            "checks": checks, "holds": all(checks.values()),
            "witnesses": witnesses}


def iota_assignment(group) -> dict:
    """The shipped Galois-to-generator-word assignment of an explicit group,
    as a dict from GaloisAuto to generator image dicts."""
    if not isinstance(group, ExplicitGroup):
        raise AutError("stored assignments exist for explicit groups only")
    words = group.metadata.get("iota")
    if not words:
        raise AutError(f"{group.label} ships no Galois assignment")
    conductor = int(group.metadata["field_conductor"])
    return {GaloisAuto(conductor, int(expo)): dict(images)
            for expo, images in sorted(words.items(), key=lambda kv: int(kv[0]))}


# ---------------------------------------------------------------------------
# the central factor of the wreath-like groups

def _coprime_part(d: int, r: int) -> int:
    g = gcd(d, r)
    while g > 1:
        d //= g
        g = gcd(d, r)
    return d


def _central_endomorphisms(ctx: AutContext):
    """All endomorphisms moving each generator by a scalar central factor;
    yields (factor tuple, index map or None, kernel size or None)."""
    for tup in product(ctx.scalar_center, repeat=len(ctx.gen_names)):
        images = {}
        for name, zi in zip(ctx.gen_names, tup):
            z = ctx.elements[zi]
            images[name] = _generic_mul(ctx.gen_elems[name], _generic_inv(z))
        if any(_elem_key(g) not in ctx.eidx for g in images.values()):
            yield tup, None, None
            continue
        perm, _ = _extend_images(ctx, images, need_bijective=False)
        if perm is None:
            yield tup, None, None
        else:
            yield tup, perm, sum(1 for v in perm if v == 0)


def central_factor(spec: GroupSpec) -> dict:
    """Split off the largest central cyclic factor of order prime to r.

    The complement is the subgroup of elements whose exponent sum vanishes
    modulo the enlarged index; the report carries the direct product checks
    and a brute-force cross-check of the maximal kernel over all central
    endomorphisms.
    """
    ctx = aut_context(spec)
    d, e, r = spec.d, spec.e, spec.r
    d_rp = _coprime_part(d, r)

    center = sorted((ctx.elements[i] for i in ctx.center), key=_elem_key)
    n_z = len(center)
    z0 = None
    for z in center:
        if _class_order(z) == n_z:
            z0 = z
            break
    if z0 is None:
        raise AutError(f"center of {ctx.name} is not cyclic")
    if n_z % d_rp != 0:
        raise AutError("central factor does not divide the center order")
    zgen = z0 ** (n_z // d_rp)
    z_part = [zgen ** k for k in range(d_rp)]

    sub_e = d_rp * e
    ghat_spec = GroupSpec(d // d_rp, sub_e, r)
    ghat = [g for g in ctx.elements if sum(g.exps) % sub_e == 0]
    if len(ghat) != ghat_spec.order:
        raise AutError("complement subgroup has the wrong order")

    z_keys = {_elem_key(z) for z in z_part}
    ghat_keys = {_elem_key(g) for g in ghat}
    meets_trivially = z_keys & ghat_keys == {_elem_key(ctx.elements[0])}
    covers = len({_elem_key(z * g) for z in z_part for g in ghat}) == ctx.n
    direct = (meets_trivially and covers
              and len(z_part) * len(ghat) == ctx.n)

    max_kernel = 0
    attained = []
    for tup, perm, kernel in _central_endomorphisms(ctx):
        if perm is None:
            continue
        if kernel > max_kernel:
            max_kernel, attained = kernel, [(tup, perm)]
        elif kernel == max_kernel:
            attained.append((tup, perm))

    expected = d_rp
    if r == 2 and d % 2 == 1 and e % 2 == 0 and (e // 2) % 2 == 1:
        expected = 2 * d

    z_positions = {ctx.eidx[k] for k in z_keys}
    complements = 0
    for _, perm in attained:
        image = set(perm)
        if (len(image) * max_kernel == ctx.n
                and image & z_positions == {0}):
            complements += 1

    return {
        "group": ctx.name,
        "claim": "central factor splits off",
        "d_coprime": d_rp,
        "central_part": [element_to_obj(z) for z in z_part],
        "complement": group_to_obj(ghat_spec),
        "complement_order": len(ghat),
        "direct_product": bool(direct),
        "max_kernel": max_kernel,
        "expected_max_kernel": expected,
        "max_kernel_count": len(attained),
        "complement_count": complements,
        "holds": bool(direct and max_kernel == expected),
    }
