"""Imprimitive complex reflection groups G(de,e,r) and explicit matrix groups.

A monomial element is a pair (perm, exps): the matrix sends basis vector
e_j to zeta_de^(exps[perm[j]]) * e_{perm[j]}, i.e. exps are indexed by the
target row.  The constraint sum(exps) = 0 mod e pins the element into
G(de,e,r) inside the ambient G(de,1,r).

Composition was derived once from the matrix action and is property-tested
against to_matrix rather than trusted:
    (sigma, a) * (tau, b) = (sigma o tau, a_i + b[sigma^-1(i)]).
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, factorial
from pathlib import Path

from .cyclo import Cyclotomic, make_root, from_obj as cyclo_from_obj, to_obj as cyclo_to_obj
from .linalg import Mat, from_obj as mat_from_obj, to_obj as mat_to_obj, rank


class GroupError(ValueError):
    pass


ENUM_BOUND_DEFAULT = 10 ** 6
CLASS_BOUND = 10 ** 4


@dataclass(frozen=True)
class GroupSpec:
    """The group G(de,e,r): d, e, r positive integers."""

    d: int
    e: int
    r: int

    def __post_init__(self):
        if self.d < 1 or self.e < 1 or self.r < 1:
            raise GroupError(f"invalid spec G({self.d * self.e},{self.e},{self.r})")

    @property
    def de(self) -> int:
        return self.d * self.e

    @property
    def order(self) -> int:
        return self.d ** self.r * self.e ** (self.r - 1) * factorial(self.r)

    @property
    def is_symmetric_degenerate(self) -> bool:
        # G(1,1,r): the natural monomial representation is reducible.
        return self.d == 1 and self.e == 1

    @property
    def is_g222(self) -> bool:
        # G(2,2,2) = C2 x C2, not irreducible as a reflection group.
        return self.d == 1 and self.e == 2 and self.r == 2

    @property
    def is_degenerate(self) -> bool:
        return self.is_symmetric_degenerate or self.is_g222

    def name(self) -> str:
        return f"G({self.de},{self.e},{self.r})"


class MonomialElement:
    """Element of G(de,e,r) as (perm, exps)."""

    __slots__ = ("spec", "perm", "exps")

    def __init__(self, spec: GroupSpec, perm, exps):
        perm = tuple(perm)
        de = spec.de
        exps = tuple(int(a) % de for a in exps)
        if sorted(perm) != list(range(spec.r)) or len(exps) != spec.r:
            raise GroupError(f"malformed element for {spec.name()}")
        if sum(exps) % spec.e != 0:
            raise GroupError(
                f"exponent sum {sum(exps)} not divisible by e={spec.e} in {spec.name()}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "exps", exps)

    def __setattr__(self, *a):
        raise AttributeError("MonomialElement is immutable")

    def key(self):
        return (self.perm, self.exps)

    def __eq__(self, other):
        return (isinstance(other, MonomialElement)
                and self.spec == other.spec and self.key() == other.key())

    def __hash__(self):
        return hash((self.spec, self.perm, self.exps))

    def __repr__(self):
        return f"g{self.perm}{list(self.exps)}"

    def __mul__(self, other: "MonomialElement") -> "MonomialElement":
        if self.spec != other.spec:
            raise GroupError("multiplying elements of different groups")
        sigma, tau = self.perm, other.perm
        perm = tuple(sigma[tau[j]] for j in range(self.spec.r))
        sigma_inv = [0] * self.spec.r
        for j, v in enumerate(sigma):
            sigma_inv[v] = j
        exps = tuple(self.exps[i] + other.exps[sigma_inv[i]] for i in range(self.spec.r))
        return MonomialElement(self.spec, perm, exps)

    def inverse(self) -> "MonomialElement":
        r = self.spec.r
        perm_inv = [0] * r
        for j, v in enumerate(self.perm):
            perm_inv[v] = j
        exps = tuple(-self.exps[self.perm[j]] for j in range(r))
        return MonomialElement(self.spec, perm_inv, exps)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.spec.r)) and all(a == 0 for a in self.exps)

    def order(self) -> int:
        g = self
        n = 1
        while not g.is_identity():
            g = g * self
            n += 1
            if n > self.spec.order:
                raise GroupError("order computation ran away")
        return n

    def __pow__(self, k: int) -> "MonomialElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = identity(self.spec)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def to_matrix(self) -> Mat:
        r, de = self.spec.r, self.spec.de
        zero = Cyclotomic.from_rational(0)
        entries = [zero] * (r * r)
        for j in range(r):
            i = self.perm[j]
            entries[i * r + j] = make_root(de, self.exps[i])
        return Mat(r, r, entries)


def identity(spec: GroupSpec) -> MonomialElement:
    return MonomialElement(spec, range(spec.r), [0] * spec.r)


def conjugate_elem(g: MonomialElement, h: MonomialElement) -> MonomialElement:
    """h^-1 g h."""
    return h.inverse() * g * h


# ---------------------------------------------------------------------------
# generators

def ambient_t(spec: GroupSpec) -> MonomialElement:
    """t = Diag(zeta_de, 1, ..., 1), an element of the ambient G(de,1,r)."""
    ambient = GroupSpec(spec.de, 1, spec.r)
    return MonomialElement(ambient, range(spec.r), [1] + [0] * (spec.r - 1))


def _swap(spec: GroupSpec, i: int) -> tuple:
    perm = list(range(spec.r))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def generators(spec: GroupSpec) -> list[tuple[str, MonomialElement]]:
    """Named generators: t' = t^e (omitted when d = 1), s'_1 = t^-1 s_1 t
    (omitted when e = 1), then s_1, ..., s_{r-1}."""
    gens: list[tuple[str, MonomialElement]] = []
    if spec.d > 1:
        gens.append(("tp", MonomialElement(
            spec, range(spec.r), [spec.e] + [0] * (spec.r - 1))))
    if spec.e > 1 and spec.r >= 2:
        exps = [0] * spec.r
        exps[0] = spec.de - 1
        exps[1] = 1
        gens.append(("sp", MonomialElement(spec, _swap(spec, 1), exps)))
    for i in range(1, spec.r):
        gens.append((f"s{i}", MonomialElement(spec, _swap(spec, i), [0] * spec.r)))
    return gens


def generator_map(spec: GroupSpec) -> dict[str, MonomialElement]:
    return dict(generators(spec))


# ---------------------------------------------------------------------------
# enumeration and classification

def enumerate_group(spec: GroupSpec, bound: int = ENUM_BOUND_DEFAULT) -> list[MonomialElement]:
    """All elements in lexicographic (perm, exps) order."""
    n = spec.order
    if n > bound:
        raise GroupError(f"{spec.name()} has {n} elements, above the bound {bound}")
    de, e, r = spec.de, spec.e, spec.r
    out = []
    for perm in itertools.permutations(range(r)):
        for exps in itertools.product(range(de), repeat=r):
            if sum(exps) % e == 0:
                out.append(MonomialElement(spec, perm, exps))
    if len(out) != n:
        raise AssertionError(f"enumeration of {spec.name()} produced {len(out)} != {n}")
    return out


def is_reflection(g: MonomialElement) -> bool:
    """rank(M - I) = 1, decided on the monomial shape: either a diagonal
    element with exactly one nontrivial exponent, or a transposition with
    support exponents summing to 0 mod de and no other twist."""
    r = g.spec.r
    idp = tuple(range(r))
    if g.perm == idp:
        return sum(1 for a in g.exps if a != 0) == 1
    moved = [j for j in range(r) if g.perm[j] != j]
    if len(moved) != 2:
        return False
    i, j = moved
    if g.perm[i] != j or g.perm[j] != i:
        return False
    if any(g.exps[k] != 0 for k in range(r) if k not in (i, j)):
        return False
    return (g.exps[i] + g.exps[j]) % g.spec.de == 0


def is_reflection_by_rank(g: MonomialElement) -> bool:
    m = g.to_matrix()
    return rank(m - Mat.identity(g.spec.r)) == 1


def central_word(spec: GroupSpec) -> MonomialElement:
    """The standard generator word for the (non-degenerate) center:
    z = (t' s_1 ... s_{r-1})^r when e = 1, and
    z = t'^(r/gcd(e,r)) * (s'_1 s_1 ... s_{r-1})^(e(r-1)/gcd(e,r)) when e > 1,
    with the t' factor read as the identity when d = 1."""
    gens = generator_map(spec)
    idel = identity(spec)
    tp = gens.get("tp", idel)
    chain = idel
    for i in range(1, spec.r):
        chain = chain * gens[f"s{i}"]
    if spec.e == 1:
        return (tp * chain) ** spec.r
    g = gcd(spec.e, spec.r)
    body = gens["sp"] * chain if spec.r >= 2 else idel
    return (tp ** (spec.r // g)) * (body ** (spec.e * (spec.r - 1) // g))


@dataclass
class ClassifyResult:
    reflections: list[MonomialElement]
    center: list[MonomialElement]
    conjugacy_classes: list[list[MonomialElement]]
    central_element: MonomialElement


def classify(spec: GroupSpec, bound: int = ENUM_BOUND_DEFAULT) -> ClassifyResult:
    elements = enumerate_group(spec, bound)
    gens = [g for _, g in generators(spec)]
    reflections = [g for g in elements if is_reflection(g)]
    center = [g for g in elements
              if all(g * h == h * g for h in gens)]
    classes = None
    if len(elements) < CLASS_BOUND:
        classes = conjugacy_classes(elements, gens)
    return ClassifyResult(reflections, center, classes, central_word(spec))


def conjugacy_classes(elements, gens):
    """Orbit closure under conjugation by generators; classes sorted by
    (order of elements, class size, lexicographically least member)."""
    seen = set()
    classes = []
    inv_gens = [_generic_inv(h) for h in gens]
    for g in elements:
        if g in seen:
            continue
        orbit = {g}
        frontier = [g]
        while frontier:
            x = frontier.pop()
            for h, hinv in zip(gens, inv_gens):
                y = _generic_mul(_generic_mul(hinv, x), h)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        seen |= orbit
        classes.append(sorted(orbit, key=_elem_key))
    classes.sort(key=lambda c: (_class_order(c[0]), len(c), _elem_key(c[0])))
    return classes


def _elem_key(g):
    if isinstance(g, MonomialElement):
        return (g.perm, g.exps)
    return _mat_key(g)


def _class_order(g):
    if isinstance(g, MonomialElement):
        return g.order()
    x = g
    n = 1
    while not x.is_identity():
        x = x @ g
        n += 1
        if n > 10 ** 4:
            raise GroupError("matrix order computation ran away")
    return n


# ---------------------------------------------------------------------------
# linear characters

def _commutator_subgroup(elements, gens, mul, inv, ident):
    comms = set()
    for a in gens:
        for b in gens:
            comms.add(mul(mul(inv(a), inv(b)), mul(a, b)))
    # normal closure: close under multiplication and conjugation by generators
    sub = {ident}
    frontier = list(comms)
    while frontier:
        x = frontier.pop()
        if x in sub:
            continue
        new = {x}
        for y in list(sub):
            new.add(mul(x, y))
            new.add(mul(y, x))
        for h in gens:
            new.add(mul(mul(inv(h), x), h))
        for z in new:
            if z not in sub:
                sub.add(z)
                frontier.append(z)
    # one more closure sweep for safety: products of members
    changed = True
    while changed:
        changed = False
        members = sorted(sub, key=_elem_key)
        for a in members:
            for b in members:
                c = mul(a, b)
                if c not in sub:
                    sub.add(c)
                    changed = True
    return sub


def linear_characters(spec_or_elements, gens=None) -> list[dict]:
    """All homomorphisms G -> C^x, via the abelianization.

    Returns one dict per character mapping each element to a Cyclotomic
    value.  Deterministic order: the trivial character first, then sorted by
    value exponents along the sorted element list.
    """
    if isinstance(spec_or_elements, GroupSpec):
        spec = spec_or_elements
        elements = enumerate_group(spec)
        gens = [g for _, g in generators(spec)]
        ident = identity(spec)
        mul = lambda a, b: a * b
        inv = lambda a: a.inverse()
    else:
        elements = list(spec_or_elements)
        ident = next(g for g in elements if _generic_is_identity(g))
        mul = _generic_mul
        inv = _generic_inv
    comm = _commutator_subgroup(elements, gens, mul, inv, ident)
    # cosets of [G,G], identified by their sorted-min representative
    coset_of = {}
    reps = []
    for g in sorted(elements, key=_elem_key):
        if g in coset_of:
            continue
        members = sorted((mul(g, h) for h in comm), key=_elem_key)
        rep = members[0]
        reps.append(rep)
        for m in members:
            coset_of[m] = rep
    # abelian quotient: multiplication on representatives
    q_mul = lambda a, b: coset_of[mul(a, b)]
    q_ident = coset_of[ident]
    exponent = 1
    for a in reps:
        k, x = 1, a
        while x != q_ident:
            x = q_mul(x, a)
            k += 1
        exponent = exponent * k // gcd(exponent, k)
    # inductively extend characters along a generating sequence of the quotient
    chars = [{q_ident: 0}]          # exponent of zeta_exponent, per coset rep
    built = [q_ident]
    for g in sorted(set(coset_of[x] for x in gens + [ident]), key=_elem_key):
        if g in built:
            continue
        # order of g relative to the built subgroup
        m, x = 1, g
        while x not in chars[0]:
            x = q_mul(x, g)
            m += 1
        new_chars = []
        for chi in chars:
            target = chi[x]          # chi(g^m), exponent mod `exponent`
            for cand in range(exponent):
                if (m * cand - target) % exponent == 0:
                    ext = dict(chi)
                    cur = g
                    val = cand
                    while cur not in chi:
                        for known in list(ext):
                            ext[q_mul(known, cur)] = (ext[known] + val) % exponent
                        cur = q_mul(cur, g)
                        val = (val + cand) % exponent
                    new_chars.append(ext)
        chars = new_chars
        built = sorted(chars[0], key=_elem_key)
    # lift to G and sort deterministically
    sorted_elems = sorted(elements, key=_elem_key)
    out = []
    for chi in chars:
        table = {g: chi[coset_of[g]] for g in elements}
        vec = tuple(table[g] for g in sorted_elems)
        out.append((vec, {g: make_root(exponent, table[g]) if exponent > 1
                          else Cyclotomic.from_rational(1) for g in elements}))
    if len(out) != len(reps):
        raise AssertionError(
            f"found {len(out)} linear characters for an abelianization of order {len(reps)}")
    out.sort(key=lambda p: p[0])
    return [d for _, d in out]


def _generic_mul(a, b):
    if isinstance(a, MonomialElement):
        return a * b
    return a @ b


def _generic_inv(a):
    if isinstance(a, MonomialElement):
        return a.inverse()
    from .linalg import inverse as mat_inverse
    return mat_inverse(a)


def _generic_is_identity(a):
    if isinstance(a, MonomialElement):
        return a.is_identity()
    return a.is_identity()


# ---------------------------------------------------------------------------
# relations

def _alt_word(first: str, second: str, length: int) -> list[str]:
    return [first if i % 2 == 0 else second for i in range(length)]


def relations_for(spec: GroupSpec) -> list[tuple[str, list[str], list[str]]]:
    """Defining relations as (name, left word, right word) over generator
    names; order relations have the empty word on the right."""
    rels: list[tuple[str, list[str], list[str]]] = []
    d, e, r = spec.d, spec.e, spec.r
    has_tp, has_sp = d > 1, e > 1 and r >= 2
    if has_tp:
        rels.append((f"tp^{d}", ["tp"] * d, []))
    if has_sp:
        rels.append(("sp^2", ["sp", "sp"], []))
    for i in range(1, r):
        rels.append((f"s{i}^2", [f"s{i}", f"s{i}"], []))
    if e == 1:
        if has_tp and r >= 2:
            rels.append(("tp.s1 braid", ["tp", "s1", "tp", "s1"], ["s1", "tp", "s1", "tp"]))
        for k in range(2, r):
            if has_tp:
                rels.append((f"tp,s{k} commute", ["tp", f"s{k}"], [f"s{k}", "tp"]))
    else:
        # Braid-type relations of the imprimitive diagram.
        if has_tp:
            rels.append(("tp.sp.s1 rotate", ["tp", "sp", "s1"], ["sp", "s1", "tp"]))
            for k in range(2, r):
                rels.append((f"tp,s{k} commute", ["tp", f"s{k}"], [f"s{k}", "tp"]))
        if r >= 2:
            lhs = ["s1"] + (["tp"] if has_tp else []) + _alt_word("sp", "s1", e - 1)
            rhs = (["tp"] if has_tp else []) + _alt_word("sp", "s1", e)
            rels.append((f"alternating length {e + 1}", lhs, rhs))
        if r >= 3:
            rels.append(("sp.s1.s2 double braid",
                         ["sp", "s1", "s2", "sp", "s1", "s2"],
                         ["s2", "sp", "s1", "s2", "sp", "s1"]))
            rels.append(("sp,s2 braid", ["sp", "s2", "sp"], ["s2", "sp", "s2"]))
        for k in range(3, r):
            rels.append((f"sp,s{k} commute", ["sp", f"s{k}"], [f"s{k}", "sp"]))
    for i in range(1, r - 1):
        rels.append((f"s{i}.s{i + 1} braid",
                     [f"s{i}", f"s{i + 1}", f"s{i}"],
                     [f"s{i + 1}", f"s{i}", f"s{i + 1}"]))
    for i in range(1, r):
        for j in range(i + 2, r):
            rels.append((f"s{i},s{j} commute",
                         [f"s{i}", f"s{j}"], [f"s{j}", f"s{i}"]))
    return rels


def evaluate_word(word: list[str], images: dict) -> object:
    vals = [images[name] for name in word]
    if not vals:
        return None
    acc = vals[0]
    for v in vals[1:]:
        acc = _generic_mul(acc, v)
    return acc


def check_words(images: dict, relations) -> dict:
    """Evaluate relation words in the images; each relation reports pass/fail."""
    report = []
    for name, lhs, rhs in relations:
        for w in (lhs, rhs):
            for gname in w:
                if gname not in images:
                    raise GroupError(f"missing generator image {gname!r}")
        lv = evaluate_word(lhs, images)
        rv = evaluate_word(rhs, images)
        if rv is None:
            holds = _generic_is_identity(lv)
        elif lv is None:
            holds = _generic_is_identity(rv)
        else:
            holds = lv == rv
        report.append({"relation": name, "holds": bool(holds)})
    return {"relations": report, "all_hold": all(r["holds"] for r in report)}


def check_relations(images: dict, spec: GroupSpec) -> dict:
    return check_words(images, relations_for(spec))


# ---------------------------------------------------------------------------
# explicit matrix groups

def _mat_key(m: Mat):
    parts = []
    for entry in m.entries:
        from .cyclo import canonicalize
        c = canonicalize(entry)
        parts.append((c.conductor, c.coeffs))
    return tuple(parts)


class ExplicitGroup:
    """A finite matrix group given by named generators, closed on demand."""

    def __init__(self, label: str, generators: dict[str, Mat], *,
                 relations=None, metadata=None):
        self.label = label
        self.generators = dict(generators)
        self.relations = relations or []
        self.metadata = metadata or {}
        self._elements: list[Mat] | None = None

    def elements(self, bound: int = 10 ** 5) -> list[Mat]:
        if self._elements is None:
            self._elements = matrix_closure(
                [m for _, m in sorted(self.generators.items())], bound)
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements())

    def center(self) -> list[Mat]:
        gens = [m for _, m in sorted(self.generators.items())]
        return [g for g in self.elements() if all(g @ h == h @ g for h in gens)]

    def check_relations(self) -> dict:
        rels = [(f"rel{i}", lhs, rhs) for i, (lhs, rhs) in enumerate(self.relations)]
        return check_words(self.generators, rels)


def matrix_closure(gens: list[Mat], bound: int = 10 ** 5) -> list[Mat]:
    """Breadth-first closure under right multiplication; deterministic order."""
    if not gens:
        raise GroupError("closure needs at least one generator")
    n = gens[0].rows
    ident = Mat.identity(n)
    seen = {_mat_key(ident): ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        new_frontier = []
        for x in frontier:
            for g in gens:
                y = x @ g
                k = _mat_key(y)
                if k not in seen:
                    seen[k] = y
                    order.append(y)
                    new_frontier.append(y)
                    if len(order) > bound:
                        raise GroupError(f"matrix closure exceeded bound {bound}")
        frontier = new_frontier
    return order


# ---------------------------------------------------------------------------
# shipped data for the exceptional rank-2 groups

def data_dir() -> Path:
    env = os.environ.get("GALREP_DATA_DIR")
    if env:
        return Path(env)
    return Path(__file__).parent / "data"


_EXPLICIT_LABELS = [f"G{k}" for k in range(4, 22)]


def load_explicit(label: str) -> ExplicitGroup:
    if label not in _EXPLICIT_LABELS:
        raise GroupError(f"unknown explicit group {label!r}")
    path = data_dir() / f"{label}.json"
    if not path.exists():
        raise GroupError(f"missing data file {path}")
    with open(path) as fh:
        obj = json.load(fh)
    gens = {name: mat_from_obj(m) for name, m in obj["generators"].items()}
    return ExplicitGroup(obj["label"], gens,
                         relations=obj.get("relations"),
                         metadata={k: v for k, v in obj.items()
                                   if k not in ("label", "generators", "relations")})


# ---------------------------------------------------------------------------
# serialization

def group_to_obj(g) -> dict:
    if isinstance(g, GroupSpec):
        return {"kind": "imprimitive", "d": g.d, "e": g.e, "r": g.r}
    if isinstance(g, ExplicitGroup):
        return {"kind": "explicit", "label": g.label,
                "generators": {k: mat_to_obj(v) for k, v in sorted(g.generators.items())}}
    raise GroupError(f"cannot serialize {g!r}")


def group_from_obj(obj):
    if obj["kind"] == "imprimitive":
        return GroupSpec(int(obj["d"]), int(obj["e"]), int(obj["r"]))
    if obj["kind"] == "explicit":
        if "generators" in obj:
            return ExplicitGroup(obj["label"],
                                 {k: mat_from_obj(v) for k, v in obj["generators"].items()})
        return load_explicit(obj["label"])
    raise GroupError(f"unknown group kind {obj.get('kind')!r}")


def element_to_obj(g: MonomialElement) -> dict:
    return {"perm": list(g.perm), "exps": list(g.exps)}


def element_from_obj(spec: GroupSpec, obj) -> MonomialElement:
    return MonomialElement(spec, obj["perm"], obj["exps"])
