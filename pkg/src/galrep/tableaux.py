"""Tableau models for Irr(G(d,1,r)) and their restriction to G(de,e,r).

The generator t acts diagonally on standard tableau tuples through the slot
containing 1; the s_i act through the axial-distance formula, with the
convention that swapping across tableaux contributes nothing to the diagonal
term and that an in-row (in-column) neighbor pair gives eigenvalue +1 (-1).

Restriction to G(de,e,r) follows Clifford theory: the slot-rotation sigma on
tuples, the permutation operator S on tableaux, its eigenprojectors, and the
averaged S-orbit model whose basis is independent of orbit representative
choices.  The twisted variants are obtained by conjugating generator words by
powers of the ambient diagonal generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cyclo import Cyclotomic, make_root, inverse as cinv
from .linalg import Mat, mat_pow, trace, inverse as minv
from .groups import GroupSpec, MonomialElement

ZERO = Cyclotomic.from_rational(0)
ONE = Cyclotomic.from_rational(1)


class TableauError(ValueError):
    pass


# ---------------------------------------------------------------------------
# partitions and tuples

@lru_cache(maxsize=None)
def partitions(n: int, cap: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Partitions of n with parts at most cap, first part descending."""
    if n == 0:
        return ((),)
    cap = n if cap is None else min(cap, n)
    out = []
    for first in range(cap, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def ptuple(parts) -> tuple[tuple[int, ...], ...]:
    """Validate and normalize a tuple of partitions."""
    norm = []
    for p in parts:
        p = tuple(int(x) for x in p)
        if any(x <= 0 for x in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise TableauError(f"not a partition: {p}")
        norm.append(p)
    return tuple(norm)


def tuple_size(t) -> int:
    return sum(sum(p) for p in t)


def enumerate_tuples(d: int, r: int) -> list[tuple]:
    """All d-tuples of partitions with total size r, deterministic order."""
    if d < 1 or r < 0:
        raise TableauError("need d >= 1 and r >= 0")

    def rec(slots: int, remaining: int):
        if slots == 1:
            for p in partitions(remaining):
                yield (p,)
            return
        for here in range(remaining, -1, -1):
            for p in partitions(here):
                for rest in rec(slots - 1, remaining - here):
                    yield (p,) + rest

    return list(rec(d, r))


def galois_shift(t: tuple, i: int) -> tuple:
    """gal i action on a d-tuple: entry j comes from slot i*j mod d."""
    d = len(t)
    if gcd(i, d) != 1:
        raise TableauError(f"{i} is not a unit mod {d}")
    return tuple(t[(i * j) % d] for j in range(d))


def shift_sigma(t: tuple, d: int) -> tuple:
    """sigma on a de-tuple: rotate slots down by d."""
    de = len(t)
    if de % d != 0:
        raise TableauError(f"tuple length {de} is not a multiple of d={d}")
    return tuple(t[(d + j) % de] for j in range(de))


def reflection_tuples(d: int, r: int) -> list[tuple]:
    """Tuples of the faithful reflection models of G(d,1,r)."""
    if d == 1:
        if r < 2:
            raise TableauError("symmetric reflection model needs r >= 2")
        return [((r - 1, 1),)]
    out = []
    for i in range(1, d):
        if gcd(i, d) == 1:
            parts = [()] * d
            if r > 1:
                parts[0] = (r - 1,)
            parts[i] = (1,)
            out.append(tuple(parts))
    return out


# ---------------------------------------------------------------------------
# standard tableaux

class TableauTuple:
    """A tuple of standard Young tableaux; rows of each filling are tuples."""

    __slots__ = ("fillings", "_pos")

    def __init__(self, fillings):
        fillings = tuple(tuple(tuple(row) for row in f) for f in fillings)
        pos = {}
        for slot, f in enumerate(fillings):
            for r0, row in enumerate(f):
                for c0, val in enumerate(row):
                    if val in pos:
                        raise TableauError(f"{val} appears twice")
                    pos[val] = (slot, r0, c0)
        n = len(pos)
        if set(pos) != set(range(1, n + 1)):
            raise TableauError("entries must be exactly 1..r")
        for f in fillings:
            for r0, row in enumerate(f):
                for c0 in range(1, len(row)):
                    if row[c0] <= row[c0 - 1]:
                        raise TableauError("rows must increase")
                if r0 > 0:
                    if len(row) > len(f[r0 - 1]):
                        raise TableauError("shape must be a partition")
                    for c0, val in enumerate(row):
                        if val <= f[r0 - 1][c0]:
                            raise TableauError("columns must increase")
        object.__setattr__(self, "fillings", fillings)
        object.__setattr__(self, "_pos", pos)

    def __setattr__(self, *a):
        raise AttributeError("TableauTuple is immutable")

    @property
    def size(self) -> int:
        return len(self._pos)

    def slot(self, m: int) -> int:
        """T(m): the index of the tableau containing m."""
        return self._pos[m][0]

    def position(self, m: int) -> tuple[int, int, int]:
        return self._pos[m]

    def content_vector(self) -> tuple[int, ...]:
        return tuple(self._pos[m][0] for m in range(1, self.size + 1))

    def sort_key(self):
        return (self.content_vector(),
                tuple(self._pos[m] for m in range(1, self.size + 1)))

    def shape(self) -> tuple:
        return tuple(tuple(len(row) for row in f) for f in self.fillings)

    def swap_adjacent(self, i: int) -> "TableauTuple | None":
        """Exchange i and i+1; None when the result is not standard."""
        s0, r0, c0 = self._pos[i]
        s1, r1, c1 = self._pos[i + 1]
        if s0 == s1 and (r0 == r1 or c0 == c1):
            return None
        fill = [list(list(row) for row in f) for f in self.fillings]
        fill[s0][r0][c0] = i + 1
        fill[s1][r1][c1] = i
        return TableauTuple(fill)

    def rotate_slots(self, k: int) -> "TableauTuple":
        de = len(self.fillings)
        return TableauTuple(tuple(self.fillings[(k + j) % de] for j in range(de)))

    def __eq__(self, other):
        return isinstance(other, TableauTuple) and self.fillings == other.fillings

    def __hash__(self):
        return hash(self.fillings)

    def __repr__(self):
        return f"T{list(list(list(r) for r in f) for f in self.fillings)}"

    def to_obj(self):
        return [[list(row) for row in f] for f in self.fillings]


def standard_tableaux(shape: tuple) -> list[TableauTuple]:
    """All standard tableau tuples of the given shape, sorted by
    (content vector, positions)."""
    shape = ptuple(shape)
    r = tuple_size(shape)
    results = []

    # grow fillings by placing 1, 2, ..., r at addable corners
    def rec(m: int, rows_filled):
        if m > r:
            fill = []
            for slot, part in enumerate(shape):
                rows = []
                for r0, width in enumerate(part):
                    rows.append([placement[(slot, r0, c0)] for c0 in range(width)])
                fill.append(rows)
            results.append(TableauTuple(fill))
            return
        for slot, part in enumerate(shape):
            for r0, width in enumerate(part):
                c0 = rows_filled[slot][r0]
                if c0 >= width:
                    continue
                if r0 > 0 and rows_filled[slot][r0 - 1] <= c0:
                    continue
                placement[(slot, r0, c0)] = m
                rows_filled[slot][r0] += 1
                rec(m + 1, rows_filled)
                rows_filled[slot][r0] -= 1
                del placement[(slot, r0, c0)]

    placement: dict = {}
    rec(1, [[0] * len(part) for part in shape])
    results.sort(key=lambda t: t.sort_key())
    return results


# ---------------------------------------------------------------------------
# the Ariki-Koike matrices for G(d,1,r)

def axial_action(T: TableauTuple, i: int):
    """Coefficients of the s_i action on T: list of (tableau, coefficient)."""
    s0, r0, c0 = T.position(i)
    s1, r1, c1 = T.position(i + 1)
    if s0 != s1:
        swapped = T.swap_adjacent(i)
        return [(swapped, ONE)]
    a = (r0 - c0) - (r1 - c1)
    inv_a = Fraction(1, a)
    out = [(T, Cyclotomic.from_rational(inv_a))]
    swapped = T.swap_adjacent(i)
    if swapped is not None:
        out.append((swapped, Cyclotomic.from_rational(1 + inv_a)))
    return out


@dataclass
class RepModel:
    group: GroupSpec
    basis: list
    images: dict[str, Mat]
    conductor: int
    kind: str = "full"
    shape: tuple = ()
    omega_power: int = 0

    @property
    def dim(self) -> int:
        return len(self.basis)


def _images_conductor(images: dict[str, Mat]) -> int:
    from .cyclo import canonicalize
    n = 1
    for m in images.values():
        for entry in m.entries:
            c = canonicalize(entry).conductor
            n = n * c // gcd(n, c)
    return n


def build_model(shape: tuple) -> RepModel:
    """The irreducible model of G(d,1,r) attached to a d-tuple of partitions."""
    return _build_model(ptuple(shape))


@lru_cache(maxsize=None)
def _build_model(shape: tuple) -> RepModel:
    d = len(shape)
    r = tuple_size(shape)
    spec = GroupSpec(d, 1, r)
    basis = standard_tableaux(shape)
    index = {T: k for k, T in enumerate(basis)}
    n = len(basis)
    images: dict[str, Mat] = {}
    if d > 1:
        entries = [ZERO] * (n * n)
        for k, T in enumerate(basis):
            entries[k * n + k] = make_root(d, T.slot(1))
        images["tp"] = Mat(n, n, entries)
    for i in range(1, r):
        entries = [ZERO] * (n * n)
        for k, T in enumerate(basis):
            for T2, coeff in axial_action(T, i):
                entries[index[T2] * n + k] = coeff
        images[f"s{i}"] = Mat(n, n, entries)
    return RepModel(spec, basis, images, _images_conductor(images),
                    kind="full", shape=shape)


def perm_word(perm: tuple) -> list[str]:
    """Adjacent-transposition word for a permutation (names s1, s2, ...)."""
    q = list(perm)
    word = []
    changed = True
    while changed:
        changed = False
        for j in range(len(q) - 1):
            if q[j] > q[j + 1]:
                q[j], q[j + 1] = q[j + 1], q[j]
                word.append(f"s{j + 1}")
                changed = True
    return word[::-1]


def monomial_word(g: MonomialElement) -> list[str]:
    """Word in {tp, s1, ...} for an element of G(d,1,r) (tp meaning t)."""
    if g.spec.e != 1:
        raise TableauError("word decomposition applies to G(d,1,r) elements")
    word: list[str] = []
    for j, a in enumerate(g.exps):
        if a:
            conj = [f"s{k}" for k in range(j, 0, -1)]
            word.extend(conj)
            word.extend(["tp"] * a)
            word.extend(conj[::-1])
    word.extend(perm_word(g.perm))
    return word


def model_image(model: RepModel, g: MonomialElement) -> Mat:
    """Image of an arbitrary element under a full G(d,1,r) model."""
    if model.kind != "full":
        raise TableauError("model_image needs a full model")
    acc = Mat.identity(model.dim)
    for name in monomial_word(g):
        acc = acc @ model.images[name]
    return acc


def element_images(model: RepModel) -> dict:
    """Image of every group element, keyed by element key.

    Works for full and restricted models alike: the table is grown by
    right-multiplying along the Cayley graph of the model's group, so only
    the generator images are consulted.
    """
    from .groups import enumerate_group, generator_map, _elem_key

    spec = model.group
    gens = generator_map(spec)
    elements = enumerate_group(spec)
    table = {_elem_key(elements[0]): Mat.identity(model.dim)}
    frontier = [elements[0]]
    while frontier:
        nxt = []
        for x in frontier:
            mx = table[_elem_key(x)]
            for name, s in gens.items():
                y = x * s
                ky = _elem_key(y)
                if ky not in table:
                    table[ky] = mx @ model.images[name]
                    nxt.append(y)
        frontier = nxt
    if len(table) != len(elements):
        raise TableauError("generator images do not span the group")
    return table


# ---------------------------------------------------------------------------
# Clifford restriction to G(de,e,r)

@dataclass
class CliffordData:
    shape: tuple          # the de-tuple
    e: int
    b: int                # least power of sigma fixing the tuple
    pieces: int           # e / b
    S: Mat
    theta_conductor: int  # theta = zeta_e^b as root of unity
    basis: list           # tableau basis of the ambient model

    def theta(self) -> Cyclotomic:
        return make_root(self.e, self.b % self.e) if self.e > 1 else ONE


def clifford_split(shape: tuple, e: int) -> CliffordData:
    """Clifford data of a de-tuple restricted to G(de,e,r); verifies the
    commutation of S with the subgroup action."""
    return _clifford_split(ptuple(shape), e)


@lru_cache(maxsize=None)
def _clifford_split(shape: tuple, e: int) -> CliffordData:
    de = len(shape)
    if de % e != 0:
        raise TableauError(f"tuple length {de} not divisible by e={e}")
    d = de // e
    b = 1
    cur = shift_sigma(shape, d)
    while cur != shape:
        cur = shift_sigma(cur, d)
        b += 1
        if b > e:
            raise AssertionError("sigma orbit ran away")
    pieces = e // b

    ambient = build_model(shape)
    basis = ambient.basis
    index = {T: k for k, T in enumerate(basis)}
    n = len(basis)
    entries = [ZERO] * (n * n)
    for k, T in enumerate(basis):
        entries[index[T.rotate_slots(b * d)] * n + k] = ONE
    S = Mat(n, n, entries)

    if not mat_pow(S, pieces).is_identity():
        raise AssertionError("S does not have order e/b")
    # S commutes with every s_i and with s_1^t, and skew-commutes with t
    t_img = ambient.images.get("tp", Mat.identity(n))
    for i in range(1, tuple_size(shape)):
        si = ambient.images[f"s{i}"]
        if S @ si != si @ S:
            raise AssertionError(f"S does not commute with s{i}")
    if tuple_size(shape) >= 2:
        sp = minv(t_img) @ ambient.images["s1"] @ t_img
        if S @ sp != sp @ S:
            raise AssertionError("S does not commute with s_1^t")
    theta = make_root(e, b % e) if e > 1 else ONE
    if S @ t_img != (t_img @ S).scale(theta):
        raise AssertionError("S o rho(t) != theta rho(t) o S")
    return CliffordData(shape, e, b, pieces, S, e, basis)


def _orbit_structure(data: CliffordData):
    """S-orbits on the tableau basis: list of sorted orbits and a map
    tableau -> orbit index.  Orbits ordered by first appearance."""
    d = len(data.shape) // data.e
    seen: dict[TableauTuple, int] = {}
    orbits: list[list[TableauTuple]] = []
    for T in data.basis:
        if T in seen:
            continue
        orbit = []
        cur = T
        for _ in range(data.pieces):
            orbit.append(cur)
            cur = cur.rotate_slots(data.b * d)
        if len(set(orbit)) != data.pieces:
            raise AssertionError("S-orbit is not free")
        k = len(orbits)
        for U in orbit:
            seen[U] = k
        orbits.append(sorted(orbit, key=lambda t: t.sort_key()))
    return orbits, seen


def _twist_of(data: CliffordData, omega) -> int:
    """Exponent i with omega = theta^i, theta = zeta_e^b."""
    if isinstance(omega, (int, Fraction)):
        omega = Cyclotomic.from_rational(omega)
    theta = data.theta()
    w = ONE
    for i in range(data.pieces):
        if w == omega:
            return i
        w = w * theta
    raise TableauError(
        f"omega is not an {data.pieces}-th root of unity for this tuple")


def restricted_model(shape: tuple, e: int, omega=1) -> RepModel:
    """Model of the constituent rho_{shape, omega} of G(de,e,r), on the
    averaged S-orbit basis.  omega is a scalar power of theta = zeta_e^b."""
    data = clifford_split(shape, e)
    de = len(data.shape)
    d = de // e
    r = tuple_size(data.shape)
    spec = GroupSpec(d, e, r)
    twist = _twist_of(data, omega)

    orbits, orbit_of = _orbit_structure(data)
    reps = [orb[0] for orb in orbits]
    n = len(reps)
    images: dict[str, Mat] = {}

    if d > 1:
        entries = [ZERO] * (n * n)
        for k, T in enumerate(reps):
            entries[k * n + k] = make_root(d, T.slot(1) % d)
        images["tp"] = Mat(n, n, entries)

    def s1_twisted(k_twist: int) -> Mat:
        entries = [ZERO] * (n * n)
        for k, T in enumerate(reps):
            scalar = make_root(de, (k_twist * (T.slot(1) - T.slot(2))) % de)
            for T2, coeff in axial_action(T, 1):
                entries[orbit_of[T2] * n + k] += scalar * coeff
        return Mat(n, n, entries)

    if r >= 2:
        if e > 1:
            images["sp"] = s1_twisted(twist + 1)
        images["s1"] = s1_twisted(twist)
    for i in range(2, r):
        entries = [ZERO] * (n * n)
        for k, T in enumerate(reps):
            for T2, coeff in axial_action(T, i):
                entries[orbit_of[T2] * n + k] += coeff
        images[f"s{i}"] = Mat(n, n, entries)
    return RepModel(spec, reps, images, _images_conductor(images),
                    kind="restricted", shape=data.shape, omega_power=twist)


def chi_restricted(shape: tuple, e: int, omega,
                   g: MonomialElement) -> Cyclotomic:
    """Character of rho_{shape,omega} at an element of G(de,e,r), via the
    ambient model: (1/m) sum_i omega^-i Tr(rho(g) S^i)."""
    data = clifford_split(shape, e)
    omega = data.theta() ** _twist_of(data, omega)
    ambient = build_model(data.shape)
    amb_spec = ambient.group
    lifted = MonomialElement(amb_spec, g.perm, g.exps)
    img = model_image(ambient, lifted)
    total = ZERO
    power = Mat.identity(ambient.dim)
    winv = cinv(omega)
    w = ONE
    for _ in range(data.pieces):
        total = total + w * trace(img @ power)
        power = power @ data.S
        w = w * winv
    return total * Fraction(1, data.pieces)


def sigma_orbit_reps(d_small: int, e: int, r: int) -> list[tuple]:
    """Representatives of sigma-orbits on de-tuples of total size r,
    minimal in enumeration order."""
    de = d_small * e
    seen = set()
    reps = []
    for t in enumerate_tuples(de, r):
        if t in seen:
            continue
        reps.append(t)
        cur = t
        for _ in range(e):
            seen.add(cur)
            cur = shift_sigma(cur, d_small)
    return reps


def model_to_obj(model: RepModel) -> dict:
    from .groups import group_to_obj
    from .linalg import to_obj as mat_to_obj
    return {
        "group": group_to_obj(model.group),
        "kind": model.kind,
        "shape": [list(p) for p in model.shape],
        "omega_power": model.omega_power,
        "conductor": model.conductor,
        "basis": [T.to_obj() for T in model.basis],
        "images": {k: mat_to_obj(v) for k, v in sorted(model.images.items())},
    }
