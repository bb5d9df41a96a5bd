"""Exact character tables and class-function arithmetic.

Imprimitive groups get their tables from the tableau models (full models for
G(d,1,r), Clifford constituents for G(de,e,r)).  Explicit matrix groups go
through a Burnside-Dixon computation: structure constants of the class
algebra, simultaneous eigenvector splitting over a prime field F_p with
p = 1 mod exponent, then exact lifting of eigenvalue multiplicities back to
cyclotomic integers.  Every table is verified orthonormal before it is
returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .cyclo import (Cyclotomic, make_root, canonicalize, conjugate,
                    apply_galois, GaloisAuto, galois_units)
from .linalg import Mat, trace, rank, inverse as minv
from .groups import (GroupSpec, ExplicitGroup, MonomialElement,
                     enumerate_group, generator_map, conjugacy_classes,
                     is_reflection, _elem_key, identity as group_identity)
from .tableaux import (enumerate_tuples, build_model, model_image,
                       sigma_orbit_reps, clifford_split, chi_restricted,
                       RepModel)

ZERO = Cyclotomic.from_rational(0)
ONE = Cyclotomic.from_rational(1)


class CharacterError(ValueError):
    pass


# ---------------------------------------------------------------------------
# conjugacy class data

@dataclass
class ClassData:
    group: object
    name: str
    elements: list
    classes: list
    reps: list
    sizes: list
    orders: list
    index: dict
    inverse_class: list
    power_class: list          # power_class[i][k] = class of reps[i]**k, k < exponent
    exponent: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def class_of(self, g) -> int:
        try:
            return self.index[_elem_key(g)]
        except KeyError:
            raise CharacterError(f"element not in {self.name}") from None


def _mul(a, b):
    return a @ b if isinstance(a, Mat) else a * b


def _inv(a):
    return minv(a) if isinstance(a, Mat) else a.inverse()


def _ident_like(a):
    return Mat.identity(a.rows) if isinstance(a, Mat) else None


_DATA_CACHE: dict[str, ClassData] = {}


def class_data(group) -> ClassData:
    """Deterministic conjugacy class data, cached per group."""
    if isinstance(group, GroupSpec):
        name = group.name()
    elif isinstance(group, ExplicitGroup):
        name = group.label
    else:
        raise CharacterError(f"unsupported group {group!r}")
    if name in _DATA_CACHE:
        return _DATA_CACHE[name]

    if isinstance(group, GroupSpec):
        elements = enumerate_group(group)
        gens = list(generator_map(group).values())
        ident = group_identity(group)
    else:
        elements = group.elements()
        gens = [m for _, m in sorted(group.generators.items())]
        ident = Mat.identity(gens[0].rows)

    classes = conjugacy_classes(elements, gens)
    reps = [c[0] for c in classes]
    sizes = [len(c) for c in classes]
    index = {}
    for i, cls in enumerate(classes):
        for g in cls:
            index[_elem_key(g)] = i
    orders = []
    for rep in reps:
        x, n = rep, 1
        while not (x == ident):
            x = _mul(x, rep)
            n += 1
        orders.append(n)
    exponent = 1
    for n in orders:
        exponent = exponent * n // gcd(exponent, n)
    inverse_class = [index[_elem_key(_inv(rep))] for rep in reps]
    power_class = []
    for rep in reps:
        row, x = [], ident
        for _ in range(exponent):
            row.append(index[_elem_key(x)])
            x = _mul(x, rep)
        power_class.append(row)
    data = ClassData(group, name, elements, classes, reps, sizes, orders,
                     index, inverse_class, power_class, exponent)
    _DATA_CACHE[name] = data
    return data


# ---------------------------------------------------------------------------
# class functions

class ClassFunction:
    __slots__ = ("data", "values")

    def __init__(self, data: ClassData, values):
        values = tuple(canonicalize(v) for v in values)
        if len(values) != len(data.classes):
            raise CharacterError("value count does not match class count")
        for v in values:
            if data.exponent % v.conductor != 0:
                raise CharacterError(
                    f"value conductor {v.conductor} outside exponent field")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "values", values)

    def __setattr__(self, *a):
        raise AttributeError("ClassFunction is immutable")

    def __call__(self, g) -> Cyclotomic:
        return self.values[self.data.class_of(g)]

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def __eq__(self, other):
        return (isinstance(other, ClassFunction)
                and self.data.name == other.data.name
                and self.values == other.values)

    def __hash__(self):
        return hash((self.data.name, self.values))

    def __repr__(self):
        return f"ClassFunction({self.data.name}, deg {self.values[0]!r})"

    def sort_key(self):
        return tuple((v.conductor, v.coeffs) for v in self.values)


def trivial_character(data: ClassData) -> ClassFunction:
    return ClassFunction(data, [ONE] * len(data.classes))


def character_of(model: RepModel) -> ClassFunction:
    """Trace of the model at each class representative."""
    if not isinstance(model.group, GroupSpec):
        raise CharacterError("character_of expects a model over a group spec")
    data = class_data(model.group)
    spec = model.group
    if model.kind == "full":
        values = [trace(model_image(model, rep)) for rep in data.reps]
    else:
        cd = clifford_split(model.shape, spec.e)
        omega = cd.theta() ** model.omega_power
        values = [chi_restricted(model.shape, spec.e, omega, rep)
                  for rep in data.reps]
    cf = ClassFunction(data, values)
    _check_second_orthogonality_free(cf)
    return cf


def _check_second_orthogonality_free(cf: ClassFunction):
    """chi(g^{-1}) must be the complex conjugate of chi(g)."""
    for i, v in enumerate(cf.values):
        if cf.values[cf.data.inverse_class[i]] != conjugate(v):
            raise CharacterError("character is not unitarizable: "
                                 f"class {i} fails the conjugacy identity")


def natural_character(group) -> ClassFunction:
    """Trace of the defining matrices (monomial ones for a group spec)."""
    data = class_data(group)
    if isinstance(group, GroupSpec):
        values = [trace(rep.to_matrix()) for rep in data.reps]
    else:
        values = [trace(rep) for rep in data.reps]
    return ClassFunction(data, values)


def inner_product(a: ClassFunction, b: ClassFunction) -> Fraction:
    if a.data.name != b.data.name:
        raise CharacterError("class functions live on different groups")
    acc = ZERO
    for i, size in enumerate(a.data.sizes):
        acc = acc + a.values[i] * conjugate(b.values[i]) * size
    acc = canonicalize(acc * Fraction(1, a.data.order))
    if acc.conductor != 1:
        raise CharacterError("inner product is not rational")
    return acc.coeffs[0]


# ---------------------------------------------------------------------------
# irreducible tables

_TABLE_CACHE: dict[str, list] = {}


def irr_table(group) -> list[ClassFunction]:
    """All irreducible characters; trivial first; verified orthonormal."""
    data = class_data(group)
    if data.name in _TABLE_CACHE:
        return _TABLE_CACHE[data.name]
    if isinstance(group, GroupSpec):
        rows = _series_table(group, data)
    else:
        rows = _dixon_table(data)
    if len(rows) != len(data.classes):
        raise CharacterError(
            f"{data.name}: {len(rows)} characters for {len(data.classes)} classes")
    if rows[0] != trivial_character(data):
        raise CharacterError(f"{data.name}: first row is not trivial")
    for i in range(len(rows)):
        for j in range(i, len(rows)):
            expected = Fraction(1 if i == j else 0)
            if inner_product(rows[i], rows[j]) != expected:
                raise CharacterError(
                    f"{data.name}: rows {i},{j} fail orthonormality")
    _TABLE_CACHE[data.name] = rows
    return rows


def _series_table(spec: GroupSpec, data: ClassData) -> list[ClassFunction]:
    rows = []
    if spec.e == 1:
        for shape in enumerate_tuples(spec.d, spec.r):
            rows.append(character_of(build_model(shape)))
        return rows
    for shape in sigma_orbit_reps(spec.d, spec.e, spec.r):
        cd = clifford_split(shape, spec.e)
        theta = cd.theta()
        for i in range(cd.pieces):
            omega = theta ** i
            values = [chi_restricted(shape, spec.e, omega, rep)
                      for rep in data.reps]
            rows.append(ClassFunction(data, values))
    return rows


# -- Dixon over F_p for explicit matrix groups ------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _dixon_prime(data: ClassData) -> tuple[int, int]:
    """A prime p = 1 mod exponent with p > 2 sqrt(|G|) and p > #classes,
    plus a primitive exponent-th root of unity mod p."""
    m = data.exponent
    p = m + 1
    while not (_is_prime(p) and p * p > 4 * data.order and p > len(data.classes)):
        p += m
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1)):
            return p, pow(g, (p - 1) // m, p)
    raise CharacterError("no primitive root found")  # pragma: no cover


def _structure_matrices(data: ClassData) -> list:
    """M_j[i][l] = #{(x,y) in C_j x C_i : x y = rep_l}."""
    k = len(data.classes)
    mats = []
    for j in range(k):
        M = [[0] * k for _ in range(k)]
        for x in data.classes[j]:
            xinv = _inv(x)
            for l, zl in enumerate(data.reps):
                i = data.class_of(_mul(xinv, zl))
                M[i][l] += 1
        mats.append(M)
    return mats


def _rref_fp(rows: list, p: int):
    rows = [r[:] for r in rows]
    pivots = []
    rank_ = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((r for r in range(rank_, len(rows)) if rows[r][c] % p), None)
        if piv is None:
            continue
        rows[rank_], rows[piv] = rows[piv], rows[rank_]
        inv = pow(rows[rank_][c], p - 2, p)
        rows[rank_] = [(v * inv) % p for v in rows[rank_]]
        for r in range(len(rows)):
            if r != rank_ and rows[r][c] % p:
                f = rows[r][c]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank_])]
        pivots.append(c)
        rank_ += 1
    return rows[:rank_], pivots


def _fp_charpoly(R: list, p: int) -> list:
    """Coefficients (ascending) of det(x I - R) over F_p, by interpolation."""
    s = len(R)
    xs = list(range(s + 1))
    ys = []
    for x0 in xs:
        A = [[(x0 * (i == j) - R[i][j]) % p for j in range(s)] for i in range(s)]
        det = 1
        for c in range(s):
            piv = next((r for r in range(c, s) if A[r][c] % p), None)
            if piv is None:
                det = 0
                break
            if piv != c:
                A[c], A[piv] = A[piv], A[c]
                det = (-det) % p
            det = (det * A[c][c]) % p
            inv = pow(A[c][c], p - 2, p)
            for r in range(c + 1, s):
                if A[r][c] % p:
                    f = (A[r][c] * inv) % p
                    A[r] = [(a - f * b) % p for a, b in zip(A[r], A[c])]
        ys.append(det % p)
    # Lagrange interpolation on points (xs, ys)
    coeffs = [0] * (s + 1)
    for t, (xt, yt) in enumerate(zip(xs, ys)):
        basis = [1]
        denom = 1
        for u, xu in enumerate(xs):
            if u == t:
                continue
            new = [0] * (len(basis) + 1)
            for idx, a in enumerate(basis):
                new[idx] = (new[idx] - a * xu) % p
                new[idx + 1] = (new[idx + 1] + a) % p
            basis = new
            denom = (denom * (xt - xu)) % p
        f = (yt * pow(denom % p, p - 2, p)) % p
        for idx, a in enumerate(basis):
            coeffs[idx] = (coeffs[idx] + f * a) % p
    return coeffs


def _poly_roots_fp(coeffs: list, p: int) -> list:
    roots = []
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


def _kernel_fp(A: list, p: int) -> list:
    """Basis of the null space of A over F_p (rows of the result)."""
    s = len(A)
    rref, pivots = _rref_fp(A, p) if A else ([], [])
    free = [c for c in range(s) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * s
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-rref[r][fc]) % p
        basis.append(v)
    return basis


def _dixon_table(data: ClassData) -> list[ClassFunction]:
    k = len(data.classes)
    m = data.exponent
    p, theta_p = _dixon_prime(data)
    mats = _structure_matrices(data)

    spaces = [[[1 if i == j else 0 for j in range(k)] for i in range(k)]]
    spaces[0], _ = _rref_fp(spaces[0], p)
    for j in range(1, k):
        if all(len(B) == 1 for B in spaces):
            break
        next_spaces = []
        for B in spaces:
            s = len(B)
            if s == 1:
                next_spaces.append(B)
                continue
            Brref, pivots = _rref_fp(B, p)
            R = [[0] * s for _ in range(s)]
            for t, b in enumerate(Brref):
                w = [sum(mats[j][i][l] * b[l] for l in range(k)) % p
                     for i in range(k)]
                for tt, pc in enumerate(pivots):
                    c = w[pc] % p
                    R[tt][t] = c
                    if c:
                        w = [(a - c * bb) % p for a, bb in zip(w, Brref[tt])]
                if any(w):
                    raise CharacterError("class algebra matrix left subspace")
            found = 0
            for tau in _poly_roots_fp(_fp_charpoly(R, p), p):
                shifted = [[(R[i][jj] - tau * (i == jj)) % p for jj in range(s)]
                           for i in range(s)]
                eigen = []
                for kv in _kernel_fp(shifted, p):
                    vec = [0] * k
                    for t, c in enumerate(kv):
                        if c:
                            for l in range(k):
                                vec[l] = (vec[l] + c * Brref[t][l]) % p
                    eigen.append(vec)
                if eigen:
                    found += len(eigen)
                    next_spaces.append(eigen)
            if found != s:
                raise CharacterError("class algebra matrix is not semisimple")
        merged = []
        for B in next_spaces:
            merged.append(_rref_fp(B, p)[0])
        spaces = merged
    if not all(len(B) == 1 for B in spaces) or len(spaces) != k:
        raise CharacterError("class algebra splitting did not complete")

    rows = []
    inv_sizes = [pow(sz % p, p - 2, p) for sz in data.sizes]
    minv_p = pow(m % p, p - 2, p)
    for B in spaces:
        v = B[0]
        if v[0] % p == 0:
            raise CharacterError("eigenvector vanishes at the identity class")
        scale = pow(v[0], p - 2, p)
        omega = [(x * scale) % p for x in v]
        s_val = sum(omega[i] * omega[data.inverse_class[i]] * inv_sizes[i]
                    for i in range(k)) % p
        target = (data.order * pow(s_val, p - 2, p)) % p
        deg = next((n for n in range(1, isqrt(data.order) + 1)
                    if (n * n) % p == target), None)
        if deg is None:
            raise CharacterError("degree recovery failed")
        chi_p = [(deg * omega[i] * inv_sizes[i]) % p for i in range(k)]
        values = []
        for i in range(k):
            val = ZERO
            total_mult = 0
            for jj in range(m):
                acc = 0
                for kk in range(m):
                    acc = (acc + chi_p[data.power_class[i][kk]]
                           * pow(theta_p, (-jj * kk) % (p - 1), p)) % p
                a = (acc * minv_p) % p
                if a > deg:
                    raise CharacterError("eigenvalue multiplicity out of range")
                total_mult += a
                if a:
                    val = val + make_root(m, jj) * a
            if total_mult != deg:
                raise CharacterError("eigenvalue multiplicities do not sum to degree")
            values.append(val)
        rows.append(ClassFunction(data, values))

    total = sum(int(cf.values[0].coeffs[0]) ** 2 for cf in rows)
    if total != data.order:
        raise CharacterError("degrees fail the sum of squares identity")
    triv = trivial_character(data)
    rest = [cf for cf in rows if cf != triv]
    if len(rest) != len(rows) - 1:
        raise CharacterError("trivial character missing from Dixon output")
    rest.sort(key=lambda cf: (cf.values[0].coeffs[0], cf.sort_key()))
    return [triv] + rest


# ---------------------------------------------------------------------------
# galois action, reflection characters, tensor data

def galois_on_character(s: GaloisAuto, a: ClassFunction) -> ClassFunction:
    return ClassFunction(a.data, [apply_galois(s, v) for v in a.values])


def character_field_conductor(a: ClassFunction) -> int:
    n = 1
    for v in a.values:
        n = n * v.conductor // gcd(n, v.conductor)
    return n


def galois_orbit(a: ClassFunction) -> list[ClassFunction]:
    """Orbit of a class function under Gal(Q(zeta_N)/Q), N its value field."""
    n = character_field_conductor(a)
    out = []
    for s in galois_units(n):
        img = galois_on_character(s, a)
        if img not in out:
            out.append(img)
    return out


def _is_reflection_element(g) -> bool:
    if isinstance(g, MonomialElement):
        return is_reflection(g)
    return rank(g - Mat.identity(g.rows)) == 1


def fixed_space_dimension(cf: ClassFunction, class_index: int) -> Cyclotomic:
    """Multiplicity of eigenvalue 1 at a class representative, from the
    character values on its powers."""
    n = cf.data.orders[class_index]
    acc = ZERO
    for kk in range(n):
        acc = acc + cf.values[cf.data.power_class[class_index][kk % cf.data.exponent]]
    return acc * Fraction(1, n)


def is_faithful(cf: ClassFunction) -> bool:
    deg = cf.values[0]
    return all(cf.values[i] != deg for i in range(1, len(cf.values)))


def reflection_characters(group) -> list[ClassFunction]:
    """Irreducibles with a faithful model sending every reflection of the
    group to a reflection (detected on eigenvalue multiplicities)."""
    data = class_data(group)
    refl_classes = [i for i, rep in enumerate(data.reps)
                    if _is_reflection_element(rep)]
    out = []
    for cf in irr_table(group):
        if not is_faithful(cf):
            continue
        deg = cf.values[0]
        if all(fixed_space_dimension(cf, i) == deg - ONE for i in refl_classes):
            out.append(cf)
    return out


def tensor_data(a: ClassFunction, b: ClassFunction) -> list:
    """Multiplicity of every irreducible in the product a*b, aligned with
    irr_table order."""
    if a.data.name != b.data.name:
        raise CharacterError("class functions live on different groups")
    prod = ClassFunction(a.data, [x * y for x, y in zip(a.values, b.values)])
    mults = []
    for cf in irr_table(a.data.group):
        q = inner_product(prod, cf)
        if q.denominator != 1 or q < 0:
            raise CharacterError("tensor multiplicity is not a natural number")
        mults.append(int(q))
    return mults


def sym2_ext2(chi: ClassFunction) -> tuple[ClassFunction, ClassFunction]:
    data = chi.data
    sym, ext = [], []
    half = Fraction(1, 2)
    for i, v in enumerate(chi.values):
        sq = chi.values[data.power_class[i][2 % data.exponent]]
        sym.append((v * v + sq) * half)
        ext.append((v * v - sq) * half)
    return ClassFunction(data, sym), ClassFunction(data, ext)


# ---------------------------------------------------------------------------
# serialization

def _element_words(group: ExplicitGroup) -> dict:
    """Shortlex word for every element, from a breadth-first closure."""
    gens = sorted(group.generators.items())
    ident = Mat.identity(gens[0][1].rows)
    words = {_elem_key(ident): ""}
    frontier = [(ident, "")]
    while frontier:
        nxt = []
        for x, w in frontier:
            for name, g in gens:
                y = x @ g
                key = _elem_key(y)
                if key not in words:
                    word = f"{w}*{name}" if w else name
                    words[key] = word
                    nxt.append((y, word))
        frontier = nxt
    return words


def table_to_obj(group) -> dict:
    from .cyclo import to_obj as cyc_to_obj
    from .groups import group_to_obj, element_to_obj
    data = class_data(group)
    rows = irr_table(group)
    classes = []
    words = _element_words(group) if isinstance(group, ExplicitGroup) else None
    for i, rep in enumerate(data.reps):
        head = {"size": data.sizes[i], "order": data.orders[i]}
        if words is None:
            head["rep"] = element_to_obj(rep)
        else:
            head["rep"] = words[_elem_key(rep)] or "1"
        classes.append(head)
    return {
        "group": {"kind": "imprimitive", "d": group.d, "e": group.e,
                  "r": group.r} if isinstance(group, GroupSpec)
        else {"kind": "explicit", "label": group.label},
        "classes": classes,
        "rows": [[cyc_to_obj(v) for v in cf.values] for cf in rows],
    }
