"""Fundamental invariants of small reflection groups, exactly.

Polynomials are kept as sparse term maps with cyclotomic coefficients.
Invariants of a prescribed degree come from averaging monomials over the
group (the Reynolds operator); algebraic independence of a selected tuple
is certified by a nonzero Jacobian determinant, computed exactly.

Two rationalization passes push results down to the rationals.  Invariant
tuples are averaged against a swept multiplier until the Galois-averaged
family is rational and still independent.  The discriminant, the product of
the reflection hyperplane forms raised to the pointwise-stabilizer orders,
is only semi-invariant, so its Galois scaling cocycle is trivialized by the
classical summation argument and the rescaled polynomial is rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import gcd

from .auts import aut_context
from .cyclo import (Cyclotomic, GaloisAuto, apply_galois, canonicalize,
                    galois_units, make_root)
from .cyclo import inverse as cyclo_inverse
from .cyclo import to_obj as cyclo_to_obj
from .cyclo import from_obj as cyclo_from_obj
from .groups import ExplicitGroup, GroupSpec, MonomialElement
from .linalg import Mat, rank

ZERO = Cyclotomic.from_rational(0)
ONE = Cyclotomic.from_rational(1)


class InvariantError(ValueError):
    pass


# ---------------------------------------------------------------------------
# polynomials as sparse term maps

@dataclass(frozen=True)
class Poly:
    """A polynomial in `vars` variables: exponent vector -> coefficient.

    Zero coefficients are never stored, so equality of the term maps is
    equality of polynomials."""
    vars: int
    terms: tuple

    @property
    def term_map(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)


def poly_from_terms(nvars: int, items) -> Poly:
    acc: dict = {}
    for exps, coeff in items:
        exps = tuple(int(e) for e in exps)
        if len(exps) != nvars or any(e < 0 for e in exps):
            raise InvariantError(f"bad exponent vector {exps}")
        if not isinstance(coeff, Cyclotomic):
            coeff = Cyclotomic.from_rational(coeff)
        cur = acc.get(exps, ZERO) + coeff
        if cur == ZERO:
            acc.pop(exps, None)
        else:
            acc[exps] = cur
    return Poly(nvars, tuple(sorted(acc.items())))


def monomial(nvars: int, exps, coeff=1) -> Poly:
    return poly_from_terms(nvars, [(tuple(exps), coeff)])


def poly_add(a: Poly, b: Poly) -> Poly:
    if a.vars != b.vars:
        raise InvariantError("adding polynomials in different variables")
    return poly_from_terms(a.vars, list(a.terms) + list(b.terms))


def poly_scale(a: Poly, c) -> Poly:
    if not isinstance(c, Cyclotomic):
        c = Cyclotomic.from_rational(c)
    return poly_from_terms(a.vars, [(e, v * c) for e, v in a.terms])


def poly_mul(a: Poly, b: Poly) -> Poly:
    if a.vars != b.vars:
        raise InvariantError("multiplying polynomials in different variables")
    out = []
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            out.append((tuple(x + y for x, y in zip(ea, eb)), ca * cb))
    return poly_from_terms(a.vars, out)


def poly_pow(a: Poly, k: int) -> Poly:
    out = monomial(a.vars, (0,) * a.vars, 1)
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def poly_diff(a: Poly, i: int) -> Poly:
    out = []
    for exps, coeff in a.terms:
        if exps[i]:
            lowered = list(exps)
            lowered[i] -= 1
            out.append((tuple(lowered), coeff * Fraction(exps[i])))
    return poly_from_terms(a.vars, out)


def compose_matrix(f: Poly, m: Mat) -> Poly:
    """f(m x): substitute each variable by its row of the matrix."""
    if m.rows != f.vars or m.cols != f.vars:
        raise InvariantError("matrix size does not match the variables")
    rows = []
    for i in range(f.vars):
        unit = [0] * f.vars
        rows.append(poly_from_terms(f.vars, [
            (tuple(1 if j == k else 0 for k in range(f.vars)), m[(i, j)])
            for j in range(f.vars) if m[(i, j)] != ZERO]))
    out = poly_from_terms(f.vars, [])
    cache: dict = {}
    for exps, coeff in f.terms:
        part = monomial(f.vars, (0,) * f.vars, coeff)
        for i, e in enumerate(exps):
            if e:
                if (i, e) not in cache:
                    cache[(i, e)] = poly_pow(rows[i], e)
                part = poly_mul(part, cache[(i, e)])
        out = poly_add(out, part)
    return out


def galois_poly(s: GaloisAuto, f: Poly) -> Poly:
    return poly_from_terms(f.vars,
                           [(e, apply_galois(s, c)) for e, c in f.terms])


def poly_conductor(f: Poly) -> int:
    n = 1
    for _, c in f.terms:
        k = canonicalize(c).conductor
        n = n * k // gcd(n, k)
    return n


def jacobian_det(fs: list) -> Poly:
    """Determinant of the Jacobian matrix of an r-tuple in r variables,
    by permutation expansion (rank is at most 3 here)."""
    r = len(fs)
    if any(f.vars != r for f in fs):
        raise InvariantError("need as many polynomials as variables")
    grid = [[poly_diff(f, j) for j in range(r)] for f in fs]
    out = poly_from_terms(r, [])
    for perm in permutations(range(r)):
        sign = _perm_sign(perm)
        part = monomial(r, (0,) * r, sign)
        for i in range(r):
            part = poly_mul(part, grid[i][perm[i]])
        out = poly_add(out, part)
    return out


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def normalize_content(f: Poly) -> Poly:
    """Scale a rational polynomial to coprime integer coefficients with the
    lex-greatest term positive."""
    if f.is_zero():
        return f
    if poly_conductor(f) != 1:
        raise InvariantError("content normalization needs rational input")
    fracs = [canonicalize(c).coeffs[0] for _, c in f.terms]
    den = 1
    for q in fracs:
        den = den * q.denominator // gcd(den, q.denominator)
    nums = [int(q * den) for q in fracs]
    g = 0
    for v in nums:
        g = gcd(g, v)
    scale = Fraction(den, g) * (1 if fracs[-1] > 0 else -1)
    return poly_scale(f, scale)


def poly_to_obj(f: Poly) -> dict:
    return {"vars": f.vars,
            "terms": [{"exps": list(e), "coeff": cyclo_to_obj(c)}
                      for e, c in f.terms]}


def poly_from_obj(obj) -> Poly:
    return poly_from_terms(int(obj["vars"]),
                           [(tuple(t["exps"]), cyclo_from_obj(t["coeff"]))
                            for t in obj["terms"]])


# ---------------------------------------------------------------------------
# group plumbing

def _element_matrices(group) -> list:
    ctx = aut_context(group)
    out = []
    for g in ctx.elements:
        out.append(g.to_matrix() if isinstance(g, MonomialElement) else g)
    return out


def series_degrees(group) -> tuple:
    """The reflection degrees, from the series formula for monomial groups
    and from the stored data lists for explicit groups."""
    if isinstance(group, GroupSpec):
        steps = [group.de * k for k in range(1, group.r)]
        return tuple(steps + [group.r * group.d])
    degrees = group.metadata.get("degrees") if isinstance(group, ExplicitGroup) else None
    if not degrees:
        raise InvariantError("no degree data for this group")
    return tuple(int(x) for x in degrees)


def _monomials_of_degree(nvars: int, deg: int):
    if nvars == 1:
        yield (deg,)
        return
    for head in range(deg, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, deg - head):
            yield (head,) + rest


def _is_invariant(f: Poly, mats: list) -> bool:
    return all(compose_matrix(f, m) == f for m in mats)


# ---------------------------------------------------------------------------
# Reynolds averaging

def reynolds_invariants(group, degrees) -> dict:
    """Invariant bases by degree plus an independent selection.

    For each requested degree every monomial is averaged over the group;
    averages that grow the span are kept (normalized to coprime integer
    form when rational).  The selection takes one invariant per degree,
    first combination in sweep order whose Jacobian determinant is nonzero.
    A nonzero degree-1 average means the acting representation has a trivial
    summand; that is reported in the flags rather than treated as an
    error."""
    mats = _element_matrices(group)
    nvars = mats[0].rows
    if nvars > 2 and len(mats) > 200:
        raise InvariantError("group is too large for naive averaging")
    degrees = [int(x) for x in degrees]
    if len(degrees) != nvars:
        raise InvariantError("need exactly one degree per variable")
    weight = Fraction(1, len(mats))
    bases: list = []
    for deg in degrees:
        mono_list = list(_monomials_of_degree(nvars, deg))
        index = {e: k for k, e in enumerate(mono_list)}
        kept: list = []
        pile: list = []
        for exps in mono_list:
            avg = poly_from_terms(nvars, [])
            for m in mats:
                avg = poly_add(avg, compose_matrix(monomial(nvars, exps), m))
            avg = poly_scale(avg, weight)
            if avg.is_zero():
                continue
            vec = [ZERO] * len(mono_list)
            for e, c in avg.terms:
                vec[index[e]] = c
            if _grows_span(pile, vec):
                kept.append(normalize_content(avg)
                            if poly_conductor(avg) == 1 else avg)
        bases.append(kept)
    reducible = any(
        not _reynolds_single(mats, nvars, i).is_zero() for i in range(nvars))
    selected, jac = _select_independent(bases)
    return {"degrees": tuple(degrees), "bases": bases, "selected": selected,
            "jacobian": jac, "reducible": reducible}


def _reynolds_single(mats, nvars: int, i: int) -> Poly:
    exps = tuple(1 if k == i else 0 for k in range(nvars))
    avg = poly_from_terms(nvars, [])
    for m in mats:
        avg = poly_add(avg, compose_matrix(monomial(nvars, exps), m))
    return avg


def _grows_span(pile: list, vec: list) -> bool:
    """Row-reduce vec against the pile; keep the reduced row when nonzero."""
    row = list(vec)
    for lead, stored in pile:
        if row[lead] != ZERO:
            f = row[lead]
            row = [a - f * b for a, b in zip(row, stored)]
    for k, v in enumerate(row):
        if v != ZERO:
            inv = cyclo_inverse(v)
            pile.append((k, [a * inv for a in row]))
            return True
    return False


def _select_independent(bases: list):
    counts = [len(b) for b in bases]
    if any(c == 0 for c in counts):
        raise InvariantError("an invariant space in the list is empty")
    for picks in product(*[range(c) for c in counts]):
        fs = [bases[i][k] for i, k in enumerate(picks)]
        jac = jacobian_det(fs)
        if not jac.is_zero():
            return fs, jac
    raise InvariantError("no algebraically independent selection found")


# ---------------------------------------------------------------------------
# Galois averaging of invariant tuples

def _multiplier_sweep(conductor: int):
    """Deterministic multiplier candidates: rationals by height up to 4
    (positive before negative inside a shell), then root-of-unity
    combinations of height up to 2."""
    for h in range(1, 5):
        for den in range(1, h + 1):
            for mag in range(1, h + 1):
                if max(mag, den) != h or gcd(mag, den) != 1:
                    continue
                yield Cyclotomic.from_rational(Fraction(mag, den))
                yield Cyclotomic.from_rational(Fraction(-mag, den))
    roots = [make_root(conductor, k) for k in range(1, conductor)]
    for mag in (1, 2):
        for z in roots:
            yield z * Fraction(mag)
            yield z * Fraction(-mag)
    small = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2))
    pool = [Cyclotomic.from_rational(1)] + roots
    for a in range(len(pool)):
        for b in range(a + 1, len(pool)):
            for ca in small:
                for cb in small:
                    yield pool[a] * ca + pool[b] * cb


def galois_rationalize(fs: list, conductor: int, group=None) -> list:
    """Average each invariant against a swept multiplier until the family
    is rational and still independent.

    The output tuple is (1/#gal) sum over gamma of gamma(multiplier * f);
    for rational input the first multiplier, 1, reproduces the input
    exactly.  Zero collapses and dependent families are caught by the
    Jacobian determinant, which moves the sweep along.  When a group is
    supplied, invariance of the output is re-verified against every
    element."""
    gammas = galois_units(conductor)
    weight = Fraction(1, len(gammas))
    mats = _element_matrices(group) if group is not None else None
    for lam in _multiplier_sweep(conductor):
        out = []
        for f in fs:
            scaled = poly_scale(f, lam)
            acc = poly_from_terms(f.vars, [])
            for s in gammas:
                acc = poly_add(acc, galois_poly(s, scaled))
            out.append(poly_scale(acc, weight))
        if any(poly_conductor(g) != 1 for g in out):
            continue
        if jacobian_det(out).is_zero():
            continue
        if mats is not None and not all(_is_invariant(g, mats) for g in out):
            raise InvariantError("averaged family lost invariance")
        return out
    raise InvariantError("multiplier sweep exhausted")


# ---------------------------------------------------------------------------
# the discriminant

def hyperplane_data(group) -> list:
    """Reflecting hyperplanes as (linear form, stabilizer order) pairs.

    The form of a hyperplane is the first nonzero row of (matrix - 1) for
    the first group element reflecting through it, kept unscaled;
    proportional forms name the same hyperplane.  The stabilizer order
    counts group elements fixing the hyperplane pointwise, the identity
    included."""
    mats = _element_matrices(group)
    nvars = mats[0].rows
    ident = Mat.identity(nvars)
    forms: list = []
    for m in mats:
        delta = m - ident
        if rank(delta) != 1:
            continue
        row = next(delta.row(i) for i in range(nvars)
                   if any(v != ZERO for v in delta.row(i)))
        if not any(_proportional_rows(row, kept) for kept in forms):
            forms.append(tuple(row))
    return [(form, sum(1 for m in mats if _fixes_pointwise(m, form, nvars)))
            for form in forms]


def _proportional_rows(a: tuple, b: tuple) -> bool:
    lead = next(i for i, v in enumerate(b) if v != ZERO)
    if a[lead] == ZERO:
        return False
    c = a[lead] * cyclo_inverse(b[lead])
    return all(a[i] == c * b[i] for i in range(len(a)))


def _fixes_pointwise(m: Mat, form: tuple, nvars: int) -> bool:
    """Whether m is the identity on the kernel of the form."""
    delta = m - Mat.identity(nvars)
    basis = _kernel_basis(form, nvars)
    for vec in basis:
        image = [sum((delta[(i, j)] * vec[j] for j in range(nvars)),
                     start=ZERO) for i in range(nvars)]
        if any(v != ZERO for v in image):
            return False
    return True


def _kernel_basis(form: tuple, nvars: int) -> list:
    lead = next(i for i, v in enumerate(form) if v != ZERO)
    basis = []
    for j in range(nvars):
        if j == lead:
            continue
        vec = [ZERO] * nvars
        vec[j] = ONE
        vec[lead] = ZERO - form[j] * cyclo_inverse(form[lead])
        basis.append(vec)
    return basis


def discriminant_rational(group) -> Poly:
    """The product of hyperplane forms raised to the stabilizer orders,
    rescaled to rational coefficients.

    The Galois group scales the product by a 1-cocycle of nonzero field
    elements; summing the cocycle against a swept field element produces a
    nonzero b with gamma(b) = b / cocycle(gamma), and multiplying by b makes
    every coefficient rational.  The result is content-normalized."""
    data = hyperplane_data(group)
    if not data:
        raise InvariantError("group has no reflections")
    nvars = len(data[0][0])
    delta = monomial(nvars, (0,) * nvars, 1)
    for form, e_h in data:
        line = poly_from_terms(nvars, [
            (tuple(1 if k == j else 0 for k in range(nvars)), c)
            for j, c in enumerate(form) if c != ZERO])
        delta = poly_mul(delta, poly_pow(line, e_h))
    conductor = poly_conductor(delta)
    if conductor == 1:
        return normalize_content(delta)
    cocycle = {}
    for s in galois_units(conductor):
        moved = galois_poly(s, delta)
        lam = _proportionality(moved, delta)
        cocycle[s] = lam
    for k in range(conductor):
        c = make_root(conductor, k)
        b = ZERO
        for s, lam in cocycle.items():
            b = b + lam * apply_galois(s, c)
        if b != ZERO:
            scaled = poly_scale(delta, b)
            if poly_conductor(scaled) != 1:
                raise InvariantError("cocycle rescaling failed to land in "
                                     "the rationals")
            return normalize_content(scaled)
    raise InvariantError("no nonzero cocycle summation")


def _proportionality(a: Poly, b: Poly) -> Cyclotomic:
    """The scalar with a = scalar * b, which must exist exactly."""
    if a.vars != b.vars or len(a.terms) != len(b.terms):
        raise InvariantError("polynomials are not proportional")
    exps_a = [e for e, _ in a.terms]
    exps_b = [e for e, _ in b.terms]
    if exps_a != exps_b:
        raise InvariantError("polynomials are not proportional")
    ratio = a.terms[0][1] * cyclo_inverse(b.terms[0][1])
    for (_, ca), (_, cb) in zip(a.terms, b.terms):
        if cb * ratio != ca:
            raise InvariantError("polynomials are not proportional")
    return ratio


def semi_invariant_scalars(f: Poly, group) -> list:
    """The scalar f picks up under each group element; raises when some
    element fails to scale f."""
    return [_proportionality(compose_matrix(f, m), f)
            for m in _element_matrices(group)]
