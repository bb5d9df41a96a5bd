"""Galois descent for exact matrix models.

Applying a field automorphism gamma to every entry of a matrix model gives
another representation of the same group.  When the character is stable the
twisted model is isomorphic to the transport of the original along a group
automorphism, and matrices realizing those isomorphisms form a cocycle up
to scalars.  This module computes that cocycle, measures the scalar
obstruction to lifting it to an exact one (a norm residue class for cyclic
actions), solves exact cocycles by an averaging construction, and
conjugates models stage by stage until every field automorphism acts on the
entries exactly as the assigned group automorphism permutes the elements.
The dihedral family gets a closed-form treatment with an explicit real form.

The cocycle of a model is stored on the side where the representative
left-multiplies the transported model onto the twisted one,

    gamma(rho(g)) = A_gamma @ rho(itilde(gamma)(g)) @ A_gamma^{-1},

so the representatives compose as A_(st) = s(A_t) @ A_s up to scalars, and
a solution of the cyclic stage is an invertible X with tau(X) @ A = X whose
conjugation X @ rho @ X^{-1} is the equivariant model.  The averaging
solver hilbert90_solve works with the inverse-side family B_gamma =
A_gamma^{-1}, which composes as B_(st) = B_s @ s(B_t) and is solved by M
with B_gamma = M^{-1} @ gamma(M); the two sides carry the same information
and the docstrings state which one each routine expects.

Two conventions hold throughout.  Scalar questions (is this matrix a scalar
multiple of that one) are decided by cross-ratio against the first nonzero
entry; nothing here normalizes by determinants.  And every search sweeps its
candidates in a fixed documented order, lowest index first, so reruns
produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import gcd

from .cyclo import (Cyclotomic, GaloisAuto, apply_galois, canonicalize,
                    coerce, euler_phi, galois_units, make_root, norm_cyclic)
from .cyclo import inverse as cyclo_inverse
from .cyclo import to_obj as cyclo_to_obj
from .linalg import Mat, det, galois_map, inverse
from .linalg import to_obj as mat_to_obj
from .groups import GroupSpec, _elem_key, _generic_inv, _generic_mul
from .tableaux import RepModel
from .auts import (Automorphism, aut_context, automorphism_from_images,
                   eta_automorphism)

ONE = Cyclotomic.from_rational(1)
ZERO = Cyclotomic.from_rational(0)


class DescentError(ValueError):
    """A descent computation that cannot proceed; may carry the obstruction."""

    def __init__(self, message, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class NotIsomorphic(DescentError):
    """The two models admit no nonzero intertwiner."""


# ---------------------------------------------------------------------------
# scalar comparison and exact linear solving

def _first_nonzero(m: Mat):
    for i in range(m.rows):
        for j in range(m.cols):
            v = m[(i, j)]
            if not v.is_zero():
                return (i, j), v
    return None, None


def scalar_equivalent(a: Mat, b: Mat) -> bool:
    """Whether a == c*b for some nonzero scalar c.

    Decided by cross-ratio of the first nonzero entries; zero matrices are
    equivalent only to each other."""
    if a.rows != b.rows or a.cols != b.cols:
        return False
    pa, va = _first_nonzero(a)
    pb, vb = _first_nonzero(b)
    if pa is None or pb is None:
        return pa is None and pb is None
    if pa != pb:
        return False
    return a == b.scale(va * cyclo_inverse(vb))


def _nullspace(rows, ncols: int):
    """Kernel basis of a matrix given as a list of coefficient rows.

    Gauss-Jordan with exact field division; pivots are chosen top-down and
    left-to-right, and each kernel vector sets one free column to 1, so the
    basis is deterministic."""
    work = [list(r) for r in rows]
    pivots = {}
    rix = 0
    for col in range(ncols):
        sel = next((i for i in range(rix, len(work))
                    if not work[i][col].is_zero()), None)
        if sel is None:
            continue
        work[rix], work[sel] = work[sel], work[rix]
        inv = cyclo_inverse(work[rix][col])
        work[rix] = [v * inv for v in work[rix]]
        for i in range(len(work)):
            if i != rix and not work[i][col].is_zero():
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[rix])]
        pivots[col] = rix
        rix += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [ZERO] * ncols
        v[free] = ONE
        for col, r in pivots.items():
            v[col] = -work[r][free]
        basis.append(v)
    return basis


def _gen_images(model) -> dict:
    if isinstance(model, RepModel):
        return dict(model.images)
    if hasattr(model, "generators"):
        return dict(model.generators)
    return dict(model)


def intertwiner(m1, m2) -> Mat:
    """A nonzero X with X @ m2(s) = m1(s) @ X for every generator s.

    m1 and m2 are models (RepModel, explicit matrix group, or a plain dict
    of generator images) naming the same generators.  The solution space is
    computed exactly; its dimension is 1 when the models are isomorphic and
    irreducible, and 0 when they are not isomorphic, which raises
    NotIsomorphic.  A dimension above 1 means the input was reducible and is
    an error.  The result is normalized so its first nonzero entry is 1.
    """
    a, b = _gen_images(m1), _gen_images(m2)
    if sorted(a) != sorted(b):
        raise DescentError("the two models name different generators")
    dims = {m.rows for m in a.values()} | {m.rows for m in b.values()}
    if len(dims) != 1:
        raise DescentError("the two models have different dimensions")
    n = dims.pop()
    rows = []
    for name in sorted(a):
        g1, g2 = a[name], b[name]
        for i in range(n):
            for j in range(n):
                row = [ZERO] * (n * n)
                for k in range(n):
                    row[i * n + k] = row[i * n + k] + g2[(k, j)]
                    row[k * n + j] = row[k * n + j] - g1[(i, k)]
                rows.append(row)
    basis = _nullspace(rows, n * n)
    if not basis:
        raise NotIsomorphic("the models are not isomorphic")
    if len(basis) > 1:
        raise DescentError(f"intertwiner space has dimension {len(basis)}; "
                           "the models are not irreducible")
    x = Mat(n, n, basis[0])
    _, v = _first_nonzero(x)
    return x.scale(cyclo_inverse(v))


# ---------------------------------------------------------------------------
# element tables

def _model_table(ctx, images: dict, *, check: bool = True) -> list:
    """Images of every group element, indexed by element position.

    Grown along the Cayley graph from the identity.  With check=True every
    edge is compared against the stored value, which verifies that the
    generator images satisfy all defining products of the group."""
    if sorted(images) != sorted(ctx.gen_names):
        raise DescentError("images do not name the group's generators")
    n0 = next(iter(images.values())).rows
    table = [None] * ctx.n
    table[0] = Mat.identity(n0)
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for name in ctx.gen_names:
                y = ctx.right_gen[name][x]
                prodm = table[x] @ images[name]
                if table[y] is None:
                    table[y] = prodm
                    nxt.append(y)
                elif check and table[y] != prodm:
                    raise DescentError(
                        "generator images do not define a homomorphism")
        frontier = nxt
    if any(t is None for t in table):
        raise DescentError("generator images do not span the group")
    return table


def _field_of(images: dict) -> int:
    n = 1
    for m in images.values():
        for entry in m.entries:
            c = canonicalize(entry).conductor
            n = n * c // gcd(n, c)
    return n


def as_model(group, images=None, kind: str = "defining") -> RepModel:
    """Wrap generator images (default: the defining matrices of an explicit
    group) as a RepModel so the descent routines can work on them."""
    if images is None:
        images = _gen_images(group)
    n = next(iter(images.values())).rows
    return RepModel(group=group, basis=list(range(n)), images=dict(images),
                    conductor=_field_of(images), kind=kind)


# ---------------------------------------------------------------------------
# the intertwiner cocycle of a model

@dataclass
class ProjectiveCocycle:
    """Matrices A_gamma, one per acting field automorphism, with
    A_(s.t) proportional to s(A_t) @ A_s for all pairs; each A_gamma
    left-multiplies the transported model onto the gamma-twisted one."""

    conductor: int
    acting: tuple
    maps: dict

    def verify(self) -> None:
        for s in self.acting:
            for t in self.acting:
                st = s.compose(t)
                if st not in self.maps:
                    raise DescentError("acting set is not closed: missing "
                                       f"exponent {st.exponent}")
                lhs = galois_map(s, self.maps[t]) @ self.maps[s]
                if not scalar_equivalent(lhs, self.maps[st]):
                    raise DescentError("cocycle condition fails at exponents "
                                       f"({s.exponent}, {t.exponent})")

    def rescaled(self, factors: dict) -> "ProjectiveCocycle":
        """The same projective class with chosen representatives multiplied
        by the given scalars; automorphisms not listed keep theirs."""
        maps = {g: (m.scale(factors[g]) if g in factors else m)
                for g, m in self.maps.items()}
        return ProjectiveCocycle(self.conductor, self.acting, maps)


def _identity_aut(ctx) -> Automorphism:
    return Automorphism(ctx, range(ctx.n))


def cocycle_from_model(model, itilde: dict, acting) -> ProjectiveCocycle:
    """The intertwiner cocycle of a model under a Galois action.

    For each gamma in acting this solves
    A_gamma @ rho(itilde[gamma](s)) = gamma(rho(s)) @ A_gamma over the
    generators, normalizes, and verifies the cocycle condition on all pairs
    up to scalars.  itilde maps GaloisAuto objects to group automorphisms;
    an identity automorphism is filled in for the identity of the action.
    A missing intertwiner raises, which signals that the character is not
    stable under that gamma."""
    images = _gen_images(model)
    group = model.group if isinstance(model, RepModel) else model
    ctx = aut_context(group)
    table = _model_table(ctx, images)
    acting = tuple(acting)
    maps = {}
    for gamma in acting:
        if gamma in itilde:
            a = itilde[gamma]
        elif gamma.exponent % gamma.conductor == 1 % gamma.conductor:
            a = _identity_aut(ctx)
        else:
            raise DescentError(f"no automorphism assigned to {gamma!r}")
        transported = {name: table[ctx.eidx[_elem_key(a.apply(g))]]
                       for name, g in ctx.gen_elems.items()}
        twisted = {name: galois_map(gamma, img)
                   for name, img in images.items()}
        try:
            maps[gamma] = intertwiner(twisted, transported)
        except NotIsomorphic:
            raise DescentError(
                f"no intertwiner at exponent {gamma.exponent}: the twisted "
                "model is not isomorphic to the transported one") from None
    c = ProjectiveCocycle(max(g.conductor for g in acting), acting, maps)
    c.verify()
    return c


# ---------------------------------------------------------------------------
# the scalar obstruction of a cyclic action

@dataclass
class ObstructionClass:
    """A scalar fixed by a cyclic action, recording the wraparound of a
    projective cocycle.  Its class modulo norms from the top field is what
    obstructs descent; a stored witness certifies the class is trivial."""

    conductor: int
    generator: GaloisAuto
    order: int
    scalar: Cyclotomic
    witness: Cyclotomic | None = None

    @property
    def status(self) -> str:
        return "norm" if self.witness is not None else "unresolved"


def nakayama_class(c: ProjectiveCocycle, gamma: GaloisAuto,
                   order: int | None = None) -> ObstructionClass:
    """The scalar gamma^(n-1)(A) @ ... @ gamma(A) @ A for A = c.maps[gamma].

    This is the wraparound of the cyclic stage generated by A under the
    composition rule A_(st) = s(A_t) @ A_s; it intertwines the model with
    itself, so it must be a nonzero scalar, and the scalar is fixed by
    gamma.  Rescaling the representative A by lambda multiplies the result
    by the norm of lambda, so the class modulo norms is well defined."""
    if gamma not in c.maps:
        raise DescentError(f"the cocycle does not cover {gamma!r}")
    n = gamma.order() if order is None else order
    a = c.maps[gamma]
    p = Mat.identity(a.rows)
    for k in range(n):
        p = galois_map(gamma.power(k), a) @ p
    mu = p[(0, 0)]
    if mu.is_zero() or p != Mat.identity(a.rows).scale(mu):
        raise DescentError("cocycle power is not a nonzero scalar")
    if apply_galois(gamma, mu) != mu:
        raise DescentError("obstruction scalar is not fixed by the action")
    return ObstructionClass(c.conductor, gamma, n, canonicalize(mu))


def _as_scalar(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    return Cyclotomic.from_rational(Fraction(x))


def _fixed_basis(conductor: int, fixed_by=()) -> list:
    """An integral basis of the subfield fixed by the given automorphisms,
    as elements of the ambient field.

    Solves (sigma - 1)x = 0 over the power-basis coordinates for every
    sigma at once; kernel vectors are cleared of denominators and divided
    by their content, and their order follows the free columns of the
    elimination, so the basis is deterministic.  Without constraints this
    is the power basis itself."""
    phi = euler_phi(conductor)
    if not fixed_by:
        return [make_root(conductor, j) for j in range(phi)]
    rows = []
    for s in fixed_by:
        cols = [coerce(apply_galois(s, make_root(conductor, j)), conductor)
                for j in range(phi)]
        for i in range(phi):
            row = []
            for j in range(phi):
                c = cols[j].coeffs[i]
                if i == j:
                    c = c - 1
                row.append(Cyclotomic.from_rational(Fraction(c)))
            rows.append(row)
    basis = []
    for vec in _nullspace(rows, phi):
        fracs = [v.coeffs[0] for v in vec]
        lcm = 1
        for f in fracs:
            lcm = lcm * f.denominator // gcd(lcm, f.denominator)
        ints = [int(f * lcm) for f in fracs]
        content = 0
        for c in ints:
            content = gcd(content, c)
        if content > 1:
            ints = [c // content for c in ints]
        basis.append(Cyclotomic(conductor,
                                tuple(Fraction(c) for c in ints)))
    return basis


def _signed_range(h: int):
    """0, 1, -1, 2, -2, ..., h, -h: small absolute values first, positive
    before negative, so searches prefer the simplest witnesses."""
    yield 0
    for k in range(1, h + 1):
        yield k
        yield -k


def norm_search(target, gamma: GaloisAuto, order: int | None = None, *,
                height: int = 4, units=(), witness=None, fixed_by=(),
                max_candidates: int = 200_000) -> dict:
    """Find lambda whose norm along gamma (the product of the first `order`
    gamma-conjugates) equals the target, possibly times a supplied unit.

    Exhausts numerators over an integral basis (the power basis of the
    conductor, or a basis of the subfield fixed by the fixed_by
    automorphisms) with coefficients of absolute value up to `height` and
    denominators up to `height`.  Shells of growing height are visited in
    order, and within a shell each coordinate runs through 0, 1, -1, 2, -2,
    ... so the simplest witness wins.  Supplied witnesses are verified,
    never trusted.  Failure is a returned value, {"status": "exhausted",
    ...}, not an error; max_candidates bounds the number of coefficient
    tuples scanned so large conductors terminate."""
    n = gamma.order() if order is None else order
    target = canonicalize(_as_scalar(target))
    unit_list = [_as_scalar(u) for u in units]
    if witness is not None:
        w = _as_scalar(witness)
        got = canonicalize(norm_cyclic(w, gamma, n))
        if got == target:
            return {"status": "witness", "witness": w, "unit": ONE,
                    "supplied": True}
        for u in unit_list:
            if got == canonicalize(target * u):
                return {"status": "witness", "witness": w, "unit": u,
                        "supplied": True}
        raise DescentError("supplied witness does not have the required norm")
    basis = _fixed_basis(gamma.conductor, fixed_by)
    dim = len(basis)
    scanned = 0
    reached = 0
    for h in range(1, height + 1):
        for den in range(1, h + 1):
            for coeffs in product(tuple(_signed_range(h)), repeat=dim):
                scanned += 1
                if scanned > max_candidates:
                    return {"status": "exhausted", "height": reached,
                            "scanned": scanned - 1, "truncated": True}
                if max(max(coeffs), -min(coeffs), den) != h:
                    continue
                if all(c == 0 for c in coeffs):
                    continue
                g = den
                for c in coeffs:
                    g = gcd(g, c)
                if g > 1:
                    continue
                lam = ZERO
                for c, b in zip(coeffs, basis):
                    if c:
                        lam = lam + b * Fraction(c, den)
                got = canonicalize(norm_cyclic(lam, gamma, n))
                if got == target:
                    return {"status": "witness", "witness": lam, "unit": ONE,
                            "height": h, "supplied": False}
                for u in unit_list:
                    if got == canonicalize(target * u):
                        return {"status": "witness", "witness": lam, "unit": u,
                                "height": h, "supplied": False}
        reached = h
    return {"status": "exhausted", "height": reached, "scanned": scanned,
            "truncated": False}


# ---------------------------------------------------------------------------
# solving exact cocycles by averaging

def _sweep_patterns(n: int):
    """Base matrices for the averaging sweep.

    Every term of an average built from C keeps C's row support (and, on
    the inverse side, its column support), so an invertible average needs a
    C touching all n rows.  Sizes 1 and 2 sweep single entries, then pairs
    of entries with coefficients from {1, -1, 2}, positions in row-major
    order.  Larger sizes sweep permutation-supported patterns instead,
    permutations in lexicographic order and coefficient tuples from the
    same set, so the identity pattern comes first."""
    coeffs = (Fraction(1), Fraction(-1), Fraction(2))
    if n >= 3:
        for perm in permutations(range(n)):
            for cs in product(coeffs, repeat=n):
                yield {(i, perm[i]): cs[i] for i in range(n)}
        return
    positions = [(i, j) for i in range(n) for j in range(n)]
    for pos in positions:
        yield {pos: Fraction(1)}
    for x in range(len(positions)):
        for y in range(x + 1, len(positions)):
            for ca, cb in product(coeffs, repeat=2):
                yield {positions[x]: ca, positions[y]: cb}


def _sweep_scales(conductor: int, fixed_by=()):
    """Field elements multiplying the base patterns.

    Unconstrained: 1, then the powers of the root of unity, then
    1 + zeta^a, then 1 + zeta^a + zeta^b.  Constrained by fixed_by: 1, then
    the non-rational elements b of the fixed-subfield basis, then 1 + b,
    then the pairwise sums, which reaches every needed mixture even when no
    single root power lies in the subfield."""
    if fixed_by:
        nontriv = [b for b in _fixed_basis(conductor, fixed_by)
                   if canonicalize(b).conductor > 1]
        yield ONE
        yield from nontriv
        for b in nontriv:
            yield ONE + b
        for i, b1 in enumerate(nontriv):
            for b2 in nontriv[i + 1:]:
                yield b1 + b2
        return
    yield ONE
    if conductor > 1:
        pows = [make_root(conductor, k) for k in range(conductor)]
        yield from (pows[k] for k in range(1, conductor))
        for a in range(1, conductor):
            yield ONE + pows[a]
        for a in range(1, conductor):
            for b in range(a + 1, conductor):
                yield ONE + pows[a] + pows[b]


def _candidate_mats(n: int, conductor: int, fixed_by=()):
    for lam in _sweep_scales(conductor, fixed_by):
        for pat in _sweep_patterns(n):
            entries = [ZERO] * (n * n)
            for (i, j), c in pat.items():
                entries[i * n + j] = lam * c
            yield Mat(n, n, entries)


def _rational_normalize(m: Mat) -> Mat:
    """Divide by the first nonzero entry when that entry is rational; a
    rational factor never disturbs an exact cocycle equation."""
    _, v = _first_nonzero(m)
    if v is not None and canonicalize(v).conductor == 1:
        return m.scale(cyclo_inverse(v))
    return m


def hilbert90_solve(B: dict, acting=None, *, budget: int = 20_000) -> Mat:
    """Solve B_gamma = M^-1 @ gamma(M) for an exact matrix cocycle B.

    B maps the automorphisms of a subgroup of the unit group (identity
    included) to invertible matrices with B_(s.t) = B_s @ s(B_t) exactly;
    this is checked on all pairs before solving.  The solution is the
    inverse of X = sum over gamma of B_gamma @ gamma(C), swept over the
    candidates of _candidate_mats until X is invertible, then verified
    against every B_gamma before returning.  Rational C only ever produces
    X = (sum of the B_gamma) @ C, so when that sum is singular the scaled
    stages of the sweep are essential; for an action of order 2 a scalar
    C works exactly when -C/gamma(C) avoids the spectrum of B_gamma."""
    if acting is None:
        acting = tuple(sorted(B, key=lambda s: (s.conductor, s.exponent)))
    else:
        acting = tuple(acting)
    ident = next((g for g in acting
                  if g.exponent % g.conductor == 1 % g.conductor), None)
    if ident is None:
        raise DescentError("acting set has no identity element")
    n = B[ident].rows
    if B[ident] != Mat.identity(n):
        raise DescentError("cocycle does not send the identity to the "
                           "identity matrix")
    for s in acting:
        for t in acting:
            st = s.compose(t)
            if st not in B:
                raise DescentError("acting set is not closed under "
                                   "composition")
            if B[s] @ galois_map(s, B[t]) != B[st]:
                raise DescentError("not an exact cocycle at exponents "
                                   f"({s.exponent}, {t.exponent})")
    conductor = acting[0].conductor
    tried = 0
    for c in _candidate_mats(n, conductor):
        tried += 1
        if tried > budget:
            break
        x = None
        for g in acting:
            term = B[g] @ galois_map(g, c)
            x = term if x is None else x + term
        if det(x).is_zero():
            continue
        m = _rational_normalize(inverse(x))
        minv = inverse(m)
        for g in acting:
            if minv @ galois_map(g, m) != B[g]:
                raise DescentError("internal: averaged solution fails to "
                                   f"reproduce the cocycle at {g.exponent}")
        return m
    raise DescentError("averaging sweep exhausted its budget")


def _solve_cyclic_step(a: Mat, tau: GaloisAuto, n_step: int, fixed_by=(),
                       budget: int = 20_000) -> Mat:
    """Invertible X with tau(X) @ a = X for a single cyclic stage.

    a must generate an exact cocycle for the order-n_step action of tau on
    the subfield fixed by fixed_by, meaning the stage products
    tau^(k-1)(a) @ ... @ tau(a) @ a wrap around to the identity; X is
    averaged over those products from candidates fixed by fixed_by, so
    conjugating by X does not disturb what earlier stages achieved."""
    blist = [Mat.identity(a.rows)]
    for k in range(1, n_step):
        blist.append(galois_map(tau.power(k - 1), a) @ blist[-1])
    wrap = galois_map(tau.power(n_step - 1), a) @ blist[-1]
    if wrap != Mat.identity(a.rows):
        raise DescentError("cocycle wraparound is not the identity")
    tried = 0
    for c in _candidate_mats(a.rows, tau.conductor, fixed_by):
        tried += 1
        if tried > budget:
            break
        x = None
        for k in range(n_step):
            term = galois_map(tau.power(k), c) @ blist[k]
            x = term if x is None else x + term
        if det(x).is_zero():
            continue
        x = _rational_normalize(x)
        b1 = blist[1] if n_step > 1 else blist[0]
        if galois_map(tau, x) @ b1 != x:
            raise DescentError("internal: averaged stage solution fails to "
                               "reproduce the cocycle")
        for s in fixed_by:
            if galois_map(s, x) != x:
                raise DescentError("internal: stage solution moved under an "
                                   "automorphism it should fix")
        return x
    raise DescentError("averaging sweep exhausted its budget")


# ---------------------------------------------------------------------------
# assignments and towers

def close_assignment(itilde: dict) -> dict:
    """Close a Galois-to-automorphism assignment under composition.

    Adds the identity, multiplies existing pairs until stable, and raises
    when the assignment contradicts itself on a product."""
    out = dict(itilde)
    some = next(iter(out.values()))
    ident = GaloisAuto(next(iter(out)).conductor, 1)
    out.setdefault(ident, _identity_aut(some.ctx))
    changed = True
    while changed:
        changed = False
        for g1 in list(out):
            for g2 in list(out):
                comp = g1.compose(g2)
                ca = out[g1].compose(out[g2])
                if comp not in out:
                    out[comp] = ca
                    changed = True
                elif out[comp].perm != ca.perm:
                    raise DescentError("assignment is not multiplicative at "
                                       f"({g1.exponent}, {g2.exponent})")
    return out


def lift_action(itilde: dict, conductor: int) -> dict:
    """Reindex a closed assignment to a larger conductor: every unit acts
    through its residue at the base conductor."""
    base = next(iter(itilde)).conductor
    if conductor % base != 0:
        raise DescentError("conductor is not a multiple of the base")
    try:
        return {g: itilde[GaloisAuto(base, g.exponent % base)]
                for g in galois_units(conductor)}
    except KeyError as missing:
        raise DescentError(f"assignment misses residue {missing}") from None


def shipped_action(group) -> dict:
    """The stored Galois assignment of an explicit matrix group, with the
    generator words evaluated to automorphisms and closed under
    composition."""
    from .auts import iota_assignment, word_element
    ctx = aut_context(group)
    out = {}
    for gamma, images in iota_assignment(group).items():
        out[gamma] = automorphism_from_images(
            ctx, {name: word_element(ctx, toks)
                  for name, toks in images.items()})
    return close_assignment(out)


def propose_tower(conductor: int, exponents=None) -> list:
    """A chain of unit-group generators with cyclic stages.

    Repeatedly adjoins the exponent whose order modulo the part already
    generated is smallest, ties to the smaller exponent.  The minimal order
    is always prime (a composite order would be witnessed by a power of the
    same element), so every stage is cyclic of prime order and the stage
    orders ascend."""
    if exponents is None:
        cands = [g.exponent for g in galois_units(conductor)]
    else:
        cands = sorted({e % conductor for e in exponents})

    def close(base):
        s = set(base)
        while True:
            more = {a * b % conductor for a in s for b in s} - s
            if not more:
                return s
            s |= more

    target = close(set(cands) | {1 % conductor})
    have = {1 % conductor}
    tower = []
    while have != target:
        best = None
        for e in sorted(target - have):
            k, cur = 1, e
            while cur not in have:
                cur = cur * e % conductor
                k += 1
            if best is None or (k, e) < best:
                best = (k, e)
        tower.append(GaloisAuto(conductor, best[1]))
        have = close(have | {best[1]})
    return tower


def descend_tower(model: RepModel, itilde: dict, tower=None) -> RepModel:
    """Conjugate a model until each assigned field automorphism acts on the
    entries exactly as its group automorphism permutes the group.

    itilde maps GaloisAuto objects to group automorphisms and is closed
    under composition here; tower lists unit-group generators adjoined one
    stage at a time (default: propose_tower over the exponents itilde
    covers).  Each stage solves a cyclic problem over the field fixed so
    far: the stage intertwiner is automatically fixed by the previous
    stages once normalized, its wraparound scalar is cleared by a norm
    preimage when possible, and the stage conjugates the model by the
    averaged X with tau(X) @ A = X, which does not disturb earlier stages.
    Every stage is re-verified exactly on everything covered so far.  An
    uncleared wraparound raises a DescentError carrying the
    ObstructionClass."""
    itilde = close_assignment(itilde)
    gammas = sorted(itilde, key=lambda s: s.exponent)
    conductor = gammas[0].conductor
    if tower is None:
        tower = propose_tower(conductor, [g.exponent for g in gammas])
    group = model.group
    ctx = aut_context(group)
    images = dict(model.images)
    table = _model_table(ctx, images)

    def closure(base):
        s = set(base)
        while True:
            more = {a * b % conductor for a in s for b in s} - s
            if not more:
                return s
            s |= more

    have = {1 % conductor}
    for tau in tower:
        if tau.conductor != conductor:
            raise DescentError("tower conductor does not match the "
                               "assignment")
        n_step, cur = 1, tau.exponent % conductor
        while cur not in have:
            cur = cur * tau.exponent % conductor
            n_step += 1
        if n_step == 1:
            continue
        if tau not in itilde:
            raise DescentError("assignment does not cover exponent "
                               f"{tau.exponent}")
        aut = itilde[tau]
        transported = {name: table[ctx.eidx[_elem_key(aut.apply(g))]]
                       for name, g in ctx.gen_elems.items()}
        twisted = {name: galois_map(tau, img)
                   for name, img in images.items()}
        try:
            a = intertwiner(twisted, transported)
        except NotIsomorphic:
            raise DescentError("character is not stable at exponent "
                               f"{tau.exponent}") from None
        fixers = [GaloisAuto(conductor, e) for e in sorted(have) if e != 1]
        for s in fixers:
            if galois_map(s, a) != a:
                raise DescentError("normalized stage intertwiner moved "
                                   "under an already-descended automorphism")
        p = Mat.identity(a.rows)
        for k in range(n_step):
            p = galois_map(tau.power(k), a) @ p
        mu = p[(0, 0)]
        if mu.is_zero() or p != Mat.identity(a.rows).scale(mu):
            raise DescentError("cocycle wraparound is not a nonzero scalar")
        if canonicalize(mu) != ONE:
            found = norm_search(cyclo_inverse(mu), tau, n_step,
                                fixed_by=fixers)
            if found["status"] != "witness":
                obstruction = ObstructionClass(conductor, tau, n_step,
                                               canonicalize(mu))
                raise DescentError(
                    f"descent obstructed at exponent {tau.exponent}: "
                    f"wraparound scalar {canonicalize(mu)!r} has no norm "
                    "preimage within the search bound", obstruction)
            a = a.scale(found["witness"])
        x = _solve_cyclic_step(a, tau, n_step, fixed_by=fixers)
        xinv = inverse(x)
        images = {name: x @ img @ xinv for name, img in images.items()}
        table = [x @ t @ xinv for t in table]
        have = closure(have | {tau.exponent})
        for e in sorted(have):
            g = GaloisAuto(conductor, e)
            if g not in itilde:
                raise DescentError(f"assignment does not cover exponent {e}")
            autg = itilde[g]
            for name, gen in ctx.gen_elems.items():
                want = table[ctx.eidx[_elem_key(autg.apply(gen))]]
                if galois_map(g, images[name]) != want:
                    raise DescentError("stage verification failed at "
                                       f"exponent {e}")
    return RepModel(group=model.group, basis=list(model.basis),
                    images=images, conductor=_field_of(images),
                    kind=model.kind, shape=model.shape,
                    omega_power=model.omega_power)


# ---------------------------------------------------------------------------
# the dihedral family

def dihedral_split(e: int) -> dict:
    """Whether the rank-2 family with both parameters e admits models over
    the real subfield together with an injective Galois-to-automorphism
    assignment: yes exactly when 4 divides e or some prime dividing e is
    congruent to 3 mod 4."""
    if e < 3:
        raise DescentError("the dihedral family starts at e = 3")
    prime = None
    m = e
    while m % 2 == 0:
        m //= 2
    p = 3
    while p * p <= m:
        if m % p == 0:
            if p % 4 == 3:
                prime = p
                break
            while m % p == 0:
                m //= p
        p += 2
    if prime is None and m > 2 and m % 4 == 3:
        prime = m
    return {"e": e, "four_divides": e % 4 == 0, "odd_prime": prime,
            "split": e % 4 == 0 or prime is not None}


def _imaginary_unit_for(e: int) -> Cyclotomic:
    """A purely imaginary element of the e-th cyclotomic field whose square
    is a negative rational: the e/4-th power of the root when 4 divides e,
    otherwise a quadratic Gauss sum over a prime factor congruent to
    3 mod 4."""
    crit = dihedral_split(e)
    if crit["four_divides"]:
        return make_root(e, e // 4)
    p = crit["odd_prime"]
    if p is None:
        raise DescentError(f"no imaginary square root available for e={e}")
    total = ZERO
    for k in range(1, p):
        sign = 1 if pow(k, (p - 1) // 2, p) == 1 else -1
        total = total + make_root(e, k * (e // p)) * sign
    return total


def dihedral_equivariant(e: int) -> dict:
    """Models of the 2-dimensional irreducibles of the order-2e reflection
    group of rank 2, with the Galois action realized by automorphisms.

    The group automorphism assigned to the unit i sends the rotation
    generator product to its i-th power while fixing the plain reflection,
    which is the exponent-scaling automorphism of the group.  At the full
    cyclotomic field the standard models are already equivariant.  When the
    split criterion holds, conjugating by an explicit matrix M built from a
    purely imaginary square root moves every model into the real subfield
    while keeping an injective assignment on the residual Galois group;
    M^-1 conj(M) equals the reflection's image exactly, which is the
    order-2 averaging identity in closed form.  When the criterion fails
    the full-field models and assignment are returned with a note."""
    crit = dihedral_split(e)
    spec = GroupSpec(1, e, 2)
    ctx = aut_context(spec)
    swap = Mat.from_rows([[0, 1], [1, 0]])
    raw = {}
    for k in range(1, (e + 1) // 2):
        raw[k] = {"sp": Mat.from_rows([[ZERO, make_root(e, k)],
                                       [make_root(e, e - k), ZERO]]),
                  "s1": swap}
    units = galois_units(e)
    etas = {g: eta_automorphism(spec, g.exponent) for g in units}

    def check_tables(models, assignment):
        for k, imgs in models.items():
            table = _model_table(ctx, imgs)
            for g, a in assignment.items():
                for name, gen in ctx.gen_elems.items():
                    want = table[ctx.eidx[_elem_key(a.apply(gen))]]
                    if galois_map(g, imgs[name]) != want:
                        raise DescentError("model is not equivariant at "
                                           f"k={k}, exponent {g.exponent}")

    report = {"e": e, "group": spec.name(), "criterion": crit,
              "split": crit["split"]}
    if not crit["split"]:
        check_tables(raw, etas)
        report["models"] = [
            {"k": k, "conductor": _field_of(imgs),
             "images": {name: mat_to_obj(m) for name, m in imgs.items()}}
            for k, imgs in sorted(raw.items())]
        report["iota"] = {str(g.exponent): {"eta_exponent": g.exponent,
                                            "inner_conjugator": []}
                          for g in units}
        report["note"] = ("no real-subfield model: the assignment exists "
                          "only at the full cyclotomic field")
        return report

    ia = _imaginary_unit_for(e)
    sq = canonicalize(ia * ia)
    if sq.conductor != 1 or sq.as_rational() >= 0:
        raise DescentError("internal: imaginary element has wrong square")
    one = ONE
    m = Mat.from_rows([[one + ia, -one + ia],
                       [-one + ia, one + ia]]).scale(cyclo_inverse(ia * 4))
    minv = inverse(m)
    conj = GaloisAuto(e, e - 1)
    if minv @ galois_map(conj, m) != swap:
        raise DescentError("internal: closed-form conjugator fails its "
                           "defining identity")
    models = {k: {name: m @ img @ minv for name, img in imgs.items()}
              for k, imgs in raw.items()}
    for k, imgs in models.items():
        for name, img in imgs.items():
            if galois_map(conj, img) != img:
                raise DescentError("model entries not fixed by conjugation "
                                   f"at k={k}")
    s1 = ctx.gen_elems["s1"]
    s1inv = _generic_inv(s1)
    assignment = {}
    for g in units:
        if apply_galois(g, ia) == ia:
            assignment[g] = etas[g]
        else:
            imgs = {name: _generic_mul(_generic_mul(s1inv,
                                                    etas[g].apply(gen)), s1)
                    for name, gen in ctx.gen_elems.items()}
            assignment[g] = automorphism_from_images(ctx, imgs)
    for g1 in units:
        for g2 in units:
            comp = g1.compose(g2)
            if assignment[comp].perm != \
                    assignment[g1].compose(assignment[g2]).perm:
                raise DescentError("assignment is not a homomorphism")
    if not assignment[conj].is_identity():
        raise DescentError("conjugation should act trivially on a "
                           "real-subfield model")
    distinct = {assignment[g].perm for g in units}
    if len(distinct) != max(len(units) // 2, 1):
        raise DescentError("assignment is not injective on the residual "
                           "Galois group")
    check_tables(models, assignment)
    report["models"] = [
        {"k": k, "conductor": _field_of(imgs),
         "images": {name: mat_to_obj(mm) for name, mm in imgs.items()}}
        for k, imgs in sorted(models.items())]
    report["iota"] = {
        str(g.exponent): {
            "eta_exponent": g.exponent,
            "inner_conjugator": [] if apply_galois(g, ia) == ia else ["s1"]}
        for g in units}
    report["note"] = ("entries fixed by conjugation; assignment injective "
                      "on the residual Galois group")
    return report


# ---------------------------------------------------------------------------
# serialization

def cocycle_to_obj(c: ProjectiveCocycle) -> dict:
    order = sorted(c.maps, key=lambda g: g.exponent)
    return {"conductor": c.conductor,
            "acting": [g.exponent for g in order],
            "maps": {str(g.exponent): mat_to_obj(c.maps[g]) for g in order}}


def obstruction_to_obj(o: ObstructionClass) -> dict:
    return {"conductor": o.conductor,
            "generator": o.generator.exponent,
            "order": o.order,
            "scalar": cyclo_to_obj(o.scalar),
            "witness": None if o.witness is None else cyclo_to_obj(o.witness),
            "status": o.status}
