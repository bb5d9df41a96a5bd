"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored as its coordinate vector on the power basis
1, z, z^2, ..., z^(phi(n)-1) of Q(zeta_n), where z = exp(2*pi*i/n) and
reduction happens modulo the n-th cyclotomic polynomial Phi_n.  Coordinates
are exact rationals (stdlib Fraction).

Conductors are never silently shrunk: an element created at conductor 12
stays at conductor 12 even if its value happens to lie in Q(zeta_3) or Q.
Mixed-conductor arithmetic coerces both operands to the lcm of their
conductors.  `canonicalize` finds the minimal conductor explicitly, and the
JSON serializer applies it so serialized output is unique per value.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import gcd


class CycloError(ValueError):
    """Raised for ill-posed cyclotomic operations (division by zero,
    incompatible conductors, non-unit Galois exponents)."""


# ---------------------------------------------------------------------------
# integer / polynomial helpers

def euler_phi(n: int) -> int:
    if n < 1:
        raise CycloError(f"conductor must be >= 1, got {n}")
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            pk = 1
            while m % p == 0:
                m //= p
                pk *= p
            result *= pk - pk // p
        p += 1
    if m > 1:
        result *= m - 1
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # Exact division of integer polynomials, den monic.  Lists are little-endian.
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c:
            q[i] = c
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, little-endian, as exact integers."""
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in divisors(n):
        if d < n:
            num, rem = _poly_divmod_int(num, list(cyclotomic_poly(d)))
            if any(rem[:1]) and rem != [0]:
                raise AssertionError(f"Phi_{d} does not divide x^{n}-1")
    return tuple(num)


def _reduce_mod_phi(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        top = c[i]
        if top:
            for j in range(deg + 1):
                c[i - deg + j] -= top * phi[j]
    c = c[:deg]
    c.extend([_ZERO] * (deg - len(c)))
    return tuple(c)


_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# the element type

class Cyclotomic:
    """Immutable element of Q(zeta_conductor)."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != euler_phi(conductor):
            raise CycloError(
                f"need phi({conductor})={euler_phi(conductor)} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(q) -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(q),))

    # -- basic predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return canonicalize(self).conductor == 1

    def as_rational(self) -> Fraction:
        c = canonicalize(self)
        if c.conductor != 1:
            raise CycloError(f"not a rational number: {self!r}")
        return c.coeffs[0]

    # -- arithmetic ---------------------------------------------------------

    def _binop(self, other, f):
        a, b = _common(self, _as_cyclo(other))
        return f(a, b)

    def __add__(self, other):
        return self._binop(other, _add)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_cyclo(other))

    def __rsub__(self, other):
        return _as_cyclo(other) - self

    def __mul__(self, other):
        return self._binop(other, _mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * inverse(_as_cyclo(other))

    def __rtruediv__(self, other):
        return _as_cyclo(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return inverse(self) ** (-k)
        result = Cyclotomic.from_rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = _common(self, _as_cyclo(other))
        return a.coeffs == b.coeffs

    def __hash__(self):
        h = self._hash
        if h is None:
            c = canonicalize(self)
            h = hash((c.conductor, c.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        if all(c == 0 for c in self.coeffs[1:]):
            return f"Cyc({self.coeffs[0]})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z{self.conductor}^{i}" if i else f"{c}")
        return "Cyc(" + " + ".join(terms) + ")"


def _as_cyclo(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.from_rational(x)
    raise CycloError(f"cannot interpret {x!r} as a cyclotomic number")


def _common(a: Cyclotomic, b: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic]:
    if a.conductor == b.conductor:
        return a, b
    m = a.conductor * b.conductor // gcd(a.conductor, b.conductor)
    return coerce(a, m), coerce(b, m)


def _add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return Cyclotomic(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def _mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    n = a.conductor
    out = [_ZERO] * (2 * len(a.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                if y:
                    out[i + j] += x * y
    return Cyclotomic(n, _reduce_mod_phi(out, n))


def make_root(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n^k as an element of conductor n (not canonicalized)."""
    k %= n
    coeffs = [_ZERO] * (k + 1)
    coeffs[k] = _ONE
    return Cyclotomic(n, _reduce_mod_phi(coeffs, n))


def arith(a, b, op: str) -> Cyclotomic:
    """Named 4-function dispatcher mirroring the serialized operation names."""
    a, b = _as_cyclo(a), _as_cyclo(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise CycloError(f"unknown operation {op!r}")


def inverse(x: Cyclotomic) -> Cyclotomic:
    if x.is_zero():
        raise CycloError("division by zero in a cyclotomic field")
    n = x.conductor
    if n == 1:
        return Cyclotomic(1, (1 / x.coeffs[0],))
    # extended gcd of x against Phi_n over Q[x]; Phi_n is irreducible so the
    # gcd is a nonzero constant.
    phi = [Fraction(c) for c in cyclotomic_poly(n)]
    r0, r1 = phi, list(x.coeffs)
    while len(r1) > 1 and r1[-1] == 0:
        r1.pop()
    s0, s1 = [_ZERO], [_ONE]  # coefficients of x in the Bezout combination
    while True:
        if len(r1) == 1:
            g = r1[0]
            inv = [c / g for c in s1]
            return Cyclotomic(n, _reduce_mod_phi(inv, n))
        q, r = _poly_divmod_frac(r0, r1)
        s_new = _poly_sub(s0, _poly_mul(q, s1))
        r0, r1, s0, s1 = r1, r, s1, s_new


def _poly_divmod_frac(num, den):
    num = list(num)
    lead = den[-1]
    q = [_ZERO] * max(len(num) - len(den) + 1, 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] / lead
        if c:
            q[i] = c
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


def _poly_mul(a, b):
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    out = list(a) + [_ZERO] * (len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return out


# ---------------------------------------------------------------------------
# conductor moves

def coerce(x: Cyclotomic, m: int) -> Cyclotomic:
    """Re-express x at conductor m; m must be a multiple of x.conductor."""
    n = x.conductor
    if m == n:
        return x
    if m % n != 0:
        raise CycloError(f"cannot coerce conductor {n} into {m}")
    step = m // n
    out = [_ZERO] * ((len(x.coeffs) - 1) * step + 1 if x.coeffs else 1)
    for i, c in enumerate(x.coeffs):
        if c:
            out[i * step] += c
    return Cyclotomic(m, _reduce_mod_phi(out, m))


@lru_cache(maxsize=None)
def _subfield_solver(n: int, m: int):
    """Row-index subset I and inverse of B[I] for the coercion matrix B
    mapping conductor-m coordinates into conductor-n coordinates."""
    basis = []
    for j in range(euler_phi(m)):
        coeffs = [_ZERO] * euler_phi(m)
        coeffs[j] = _ONE
        basis.append(coerce(Cyclotomic(m, coeffs), n).coeffs)
    # B has phi(n) rows, phi(m) columns; columns are the embedded basis vectors.
    rows, cols_n = euler_phi(n), euler_phi(m)
    # Gaussian elimination to find phi(m) independent rows.
    work = [[basis[j][i] for j in range(cols_n)] for i in range(rows)]
    chosen = []
    mat = []
    for i in range(rows):
        candidate = mat + [work[i]]
        if _rank_frac([row[:] for row in candidate]) == len(candidate):
            chosen.append(i)
            mat.append(work[i])
            if len(chosen) == cols_n:
                break
    inv = _invert_frac([row[:] for row in mat])
    return tuple(chosen), tuple(tuple(r) for r in inv), tuple(tuple(r) for r in
                                                              ([[basis[j][i] for j in range(cols_n)] for i in range(rows)]))


def _rank_frac(m):
    rank, rows, cols = 0, len(m), len(m[0]) if m else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def _invert_frac(m):
    size = len(m)
    aug = [row + [_ONE if i == j else _ZERO for j in range(size)] for i, row in enumerate(m)]
    for c in range(size):
        piv = next(i for i in range(c, size) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for i in range(size):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[size:] for row in aug]


def try_lower(x: Cyclotomic, m: int) -> Cyclotomic | None:
    """Express x at conductor m (a divisor of x.conductor) or return None."""
    n = x.conductor
    if n == m:
        return x
    if n % m != 0:
        return None
    chosen, inv, full = _subfield_solver(n, m)
    v = [x.coeffs[i] for i in chosen]
    c = [sum(inv[i][j] * v[j] for j in range(len(v))) for i in range(len(v))]
    # verify on all rows, not just the chosen ones
    for i in range(euler_phi(n)):
        if sum(full[i][j] * c[j] for j in range(len(c))) != x.coeffs[i]:
            return None
    return Cyclotomic(m, tuple(c))


def canonicalize(x: Cyclotomic) -> Cyclotomic:
    """Rewrite x at its minimal conductor (unique canonical form)."""
    n = x.conductor
    for m in divisors(n):
        low = try_lower(x, m)
        if low is not None:
            return low
    return x


# ---------------------------------------------------------------------------
# Galois action

class GaloisAuto:
    """The automorphism zeta_conductor -> zeta_conductor^exponent."""

    __slots__ = ("conductor", "exponent")

    def __init__(self, conductor: int, exponent: int):
        exponent %= conductor
        if conductor == 1:
            exponent = 1
        if gcd(exponent, conductor) != 1:
            raise CycloError(
                f"exponent {exponent} is not a unit modulo {conductor}")
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, *a):
        raise AttributeError("GaloisAuto is immutable")

    def __eq__(self, other):
        return (isinstance(other, GaloisAuto)
                and self.conductor == other.conductor
                and self.exponent == other.exponent)

    def __hash__(self):
        return hash((self.conductor, self.exponent))

    def __repr__(self):
        return f"gal({self.exponent} mod {self.conductor})"

    def compose(self, other: "GaloisAuto") -> "GaloisAuto":
        if self.conductor != other.conductor:
            raise CycloError("composing Galois maps of different conductors")
        return GaloisAuto(self.conductor, self.exponent * other.exponent % self.conductor)

    def inverse(self) -> "GaloisAuto":
        return GaloisAuto(self.conductor, pow(self.exponent, -1, self.conductor))

    def power(self, k: int) -> "GaloisAuto":
        return GaloisAuto(self.conductor, pow(self.exponent, k, self.conductor))

    def order(self) -> int:
        k, e = 1, self.exponent
        while e != 1 % self.conductor:
            e = e * self.exponent % self.conductor
            k += 1
        return k

    def __call__(self, x):
        return apply_galois(self, x)


def apply_galois(s: GaloisAuto, x: Cyclotomic) -> Cyclotomic:
    """Apply zeta -> zeta^k.  Defined when x lives in a subfield of
    Q(zeta_{s.conductor}); the exponent acts through restriction."""
    x = _as_cyclo(x)
    n = x.conductor
    if s.conductor % n != 0:
        x = canonicalize(x)
        n = x.conductor
        if s.conductor % n != 0:
            raise CycloError(
                f"gal at conductor {s.conductor} cannot act on conductor {n}")
    k = s.exponent % n if n > 1 else 1
    out = [_ZERO] * n
    for i, c in enumerate(x.coeffs):
        if c:
            out[(i * k) % n] += c
    return Cyclotomic(n, _reduce_mod_phi(out, n))


def galois_units(n: int) -> list[GaloisAuto]:
    """All of Gal(Q(zeta_n)/Q) in ascending exponent order."""
    if n == 1:
        return [GaloisAuto(1, 1)]
    return [GaloisAuto(n, k) for k in range(1, n + 1) if gcd(k, n) == 1]


def conjugate(x: Cyclotomic) -> Cyclotomic:
    x = _as_cyclo(x)
    n = max(x.conductor, 1)
    return apply_galois(GaloisAuto(n, n - 1 if n > 1 else 1), x)


def norm_cyclic(x: Cyclotomic, g: GaloisAuto, order: int) -> Cyclotomic:
    """x * g(x) * g^2(x) * ... * g^(order-1)(x)."""
    result = Cyclotomic.from_rational(1)
    for i in range(order):
        result = result * apply_galois(g.power(i), x)
    return result


# ---------------------------------------------------------------------------
# serialization

def frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


def to_obj(x: Cyclotomic) -> dict:
    c = canonicalize(_as_cyclo(x))
    return {"conductor": c.conductor, "coeffs": [frac_str(v) for v in c.coeffs]}


def from_obj(obj) -> Cyclotomic:
    if isinstance(obj, (int, str)):
        return Cyclotomic.from_rational(parse_frac(obj))
    return Cyclotomic(int(obj["conductor"]), tuple(parse_frac(v) for v in obj["coeffs"]))


def to_json(x: Cyclotomic) -> str:
    return json.dumps(to_obj(x), sort_keys=True, separators=(",", ":"))
