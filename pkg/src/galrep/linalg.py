"""Dense exact linear algebra over cyclotomic numbers.

Matrices are small (representation dimension times group order scale), so
everything here is straightforward dense arithmetic; exactness is the point,
not asymptotics.  Pivoting always takes the first nonzero entry in column
order, which keeps every run byte-reproducible.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import (
    Cyclotomic,
    CycloError,
    GaloisAuto,
    apply_galois,
    canonicalize,
    from_obj as cyclo_from_obj,
    inverse as cyclo_inverse,
    to_obj as cyclo_to_obj,
    make_root,
)


class LinalgError(ValueError):
    pass


class SingularMatrixError(LinalgError):
    """Inversion of a singular matrix; carries the computed rank."""

    def __init__(self, rank: int):
        super().__init__(f"matrix is singular (rank {rank})")
        self.rank = rank


ZERO = Cyclotomic.from_rational(0)
ONE = Cyclotomic.from_rational(1)


def _as_entry(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    return Cyclotomic.from_rational(Fraction(x))


class Mat:
    """Immutable dense matrix with Cyclotomic entries, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(_as_entry(e) for e in entries)
        if len(entries) != rows * cols:
            raise LinalgError(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    @staticmethod
    def from_rows(rows) -> "Mat":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise LinalgError("ragged rows")
        return Mat(n, m, [e for r in rows for e in r])

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "Mat":
        return Mat(rows, cols, [ZERO] * (rows * cols))

    def __getitem__(self, ij) -> Cyclotomic:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list[list[Cyclotomic]]:
        return [list(self.row(i)) for i in range(self.rows)]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinalgError("dimension mismatch in add")
        return Mat(self.rows, self.cols,
                   [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinalgError("dimension mismatch in sub")
        return Mat(self.rows, self.cols,
                   [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, [-a for a in self.entries])

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise LinalgError(
                f"dimension mismatch in mul: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        n, k, m = self.rows, self.cols, other.cols
        out = []
        for i in range(n):
            ri = self.row(i)
            for j in range(m):
                acc = ZERO
                for t in range(k):
                    a = ri[t]
                    if a:
                        b = other.entries[t * m + j]
                        if b:
                            acc = acc + a * b
                out.append(acc)
        return Mat(n, m, out)

    def scale(self, c) -> "Mat":
        c = _as_entry(c)
        return Mat(self.rows, self.cols, [c * e for e in self.entries])

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and all(a == b for a, b in zip(self.entries, other.entries)))

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows,
                   [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(self[i, j] == (1 if i == j else 0)
                   for i in range(self.rows) for j in range(self.cols))

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __repr__(self):
        body = "; ".join(
            ", ".join(repr(e) for e in self.row(i)) for i in range(self.rows))
        return f"Mat({self.rows}x{self.cols}: {body})"


def matrix_arith(a: Mat, b: Mat, op: str) -> Mat:
    if op == "mul":
        return a @ b
    if op == "add":
        return a + b
    raise LinalgError(f"unknown matrix operation {op!r}")


def trace(a: Mat) -> Cyclotomic:
    if a.rows != a.cols:
        raise LinalgError("trace of a non-square matrix")
    t = ZERO
    for i in range(a.rows):
        t = t + a[i, i]
    return t


def det(a: Mat) -> Cyclotomic:
    """Determinant by fraction-free (Bareiss) elimination with exact division."""
    if a.rows != a.cols:
        raise LinalgError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return ONE
    m = [list(a.row(i)) for i in range(n)]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if piv is None:
                return ZERO
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev
            m[i][k] = ZERO
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def rank(a: Mat) -> int:
    m = [list(a.row(i)) for i in range(a.rows)]
    r = 0
    for c in range(a.cols):
        piv = next((i for i in range(r, a.rows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = cyclo_inverse(m[r][c])
        m[r] = [inv * v for v in m[r]]
        for i in range(a.rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == a.rows:
            break
    return r


def inverse(a: Mat) -> Mat:
    if a.rows != a.cols:
        raise LinalgError("inverse of a non-square matrix")
    n = a.rows
    aug = [list(a.row(i)) + [ONE if i == j else ZERO for j in range(n)]
           for i in range(n)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if not aug[i][c].is_zero()), None)
        if piv is None:
            return _raise_singular(a)
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = cyclo_inverse(aug[r][c])
        aug[r] = [inv * v for v in aug[r]]
        for i in range(n):
            if i != r and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        r += 1
    return Mat(n, n, [aug[i][n + j] for i in range(n) for j in range(n)])


def _raise_singular(a: Mat):
    raise SingularMatrixError(rank(a))


def kronecker(a: Mat, b: Mat) -> Mat:
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            for j in range(a.cols):
                aij = a[i, j]
                if aij.is_zero():
                    out.extend([ZERO] * b.cols)
                else:
                    out.extend(aij * b[k, l] for l in range(b.cols))
    return Mat(a.rows * b.rows, a.cols * b.cols, out)


def galois_map(s: GaloisAuto, a: Mat) -> Mat:
    return Mat(a.rows, a.cols, [apply_galois(s, e) for e in a.entries])


def mat_pow(a: Mat, k: int) -> Mat:
    if a.rows != a.cols:
        raise LinalgError("power of a non-square matrix")
    if k < 0:
        return mat_pow(inverse(a), -k)
    result = Mat.identity(a.rows)
    base = a
    while k:
        if k & 1:
            result = result @ base
        base = base @ base
        k >>= 1
    return result


def unity_projector(S: Mat, omega: Cyclotomic, m: int) -> Mat:
    """(1/m) * sum_i omega^(-i) S^i, the projector onto the omega-eigenspace
    of a finite-order operator S with S^m = I."""
    if S.rows != S.cols:
        raise LinalgError("projector needs a square matrix")
    omega = _as_entry(omega)
    if not (omega ** m == 1):
        raise LinalgError(f"omega^{m} != 1")
    acc = Mat.zero(S.rows, S.rows)
    power = Mat.identity(S.rows)
    omega_inv = cyclo_inverse(omega)
    w = ONE
    for _ in range(m):
        acc = acc + power.scale(w)
        power = power @ S
        w = w * omega_inv
    if not power.is_identity():
        raise LinalgError(f"S^{m} != I, cannot build a projector")
    return acc.scale(Fraction(1, m))


def all_unity_projectors(S: Mat, m: int) -> dict[int, Mat]:
    """Projectors p_omega for omega = zeta_m^k, keyed by k."""
    return {k: unity_projector(S, make_root(m, k) if m > 1 else ONE, m)
            for k in range(m)}


# ---------------------------------------------------------------------------
# serialization

def to_obj(a: Mat) -> dict:
    return {"rows": a.rows, "cols": a.cols,
            "entries": [cyclo_to_obj(e) for e in a.entries]}


def from_obj(obj) -> Mat:
    return Mat(int(obj["rows"]), int(obj["cols"]),
               [cyclo_from_obj(e) for e in obj["entries"]])
