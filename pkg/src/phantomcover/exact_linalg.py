"""Exact integer matrix algebra: Smith normal form and modular solvers.

Everything is carried out over arbitrary-precision Python ints; no floating
point is used anywhere.  The Smith normal form pivot rule is deterministic
(minimum absolute value, ties broken by lowest (row, col)) so decompositions
are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InputError


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InputError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise InputError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = len(data)
        if rows == 0:
            return cls(0, 0 if cols is None else cols, ())
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise InputError("ragged rows")
        return cls(rows, width, tuple(int(x) for row in data for x in row))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        if not columns:
            return cls(0 if rows is None else rows, 0, ())
        height = len(columns[0])
        if any(len(c) != height for c in columns):
            raise InputError("ragged columns")
        return cls(height, len(columns), tuple(int(columns[j][i]) for i in range(height) for j in range(len(columns))))

    @classmethod
    def identity(cls, k: int) -> "IntMatrix":
        return cls(k, k, tuple(1 if i == j else 0 for i in range(k) for j in range(k)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def from_diagonal(cls, diag: Sequence[int]) -> "IntMatrix":
        k = len(diag)
        return cls(k, k, tuple(diag[i] if i == j else 0 for i in range(k) for j in range(k)))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise InputError("hstack: row count mismatch")
        data = []
        for i in range(self.rows):
            data.extend(self.row(i))
            data.extend(other.row(i))
        return IntMatrix(self.rows, self.cols + other.cols, tuple(data))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InputError("matmul: dimension mismatch")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.at(k, j) for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise InputError("apply: vector length mismatch")
        return [sum(self.at(i, j) * vec[j] for j in range(self.cols)) for i in range(self.rows)]

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.at(i, i) for i in range(min(self.rows, self.cols)))


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V == D with U, V unimodular and D diagonal, d1 | d2 | ... >= 0.

    The inverses of U and V are tracked during reduction so callers get them
    for free (lattice work needs them constantly).
    """

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return self.d.diagonal()

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal() if x != 0)


def _min_abs_pivot(d: list[list[int]], t: int, m: int, n: int) -> Optional[tuple[int, int]]:
    best = None
    best_abs = None
    for i in range(t, m):
        di = d[i]
        for j in range(t, n):
            x = di[j]
            if x != 0:
                a = -x if x < 0 else x
                if best_abs is None or a < best_abs:
                    best_abs = a
                    best = (i, j)
                    if a == 1:
                        return best
    return best


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with deterministic minimum-absolute-value pivoting.

    Entries are cleared by unimodular 2x2 extended-gcd transforms, which
    reach the gcd in one step per entry and keep intermediate growth tame.
    """
    m, n = a.rows, a.cols
    d = a.to_rows()
    u = IntMatrix.identity(m).to_rows()
    uinv = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()
    vinv = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src; the inverse is a column op on uinv
        for mat, width in ((d, n), (u, m)):
            drow, srow = mat[dst], mat[src]
            for k in range(width):
                drow[k] += q * srow[k]
        for r in uinv:
            r[src] -= q * r[dst]

    def add_col(dst, src, q):
        for r in d:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]
        vrow, drow = vinv[src], vinv[dst]
        for k in range(n):
            vrow[k] -= q * drow[k]

    def row_gcd_transform(t, i, e11, e12, e21, e22):
        # rows (t, i) <- E * rows (t, i) with det(E) == 1
        for mat in (d, u):
            rt, ri = mat[t], mat[i]
            for k in range(len(rt)):
                x, y = rt[k], ri[k]
                rt[k] = e11 * x + e12 * y
                ri[k] = e21 * x + e22 * y
        # uinv <- uinv * E^-1, E^-1 = [[e22, -e12], [-e21, e11]]
        for r in uinv:
            x, y = r[t], r[i]
            r[t] = e22 * x - e21 * y
            r[i] = -e12 * x + e11 * y
    def col_gcd_transform(t, j, f11, f21, f12, f22):
        # cols (t, j) <- cols (t, j) * F, F = [[f11, f12], [f21, f22]], det 1
        for mat in (d, v):
            for r in mat:
                x, y = r[t], r[j]
                r[t] = x * f11 + y * f21
                r[j] = x * f12 + y * f22
        # vinv <- F^-1 * vinv, F^-1 = [[f22, -f12], [-f21, f11]]
        rt, rj = vinv[t], vinv[j]
        for k in range(n):
            x, y = rt[k], rj[k]
            rt[k] = f22 * x - f12 * y
            rj[k] = -f21 * x + f11 * y

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    t = 0
    limit = min(m, n)
    while t < limit:
        piv = _min_abs_pivot(d, t, m, n)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        if d[t][t] < 0:
            negate_row(t)
        while True:
            refill = False
            for i in range(t + 1, m):
                b = d[i][t]
                if b == 0:
                    continue
                p = d[t][t]
                if b % p == 0:
                    add_row(i, t, -(b // p))
                else:
                    g, s, w = _xgcd(p, b)
                    row_gcd_transform(t, i, s, w, -(b // g), p // g)
                    refill = True  # row t changed; its row entries need re-clearing
            for j in range(t + 1, n):
                b = d[t][j]
                if b == 0:
                    continue
                p = d[t][t]
                if b % p == 0:
                    add_col(j, t, -(b // p))
                else:
                    g, s, w = _xgcd(p, b)
                    col_gcd_transform(t, j, s, w, -(b // g), p // g)
                    refill = True  # column t was refilled below row t
            if refill:
                continue
            offender = None
            pivot = d[t][t]
            for i in range(t + 1, m):
                di = d[i]
                for j in range(t + 1, n):
                    if di[j] % pivot != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # pull a non-divisible entry into row t; the next pass strictly
            # divides the pivot down, so this terminates
            add_row(t, offender, 1)
        t += 1

    return SmithDecomposition(
        u=IntMatrix.from_rows(u, cols=m),
        d=IntMatrix.from_rows(d, cols=n),
        v=IntMatrix.from_rows(v, cols=n),
        u_inv=IntMatrix.from_rows(uinv, cols=m),
        v_inv=IntMatrix.from_rows(vinv, cols=n),
    )


def solve_z(a: IntMatrix, b: Sequence[int]) -> Optional[list[int]]:
    """One integer solution x of a @ x == b, or None if none exists."""
    if len(b) != a.rows:
        raise InputError("solve_z: right-hand side length mismatch")
    s = smith_normal_form(a)
    c = s.u.apply(list(b))
    diag = s.diagonal()
    w = [0] * a.cols
    for i in range(a.rows):
        di = diag[i] if i < len(diag) else 0
        if di != 0:
            q, r = divmod(c[i], di)
            if r != 0:
                return None
            w[i] = q
        elif c[i] != 0:
            return None
    return s.v.apply(w)


def integer_kernel_basis(a: IntMatrix) -> list[list[int]]:
    """Basis of the lattice {x in Z^cols : a @ x == 0}."""
    s = smith_normal_form(a)
    r = s.rank
    return [list(s.v.column(k)) for k in range(r, a.cols)]


def solve_mod(a: IntMatrix, b: Sequence[int], n: int) -> Optional[list[int]]:
    """One solution x of a @ x == b (mod n) with entries in [0, n), or None.

    Lifts to the integer system [a | n*I] @ (x; y) == b so a single exact
    algorithm serves both Z and Z/n.
    """
    if n < 2:
        raise InputError("modulus must be >= 2")
    if len(b) != a.rows:
        raise InputError("solve_mod: right-hand side length mismatch")
    lifted = a.hstack(IntMatrix.from_diagonal([n] * a.rows))
    z = solve_z(lifted, b)
    if z is None:
        return None
    return [z[j] % n for j in range(a.cols)]


def solution_space_mod(a: IntMatrix, n: int) -> list[list[int]]:
    """Generators of the solution group {x in (Z/n)^cols : a @ x == 0 (mod n)};
    each returned generator is re-verified to be annihilated by a."""
    if n < 2:
        raise InputError("modulus must be >= 2")
    lifted = a.hstack(IntMatrix.from_diagonal([n] * a.rows))
    gens = []
    seen = set()
    for vec in integer_kernel_basis(lifted):
        g = tuple(vec[j] % n for j in range(a.cols))
        if any(g) and g not in seen:
            if any(x % n for x in a.apply(list(g))):
                raise RuntimeError("kernel generator fails annihilation check")
            seen.add(g)
            gens.append(list(g))
    return gens


def determinant(a: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise InputError("determinant: matrix must be square")
    k = a.rows
    if k == 0:
        return 1
    m = a.to_rows()
    sign = 1
    prev = 1
    for t in range(k - 1):
        if m[t][t] == 0:
            swap = next((i for i in range(t + 1, k) if m[i][t] != 0), None)
            if swap is None:
                return 0
            m[t], m[swap] = m[swap], m[t]
            sign = -sign
        for i in range(t + 1, k):
            for j in range(t + 1, k):
                m[i][j] = (m[i][j] * m[t][t] - m[i][t] * m[t][j]) // prev
            m[i][t] = 0
        prev = m[t][t]
    return sign * m[k - 1][k - 1]
