"""Exact matrix algebra over Z and Z/n.

Everything downstream (presentations, morphisms, resolutions, functor
evaluation) reduces to four primitives implemented here:

* ``snf``             -- Smith normal form with invertible transforms,
* ``kernel_basis``    -- generators of { x : A.x = 0 } over the base ring,
* ``solve_matrix``    -- particular solutions of A.X = B / image membership,
* ``invariant_divisors`` -- classification data of a cokernel.

Arithmetic is exact throughout: entries are Python integers, never floats.
Z/n is handled by lifting to Z.  For kernels and solving, the lift appends
n*I relation columns so multiples of n are available; for the normal form
itself, the integer SNF of the lifted matrix is normalized entrywise to
gcd(d, n) by a unit row scaling (every element of Z/n is an associate of
gcd(d, n), and the chain d_1 | d_2 | ... survives the gcd).

Matrices are immutable; rows and columns may be zero (a 0 x k or k x 0
matrix is a legal zero map).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import DimensionMismatch


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class RingDesc:
    """Base ring: Z when ``modulus`` is None, Z/modulus otherwise."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError("modulus must be at least 2")

    @property
    def kind(self) -> str:
        return "Z" if self.modulus is None else "ZmodN"

    @property
    def hereditary(self) -> bool:
        return self.modulus is None

    @property
    def quasi_frobenius(self) -> bool:
        return self.modulus is not None

    def reduce(self, x: int) -> int:
        return x if self.modulus is None else x % self.modulus

    def is_unit(self, x: int) -> bool:
        if self.modulus is None:
            return x in (1, -1)
        return gcd(x % self.modulus, self.modulus) == 1

    def __str__(self):
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


ZZ = RingDesc(None)


def Zmod(n: int) -> RingDesc:
    return RingDesc(n)


# ---------------------------------------------------------------------------
# immutable exact matrices


@dataclass(frozen=True)
class IntMat:
    """Dense integer matrix, row-major, immutable and hashable."""

    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionMismatch("matrix data does not match declared shape")

    @staticmethod
    def from_rows(rows) -> "IntMat":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        m = len(data)
        n = len(data[0]) if m else 0
        if any(len(r) != n for r in data):
            raise DimensionMismatch("ragged rows")
        return IntMat(m, n, data)

    @staticmethod
    def zeros(m: int, n: int) -> "IntMat":
        return IntMat(m, n, tuple((0,) * n for _ in range(m)))

    @staticmethod
    def identity(n: int) -> "IntMat":
        return IntMat(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @staticmethod
    def diag(entries, rows: int | None = None, cols: int | None = None) -> "IntMat":
        entries = list(entries)
        m = rows if rows is not None else len(entries)
        n = cols if cols is not None else len(entries)
        return IntMat(m, n, tuple(
            tuple(entries[i] if i == j and i < len(entries) else 0 for j in range(n))
            for i in range(m)))

    @staticmethod
    def column(entries) -> "IntMat":
        entries = tuple(int(x) for x in entries)
        return IntMat(len(entries), 1, tuple((x,) for x in entries))

    def entry(self, i: int, j: int) -> int:
        return self.data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def col(self, j: int) -> "IntMat":
        return IntMat(self.rows, 1, tuple((r[j],) for r in self.data))

    def col_list(self, j: int) -> list[int]:
        return [r[j] for r in self.data]

    def __add__(self, other: "IntMat") -> "IntMat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("add: shape mismatch")
        return IntMat(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.data, other.data)))

    def __sub__(self, other: "IntMat") -> "IntMat":
        return self + other.scale(-1)

    def scale(self, c: int) -> "IntMat":
        return IntMat(self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.data))

    def __matmul__(self, other: "IntMat") -> "IntMat":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"mul: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ot = other.transpose().data
        return IntMat(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.data))

    def transpose(self) -> "IntMat":
        return IntMat(self.cols, self.rows, tuple(
            tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def hstack(self, other: "IntMat") -> "IntMat":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack: row mismatch")
        return IntMat(self.rows, self.cols + other.cols, tuple(
            ra + rb for ra, rb in zip(self.data, other.data)))

    def vstack(self, other: "IntMat") -> "IntMat":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack: col mismatch")
        return IntMat(self.rows + other.rows, self.cols, self.data + other.data)

    @staticmethod
    def block_diag(blocks) -> "IntMat":
        blocks = list(blocks)
        m = sum(b.rows for b in blocks)
        n = sum(b.cols for b in blocks)
        out = [[0] * n for _ in range(m)]
        i0 = j0 = 0
        for b in blocks:
            for i in range(b.rows):
                out[i0 + i][j0:j0 + b.cols] = list(b.data[i])
            i0 += b.rows
            j0 += b.cols
        return IntMat.from_rows(out) if m else IntMat(0, n, ())

    def kron(self, other: "IntMat") -> "IntMat":
        m, n = self.rows * other.rows, self.cols * other.cols
        out = [[0] * n for _ in range(m)]
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.data[i][j]
                if a == 0:
                    continue
                for k in range(other.rows):
                    for l in range(other.cols):
                        out[i * other.rows + k][j * other.cols + l] = a * other.data[k][l]
        return IntMat(m, n, tuple(tuple(r) for r in out))

    def take_rows(self, idx) -> "IntMat":
        idx = tuple(idx)
        return IntMat(len(idx), self.cols, tuple(self.data[i] for i in idx))

    def take_cols(self, idx) -> "IntMat":
        idx = tuple(idx)
        return IntMat(self.rows, len(idx), tuple(
            tuple(r[j] for j in idx) for r in self.data))

    def mod(self, ring: RingDesc) -> "IntMat":
        if ring.modulus is None:
            return self
        n = ring.modulus
        return IntMat(self.rows, self.cols, tuple(tuple(x % n for x in r) for r in self.data))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def is_zero_mod(self, ring: RingDesc) -> bool:
        return self.mod(ring).is_zero() if ring.modulus else self.is_zero()

    def __str__(self):
        return "[" + "; ".join(" ".join(str(x) for x in r) for r in self.data) + "]"


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    """U @ A @ V == S exactly (mod n over Z/n); U, V invertible over the ring."""

    U: IntMat
    Uinv: IntMat
    S: IntMat
    V: IntMat
    Vinv: IntMat

    def diagonal(self) -> list[int]:
        k = min(self.S.rows, self.S.cols)
        return [self.S.data[i][i] for i in range(k)]


def _snf_integer(a: IntMat):
    """Integer SNF core; returns mutable U, Uinv, S, V, Vinv lists."""
    m, n = a.rows, a.cols
    S = [list(r) for r in a.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_add(i, j, c):  # row_i += c * row_j
        S[i] = [x + c * y for x, y in zip(S[i], S[j])]
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]
        for r in range(m):
            Ui[r][j] -= c * Ui[r][i]

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]
        for r in range(m):
            Ui[r][i], Ui[r][j] = Ui[r][j], Ui[r][i]

    def row_neg(i):
        S[i] = [-x for x in S[i]]
        U[i] = [-x for x in U[i]]
        for r in range(m):
            Ui[r][i] = -Ui[r][i]

    def col_add(j, i, c):  # col_j += c * col_i
        for r in range(m):
            S[r][j] += c * S[r][i]
        for r in range(n):
            V[r][j] += c * V[r][i]
        Vi[i] = [x - c * y for x, y in zip(Vi[i], Vi[j])]

    def col_swap(i, j):
        for r in range(m):
            S[r][i], S[r][j] = S[r][j], S[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    t = 0
    while t < min(m, n):
        # minimal-absolute-value pivot bounds entry growth in practice
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                v = S[i][j]
                if v and (piv is None or abs(v) < abs(S[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])
        dirty = False
        for i in range(t + 1, m):
            if S[i][t]:
                q = S[i][t] // S[t][t]
                row_add(i, t, -q)
                if S[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if S[t][j]:
                q = S[t][j] // S[t][t]
                col_add(j, t, -q)
                if S[t][j]:
                    dirty = True
        if dirty:
            continue
        if S[t][t] < 0:
            row_neg(t)
        d = S[t][t]
        stuck = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % d:
                    stuck = i
                    break
            if stuck is not None:
                break
        if stuck is not None:
            row_add(t, stuck, 1)
            continue
        t += 1
    return U, Ui, S, V, Vi


def _associate_unit(d: int, n: int) -> tuple[int, int]:
    """Return (g, u) with g = gcd(d, n), u a unit mod n, and d = u*g mod n."""
    d %= n
    g = gcd(d, n)  # gcd(0, n) == n
    base, step = d // g, n // g
    u = next((base + k * step) % n for k in range(g + 1)
             if gcd((base + k * step) % n, n) == 1)
    assert (u * g - d) % n == 0
    return g, u


def snf(a: IntMat, ring: RingDesc) -> SNFResult:
    """Smith normal form over the base ring.

    Over Z/n the integer normal form of the canonical lift is normalized
    entrywise to gcd(d, n); the divisibility chain is preserved and zeros
    (entries gcd-equal to n) mark free Z/n summands.
    """
    m, k = a.rows, a.cols

    def mk(rows, nr, nc):
        return IntMat.from_rows(rows) if nr else IntMat(0, nc, ())

    if ring.modulus is None:
        U, Ui, S, V, Vi = _snf_integer(a)
        return SNFResult(mk(U, m, m), mk(Ui, m, m), mk(S, m, k), mk(V, k, k), mk(Vi, k, k))
    n = ring.modulus
    U, Ui, S, V, Vi = _snf_integer(a.mod(ring))
    for t in range(min(m, k)):
        g, u = _associate_unit(S[t][t], n)
        uinv = pow(u, -1, n)
        U[t] = [x * uinv % n for x in U[t]]
        for r in range(m):
            Ui[r][t] = Ui[r][t] * u % n
        S[t][t] = g % n
    red = lambda rows, nr, nc: mk([[x % n for x in r] for r in rows], nr, nc)
    return SNFResult(red(U, m, m), red(Ui, m, m), red(S, m, k), red(V, k, k), red(Vi, k, k))


@lru_cache(maxsize=4096)
def _snf_cached(a: IntMat, ring: RingDesc) -> SNFResult:
    return snf(a, ring)


# ---------------------------------------------------------------------------
# kernels, solving, invariants


def _integer_kernel(a: IntMat) -> IntMat:
    res = _snf_cached(a, ZZ)
    diag = res.diagonal()
    free = [j for j in range(a.cols) if j >= len(diag) or diag[j] == 0]
    return res.V.take_cols(free)


def kernel_basis(a: IntMat, ring: RingDesc) -> IntMat:
    """Columns generating { x : A.x = 0 } over the ring.

    Over Z the columns are a lattice basis; over Z/n they generate the kernel
    submodule (computed from the integer kernel of [A | n*I]).
    """
    if ring.modulus is None:
        return _integer_kernel(a)
    if a.cols == 0:
        return IntMat(0, 0, ())
    n = ring.modulus
    aug = a.mod(ring).hstack(IntMat.diag([n] * a.rows, rows=a.rows, cols=a.rows))
    k = _integer_kernel(aug)
    proj = IntMat(a.cols, k.cols, k.data[:a.cols]).mod(ring)
    keep = [j for j in range(proj.cols) if any(proj.data[i][j] for i in range(proj.rows))]
    return proj.take_cols(keep)


def _solve_integer(a: IntMat, b: IntMat) -> IntMat | None:
    res = _snf_cached(a, ZZ)
    c = res.U @ b
    diag = res.diagonal()
    y = [[0] * b.cols for _ in range(a.cols)]
    for i in range(a.rows):
        d = diag[i] if i < len(diag) else 0
        for j in range(b.cols):
            if d:
                q, r = divmod(c.data[i][j], d)
                if r:
                    return None
                y[i][j] = q
            elif c.data[i][j]:
                return None
    ymat = IntMat.from_rows(y) if a.cols else IntMat(0, b.cols, ())
    return res.V @ ymat


def solve_matrix(a: IntMat, b: IntMat, ring: RingDesc) -> IntMat | None:
    """A particular X with A.X = B over the ring, or None if unsolvable.

    Doubles as the image-membership test: B's columns lie in the column span
    of A over the ring iff the system is solvable.
    """
    if a.rows != b.rows:
        raise DimensionMismatch(f"solve: {a.rows} rows vs rhs {b.rows}")
    if ring.modulus is None:
        return _solve_integer(a, b)
    n = ring.modulus
    aug = a.mod(ring).hstack(IntMat.diag([n] * a.rows, rows=a.rows, cols=a.rows))
    x = _solve_integer(aug, b.mod(ring))
    if x is None:
        return None
    return IntMat(a.cols, b.cols, x.data[:a.cols]).mod(ring) if a.cols else IntMat(0, b.cols, ())


def solve(a: IntMat, b, ring: RingDesc) -> IntMat | None:
    """Single-column convenience wrapper around :func:`solve_matrix`."""
    col = b if isinstance(b, IntMat) else IntMat.column(b)
    return solve_matrix(a, col, ring)


def in_span(a: IntMat, b: IntMat, ring: RingDesc) -> bool:
    return solve_matrix(a, b, ring) is not None


def invariant_divisors(a: IntMat, ring: RingDesc) -> tuple[tuple[int, ...], int]:
    """Nonunit, nonzero invariant factors of coker(A), plus its free rank.

    Over Z/n "free" counts Z/n-summands (diagonal entries gcd-equal to n).
    """
    res = _snf_cached(a, ring)
    diag = res.diagonal()
    divisors = tuple(d for d in diag if d not in (0, 1))
    free = a.rows - sum(1 for d in diag if d != 0)
    return divisors, free


# ---------------------------------------------------------------------------
# Hermite reduction (canonical element representatives)


def hermite_column_form(a: IntMat) -> IntMat:
    """Column-echelon Hermite form of the integer column span of A."""
    m, n = a.rows, a.cols
    H = [list(r) for r in a.data]

    def swap(i, j):
        for r in range(m):
            H[r][i], H[r][j] = H[r][j], H[r][i]

    col = 0
    for row in range(m):
        if col >= n:
            break
        piv = next((j for j in range(col, n) if H[row][j]), None)
        if piv is None:
            continue
        swap(col, piv)
        for j in range(col + 1, n):
            while H[row][j]:
                q = H[row][j] // H[row][col]
                for r in range(m):
                    H[r][j] -= q * H[r][col]
                if H[row][j]:
                    swap(col, j)
        if H[row][col] < 0:
            for r in range(m):
                H[r][col] = -H[r][col]
        col += 1
    return IntMat.from_rows([row[:col] for row in H]) if m else IntMat(0, col, ())


def reduce_mod_columns(v: IntMat, lattice: IntMat, ring: RingDesc) -> IntMat:
    """Canonical representative of a column vector modulo a column span."""
    if ring.modulus is not None:
        n = ring.modulus
        lattice = lattice.mod(ring).hstack(IntMat.diag([n] * lattice.rows,
                                                       rows=lattice.rows, cols=lattice.rows))
        v = v.mod(ring)
    H = hermite_column_form(lattice)
    out = [r[0] for r in v.data]
    col = 0
    for row in range(len(out)):
        if col >= H.cols:
            break
        if H.data[row][col] == 0:
            continue
        q = out[row] // H.data[row][col]
        if q:
            for r in range(len(out)):
                out[r] -= q * H.data[r][col]
        col += 1
    vec = IntMat.column(out)
    return vec.mod(ring)
