"""Exact scalars over Q or F_p, and dense exact linear algebra.

Scalars are ``fractions.Fraction`` over the rationals and reduced integer
residues over a prime field.  Matrices wrap numpy arrays (``object`` dtype
holding Fractions, or ``int64`` residues) and provide reduced row echelon
form, solving, nullspaces and inverses with no rounding anywhere.

Pivoting is first-nonzero with columns scanned left to right, so echelon
bases are deterministic and reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

# int64 products stay exact while dim * (p-1)^2 < 2^63; beyond this prime
# size we keep residues in object arrays of Python ints.
_INT64_PRIME_LIMIT = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (characteristic 0) or a prime field F_p."""

    kind: str  # "Q" | "Fp"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("rationals carry no characteristic")
        elif self.kind == "Fp":
            if self.p is None or not (2 <= self.p < 2**31) or not _is_prime(self.p):
                raise ValueError(f"characteristic must be a prime in [2, 2^31): {self.p}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("Q")

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("Fp", p)

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p  # type: ignore[return-value]

    @property
    def dtype(self):
        if self.kind == "Fp" and self.p <= _INT64_PRIME_LIMIT:
            return np.int64
        return object

    # -- scalar helpers -------------------------------------------------

    def scalar(self, x) -> object:
        """Canonical field element from an int, Fraction or string."""
        if self.kind == "Q":
            if isinstance(x, str):
                return Fraction(x)
            return Fraction(x)
        if isinstance(x, str):
            x = int(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"non-integer residue {x} over F_{self.p}")
            x = x.numerator
        return int(x) % self.p

    def inv_scalar(self, x):
        if self.kind == "Q":
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return Fraction(1, 1) / x
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(x, self.p - 2, self.p)

    def format_scalar(self, x) -> str:
        if self.kind == "Q":
            f = Fraction(x)
            return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)
        return str(int(x) % self.p)

    # -- array helpers ---------------------------------------------------

    def asarray(self, data) -> np.ndarray:
        a = np.array(data, dtype=self.dtype)
        return self.normalize(a)

    def normalize(self, a: np.ndarray) -> np.ndarray:
        if self.kind == "Fp":
            return a % self.p
        if a.dtype != object:
            b = np.empty(a.shape, dtype=object)
            flat_b, flat_a = b.reshape(-1), a.reshape(-1)
            for i in range(flat_a.size):
                flat_b[i] = Fraction(flat_a[i])
            return b
        b = a.copy()
        flat = b.reshape(-1)
        for i in range(flat.size):
            if not isinstance(flat[i], Fraction):
                flat[i] = Fraction(flat[i])
        return b

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            a = np.empty(shape, dtype=object)
            a[...] = self.scalar(0)
            return a
        return np.zeros(shape, dtype=np.int64)

    def __str__(self) -> str:
        return "Q" if self.kind == "Q" else f"F_{self.p}"


QQ = FieldSpec.rationals()


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime(p)


def _fast_kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """np.kron without its expand_dims overhead; hot path."""
    r1, c1 = a.shape
    r2, c2 = b.shape
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(r1 * r2, c1 * c2)


_EYE_CACHE: dict = {}


class Matrix:
    """Dense exact matrix over a :class:`FieldSpec`.

    Instances are treated as immutable; all operations return new matrices.
    """

    __slots__ = ("field", "a")

    def __init__(self, field: FieldSpec, data):
        self.field = field
        self.a = field.asarray(data) if not isinstance(data, np.ndarray) else field.normalize(data)
        if self.a.ndim != 2:
            raise ValueError(f"matrix data must be 2-d, got shape {self.a.shape}")

    @classmethod
    def _raw(cls, field: FieldSpec, arr: np.ndarray) -> "Matrix":
        """Wrap an already-normalized array without copying (trusted callers)."""
        m = cls.__new__(cls)
        m.field = field
        m.a = arr
        return m

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return Matrix._raw(field, field.zeros((rows, cols)))

    @staticmethod
    def eye(field: FieldSpec, n: int) -> "Matrix":
        key = (field, n)
        arr = _EYE_CACHE.get(key)
        if arr is None:
            arr = field.zeros((n, n))
            one = field.scalar(1)
            for i in range(n):
                arr[i, i] = one
            arr.setflags(write=False)
            _EYE_CACHE[key] = arr
        return Matrix._raw(field, arr)

    @staticmethod
    def from_rows(field: FieldSpec, rows: Sequence[Sequence]) -> "Matrix":
        n = len(rows)
        if n == 0:
            return Matrix.zeros(field, 0, 0)
        return Matrix(field, [[field.scalar(x) for x in r] for r in rows])

    @staticmethod
    def column(field: FieldSpec, vec) -> "Matrix":
        v = as_vector(field, vec)
        return Matrix(field, v.reshape(-1, 1))

    @staticmethod
    def hstack(mats: Sequence["Matrix"]) -> "Matrix":
        field = mats[0].field
        return Matrix(field, np.hstack([m.a for m in mats]))

    @staticmethod
    def vstack(mats: Sequence["Matrix"]) -> "Matrix":
        field = mats[0].field
        return Matrix(field, np.vstack([m.a for m in mats]))

    # -- basic structure -------------------------------------------------

    @property
    def shape(self):
        return self.a.shape

    @property
    def nrows(self) -> int:
        return self.a.shape[0]

    @property
    def ncols(self) -> int:
        return self.a.shape[1]

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.a.copy())

    def row(self, i: int) -> np.ndarray:
        return self.a[i, :].copy()

    def col(self, j: int) -> np.ndarray:
        return self.a[:, j].copy()

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.a.T.copy())

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def submatrix(self, rows, cols) -> "Matrix":
        return Matrix(self.field, self.a[np.ix_(list(rows), list(cols))])

    def is_zero(self) -> bool:
        if self.a.size == 0:
            return True
        return bool(np.all(self.a == self.field.scalar(0)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field or self.shape != other.shape:
            return False
        return bool(np.all(self.a == other.a))

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.field.format_scalar(x) for x in self.a.reshape(-1))))

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.a.tolist()!r})"

    # -- arithmetic --------------------------------------------------------

    def _wrap(self, arr: np.ndarray) -> "Matrix":
        return Matrix._raw(self.field, self.field.normalize(arr))

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._wrap(self.a + other.a)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._wrap(self.a - other.a)

    def __neg__(self) -> "Matrix":
        return self._wrap(-self.a)

    def scale(self, c) -> "Matrix":
        return self._wrap(self.a * self.field.scalar(c))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return self._wrap(self.a @ other.a)
        v = as_vector(self.field, other)
        return self.field.normalize(self.a @ v)

    def kron(self, other: "Matrix") -> "Matrix":
        if self.a.size == 0 or other.a.size == 0:
            return self._wrap(np.kron(self.a, other.a))
        return self._wrap(_fast_kron(self.a, other.a))

    # -- echelon form and friends ---------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and its pivot columns."""
        R, piv = _rref(self.field, self.a)
        return self._wrap(R), tuple(piv)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> "Matrix":
        """Matrix whose columns are a deterministic basis of the kernel."""
        R, piv = _rref(self.field, self.a)
        n = self.ncols
        free = [j for j in range(n) if j not in set(piv)]
        K = self.field.zeros((n, len(free)))
        one = self.field.scalar(1)
        for idx, f in enumerate(free):
            K[f, idx] = one
            for r, pcol in enumerate(piv):
                K[pcol, idx] = -R[r, f]
        return self._wrap(K)

    def solve(self, b) -> Optional[np.ndarray]:
        """A particular solution of ``self @ x = b`` (free vars 0), or None."""
        bv = as_vector(self.field, b)
        if bv.shape[0] != self.nrows:
            raise ValueError(f"rhs length {bv.shape[0]} != rows {self.nrows}")
        aug = np.hstack([self.a, bv.reshape(-1, 1)])
        R, piv = _rref(self.field, aug)
        n = self.ncols
        if piv and piv[-1] == n:
            return None
        x = self.field.zeros((n,))
        for r, pcol in enumerate(piv):
            x[pcol] = R[r, n]
        return x

    def solve_matrix(self, B: "Matrix") -> Optional["Matrix"]:
        """Columnwise solve of ``self @ X = B``; None if any column fails."""
        if B.nrows != self.nrows:
            raise ValueError("row mismatch")
        aug = np.hstack([self.a, B.a])
        R, piv = _rref(self.field, aug)
        n = self.ncols
        if piv and piv[-1] >= n:
            return None
        X = self.field.zeros((n, B.ncols))
        for r, pcol in enumerate(piv):
            X[pcol, :] = R[r, n:]
        return self._wrap(X)

    def inverse(self) -> Optional["Matrix"]:
        if self.nrows != self.ncols:
            return None
        X = self.solve_matrix(Matrix.eye(self.field, self.nrows))
        if X is None:
            return None
        if X @ self != Matrix.eye(self.field, self.nrows):
            return None
        return X

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def column_space_contains(self, b) -> bool:
        return self.solve(b) is not None


def as_vector(field: FieldSpec, data) -> np.ndarray:
    if isinstance(data, np.ndarray) and data.ndim == 1:
        return field.normalize(data)
    v = field.asarray(list(data))
    if v.ndim != 1:
        raise ValueError("expected a vector")
    return v


def basis_vector(field: FieldSpec, n: int, i: int) -> np.ndarray:
    v = field.zeros((n,))
    v[i] = field.scalar(1)
    return v


def _rref(field: FieldSpec, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    m, n = a.shape
    R = field.normalize(a.copy())
    pivots: list[int] = []
    if m == 0 or n == 0:
        return R, pivots
    if field.kind == "Fp" and field.p == 2 and R.dtype == np.int64:
        return _rref_gf2(R)
    zero = field.scalar(0)
    row = 0
    for col in range(n):
        piv = -1
        for r in range(row, m):
            if R[r, col] != zero:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            R[[row, piv], :] = R[[piv, row], :]
        inv = field.inv_scalar(R[row, col])
        if inv != field.scalar(1):
            R[row, :] = field.normalize(R[row, :] * inv)
        colvals = R[:, col].copy()
        colvals[row] = zero
        nz = colvals != zero
        if np.any(nz):
            R[nz, :] = R[nz, :] - np.outer(colvals[nz], R[row, :])
            R = field.normalize(R)
        pivots.append(col)
        row += 1
        if row == m:
            break
    return R, pivots


def _rref_gf2(R: np.ndarray) -> tuple[np.ndarray, list[int]]:
    # entries already reduced to {0,1}; elimination is xor, no modulo pass
    m, n = R.shape
    if m >= 8 and n >= 8 and _sys_little_endian:
        return _rref_gf2_packed(R)
    pivots: list[int] = []
    row = 0
    for col in range(n):
        spot = np.nonzero(R[row:, col])[0]
        if spot.size == 0:
            continue
        piv = row + int(spot[0])
        if piv != row:
            R[[row, piv], :] = R[[piv, row], :]
        mask = R[:, col].astype(bool)
        mask[row] = False
        if mask.any():
            R[mask, :] ^= R[row, :]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return R, pivots


_sys_little_endian = __import__("sys").byteorder == "little"


def _rref_gf2_packed(R: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """GF(2) reduced echelon on Python-int bitmasks (bit j = column j).

    Rows are deduplicated first; that is safe because the reduced echelon
    form is canonical for the row space, so the result and every downstream
    pivot choice match the unpacked computation exactly."""
    m, n = R.shape
    W = (n + 63) // 64
    padded = np.zeros((m, W * 64), dtype=np.uint8)
    padded[:, :n] = R.astype(np.uint8)
    words = np.packbits(padded, axis=1, bitorder="little").view(np.uint64).reshape(m, W)
    if W == 1:
        packed = words[:, 0].tolist()
    else:
        packed = []
        for row_words in words.tolist():
            x = 0
            for w in range(W):
                x |= row_words[w] << (64 * w)
            packed.append(x)
    rows = sorted(set(packed) - {0})
    mm = len(rows)
    pivots: list[int] = []
    r = 0
    for col in range(n):
        bit = 1 << col
        piv = -1
        for i in range(r, mm):
            if rows[i] & bit:
                piv = i
                break
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(mm):
            if i != r and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(col)
        r += 1
        if r == mm:
            break
    out = np.zeros((m, n), dtype=np.int64)
    if pivots:
        back = np.zeros((len(pivots), W * 8), dtype=np.uint8)
        for i in range(len(pivots)):
            back[i, :] = np.frombuffer(rows[i].to_bytes(W * 8, "little"), dtype=np.uint8)
        out[: len(pivots), :] = np.unpackbits(back, axis=1, bitorder="little")[:, :n]
    return out, pivots
