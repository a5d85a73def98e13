"""Exact arithmetic over F_p and F_{p^m}, plus dense row reduction mod p.

Extension-field elements are plain ints: the base-p digits of the code are
the coefficients (low degree first) of a polynomial reduced modulo a fixed
irreducible.  The modulus is the first irreducible monic polynomial when the
lower coefficients are enumerated as a base-p integer, so every run builds the
same field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

# Above this order the log/exp tables are skipped and we multiply polynomials.
_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
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


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"{p!r} is not a prime")
    return int(p)


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p, coefficient lists low -> high -------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        f = a[-1] * inv_lead % p
        q[shift] = f
        for i, y in enumerate(b):
            a[i + shift] = (a[i + shift] - f * y) % p
        _trim(a)
    return _trim(q), a


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def poly_powmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = poly_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, p), mod, p)[1]
        base = poly_divmod(poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    m = len(f) - 1
    if m < 1:
        return False
    x = [0, 1]
    if poly_powmod(x, p**m, f, p) != poly_divmod(x, f, p)[1]:
        return False
    for q in prime_factors(m):
        h = poly_powmod(x, p ** (m // q), f, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(poly_gcd(f, _trim(h), p)) != 1:
            return False
    return True


def _default_modulus(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        f = low + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise RuntimeError(f"no irreducible polynomial of degree {m} over F_{p}")


# --- fields -----------------------------------------------------------------

@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        check_prime(self.p)

    @property
    def order(self) -> int:
        return self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(int(a), -1, self.p)

    def pow(self, a, e: int):
        return pow(int(a), e, self.p)

    def frobenius(self, a):
        return a % self.p

    def elements(self) -> range:
        return range(self.p)


@dataclass(frozen=True, eq=False)
class ExtField:
    """F_{p^m} with elements encoded as ints in range(p**m)."""

    p: int
    m: int
    modulus: tuple[int, ...]
    generator: int = field(init=False)
    _exp: list[int] | None = field(init=False, repr=False)
    _log: dict[int, int] | None = field(init=False, repr=False)

    def __post_init__(self):
        check_prime(self.p)
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not is_irreducible(list(self.modulus), self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{self.p}")
        object.__setattr__(self, "_exp", None)
        object.__setattr__(self, "_log", None)
        object.__setattr__(self, "generator", self._find_generator())
        if self.order <= _TABLE_LIMIT:
            exp = [1]
            for _ in range(self.order - 2):
                exp.append(self._poly_mul(exp[-1], self.generator))
            object.__setattr__(self, "_exp", exp)
            object.__setattr__(self, "_log", {v: i for i, v in enumerate(exp)})

    def __eq__(self, other):
        return isinstance(other, ExtField) and (self.p, self.m, self.modulus) == (
            other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    @property
    def order(self) -> int:
        return self.p**self.m

    def elements(self) -> range:
        return range(self.order)

    def to_poly(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.m)]

    def from_poly(self, coeffs: Sequence[int]) -> int:
        coeffs = poly_divmod(list(coeffs), list(self.modulus), self.p)[1]
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def embed(self, a: int) -> int:
        """Image of a prime-field element."""
        return a % self.p

    def _poly_mul(self, a: int, b: int) -> int:
        return self.from_poly(poly_mul(self.to_poly(a), self.to_poly(b), self.p))

    def _find_generator(self) -> int:
        q1 = self.order - 1
        if q1 == 1:
            return 1
        exps = [q1 // r for r in prime_factors(q1)]
        for g in range(2 if self.order > 2 else 1, self.order):
            if all(self._slow_pow(g, e) != 1 for e in exps):
                return g
        raise RuntimeError("multiplicative group is not cyclic?")

    def _slow_pow(self, a: int, e: int) -> int:
        return self.from_poly(poly_powmod(self.to_poly(a), e, list(self.modulus), self.p))

    def add(self, a: int, b: int) -> int:
        pa, pb = self.to_poly(a), self.to_poly(b)
        return sum(((x + y) % self.p) * self.p**i for i, (x, y) in enumerate(zip(pa, pb)))

    def neg(self, a: int) -> int:
        return sum((-x % self.p) * self.p**i for i, x in enumerate(self.to_poly(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            q1 = self.order - 1
            return self._exp[(self._log[a] + self._log[b]) % q1]
        return self._poly_mul(a, b)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        q1 = self.order - 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % q1]
        return self._slow_pow(a, e % q1)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, -1)

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)


@lru_cache(maxsize=None)
def make_ext_field(p: int, m: int) -> ExtField:
    """The field of order p**m with the deterministic default modulus."""
    check_prime(p)
    if m < 1:
        raise ValueError("extension degree must be positive")
    return ExtField(p, m, _default_modulus(p, m))


# --- matrices ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FpMatrix:
    """Dense matrix with entries reduced into [0, p) (or field codes)."""

    field: PrimeField | ExtField
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            arr = arr.reshape(len(arr), -1) if arr.size else np.zeros((len(arr), 0), np.int64)
        if isinstance(self.field, PrimeField):
            arr %= self.field.p
        elif arr.size and (arr.min() < 0 or arr.max() >= self.field.order):
            raise ValueError("entries are not field elements")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def over(cls, p: int, entries) -> "FpMatrix":
        return cls(PrimeField(p), np.asarray(entries, dtype=np.int64))

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(PrimeField(p), np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(PrimeField(p), np.eye(n, dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    def __eq__(self, other):
        return (isinstance(other, FpMatrix) and self.field == other.field
                and self.shape == other.shape and bool(np.all(self.entries == other.entries)))

    def __hash__(self):
        return hash((self.field, self.shape, self.entries.tobytes()))

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.field != other.field:
            raise ValueError("matrices over different fields")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if isinstance(self.field, PrimeField):
            return FpMatrix(self.field, _matmul_mod(self.entries, other.entries, self.field.p))
        F = self.field
        out = np.zeros((self.rows, other.cols), dtype=np.int64)
        for i in range(self.rows):
            for j in range(other.cols):
                acc = 0
                for t in range(self.cols):
                    acc = F.add(acc, F.mul(int(self.entries[i, t]), int(other.entries[t, j])))
                out[i, j] = acc
        return FpMatrix(F, out)

    def scale(self, lam: int) -> "FpMatrix":
        if isinstance(self.field, PrimeField):
            return FpMatrix(self.field, self.entries * lam)
        F = self.field
        return FpMatrix(F, np.vectorize(lambda a: F.mul(int(a), lam))(self.entries))

    @property
    def T(self) -> "FpMatrix":
        return FpMatrix(self.field, self.entries.T)

    def power(self, e: int) -> "FpMatrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        out = FpMatrix(self.field, np.eye(self.rows, dtype=np.int64))
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return not self.entries.any()

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # object dtype avoids int64 overflow on long inner products with big p
    if a.shape[1] * (p - 1) ** 2 < 2**62:
        return (a @ b) % p
    return (a.astype(object) @ b.astype(object) % p).astype(np.int64)


def row_reduce(M: FpMatrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    F = M.field
    A = M.entries.copy()
    if not isinstance(F, PrimeField):
        return _row_reduce_generic(F, A)
    p = F.p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, col]), -1, p) % p
        others = np.nonzero(A[:, col])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, col], A[r])) % p
        pivots.append(col)
        r += 1
    return A, pivots


def _row_reduce_generic(F: ExtField, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    rows, cols = A.shape
    M = [[int(x) for x in row] for row in A]
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][col])
        M[r] = [F.mul(x, inv) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][col]:
                f = M[i][col]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    return np.array(M, dtype=np.int64).reshape(rows, cols), pivots


def rank(M: FpMatrix) -> int:
    """Rank over the coefficient field, by exact row reduction."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(row_reduce(M)[1])


def power_rank_profile(M: FpMatrix, e: int) -> list[int]:
    """[rank(M^0), rank(M^1), ..., rank(M^e)]."""
    if M.rows != M.cols:
        raise ValueError("power_rank_profile needs a square matrix")
    out = [M.rows]
    P = FpMatrix(M.field, np.eye(M.rows, dtype=np.int64))
    for _ in range(e):
        P = P @ M
        out.append(rank(P))
    return out


def nullspace(M: FpMatrix) -> np.ndarray:
    """Basis of the right kernel {x : Mx = 0}, one vector per row.  Prime fields only."""
    p = M.field.p
    R, pivots = row_reduce(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = np.zeros((len(free), M.cols), dtype=np.int64)
    for t, fc in enumerate(free):
        basis[t, fc] = 1
        for r, pc in enumerate(pivots):
            basis[t, pc] = -R[r, fc] % p
    return basis


def span_rank(p: int, vectors) -> int:
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.size == 0:
        return 0
    return rank(FpMatrix.over(p, vectors.reshape(len(vectors), -1)))


__all__ = [
    "ExtField", "FpMatrix", "PrimeField", "check_prime", "is_irreducible", "is_prime",
    "make_ext_field", "nullspace", "power_rank_profile", "rank", "row_reduce", "span_rank",
]
