"""Modules over F_p[chi]/(chi^p) and the group ring F_p[C_p]."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .fp_algebra import FpMatrix, PrimeField, check_prime, power_rank_profile


class NotNilpotentError(ValueError):
    """The operator does not satisfy N^p = 0."""


@dataclass(frozen=True, eq=False)
class NilOperator:
    """A linear endomorphism N of a (optionally graded) F_p-space with N^p = 0.

    ``matrix[target, source]`` acts on column vectors.  When ``degrees`` is
    given, every nonzero entry must strictly lower the degree.
    """

    matrix: FpMatrix
    p: int
    labels: tuple[str, ...] | None = None
    degrees: tuple[int, ...] | None = None

    def __post_init__(self):
        check_prime(self.p)
        if not isinstance(self.matrix.field, PrimeField) or self.matrix.field.p != self.p:
            raise ValueError("operator matrix must live over F_p")
        n, m = self.matrix.shape
        if n != m:
            raise ValueError("operator matrix must be square")
        for name in ("labels", "degrees"):
            val = getattr(self, name)
            if val is not None:
                object.__setattr__(self, name, tuple(val))
                if len(val) != n:
                    raise ValueError(f"{name} has length {len(val)}, expected {n}")
        if self.degrees is not None:
            for t, s in zip(*np.nonzero(self.matrix.entries)):
                if self.degrees[t] >= self.degrees[s]:
                    raise ValueError(
                        f"entry ({t},{s}) does not lower degree {self.degrees[s]}")
        if not self.matrix.power(self.p).is_zero():
            raise NotNilpotentError(f"operator^{self.p} != 0")

    @classmethod
    def from_array(cls, p: int, entries, **kw) -> "NilOperator":
        return cls(FpMatrix.over(p, entries), p, **kw)

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def scaled(self, lam: int) -> "NilOperator":
        return NilOperator(self.matrix.scale(lam), self.p, self.labels, self.degrees)

    def transposed(self) -> "NilOperator":
        # transposition reverses the grading
        degs = None if self.degrees is None else tuple(-d for d in self.degrees)
        return NilOperator(self.matrix.T, self.p, self.labels, degs)

    def permuted(self, perm: Sequence[int]) -> "NilOperator":
        perm = list(perm)
        A = self.matrix.entries[np.ix_(perm, perm)]
        labels = None if self.labels is None else tuple(self.labels[i] for i in perm)
        degs = None if self.degrees is None else tuple(self.degrees[i] for i in perm)
        return NilOperator(FpMatrix.over(self.p, A), self.p, labels, degs)

    def apply(self, v, times: int = 1) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        A = self.matrix.entries
        for _ in range(times):
            v = (A @ v) % self.p
        return v


@dataclass(frozen=True)
class JordanType:
    """Multiset of Jordan block sizes, stored sorted ascending."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        if any(b < 1 for b in self.blocks):
            raise ValueError("block sizes must be positive")
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks)))

    @property
    def dimension(self) -> int:
        return sum(self.blocks)

    def counts(self) -> Counter:
        return Counter(self.blocks)

    def at_least(self, j: int) -> int:
        return sum(1 for b in self.blocks if b >= j)

    def __str__(self):
        return "{" + ",".join(map(str, self.blocks)) + "}"


def block_counts_from_profile(profile: Sequence[int]) -> Counter:
    """Blocks of size exactly j from [rank N^0, rank N^1, ...] (last entry 0)."""
    ge = [profile[j - 1] - profile[j] for j in range(1, len(profile))]  # ge[j-1] = #blocks >= j
    ge.append(0)
    return Counter({j: ge[j - 1] - ge[j] for j in range(1, len(ge)) if ge[j - 1] - ge[j]})


def jordan_type(N: NilOperator) -> JordanType:
    profile = power_rank_profile(N.matrix, N.p)
    if profile[-1] != 0:
        raise NotNilpotentError("operator^p != 0")
    blocks = []
    for size, mult in block_counts_from_profile(profile).items():
        if mult < 0:
            raise AssertionError(f"inconsistent rank profile {profile}")
        blocks += [size] * mult
    jt = JordanType(tuple(blocks))
    assert jt.dimension == N.dim
    return jt


def split_free_finite(jt: JordanType, p: int) -> tuple[int, tuple[int, ...]]:
    """(number of free rank-one summands, sizes of the remaining blocks)."""
    if any(b > p for b in jt.blocks):
        raise ValueError(f"block larger than {p} cannot occur over F_{p}[chi]/(chi^{p})")
    free = sum(1 for b in jt.blocks if b == p)
    return free, tuple(b for b in jt.blocks if b < p)


def weighted_shift_chains(N: NilOperator) -> list[list[int]]:
    """Jordan chains of an operator sending each basis vector to a multiple of another.

    Each chain is listed from its generator down to its socle.  Requires at
    most one nonzero entry per row and per column; raises ValueError otherwise.
    """
    A = N.matrix.entries
    nz_rows, nz_cols = np.nonzero(A)
    if len(set(nz_rows.tolist())) != len(nz_rows) or len(set(nz_cols.tolist())) != len(nz_cols):
        raise ValueError("operator is not a weighted shift in this basis")
    down = dict(zip(nz_cols.tolist(), nz_rows.tolist()))
    hit = set(down.values())
    chains = []
    for top in range(N.dim):
        if top in hit:
            continue
        chain = [top]
        while chain[-1] in down:
            chain.append(down[chain[-1]])
        chains.append(chain)
    return chains


# --- the group ring F_p[C_p] ------------------------------------------------

@dataclass(frozen=True)
class GroupRingElement:
    """sum_i coefficients[i] * zeta^i in F_p[C_p]."""

    p: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.p:
            raise ValueError("need exactly p coefficients")
        object.__setattr__(self, "coefficients", tuple(c % self.p for c in self.coefficients))

    @classmethod
    def zeta_power(cls, p: int, i: int) -> "GroupRingElement":
        c = [0] * p
        c[i % p] = 1
        return cls(p, tuple(c))

    @classmethod
    def chi(cls, p: int) -> "GroupRingElement":
        return cls(p, tuple([p - 1, 1] + [0] * (p - 2)))

    def __add__(self, other):
        return GroupRingElement(self.p, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __mul__(self, other):
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[(i + j) % p] += a * b
        return GroupRingElement(p, tuple(out))

    def __pow__(self, e: int):
        out = GroupRingElement.zeta_power(self.p, 0)
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not any(self.coefficients)


def _tensor(a: GroupRingElement, b: GroupRingElement) -> np.ndarray:
    return np.outer(a.coefficients, b.coefficients) % a.p


def _zeta_to_chi_basis(p: int) -> np.ndarray:
    """Matrix C with zeta^i = sum_a C[a, i] chi^a, i.e. C[a, i] = binom(i, a)."""
    return np.array([[comb(i, a) % p for i in range(p)] for a in range(p)], dtype=np.int64)


@dataclass(frozen=True)
class CoproductReport:
    p: int
    k: int
    identity_holds: bool
    chi_p_vanishes: bool
    chi_basis_terms: dict[tuple[int, int], int]
    linear_weight: int
    cross_term_weight: int
    primitive_in_graded: bool

    @property
    def passed(self) -> bool:
        return self.identity_holds and self.chi_p_vanishes and self.primitive_in_graded


def coproduct_chi_check(p: int, k: int = 1) -> CoproductReport:
    """Expand Delta(chi) for chi = zeta - 1 in F_p[C_p] (x) F_p[C_p].

    Delta(zeta) = zeta (x) zeta, so Delta(chi) = zeta(x)zeta - 1(x)1.  The
    result is rewritten in the basis chi^a (x) chi^b and compared with
    chi(x)1 + 1(x)chi + chi(x)chi.  Giving chi the filtration weight 2 - 2p^k,
    the cross term sits strictly below the linear terms, so chi is primitive
    in the associated graded.
    """
    check_prime(p)
    one = GroupRingElement.zeta_power(p, 0)
    zeta = GroupRingElement.zeta_power(p, 1)
    chi = GroupRingElement.chi(p)

    delta_chi = (_tensor(zeta, zeta) - _tensor(one, one)) % p
    expected = (_tensor(chi, one) + _tensor(one, chi) + _tensor(chi, chi)) % p
    identity_holds = bool(np.array_equal(delta_chi, expected))

    C = _zeta_to_chi_basis(p)
    in_chi = (C @ delta_chi @ C.T) % p
    terms = {(a, b): int(in_chi[a, b]) for a in range(p) for b in range(p) if in_chi[a, b]}
    chi_p_vanishes = (chi ** p).is_zero()

    w = 2 - 2 * p**k
    weights = {ab: (ab[0] + ab[1]) * w for ab in terms}
    top = max(weights.values())
    leading = {ab for ab, wt in weights.items() if wt == top}
    primitive = leading == {(1, 0), (0, 1)} and all(
        terms[ab] == 1 for ab in leading) and all(
        weights[ab] < top for ab in terms if ab not in leading)
    return CoproductReport(
        p=p, k=k, identity_holds=identity_holds, chi_p_vanishes=chi_p_vanishes,
        chi_basis_terms=terms, linear_weight=w, cross_term_weight=2 * w,
        primitive_in_graded=primitive)
