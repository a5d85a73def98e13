"""Mod-p homology of stunted projective spaces CP^top_bot with the P_k action.

Cell b_i sits in degree 2i for bot <= i <= top.  In cohomology
P_k(x^j u_c) = (j + c) x^{j + p^k - 1} u_c, and dually in homology
b_i -> (i - p^k + 1) b_{i - p^k + 1}, dropped when the target is below bot.
The unit relating P_k to chi-bar on K-theory is deliberately not tracked:
Jordan types are insensitive to it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fp_algebra import FpMatrix, check_prime
from .nilpotent import NilOperator


@dataclass(frozen=True)
class PkParams:
    p: int
    k: int

    def __post_init__(self):
        check_prime(self.p)
        if self.k < 1:
            raise ValueError("k must be a positive integer")

    @property
    def n(self) -> int:
        """Height n = k(p-1)."""
        return self.k * (self.p - 1)

    @property
    def shift(self) -> int:
        """Cell shift of P_k: p^k - 1."""
        return self.p**self.k - 1

    @property
    def beta(self) -> int:
        return (self.p - 1) * (self.p**self.k - 1)

    @property
    def beta_hat(self) -> int:
        return self.p**self.k * (self.p - 1)


@dataclass(frozen=True)
class StuntedBasis:
    bot: int
    top: int

    def __post_init__(self):
        if self.top < self.bot:
            raise ValueError(f"top {self.top} < bot {self.bot}")

    @property
    def dim(self) -> int:
        return self.top - self.bot + 1

    @property
    def indices(self) -> range:
        return range(self.bot, self.top + 1)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"b_{i}" for i in self.indices)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(2 * i for i in self.indices)

    def position(self, i: int) -> int:
        if not self.bot <= i <= self.top:
            raise IndexError(f"b_{i} is not in [{self.bot}, {self.top}]")
        return i - self.bot


def pk_homology_matrix(params: PkParams, basis: StuntedBasis) -> np.ndarray:
    p, s = params.p, params.shift
    A = np.zeros((basis.dim, basis.dim), dtype=np.int64)
    for i in basis.indices:
        j = i - s
        if j >= basis.bot:
            A[basis.position(j), basis.position(i)] = (i - s) % p
    return A


def pk_homology_operator(params: PkParams, basis: StuntedBasis) -> NilOperator:
    """P_k acting on H_*(CP^top_bot; F_p), as a nilpotent operator."""
    return NilOperator(FpMatrix.over(params.p, pk_homology_matrix(params, basis)),
                       params.p, labels=basis.labels, degrees=basis.degrees)


def pk_cohomology_coefficient(params: PkParams, c: int, i: int) -> int:
    """Coefficient of x^{i+p^k-1} u_c in P_k(x^i u_c), namely (i + c) mod p."""
    return (i + c) % params.p


def pk_cohomology_matrix(params: PkParams, basis: StuntedBasis) -> np.ndarray:
    """P_k on the dual basis x^j u_c (j = 0..top-bot, c = bot); columns are sources."""
    c, s, d = basis.bot, params.shift, basis.dim
    A = np.zeros((d, d), dtype=np.int64)
    for j in range(d):
        if j + s < d:
            A[j + s, j] = pk_cohomology_coefficient(params, c, j)
    return A


def duality_check(params: PkParams, basis: StuntedBasis) -> bool:
    """Homology matrix equals the transpose of the cohomology matrix."""
    H = pk_homology_matrix(params, basis)
    C = pk_cohomology_matrix(params, basis)
    return bool(np.array_equal(H, C.T))
