"""Free/finite splitting of H_*(CP^top_c) as a module over B(k) = F_p[P_k]/(P_k^p).

In the cell basis P_k is a weighted shift: each residue class of cells mod
p^k - 1 forms a string b_r <- b_{r+s} <- b_{r+2s} ... and the string breaks
wherever the coefficient vanishes mod p.  Interior segments have length p
(free summands), the lowest segment of each string is cut by the bottom cell
(finite part), and the highest one may be cut by the truncation at ``top``.

A segment shorter than p whose generator b_g has b_{g+s} outside the window
and g != 0 mod p would continue in CP^infty_c; such blocks are flagged as
boundary and not classified.  Everything else is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .fp_algebra import span_rank
from .nilpotent import JordanType, jordan_type, weighted_shift_chains
from .stunted import PkParams, StuntedBasis, pk_homology_matrix, pk_homology_operator


@dataclass(frozen=True)
class BetaConstants:
    p: int
    k: int
    beta: int
    beta_hat: int


def beta_constants(p: int, k: int) -> BetaConstants:
    params = PkParams(p, k)
    beta, beta_hat = params.beta, params.beta_hat
    assert beta_hat % p == 0
    assert beta < beta_hat <= beta + p
    return BetaConstants(p, k, beta, beta_hat)


@dataclass(frozen=True)
class Block:
    """One Jordan chain, cell indices from generator down to socle."""

    cells: tuple[int, ...]
    kind: str  # "free", "finite" or "boundary"

    @property
    def size(self) -> int:
        return len(self.cells)

    @property
    def generator(self) -> int:
        return self.cells[0]

    @property
    def socle(self) -> int:
        return self.cells[-1]

    @property
    def bottom_degree(self) -> int:
        return 2 * self.socle

    @property
    def top_degree(self) -> int:
        return 2 * self.generator

    def as_dict(self) -> dict:
        return {"cells": list(self.cells), "kind": self.kind, "size": self.size,
                "generator_degree": self.top_degree, "socle_degree": self.bottom_degree}


@dataclass(frozen=True)
class SplittingReport:
    params: PkParams
    c: int
    top: int
    jordan: JordanType
    blocks: tuple[Block, ...] = field(repr=False)

    def _of(self, kind: str) -> list[Block]:
        return [b for b in self.blocks if b.kind == kind]

    @property
    def free_blocks(self) -> list[Block]:
        return self._of("free")

    @property
    def finite(self) -> list[Block]:
        return self._of("finite")

    @property
    def boundary_blocks(self) -> list[Block]:
        return self._of("boundary")

    @property
    def free_rank(self) -> int:
        return len(self.free_blocks)

    @property
    def finite_blocks(self) -> tuple[int, ...]:
        return tuple(sorted(b.size for b in self.finite))

    @property
    def free_generator_degrees(self) -> list[int]:
        return sorted(b.top_degree for b in self.free_blocks)

    @property
    def free_socle_degrees(self) -> list[int]:
        return sorted(b.bottom_degree for b in self.free_blocks)

    @property
    def finite_socle_degrees(self) -> list[int]:
        return sorted(b.bottom_degree for b in self.finite)

    def as_dict(self) -> dict:
        return {
            "p": self.params.p, "k": self.params.k, "c": self.c, "top": self.top,
            "jordan": list(self.jordan.blocks),
            "free_rank": self.free_rank,
            "finite_blocks": list(self.finite_blocks),
            "free_generator_degrees": self.free_generator_degrees,
            "free_socle_degrees": self.free_socle_degrees,
            "finite_socle_degrees": self.finite_socle_degrees,
            "boundary_blocks": [b.as_dict() for b in self.boundary_blocks],
            "blocks": [b.as_dict() for b in self.blocks],
        }


def _classify(chain: list[int], params: PkParams, top: int) -> str:
    p, s = params.p, params.shift
    if len(chain) == p:
        return "free"
    g = chain[0]
    if g + s > top and g % p != 0:
        return "boundary"
    return "finite"


def decompose_stunted(params: PkParams, c: int, top: int) -> SplittingReport:
    """Jordan decomposition of P_k on H_*(CP^top_c) with blocks classified."""
    if top < c:
        raise ValueError(f"top {top} < bottom cell {c}")
    basis = StuntedBasis(c, top)
    op = pk_homology_operator(params, basis)
    jt = jordan_type(op)
    chains = [[basis.bot + i for i in ch] for ch in weighted_shift_chains(op)]
    if JordanType(tuple(len(ch) for ch in chains)) != jt:
        raise AssertionError("chain decomposition disagrees with rank profile")
    blocks = tuple(sorted((Block(tuple(ch), _classify(ch, params, top)) for ch in chains),
                          key=lambda b: b.socle))
    return SplittingReport(params, c, top, jt, blocks)


def predicted_free_generators(params: PkParams, c: int, top: int) -> list[int]:
    """Cells b_{pi} with pi >= beta + c and pi <= top.

    These are exactly the cells whose full string of p - 1 applications of
    P_k stays at or above the bottom cell.
    """
    p, beta = params.p, params.beta
    lo = -(-(beta + c) // p)
    return [p * i for i in range(lo, top // p + 1) if p * i >= c]


def verify_free_generators(params: PkParams, c: int, top: int) -> bool:
    """Check that each predicted b_{pi} spans a free summand, and nothing else does.

    Computes P_k^{p-1}(b_{pi}) with matrix powers, requires the images to be
    nonzero and linearly independent, and compares the predicted set with the
    free generators found by decompose_stunted.
    """
    p = params.p
    basis = StuntedBasis(c, top)
    gens = predicted_free_generators(params, c, top)
    A = pk_homology_matrix(params, basis)
    images = []
    for g in gens:
        v = np.zeros(basis.dim, dtype=np.int64)
        v[basis.position(g)] = 1
        for _ in range(p - 1):
            v = A @ v % p
        if not v.any():
            return False
        images.append(v)
    if images and span_rank(p, images) != len(images):
        return False
    report = decompose_stunted(params, c, top)
    return sorted(b.generator for b in report.free_blocks) == gens


class SkeletalSupport(NamedTuple):
    max_degree: int | None
    within_skeleton: bool
    skeleton_degree: int
    alt_skeleton_degree: int
    within_alt_skeleton: bool


def finite_part_support(params: PkParams, c: int, top: int) -> SkeletalSupport:
    """Highest cell degree touched by the finite part, against the two skeleta.

    The primary threshold is the 2(c + beta_hat - 1) skeleton; the
    2(c + beta_hat) skeleton is reported alongside it.
    """
    if c % params.p:
        raise ValueError(f"bottom cell {c} is not divisible by p = {params.p}")
    report = decompose_stunted(params, c, top)
    degs = [2 * i for b in report.finite for i in b.cells]
    mx = max(degs) if degs else None
    sk = 2 * (c + params.beta_hat - 1)
    alt = 2 * (c + params.beta_hat)
    return SkeletalSupport(mx, mx is None or mx <= sk, sk, alt, mx is None or mx <= alt)


def thom_shift_linearity(params: PkParams, c: int, top: int) -> bool:
    """Does b_i -> b_{i+c} intertwine P_k on CP^top_0 and CP^{top+c}_c?"""
    src = pk_homology_matrix(params, StuntedBasis(0, top))
    dst = pk_homology_matrix(params, StuntedBasis(c, top + c))
    # both matrices are indexed by position i - bot, which is the shift
    return bool(np.array_equal(src, dst))


@dataclass(frozen=True)
class TateTransition:
    source_bottom: int
    target_bottom: int
    socle_covered: bool
    free_part_covered: bool
    module_map: bool


def tate_transition(params: PkParams, s: int, top: int) -> TateTransition:
    """Collapse CP^top_s -> CP^top_{s+beta_hat} and compare free parts by rank."""
    p = params.p
    t = s + params.beta_hat
    if top < t:
        raise ValueError("window too short for the target stage")
    src_basis, dst_basis = StuntedBasis(s, top), StuntedBasis(t, top)
    collapse = np.zeros((dst_basis.dim, src_basis.dim), dtype=np.int64)
    for i in dst_basis.indices:
        collapse[dst_basis.position(i), src_basis.position(i)] = 1
    A_src = pk_homology_matrix(params, src_basis)
    A_dst = pk_homology_matrix(params, dst_basis)
    is_map = bool(np.array_equal(collapse @ A_src % p, A_dst @ collapse % p))

    def unit(basis, i):
        v = np.zeros(basis.dim, dtype=np.int64)
        v[basis.position(i)] = 1
        return v

    src = decompose_stunted(params, s, top)
    dst = decompose_stunted(params, t, top)
    image = [collapse @ unit(src_basis, i) % p for b in src.free_blocks for i in b.cells]
    image = [v for v in image if v.any()]
    r_img = span_rank(p, image)
    socles = [unit(dst_basis, b.socle) for b in dst.free_blocks]
    cells = [unit(dst_basis, i) for b in dst.free_blocks for i in b.cells]
    return TateTransition(
        source_bottom=s, target_bottom=t,
        socle_covered=span_rank(p, image + socles) == r_img,
        free_part_covered=span_rank(p, image + cells) == r_img,
        module_map=is_map)


def tate_transition_surjective(params: PkParams, s: int, top: int) -> bool:
    tr = tate_transition(params, s, top)
    return tr.module_map and tr.socle_covered


def ko_blocks(top: int) -> SplittingReport:
    """decompose_stunted at (p, k) = (2, 1), c = 0, on cells of degree <= top."""
    if top < 2:
        raise ValueError("ko_pattern needs top >= 2")
    return decompose_stunted(PkParams(2, 1), 0, top // 2)


def ko_pattern(top: int) -> list[int]:
    """Bottom degrees of the non-finite summands of H_*(CP^{top/2}) at p = 2.

    ``top`` is a degree bound.  Free blocks and truncated (boundary) blocks
    are both listed; the single finite block is the bottom cell.
    """
    report = ko_blocks(top)
    return sorted(b.bottom_degree for b in report.blocks if b.kind != "finite")
