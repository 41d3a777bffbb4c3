"""l_p-type direct sums of finite blocks.

Block-diagonal assembly with norm-one coordinate inclusions/projections,
the multiset identity between the spectrum of the sum and the union of
block spectra, and the geometric quasinorm bound for a sum of embedded
representations.  Countable sums are truncated to finite block lists; the
truncation length travels with every report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import block_diag

from .factorization import match_spectra
from .nuclear import NuclearRep, quasinorm_lorentz_lapreste, quasinorm_rpq
from .spectral import MAX_EIG_ORDER, as_square_matrix, eigenvalues


@dataclass(frozen=True)
class DirectSumOperator:
    blocks: list          # list of square ndarrays
    p: float              # sum-type exponent, 1 <= p <= inf
    order: int            # total order sum(d_n)


@dataclass(frozen=True)
class SpectrumUnionReport:
    max_diff: float
    matched_count: int
    passed: bool
    block_orders: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "max_diff": self.max_diff,
            "matched_count": self.matched_count,
            "pass": self.passed,
            "block_orders": self.block_orders,
        }


def direct_sum(blocks, p: float) -> DirectSumOperator:
    """Bundle square blocks into an l_p-sum operator."""
    if not (1 <= p):
        raise ValueError(f"p must lie in [1, inf], got {p}")
    mats = [as_square_matrix(b) for b in blocks]
    if not mats:
        raise ValueError("block list must be nonempty")
    if any(m.shape[0] == 0 for m in mats):
        raise ValueError("block orders must be positive")
    return DirectSumOperator(blocks=mats, p=p, order=sum(m.shape[0] for m in mats))


def assemble_direct_sum(ds: DirectSumOperator) -> np.ndarray:
    return block_diag(*ds.blocks)


def _block_offsets(ds: DirectSumOperator):
    offsets = [0]
    for m in ds.blocks:
        offsets.append(offsets[-1] + m.shape[0])
    return offsets


def inclusion(ds: DirectSumOperator, n: int) -> np.ndarray:
    """Coordinate injection i_n of block n into the sum space (norm exactly 1)."""
    offsets = _block_offsets(ds)
    d_n = ds.blocks[n].shape[0]
    mat = np.zeros((ds.order, d_n))
    mat[offsets[n]:offsets[n + 1], :] = np.eye(d_n)
    return mat


def projection(ds: DirectSumOperator, n: int) -> np.ndarray:
    """Coordinate restriction j_n from the sum space onto block n (norm exactly 1)."""
    return inclusion(ds, n).T


def extract_block(ds: DirectSumOperator, assembled, n: int) -> np.ndarray:
    """j_n . T . i_n: recovers block n exactly by coordinate slicing."""
    offsets = _block_offsets(ds)
    sl = slice(offsets[n], offsets[n + 1])
    return np.asarray(assembled)[sl, sl]


def spectrum_union_check(ds: DirectSumOperator, tolerance: float = 1e-7) -> SpectrumUnionReport:
    """Spectrum of the assembled sum equals the disjoint union of block spectra."""
    if ds.order > MAX_EIG_ORDER:
        raise ValueError(f"total order {ds.order} exceeds {MAX_EIG_ORDER}")
    assembled = assemble_direct_sum(ds)
    full = eigenvalues(assembled).eigenvalues
    union = np.concatenate([eigenvalues(b).eigenvalues for b in ds.blocks])
    max_diff, matched = match_spectra(full, union)
    return SpectrumUnionReport(
        max_diff=max_diff, matched_count=matched,
        passed=max_diff <= tolerance,
        block_orders=[m.shape[0] for m in ds.blocks],
    )


@dataclass(frozen=True)
class SummedBoundReport:
    lhs_estimate: float
    bound: float
    nu: float
    per_block: list
    holds: bool

    def to_json(self) -> dict:
        return {
            "lhs_estimate": self.lhs_estimate,
            "bound": self.bound,
            "nu": self.nu,
            "per_block": self.per_block,
            "holds": self.holds,
        }


def concatenate_reps(reps) -> NuclearRep:
    """Representation of sum_n j_n T_n i_n: blocks embedded in disjoint coordinates."""
    reps = list(reps)
    if not reps:
        raise ValueError("need at least one representation")
    total_dim = sum(r.dim for r in reps)
    total_rank = sum(r.rank for r in reps)
    any_complex = any(np.iscomplexobj(r.coefficients) or np.iscomplexobj(r.functionals)
                      or np.iscomplexobj(r.vectors) for r in reps)
    dtype = complex if any_complex else float
    lam = np.concatenate([np.asarray(r.coefficients, dtype=dtype) for r in reps])
    functionals = np.zeros((total_rank, total_dim), dtype=dtype)
    vectors = np.zeros((total_rank, total_dim), dtype=dtype)
    row, col = 0, 0
    for r in reps:
        functionals[row:row + r.rank, col:col + r.dim] = r.functionals
        vectors[row:row + r.rank, col:col + r.dim] = r.vectors
        row += r.rank
        col += r.dim
    return NuclearRep(coefficients=lam, functionals=functionals, vectors=vectors)


def summed_quasinorm_bound(reps, kind: str, params: dict, weights=None,
                           nu: float | None = None, trials: int = 16, seed=0) -> SummedBoundReport:
    """Geometric bound sum_k nu^k est_k against the estimate of the embedded sum.

    kind selects the quasinorm ("rpq" with params r, p, q or
    "lorentz_lapreste" with params r, s, p); optional weights scale each
    block's coefficients before estimating.  nu defaults to a triangle
    constant safe for the coefficient quasinorm: 2^(1/r - 1) for the plain
    l_r coefficients and 2^(1/r + 1/s - 1) for the Lorentz case.  The
    check is representation-wise: the left side is the estimate of the
    concatenated representation, not an infimum over representations.
    """
    reps = list(reps)
    if weights is None:
        weights = [1.0] * len(reps)
    if len(weights) != len(reps):
        raise ValueError("weights must match the number of representations")
    scaled = [
        NuclearRep(coefficients=np.asarray(r.coefficients) * w,
                   functionals=r.functionals, vectors=r.vectors)
        for r, w in zip(reps, weights)
    ]
    if kind == "rpq":
        estimate = lambda rep: quasinorm_rpq(
            rep, params["r"], params["p"], params["q"], trials=trials, seed=seed)
        nu_default = 2.0 ** (1.0 / params["r"] - 1.0)
    elif kind == "lorentz_lapreste":
        estimate = lambda rep: quasinorm_lorentz_lapreste(
            rep, params["r"], params["s"], params["p"], trials=trials, seed=seed)
        nu_default = 2.0 ** (1.0 / params["r"] + 1.0 / params["s"] - 1.0)
    else:
        raise ValueError(f"unknown quasinorm kind {kind!r}")
    nu = nu_default if nu is None else float(nu)
    if not (nu >= 1.0 and math.isfinite(nu)):
        raise ValueError(f"triangle constant nu must be finite and >= 1, got {nu}")

    per_block = [estimate(r).value for r in scaled]
    bound = float(sum(nu ** (k + 1) * e for k, e in enumerate(per_block)))
    lhs = estimate(concatenate_reps(scaled)).value
    # 1e-12 slack absorbs summation-order rounding in the exactly-additive cases
    return SummedBoundReport(
        lhs_estimate=lhs, bound=bound, nu=nu, per_block=per_block,
        holds=lhs <= bound * (1.0 + 1e-12),
    )
