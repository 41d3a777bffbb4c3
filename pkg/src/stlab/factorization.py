"""Factorization diagrams behind the trace identities.

A nuclear representation factors through sequence space as V . Delta . A
(coordinate functionals, diagonal coefficients, synthesis), with the
inclusion step pure bookkeeping.  Swapping the outer factors yields the
small operator S = Delta . A . V whose trace transports the nuclear trace,
and the AB/BA check verifies equality of nonzero spectra for arbitrary
shape-compatible pairs.

At finite rank the diagram identities are the testable content: the
nilpotent trace-one operator that the infinite-dimensional argument
produces cannot exist here, so it is not modeled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .nuclear import NuclearRep, assemble
from .spectral import eigenvalues, sort_eigenvalues


@dataclass(frozen=True)
class LpFactorization:
    """T = V . Delta . A through the middle sequence space with exponent p.

    Per-factor norm bounds: a_norm is exact for the map into the sup-normed
    coordinates, delta_norm is exact for the diagonal into the summable
    coordinates, the inclusion has norm j_norm = 1, and v_norm_upper bounds
    the synthesis map out of the p-normed coordinates by Hoelder.
    gamma_upper is their product, an upper bound on any factorization norm
    obtainable from this representation.
    """

    a_matrix: np.ndarray     # (N, d), rows are functionals
    delta: np.ndarray        # (N,), diagonal coefficients
    v_matrix: np.ndarray     # (d, N), columns are vectors
    p: float
    a_norm: float
    delta_norm: float
    j_norm: float
    v_norm_upper: float
    gamma_upper: float


@dataclass(frozen=True)
class SpectrumComparisonReport:
    """Matched nonzero-spectra comparison; serializes to {max_diff, matched_count, pass}."""

    max_diff: float
    matched_count: int
    passed: bool
    threshold: float

    def to_json(self) -> dict:
        return {
            "max_diff": self.max_diff,
            "matched_count": self.matched_count,
            "pass": self.passed,
        }


def build_diagonal_factorization(rep: NuclearRep, p: float) -> LpFactorization:
    """Factor assemble(rep) as V . Delta . A with recorded norm bounds."""
    if not (1 <= p <= 2):
        raise ValueError(f"p must lie in [1, 2], got {p}")
    a_matrix = rep.functionals.copy()
    delta = rep.coefficients.copy()
    v_matrix = rep.vectors.T.copy()
    func_norms = np.linalg.norm(rep.functionals, axis=1)
    vec_norms = np.linalg.norm(rep.vectors, axis=1)
    a_norm = float(np.max(func_norms))
    delta_norm = float(np.sum(np.abs(delta)))
    if p == 1:
        v_norm_upper = float(np.max(vec_norms))
    else:
        p_conj = p / (p - 1.0)
        v_norm_upper = float(np.sum(vec_norms ** p_conj) ** (1.0 / p_conj))
    gamma_upper = a_norm * delta_norm * v_norm_upper
    return LpFactorization(
        a_matrix=a_matrix, delta=delta, v_matrix=v_matrix, p=p,
        a_norm=a_norm, delta_norm=delta_norm, j_norm=1.0,
        v_norm_upper=v_norm_upper, gamma_upper=gamma_upper,
    )


def factorization_product(f: LpFactorization) -> np.ndarray:
    """V . Delta . A, the d x d matrix the diagram composes to."""
    return f.v_matrix @ (f.delta[:, None] * f.a_matrix)


def build_S(f: LpFactorization) -> np.ndarray:
    """The swapped composition Delta . A . V on the middle space (N x N).

    Its trace is sum_k delta_k <x'_k, x_k>, i.e. the nuclear trace of the
    representation the factorization came from.
    """
    return (f.delta[:, None] * f.a_matrix) @ f.v_matrix


def match_spectra(first, second) -> tuple[float, int]:
    """Max pairwise distance under the best multiset matching of two eigenvalue lists.

    Lists of unequal length are padded with zeros, so surplus eigenvalues
    count with their full modulus.  Matching minimizes total distance via
    the assignment solver, which is robust to modulus ties that plain
    sorted-order comparison would mispair.
    """
    x = sort_eigenvalues(first)
    y = sort_eigenvalues(second)
    n = max(x.size, y.size)
    if n == 0:
        return 0.0, 0
    xp = np.zeros(n, dtype=complex)
    yp = np.zeros(n, dtype=complex)
    xp[:x.size] = x
    yp[:y.size] = y
    cost = np.abs(xp[:, None] - yp[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols])), int(n)


def ab_ba_spectrum_check(a, b, tolerance: float = 1e-7) -> SpectrumComparisonReport:
    """Nonzero spectra of A @ B and B @ A agree up to the tolerance.

    Eigenvalues with modulus below 1e-9 * max(1, ||A|| ||B||) are treated
    as zero and stripped before matching.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[0] != b.shape[1] or a.shape[1] != b.shape[0]:
        raise ValueError(f"incompatible shapes for AB/BA: {a.shape} and {b.shape}")
    scale = float(np.linalg.norm(a, 2) * np.linalg.norm(b, 2))
    threshold = 1e-9 * max(1.0, scale)
    spec_ab = eigenvalues(a @ b).eigenvalues
    spec_ba = eigenvalues(b @ a).eigenvalues
    nz_ab = spec_ab[np.abs(spec_ab) > threshold]
    nz_ba = spec_ba[np.abs(spec_ba) > threshold]
    max_diff, matched = match_spectra(nz_ab, nz_ba)
    return SpectrumComparisonReport(
        max_diff=max_diff, matched_count=matched,
        passed=max_diff <= tolerance, threshold=threshold,
    )
