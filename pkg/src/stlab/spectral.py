"""Dense eigensolving at desk scale and Lorentz norms of eigenvalue lists.

Spectra are full eigenvalue multisets (algebraic multiplicity), sorted by
nonincreasing modulus with ties broken by ascending phase so that spectra
are comparable as plain lists.  The solver is LAPACK-backed and satisfies
the usual backward-error contract; the truncation dimension travels with
every spectrum instead of any asymptotic claim.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lorentz import LorentzParams, lorentz_quasinorm

MAX_EIG_ORDER = 2048


class EigensolveError(RuntimeError):
    """Eigensolver failed to converge or returned an inconsistent spectrum."""


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicity, modulus-sorted, of a matrix of the given order."""

    eigenvalues: np.ndarray  # complex, len == order
    order: int

    def moduli(self) -> np.ndarray:
        return np.abs(self.eigenvalues)


def as_square_matrix(m) -> np.ndarray:
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    if np.issubdtype(a.dtype, np.complexfloating):
        return a.astype(complex)
    return a.astype(float)


def sort_eigenvalues(values) -> np.ndarray:
    """Modulus descending, ties by ascending phase."""
    v = np.asarray(values, dtype=complex)
    if v.size == 0:
        return v
    order = np.lexsort((np.angle(v), -np.abs(v)))
    return v[order]


def eigenvalues(m) -> Spectrum:
    """All eigenvalues of a dense matrix of order <= 2048, with multiplicity.

    Non-convergence surfaces as EigensolveError, never as a silently
    truncated list; the trace identity sum(mu) == tr(m) is verified against
    the backward-error budget before the spectrum is returned.
    """
    a = as_square_matrix(m)
    d = a.shape[0]
    if d > MAX_EIG_ORDER:
        raise ValueError(f"matrix order {d} exceeds the supported maximum {MAX_EIG_ORDER}")
    if d == 0:
        return Spectrum(eigenvalues=np.empty(0, dtype=complex), order=0)
    try:
        vals = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise EigensolveError(f"eigensolve did not converge for order {d}: {exc}") from exc
    vals = sort_eigenvalues(vals)
    scale = float(np.linalg.norm(a))
    if abs(np.sum(vals) - np.trace(a)) > 1e-8 * (1.0 + scale):
        raise EigensolveError(
            "computed spectrum violates the trace identity beyond the backward-error budget"
        )
    return Spectrum(eigenvalues=vals, order=d)


def spectral_trace(spectrum: Spectrum) -> complex:
    """Sum of all eigenvalues with multiplicity (0 for the empty spectrum)."""
    if spectrum.eigenvalues.size == 0:
        return 0j
    return complex(np.sum(spectrum.eigenvalues))


def spectrum_lorentz_norm(spectrum: Spectrum, params: LorentzParams) -> float:
    """Lorentz quasinorm of the modulus sequence of the spectrum."""
    if spectrum.eigenvalues.size == 0:
        return 0.0
    return lorentz_quasinorm(spectrum.moduli(), params)


def spectrum_to_json(spectrum: Spectrum) -> list:
    """JSON form: list of [re, im] pairs in the sorted order."""
    return [[float(z.real), float(z.imag)] for z in spectrum.eigenvalues]


def spectrum_from_json(payload) -> Spectrum:
    vals = np.array([complex(re, im) for re, im in payload], dtype=complex)
    return Spectrum(eigenvalues=sort_eigenvalues(vals), order=len(vals))
