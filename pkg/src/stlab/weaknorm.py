"""Weak l_q norms of finite vector families in Euclidean d-space.

A family is an (N, d) array whose rows are the vectors.  The functional
pairing is bilinear (no conjugation), matching the duality used by the
nuclear-representation machinery; the ambient norm is Euclidean, which
makes the q = 2 value exactly the largest singular value and the q = inf
value the largest row norm.  For other q only certified lower bounds are
produced, never a claimed supremum.
"""

from __future__ import annotations

import math

import numpy as np

_ASCENT_TOL = 1e-10
_ASCENT_MAX_ITER = 200
_MAX_REFINED_FAMILY_STARTS = 8


def as_family(vectors) -> np.ndarray:
    """Validate a vector family and return it as an (N, d) array."""
    v = np.asarray(vectors)
    if v.ndim == 1:
        v = v.reshape(1, -1)
    if v.ndim != 2:
        raise ValueError(f"expected an (N, d) family of vectors, got shape {v.shape}")
    if v.shape[0] == 0:
        raise ValueError("vector family must be nonempty")
    if v.shape[1] < 1:
        raise ValueError("vector dimension must be at least 1")
    if not np.all(np.isfinite(v)):
        raise ValueError("family entries must be finite")
    if np.issubdtype(v.dtype, np.complexfloating):
        return v.astype(complex)
    return v.astype(float)


def weak_norm_inf(vectors) -> float:
    """sup_i ||x_i||: the largest Euclidean row norm."""
    fam = as_family(vectors)
    return float(np.max(np.linalg.norm(fam, axis=1)))


def weak_norm_2(vectors) -> float:
    """Exact weak l_2 norm: the largest singular value of the family matrix."""
    fam = as_family(vectors)
    return float(np.linalg.svd(fam, compute_uv=False)[0])


def weak_norm_q_estimate(vectors, q: float, trials: int = 32, seed=0):
    """Certified lower bound on the weak l_q norm, with its witness direction.

    Requires finite q >= 2.  The objective (sum_i |<u, x_i>|^q)^(1/q) is
    evaluated at the q = 2 maximizer, at each normalized family member and
    at `trials` seeded random unit directions; the most promising starts
    are refined by normalized-gradient ascent until the relative gain drops
    below 1e-10.  Returns (value, witness) where value is the objective at
    witness, so the bound is sound by construction.
    """
    if not (q >= 2 and math.isfinite(q)):
        raise ValueError(f"q must be finite and >= 2, got {q}")
    return _weak_norm_lower(as_family(vectors), q, trials, seed)


def _objective(fam: np.ndarray, q: float, u: np.ndarray) -> float:
    s = np.abs(fam @ u)
    if q == 2:
        return float(np.linalg.norm(s))
    top = float(np.max(s))
    if top == 0.0:
        return 0.0
    return top * float(np.sum((s / top) ** q)) ** (1.0 / q)


def _weak_norm_lower(fam: np.ndarray, q: float, trials: int, seed) -> tuple[float, np.ndarray]:
    """Best-found lower bound for any q > 0 (ascent only ever accepts improvements)."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    n, d = fam.shape
    complex_family = np.iscomplexobj(fam)

    _, _, vh = np.linalg.svd(fam, full_matrices=False)
    refine = [np.conj(vh[0])]
    row_norms = np.linalg.norm(fam, axis=1)
    members = [(row_norms[i], np.conj(fam[i]) / row_norms[i]) for i in range(n) if row_norms[i] > 0]
    members.sort(key=lambda t: -t[0])
    refine.extend(u for _, u in members[:_MAX_REFINED_FAMILY_STARTS])
    plain = [u for _, u in members[_MAX_REFINED_FAMILY_STARTS:]]

    for t in range(trials):
        rng = np.random.default_rng([_seed_entropy(seed), t])
        u = rng.standard_normal(d)
        if complex_family:
            u = u + 1j * rng.standard_normal(d)
        nrm = np.linalg.norm(u)
        refine.append(u / nrm if nrm > 0 else _basis_vector(d, 0, complex_family))

    best_val, best_u = -1.0, None
    for u0 in plain:
        val = _objective(fam, q, u0)
        if val > best_val:
            best_val, best_u = val, u0
    for u0 in refine:
        val, u = _ascend(fam, q, u0)
        if val > best_val:
            best_val, best_u = val, u
    return best_val, best_u


def _ascend(fam: np.ndarray, q: float, u: np.ndarray) -> tuple[float, np.ndarray]:
    val = _objective(fam, q, u)
    for _ in range(_ASCENT_MAX_ITER):
        s = fam @ u
        mag = np.abs(s)
        # gradient of sum |<u, x_i>|^q restricted to the unit sphere
        weights = np.where(mag > 0, mag ** (q - 1.0), 0.0)
        phase = np.where(mag > 0, s / np.where(mag > 0, mag, 1.0), 0.0)
        g = np.conj(fam).T @ (weights * phase)
        gnorm = np.linalg.norm(g)
        if gnorm == 0.0:
            break
        u_new = g / gnorm
        val_new = _objective(fam, q, u_new)
        if val_new <= val * (1.0 + _ASCENT_TOL):
            if val_new > val:
                val, u = val_new, u_new
            break
        val, u = val_new, u_new
    return val, u


def _basis_vector(d: int, i: int, complex_family: bool) -> np.ndarray:
    e = np.zeros(d, dtype=complex if complex_family else float)
    e[i] = 1.0
    return e


def _seed_entropy(seed) -> int:
    if isinstance(seed, (int, np.integer)):
        return int(seed)
    return int(np.random.SeedSequence(seed).generate_state(1)[0])
