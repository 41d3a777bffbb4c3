"""Finite Lorentz sequence spaces.

Decreasing rearrangement, the two-exponent quasinorms (including the
sup-type q = inf case), and a constructive splitting of a summable-decay
sequence into an absolutely summable part times a weakly decaying part.
All sequences are finite truncations; decay-class membership is expressed
through the monotonicity certificates returned by the splitting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

MAX_SEQUENCE_LENGTH = 1_048_576


class QuasinormRangeError(ArithmeticError):
    """Quasinorm value falls outside double range (would be Inf or flush to 0)."""


@dataclass(frozen=True)
class LorentzParams:
    """Exponent pair (p, q) of a Lorentz space; q = math.inf selects the sup form."""

    p: float
    q: float

    def __post_init__(self):
        if not (self.p > 0 and math.isfinite(self.p)):
            raise ValueError(f"p must be a finite positive real, got {self.p}")
        if not (self.q > 0):
            raise ValueError(f"q must be positive or inf, got {self.q}")


@dataclass(frozen=True)
class FactorPair:
    """Result of factor_l1_lqinf: elementwise alpha * beta reproduces the input.

    alpha carries the signs/phases and is absolutely summable with the
    certified bound; beta is nonnegative with (beta*_k k^(1/q)) nonincreasing.
    """

    alpha: np.ndarray
    beta: np.ndarray
    q: float


def as_sequence(entries) -> np.ndarray:
    """Validate and return a finite scalar sequence as a 1-d array."""
    a = np.asarray(entries)
    if a.ndim == 0:
        a = a.reshape(1)
    if a.ndim != 1:
        raise ValueError(f"expected a 1-d sequence, got shape {a.shape}")
    if a.size > MAX_SEQUENCE_LENGTH:
        raise ValueError(f"sequence length {a.size} exceeds {MAX_SEQUENCE_LENGTH}")
    if not np.issubdtype(a.dtype, np.number):
        raise ValueError(f"sequence entries must be numbers, got dtype {a.dtype}")
    if a.size and not np.all(np.isfinite(a)):
        raise ValueError("sequence entries must be finite (no NaN/Inf)")
    if np.issubdtype(a.dtype, np.complexfloating):
        return a.astype(complex)
    return a.astype(float)


def decreasing_rearrangement(seq) -> np.ndarray:
    """Moduli of the entries sorted nonincreasing (empty input passes through)."""
    a = as_sequence(seq)
    if a.size == 0:
        return np.empty(0)
    return np.sort(np.abs(a), kind="stable")[::-1].copy()


def lorentz_quasinorm(seq, params: LorentzParams) -> float:
    """Two-exponent quasinorm of a finite sequence.

    For finite q this is (sum_n a*_n^q n^(q/p-1))^(1/q); for q = inf it is
    sup_n a*_n n^(1/p).  Terms are accumulated in log space so that large
    exponents q/p - 1 cannot silently overflow; a value outside double
    range raises QuasinormRangeError instead of returning Inf or 0.
    """
    a = decreasing_rearrangement(seq)
    if a.size == 0 or not np.any(a > 0):
        return 0.0
    n = np.arange(1, a.size + 1, dtype=float)
    with np.errstate(divide="ignore"):
        log_a = np.log(a)
    if math.isinf(params.q):
        log_value = float(np.max(log_a + np.log(n) / params.p))
    else:
        q = params.q
        terms = q * log_a + (q / params.p - 1.0) * np.log(n)
        log_value = float(logsumexp(terms)) / q
    value = math.exp(log_value) if log_value < 710.0 else math.inf
    if math.isinf(value):
        raise QuasinormRangeError(
            f"quasinorm overflows double range (log value {log_value:.3f})"
        )
    if value == 0.0:
        raise QuasinormRangeError(
            f"quasinorm of a nonzero sequence underflows to zero (log value {log_value:.3f})"
        )
    return value


def factor_l1_lqinf(d, q: float) -> FactorPair:
    """Split d into alpha * beta with alpha summable and beta weakly q-decaying.

    Working on the decreasing rearrangement d*, set a_k = d*_k k^(1/q),
    S = sum a_k, tail r_k = sum_{j>=k} a_j and eps_k = sqrt(r_k / S); then
    alpha_k = a_k / eps_k and beta_k = eps_k / k^(1/q), un-permuted so that
    alpha_k beta_k = d_k entrywise with signs/phases carried by alpha.
    The tail-square-root choice of eps gives sum |alpha_k| <= 2 S, and
    (beta*_k k^(1/q)) = eps is nonincreasing by construction.

    Reconstruction is exact to rounding: alpha is nudged along the float
    grid so alpha_k beta_k lands on d_k bitwise wherever a representable
    product exists, and within one ulp otherwise (the product grid has
    spacing up to two ulps of d_k, so an exact preimage can be missing).
    """
    d_arr = as_sequence(d)
    if not (q > 0 and math.isfinite(q)):
        raise ValueError(f"q must be a finite positive real, got {q}")
    if d_arr.size == 0 or not np.any(d_arr != 0):
        raise ValueError("cannot factor the all-zero sequence")

    moduli = np.abs(d_arr)
    perm = np.argsort(-moduli, kind="stable")  # ties keep original index order
    dstar = moduli[perm]
    k = np.arange(1, d_arr.size + 1, dtype=float)
    weights = k ** (1.0 / q)
    a = dstar * weights
    if not np.all(np.isfinite(a)):
        raise QuasinormRangeError("k^(1/q) weights overflow double range")

    tails = np.cumsum(a[::-1])[::-1]
    total = float(tails[0])
    if not math.isfinite(total):
        raise QuasinormRangeError("weighted tail sums overflow double range")
    eps = np.sqrt(tails / total)
    eps = np.minimum.accumulate(eps)  # analytically nonincreasing; pin it in floats
    beta_sorted = np.where(eps > 0, eps / weights, 0.0)
    _pin_certificate_monotone(beta_sorted, weights)

    beta = np.empty_like(beta_sorted)
    beta[perm] = beta_sorted
    alpha = np.zeros_like(d_arr)
    nz = beta > 0
    alpha[nz] = d_arr[nz] / beta[nz]
    _nudge_products_exact(alpha, beta, d_arr)
    return FactorPair(alpha=alpha, beta=beta, q=q)


def _pin_certificate_monotone(beta_sorted: np.ndarray, weights: np.ndarray) -> None:
    """Nudge beta down by ulps where rounding broke monotonicity of beta_k * w_k."""
    m = beta_sorted * weights
    for i in range(1, beta_sorted.size):
        while m[i] > m[i - 1]:
            beta_sorted[i] = np.nextafter(beta_sorted[i], 0.0)
            m[i] = beta_sorted[i] * weights[i]


def _nudge_products_exact(alpha: np.ndarray, beta: np.ndarray, target: np.ndarray) -> None:
    """Walk alpha along the float grid so alpha * beta best reproduces target.

    beta is real positive, so real and imaginary components decouple into
    independent scalar products; each is stepped toward the target, keeping
    the closest product (bitwise equal whenever the grid contains it).
    """
    if np.iscomplexobj(alpha):
        re = np.ascontiguousarray(alpha.real)
        im = np.ascontiguousarray(alpha.imag)
        _nudge_real(re, beta, np.ascontiguousarray(target.real))
        _nudge_real(im, beta, np.ascontiguousarray(target.imag))
        alpha[:] = re + 1j * im
    else:
        _nudge_real(alpha, beta, target)


def _nudge_real(x: np.ndarray, b: np.ndarray, t: np.ndarray) -> None:
    live = (b > 0) & (x * b != t)
    if not np.any(live):
        return
    idx = np.flatnonzero(live)
    best_x = x[idx].copy()
    best_err = np.abs(best_x * b[idx] - t[idx])
    cur = x[idx].copy()
    for _ in range(48):
        prod = cur * b[idx]
        need_up = prod < t[idx]
        cur = np.nextafter(cur, np.where(need_up, np.inf, -np.inf))
        err = np.abs(cur * b[idx] - t[idx])
        better = err < best_err
        best_x[better] = cur[better]
        best_err[better] = err[better]
        if not np.any(best_err > 0):
            break
    x[idx] = best_x
