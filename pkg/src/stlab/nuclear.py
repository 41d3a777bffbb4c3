"""Nuclear representations and their representation-wise quasinorm bounds.

A representation is a triple (coefficients, functionals, vectors) assembling
to the matrix sum_k lam_k x_k (x'_k)^T, with the functional pairing taken
bilinearly.  The quasinorms defined as infima over all representations are
reported here as per-representation upper bounds; the `certified` flag marks
the cases where every weak-norm factor is computed exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lorentz import LorentzParams, as_sequence, lorentz_quasinorm
from .weaknorm import _weak_norm_lower, as_family, weak_norm_2, weak_norm_inf


@dataclass(frozen=True)
class NuclearRep:
    """Series representation sum_k lam_k x'_k (.) x_k at finite rank N in dimension d."""

    coefficients: np.ndarray  # (N,)
    functionals: np.ndarray   # (N, d), rows are the x'_k
    vectors: np.ndarray       # (N, d), rows are the x_k

    def __post_init__(self):
        lam = as_sequence(self.coefficients)
        fam_f = as_family(self.functionals)
        fam_v = as_family(self.vectors)
        if not (lam.shape[0] == fam_f.shape[0] == fam_v.shape[0]):
            raise ValueError(
                f"rank mismatch: {lam.shape[0]} coefficients, "
                f"{fam_f.shape[0]} functionals, {fam_v.shape[0]} vectors"
            )
        if fam_f.shape[1] != fam_v.shape[1]:
            raise ValueError(
                f"dimension mismatch: functionals in dim {fam_f.shape[1]}, "
                f"vectors in dim {fam_v.shape[1]}"
            )
        object.__setattr__(self, "coefficients", lam)
        object.__setattr__(self, "functionals", fam_f)
        object.__setattr__(self, "vectors", fam_v)

    @property
    def rank(self) -> int:
        return self.coefficients.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class QuasinormEstimate:
    """Representation-wise upper bound on a nuclear quasinorm.

    ambient records that weak-norm factors are computed against the
    Euclidean pairing, standing in for the sequence-space duals.
    """

    value: float
    kind: str                      # "rpq" or "lorentz_lapreste"
    parameters: dict = field(default_factory=dict)
    certified: bool = False
    ambient: str = "euclidean-l2"


def assemble(rep: NuclearRep) -> np.ndarray:
    """Dense d x d matrix of the representation: sum_k lam_k x_k (x'_k)^T."""
    lam = rep.coefficients
    return (rep.vectors.T * lam) @ rep.functionals


def nuclear_trace(rep: NuclearRep) -> complex:
    """sum_k lam_k <x'_k, x_k> (bilinear pairing); equals the matrix trace."""
    pairings = np.sum(rep.functionals * rep.vectors, axis=1)
    return complex(np.sum(rep.coefficients * pairings))


def quasinorm_rpq(rep: NuclearRep, r: float, p: float, q: float,
                  trials: int = 32, seed=0) -> QuasinormEstimate:
    """Upper bound ||lam||_r * eps_p(functionals) * eps_q(vectors).

    Exponents: 0 < r <= 1; p, q in (0, inf].  The bound is certified only
    when both weak-norm factors are exact, i.e. p, q in {2, inf}.
    """
    if not (0 < r <= 1):
        raise ValueError(f"r must lie in (0, 1], got {r}")
    for name, e in (("p", p), ("q", q)):
        if not (e > 0):
            raise ValueError(f"{name} must be positive or inf, got {e}")
    lam_norm = lorentz_quasinorm(rep.coefficients, LorentzParams(r, r))
    eps_f, exact_f = _weak_norm(rep.functionals, p, trials, seed)
    eps_v, exact_v = _weak_norm(rep.vectors, q, trials, seed)
    return QuasinormEstimate(
        value=lam_norm * eps_f * eps_v,
        kind="rpq",
        parameters={"r": r, "p": p, "q": q},
        certified=exact_f and exact_v,
    )


def quasinorm_lorentz_lapreste(rep: NuclearRep, r: float, s: float, p: float,
                               trials: int = 32, seed=0) -> QuasinormEstimate:
    """Upper bound ||lam||_(r,s) * eps_inf(functionals) * eps_p'(vectors).

    Exponents: 0 < r, s <= 1 and 1 <= p <= 2, with p' the conjugate exponent
    (p' = inf at p = 1).  Certified iff p' in {2, inf}, i.e. p in {1, 2}.
    """
    if not (0 < r <= 1 and 0 < s <= 1):
        raise ValueError(f"r, s must lie in (0, 1], got r={r}, s={s}")
    if not (1 <= p <= 2):
        raise ValueError(f"p must lie in [1, 2], got {p}")
    p_conj = math.inf if p == 1 else p / (p - 1.0)
    lam_norm = lorentz_quasinorm(rep.coefficients, LorentzParams(r, s))
    eps_f = weak_norm_inf(rep.functionals)
    eps_v, exact_v = _weak_norm(rep.vectors, p_conj, trials, seed)
    return QuasinormEstimate(
        value=lam_norm * eps_f * eps_v,
        kind="lorentz_lapreste",
        parameters={"r": r, "s": s, "p": p},
        certified=exact_v,
    )


def _weak_norm(fam: np.ndarray, q: float, trials: int, seed) -> tuple[float, bool]:
    if math.isinf(q):
        return weak_norm_inf(fam), True
    if q == 2:
        return weak_norm_2(fam), True
    value, _ = _weak_norm_lower(as_family(fam), q, trials, seed)
    return value, False


def lorentz_decay_coefficients(n: int, r: float, s: float) -> np.ndarray:
    """Model decay k^(-1/r) (1 + log k)^(-(1 + 1/s)) with finite (r, s)-norm.

    The logarithmic correction exponent 1 + 1/s keeps the weighted series
    summable with margin, so the norm stays bounded as n grows.
    """
    k = np.arange(1, n + 1, dtype=float)
    return k ** (-1.0 / r) * (1.0 + np.log(k)) ** (-(1.0 + 1.0 / s))


def random_rep(d: int, n: int, decay, seed) -> NuclearRep:
    """Seeded random representation with prescribed coefficient decay.

    decay is either an (r, s) pair selecting lorentz_decay_coefficients or a
    plain exponent t giving lam_k = k^(-t).  Functionals and vectors are
    independent uniform unit vectors.  Deterministic given the seed.
    """
    if d < 1 or n < 1:
        raise ValueError(f"d and n must be at least 1, got d={d}, n={n}")
    rng = np.random.default_rng(seed)
    if isinstance(decay, tuple):
        r, s = decay
        lam = lorentz_decay_coefficients(n, r, s)
    else:
        k = np.arange(1, n + 1, dtype=float)
        lam = k ** (-float(decay))
    functionals = rng.standard_normal((n, d))
    vectors = rng.standard_normal((n, d))
    functionals /= np.linalg.norm(functionals, axis=1, keepdims=True)
    vectors /= np.linalg.norm(vectors, axis=1, keepdims=True)
    return NuclearRep(coefficients=lam, functionals=functionals, vectors=vectors)


def rep_to_json(rep: NuclearRep) -> dict:
    """JSON form {lambda, functionals, vectors} with complex scalars as [re, im]."""
    return {
        "lambda": [_scalar_to_json(x) for x in rep.coefficients],
        "functionals": [[_scalar_to_json(x) for x in row] for row in rep.functionals],
        "vectors": [[_scalar_to_json(x) for x in row] for row in rep.vectors],
    }


def rep_from_json(payload: dict) -> NuclearRep:
    return NuclearRep(
        coefficients=np.array([_scalar_from_json(x) for x in payload["lambda"]]),
        functionals=np.array([[_scalar_from_json(x) for x in row]
                              for row in payload["functionals"]]),
        vectors=np.array([[_scalar_from_json(x) for x in row]
                          for row in payload["vectors"]]),
    )


def _scalar_to_json(x):
    x = complex(x)
    if x.imag == 0.0:
        return x.real
    return [x.real, x.imag]


def _scalar_from_json(x):
    if isinstance(x, (list, tuple)):
        return complex(x[0], x[1])
    return float(x)
