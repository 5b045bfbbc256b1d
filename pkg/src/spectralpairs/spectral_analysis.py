"""Evidence for spectral and Parseval spectral pairs.

Completeness of an exponential family cannot be decided from a finite
truncation, so nothing here returns a bare "is a spectral pair" boolean.
Instead, :func:`pair_verdict` reports Gram off-diagonal maxima and Parseval
deficits ``1 - S_m(t)`` at probe frequencies.
"""
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .measures import TWO_PI, fourier_transform

ORTHOGONAL = "orthogonal-evidence"
NON_ORTHOGONAL = "non-orthogonal"
INCONCLUSIVE = "inconclusive"

DEFAULT_PROBES = (0.1, 0.3, 0.5, 0.7, 0.9)


@dataclass(frozen=True, eq=False)
class GramMatrix:
    frequencies: np.ndarray
    entries: np.ndarray
    convention: float

    def off_diagonal(self):
        off = np.abs(self.entries).copy()
        np.fill_diagonal(off, 0.0)
        return off


class OrthogonalityResult(NamedTuple):
    passed: bool
    max_off_diagonal: float
    witness: Optional[tuple]


@dataclass
class PairReport:
    max_off_diagonal: float
    witness: Optional[tuple]
    witness_value: Optional[float]
    level: Optional[int]
    size: int
    convention: float
    probes: list
    sums: list
    deficits: list
    verdict: str
    profile: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "max_off_diagonal": self.max_off_diagonal,
            "witness": None if self.witness is None else list(self.witness),
            "witness_value": self.witness_value,
            "level": self.level,
            "size": self.size,
            "convention": self.convention,
            "probes": list(self.probes),
            "parseval_sums": list(self.sums),
            "deficits": list(self.deficits),
            "profile": {str(k): v for k, v in self.profile.items()},
        }


def _require_normalized(measure):
    if abs(measure.total_mass - 1.0) > 1e-12:
        raise ValueError(f"measure must be normalised, total mass is {measure.total_mass!r}")


def gram_matrix(measure, spectrum, c=TWO_PI, cfg=None):
    """Gram matrix ``G[i, j] = nu_hat(c (lambda_i - lambda_j))``.

    The upper triangle is evaluated and mirrored, so the result is Hermitian
    with the total mass on the diagonal by construction.
    """
    _require_normalized(measure)
    lam = spectrum.elements
    n = len(spectrum)
    iu, ju = np.triu_indices(n, k=1)
    G = np.empty((n, n), dtype=complex)
    np.fill_diagonal(G, measure.total_mass)
    if iu.size:
        diff = lam[iu] - lam[ju]
        vals = np.asarray(fourier_transform(measure, diff, cfg, convention=c)).reshape(-1)
        G[iu, ju] = vals
        G[ju, iu] = np.conj(vals)
    return GramMatrix(lam, G, c)


def orthogonality_test(gram, tol=1e-8):
    """All off-diagonal magnitudes below ``tol``; otherwise the worst pair."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    off = gram.off_diagonal()
    if off.size <= 1:
        return OrthogonalityResult(True, 0.0, None)
    i, j = np.unravel_index(np.argmax(off), off.shape)
    worst = float(off[i, j])
    if worst < tol:
        return OrthogonalityResult(True, worst, None)
    i, j = sorted((int(i), int(j)))
    lam = gram.frequencies
    return OrthogonalityResult(False, worst, (lam[i].tolist(), lam[j].tolist()))


def parseval_sum(measure, spectrum, t, c=TWO_PI, cfg=None):
    """``sum_lambda |nu_hat(c (t - lambda))|^2`` for the exponential ``e_t``."""
    _require_normalized(measure)
    diff = np.asarray(t, dtype=float) - np.asarray(spectrum.elements, dtype=float)
    vals = np.asarray(fourier_transform(measure, diff, cfg, convention=c)).reshape(-1)
    return math.fsum(np.abs(vals) ** 2)


def parseval_profile(measure, spectrum, probes, levels, c=TWO_PI, cfg=None):
    """``{probe: [S_m(probe) for m in levels]}`` for a digit-generated spectrum."""
    return {
        t: [parseval_sum(measure, spectrum.at_level(m), t, c, cfg) for m in levels]
        for t in probes
    }


def pair_verdict(measure, spectrum, probes=DEFAULT_PROBES, c=TWO_PI, cfg=None, tol=1e-8,
                 witness_tol=1e-6, profile_levels=None):
    """Aggregate Gram and Parseval evidence for ``(measure, spectrum)``.

    The verdict is ``orthogonal-evidence`` when every off-diagonal Gram entry
    is below ``tol``, ``non-orthogonal`` when some entry exceeds
    ``witness_tol`` (the pair is returned as the witness) and ``inconclusive``
    in between. Parseval deficits are reported, never asserted.
    """
    probes = list(probes)
    if not probes:
        raise ValueError("at least one probe frequency is required")
    gram = gram_matrix(measure, spectrum, c, cfg)
    orth = orthogonality_test(gram, tol)
    witness, witness_value = None, None
    if orth.passed:
        verdict = ORTHOGONAL
    elif orth.max_off_diagonal > witness_tol:
        verdict = NON_ORTHOGONAL
        witness, witness_value = orth.witness, orth.max_off_diagonal
    else:
        verdict = INCONCLUSIVE
        witness = orth.witness
    sums = [parseval_sum(measure, spectrum, t, c, cfg) for t in probes]
    profile = {}
    if profile_levels is not None and spectrum.is_digit_set:
        profile = parseval_profile(measure, spectrum, probes, profile_levels, c, cfg)
    return PairReport(
        max_off_diagonal=orth.max_off_diagonal,
        witness=witness,
        witness_value=witness_value,
        level=spectrum.level,
        size=len(spectrum),
        convention=c,
        probes=probes,
        sums=sums,
        deficits=[1.0 - s for s in sums],
        verdict=verdict,
        profile=profile,
    )


class NotParsevalError(ValueError):
    def __init__(self, defect):
        super().__init__(f"vectors do not form a Parseval frame (frame operator defect {defect:.3e})")
        self.defect = defect


@dataclass(frozen=True)
class FrameNormReport:
    is_onb: bool
    norms: np.ndarray
    parseval_defect: float
    orthonormal_direct: bool
    consistent: bool


def parseval_frame_norm_lemma_check(vectors, tol=1e-10):
    """Check the norm lemma for a finite Parseval frame.

    ``vectors`` holds one frame vector per row. The frame must satisfy
    ``sum_j |<phi_j, h>|^2 = |h|^2``, i.e. its frame operator is the identity.
    Every vector then has norm at most one, and the frame is an orthonormal
    basis exactly when all norms equal one. The norm criterion is compared
    against the direct check (pairwise orthogonality, no zero vectors).

    Raises
    ------
    NotParsevalError
        If the frame operator differs from the identity by more than ``tol``.
    """
    phi = np.atleast_2d(np.asarray(vectors, dtype=complex))
    d = phi.shape[1]
    frame_op = phi.T @ phi.conj()
    defect = float(np.max(np.abs(frame_op - np.eye(d))))
    if defect > tol:
        raise NotParsevalError(defect)
    norms = np.linalg.norm(phi, axis=1)
    if np.any(norms > 1.0 + tol):
        raise AssertionError(f"Parseval frame vector with norm {norms.max()!r} > 1")
    by_norms = bool(np.all(np.abs(norms - 1.0) <= tol))
    gram = phi.conj() @ phi.T
    direct = bool(np.max(np.abs(gram - np.eye(phi.shape[0]))) <= tol)
    return FrameNormReport(by_norms, norms, defect, direct, by_norms == direct)
