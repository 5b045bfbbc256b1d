"""Kaczmarz expansions in ``L^2(nu)`` for measures on ``[0, 1]``.

With ``e_n(x) = exp(2 pi i n x)`` the Gramian is
``<e_n, e_j>_nu = nu_hat(2 pi (n - j))``, lower-triangular Toeplitz in the
one-sided index set ``n >= 0``. The auxiliary vectors

    g_0 = e_0,   g_n = e_n - sum_{j < n} nu_hat(n - j) g_j

have the form ``g_n = sum_j conj(alpha_{n-j}) e_j`` and form a Parseval frame.
Inner products are linear in the first slot, which forces
``conj(alpha)`` to be the power-series reciprocal of the moments
``nu_hat(2 pi n)``; equivalently ``alpha`` is the reciprocal of the conjugate
moments. Frame coefficients are then ``<f, g_n> = sum_j f_hat(j) alpha_{n-j}``
with ``f_hat(j) = <f, e_j>_nu``.
"""
import math
from dataclasses import dataclass

import numpy as np

from .measures import AtomicMeasure, expi_turns, integrate


@dataclass(frozen=True, eq=False)
class MomentSequence:
    """``nu_hat(2 pi n)`` for ``n = 0..N``; negative indices by conjugation."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).reshape(-1)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def N(self):
        return self.values.shape[0] - 1

    @property
    def total_mass(self):
        return self.values[0].real

    def __getitem__(self, n):
        if n < 0:
            return np.conj(self.values[-n])
        return self.values[n]

    def __len__(self):
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class AlphaSequence:
    values: np.ndarray

    def __len__(self):
        return self.values.shape[0]

    def __getitem__(self, n):
        return self.values[n]


@dataclass(frozen=True, eq=False)
class FrameSystem:
    """The alpha sequence together with the g-coefficient table.

    ``rows[n, j] = conj(alpha_{n-j})`` for ``j <= n`` and zero above the
    diagonal.
    """

    alpha: AlphaSequence
    rows: np.ndarray

    @property
    def N(self):
        return len(self.alpha) - 1

    @classmethod
    def from_alpha(cls, alpha):
        a = np.asarray(alpha.values)
        n = a.shape[0]
        i, j = np.tril_indices(n)
        rows = np.zeros((n, n), dtype=complex)
        rows[i, j] = np.conj(a[i - j])
        return cls(alpha, rows)

    @classmethod
    def from_moments(cls, moments, N=None):
        return cls.from_alpha(alpha_from_moments(moments, N))


def _as_moment_values(moments):
    if isinstance(moments, MomentSequence):
        return moments.values
    return np.asarray(moments, dtype=complex).reshape(-1)


def lower_toeplitz(first_column):
    """Lower-triangular Toeplitz matrix with the given first column."""
    c = np.asarray(first_column)
    n = c.shape[0]
    i, j = np.tril_indices(n)
    T = np.zeros((n, n), dtype=c.dtype)
    T[i, j] = c[i - j]
    return T


def reciprocal_series(c, N):
    """Coefficients of ``1 / sum_n c_n z^n`` up to ``z^N`` (requires ``c_0 = 1``)."""
    c = np.asarray(c, dtype=complex)
    out = np.zeros(N + 1, dtype=complex)
    out[0] = 1.0
    for n in range(1, N + 1):
        k = np.arange(1, n + 1)
        out[n] = -np.sum(c[k] * out[n - k])
    return out


def alpha_from_moments(moments, N=None):
    """The alpha sequence of the Kaczmarz frame, up to index ``N``.

    ``alpha`` is the reciprocal of the conjugate moment series:
    ``alpha_0 = 1`` and ``alpha_n = -sum_{k=1}^n conj(nu_hat(k)) alpha_{n-k}``.
    For real moments (symmetric measures) the conjugation is invisible.
    """
    mu = _as_moment_values(moments)
    N = mu.shape[0] - 1 if N is None else N
    if mu.shape[0] < N + 1:
        raise ValueError(f"need {N + 1} moments, got {mu.shape[0]}")
    if abs(mu[0] - 1.0) > 1e-12:
        raise ValueError(f"moment sequence must start with 1 (normalised measure), got {mu[0]!r}")
    return AlphaSequence(reciprocal_series(np.conj(mu[: N + 1]), N))


def reciprocal_defect(moments, alpha):
    """``max_n |sum_{j<=n} conj(nu_hat(n-j)) alpha_j - delta_{n,0}|``."""
    a = np.asarray(alpha.values if isinstance(alpha, AlphaSequence) else alpha)
    mu = np.conj(_as_moment_values(moments)[: a.shape[0]])
    prod = lower_toeplitz(mu) @ lower_toeplitz(a)
    return float(np.max(np.abs(prod - np.eye(a.shape[0]))))


def g_sequence(frame, n):
    """Coefficients of ``g_n`` on ``e_0..e_n``: ``conj(alpha_{n-j})``."""
    if not 0 <= n <= frame.N:
        raise ValueError(f"n must lie in 0..{frame.N}")
    return frame.rows[n, : n + 1].copy()


def g_sequence_recursive(moments, N):
    """The g-table built literally from ``g_n = e_n - sum_{j<n} nu_hat(n-j) g_j``."""
    mu = _as_moment_values(moments)
    rows = np.zeros((N + 1, N + 1), dtype=complex)
    for n in range(N + 1):
        rows[n, n] = 1.0
        for j in range(n):
            rows[n] -= mu[n - j] * rows[j]
    return rows


def frame_coefficients(f_moments, frame, N=None):
    """``c_n = sum_{j<=n} f_hat(j) alpha_{n-j}`` for ``n = 0..N``."""
    fh = np.asarray(f_moments, dtype=complex).reshape(-1)
    N = frame.N if N is None else N
    if fh.shape[0] < N + 1 or frame.N < N:
        raise ValueError(f"need f_hat and alpha up to index {N}")
    return lower_toeplitz(np.asarray(frame.alpha.values[: N + 1])) @ fh[: N + 1]


def reconstruct(coefficients, x, N=None):
    """Partial sum ``sum_{n<=N} c_n exp(2 pi i n x)``; ``x`` scalar or array."""
    c = np.asarray(coefficients, dtype=complex).reshape(-1)
    N = c.shape[0] - 1 if N is None else N
    x = np.asarray(x, dtype=float)
    n = np.arange(N + 1)
    vals = expi_turns(np.multiply.outer(x, n)) @ c[: N + 1]
    return vals if vals.ndim else complex(vals)


def parseval_residual(f_moments, f_norm_sq, frame, N=None):
    """``|f|^2 - sum_{n<=M} |<f, g_n>|^2`` for every ``M = 0..N``."""
    c = frame_coefficients(f_moments, frame, N)
    partial = np.array([math.fsum(np.abs(c[: m + 1]) ** 2) for m in range(c.shape[0])])
    return f_norm_sq - partial


def kaczmarz_iterate(f_moments, moments, N):
    """Run ``f_n = f_{n-1} + <f - f_{n-1}, e_n> e_n`` literally.

    Returns an ``(N+1, N+1)`` table whose row ``n`` holds the coefficients of
    ``f_n`` on ``e_0..e_N``. The inner products use
    ``<e_j, e_n>_nu = conj(nu_hat(n - j))``.
    """
    fh = np.asarray(f_moments, dtype=complex).reshape(-1)
    mu = _as_moment_values(moments)
    if fh.shape[0] < N + 1 or mu.shape[0] < N + 1:
        raise ValueError(f"need f_hat and moments up to index {N}")
    rows = np.zeros((N + 1, N + 1), dtype=complex)
    current = np.zeros(N + 1, dtype=complex)
    for n in range(N + 1):
        # <f_{n-1}, e_n> = sum_j a_j <e_j, e_n>
        inner = np.sum(current[:n] * np.conj(mu[n - np.arange(n)]))
        current[n] += fh[n] - inner
        rows[n] = current
    return rows


def function_moments(measure, f, N, depth=12):
    """``f_hat(j) = <f, e_j>_nu`` for ``j = 0..N`` and ``|f|^2_nu``.

    Atomic measures are summed exactly; other measures use cylinder
    quadrature at the given ``depth``.
    """
    j = np.arange(N + 1)

    def integrand(x):
        x = np.asarray(x, dtype=float)
        return np.asarray(f(x))[:, None] * np.conj(expi_turns(np.multiply.outer(x, j)))

    if isinstance(measure, AtomicMeasure):
        x, w = measure.points[:, 0], measure.weights
    else:
        from .measures import UniformMeasure

        ifs = measure.as_ifs() if isinstance(measure, UniformMeasure) else measure
        pts, w = ifs.cylinder_nodes(depth)
        x = pts[:, 0]
    fh = w @ integrand(x)
    norm_sq = integrate(measure, lambda y: np.abs(np.asarray(f(y))) ** 2, depth)
    return fh, float(norm_sq)
