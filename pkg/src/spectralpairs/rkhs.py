"""Positive definite tempered distributions and their generalized RKHS.

Test functions are finite sums of modulated, shifted Gaussians,

    phi(x) = sum_k a_k exp(i w_k x) exp(-(x - x_k)^2 / (2 s^2)),

a class closed under the operations used here with exact transforms
``phi_hat(lam) = integral phi(x) exp(-i lam x) dx``. Plain Gaussians, Gaussian
windowed trigonometric polynomials and sums of shifted Gaussians are all
special cases.

The two distributions are ``F_Lambda(x) = sum_{lam} exp(i c lam x)`` and the
transform ``F(x) = sum_j w_j exp(i lam_j x)`` of an atomic positive measure.
"""
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import linalg

from .lambda_sets import SpectrumSet, c_m_constant, from_points
from .measures import AtomicMeasure

SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True, eq=False)
class TestFunction:
    """Sum of modulated Gaussians sharing one width.

    Use :meth:`gaussian`, :meth:`trig` or :meth:`gaussian_sum` rather than the
    raw constructor.
    """

    __test__ = False  # not a pytest class

    amplitudes: np.ndarray
    modulations: np.ndarray
    centers: np.ndarray
    width: float = 1.0
    family: str = "gaussian"

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.amplitudes, dtype=complex))
        w = np.broadcast_to(np.asarray(self.modulations, dtype=float), a.shape).copy()
        x = np.broadcast_to(np.asarray(self.centers, dtype=float), a.shape).copy()
        if not self.width > 0:
            raise ValueError("width must be positive")
        object.__setattr__(self, "amplitudes", a)
        object.__setattr__(self, "modulations", w)
        object.__setattr__(self, "centers", x)

    @classmethod
    def gaussian(cls, center=0.0, width=1.0, amplitude=1.0):
        """``amplitude * exp(-(x - center)^2 / (2 width^2))``."""
        return cls([amplitude], [0.0], [center], width, "gaussian")

    @classmethod
    def trig(cls, coefficients, frequencies, width=1.0, center=0.0):
        """Trigonometric polynomial ``sum c_k exp(i w_k x)`` under a Gaussian window."""
        return cls(coefficients, frequencies, center, width, "trig")

    @classmethod
    def gaussian_sum(cls, amplitudes, centers, width=1.0):
        return cls(amplitudes, 0.0, centers, width, "gaussian_sum")

    @classmethod
    def from_dict(cls, spec):
        family = spec.get("family", "gaussian")
        width = float(spec.get("width", 1.0))
        if family == "gaussian":
            return cls.gaussian(float(spec.get("center", 0.0)), width, float(spec.get("amplitude", 1.0)))
        if family == "trig":
            return cls.trig(spec["coefficients"], spec["frequencies"], width, float(spec.get("center", 0.0)))
        if family == "gaussian_sum":
            return cls.gaussian_sum(spec["amplitudes"], spec["centers"], width)
        raise ValueError(f"unknown test function family {family!r}")

    def scaled(self, s):
        return TestFunction(self.amplitudes * s, self.modulations, self.centers, self.width, self.family)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        xx = x[..., None]
        terms = self.amplitudes * np.exp(1j * self.modulations * xx - (xx - self.centers) ** 2 / (2 * self.width**2))
        return terms.sum(axis=-1)

    def transform(self, lam):
        """Exact ``phi_hat(lam)``."""
        lam = np.asarray(lam, dtype=float)
        d = lam[..., None] - self.modulations
        s = self.width
        terms = self.amplitudes * s * SQRT_2PI * np.exp(-0.5 * (s * d) ** 2 - 1j * d * self.centers)
        return terms.sum(axis=-1)

    def derivative_transform(self, lam, order=1):
        """Transform of the ``order``-th derivative: ``(i lam)^order phi_hat``."""
        lam = np.asarray(lam, dtype=float)
        return (1j * lam) ** order * self.transform(lam)

    def sobolev_transform(self, lam, M=1):
        """Transform of ``(I + (-Laplacian)^M) phi``: ``(1 + |lam|^(2M)) phi_hat``."""
        lam = np.asarray(lam, dtype=float)
        return (1.0 + np.abs(lam) ** (2 * M)) * self.transform(lam)

    def support_radius(self, eps=1e-17):
        """Half-width beyond which every term is below ``eps`` relative to its peak."""
        return float(np.max(np.abs(self.centers)) + self.width * math.sqrt(2 * math.log(1 / eps)))


@dataclass(frozen=True, eq=False)
class FLambda:
    """``F_Lambda(x) = sum_{lam in Lambda} exp(i c lam x)``."""

    spectrum: SpectrumSet
    convention: float = 1.0

    def frequencies(self, level=None):
        return self.convention * np.asarray(self.spectrum.at_level(level).elements, dtype=float)

    def weights(self, level=None):
        return np.ones(len(self.spectrum.at_level(level)))

    def __call__(self, x, level=None):
        x = np.asarray(x, dtype=float)
        return np.exp(1j * np.multiply.outer(x, self.frequencies(level))).sum(axis=-1)


@dataclass(frozen=True, eq=False)
class BochnerDistribution:
    """``F(x) = sum_j w_j exp(i lam_j x)``, the transform of an atomic measure."""

    measure: AtomicMeasure

    def frequencies(self, level=None):
        return self.measure.points[:, 0]

    def weights(self, level=None):
        return self.measure.weights

    def __call__(self, x, level=None):
        x = np.asarray(x, dtype=float)
        return np.exp(1j * np.multiply.outer(x, self.frequencies())) @ self.weights()


def pairing(F, phi, level=None):
    """The distribution action ``<F, phi> = integral F(x) phi(x) dx``.

    For ``F = sum_j w_j exp(i lam_j x)`` this is ``sum_j w_j phi_hat(-lam_j)``,
    which equals ``sum_j w_j phi_hat(lam_j)`` whenever ``phi_hat`` is even
    (real, even test functions). ``level`` truncates digit spectra.
    """
    lam = F.frequencies(level)
    return complex(np.dot(F.weights(level), phi.transform(-lam)))


def convolve(F, phi, x, level=None):
    """``(phi * F)(x) = sum_lam w_lam phi_hat(lam) exp(i lam x)``."""
    lam = F.frequencies(level)
    x = np.asarray(x, dtype=float)
    vals = np.exp(1j * np.multiply.outer(x, lam)) @ (F.weights(level) * phi.transform(lam))
    return vals if vals.ndim else complex(vals)


@dataclass(frozen=True, eq=False)
class RKHSElement:
    """``phi * F_Lambda`` in coordinates: the table ``lam -> phi_hat(lam)``."""

    frequencies: np.ndarray
    coefficients: np.ndarray

    @classmethod
    def from_test_function(cls, phi, F, level=None):
        lam = F.frequencies(level)
        return cls(lam, np.sqrt(F.weights(level)) * phi.transform(lam))

    @property
    def norm(self):
        return rkhs_norm(self)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(1j * np.multiply.outer(x, self.frequencies)) @ self.coefficients


def rkhs_norm(element):
    """``sqrt(sum |phi_hat(lam)|^2)``."""
    c = element.coefficients if isinstance(element, RKHSElement) else np.asarray(element)
    return math.sqrt(math.fsum(np.abs(np.ravel(c)) ** 2))


class MembershipReport(NamedTuple):
    member: bool
    partial_sums: list


def membership_test(coefficient_levels, bound):
    """Numerical proxy for membership in ``l^2(Lambda)``.

    ``coefficient_levels`` holds the coefficient table at each truncation
    level. Passes when every partial sum of squares stays at or below
    ``bound``.
    """
    sums = [math.fsum(np.abs(np.ravel(c)) ** 2) for c in coefficient_levels]
    return MembershipReport(all(s <= bound for s in sums), sums)


def coefficient_levels(phi, F, levels):
    return [RKHSElement.from_test_function(phi, F, m).coefficients for m in levels]


def quadrature_grid(phi, spacing=0.01):
    r = phi.support_radius()
    n = int(math.ceil(2 * r / spacing)) + 1
    return np.linspace(-r, r, n)


def _trapezoid(values, grid):
    return np.trapezoid(values, grid) if hasattr(np, "trapezoid") else np.trapz(values, grid)


class BochnerCheck(NamedTuple):
    lhs: complex
    rhs: complex
    defect: float


def bochner_check(mu, phi, grid=None):
    """Compare ``integral F(x) phi(x) dx`` by quadrature with ``sum_j w_j phi_hat(-lam_j)``.

    A too-coarse ``grid`` shows up as a large defect; it is not corrected.
    """
    F = BochnerDistribution(mu)
    grid = quadrature_grid(phi) if grid is None else np.asarray(grid, dtype=float)
    lhs = complex(_trapezoid(F(grid) * phi(grid), grid))
    rhs = pairing(F, phi)
    return BochnerCheck(lhs, rhs, abs(lhs - rhs))


class SobolevCheck(NamedTuple):
    plain: float
    weighted: float
    defect: float


def sobolev_norm_check(mu, phi):
    """``sum w |phi_hat|^2`` against ``sum w (|phi_hat|^2 + |(D phi)^|^2) / (1 + lam^2)``."""
    lam = mu.points[:, 0]
    w = mu.weights
    ph = np.abs(phi.transform(lam)) ** 2
    dph = np.abs(phi.derivative_transform(lam)) ** 2
    plain = math.fsum(w * ph)
    weighted = math.fsum(w * (ph + dph) / (1.0 + lam**2))
    return SobolevCheck(plain, weighted, abs(plain - weighted))


def seminorm(phi, M=1, grid=None, extra=(), rel_tol=0.01, max_refine=12):
    """``A(phi) = sup_lam |(1 + |lam|^(2M)) phi_hat(lam)|`` on a refined grid.

    The grid doubles in density until the supremum changes by less than
    ``rel_tol``; points in ``extra`` are always included.
    """
    extra = np.asarray(extra, dtype=float).ravel()
    if grid is not None:
        pts = np.concatenate([np.asarray(grid, dtype=float), extra])
        return float(np.max(np.abs(phi.sobolev_transform(pts, M))))
    span = float(np.max(np.abs(phi.modulations))) + 12.0 * (1 + M) / phi.width
    n = 257
    prev = None
    for _ in range(max_refine):
        pts = np.concatenate([np.linspace(-span, span, n), extra])
        cur = float(np.max(np.abs(phi.sobolev_transform(pts, M))))
        if prev is not None and abs(cur - prev) <= rel_tol * cur:
            return cur
        prev, n = cur, 2 * n - 1
    return cur


class TemperedBound(NamedTuple):
    holds: bool
    seminorm: float
    levels: list
    pairings: list
    constants: list


def tempered_bound_check(spectrum, phi, M=1, levels=None, grid=None):
    """Check ``|<F_Lambda, phi>| <= A(phi) C_M(Lambda)`` level by level."""
    if levels is None:
        levels = [spectrum.level] if spectrum.is_digit_set else [None]
    F = FLambda(spectrum)
    top = spectrum.at_level(max((m for m in levels if m is not None), default=None))
    lam = np.asarray(top.elements, dtype=float)
    A = seminorm(phi, M, grid, extra=np.concatenate([lam, -lam]))
    pairs, consts = [], []
    for m in levels:
        pairs.append(abs(pairing(F, phi, m)))
        consts.append(c_m_constant(spectrum.at_level(m), M))
    holds = all(p <= A * c for p, c in zip(pairs, consts))
    return TemperedBound(holds, A, list(levels), pairs, consts)


class SingularGramError(ValueError):
    def __init__(self, eigenvalues):
        super().__init__(f"sample Gram matrix is not positive definite (smallest eigenvalue {eigenvalues.min():.3e})")
        self.eigenvalues = eigenvalues


def kernel_matrix(F, points):
    """``(F(x_i - x_j))_{ij}``."""
    x = np.asarray(points, dtype=float)
    return np.asarray(F(np.subtract.outer(x, x)), dtype=complex)


def is_positive_definite(F, points, tol=1e-10):
    """Finite-sample check ``sum c_i conj(c_j) F(x_i - x_j) >= 0``."""
    G = kernel_matrix(F, points)
    if np.max(np.abs(G - G.conj().T)) > tol:
        return False
    return bool(np.linalg.eigvalsh(G).min() >= -tol)


def quadratic_form_bound(F, xi, points, eig_tol=1e-10):
    """Least ``A_0`` with ``|sum c_i xi(x_i)|^2 <= A_0 sum c_i conj(c_j) F(x_i - x_j)``.

    Over the sampled points this is ``v^* G^{-1} v`` with ``v = xi(x)`` and
    ``G = F(x_i - x_j)``. ``xi`` may be a callable or the sampled values.
    """
    G = kernel_matrix(F, points)
    G = 0.5 * (G + G.conj().T)
    eig = np.linalg.eigvalsh(G)
    if eig.min() <= eig_tol:
        raise SingularGramError(eig)
    x = np.asarray(points, dtype=float)
    v = np.asarray(xi(x) if callable(xi) else xi, dtype=complex).reshape(-1)
    sol = linalg.cho_solve(linalg.cho_factor(G), v)
    return float(np.real(np.vdot(v, sol)))


def make_flambda(points_or_spectrum, convention=1.0):
    if isinstance(points_or_spectrum, SpectrumSet):
        return FLambda(points_or_spectrum, convention)
    return FLambda(from_points(points_or_spectrum), convention)
