"""Finite positive Borel measures and their Fourier transforms.

Three kinds of measure are supported:

* :class:`IFSMeasure` -- the invariant probability measure of an iterated
  function system of similitudes ``x -> (x + b_j) / R`` with weights ``p_j``.
* :class:`AtomicMeasure` -- a finite weighted sum of point masses.
* :class:`UniformMeasure` -- Lebesgue measure on the unit cube ``[0, 1]^k``.

The Fourier transform convention throughout the package is::

    nu_hat(t) = integral exp(i t . x) d nu(x)

so that ``<e_a, e_b>_nu = nu_hat(a - b)`` for ``e_a(x) = exp(i a . x)``.
For an IFS measure the transform is the infinite product
``nu_hat(t) = prod_{n >= 1} m(t / R^n)`` with ``m(s) = sum_j p_j exp(i s . b_j)``.

Internally phases are carried in *turns* (multiples of ``2 pi``) and reduced
to ``[-1/2, 1/2]`` before exponentiating, which keeps integer frequencies under the
``2 pi`` convention exact.
"""
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.signal import lfilter

TWO_PI = 2.0 * math.pi


class TruncationError(RuntimeError):
    """Raised when the infinite product cannot reach its tail tolerance."""


@dataclass(frozen=True)
class TransformConfig:
    """Truncation control for the infinite-product transform.

    The product is cut at the smallest depth ``N`` with
    ``|t| * B / R**N < tol`` where ``B = max_j |b_j|``.
    """

    tol: float = 1e-12
    max_depth: int = 200

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_depth < 1:
            raise ValueError(f"max_depth must be >= 1, got {self.max_depth}")


DEFAULT_CONFIG = TransformConfig()


def expi_turns(u):
    """Return ``exp(2 pi i u)`` with exact values at quarter turns."""
    u = np.asarray(u, dtype=float)
    # symmetric reduction to [-1/2, 1/2] keeps exp(-2 pi i u) = conj(exp(2 pi i u)) exact
    r = u - np.rint(u)
    out = np.exp(2j * np.pi * r)
    out = np.where(r == 0.0, 1.0 + 0j, out)
    out = np.where(r == 0.25, 1j, out)
    out = np.where(r == -0.25, -1j, out)
    out = np.where(np.abs(r) == 0.5, -1.0 + 0j, out)
    return out


def _as_points(x, dim):
    """Coerce frequencies or points to shape ``(n, dim)``."""
    x = np.asarray(x, dtype=float)
    if dim == 1 and (x.ndim == 0 or x.ndim == 1):
        return x.reshape(-1, 1)
    if x.ndim == 1 and x.shape[0] == dim:
        return x.reshape(1, dim)
    if x.ndim == 2 and x.shape[1] == dim:
        return x
    raise ValueError(f"expected points of dimension {dim}, got shape {x.shape}")


def _project(u, b):
    """``u @ b.T`` with a fixed summation order, independent of batch size."""
    out = u[:, 0, None] * b[None, :, 0]
    for d in range(1, u.shape[1]):
        out = out + u[:, d, None] * b[None, :, d]
    return out


def _weighted_sum(vals, w):
    """``vals @ w`` summed in ascending column order."""
    re = vals[:, 0].real * w[0]
    im = vals[:, 0].imag * w[0]
    for j in range(1, w.shape[0]):
        re = re + vals[:, j].real * w[j]
        im = im + vals[:, j].imag * w[j]
    return re + 1j * im


def _cmul(a, b):
    """Complex product in plain real arithmetic (numpy's complex kernel varies with length)."""
    return (a.real * b.real - a.imag * b.imag) + 1j * (a.real * b.imag + a.imag * b.real)


def _restore_shape(values, t, dim):
    t = np.asarray(t)
    if dim == 1:
        return values.reshape(t.shape) if t.ndim else values[0]
    return values if t.ndim == 2 else values[0]


@dataclass(frozen=True, eq=False)
class IFSMeasure:
    """Self-similar measure for the maps ``x -> (x + b_j) / scale``.

    Parameters
    ----------
    scale : float
        Common contraction ratio ``R > 1``.
    translations : array_like, shape (m,) or (m, k)
        The vectors ``b_j``.
    weights : array_like, shape (m,), optional
        Probabilities ``p_j``; equal weights when omitted. Weights that sum to
        one within ``1e-9`` are renormalised.
    """

    scale: float
    translations: np.ndarray
    weights: np.ndarray = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        b = np.asarray(self.translations, dtype=float)
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        if b.ndim != 2 or b.shape[0] < 1:
            raise ValueError("translations must be a non-empty (m, k) array")
        if b.shape[1] > 3:
            raise ValueError(f"dimension {b.shape[1]} not supported (k <= 3)")
        if not self.scale > 1:
            raise ValueError(f"scale must exceed 1, got {self.scale}")
        if self.weights is None:
            p = np.full(b.shape[0], 1.0 / b.shape[0])
        else:
            p = np.asarray(self.weights, dtype=float).ravel()
        if p.shape[0] != b.shape[0]:
            raise ValueError("one weight per translation is required")
        if np.any(p <= 0):
            raise ValueError("weights must be positive")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError(f"weights must sum to 1, got {p.sum()!r}")
        p = p / p.sum()
        b.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "scale", float(self.scale))
        object.__setattr__(self, "translations", b)
        object.__setattr__(self, "weights", p)

    @property
    def dimension(self):
        return self.translations.shape[1]

    @property
    def total_mass(self):
        return 1.0

    @property
    def barycenter(self):
        """Fixed point of the weight-averaged map (also the mean of the measure)."""
        return self.weights @ self.translations / (self.scale - 1.0)

    @property
    def bounding_box(self):
        lo = self.translations.min(axis=0) / (self.scale - 1.0)
        hi = self.translations.max(axis=0) / (self.scale - 1.0)
        return lo, hi

    def mask(self, t):
        """The filter ``m(t) = sum_j p_j exp(i t . b_j)``."""
        t = _as_points(t, self.dimension)
        vals = _weighted_sum(expi_turns(_project(t, self.translations) / TWO_PI), self.weights)
        return _restore_shape(vals, np.asarray(t), self.dimension)

    def _transform_turns(self, u, cfg):
        u = _as_points(u, self.dimension)
        bmax = float(np.max(np.linalg.norm(self.translations, axis=1)))
        tnorm = TWO_PI * np.linalg.norm(u, axis=1)
        out = np.ones(u.shape[0], dtype=complex)
        if bmax == 0.0:
            return out
        # smallest n with |t| B / R^n < tol, per frequency
        with np.errstate(divide="ignore"):
            need = np.log(np.maximum(tnorm * bmax / cfg.tol, 1.0)) / math.log(self.scale)
        depth = np.floor(need).astype(int) + 1
        depth[tnorm == 0] = 0
        if depth.size and depth.max() > cfg.max_depth:
            raise TruncationError(
                f"product needs depth {int(depth.max())} > max_depth {cfg.max_depth} "
                f"(|t| = {tnorm.max():.6g}, R = {self.scale})"
            )
        proj = _project(u, self.translations)  # turns, shape (n, m)
        for n in range(1, int(depth.max(initial=0)) + 1):
            active = depth >= n
            factor = _weighted_sum(expi_turns(proj[active] / self.scale**n), self.weights)
            out[active] = _cmul(out[active], factor)
        return out

    def cylinder_nodes(self, depth):
        """Images of the barycenter under all words of length ``depth``."""
        pts = self.barycenter.reshape(1, -1)
        w = np.ones(1)
        for _ in range(depth):
            pts = ((pts[None, :, :] + self.translations[:, None, :]) / self.scale).reshape(-1, self.dimension)
            w = (self.weights[:, None] * w[None, :]).ravel()
        return pts, w


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """Finite sum of point masses ``sum_j w_j delta_{x_j}``."""

    points: np.ndarray
    weights: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        x = np.asarray(self.points, dtype=float)
        if x.ndim == 1:
            x = x.reshape(-1, 1)
        w = np.asarray(self.weights, dtype=float).ravel()
        if x.ndim != 2 or x.shape[0] < 1:
            raise ValueError("an atomic measure needs at least one atom")
        if w.shape[0] != x.shape[0]:
            raise ValueError("one weight per atom is required")
        if np.any(w <= 0):
            raise ValueError("atom weights must be positive")
        if len({tuple(row) for row in x}) != x.shape[0]:
            raise ValueError("atoms must be distinct points")
        x.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", x)
        object.__setattr__(self, "weights", w)

    @property
    def dimension(self):
        return self.points.shape[1]

    @property
    def total_mass(self):
        return math.fsum(self.weights)

    def scaled(self, factor):
        return AtomicMeasure(self.points, self.weights * factor, name=self.name)

    def _transform_turns(self, u, cfg):
        u = _as_points(u, self.dimension)
        return _weighted_sum(expi_turns(_project(u, self.points)), self.weights)


@dataclass(frozen=True, eq=False)
class UniformMeasure:
    """Lebesgue measure on the unit cube ``[0, 1]^dimension``."""

    dimension: int = 1
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be positive")

    @property
    def total_mass(self):
        return 1.0

    def _transform_turns(self, u, cfg):
        u = _as_points(u, self.dimension)
        out = np.ones(u.shape[0], dtype=complex)
        for d in range(self.dimension):
            ud = u[:, d]
            nz = ud != 0
            out[nz] = _cmul(out[nz], (expi_turns(ud[nz]) - 1.0) / (2j * np.pi * ud[nz]))
        return out

    def as_ifs(self):
        """The same measure written as a self-similar measure with ratio 2."""
        corners = np.array(np.meshgrid(*[[0.0, 1.0]] * self.dimension, indexing="ij"))
        return IFSMeasure(2.0, corners.reshape(self.dimension, -1).T)


def fourier_transform(measure, t, cfg=None, convention=1.0):
    """Evaluate ``nu_hat(convention * t)``.

    ``t`` may be a scalar, an array of frequencies (``k = 1``) or an array of
    shape ``(n, k)``. With ``convention=2*pi`` and integer ``t`` the phases are
    exact.

    Raises
    ------
    TruncationError
        If the infinite product would need more than ``cfg.max_depth`` factors.
    """
    cfg = DEFAULT_CONFIG if cfg is None else cfg
    if convention == TWO_PI:
        u = np.asarray(t, dtype=float)
    else:
        u = np.asarray(t, dtype=float) * (convention / TWO_PI)
    vals = measure._transform_turns(u, cfg)
    # nu_hat(0) is the total mass, exactly
    pts = _as_points(u, measure.dimension)
    vals = np.where(np.all(pts == 0, axis=1), measure.total_mass, vals)
    return _restore_shape(vals, np.asarray(t), measure.dimension)


def moments(measure, N, convention=TWO_PI, cfg=None):
    """Return the moment sequence ``nu_hat(convention * n)`` for ``n = 0..N``.

    Only one-dimensional, normalised measures are accepted.
    """
    from .kaczmarz import MomentSequence

    if N < 0:
        raise ValueError("N must be non-negative")
    if measure.dimension != 1:
        raise ValueError("moments are defined for measures on the line")
    if abs(measure.total_mass - 1.0) > 1e-12:
        raise ValueError(f"measure must be normalised, total mass is {measure.total_mass!r}")
    vals = fourier_transform(measure, np.arange(N + 1), cfg, convention=convention)
    vals = np.asarray(vals, dtype=complex).reshape(-1)
    vals[0] = 1.0
    return MomentSequence(vals)


def integrate(measure, f, depth=12):
    """Integrate ``f`` against ``measure``.

    IFS and uniform measures use cylinder quadrature: the sum over words
    ``w`` of length ``depth`` of ``p_w f(x_w)`` with ``x_w`` the image of the
    barycenter. Atomic measures are summed exactly and ``depth`` is ignored.

    ``f`` receives an array of shape ``(n,)`` in one dimension and ``(n, k)``
    otherwise, and must return ``n`` values.
    """
    if isinstance(measure, AtomicMeasure):
        pts, w = measure.points, measure.weights
    else:
        ifs = measure.as_ifs() if isinstance(measure, UniformMeasure) else measure
        pts, w = ifs.cylinder_nodes(depth)
    arg = pts[:, 0] if measure.dimension == 1 else pts
    vals = np.asarray(f(arg))
    if vals.shape != (pts.shape[0],):
        vals = np.broadcast_to(vals, (pts.shape[0],))
    if np.iscomplexobj(vals):
        return complex(np.dot(w, vals))
    return float(np.dot(w, vals))


def chaos_game_sample(measure, n, seed=0, burn_in=50):
    """Sample ``n`` points of the attractor by the chaos game.

    The orbit starts at the barycenter, which lies in the convex hull of the
    attractor, and the first ``burn_in`` iterates are discarded. The sequence
    is a deterministic function of ``seed``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if isinstance(measure, UniformMeasure):
        measure = measure.as_ifs()
    rng = np.random.default_rng(seed)
    total = n + burn_in
    idx = rng.choice(measure.weights.shape[0], size=total, p=measure.weights)
    b = measure.translations[idx] / measure.scale
    R = measure.scale
    x0 = measure.barycenter
    out = np.empty((total, measure.dimension))
    for d in range(measure.dimension):
        # x_k = x_{k-1} / R + b_k / R
        out[:, d], _ = lfilter([1.0], [1.0, -1.0 / R], b[:, d], zi=[x0[d] / R])
    out = out[burn_in:]
    return out[:, 0] if measure.dimension == 1 else out


def measure_from_dict(spec):
    """Build a measure from its JSON description."""
    kind = spec.get("type", "atomic" if "atoms" in spec else None)
    name = spec.get("name", "")
    if kind == "ifs":
        k = int(spec.get("dimension", 1))
        b = np.asarray(spec["translations"], dtype=float).reshape(-1, k)
        return IFSMeasure(float(spec["scale"]), b, spec.get("weights"), name=name)
    if kind == "atomic":
        atoms = spec["atoms"]
        pts = [np.atleast_1d(np.asarray(a["point"], dtype=float)) for a in atoms]
        return AtomicMeasure(np.vstack(pts), [a["weight"] for a in atoms], name=name)
    if kind == "uniform":
        return UniformMeasure(int(spec.get("dimension", 1)), name=name)
    raise ValueError(f"unknown measure type {kind!r}")


def measure_to_dict(measure):
    if isinstance(measure, IFSMeasure):
        return {
            "type": "ifs",
            "name": measure.name,
            "dimension": measure.dimension,
            "scale": measure.scale,
            "translations": measure.translations.tolist(),
            "weights": measure.weights.tolist(),
        }
    if isinstance(measure, AtomicMeasure):
        atoms = [{"point": p.tolist(), "weight": float(w)} for p, w in zip(measure.points, measure.weights)]
        return {"type": "atomic", "name": measure.name, "atoms": atoms}
    return {"type": "uniform", "name": measure.name, "dimension": measure.dimension}


def builtin_measures():
    """Names of the measure configs shipped with the package."""
    files = resources.files("spectralpairs") / "data"
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def load_measure(source):
    """Load a measure from a path, a shipped config name, or inline JSON."""
    if isinstance(source, dict):
        return measure_from_dict(source)
    text = str(source).strip()
    if text.startswith("{"):
        return measure_from_dict(json.loads(text))
    path = Path(text)
    if path.is_file():
        return measure_from_dict(json.loads(path.read_text()))
    res = resources.files("spectralpairs") / "data" / f"{text}.json"
    if res.is_file():
        return measure_from_dict(json.loads(res.read_text()))
    raise FileNotFoundError(f"no measure config {text!r} (shipped: {', '.join(builtin_measures())})")


def nu4():
    """The quarter Cantor measure: ratio 4, digits {0, 2}, equal weights."""
    return IFSMeasure(4.0, [0.0, 2.0], name="nu4")


def nu3():
    """The middle-third Cantor measure: ratio 3, digits {0, 2}, equal weights."""
    return IFSMeasure(3.0, [0.0, 2.0], name="nu3")


def sierpinski_gasket():
    return IFSMeasure(2.0, [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], name="sierpinski")


def two_atom():
    """``(delta_0 + delta_{1/2}) / 2``."""
    return AtomicMeasure([0.0, 0.5], [0.5, 0.5], name="two_atom")
