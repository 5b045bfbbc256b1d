"""Digit-set spectra and their discreteness constants."""
import itertools
import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree


@dataclass(frozen=True, eq=False)
class SpectrumSet:
    """A finite frequency set, sorted and duplicate free.

    Digit-generated sets keep ``base``, ``digits`` and ``level`` so they can be
    regenerated at other levels; their elements are exact integers.
    Arbitrary finite sets (``base is None``) may be real valued and live in
    ``R^k``.
    """

    elements: np.ndarray
    base: Optional[int] = None
    digits: tuple = ()
    level: Optional[int] = None

    def __post_init__(self):
        el = np.asarray(self.elements)
        el.setflags(write=False)
        object.__setattr__(self, "elements", el)

    @property
    def dimension(self):
        return 1 if self.elements.ndim == 1 else self.elements.shape[1]

    @property
    def is_digit_set(self):
        return self.base is not None

    def __len__(self):
        return self.elements.shape[0]

    def __iter__(self):
        return iter(self.elements.tolist())

    def at_level(self, level):
        """Regenerate a digit set at another level (``self`` for other sets)."""
        if level is None or not self.is_digit_set:
            return self
        return generate(self.base, self.digits, level)

    def to_json(self):
        return json.dumps(self.elements.tolist())

    def __repr__(self):
        if self.is_digit_set:
            return f"SpectrumSet(base={self.base}, digits={self.digits}, level={self.level}, n={len(self)})"
        return f"SpectrumSet(n={len(self)}, dimension={self.dimension})"


@dataclass(frozen=True)
class DiscretenessReport:
    separation: Optional[float]
    uniformly_discrete: bool


def generate(base, digits, level):
    """All sums ``sum_{i < level} d_i * base**i`` with ``d_i`` in ``digits``.

    >>> generate(4, {0, 1}, 3).elements.tolist()
    [0, 1, 4, 5, 16, 17, 20, 21]
    """
    if base < 2:
        raise ValueError("base must be at least 2")
    digits = tuple(sorted({int(d) for d in digits}))
    if not digits:
        raise ValueError("digit set must be non-empty")
    if level < 0:
        raise ValueError("level must be non-negative")
    sums = {0}
    for i in range(level):
        sums = {s + d * base**i for s in sums for d in digits}
    el = np.array(sorted(sums), dtype=np.int64 if max(map(abs, sums)) < 2**62 else object)
    return SpectrumSet(el, base=int(base), digits=digits, level=int(level))


def from_points(points):
    """A finite spectrum from explicit (possibly real or vector) frequencies."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim == 1:
        arr = np.unique(arr)
    else:
        arr = np.unique(arr, axis=0)
    if arr.shape[0] < 1:
        raise ValueError("a spectrum needs at least one element")
    if arr.ndim == 1 and np.all(arr == np.round(arr)):
        arr = arr.astype(np.int64)
    return SpectrumSet(arr)


def parse_spectrum(text):
    """Parse ``"base:digits:level"`` (e.g. ``"4:0,1:6"``) or a JSON list."""
    text = text.strip()
    if text.startswith("["):
        return from_points(json.loads(text))
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"spectrum spec must look like 'base:d1,d2:level', got {text!r}")
    base, digits, level = parts
    return generate(int(base), [int(d) for d in digits.split(",") if d.strip()], int(level))


def separation(spectrum):
    """Minimum distance between distinct elements.

    A singleton has no separation to report but is trivially uniformly
    discrete.
    """
    el = spectrum.elements
    if len(spectrum) < 1:
        raise ValueError("empty spectrum")
    if len(spectrum) == 1:
        return DiscretenessReport(None, True)
    if el.ndim == 1:
        r = float(np.min(np.diff(np.sort(el.astype(float)))))
    else:
        dist, _ = cKDTree(el).query(el, k=2)
        r = float(dist[:, 1].min())
    return DiscretenessReport(r, r > 0)


def c_m_constant(spectrum, M):
    """Partial sum of ``1 / (1 + |lambda|^(2M))`` over the set."""
    if M < 1:
        raise ValueError("M must be at least 1")
    el = np.asarray(spectrum.elements, dtype=float)
    norms = np.abs(el) if el.ndim == 1 else np.linalg.norm(el, axis=1)
    return math.fsum(1.0 / (1.0 + norms ** (2 * M)))


def digit_sums_distinct(base, digits, level):
    """Brute-force check that all digit expansions give distinct sums."""
    seen = set()
    for word in itertools.product(sorted(set(digits)), repeat=level):
        s = sum(d * base**i for i, d in enumerate(word))
        if s in seen:
            return False
        seen.add(s)
    return True
