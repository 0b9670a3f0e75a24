"""Discrete Legendre-Fenchel transform of sampled 1-D functions.

Values are exact for the piecewise-linear interpolant of the samples: the
supremum of ``p*x - f(x)`` over a piecewise-linear function is attained at
a vertex of its lower convex hull.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .analytic import PolynomialLagrangian

__all__ = [
    "SampledFunction",
    "SlopeGrid",
    "ConjugateResult",
    "HullSegments",
    "DomainKind",
    "EffectiveDomain",
    "lower_hull",
    "conjugate_bruteforce",
    "conjugate_fast",
    "biconjugate",
    "supporting_line",
    "effective_domain",
    "flat_regions",
]

FLAT_THRESHOLD = 1e-9
# Slopes per block in the brute-force oracle; bounds the N x block temporary.
_BLOCK = 512
# Samples this close to their hull (relative to max |f|) count as convex.
HULL_RTOL = 1e-12


def _strictly_increasing(name, a):
    a = np.ascontiguousarray(a, dtype=float)
    if a.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} must be finite")
    if a.size > 1 and not np.all(np.diff(a) > 0):
        raise ValueError(f"{name} must be strictly increasing")
    return a


@dataclass(frozen=True)
class SampledFunction:
    abscissae: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = _strictly_increasing("abscissae", self.abscissae)
        y = np.ascontiguousarray(self.values, dtype=float)
        if y.shape != x.shape:
            raise ValueError("abscissae and values must have the same length")
        if x.size < 2:
            raise ValueError("need at least two samples")
        if not np.all(np.isfinite(y)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "abscissae", x)
        object.__setattr__(self, "values", y)

    @classmethod
    def from_callable(cls, fn, x) -> "SampledFunction":
        x = np.asarray(x, dtype=float)
        return cls(x, np.asarray(fn(x), dtype=float))

    def __len__(self):
        return self.abscissae.size


@dataclass(frozen=True)
class SlopeGrid:
    slopes: np.ndarray

    def __post_init__(self):
        s = _strictly_increasing("slopes", self.slopes)
        if s.size < 1:
            raise ValueError("slope grid is empty")
        object.__setattr__(self, "slopes", s)

    @classmethod
    def linspace(cls, lo, hi, n) -> "SlopeGrid":
        return cls(np.linspace(lo, hi, n))

    def __len__(self):
        return self.slopes.size


@dataclass(frozen=True)
class ConjugateResult:
    """Conjugate values with the index of a maximizing abscissa per slope."""

    slopes: SlopeGrid
    values: np.ndarray
    argsup: np.ndarray
    finite: np.ndarray


@dataclass(frozen=True)
class HullSegments:
    breakpoints: np.ndarray
    flat_regions: list


def lower_hull(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Indices of the lower convex hull vertices, by Andrew's monotone chain.

    ``x`` must be strictly increasing.  Collinear interior points are
    dropped, so consecutive hull edges have strictly increasing slopes.
    """
    xs = x.tolist()
    ys = y.tolist()
    hull = []
    for i in range(len(xs)):
        xi, yi = xs[i], ys[i]
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            # keep b only if it lies strictly below segment a -> i
            cross = (xs[b] - xs[a]) * (yi - ys[a]) - (xi - xs[a]) * (ys[b] - ys[a])
            if cross <= 0.0:
                hull.pop()
            else:
                break
        hull.append(i)
    return np.array(hull, dtype=np.intp)


def conjugate_bruteforce(f: SampledFunction, g: SlopeGrid) -> ConjugateResult:
    """``max_i p*x_i - f_i`` for every slope, by exhaustive search.

    O(N*M).  The smallest maximizing index is reported.  This is the
    reference the fast transform is checked against.
    """
    x, y, p = f.abscissae, f.values, g.slopes
    values = np.empty(p.size)
    argsup = np.empty(p.size, dtype=np.intp)
    for start in range(0, p.size, _BLOCK):
        block = p[start:start + _BLOCK]
        scores = block[:, None] * x[None, :] - y[None, :]
        idx = np.argmax(scores, axis=1)
        argsup[start:start + block.size] = idx
        values[start:start + block.size] = scores[np.arange(block.size), idx]
    return ConjugateResult(g, values, argsup, np.ones(p.size, dtype=bool))


def conjugate_fast(f: SampledFunction, g: SlopeGrid,
                   hull: Optional[np.ndarray] = None) -> ConjugateResult:
    """Linear-time conjugate.

    Builds the lower hull of the samples, then walks the sorted slope grid
    and the sorted hull-edge slopes together: slope ``p`` is supported at
    the first hull vertex whose outgoing edge is at least as steep as ``p``.
    """
    x, y, p = f.abscissae, f.values, g.slopes
    if hull is None:
        hull = lower_hull(x, y)
    hx, hy = x[hull], y[hull]
    edges = (np.diff(hy) / np.diff(hx)).tolist()
    pos = np.empty(p.size, dtype=np.intp)
    k, n_edges = 0, len(edges)
    for j, pj in enumerate(p.tolist()):
        while k < n_edges and edges[k] < pj:
            k += 1
        pos[j] = k
    argsup = hull[pos]
    values = p * x[argsup] - y[argsup]
    return ConjugateResult(g, values, argsup, np.ones(p.size, dtype=bool))


def _hull_values(f: SampledFunction, hull: np.ndarray) -> np.ndarray:
    x, y = f.abscissae, f.values
    out = np.interp(x, x[hull], y[hull])
    out[hull] = y[hull]
    # a sample can never sit above its own hull
    return np.minimum(out, y)


def biconjugate(f: SampledFunction) -> SampledFunction:
    """Lower convex hull of ``f`` evaluated on its own abscissae.

    Read directly off the hull rather than through two discrete
    transforms, so no slope grid is involved.  Input that is convex up to
    rounding is returned unchanged, so the result is its own hull bitwise.
    """
    h = _hull_values(f, lower_hull(f.abscissae, f.values))
    scale = max(1.0, float(np.max(np.abs(f.values))))
    if np.max(f.values - h) <= HULL_RTOL * scale:
        return f
    return SampledFunction(f.abscissae, h)


def supporting_line(f: SampledFunction, p: float) -> tuple:
    """Minimal intercept of a line of slope ``p`` lying below the samples.

    Returns ``(intercept, index)``; the conjugate at ``p`` is ``-intercept``.
    """
    intercepts = f.values - float(p) * f.abscissae
    i = int(np.argmin(intercepts))
    return float(intercepts[i]), i


class DomainKind(enum.Enum):
    ALL_MOMENTA = "all"
    SINGLE_MOMENTUM = "point"
    EMPTY = "empty"


@dataclass(frozen=True)
class EffectiveDomain:
    """Momenta at which the conjugate of a polynomial is finite."""

    kind: DomainKind
    momentum: Optional[float] = None

    @property
    def bounded(self) -> bool:
        return self.kind is DomainKind.ALL_MOMENTA

    def __contains__(self, p) -> bool:
        if self.kind is DomainKind.ALL_MOMENTA:
            return True
        if self.kind is DomainKind.SINGLE_MOMENTUM:
            return p == self.momentum
        return False


def effective_domain(f: PolynomialLagrangian) -> EffectiveDomain:
    """Where ``sup_v [p v - f(v)]`` is finite, decided from the leading term."""
    d, lead = f.degree, f.leading
    if d == 0:
        return EffectiveDomain(DomainKind.SINGLE_MOMENTUM, 0.0)
    if d == 1:
        return EffectiveDomain(DomainKind.SINGLE_MOMENTUM, f.coeffs[1])
    if d % 2 == 0 and lead > 0:
        return EffectiveDomain(DomainKind.ALL_MOMENTA)
    return EffectiveDomain(DomainKind.EMPTY)


def flat_regions(f: SampledFunction) -> HullSegments:
    """Maximal stretches where the hull lies below ``f`` by more than the threshold.

    Each region is reported by the abscissae of the two hull vertices that
    bound it, i.e. the touching points of the common tangent.
    """
    hull = lower_hull(f.abscissae, f.values)
    gap = f.values - _hull_values(f, hull)
    below = gap > FLAT_THRESHOLD
    regions = []
    x = f.abscissae
    for lo_v, hi_v in zip(hull[:-1], hull[1:]):
        if hi_v - lo_v > 1 and below[lo_v + 1:hi_v].any():
            regions.append((float(x[lo_v]), float(x[hi_v])))
    return HullSegments(hull, regions)
