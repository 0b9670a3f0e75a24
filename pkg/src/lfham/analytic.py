"""Closed-form quartic model ``L(v) = v**4/4 - kappa*v**2/2``.

The tangent-point formulas are written for ``kappa = 1``.  Every public
function accepts a :class:`ModelParams` and reaches general ``kappa > 0``
through the exact rescaling

    v = sqrt(kappa) * u,   p = kappa**1.5 * q,   L = kappa**2 * L1(u),

so the unit-model formulas stay the single source of truth.
"""
from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

__all__ = [
    "ConvexRegimeError",
    "DomainError",
    "ModelParams",
    "UNIT",
    "Interval",
    "Root",
    "PolynomialLagrangian",
    "TangentPoint",
    "VacuumState",
    "lagrangian_eval",
    "legendre_map",
    "invert_legendre_map",
    "cusp_momenta",
    "tangent_point_right",
    "tangent_point_left",
    "hamiltonian_closed_form",
    "hamiltonian_subgradient",
    "multivalued_hamiltonian",
    "revised_lagrangian",
    "momentum_of_velocity_revised",
    "vacuum_lft",
    "vacuum_cusp",
]

# |27 q**2 - 4| below this switches the tangent point to the root solver.
CUSP_FALLBACK = 1e-8
# Below this relative size the discriminant is recomputed exactly.
NEAR_CUSP_RTOL = 1e-9

_SQRT3 = math.sqrt(3.0)


class ConvexRegimeError(ValueError):
    """Raised when an operation needs cusps but ``kappa <= 0``."""


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


@dataclass(frozen=True)
class ModelParams:
    """Coefficient of the quadratic term of the quartic model."""

    kappa: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.kappa):
            raise ValueError(f"kappa must be finite, got {self.kappa!r}")

    @property
    def convex(self) -> bool:
        return self.kappa <= 0.0


UNIT = ModelParams(1.0)


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]``."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class Root:
    value: float
    multiplicity: int = 1


@dataclass(frozen=True)
class PolynomialLagrangian:
    """``L(v) = sum(c_i * v**i)`` with ``coeffs = (c_0, ..., c_d)``.

    Trailing zero coefficients are dropped so that ``degree`` is exact.
    """

    coeffs: tuple

    def __post_init__(self):
        c = [float(x) for x in self.coeffs]
        if not all(math.isfinite(x) for x in c):
            raise ValueError("coefficients must be finite")
        while len(c) > 1 and c[-1] == 0.0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) if c else (0.0,))

    @classmethod
    def quartic(cls, params: ModelParams = UNIT) -> "PolynomialLagrangian":
        return cls((0.0, 0.0, -params.kappa / 2.0, 0.0, 0.25))

    @classmethod
    def extended_example(cls) -> "PolynomialLagrangian":
        """``v**2/2 - v**3/3 + v**4/17``."""
        return cls((0.0, 0.0, 0.5, -1.0 / 3.0, 1.0 / 17.0))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> float:
        return self.coeffs[-1]

    @property
    def conjugate_bounded(self) -> bool:
        """False when the conjugate may be infinite for some momenta."""
        return self.degree >= 2 and self.degree % 2 == 0 and self.leading > 0

    def __call__(self, v):
        return np.polynomial.polynomial.polyval(v, self.coeffs)

    def momentum(self, v):
        return np.polynomial.polynomial.polyval(
            v, np.polynomial.polynomial.polyder(self.coeffs))


@dataclass(frozen=True)
class TangentPoint:
    """Point where the supporting line of slope ``momentum`` touches L."""

    momentum: float
    velocity: float
    intercept: float
    imaginary_residue: float = 0.0


VelocitySet = Union[tuple, Interval]


@dataclass(frozen=True)
class VacuumState:
    """Minimum-energy configuration of a Hamiltonian.

    ``momenta[i]`` pairs with ``velocity_set[i]`` when the velocity set is
    finite.  An :class:`Interval` velocity set means every velocity in it
    is admissible at the single minimizing momentum.
    """

    energy: float
    momenta: tuple
    velocity_set: VelocitySet = field(default=())


def _scalar_or_array(fn, x):
    if np.ndim(x) == 0:
        return fn(float(x))
    arr = np.asarray(x, dtype=float)
    return np.array([fn(float(t)) for t in arr.ravel()]).reshape(arr.shape)


def lagrangian_eval(v, params: ModelParams = UNIT):
    """Quartic model Lagrangian ``v**4/4 - kappa*v**2/2``."""
    v2 = np.multiply(v, v)
    return 0.25 * v2 * v2 - 0.5 * params.kappa * v2


def legendre_map(v, params: ModelParams = UNIT):
    """Momentum ``dL/dv = v**3 - kappa*v``."""
    return np.multiply(v, np.multiply(v, v) - params.kappa)


def _newton_polish(v: float, p: float, kappa: float, steps: int = 3) -> float:
    # Only accept steps that reduce the residual; keeps double roots stable.
    g = v * v * v - kappa * v - p
    for _ in range(steps):
        dg = 3.0 * v * v - kappa
        if dg == 0.0 or g == 0.0:
            break
        w = v - g / dg
        gw = w * w * w - kappa * w - p
        if abs(gw) >= abs(g):
            break
        v, g = w, gw
    return v


def _single_real_root(p: float, kappa: float) -> float:
    # Cardano with the cancellation-free pairing u * w = kappa / 3.
    disc = 0.25 * p * p - kappa ** 3 / 27.0
    t = 0.5 * p + math.copysign(math.sqrt(disc), p)
    u = math.copysign(abs(t) ** (1.0 / 3.0), t)
    v = 0.0 if u == 0.0 else u + kappa / (3.0 * u)
    return _newton_polish(v, p, kappa)


def _exact_discriminant(p: float, kappa: float) -> float:
    d = 27 * Fraction(p) ** 2 - 4 * Fraction(kappa) ** 3
    return float(d)


def invert_legendre_map(p: float, params: ModelParams = UNIT) -> tuple:
    """All real roots of ``v**3 - kappa*v = p`` in ascending order.

    Returns a tuple of :class:`Root`.  A double root is reported once with
    ``multiplicity=2``; inside the cusp band there are three simple roots.
    Since the cusp momenta are irrational, ``p`` counts as a cusp when it is
    the double nearest to one (the discriminant is then evaluated exactly).
    """
    p = float(p)
    if not math.isfinite(p):
        raise DomainError(f"momentum must be finite, got {p!r}")
    kappa = params.kappa
    if kappa <= 0.0:
        return (Root(_single_real_root(p, kappa)),)

    scale = 4.0 * kappa ** 3
    delta = 27.0 * p * p - scale
    if abs(delta) <= NEAR_CUSP_RTOL * scale:
        delta = _exact_discriminant(p, kappa)
    if p != 0.0 and abs(delta) <= 27.0 * abs(p) * math.ulp(p):
        double = -1.5 * p / kappa
        simple = 3.0 * p / kappa
        pair = [Root(double, 2), Root(simple, 1)]
        return tuple(sorted(pair, key=lambda r: r.value))
    if delta > 0.0:
        return (Root(_single_real_root(p, kappa)),)

    r = 2.0 * math.sqrt(kappa / 3.0)
    c = 1.5 * p / kappa * math.sqrt(3.0 / kappa)
    theta = math.acos(min(1.0, max(-1.0, c))) / 3.0
    roots = sorted(
        _newton_polish(r * math.cos(theta - 2.0 * math.pi * k / 3.0), p, kappa)
        for k in range(3))
    return tuple(Root(v) for v in roots)


def cusp_momenta(params: ModelParams = UNIT) -> tuple:
    """Local extrema ``(p1, p2)`` of the Legendre map, with ``p1 = -p2``."""
    if params.kappa <= 0.0:
        raise ConvexRegimeError(
            f"kappa={params.kappa} gives a monotone Legendre map with no cusps")
    # correctly rounded sqrt(4 kappa**3 / 27), so that it is the double nearest the cusp
    with localcontext() as ctx:
        ctx.prec = 50
        p2 = float((4 * Decimal(params.kappa) ** 3 / 27).sqrt())
    return -p2, p2


def _radicand_term(q: float) -> complex:
    """``9q + sqrt(3) * sqrt(27 q**2 - 4)`` on the principal branch."""
    rad = 27.0 * q * q - 4.0
    if rad >= 0.0:
        root = _SQRT3 * math.sqrt(rad)
        if q < 0.0:
            # s * (9q - root) = 12 avoids cancelling two large terms
            return complex(12.0 / (9.0 * q - root))
        return complex(9.0 * q + root)
    return complex(9.0 * q, _SQRT3 * math.sqrt(-rad))


def _phi_right(q: float) -> complex:
    s = _radicand_term(q) ** (1.0 / 3.0)
    return (2.0 / 3.0) ** (1.0 / 3.0) / s + s / (2.0 ** (1.0 / 3.0) * 3.0 ** (2.0 / 3.0))


def _phi_left(q: float) -> complex:
    s = _radicand_term(q) ** (1.0 / 3.0)
    w = complex(1.0, _SQRT3)
    return (-w / (2.0 ** (2.0 / 3.0) * 3.0 ** (1.0 / 3.0) * s)
            - w.conjugate() * s / (2.0 ** (4.0 / 3.0) * 3.0 ** (2.0 / 3.0)))


def _tangent_point(p: float, params: ModelParams, right: bool) -> TangentPoint:
    kappa = params.kappa
    if kappa <= 0.0:
        raise ConvexRegimeError("tangent-point closed forms need kappa > 0")
    su = math.sqrt(kappa)
    q = p / kappa ** 1.5
    if abs(27.0 * q * q - 4.0) < CUSP_FALLBACK:
        roots = invert_legendre_map(q, UNIT)
        u = _newton_polish((roots[-1] if right else roots[0]).value, q, 1.0)
        residue = 0.0
    else:
        z = _phi_right(q) if right else _phi_left(q)
        u, residue = z.real, abs(z.imag)
    v = su * u
    return TangentPoint(
        momentum=p,
        velocity=v,
        intercept=float(lagrangian_eval(v, params)) - p * v,
        imaginary_residue=su * residue,
    )


def tangent_point_right(p: float, params: ModelParams = UNIT) -> TangentPoint:
    """Rightmost tangent point for ``p >= 0`` (largest root of the map)."""
    p = float(p)
    if not p >= 0.0:
        raise DomainError(f"right tangent point needs p >= 0, got {p}")
    return _tangent_point(p, params, right=True)


def tangent_point_left(p: float, params: ModelParams = UNIT) -> TangentPoint:
    """Leftmost tangent point for ``p < 0``.

    Evaluated with complex cube roots; the discarded imaginary part is kept
    in ``imaginary_residue``.
    """
    p = float(p)
    if not p < 0.0:
        raise DomainError(f"left tangent point needs p < 0, got {p}")
    return _tangent_point(p, params, right=False)


def _hamiltonian(p: float, params: ModelParams) -> float:
    if params.convex:
        # monotone Legendre map: the ordinary transform at the unique root
        v = invert_legendre_map(p, params)[0].value
        return p * v - float(lagrangian_eval(v, params))
    tp = (tangent_point_right(p, params) if p >= 0.0
          else tangent_point_left(p, params))
    return -tp.intercept


def hamiltonian_closed_form(p, params: ModelParams = UNIT):
    """Convex Hamiltonian ``sup_v [p v - L(v)]`` from tangent points.

    Accepts a scalar or an array of momenta.  The branch choice at
    ``p = 0`` is immaterial: both tangent points give the same intercept.
    """
    return _scalar_or_array(lambda t: _hamiltonian(t, params), p)


def hamiltonian_subgradient(p: float, params: ModelParams = UNIT):
    """``dH/dp`` as a velocity, or the interval ``[-sqrt(kappa), sqrt(kappa)]`` at the kink ``p = 0``."""
    p = float(p)
    if p == 0.0:
        su = math.sqrt(params.kappa)
        return Interval(-su, su)
    tp = tangent_point_right(p, params) if p > 0.0 else tangent_point_left(p, params)
    return tp.velocity


def multivalued_hamiltonian(v, params: ModelParams = UNIT):
    """Naive Legendre transform ``3 v**4/4 - kappa v**2/2`` parameterized by velocity."""
    v2 = np.multiply(v, v)
    return 0.75 * v2 * v2 - 0.5 * params.kappa * v2


def revised_lagrangian(v, params: ModelParams = UNIT):
    """Convex hull of the quartic: flat at ``-kappa**2/4`` on ``|v| <= sqrt(kappa)``."""
    kappa = max(params.kappa, 0.0)
    out = np.where(np.abs(v) > math.sqrt(kappa),
                   lagrangian_eval(v, params), -0.25 * kappa * kappa)
    return float(out) if np.ndim(out) == 0 else out


def momentum_of_velocity_revised(v, params: ModelParams = UNIT):
    """Monotone momentum map of the revised Lagrangian (zero on the flat piece)."""
    kappa = max(params.kappa, 0.0)
    out = np.where(np.abs(v) > math.sqrt(kappa), legendre_map(v, params), 0.0)
    return float(out) if np.ndim(out) == 0 else out


def vacuum_lft(params: ModelParams = UNIT) -> VacuumState:
    """Minimum of the convex Hamiltonian: a kink at ``p = 0``."""
    return VacuumState(
        energy=_hamiltonian(0.0, params),
        momenta=(0.0,),
        velocity_set=hamiltonian_subgradient(0.0, params),
    )


def vacuum_cusp(params: ModelParams = UNIT) -> VacuumState:
    """Minimum of the multi-valued Hamiltonian, reached at its two cusps.

    Momenta are ascending; ``velocity_set`` holds the paired velocities,
    so ``p0 = -p2`` goes with ``+sqrt(kappa/3)``.
    """
    if params.kappa <= 0.0:
        raise ConvexRegimeError("the multi-valued Hamiltonian has no cusps for kappa <= 0")
    v0 = math.sqrt(params.kappa / 3.0)
    velocities = (v0, -v0)
    return VacuumState(
        energy=float(multivalued_hamiltonian(v0, params)),
        momenta=tuple(float(legendre_map(v, params)) for v in velocities),
        velocity_set=velocities,
    )


def sorted_velocities(roots: Sequence[Root]) -> list:
    """Expand roots by multiplicity, ascending."""
    out = []
    for r in roots:
        out.extend([r.value] * r.multiplicity)
    return out
