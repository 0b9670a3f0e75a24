"""Branches of the multi-valued Hamiltonian and the branched-momentum remap.

Inside the cusp band ``p1 < p < p2`` the Legendre map has three preimages,
so the naive Hamiltonian has three values (the swallow tail).  The remap
``p -> xi`` below is applied branch by branch; counting its outputs shows
that it does not make the Hamiltonian single-valued.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .analytic import (
    UNIT,
    ConvexRegimeError,
    Interval,
    ModelParams,
    cusp_momenta,
    invert_legendre_map,
    legendre_map,
    multivalued_hamiltonian,
    sorted_velocities,
)

__all__ = [
    "Selector",
    "Branch",
    "BranchSet",
    "XiRemap",
    "enumerate_branches",
    "swallow_tail_curve",
    "xi_branches",
    "xi_remap",
    "xi_multiplicity_audit",
]


class Selector(enum.IntEnum):
    LOWEST = 0
    MIDDLE = 1
    HIGHEST = 2


@dataclass(frozen=True)
class Branch:
    """One root of the Legendre map followed over a closed momentum interval."""

    momentum_interval: Interval
    velocity_selector: Selector
    label: str
    params: ModelParams = UNIT

    def velocity(self, p: float) -> Optional[float]:
        """Selected root at ``p``, or None outside the branch interval."""
        if p not in self.momentum_interval:
            return None
        vs = sorted_velocities(invert_legendre_map(p, self.params))
        if len(vs) == 3:
            return vs[self.velocity_selector]
        # a lone root belongs to the outer branch on its side of the band
        if self.velocity_selector is Selector.MIDDLE:
            return None
        want_high = self.velocity_selector is Selector.HIGHEST
        return vs[0] if want_high == (p > 0.0) else None

    def hamiltonian(self, p: float) -> Optional[float]:
        v = self.velocity(p)
        return None if v is None else float(multivalued_hamiltonian(v, self.params))


@dataclass(frozen=True)
class BranchSet:
    branches: tuple

    def __iter__(self):
        return iter(self.branches)

    def __len__(self):
        return len(self.branches)

    def velocities(self, p: float) -> dict:
        """Velocity of every branch defined at ``p``, keyed by label."""
        out = {}
        for b in self.branches:
            v = b.velocity(p)
            if v is not None:
                out[b.label] = v
        return out

    def hamiltonians(self, p: float) -> dict:
        out = {}
        for b in self.branches:
            h = b.hamiltonian(p)
            if h is not None:
                out[b.label] = h
        return out


def enumerate_branches(params: ModelParams = UNIT) -> BranchSet:
    """The three branches, labelled as in the momentum-velocity plot.

    Intervals are closed and include the cusp momenta, where two branches
    share a double root.
    """
    if params.kappa <= 0.0:
        raise ConvexRegimeError("a monotone Legendre map has a single branch")
    p1, p2 = cusp_momenta(params)
    return BranchSet((
        Branch(Interval(-math.inf, p2), Selector.LOWEST, "phi3", params),
        Branch(Interval(p1, p2), Selector.MIDDLE, "phi2", params),
        Branch(Interval(p1, math.inf), Selector.HIGHEST, "phi1", params),
    ))


def swallow_tail_curve(v_grid, params: ModelParams = UNIT) -> np.ndarray:
    """Parametric samples ``(f(v), 3v**4/4 - kappa v**2/2)`` as an ``(n, 2)`` array."""
    v = np.asarray(v_grid, dtype=float)
    if v.ndim != 1 or (v.size > 1 and not np.all(np.diff(v) > 0)):
        raise ValueError("v_grid must be strictly increasing")
    return np.column_stack([legendre_map(v, params), multivalued_hamiltonian(v, params)])


@dataclass(frozen=True)
class XiRemap:
    p1: float
    p2: float

    def __post_init__(self):
        if not (self.p1 < 0.0 and self.p1 == -self.p2):
            raise ValueError(f"need p1 = -p2 < 0, got p1={self.p1}, p2={self.p2}")

    @classmethod
    def from_params(cls, params: ModelParams = UNIT) -> "XiRemap":
        return cls(*cusp_momenta(params))


def xi_branches(p: float, remap: XiRemap) -> tuple:
    """Value of each of the three remap branches at ``p`` (None where it does not apply)."""
    p1, p2 = remap.p1, remap.p2
    return (
        p - p2 + p1 if p <= p2 else None,
        -p + p2 + p1 if p1 <= p <= p2 else None,
        p + p2 - p1 if p >= p1 else None,
    )


def xi_remap(p: float, remap: XiRemap) -> tuple:
    """Every distinct xi the remap assigns to ``p``, ascending."""
    return tuple(sorted({xi for xi in xi_branches(float(p), remap) if xi is not None}))


def xi_multiplicity_audit(xi: float, params: ModelParams = UNIT) -> int:
    """Number of distinct real velocities solving ``v**3 - kappa v = -xi``."""
    if params.kappa <= 0.0:
        raise ConvexRegimeError("audit needs kappa > 0")
    return len(invert_legendre_map(-float(xi), params))
