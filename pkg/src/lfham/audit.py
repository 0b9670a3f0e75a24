"""Self-checks of the invariants the toolkit promises, runnable from the CLI."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from . import analytic as an
from . import branches as br
from . import conjugate as cj


@dataclass(frozen=True)
class AuditResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _check(name, value, limit, fmt="{:.3e}") -> AuditResult:
    return AuditResult(name, bool(value <= limit), f"{fmt.format(value)} <= {limit:g}")


def tangency(rng) -> AuditResult:
    ps = np.linspace(-10.0, 10.0, 2001)
    ps = ps[ps != 0.0]
    worst = 0.0
    for p in ps:
        tp = an.tangent_point_right(p) if p > 0 else an.tangent_point_left(p)
        worst = max(worst, abs(tp.velocity ** 3 - tp.velocity - p))
    return _check("tangency |v^3 - v - p|", worst, 1e-10)


def imaginary_residue(rng) -> AuditResult:
    p1, _ = an.cusp_momenta()
    ps = rng.uniform(-10.0, p1, 10_000)
    worst = max(an.tangent_point_left(p).imaginary_residue for p in ps)
    return _check("left tangent imaginary residue", worst, 1e-10)


def fenchel_young(rng, n: int = 2001) -> AuditResult:
    v = np.linspace(-3.0, 3.0, n)
    p = np.linspace(-3.0, 3.0, n)
    H = an.hamiltonian_closed_form(p)
    L = an.lagrangian_eval(v)
    excess = np.max(p[:, None] * v[None, :] - L[None, :] - H[:, None])
    return _check(f"Fenchel-Young excess on {n}x{n} grid", excess, 1e-9)


def evenness(rng) -> AuditResult:
    p = np.linspace(0.0, 10.0, 1001)
    gap = np.max(np.abs(an.hamiltonian_closed_form(p) - an.hamiltonian_closed_form(-p)))
    return _check("H(p) - H(-p)", gap, 1e-12)


def hull_dominance(rng) -> AuditResult:
    v = np.linspace(-5.0, 5.0, 10_001)
    excess = np.max(an.revised_lagrangian(v) - an.lagrangian_eval(v))
    return _check("revised L above original", excess, 1e-12)


def monotone_momentum(rng) -> AuditResult:
    v = np.linspace(-5.0, 5.0, 10_001)
    drop = max(0.0, -float(np.min(np.diff(an.momentum_of_velocity_revised(v)))))
    return _check("revised momentum decrease", drop, 0.0)


def oracle_equivalence(rng, instances: int = 1000) -> AuditResult:
    worst = 0.0
    for _ in range(instances):
        n = int(rng.integers(2, 201))
        x = np.sort(rng.choice(np.linspace(-10.0, 10.0, 20_001), n, replace=False))
        f = cj.SampledFunction(x, rng.uniform(-10.0, 10.0, n))
        g = cj.SlopeGrid(np.unique(rng.uniform(-20.0, 20.0, 64)))
        a = cj.conjugate_bruteforce(f, g).values
        b = cj.conjugate_fast(f, g).values
        worst = max(worst, float(np.max(np.abs(a - b))))
    return _check(f"fast vs brute-force conjugate ({instances} instances)", worst, 1e-12)


def vacuum_consistency(rng) -> AuditResult:
    p = np.linspace(-2.0, 2.0, 4001)
    v = np.linspace(-2.0, 2.0, 4001)
    v = np.union1d(v, [-math.sqrt(1 / 3), math.sqrt(1 / 3)])
    gap = max(abs(an.vacuum_lft().energy - float(np.min(an.hamiltonian_closed_form(p)))),
              abs(an.vacuum_cusp().energy - float(np.min(an.multivalued_hamiltonian(v)))))
    return _check("vacuum energy vs grid minimum", gap, 1e-9)


def xi_certificate(rng, draws: int = 1000) -> AuditResult:
    remap = br.XiRemap.from_params()
    p1, p2 = remap.p1, remap.p2
    inside = rng.uniform(p1, p2, draws)
    inside = inside[(inside > p1) & (inside < p2)]
    n_xi = {len(br.xi_remap(p, remap)) for p in inside}
    n_sol = {br.xi_multiplicity_audit(x) for x in inside}
    edges = (br.xi_multiplicity_audit(p1), br.xi_multiplicity_audit(p2),
             br.xi_multiplicity_audit(2 * p2), len(br.xi_remap(2 * p2, remap)))
    ok = n_xi == {3} and n_sol == {3} and edges == (2, 2, 1, 1)
    return AuditResult("xi remap stays three-valued", ok,
                       f"xi counts {sorted(n_xi)}, solution counts {sorted(n_sol)}, "
                       f"edge/outside counts {edges}")


CHECKS: List[Callable] = [
    tangency,
    imaginary_residue,
    fenchel_young,
    evenness,
    hull_dominance,
    monotone_momentum,
    oracle_equivalence,
    vacuum_consistency,
    xi_certificate,
]


def run_all(seed: int = 0) -> List[AuditResult]:
    rng = np.random.default_rng(seed)
    return [check(rng) for check in CHECKS]
