import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfham.analytic import ConvexRegimeError, ModelParams, hamiltonian_closed_form, legendre_map
from lfham.branches import (
    Selector,
    XiRemap,
    enumerate_branches,
    swallow_tail_curve,
    xi_branches,
    xi_multiplicity_audit,
    xi_remap,
)

from conftest import P2, SQRT3, bisect_roots

BRANCHES = enumerate_branches()
REMAP = XiRemap.from_params()


def test_branch_layout():
    by_label = {b.label: b for b in BRANCHES}
    assert by_label["phi1"].velocity_selector is Selector.HIGHEST
    assert by_label["phi2"].momentum_interval.lo == pytest.approx(-P2)
    assert by_label["phi2"].momentum_interval.hi == pytest.approx(P2)
    assert by_label["phi3"].momentum_interval.lo == -math.inf
    assert by_label["phi1"].momentum_interval.hi == math.inf
    with pytest.raises(ConvexRegimeError):
        enumerate_branches(ModelParams(0.0))


def test_branches_at_zero():
    v = BRANCHES.velocities(0.0)
    assert [v["phi3"], v["phi2"], v["phi1"]] == pytest.approx([-1, 0, 1], abs=1e-15)
    h = BRANCHES.hamiltonians(0.0)
    assert [h["phi3"], h["phi2"], h["phi1"]] == pytest.approx([0.25, 0, 0.25], abs=1e-15)


def test_branches_at_cusp_share_double_root():
    v = BRANCHES.velocities(P2)
    assert len(v) == 3
    assert len(set(v.values())) == 2
    assert v["phi3"] == v["phi2"] == pytest.approx(-1 / SQRT3, abs=1e-15)
    assert v["phi1"] == pytest.approx(2 / SQRT3, abs=1e-15)


def test_single_branch_outside_band():
    assert list(BRANCHES.velocities(2 * P2)) == ["phi1"]
    assert list(BRANCHES.velocities(-2 * P2)) == ["phi3"]


def test_three_distinct_values_inside_band():
    for p in np.linspace(-0.99 * P2, 0.99 * P2, 41):
        if abs(p) < 1e-6:
            # the two outer branches cross at p = 0
            continue
        assert len(set(BRANCHES.hamiltonians(p).values())) == 3


def test_branch_union_covers_graph():
    v = np.linspace(-2.5, 2.5, 5001)
    for vi in v:
        p = float(legendre_map(vi))
        hits = [lbl for lbl, w in BRANCHES.velocities(p).items() if abs(w - vi) <= 1e-9]
        # cusp double roots are shared; nowhere else
        near_cusp = abs(abs(vi) - 1 / SQRT3) < 1e-6
        assert len(hits) == 1 or (near_cusp and len(hits) == 2)


def test_branch_roots_match_bisection():
    for p in (-0.3, 0.1, 0.35):
        oracle = bisect_roots(lambda v: v ** 3 - v - p)
        got = BRANCHES.velocities(p)
        assert [got["phi3"], got["phi2"], got["phi1"]] == pytest.approx(oracle, abs=1e-12)


def test_lft_hamiltonian_is_upper_envelope_of_branches():
    for p in np.linspace(-P2, P2, 401):
        top = max(BRANCHES.hamiltonians(p).values())
        assert hamiltonian_closed_form(p) == pytest.approx(top, abs=1e-9)


def test_swallow_tail_points():
    curve = swallow_tail_curve([-1 / SQRT3, 0.0, 1 / SQRT3, 1.0])
    assert curve[0] == pytest.approx([P2, -1 / 12], abs=1e-15)
    assert curve[2] == pytest.approx([-P2, -1 / 12], abs=1e-15)
    assert curve[1] == pytest.approx([0, 0], abs=0)
    assert curve[3] == pytest.approx([0, 0.25], abs=1e-15)
    with pytest.raises(ValueError):
        swallow_tail_curve([1.0, 0.0])


def test_swallow_tail_agrees_with_lft_outside_band():
    v = np.linspace(-3, 3, 6001)
    curve = swallow_tail_curve(v)
    outside = np.abs(curve[:, 0]) > P2
    assert np.max(np.abs(curve[outside, 1] - hamiltonian_closed_form(curve[outside, 0]))) <= 1e-9
    # the lobe that differs from the LFT curve lives entirely inside [p1, p2]
    diff = np.abs(curve[:, 1] - hamiltonian_closed_form(curve[:, 0])) > 1e-9
    assert np.all(np.abs(curve[diff, 0]) <= P2 + 1e-12)


def test_branch_symmetry():
    for p in np.linspace(-1, 1, 81):
        a = BRANCHES.velocities(p)
        b = BRANCHES.velocities(-p)
        mirror = {"phi1": "phi3", "phi2": "phi2", "phi3": "phi1"}
        assert {mirror[k]: -v for k, v in a.items()} == pytest.approx(b, abs=1e-12)


def test_xi_remap_examples():
    assert xi_remap(0.0, REMAP) == pytest.approx((-2 * P2, 0.0, 2 * P2), abs=1e-15)
    assert xi_remap(2 * P2, REMAP) == pytest.approx((4 * P2,), abs=1e-15)
    at_cusp = xi_branches(REMAP.p2, REMAP)
    assert at_cusp[0] == at_cusp[1] == REMAP.p1
    assert len(xi_remap(REMAP.p2, REMAP)) == 2
    assert len(xi_remap(REMAP.p1, REMAP)) == 2
    assert len(xi_remap(-2 * P2, REMAP)) == 1


def test_xi_remap_validation():
    with pytest.raises(ValueError):
        XiRemap(0.1, 0.2)


@given(st.floats(-1, 1, exclude_min=True, exclude_max=True))
@settings(max_examples=500)
def test_xi_three_valued_inside(frac):
    p = frac * P2
    assert len(xi_remap(p, REMAP)) == 3
    assert xi_multiplicity_audit(p) == 3


def test_xi_multiplicity_examples():
    assert xi_multiplicity_audit(0.0) == 3
    assert xi_multiplicity_audit(1.0) == 1
    assert xi_multiplicity_audit(P2) == 2
    assert xi_multiplicity_audit(-P2) == 2
    with pytest.raises(ConvexRegimeError):
        xi_multiplicity_audit(0.0, ModelParams(-1.0))
