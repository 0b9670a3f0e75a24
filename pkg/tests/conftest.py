import math

import numpy as np
import pytest

SQRT3 = math.sqrt(3.0)
P2 = 2.0 / (3.0 * SQRT3)


def bisect_roots(fn, lo=-10.0, hi=10.0, n=200_001, tol=1e-15):
    """Real roots of a continuous scalar function by sign changes plus bisection.

    Independent of the closed forms and the trigonometric solver.
    """
    x = np.linspace(lo, hi, n)
    y = fn(x)
    roots = [float(x[i]) for i in np.flatnonzero(y == 0.0)]
    for i in np.flatnonzero(y[:-1] * y[1:] < 0):
        a, b = float(x[i]), float(x[i + 1])
        fa = fn(a)
        while b - a > tol * max(1.0, abs(a)):
            m = 0.5 * (a + b)
            fm = fn(m)
            if fm == 0.0:
                a = b = m
                break
            if (fm < 0) == (fa < 0):
                a, fa = m, fm
            else:
                b = m
        roots.append(0.5 * (a + b))
    return sorted(roots)


def sup_on_grid(p, fn, lo=-6.0, hi=6.0, n=600_001):
    """Brute-force ``sup_v p v - fn(v)`` refined by golden section around the best sample."""
    v = np.linspace(lo, hi, n)
    i = int(np.argmax(p * v - fn(v)))
    a, b = v[max(i - 1, 0)], v[min(i + 1, n - 1)]
    g = lambda t: -(p * t - fn(t))
    phi = (math.sqrt(5) - 1) / 2
    c, d = b - phi * (b - a), a + phi * (b - a)
    for _ in range(80):
        if g(c) < g(d):
            b, d = d, c
            c = b - phi * (b - a)
        else:
            a, c = c, d
            d = a + phi * (b - a)
    t = 0.5 * (a + b)
    return p * t - fn(t)


@pytest.fixture
def rng():
    return np.random.default_rng(20131015)


ACCEPTANCE = []


@pytest.fixture
def record():
    """Register one acceptance line; the summary prints them after the run."""
    def _record(label, passed, detail):
        ACCEPTANCE.append((label, bool(passed), detail))
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
