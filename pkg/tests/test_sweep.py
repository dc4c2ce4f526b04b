import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from numrad import sweep
from numrad.errors import Unachievable
from numrad.sweep import _local_bound, _wedge_bound, sup_periodic


def test_sup_periodic_trig_polynomial():
    # f = cos(x) + 0.3 cos(3x + 1): |f'| <= 1.9, f'' >= -3.7
    f = lambda x: np.cos(x) + 0.3 * np.cos(3 * x + 1)
    res = sup_periodic(lambda x: (f(x), f(x)), 2 * math.pi, 1.9, 3.7, 1e-10)
    xs = np.linspace(0, 2 * math.pi, 2_000_001)
    ref = f(xs).max()
    assert res.lower <= ref + 1e-12 and res.upper >= ref - 1e-12
    assert res.upper - res.lower <= 1e-10
    lows = [t[0] for t in res.trace]
    ups = [t[1] for t in res.trace]
    assert lows == sorted(lows) and ups == sorted(ups, reverse=True)


def test_sup_periodic_constant_function():
    res = sup_periodic(lambda x: (np.full_like(x, 2.0), np.full_like(x, 2.0)), math.pi, 0.0, 0.0, 1e-9)
    assert res.lower == res.upper == 2.0 and res.rounds == 0


def test_sup_periodic_round_limit(monkeypatch):
    monkeypatch.setattr(sweep, "MAX_ROUNDS", 1)
    with pytest.raises(Unachievable):
        sup_periodic(lambda x: (np.sin(x + 0.1), np.sin(x + 0.1)), 2 * math.pi, 1.0, 1.0, 1e-14)


def test_sup_periodic_width_floor():
    # an upper bound that never meets the sampled values forces intervals below double precision
    with pytest.raises(Unachievable):
        sup_periodic(lambda x: (np.zeros_like(x), np.full_like(x, 1.0)), 1.0, 1.0, 0.0, 1e-9)


def test_argmax_ties_use_smallest_angle():
    f = lambda x: np.cos(2 * x)   # maxima at 0 and pi
    res = sup_periodic(lambda x: (f(x), f(x)), 2 * math.pi, 2.0, 4.0, 1e-9)
    assert res.argmax == 0.0


def test_wedge_bound_exact_for_disk():
    # a disk of radius 1: support 1 everywhere, max over the arc is 1 / cos(width/2)
    assert _wedge_bound(1.0, 1.0, 0.2) == pytest.approx(1 / math.cos(0.1))


@given(st.integers(0, 2**32 - 1), st.integers(2, 8), st.floats(0.001, 0.3))
def test_local_bound_dominates_eigenvalue_curve(seed, n, width):
    rng = np.random.default_rng(seed)
    f = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    f = 0.5 * (f + f.conj().T)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    g = 0.5 * (g + g.conj().T)
    lam, v = np.linalg.eigh(f)
    k = v.conj().T @ g @ v
    mag2 = np.abs(k) ** 2
    diag = np.real(np.diag(k))
    off = mag2.sum() - (diag ** 2).sum() - 2 * (mag2[-1].sum() - mag2[-1, -1])
    bound = _local_bound(lam[-1], diag[-1], lam[:-1].copy(), mag2[-1, :-1].copy(), diag[:-1].copy(),
                         math.sqrt(max(off, 0.0)), 0.0, width)
    us = np.linspace(0.0, width, 201)
    curve = [np.linalg.eigvalsh(math.cos(u) * f + math.sin(u) * g)[-1] for u in us]
    assert max(curve) <= bound + 1e-12
