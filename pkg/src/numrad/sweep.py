"""Certified global maxima of periodic one-dimensional functions.

Two engines share the same refine-until-closed loop:

``sup_support``
    maximises ``g(theta) = ||F(theta)||`` over ``[0, pi)`` for a Hermitian
    family ``F(theta) = cos(theta) P + sin(theta) Q``.  Each eigensolve at
    ``theta`` yields the support function of the numerical range of
    ``P + iQ`` at the two opposite directions ``theta`` and ``theta + pi``.

``sup_periodic``
    maximises an arbitrary function with known Lipschitz and
    semiconvexity constants (``f'' >= -curvature``).

Every interval between evaluated nodes carries an upper bound on the
function over that interval; bounds only ever shrink (a child interval
inherits its parent's bound as a cap), and the incumbent lower bound only
ever grows, so the enclosure ``[lower, upper]`` tightens monotonically.
Intervals whose bound exceeds ``lower + tol`` are subdivided until none
remain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numba import njit

from numrad.errors import Unachievable

INITIAL_GRID = 64
MAX_ROUNDS = 200
MAX_EVALS = 1_000_000
_LOCAL_SAMPLES = 65


@dataclass(frozen=True)
class SweepResult:
    lower: float
    upper: float
    argmax: float
    evals: int
    rounds: int
    trace: tuple[tuple[float, float], ...]


# ---------------------------------------------------------------------------
# interval bounds


@njit(cache=True)
def _local_bound(lam1, k11, rest_lam, rest_k2, rest_kd, omega, u0, u1):
    """Upper bound of ``lambda_max(cos(u) F + sin(u) G)`` for ``u`` in ``[u0, u1]``.

    Work in the eigenbasis of ``F``: ``lam1`` is the top eigenvalue,
    ``k11`` the matching diagonal entry of ``G``, ``rest_lam`` /
    ``rest_kd`` the remaining eigenvalues and diagonal entries of ``G``,
    ``rest_k2`` the squared couplings ``|G[k, top]|^2`` and ``omega`` bounds
    the off-diagonal part of ``G`` restricted to the remaining indices.
    The matrix is dominated (Loewner order) by an arrow matrix whose top
    eigenvalue is the largest root of a secular equation, and that root is
    at most ``alpha(u) + sin(u)^2 * sum_k rest_k2 / delta_k`` as long as
    every ``delta_k`` stays positive.
    """
    dmax = max(abs(u0), abs(u1))
    if dmax >= 0.5:
        return np.inf
    cd = math.cos(dmax)
    sd = math.sin(dmax)
    s = 0.0
    for k in range(rest_lam.shape[0]):
        delta = cd * (lam1 - rest_lam[k]) - sd * (abs(k11 - rest_kd[k]) + omega)
        if delta <= 0.0:
            return np.inf
        s += rest_k2[k] / delta
    # phi(u) = lam1 cos u + k11 sin u + s sin^2 u; on each sub-step bound it by
    # its second-order Taylor model plus a third-derivative remainder
    h = (u1 - u0) / (_LOCAL_SAMPLES - 1)
    m3 = abs(lam1) + abs(k11) + 4.0 * s
    rem = m3 * h * h * h / 6.0
    best = -np.inf
    for i in range(_LOCAL_SAMPLES - 1):
        u = u0 + i * h
        su = math.sin(u)
        cu = math.cos(u)
        f0 = lam1 * cu + k11 * su + s * su * su
        f1 = -lam1 * su + k11 * cu + 2.0 * s * su * cu
        f2 = -lam1 * cu - k11 * su + 2.0 * s * (cu * cu - su * su)
        val = max(f0, f0 + f1 * h + 0.5 * f2 * h * h)
        if f2 < 0.0:
            t = -f1 / f2
            if 0.0 < t < h:
                val = max(val, f0 + 0.5 * f1 * t)
        if val > best:
            best = val
    return best + rem


@njit(cache=True)
def _wedge_bound(sa, sb, width):
    """Max support value over an arc of directions of length ``width < pi``.

    The convex set lies in the wedge cut out by the two supporting lines;
    the bound is the support function of that wedge.
    """
    sw = math.sin(width)
    if sw <= 0.0:
        return np.inf
    y = (sb - sa * math.cos(width)) / sw
    ang = math.atan2(y, sa)
    if 0.0 <= ang <= width:
        return math.hypot(sa, y)
    return max(sa, sb)


@njit(cache=True)
def _support_bounds(width, lip, lam_l, err_l, k11_l, rl_l, rk_l, rd_l, om_l,
                    lam_r, err_r, k11_r, rl_r, rk_r, rd_r, om_r):
    m = width.shape[0]
    out = np.empty(m)
    for i in range(m):
        d = width[i]
        best = -np.inf
        for side in range(2):
            sa = lam_l[i, side]
            sb = lam_r[i, side]
            err = max(err_l[i, side], err_r[i, side])
            lip_b = 0.5 * (sa + sb) + 0.5 * lip * d + err
            wedge = _wedge_bound(sa + err, sb + err, d)
            left = _local_bound(sa, k11_l[i, side], rl_l[i, side], rk_l[i, side], rd_l[i, side],
                                om_l[i, side], 0.0, 0.5 * d)
            right = _local_bound(sb, k11_r[i, side], rl_r[i, side], rk_r[i, side], rd_r[i, side],
                                 om_r[i, side], -0.5 * d, 0.0)
            local = max(left, right) + err
            bound = min(lip_b, min(wedge, local))
            if bound > best:
                best = bound
        out[i] = best
    return out


def _periodic_bounds(fa, fb, width, lip, curv):
    lip_b = 0.5 * (fa + fb) + 0.5 * lip * width
    if curv <= 0.0:
        quad = np.maximum(fa, fb)
    else:
        slope = (fb - fa) / width
        u = np.clip(0.5 * width + slope / curv, 0.0, width)
        quad = fa + slope * u + 0.5 * curv * u * (width - u)
    return np.minimum(lip_b, quad)


# ---------------------------------------------------------------------------
# refinement loop


def _split_counts(excess: np.ndarray, tol: float, order: float) -> np.ndarray:
    ratio = np.maximum(excess / tol, 1.0)
    return np.clip(np.ceil(ratio ** (1.0 / order)), 2, 8).astype(np.int64)


def _new_points(left: np.ndarray, right: np.ndarray, counts: np.ndarray):
    """Interior points splitting each ``[left, right]`` into ``counts`` equal parts."""
    parent = np.repeat(np.arange(left.shape[0]), counts - 1)
    offsets = np.concatenate([np.arange(1, c) for c in counts]) if counts.size else np.empty(0, dtype=np.int64)
    pts = left[parent] + (right[parent] - left[parent]) * offsets / counts[parent]
    return pts, parent


class _Refiner:
    """Bookkeeping shared by both engines: nodes, intervals, bounds, trace."""

    def __init__(self, period: float, tol: float, order: float):
        self.period = period
        self.tol = tol
        self.order = order
        self.trace: list[tuple[float, float]] = []

    def run(self, grid: int, evaluate_nodes, bound_intervals, node_values, cap: float = math.inf):
        angles = np.arange(grid) * (self.period / grid)
        evaluate_nodes(angles)
        self.evals = grid
        # node ``grid`` is the image of node 0 at the far end of the period
        order = np.arange(grid + 1)
        order[-1] = -1
        self.left = order[:-1].copy()
        self.right = order[1:].copy()
        self.l_ang = angles.copy()
        self.r_ang = np.append(angles[1:], self.period)
        self.bound = bound_intervals(self.left, self.right, self.r_ang - self.l_ang)
        rounds = 0
        while True:
            vals, angs = node_values()
            best = vals.max()
            argmax = float(angs[vals == best].min())
            upper = max(min(float(self.bound.max()), cap), best)
            self.trace.append((float(best), upper))
            if upper - best <= self.tol:
                return SweepResult(float(best), upper, argmax, self.evals, rounds, tuple(self.trace))
            if rounds >= MAX_ROUNDS:
                raise Unachievable(f"gap {upper - best:.3e} still above tol {self.tol:.1e} after {rounds} rounds")
            excess = np.minimum(self.bound, cap) - best
            open_ = np.flatnonzero(excess > self.tol)
            widths = self.r_ang[open_] - self.l_ang[open_]
            if np.any(widths <= 64 * np.finfo(float).eps * max(self.period, 1.0)):
                raise Unachievable(f"cannot close gap {upper - best:.3e} to tol {self.tol:.1e} in double precision")
            counts = _split_counts(excess[open_], self.tol, self.order)
            if self.evals + int(np.sum(counts - 1)) > MAX_EVALS:
                raise Unachievable(f"gap {upper - best:.3e} still above tol {self.tol:.1e} after {self.evals} evaluations")
            pts, parent = _new_points(self.l_ang[open_], self.r_ang[open_], counts)
            first_new = evaluate_nodes(pts)
            self.evals += pts.shape[0]
            rounds += 1
            # rebuild the split intervals as chains of children
            new_ids = first_new + np.arange(pts.shape[0])
            keep = np.ones(self.left.shape[0], dtype=bool)
            keep[open_] = False
            child_l, child_r, child_la, child_ra, child_cap = [], [], [], [], []
            start = 0
            for j, idx in enumerate(open_):
                c = counts[j]
                ids = np.concatenate(([self.left[idx]], new_ids[start:start + c - 1], [self.right[idx]]))
                angs_ = np.concatenate(([self.l_ang[idx]], pts[start:start + c - 1], [self.r_ang[idx]]))
                start += c - 1
                child_l.append(ids[:-1])
                child_r.append(ids[1:])
                child_la.append(angs_[:-1])
                child_ra.append(angs_[1:])
                child_cap.append(np.full(c, self.bound[idx]))
            cl = np.concatenate(child_l)
            cr = np.concatenate(child_r)
            cla = np.concatenate(child_la)
            cra = np.concatenate(child_ra)
            cb = np.minimum(bound_intervals(cl, cr, cra - cla), np.concatenate(child_cap))
            self.left = np.concatenate([self.left[keep], cl])
            self.right = np.concatenate([self.right[keep], cr])
            self.l_ang = np.concatenate([self.l_ang[keep], cla])
            self.r_ang = np.concatenate([self.r_ang[keep], cra])
            self.bound = np.concatenate([self.bound[keep], cb])


def sup_periodic(func: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]], period: float,
                 lipschitz: float, curvature: float, tol: float, grid: int = INITIAL_GRID) -> SweepResult:
    """Certified ``sup f`` over one period.

    ``func(angles)`` returns ``(values, upper_values)`` where ``upper_values``
    bound the exact function values from above (evaluation error included).
    ``lipschitz`` bounds ``|f'|`` and ``curvature`` bounds ``-f''`` from above.
    """
    vals: list[np.ndarray] = []
    ups: list[np.ndarray] = []
    angs: list[np.ndarray] = []
    state = {"v": np.empty(0), "u": np.empty(0), "a": np.empty(0)}

    def evaluate_nodes(points):
        first = state["v"].shape[0]
        v, u = func(points)
        vals.append(np.asarray(v, float))
        ups.append(np.asarray(u, float))
        angs.append(np.asarray(points, float))
        state["v"] = np.concatenate(vals)
        state["u"] = np.concatenate(ups)
        state["a"] = np.concatenate(angs)
        return first

    def bound_intervals(left, right, width):
        up = state["u"]
        left = np.where(left < 0, 0, left)
        right = np.where(right < 0, 0, right)
        return _periodic_bounds(up[left], up[right], width, lipschitz, curvature)

    def node_values():
        return state["v"], state["a"]

    return _Refiner(period, tol, order=2.0).run(grid, evaluate_nodes, bound_intervals, node_values)


def sup_support(evaluate: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]],
                eigh: Callable, lipschitz: float, tol: float, grid: int = INITIAL_GRID,
                cap: float = math.inf) -> SweepResult:
    """Certified ``sup_theta ||F(theta)||`` over ``[0, pi)``.

    ``evaluate(thetas)`` returns the Hermitian stacks ``F(thetas)`` and
    ``G(thetas) = F(thetas + pi/2)``; ``eigh(stack)`` returns
    ``(values, vectors, errors)``.  ``lipschitz`` must bound ``||F(theta)||``
    for every theta, which makes it a Lipschitz constant of ``g``.  ``cap`` is
    an a-priori upper bound on the supremum; it closes the gap at once when
    the sampled maximum already reaches it.
    """
    keys = ("lam", "err", "k11", "rl", "rk", "rd", "om", "g", "ang")
    store: dict[str, list[np.ndarray]] = {k: [] for k in keys}
    cat: dict[str, np.ndarray] = {}

    def evaluate_nodes(points):
        first = sum(a.shape[0] for a in store["ang"])
        f_stack, g_stack = evaluate(points)
        values, vecs, errs = eigh(f_stack)
        kmat = np.conj(np.swapaxes(vecs, 1, 2)) @ g_stack @ vecs
        top_k = kmat[:, :, -1]
        bot_k = -kmat[:, :, 0]
        lam = np.stack([values[:, -1], -values[:, 0]], axis=1)
        k11 = np.stack([top_k[:, -1].real, bot_k[:, 0].real], axis=1)
        rl = np.stack([values[:, :-1], -values[:, 1:]], axis=1)
        rk = np.stack([np.abs(top_k[:, :-1]) ** 2, np.abs(bot_k[:, 1:]) ** 2], axis=1)
        diag = np.einsum("bii->bi", kmat).real
        rd = np.stack([diag[:, :-1], -diag[:, 1:]], axis=1)
        # Frobenius norm of the off-diagonal part once the top index is removed
        mag2 = np.abs(kmat) ** 2
        off_all = mag2.sum(axis=(1, 2)) - (diag ** 2).sum(axis=1)
        row_top = mag2[:, -1, :].sum(axis=1) - mag2[:, -1, -1]
        row_bot = mag2[:, 0, :].sum(axis=1) - mag2[:, 0, 0]
        om = np.sqrt(np.maximum(np.stack([off_all - 2 * row_top, off_all - 2 * row_bot], axis=1), 0.0))
        err = np.repeat(errs[:, None], 2, axis=1)
        for key, arr in (("lam", lam), ("err", err), ("k11", k11), ("rl", rl), ("rk", rk), ("rd", rd),
                         ("om", om), ("g", lam.max(axis=1)), ("ang", np.asarray(points, float))):
            store[key].append(arr)
            cat[key] = np.concatenate(store[key])
        return first

    def side(key, ids):
        arr = cat[key][np.where(ids < 0, 0, ids)]
        wrap = ids < 0
        if np.any(wrap):
            # theta = pi is theta = 0 with the two support directions exchanged
            arr = arr.copy()
            arr[wrap] = arr[wrap][:, ::-1]
        return np.ascontiguousarray(arr)

    def bound_intervals(left, right, width):
        return _support_bounds(
            np.ascontiguousarray(width), float(lipschitz),
            *(side(key, left) for key in ("lam", "err", "k11", "rl", "rk", "rd", "om")),
            *(side(key, right) for key in ("lam", "err", "k11", "rl", "rk", "rd", "om")))

    def node_values():
        return cat["g"], cat["ang"]

    return _Refiner(math.pi, tol, order=4.0).run(grid, evaluate_nodes, bound_intervals, node_values, cap)
