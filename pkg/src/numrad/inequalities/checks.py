"""Executable inequality checks.

Every check evaluates one inequality chain ``c_0 <= c_1 <= ... <= c_k`` on
concrete matrices and reports the slacks ``c_{j+1} - c_j``.  Some checks
also carry *extra* slacks for side identities; those enter ``min_slack``
too, so an outcome passes exactly when ``min_slack >= -tolerance``.

Numerical radii are certified enclosures of width at most ``radius_tol``;
chains use their midpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from numrad.errors import InvalidArgument
from numrad.inequalities.families import Family, InstanceSpec
from numrad.linalg import adjoint, schatten_norm, spectral_norm, spectral_norm_stack
from numrad.radius import RadiusCertificate, radius_certified, rayleigh_lower_bound
from numrad.sweep import SweepResult, sup_periodic

SLACK_TOL = 1e-8
RADIUS_TOL = 1e-9
AUDIT_PROBES = 200


@dataclass(frozen=True)
class CheckSettings:
    tol: float = SLACK_TOL
    radius_tol: float = RADIUS_TOL
    audit_probes: int = 0       # Rayleigh probes per certificate; 0 switches the audit off
    audit_seed: int = 0


@dataclass(frozen=True)
class AuditStats:
    """Soundness evidence for the certificates computed inside one check."""

    certificates: int = 0
    max_rayleigh_excess: float = -math.inf    # max(rayleigh lower bound - certificate upper)
    max_width: float = 0.0
    monotone_traces: int = 0                  # certificates whose refinement trace was monotone

    def merge(self, other: "AuditStats") -> "AuditStats":
        return AuditStats(self.certificates + other.certificates,
                          max(self.max_rayleigh_excess, other.max_rayleigh_excess),
                          max(self.max_width, other.max_width),
                          self.monotone_traces + other.monotone_traces)


@dataclass(frozen=True)
class CheckOutcome:
    check_id: str
    instance: InstanceSpec | None
    chain_values: tuple[float, ...]
    min_slack: float
    passed: bool
    tolerance: float
    extras: tuple[tuple[str, float], ...] = ()
    details: dict = field(default_factory=dict, compare=False)
    audit: AuditStats = AuditStats()

    @property
    def chain_slacks(self) -> tuple[float, ...]:
        c = self.chain_values
        return tuple(c[j + 1] - c[j] for j in range(len(c) - 1))

    def as_dict(self) -> dict:
        return {"check_id": self.check_id,
                "instance": None if self.instance is None else self.instance.as_dict(),
                "chain_values": list(self.chain_values), "chain_slacks": list(self.chain_slacks),
                "extras": dict(self.extras), "min_slack": self.min_slack, "pass": self.passed,
                "tolerance": self.tolerance}


def _trace_monotone(trace) -> bool:
    lows = [t[0] for t in trace]
    ups = [t[1] for t in trace]
    return all(b >= a for a, b in zip(lows, lows[1:])) and all(b <= a for a, b in zip(ups, ups[1:]))


class _Radii:
    """Computes certified radii for one check and keeps the audit tally."""

    def __init__(self, settings: CheckSettings):
        self.settings = settings
        self.stats = AuditStats()
        self.certs: list[RadiusCertificate] = []

    def cert(self, m) -> RadiusCertificate:
        s = self.settings
        c = radius_certified(m, s.radius_tol)
        self.certs.append(c)
        excess = -math.inf
        if s.audit_probes > 0:
            seed = (s.audit_seed + 7919 * len(self.certs)) % 2 ** 63
            excess = rayleigh_lower_bound(m, s.audit_probes, seed) - c.upper
        self.stats = self.stats.merge(AuditStats(1, excess, c.width, int(_trace_monotone(c.trace))))
        return c

    def w(self, m) -> float:
        return self.cert(m).midpoint


def _finish(check_id: str, chain, settings: CheckSettings, instance=None, extras=(),
            tolerance: float | None = None, details=None, radii: _Radii | None = None) -> CheckOutcome:
    chain = tuple(float(c) for c in chain)
    extras = tuple((str(k), float(v)) for k, v in extras)
    slacks = [chain[j + 1] - chain[j] for j in range(len(chain) - 1)] + [v for _, v in extras]
    min_slack = min(slacks) if slacks else math.inf
    tol = settings.tol if tolerance is None else tolerance
    audit = radii.stats if radii is not None else AuditStats()
    return CheckOutcome(check_id, instance, chain, float(min_slack), bool(min_slack >= -tol), tol,
                        extras, details or {}, audit)


def _two_sided(a: float, b: float) -> float:
    return -abs(a - b)


def _block(p, q, r, s) -> np.ndarray:
    return np.block([[p, q], [r, s]])


def _zero_like(a) -> np.ndarray:
    return np.zeros_like(np.asarray(a, dtype=np.complex128))


def _re(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    return 0.5 * (a + adjoint(a))


def sup_rotation_norm(c, d, tol: float = RADIUS_TOL) -> SweepResult:
    """Certified ``sup_theta ||C + e^{i theta} D||`` over ``[0, 2 pi)``.

    ``||D||`` is both a Lipschitz constant and a semiconvexity constant of the
    function, since it is a supremum of sinusoids of amplitude at most ``||D||``.
    """
    c = np.asarray(c, dtype=np.complex128)
    d = np.asarray(d, dtype=np.complex128)
    nd = spectral_norm(d)

    def f(th):
        ph = np.exp(1j * np.asarray(th))[:, None, None]
        return spectral_norm_stack(c[None] + ph * d[None])

    return sup_periodic(f, 2 * math.pi, nd, nd, tol)


def sup_symmetric_rotation_norm(a, b, tol: float = RADIUS_TOL) -> SweepResult:
    """Certified ``sup_theta ||e^{i theta} A + e^{-i theta} B||`` over ``[0, pi)``.

    The function has period ``pi``; ``||A|| + ||B||`` bounds both its slope
    and its downward curvature.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    lip = spectral_norm(a) + spectral_norm(b)

    def f(th):
        ph = np.exp(1j * np.asarray(th))[:, None, None]
        return spectral_norm_stack(ph * a[None] + np.conj(ph) * b[None])

    return sup_periodic(f, math.pi, lip, lip, tol)


# ---------------------------------------------------------------------------
# single-operator checks


def check_basic_bounds(t, settings: CheckSettings = CheckSettings(), instance=None) -> CheckOutcome:
    """``||T||/2 <= w(T) <= ||T||``."""
    r = _Radii(settings)
    nt = spectral_norm(t)
    return _finish("basic_bounds", [0.5 * nt, r.w(t), nt], settings, instance, radii=r)


def check_cartesian_sup(t, settings: CheckSettings = CheckSettings(), instance=None) -> CheckOutcome:
    """``sup ||alpha H + beta K||`` over the unit circle agrees with the theta sweep.

    Reported as the chain ``[v, c, v]`` (circle, theta, circle) so both
    orderings are tested; the tolerance is twice the radius tolerance.
    """
    from numrad.radius import radius_via_circle

    r = _Radii(settings)
    c = r.w(t)
    v = radius_via_circle(t, settings.radius_tol).midpoint
    return _finish("cartesian_sup", [v, c, v], settings, instance, tolerance=2 * settings.radius_tol,
                   radii=r)


def check_real_imag_bounds(t, settings: CheckSettings = CheckSettings(), instance=None) -> CheckOutcome:
    """``||T + T*||/2 <= w(T)`` (chain) and ``||T - T*||/2 <= w(T)`` (extra)."""
    r = _Radii(settings)
    t = np.asarray(t, dtype=np.complex128)
    w = r.w(t)
    re_part = 0.5 * spectral_norm(t + adjoint(t))
    im_part = 0.5 * spectral_norm(t - adjoint(t))
    return _finish("real_imag_bounds", [re_part, w], settings, instance,
                   extras=[("imag_part", w - im_part)], details={"imag_part": im_part}, radii=r)


def _remark_terms(t, r: _Radii):
    t = np.asarray(t, dtype=np.complex128)
    h = 0.5 * (t + adjoint(t))
    k = (t - adjoint(t)) * (-0.5j)
    s = adjoint(t) @ t + t @ adjoint(t)
    ns = spectral_norm(s)
    hk = 0.5 * (spectral_norm(h) ** 2 + spectral_norm(k) ** 2)
    w = r.w(t)
    # T*T + TT* = 2(H^2 + K^2)
    ident = spectral_norm(s - 2.0 * (h @ h + k @ k))
    return [0.25 * ns, hk, w * w, 0.5 * ns], ident


def check_remarks(t, settings: CheckSettings = CheckSettings(), instance=None) -> CheckOutcome:
    """``||T*T+TT*||/4 <= (||H||^2+||K||^2)/2 <= w^2 <= ||T*T+TT*||/2``."""
    r = _Radii(settings)
    chain, ident = _remark_terms(t, r)
    return _finish("remarks", chain, settings, instance, extras=[("square_identity", -ident)], radii=r)


def check_remark_iii(t, settings: CheckSettings = CheckSettings(), instance=None) -> CheckOutcome:
    r = _Radii(settings)
    chain, ident = _remark_terms(t, r)
    return _finish("remark_iii", chain[:3], settings, instance, extras=[("square_identity", -ident)], radii=r)


def check_remark_iv(t, settings: CheckSettings = CheckSettings(), instance=None) -> CheckOutcome:
    r = _Radii(settings)
    chain, _ = _remark_terms(t, r)
    return _finish("remark_iv", chain[2:], settings, instance, radii=r)


# ---------------------------------------------------------------------------
# pairs


def check_triangle_refinement(a, b, settings: CheckSettings = CheckSettings(), instance=None) -> CheckOutcome:
    """``||A+B|| <= 2 w([0 A; B* 0]) <= ||A|| + ||B||`` plus the sweep identity."""
    r = _Radii(settings)
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    t = _block(_zero_like(a), a, adjoint(b), _zero_like(b))
    two_w = 2.0 * r.w(t)
    sweep = sup_symmetric_rotation_norm(a, b, settings.radius_tol)
    sup = 0.5 * (sweep.lower + sweep.upper)
    chain = [spectral_norm(a + b), two_w, spectral_norm(a) + spectral_norm(b)]
    return _finish("triangle_refinement", chain, settings, instance,
                   extras=[("sweep_identity", _two_sided(two_w, sup))], details={"sup": sup}, radii=r)


def equality_residuals(a, b, r: _Radii | None = None, settings: CheckSettings = CheckSettings()):
    """Residuals of the triangle equality and of the two numerical-radius equalities.

    Returns ``(lhs, r1, r2, chain, herm_gap)`` where ``lhs = ||A||+||B||-||A+B||``,
    ``r1 = w(T_AB) + w(T_BA) - w(S)`` and ``r2 = w(N_A) + w(N_B) - w(T_AB)``
    with ``T_AB = [0 A; B* 0]``, ``T_BA = [0 B; A* 0]``, ``S = T_AB + T_BA``,
    ``N_A = [0 A; 0 0]`` and ``N_B = [0 0; B* 0]``.
    """
    r = _Radii(settings) if r is None else r
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    z = _zero_like(a)
    w_s = r.w(_block(z, a + b, adjoint(a) + adjoint(b), z))
    w_ab = r.w(_block(z, a, adjoint(b), z))
    w_ba = r.w(_block(z, b, adjoint(a), z))
    w_na = r.w(_block(z, a, z, z))
    w_nb = r.w(_block(z, z, adjoint(b), z))
    na, nb, nab = spectral_norm(a), spectral_norm(b), spectral_norm(a + b)
    lhs = na + nb - nab
    r1 = w_ab + w_ba - w_s
    r2 = w_na + w_nb - w_ab
    chain = [w_s, w_ab + w_ba, 2.0 * (w_na + w_nb)]
    return lhs, r1, r2, chain, _two_sided(w_s, nab)


def check_equality_conditions(a, b, settings: CheckSettings = CheckSettings(), instance=None) -> CheckOutcome:
    """``||A+B|| = ||A||+||B||`` iff both numerical-radius equalities hold.

    The chain ``[w(S), w(T_AB)+w(T_BA), 2(w(N_A)+w(N_B))]`` is the triangle
    inequality for ``w`` used twice; a disagreement between the two sides of
    the biconditional becomes a negative extra slack.
    """
    r = _Radii(settings)
    tol = settings.tol
    lhs, r1, r2, chain, herm_gap = equality_residuals(a, b, r, settings)
    lhs_holds = lhs <= tol
    rhs_holds = r1 <= tol and r2 <= tol
    if lhs_holds == rhs_holds:
        bicond = 0.0
    elif lhs_holds:
        bicond = -max(r1, r2)
    else:
        bicond = -lhs
    return _finish("equality_conditions", chain, settings, instance,
                   extras=[("biconditional", bicond), ("hermitian_block", herm_gap)],
                   details={"lhs": lhs, "r1": r1, "r2": r2, "lhs_holds": lhs_holds, "rhs_holds": rhs_holds},
                   radii=r)


def check_lemma_offdiag(x, y, settings: CheckSettings = CheckSettings(), instance=None) -> CheckOutcome:
    """``w(X+Y) <= 2 w([0 X; Y 0])`` and ``w([0 C; C 0]) = w(C)`` for ``C = X + Y``."""
    r = _Radii(settings)
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    z = _zero_like(x)
    c = x + y
    w_c = r.w(c)
    w_block = r.w(_block(z, x, y, z))
    w_sym = r.w(_block(z, c, c, z))
    return _finish("lemma_offdiag", [w_c, 2.0 * w_block], settings, instance,
                   extras=[("symmetric_block", _two_sided(w_sym, w_c))], radii=r)


# ---------------------------------------------------------------------------
# checks with a positive weight X >= mI


def _norm(m, p: float) -> float:
    return spectral_norm(m) if math.isinf(p) else schatten_norm(m, p)


def check_commutator_lemma(y, x, m: float, p: float = math.inf, settings: CheckSettings = CheckSettings(),
                           instance=None) -> CheckOutcome:
    """``m N(Y) <= N(YX + XY)/2`` for the operator norm (``p = inf``) or a Schatten norm."""
    y = np.asarray(y, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    chain = [m * _norm(y, p), 0.5 * _norm(y @ x + x @ y, p)]
    return _finish("commutator_lemma", chain, settings, instance, details={"p": p})


def check_prop_l1(a, b, x, m: float, settings: CheckSettings = CheckSettings(), instance=None) -> CheckOutcome:
    """``m ||A-B|| <= w(AX-XB) <= ||AX-XB||`` for Hermitian ``A``, ``B``."""
    r = _Radii(settings)
    a, b, x = (np.asarray(v, dtype=np.complex128) for v in (a, b, x))
    t = a @ x - x @ b
    chain = [m * spectral_norm(a - b), r.w(t), spectral_norm(t)]
    return _finish("prop_l1", chain, settings, instance, radii=r)


def check_prop_schatten(a, b, x, m: float, p: float, settings: CheckSettings = CheckSettings(),
                        instance=None) -> CheckOutcome:
    """``m n^{-1/p} ||A-B||_p <= w(AX-XB) <= ||AX-XB||_p`` (``p = inf`` is the operator norm)."""
    if not p >= 1:
        raise InvalidArgument(f"Schatten index must be >= 1, got {p}")
    r = _Radii(settings)
    a, b, x = (np.asarray(v, dtype=np.complex128) for v in (a, b, x))
    n = a.shape[0]
    t = a @ x - x @ b
    scale = 1.0 if math.isinf(p) else n ** (-1.0 / p)
    chain = [m * scale * _norm(a - b, p), r.w(t), _norm(t, p)]
    return _finish("prop_schatten", chain, settings, instance, details={"p": p}, radii=r)


def check_thm_2_8(a, b, x, m: float, settings: CheckSettings = CheckSettings(), instance=None) -> CheckOutcome:
    """``m||A-B|| <= w([0 AX-XB; A*X-XB* 0]) <= (||AX-XB|| + ||A*X-XB*||)/2``."""
    r = _Radii(settings)
    a, b, x = (np.asarray(v, dtype=np.complex128) for v in (a, b, x))
    c = a @ x - x @ b
    d = adjoint(a) @ x - x @ adjoint(b)
    z = _zero_like(a)
    chain = [m * spectral_norm(a - b), r.w(_block(z, c, d, z)), 0.5 * (spectral_norm(c) + spectral_norm(d))]
    return _finish("thm_2_8", chain, settings, instance, radii=r)


def check_cor_2_4(u, v, x, m: float, settings: CheckSettings = CheckSettings(), instance=None) -> CheckOutcome:
    """``m||U-V|| <= w([0 UX-XV; U*X-XV* 0]) <= ||UX-XV||`` for unitary ``U``, ``V``."""
    r = _Radii(settings)
    u, v, x = (np.asarray(q, dtype=np.complex128) for q in (u, v, x))
    c = u @ x - x @ v
    d = adjoint(u) @ x - x @ adjoint(v)
    z = _zero_like(u)
    nc, nd = spectral_norm(c), spectral_norm(d)
    chain = [m * spectral_norm(u - v), r.w(_block(z, c, d, z)), nc]
    return _finish("cor_2_4", chain, settings, instance, extras=[("unitary_invariance", _two_sided(nc, nd))],
                   radii=r)


def check_main_chain(a, b, x, m: float, settings: CheckSettings = CheckSettings(), instance=None) -> CheckOutcome:
    """``m||Re A - Re B|| <= w(Re(A)X - X Re(B)) <= sup_theta ||C + e^{i theta} D||/2 <= (||C|| + ||D||)/2``

    with ``C = AX - XB`` and ``D = XA - BX``.
    """
    r = _Radii(settings)
    a, b, x = (np.asarray(v, dtype=np.complex128) for v in (a, b, x))
    ra, rb = _re(a), _re(b)
    c = a @ x - x @ b
    d = x @ a - b @ x
    sweep = sup_rotation_norm(c, d, settings.radius_tol)
    sup = 0.5 * (sweep.lower + sweep.upper)
    chain = [m * spectral_norm(ra - rb), r.w(ra @ x - x @ rb), 0.5 * sup,
             0.5 * (spectral_norm(c) + spectral_norm(d))]
    return _finish("main_chain", chain, settings, instance, radii=r)


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class TrialPlan:
    """What one trial of one check needs from the generator."""

    dim: int
    seed: int
    family: Family      # the rotating family (ignored by checks with fixed hypotheses)
    p: float
    trial: int


def _draw_m(rng) -> float:
    return float(rng.uniform(0.1, 1.0))


def _single(check):
    def run(plan: TrialPlan, settings: CheckSettings, draw) -> CheckOutcome:
        rng = np.random.default_rng(plan.seed)
        m = _draw_m(rng) if plan.family is Family.POSITIVE_BOUNDED_BELOW else None
        t = draw(rng, plan.family, plan.dim, m)
        return check(t, settings, InstanceSpec(plan.dim, plan.seed, plan.family, m))
    return run


def _pair(check, scaled_every: int = 0):
    def run(plan: TrialPlan, settings: CheckSettings, draw) -> CheckOutcome:
        rng = np.random.default_rng(plan.seed)
        m = _draw_m(rng) if plan.family is Family.POSITIVE_BOUNDED_BELOW else None
        a = draw(rng, plan.family, plan.dim, m)
        if scaled_every and plan.trial % scaled_every == 0:
            # positive multiples give equality in the triangle inequality
            b = float(rng.uniform(0.2, 3.0)) * a
        else:
            b = draw(rng, plan.family, plan.dim, m)
        return check(a, b, settings, InstanceSpec(plan.dim, plan.seed, plan.family, m))
    return run


def _weighted(check, fixed: Family | None = None, with_p: bool = False):
    def run(plan: TrialPlan, settings: CheckSettings, draw) -> CheckOutcome:
        rng = np.random.default_rng(plan.seed)
        fam = plan.family if fixed is None else fixed
        m = _draw_m(rng)
        ma = m if fam is Family.POSITIVE_BOUNDED_BELOW else None
        a = draw(rng, fam, plan.dim, ma)
        b = draw(rng, fam, plan.dim, ma)
        x = draw(rng, Family.POSITIVE_BOUNDED_BELOW, plan.dim, m)
        spec = InstanceSpec(plan.dim, plan.seed, fam, m, plan.p if with_p else None)
        if with_p:
            return check(a, b, x, m, plan.p, settings, spec)
        return check(a, b, x, m, settings, spec)
    return run


def _run_commutator(plan: TrialPlan, settings: CheckSettings, draw) -> CheckOutcome:
    rng = np.random.default_rng(plan.seed)
    m = _draw_m(rng)
    ym = m if plan.family is Family.POSITIVE_BOUNDED_BELOW else None
    y = draw(rng, plan.family, plan.dim, ym)
    x = draw(rng, Family.POSITIVE_BOUNDED_BELOW, plan.dim, m)
    return check_commutator_lemma(y, x, m, plan.p, settings, InstanceSpec(plan.dim, plan.seed, plan.family, m, plan.p))


@dataclass(frozen=True)
class CheckDef:
    check_id: str
    run: object
    rotates_family: bool
    uses_p: bool
    statement: str


REGISTRY: dict[str, CheckDef] = {d.check_id: d for d in [
    CheckDef("basic_bounds", _single(check_basic_bounds), True, False,
             "||T||/2 <= w(T) <= ||T||"),
    CheckDef("cartesian_sup", _single(check_cartesian_sup), True, False,
             "sup over alpha^2+beta^2=1 of ||alpha H + beta K|| = w(T)"),
    CheckDef("real_imag_bounds", _single(check_real_imag_bounds), True, False,
             "||T+T*||/2 <= w(T) and ||T-T*||/2 <= w(T)"),
    CheckDef("remarks", _single(check_remarks), True, False,
             "||T*T+TT*||/4 <= (||H||^2+||K||^2)/2 <= w(T)^2 <= ||T*T+TT*||/2"),
    CheckDef("triangle_refinement", _pair(check_triangle_refinement), True, False,
             "||A+B|| <= 2w([0 A; B* 0]) <= ||A||+||B||"),
    CheckDef("equality_conditions", _pair(check_equality_conditions, scaled_every=4), True, False,
             "||A+B|| = ||A||+||B|| iff both numerical-radius equalities hold"),
    CheckDef("commutator_lemma", _run_commutator, True, True,
             "m N(Y) <= N(YX+XY)/2 for X >= mI"),
    CheckDef("prop_l1", _weighted(check_prop_l1, Family.HERMITIAN), False, False,
             "m||A-B|| <= w(AX-XB) <= ||AX-XB|| for Hermitian A, B"),
    CheckDef("prop_schatten", _weighted(check_prop_schatten, Family.HERMITIAN, with_p=True), False, True,
             "m n^(-1/p) ||A-B||_p <= w(AX-XB) <= ||AX-XB||_p"),
    CheckDef("thm_2_8", _weighted(check_thm_2_8), True, False,
             "m||A-B|| <= w([0 AX-XB; A*X-XB* 0]) <= (||AX-XB||+||A*X-XB*||)/2"),
    CheckDef("cor_2_4", _weighted(check_cor_2_4, Family.UNITARY), False, False,
             "m||U-V|| <= w([0 UX-XV; U*X-XV* 0]) <= ||UX-XV|| for unitary U, V"),
    CheckDef("lemma_offdiag", _pair(check_lemma_offdiag), True, False,
             "w(X+Y) <= 2w([0 X; Y 0])"),
    CheckDef("main_chain", _weighted(check_main_chain), True, False,
             "m||ReA-ReB|| <= w(ReA X - X ReB) <= sup||(AX-XB)+e^(i theta)(XA-BX)||/2 "
             "<= (||AX-XB||+||XA-BX||)/2"),
]}

CHECK_IDS = tuple(REGISTRY)
