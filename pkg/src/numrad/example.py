"""The 2x2 pair ``A = [[1, 1], [0, 1]]``, ``B = [[0, -1], [0, 0]]`` where both
inequalities of ``||A+B|| <= 2w([0 A; B* 0]) <= ||A|| + ||B||`` are strict.

All quantities are recomputed from the hard-coded matrices.  The product
``||A|| ||B||`` is reported twice: the value computed here, ``(1+sqrt 5)/2``,
and the claimed value ``(3+sqrt 5)/2``.  The claim is the square of the
computed value; the strictness argument holds with either, because
``w(A*B) = (1+sqrt 2)/2`` is smaller than both.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from numrad.linalg import adjoint, block_2x2, rayleigh, spectral_norm
from numrad.radius import fov_boundary, fov_contains, radius_certified

A = np.array([[1, 1], [0, 1]], dtype=np.complex128)
B = np.array([[0, -1], [0, 0]], dtype=np.complex128)
PROBE = 0.5 * np.array([1j, 1, 1, 1])

STRICT_MARGIN = 1e-6
PAPER_PRODUCT_CLAIM = (3 + math.sqrt(5)) / 2
EXPECTED_SUM_NORM = 1.0
EXPECTED_PROBE = math.sqrt(10) / 4
EXPECTED_W_ASTARB = (1 + math.sqrt(2)) / 2
SUM_NORM_TOL = 1e-10
PROBE_TOL = 1e-12
RADIUS_TOL = 1e-9
DISCREPANCY_TOL = 1e-6


def example_t() -> np.ndarray:
    z = np.zeros((2, 2), dtype=np.complex128)
    return block_2x2(z, A, adjoint(B), z)


@dataclass(frozen=True)
class ExampleReport:
    norm_A: float
    norm_B: float
    norm_A_plus_B: float
    two_w_T: tuple[float, float]
    rayleigh_probe: float
    w_AstarB: float
    w_AstarB_interval: tuple[float, float]
    product_norms: float
    paper_product_claim: float
    strict_left: bool
    strict_right: bool
    left_margin: float
    right_margin: float
    strict_margin: float
    product_in_fov: bool
    discrepancy_note: str

    def failures(self) -> list[str]:
        """Names of the quantities that miss their expected values."""
        bad = []
        if abs(self.norm_A_plus_B - EXPECTED_SUM_NORM) > SUM_NORM_TOL:
            bad.append("norm_A_plus_B")
        if abs(self.rayleigh_probe - EXPECTED_PROBE) > PROBE_TOL:
            bad.append("rayleigh_probe")
        if abs(self.w_AstarB - EXPECTED_W_ASTARB) > RADIUS_TOL:
            bad.append("w_AstarB")
        if not self.strict_left:
            bad.append("strict_left")
        if not self.strict_right:
            bad.append("strict_right")
        if self.two_w_T[1] < 2 * EXPECTED_PROBE - RADIUS_TOL:
            bad.append("two_w_T")
        if self.product_in_fov:
            bad.append("product_in_fov")
        return bad

    def as_dict(self) -> dict:
        d = asdict(self)
        d["two_w_T"] = list(self.two_w_T)
        d["w_AstarB_interval"] = list(self.w_AstarB_interval)
        return d


def repro_example(strict_margin: float = STRICT_MARGIN) -> ExampleReport:
    # ||A + B|| first, before anything is compared against it
    norm_sum = spectral_norm(A + B)
    norm_a = spectral_norm(A)
    norm_b = spectral_norm(B)
    t = example_t()
    cert = radius_certified(t, RADIUS_TOL)
    two_w = (2 * cert.lower, 2 * cert.upper)
    probe = abs(rayleigh(t, PROBE))
    astarb = adjoint(A) @ B
    w_cert = radius_certified(astarb, RADIUS_TOL)
    product = norm_a * norm_b
    left = two_w[0] - norm_sum
    right = (norm_a + norm_b) - two_w[1]
    # is ||A|| ||B|| in W(A*B)?  (a rotation e^{2i theta} would not change the answer: W(A*B)
    # lies inside the disk of radius w(A*B) < ||A|| ||B||)
    inside = fov_contains(fov_boundary(astarb), product, tol=1e-9)
    if abs(product - PAPER_PRODUCT_CLAIM) > DISCREPANCY_TOL:
        note = (f"computed ||A|| ||B|| = {product:.12g} differs from the stated (3+sqrt5)/2 = "
                f"{PAPER_PRODUCT_CLAIM:.12g}; the stated value equals the square of the computed one. "
                f"w(A*B) = {w_cert.midpoint:.12g} is below both, so the strict inequality holds either way")
    else:
        note = ""
    return ExampleReport(
        norm_A=norm_a, norm_B=norm_b, norm_A_plus_B=norm_sum, two_w_T=two_w, rayleigh_probe=probe,
        w_AstarB=w_cert.midpoint, w_AstarB_interval=(w_cert.lower, w_cert.upper),
        product_norms=product, paper_product_claim=PAPER_PRODUCT_CLAIM,
        strict_left=left >= strict_margin, strict_right=right >= strict_margin,
        left_margin=left, right_margin=right, strict_margin=strict_margin,
        product_in_fov=inside, discrepancy_note=note,
    )
