"""Seeded random matrix families and their post-generation validators."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from numrad.errors import InvalidArgument, NumericalError
from numrad.linalg import eigh_stack, spectral_norm

MIN_DIM = 2
MAX_DIM = 16
POSITIVITY_TOL = 1e-10
UNITARITY_TOL = 1e-10
NILPOTENCY_TOL = 1e-12


class Family(str, enum.Enum):
    GENERAL_COMPLEX = "GeneralComplex"
    HERMITIAN = "Hermitian"
    POSITIVE_BOUNDED_BELOW = "PositiveBoundedBelow"
    UNITARY = "Unitary"
    SQUARE_ZERO = "SquareZero"

    @classmethod
    def parse(cls, name: str) -> "Family":
        for fam in cls:
            if fam.value.lower() == name.strip().lower():
                return fam
        raise InvalidArgument(f"unknown family {name!r}; expected one of {[f.value for f in cls]}")


@dataclass(frozen=True)
class InstanceSpec:
    dim: int
    seed: int
    family: Family
    m: float | None = None
    p: float | None = None

    def __post_init__(self):
        if not MIN_DIM <= self.dim <= MAX_DIM:
            raise InvalidArgument(f"dim must lie in [{MIN_DIM}, {MAX_DIM}], got {self.dim}")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidArgument(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.family is Family.POSITIVE_BOUNDED_BELOW and not (self.m is not None and self.m > 0):
            raise InvalidArgument("PositiveBoundedBelow needs m > 0")
        if self.p is not None and not self.p >= 1:
            raise InvalidArgument(f"Schatten index must be >= 1, got {self.p}")

    def as_dict(self) -> dict:
        return {"dim": self.dim, "seed": self.seed, "family": self.family.value, "m": self.m, "p": self.p}


def _complex_normal(rng: np.random.Generator, *shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def draw(rng: np.random.Generator, family: Family, n: int, m: float | None = None) -> np.ndarray:
    """One matrix of ``family`` drawn from ``rng``; validated before it is returned."""
    if family is Family.GENERAL_COMPLEX:
        a = _complex_normal(rng, n, n)
    elif family is Family.HERMITIAN:
        g = _complex_normal(rng, n, n)
        a = 0.5 * (g + np.conj(g.T))
    elif family is Family.POSITIVE_BOUNDED_BELOW:
        r = _complex_normal(rng, n, n) / math.sqrt(n)
        a = m * np.eye(n) + np.conj(r.T) @ r
        a = 0.5 * (a + np.conj(a.T))
    elif family is Family.UNITARY:
        q, r = np.linalg.qr(_complex_normal(rng, n, n))
        d = np.diag(r)
        # fixing the phases of diag(R) makes Q Haar distributed
        a = q * (d / np.abs(d))[None, :]
    elif family is Family.SQUARE_ZERO:
        u = _complex_normal(rng, n)
        v = _complex_normal(rng, n)
        u /= np.linalg.norm(u)
        v -= np.vdot(u, v) * u
        v -= np.vdot(u, v) * u
        a = np.outer(u, np.conj(v))
    else:  # pragma: no cover - exhaustive enum
        raise InvalidArgument(f"unhandled family {family}")
    validate(a, family, m)
    return a


def gen_instance(spec: InstanceSpec) -> np.ndarray:
    return draw(np.random.default_rng(spec.seed), spec.family, spec.dim, spec.m)


def validation_residual(a: np.ndarray, family: Family, m: float | None = None) -> float:
    """How far ``a`` is from satisfying its family's defining property (0 is perfect).

    Each residual is compared with its own threshold by :func:`validate`.
    """
    a = np.asarray(a, dtype=np.complex128)
    if family is Family.GENERAL_COMPLEX:
        return 0.0
    if family in (Family.HERMITIAN, Family.POSITIVE_BOUNDED_BELOW):
        asym = float(np.max(np.abs(a - np.conj(a.T))))
        if family is Family.HERMITIAN:
            return asym
        if asym > 0.0:
            return math.inf
        values, _, errs = eigh_stack(a - m * np.eye(a.shape[0]))
        return max(0.0, -(float(values[0, 0]) - float(errs[0])))
    if family is Family.UNITARY:
        return float(spectral_norm(np.conj(a.T) @ a - np.eye(a.shape[0])))
    if family is Family.SQUARE_ZERO:
        scale = spectral_norm(a) ** 2
        return float(spectral_norm(a @ a)) / scale if scale > 0 else 0.0
    raise InvalidArgument(f"unhandled family {family}")  # pragma: no cover


_THRESHOLDS = {
    Family.GENERAL_COMPLEX: 0.0,
    Family.HERMITIAN: 0.0,
    Family.POSITIVE_BOUNDED_BELOW: POSITIVITY_TOL,
    Family.UNITARY: UNITARITY_TOL,
    Family.SQUARE_ZERO: NILPOTENCY_TOL,
}


def validate(a: np.ndarray, family: Family, m: float | None = None) -> None:
    res = validation_residual(a, family, m)
    if res > _THRESHOLDS[family]:
        raise NumericalError(f"{family.value} instance fails validation (residual {res:.3e})")
