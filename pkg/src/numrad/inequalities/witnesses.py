"""One equality instance per check.

Each witness builds concrete matrices for which a known adjacent pair of
the check's chain is an equality, and names that pair.  ``|slack|`` at the
pair should be at most twice the slack tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from numrad.inequalities import checks as c
from numrad.inequalities.families import Family, draw


@dataclass(frozen=True)
class Witness:
    check_id: str
    description: str
    pair: int                                  # index j of the tight pair (c_j, c_{j+1})
    build: Callable[[c.CheckSettings], c.CheckOutcome]

    def slack(self, settings: c.CheckSettings = c.CheckSettings()) -> float:
        return self.build(settings).chain_slacks[self.pair]


def _rng(k: int) -> np.random.Generator:
    return np.random.default_rng(1000 + k)


def _gc(k, n=4):
    return draw(_rng(k), Family.GENERAL_COMPLEX, n)


def _herm(k, n=4):
    return draw(_rng(k), Family.HERMITIAN, n)


def _unitary(k, n=4):
    return draw(_rng(k), Family.UNITARY, n)


_M = 0.3

WITNESSES: tuple[Witness, ...] = (
    Witness("basic_bounds", "Hermitian T: w(T) = ||T||", 1,
            lambda s: c.check_basic_bounds(_herm(1), s)),
    Witness("cartesian_sup", "any T: the two parametrisations agree", 0,
            lambda s: c.check_cartesian_sup(_gc(2), s)),
    Witness("real_imag_bounds", "Hermitian T: ||T+T*||/2 = w(T)", 0,
            lambda s: c.check_real_imag_bounds(_herm(3), s)),
    Witness("remarks", "T = diag(1, i): chain [1/2, 1, 1, 1]", 1,
            lambda s: c.check_remarks(np.diag([1, 1j]), s)),
    Witness("triangle_refinement", "A = B = I: chain [2, 2, 2]", 0,
            lambda s: c.check_triangle_refinement(np.eye(3), np.eye(3), s)),
    Witness("equality_conditions", "A = B: every term equals 2||A||", 0,
            lambda s: c.check_equality_conditions(_gc(6), _gc(6), s)),
    Witness("commutator_lemma", "X = mI: m||Y|| = ||2mY||/2", 0,
            lambda s: c.check_commutator_lemma(_gc(7), _M * np.eye(4), _M, math.inf, s)),
    Witness("prop_l1", "X = mI, Hermitian A, B: m||A-B|| = w(m(A-B))", 0,
            lambda s: c.check_prop_l1(_herm(8), _herm(9), _M * np.eye(4), _M, s)),
    Witness("prop_schatten", "n = 2, p = 2, A = diag(1, 0), B = 0, X = I, m = 1: chain [1/sqrt2, 1, 1]", 1,
            lambda s: c.check_prop_schatten(np.diag([1.0, 0.0]), np.zeros((2, 2)), np.eye(2), 1.0, 2.0, s)),
    Witness("thm_2_8", "Hermitian A, B and X = mI: m||A-B|| = w([0 C; C 0])", 0,
            lambda s: c.check_thm_2_8(_herm(10), _herm(11), _M * np.eye(4), _M, s)),
    Witness("cor_2_4", "X = mI: the block is m[0 U-V; (U-V)* 0], whose radius is m||U-V||", 0,
            lambda s: c.check_cor_2_4(_unitary(12), _unitary(13), _M * np.eye(4), _M, s)),
    Witness("lemma_offdiag", "Y = X: w(2X) = 2w([0 X; X 0])", 0,
            lambda s: c.check_lemma_offdiag(_gc(14), _gc(14), s)),
    Witness("main_chain", "Hermitian A, B and X = mI: the first two terms coincide", 0,
            lambda s: c.check_main_chain(_herm(15), _herm(16), _M * np.eye(4), _M, s)),
)

BY_CHECK = {w.check_id: w for w in WITNESSES}
