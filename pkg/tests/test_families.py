import numpy as np
import pytest
from hypothesis import given, strategies as st

from numrad.errors import InvalidArgument, NumericalError
from numrad.inequalities.families import Family, InstanceSpec, draw, gen_instance, validate, validation_residual
from numrad.linalg import spectral_norm


def test_square_zero_example():
    for seed in range(20):
        a = gen_instance(InstanceSpec(6, seed, Family.SQUARE_ZERO))
        assert spectral_norm(a @ a) <= 1e-12 * spectral_norm(a) ** 2


def test_positive_bounded_below_example():
    for seed in range(20):
        x = gen_instance(InstanceSpec(5, seed, Family.POSITIVE_BOUNDED_BELOW, m=0.5))
        assert np.linalg.eigvalsh(x)[0] >= 0.5 - 1e-10
        assert np.array_equal(x, x.conj().T)


def test_unitary_example():
    for seed in range(20):
        u = gen_instance(InstanceSpec(7, seed, Family.UNITARY))
        assert spectral_norm(u.conj().T @ u - np.eye(7)) <= 1e-10


def test_hermitian_is_exact():
    h = gen_instance(InstanceSpec(8, 3, Family.HERMITIAN))
    assert np.array_equal(h, h.conj().T)


def test_deterministic_per_seed():
    for fam in Family:
        spec = InstanceSpec(4, 123, fam, m=0.3)
        assert np.array_equal(gen_instance(spec), gen_instance(spec))
    a = gen_instance(InstanceSpec(4, 1, Family.GENERAL_COMPLEX))
    b = gen_instance(InstanceSpec(4, 2, Family.GENERAL_COMPLEX))
    assert not np.array_equal(a, b)


@pytest.mark.parametrize("kwargs", [
    dict(dim=1, seed=0, family=Family.HERMITIAN),
    dict(dim=17, seed=0, family=Family.HERMITIAN),
    dict(dim=3, seed=-1, family=Family.HERMITIAN),
    dict(dim=3, seed=2**64, family=Family.HERMITIAN),
    dict(dim=3, seed=0, family=Family.POSITIVE_BOUNDED_BELOW),
    dict(dim=3, seed=0, family=Family.POSITIVE_BOUNDED_BELOW, m=0.0),
    dict(dim=3, seed=0, family=Family.HERMITIAN, p=0.5),
])
def test_spec_validation(kwargs):
    with pytest.raises(InvalidArgument):
        InstanceSpec(**kwargs)


def test_family_parse():
    assert Family.parse("squarezero") is Family.SQUARE_ZERO
    with pytest.raises(InvalidArgument):
        Family.parse("Normal")


def test_validators_reject_bad_matrices():
    with pytest.raises(NumericalError):
        validate(np.array([[1, 1], [0, 1]]), Family.HERMITIAN)
    with pytest.raises(NumericalError):
        validate(np.diag([0.2, 1.0]), Family.POSITIVE_BOUNDED_BELOW, 0.5)
    with pytest.raises(NumericalError):
        validate(2 * np.eye(2), Family.UNITARY)
    with pytest.raises(NumericalError):
        validate(np.array([[1, 1], [0, 0]]), Family.SQUARE_ZERO)
    assert validation_residual(np.zeros((2, 2)), Family.SQUARE_ZERO) == 0.0


def test_generator_soundness_100k():
    # draw() validates every instance and raises on the first failure
    rng = np.random.default_rng(2024)
    fams = list(Family)
    for k in range(100_000):
        fam = fams[k % 5]
        m = float(rng.uniform(0.1, 1.0)) if fam is Family.POSITIVE_BOUNDED_BELOW else None
        draw(rng, fam, 2 + k % 15, m)


@given(st.integers(0, 2**64 - 1), st.integers(2, 16), st.sampled_from(list(Family)), st.floats(0.01, 5))
def test_validators_hold_for_any_seed(seed, n, fam, m):
    a = gen_instance(InstanceSpec(n, seed, fam, m=m))
    assert a.shape == (n, n)
