import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quditmagic.errors import BudgetExceededError, NonInvertibleError
from quditmagic.phasespace import (
    Dims,
    count_maximal_isotropic,
    enumerate_maximal_isotropic,
    enumerate_symplectic_2x2,
    is_symplectic,
    mod_inverse,
    phase_points,
    point,
    row_reduce,
    symplectic_group_order,
    symplectic_product,
)


def brute_force_lines(d):
    """Independent oracle: all 1-dim subspaces of Z_d^2 via exhaustive scan."""
    seen = set()
    for v in phase_points(Dims(d, 1)):
        if not np.any(v):
            continue
        line = frozenset(tuple((k * v) % d) for k in range(d))
        seen.add(line)
    return seen


def test_mod_inverse_examples():
    assert mod_inverse(2, 3) == 2
    assert mod_inverse(1, 5) == 1
    # derived by exhaustive scan of Z_5
    expected = next(x for x in range(5) if (3 * x) % 5 == 1)
    assert mod_inverse(3, 5) == expected == 2
    with pytest.raises(NonInvertibleError):
        mod_inverse(0, 5)
    with pytest.raises(NonInvertibleError):
        mod_inverse(10, 5)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 100))
def test_mod_inverse_property(d, a):
    if a % d == 0:
        return
    assert (mod_inverse(a, d) * a) % d == 1


def test_symplectic_product_examples():
    d3 = Dims(3, 1)
    assert symplectic_product(point(1, 0, d3), point(0, 1, d3), 3) == 1
    d5 = Dims(5, 1)
    assert symplectic_product(point(2, 1, d5), point(1, 2, d5), 5) == 3


@settings(max_examples=50)
@given(st.sampled_from([2, 3, 5]),
       st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_symplectic_antisymmetry_bilinearity(d, seed1, seed2):
    rng = np.random.default_rng(seed1 * 7 + seed2)
    c1 = rng.integers(0, d, size=4)
    c2 = rng.integers(0, d, size=4)
    c3 = rng.integers(0, d, size=4)
    s12 = symplectic_product(c1, c2, d)
    assert (s12 + symplectic_product(c2, c1, d)) % d == 0
    assert symplectic_product(c1, c1, d) == 0
    lhs = symplectic_product((c1 + c2) % d, c3, d)
    rhs = (symplectic_product(c1, c3, d) + symplectic_product(c2, c3, d)) % d
    assert lhs == rhs


def test_antisymmetry_exhaustive_n1():
    for d in (2, 3, 5):
        pts = phase_points(Dims(d, 1))
        prods = symplectic_product(pts[:, None, :], pts[None, :, :], d)
        assert np.all((prods + prods.T) % d == 0)


def test_is_symplectic():
    assert is_symplectic(np.eye(2, dtype=int), 3)
    assert is_symplectic(np.array([[0, -1], [1, 0]]), 3)
    assert is_symplectic(np.array([[1, 1], [0, 1]]), 3)
    assert not is_symplectic(np.array([[2, 0], [0, 1]]), 3)  # det = 2 mod 3


def test_symplectic_group_order_brute():
    for d in (2, 3, 5):
        assert len(enumerate_symplectic_2x2(d)) == symplectic_group_order(d, 1)


def test_maximal_isotropic_counts():
    assert len(enumerate_maximal_isotropic(Dims(3, 1))) == 4
    assert len(enumerate_maximal_isotropic(Dims(5, 1))) == 6
    # must equal stabilizer count 60 / d^N = 15
    assert len(enumerate_maximal_isotropic(Dims(2, 2))) == 15
    for d, N in ((2, 3), (3, 2), (5, 2)):
        subs = enumerate_maximal_isotropic(Dims(d, N))
        assert len(subs) == count_maximal_isotropic(Dims(d, N))


def test_lines_match_brute_force():
    for d in (2, 3, 5):
        subs = enumerate_maximal_isotropic(Dims(d, 1))
        got = {frozenset(map(tuple, s.elements.tolist())) for s in subs}
        assert got == brute_force_lines(d)


def test_subspace_structure():
    for d, N in ((3, 1), (2, 2)):
        dims = Dims(d, N)
        for sub in enumerate_maximal_isotropic(dims):
            assert sub.elements.shape[0] == dims.D
            # closed under addition
            sums = (sub.elements[:, None, :] + sub.elements[None, :, :]) % d
            members = {tuple(r) for r in sub.elements.tolist()}
            assert all(tuple(r) in members
                       for r in sums.reshape(-1, 2 * N).tolist())
            prods = symplectic_product(sub.elements[:, None, :],
                                       sub.elements[None, :, :], d)
            assert np.all(prods == 0)


def test_budget_errors():
    with pytest.raises(BudgetExceededError):
        enumerate_maximal_isotropic(Dims(7, 2))
    with pytest.raises(BudgetExceededError):
        Dims(2, 11)


def test_row_reduce_canonical():
    mat = row_reduce(np.array([[2, 2, 0, 0], [1, 1, 1, 1]]), 3)
    again = row_reduce(mat[::-1], 3)
    assert np.array_equal(mat, again)


def test_reduce_mod_canonical_coset():
    dims = Dims(3, 1)
    sub = enumerate_maximal_isotropic(dims)[0]
    for chi in phase_points(dims):
        rep = sub.reduce_mod(chi)
        assert sub.contains((chi - rep) % 3) or np.all((chi - rep) % 3 == 0)
