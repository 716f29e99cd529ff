import numpy as np
import pytest
import scipy.linalg

from quditmagic.clifford import (
    SL2_H_HAT,
    SL2_S_HAT,
    FiniteUnitaryGroup,
    affine_from_clifford,
    clifford_equivalence_search,
    clifford_from_affine,
    clifford_group_order,
    eigenphase_extended_group,
    enumerate_reduced_clifford,
    group_projector,
    group_stabilizer_states,
    invert_word,
    is_clifford,
    metaplectic_V,
    nondegenerate_eigenstates,
    qudit_clifford_generators,
    twirl,
    word_unitary,
)
from quditmagic.errors import NotCliffordError
from quditmagic.phasespace import (
    Dims,
    enumerate_symplectic_2x2,
    mod_inverse,
    phase_points,
    point,
    point_index,
    symplectic_product,
)
from quditmagic.weyl import displacement_table, equal_up_to_phase, unit_phase


def test_generators_are_clifford_and_special():
    for d in (2, 3, 5):
        H, S = qudit_clifford_generators(d)
        dims = Dims(d, 1)
        assert is_clifford(H.unitary, dims)
        assert is_clifford(S.unitary, dims)
        if d > 2:
            assert abs(np.linalg.det(H.unitary) - 1) < 1e-10
        if d >= 5:
            assert abs(np.linalg.det(S.unitary) - 1) < 1e-10


def test_qutrit_H_order_four_up_to_phase():
    H, _ = qudit_clifford_generators(3)
    H4 = np.linalg.matrix_power(H.unitary, 4)
    assert equal_up_to_phase(H4, np.eye(3))


def test_qubit_H_maps_0_to_plus():
    H, _ = qudit_clifford_generators(2)
    assert np.allclose(H.unitary @ [1, 0], np.ones(2) / np.sqrt(2))


def test_metaplectic_identities():
    for d in (3, 5):
        assert np.allclose(metaplectic_V(np.eye(2, dtype=int), d), np.eye(d))
        H, S = qudit_clifford_generators(d)
        assert np.allclose(metaplectic_V(SL2_H_HAT, d), H.unitary, atol=1e-12)
        dims = Dims(d, 1)
        T = displacement_table(dims)
        chi = point_index(point(0, mod_inverse(2, d), dims), dims)
        assert np.allclose(T[chi] @ metaplectic_V(SL2_S_HAT, d), S.unitary,
                           atol=1e-12)


def test_metaplectic_homomorphism_up_to_phase():
    for d in (3, 5):
        Fs = enumerate_symplectic_2x2(d)[::3][:8]
        for F1 in Fs:
            for F2 in Fs:
                lhs = metaplectic_V(F1, d) @ metaplectic_V(F2, d)
                rhs = metaplectic_V((F1 @ F2) % d, d)
                assert equal_up_to_phase(lhs, rhs)


def test_metaplectic_conjugation_exact():
    d = 5
    dims = Dims(d, 1)
    T = displacement_table(dims)
    pts = phase_points(dims)
    for F in enumerate_symplectic_2x2(d)[::7][:6]:
        V = metaplectic_V(F, d)
        for i, c in enumerate(pts):
            tgt = T[point_index((F @ c) % d, dims)]
            assert np.allclose(V @ T[i] @ V.conj().T, tgt, atol=1e-11)


def test_is_clifford_rejects_t_gate():
    Tgate = np.diag([1.0, np.exp(1j * np.pi / 4)])
    assert not is_clifford(Tgate, Dims(2, 1))
    assert is_clifford(np.eye(2), Dims(2, 1))


def test_affine_from_clifford_examples():
    d3 = Dims(3, 1)
    S, a = affine_from_clifford(np.eye(3), d3)
    assert np.array_equal(S, np.eye(2, dtype=int)) and np.all(a == 0)
    H, _ = qudit_clifford_generators(3)
    SH, aH = affine_from_clifford(H.unitary, d3)
    assert np.array_equal(SH, SL2_H_HAT % 3)
    # displacement: conjugating by T_chi0 gives identity symplectic part
    T = displacement_table(d3)
    S2, a2 = affine_from_clifford(T[point_index(point(1, 2, d3), d3)], d3)
    assert np.array_equal(S2, np.eye(2, dtype=int))
    # Wigner covariance pins a = 2 * chi0 for the tau convention:
    # T_chi0 A_chi T_chi0^dag = A_(chi + chi0), and C A_chi C^dag = A_(a + S chi)
    assert np.any(a2 != 0)
    with pytest.raises(NotCliffordError):
        affine_from_clifford(np.diag([1.0, np.exp(1j * np.pi / 4), 1.0]), d3)


def test_affine_law_exhaustive_odd_d():
    for d in (3, 5):
        dims = Dims(d, 1)
        T = displacement_table(dims)
        pts = phase_points(dims)
        H, Sg = qudit_clifford_generators(d)
        for el in (H, Sg):
            U, S, a = el.unitary, el.symplectic, el.displacement
            for i, c in enumerate(pts):
                lab = (S @ c) % d
                ph = unit_phase(-symplectic_product(a, lab, d), d)
                assert np.allclose(U @ T[i] @ U.conj().T,
                                   ph * T[point_index(lab, dims)], atol=1e-11)


def test_clifford_from_affine_round_trip():
    for d in (3, 5):
        dims = Dims(d, 1)
        rng = np.random.default_rng(0)
        sl2 = enumerate_symplectic_2x2(d)
        for _ in range(10):
            S = sl2[rng.integers(len(sl2))]
            a = rng.integers(0, d, size=2)
            U = clifford_from_affine(S, a, dims)
            S2, a2 = affine_from_clifford(U, dims)
            assert np.array_equal(S2, S % d)
            assert np.array_equal(a2, a % d)


@pytest.mark.parametrize("d,N", [(2, 1), (3, 1), (5, 1), (2, 2)])
def test_enumerate_reduced_clifford(d, N):
    dims = Dims(d, N)
    els = enumerate_reduced_clifford(dims)
    expected = {(2, 1): 24, (3, 1): 216, (5, 1): 3000, (2, 2): 11520}[(d, N)]
    assert len(els) == expected == clifford_group_order(dims)
    # the affine correspondence is a bijection on the reduced group
    pairs = {(e.symplectic.tobytes(), e.displacement.tobytes()) for e in els}
    assert len(pairs) == expected


def test_nondegenerate_eigenstates_identity_and_T():
    dims = Dims(2, 1)
    assert nondegenerate_eigenstates(np.eye(2), dims) == []
    H, S = qudit_clifford_generators(2)
    That = np.exp(1j * np.pi / 4) * S.unitary @ H.unitary
    eigs = nondegenerate_eigenstates(That, dims)
    assert len(eigs) == 2
    T0 = np.array([np.sqrt((3 + np.sqrt(3)) / 6),
                   np.exp(1j * np.pi / 4) * np.sqrt((3 - np.sqrt(3)) / 6)])
    vals = {np.round(v, 6) for v, _ in eigs}
    assert np.round(unit_phase(1, 6), 6) in vals
    assert any(equal_up_to_phase(vec, T0) for _, vec in eigs)


def test_qutrit_H_eigenstates():
    dims = Dims(3, 1)
    H, _ = qudit_clifford_generators(3)
    eigs = nondegenerate_eigenstates(H.unitary, dims)
    S = np.array([0, 1, -1]) / np.sqrt(2)
    Hp = np.array([1 + np.sqrt(3), 1, 1]) / np.sqrt(2 * (3 + np.sqrt(3)))
    Hm = np.array([1 - np.sqrt(3), 1, 1]) / np.sqrt(2 * (3 - np.sqrt(3)))
    assert len(eigs) == 3
    for target in (S, Hp, Hm):
        assert any(equal_up_to_phase(v, target) for _, v in eigs)


def test_rejects_nonunitary_eigeninput():
    with pytest.raises(ValueError):
        nondegenerate_eigenstates(np.diag([1.0, 2.0]), Dims(2, 1))


def _order12_group():
    g1 = scipy.linalg.expm(1j * np.pi * np.array([[0, 1], [1, 0]]) / 3)
    g2 = scipy.linalg.expm(1j * np.pi * np.array([[1, 0], [0, -1]]) / 2)
    return FiniteUnitaryGroup.generate([g1, g2])


def test_group_projector_examples():
    eye = FiniteUnitaryGroup.generate([np.eye(2, dtype=complex)])
    assert np.allclose(group_projector(eye), np.eye(2))
    Z3 = np.diag([1, unit_phase(1, 3), unit_phase(2, 3)])
    G = FiniteUnitaryGroup.generate([Z3])
    P = group_projector(G)
    assert np.allclose(P, np.diag([1.0, 0, 0]), atol=1e-12)
    # the order-12 example group stabilizes no state exactly
    G12 = _order12_group()
    assert len(G12) == 12
    P12 = group_projector(G12)
    assert np.max(np.abs(P12)) < 1e-12


def test_group_stabilizer_states_order12():
    G12 = _order12_group()
    states = group_stabilizer_states(G12)
    r3 = np.sqrt(3)
    expected = [
        np.array([1, 0]), np.array([0, 1]),
        np.array([1, 1]) / np.sqrt(2), np.array([1, -1]) / np.sqrt(2),
        np.array([1, 1j * r3]) / 2, np.array([1, -1j * r3]) / 2,
        np.array([r3, 1j]) / 2, np.array([r3, -1j]) / 2,
    ]
    assert len(states) == len(expected)
    for e in expected:
        assert any(equal_up_to_phase(e, s) for s in states)


def test_twirl_properties():
    rng = np.random.default_rng(2)
    G12 = _order12_group()
    O = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    O = O + O.conj().T
    TO = twirl(O, G12)
    for g in G12.elements:
        assert np.max(np.abs(g @ TO - TO @ g)) < 1e-10
    assert np.allclose(twirl(TO, G12), TO, atol=1e-10)
    # O commuting with the group is fixed
    assert np.allclose(twirl(np.eye(2), G12), np.eye(2))
    # |psi><phi| with psi in S_G, phi orthogonal, twirls to zero
    Z3 = np.diag([1, unit_phase(1, 3), unit_phase(2, 3)])
    G = FiniteUnitaryGroup.generate([Z3])
    psi = np.array([1, 0, 0], dtype=complex)
    phi = np.array([0, 1, 0], dtype=complex)
    assert np.max(np.abs(twirl(np.outer(psi, phi.conj()), G))) < 1e-12


def test_eigenphase_extended_closure_qutrit_H():
    H, _ = qudit_clifford_generators(3)
    G = eigenphase_extended_group(H.unitary, Dims(3, 1))
    G.check_closed()
    assert any(np.allclose(g, np.eye(3)) for g in G.elements)


def test_invert_word():
    w = ("H@1", "S@2", "CZ@1,2", "S†@1")
    assert invert_word(w) == ("S@1", "CZ@1,2", "S†@2", "H@1")
    dims = Dims(2, 2)
    U = word_unitary(w, dims)
    V = word_unitary(invert_word(w), dims)
    assert np.allclose(U @ V, np.eye(4), atol=1e-12)


def test_equivalence_search_trivial_and_prefilter():
    dims = Dims(2, 1)
    psi = np.array([1, 0], dtype=complex)
    assert clifford_equivalence_search(psi, psi, dims) == ()
    T0 = np.array([np.sqrt((3 + np.sqrt(3)) / 6),
                   np.exp(1j * np.pi / 4) * np.sqrt((3 - np.sqrt(3)) / 6)])
    # different invariants: inconclusive immediately
    assert clifford_equivalence_search(psi, T0, dims, budget=10) is None


def test_equivalence_search_finds_word():
    dims = Dims(2, 2)
    src = np.kron([1, 0], [1, 0]).astype(complex)
    tgt = word_unitary(("H@1", "CZ@1,2", "S@2"), dims) @ src
    word = clifford_equivalence_search(src, tgt, dims, budget=50000, seed=1)
    assert word is not None
    assert equal_up_to_phase(word_unitary(word, dims) @ src, tgt)


def test_clifford_from_affine_qubit_lookup():
    dims = Dims(2, 1)
    for el in enumerate_reduced_clifford(dims)[::5]:
        U = clifford_from_affine(el.symplectic, el.displacement, dims)
        S2, a2 = affine_from_clifford(U, dims)
        assert np.array_equal(S2, el.symplectic)
        assert np.array_equal(a2, el.displacement)


def test_qubit_affine_law_proportionality():
    # for d = 2 the exact phase law holds on the two basis points; on the
    # remaining point the image is still the labelled Hermitian Pauli up to
    # a sign (the i^(pq) convention carries no affine phase function)
    dims = Dims(2, 1)
    T = displacement_table(dims)
    pts = phase_points(dims)
    for el in enumerate_reduced_clifford(dims):
        U, S = el.unitary, el.symplectic
        for i, c in enumerate(pts[1:], start=1):
            conj = U @ T[i] @ U.conj().T
            j = point_index((S @ c) % 2, dims)
            assert (np.allclose(conj, T[j], atol=1e-10)
                    or np.allclose(conj, -T[j], atol=1e-10))
            if np.count_nonzero(c) == 1:  # basis point: exact phase law
                ph = unit_phase(-symplectic_product(el.displacement,
                                                    (S @ c) % 2, 2), 2)
                assert np.allclose(conj, ph * T[j], atol=1e-10)


def test_projector_absorbs_group_elements():
    Z3 = np.diag([1, unit_phase(1, 3), unit_phase(2, 3)])
    G = FiniteUnitaryGroup.generate([Z3])
    P = group_projector(G)
    for g in G.elements:
        assert np.allclose(g @ P, P, atol=1e-12)
        assert np.allclose(g @ P - P @ g, 0, atol=1e-12)


def test_phase_point_covariance_all_qutrit_cliffords():
    # C A_chi C^dag = A_(a + S chi) exhaustively over the reduced group
    dims = Dims(3, 1)
    from quditmagic.weyl import phase_point_table
    A = phase_point_table(dims)
    pts = phase_points(dims)
    for el in enumerate_reduced_clifford(dims):
        conj = np.einsum('jk,bkl,ml->bjm', el.unitary, A, el.unitary.conj())
        idx = [point_index((el.displacement + el.symplectic @ c) % 3, dims)
               for c in pts]
        assert np.max(np.abs(conj - A[idx])) < 1e-10


def test_equivalence_search_deterministic_under_seed():
    dims = Dims(2, 2)
    from quditmagic.catalog import build
    src, tgt = build("2q:G20,1"), build("2q:G20,3")
    w1 = clifford_equivalence_search(src, tgt, dims, budget=100000, seed=9)
    w2 = clifford_equivalence_search(src, tgt, dims, budget=100000, seed=9)
    assert w1 == w2 and w1 is not None
