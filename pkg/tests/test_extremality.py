import numpy as np
import pytest

from quditmagic.catalog import build, entries
from quditmagic.extremality import (
    PerturbationFrame,
    angle_direction,
    classify_mana,
    classify_xi2,
    fidelity_expansion,
    l_matrix,
    mana_expansion,
    w_matrix,
    xi2_expansion,
    xi2_series_bound,
)
from quditmagic.measures import xi
from quditmagic.phasespace import Dims
from quditmagic.stabilizers import enumerate_stabilizer_states, max_overlap
from quditmagic.tables import check_l_tables, check_w_tables


def rand_direction(psi, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=psi.shape[0]) + 1j * rng.normal(size=psi.shape[0])
    v = v - np.vdot(psi, v) * psi
    return v / np.linalg.norm(v)


def test_frame_density_decomposition():
    d3 = Dims(3, 1)
    psi = build("qutrit:T0")
    phi = rand_direction(psi, 0)
    fr = PerturbationFrame(d3, psi, phi)
    for eps in (0.05, -0.13, 0.31):
        direct = fr.density(eps)
        recon = (np.outer(psi, psi.conj())
                 + eps / (1 + eps ** 2) * fr.sigma
                 + eps ** 2 / (1 + eps ** 2) * fr.mu
                 + eps ** 2 / (1 + eps ** 2) * np.outer(psi, psi.conj()))
        # mu = phi phi^dag - psi psi^dag, so psi(eps) = psi + eps sigma + eps^2 phi
        recon = (np.outer(psi, psi.conj()) * (1 - eps ** 2 / (1 + eps ** 2))
                 + eps / (1 + eps ** 2) * fr.sigma
                 + eps ** 2 / (1 + eps ** 2) * np.outer(phi, phi.conj()))
        assert np.allclose(direct, recon, atol=1e-12)


def test_frame_validation():
    d3 = Dims(3, 1)
    psi = build("qutrit:S")
    with pytest.raises(ValueError):
        PerturbationFrame(d3, psi, psi)
    with pytest.raises(ValueError):
        PerturbationFrame(d3, psi, 2 * rand_direction(psi, 1))


def test_l_matrix_contract_and_tables():
    psi = build("qubit:T0")
    with pytest.raises(ValueError):
        l_matrix([psi, psi], [np.array([1, 0])])
    for res in check_l_tables():
        assert res.passed, f"{res.table_id}: err {res.max_error}"


def test_l_matrix_column_sums_vanish():
    # every catalog Clifford-stabilizer candidate: columns sum to 0
    cases = {
        "qubit:T0": ("qubit:T1",),
        "qubit:H0": ("qubit:H1",),
        "qutrit:S": ("qutrit:Hplus", "qutrit:Hminus"),
        "qutrit:N": ("qutrit:NB1", "qutrit:NB2"),
        "qutrit:Hplus": ("qutrit:Hminus", "qutrit:S"),
        "qutrit:T0": ("qutrit:T1", "qutrit:T2"),
    }
    for name, basis_names in cases.items():
        psi = build(name)
        dims = entries()[name].dims
        dd = enumerate_stabilizer_states(dims)
        _, nearest = max_overlap(psi, dd)
        L = l_matrix([psi] + [build(b) for b in basis_names],
                     [s.vector for s in nearest])
        assert np.max(np.abs(L.sum(axis=0))) < 1e-10


def test_w_matrix_tables_and_diagonal():
    for res in check_w_tables():
        assert res.passed, f"{res.table_id}: err {res.max_error}"
    # diagonal = trace norm; stabilizer diagonal = 1
    d3 = Dims(3, 1)
    dd = enumerate_stabilizer_states(d3)
    basis = [dd.states[0].vector, dd.states[3].vector, dd.states[6].vector]
    W = w_matrix(basis, d3)
    assert np.allclose(np.diag(W), 1.0, atol=1e-12)


def test_w_matrix_diagonal_dominance():
    # nowhere-vanishing non-degenerate eigenbases: diagonal exceeds the row
    from quditmagic.tables import QUTRIT_W, QUQUINT_W_PRINTED
    for key, (names, _) in {**QUTRIT_W, **QUQUINT_W_PRINTED}.items():
        if key == "qutrit:N":   # contains a stabilizer state in the basis
            continue
        dims = entries()[names[0]].dims
        W = w_matrix([build(n) for n in names], dims)
        for i in range(W.shape[0]):
            row = np.delete(W[i], i)
            assert np.all(W[i, i] > row + 1e-9)


def test_mana_expansion_strange_state():
    d3 = Dims(3, 1)
    psi = build("qutrit:S")
    for seed in range(5):
        fr = PerturbationFrame(d3, psi, rand_direction(psi, seed))
        lin, quad, ok = mana_expansion(fr)
        assert lin < 1e-12 and ok  # nowhere-vanishing Wigner function
        rep = classify_mana(fr)
        assert rep.kind == "smooth_max"


def test_mana_expansion_matches_direct_evaluation():
    from quditmagic.measures import wigner_trace_norm
    d3 = Dims(3, 1)
    psi = build("qutrit:T0")
    fr = PerturbationFrame(d3, psi, rand_direction(psi, 3))
    lin, quad, _ = mana_expansion(fr)
    base = wigner_trace_norm(psi, d3)
    for eps in (1e-4, 3e-4):
        direct = wigner_trace_norm(fr.state(eps), d3)
        series = base + abs(eps) / (1 + eps ** 2) * lin \
            + eps ** 2 / (1 + eps ** 2) * quad
        assert abs(direct - series) < 50 * eps ** 3


def test_ququint_A_state_quadratic_coefficient():
    d5 = Dims(5, 1)
    psi = build("ququint:A,-w2")
    phi = build("ququint:A,w2")
    for ph in (0.0, 1.1, 2.7):
        fr = PerturbationFrame(d5, psi, np.exp(1j * ph) * phi)
        lin, quad, _ = mana_expansion(fr)
        assert lin < 1e-12
        assert abs(quad - (-1.2944)) < 5e-4
    # outside this direction: sharp minimum
    fr = PerturbationFrame(d5, psi, rand_direction(psi, 8))
    lin, _, _ = mana_expansion(fr)
    assert lin > 1e-3


def test_fidelity_expansion_catalog_cases():
    d3 = Dims(3, 1)
    dd = enumerate_stabilizer_states(d3)
    # N along e^(i phi)(|0>-|2>)/sqrt2: smooth max with <s|mu|s> = -2/3
    psi, nb1 = build("qutrit:N"), build("qutrit:NB1")
    for ph in (0.0, 0.9):
        rep = fidelity_expansion(PerturbationFrame(d3, psi, np.exp(1j * ph) * nb1), dd)
        assert rep.kind == "smooth_max"
        assert abs(rep.leading_coefficient + 2 / 3) < 1e-10
    # H+ along i|H->: linear term zero, <s|mu|s> = -1/sqrt3
    hp, hm = build("qutrit:Hplus"), build("qutrit:Hminus")
    rep = fidelity_expansion(PerturbationFrame(d3, hp, 1j * hm), dd)
    assert rep.kind == "smooth_max"
    assert abs(rep.leading_coefficient + 1 / np.sqrt(3)) < 1e-10
    # ... but along |H-> itself the linear term survives
    rep = fidelity_expansion(PerturbationFrame(d3, hp, hm), dd)
    assert rep.kind == "sharp_min"
    # T0 qubit: sharp minimum in every direction
    qb = Dims(2, 1)
    ddq = enumerate_stabilizer_states(qb)
    t0 = build("qubit:T0")
    for seed in range(8):
        rep = fidelity_expansion(PerturbationFrame(qb, t0, rand_direction(t0, seed)), ddq)
        assert rep.kind == "sharp_min"


def test_fidelity_exact_path_for_norell():
    d3 = Dims(3, 1)
    dd = enumerate_stabilizer_states(d3)
    psi, nb1 = build("qutrit:N"), build("qutrit:NB1")
    fr = PerturbationFrame(d3, psi, nb1)
    for eps in (0.05, 0.1, 0.2):
        F, _ = max_overlap(fr.state(eps), dd)
        assert abs(F - 2 / (3 * (1 + eps ** 2))) < 1e-9


def test_xi2_qubit_coefficients():
    qb = Dims(2, 1)
    t0, t1 = build("qubit:T0"), build("qubit:T1")
    for ph in np.linspace(0, 2 * np.pi, 7):
        co = xi2_expansion(PerturbationFrame(qb, t0, np.exp(1j * ph) * t1))
        assert abs(co[1]) < 1e-9
        assert abs(co[2] - 4 / 3) < 1e-10
    # closed form along phi: eps^3 coefficient is -(4 sqrt2/3) cos(3 phi)
    co = xi2_expansion(PerturbationFrame(qb, t0, t1))
    assert abs(co[3] + 4 * np.sqrt(2) / 3) < 1e-9
    # H0 along e^(i phi)|H1>: flat when 3 cos(2 phi) = -1
    h0, h1 = build("qubit:H0"), build("qubit:H1")
    ph = np.arccos(-1 / 3) / 2
    co = xi2_expansion(PerturbationFrame(qb, h0, np.exp(1j * ph) * h1))
    assert classify_xi2(co).kind == "flat"
    co = xi2_expansion(PerturbationFrame(qb, h0, h1))
    assert classify_xi2(co).kind == "smooth_min"


def test_xi2_series_matches_direct():
    rng = np.random.default_rng(0)
    for dims in (Dims(2, 1), Dims(3, 1), Dims(2, 2)):
        for trial in range(7):
            psi = rng.normal(size=dims.D) + 1j * rng.normal(size=dims.D)
            psi /= np.linalg.norm(psi)
            phi = rand_direction(psi, 100 + trial)
            fr = PerturbationFrame(dims, psi, phi)
            co = xi2_expansion(fr)
            K = xi2_series_bound(fr)
            for eps in (-0.1, -0.05, 0.02, 0.08):
                direct = xi(fr.state(eps), dims)
                series = sum(co[n] * eps ** n for n in range(9))
                assert abs(direct - series) <= K * abs(eps) ** 9 + 1e-12


def test_xi2_first_order_vanishes_for_invariant_states():
    # catalog Clifford-stabilizer states and the order-12 example group
    rng = np.random.default_rng(5)
    for name, e in entries().items():
        if e.eigen_operator is None:
            continue
        psi = e.build()
        for _ in range(5):
            co = xi2_expansion(PerturbationFrame(
                e.dims, psi, rand_direction(psi, rng.integers(1 << 30))))
            assert abs(co[1]) < 1e-9, name


def test_classify_xi2_rules():
    assert classify_xi2(np.array([1, 0, 0, 0, 0, 0, 0, 0, 0])).kind == "flat"
    assert classify_xi2(np.array([1, 0, 0.5, 0, 0, 0, 0, 0, 0])).kind == "smooth_min"
    assert classify_xi2(np.array([1, 0, -0.5, 0, 0, 0, 0, 0, 0])).kind == "smooth_max"
    assert classify_xi2(np.array([1, 0, 0, 0.5, 0, 0, 0, 0, 0])).kind == "inflection"
    rep = classify_xi2(np.array([1, 0, 0, 0, -2.0, 0, 0, 0, 0]))
    assert rep.kind == "smooth_max" and rep.leading_order == 4


def test_T_state_inflection():
    # qutrit T along theta = pi/2: inflection unless cos(3 phi2) = 0
    d3 = Dims(3, 1)
    t0, t2 = build("qutrit:T0"), build("qutrit:T2")
    co = xi2_expansion(PerturbationFrame(d3, t0, t2))
    rep = classify_xi2(co)
    assert rep.kind == "inflection" and rep.leading_order == 3
    assert abs(abs(co[3]) - 8 / 27) < 1e-9
    co = xi2_expansion(PerturbationFrame(d3, t0, np.exp(1j * np.pi / 6) * t2))
    rep = classify_xi2(co)
    assert rep.kind == "smooth_max" and rep.leading_order == 4
    assert abs(co[4] + 4 / 9) < 1e-9


def test_angle_direction():
    d3 = Dims(3, 1)
    b = [build("qutrit:T1"), build("qutrit:T2")]
    v = angle_direction(b, angles=[0.7], phases=[0.3, 1.9])
    assert abs(np.linalg.norm(v) - 1) < 1e-12
    expect = (np.exp(0.3j) * np.cos(0.7) * b[0]
              + np.exp(1.9j) * np.sin(0.7) * b[1])
    assert np.allclose(v, expect, atol=1e-12)
