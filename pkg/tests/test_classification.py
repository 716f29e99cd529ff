"""Eigenstate-completeness sweeps beyond the acceptance minimum."""

import numpy as np

from quditmagic.catalog import build
from quditmagic.clifford import enumerate_reduced_clifford, nondegenerate_eigenstates
from quditmagic.phasespace import Dims
from quditmagic.stabilizers import enumerate_stabilizer_states


def _classes(dims):
    dd = enumerate_stabilizer_states(dims)
    out = {}
    for el in enumerate_reduced_clifford(dims):
        for _, vec in nondegenerate_eigenstates(el.unitary, dims):
            ov = dd.overlaps(vec)
            if np.max(ov) > 1 - 1e-9:
                continue
            out.setdefault(tuple(np.round(np.sort(ov), 8).tolist()), vec)
    return dd, out


def test_qutrit_classes_match_catalog():
    dd, classes = _classes(Dims(3, 1))
    names = ("qutrit:S", "qutrit:N", "qutrit:Hplus", "qutrit:T0")
    expected = {tuple(np.round(np.sort(dd.overlaps(build(n))), 8).tolist()): n
                for n in names}
    assert set(classes) == set(expected)


def test_ququint_classes_match_catalog():
    # the full 3000-element sweep quotients to exactly the eight listed
    # inequivalence classes; the two A-states share every scalar measure but
    # differ in their stabilizer overlap multiset
    dd, classes = _classes(Dims(5, 1))
    names = ("ququint:H,i", "ququint:H,-1", "ququint:XVS,1",
             "ququint:Bprime,-1", "ququint:Bprime,-w", "ququint:Bprime,w",
             "ququint:A,w2", "ququint:A,-w2")
    expected = {tuple(np.round(np.sort(dd.overlaps(build(n))), 8).tolist()): n
                for n in names}
    assert len(expected) == 8  # the invariant separates all eight
    assert set(classes) == set(expected)


def test_A_states_distinct_but_measure_degenerate():
    from quditmagic.measures import sre, stabilizer_fidelity, wigner_trace_norm
    d5 = Dims(5, 1)
    a_plus, a_minus = build("ququint:A,w2"), build("ququint:A,-w2")
    assert abs(wigner_trace_norm(a_plus, d5)
               - wigner_trace_norm(a_minus, d5)) < 1e-12
    assert abs(sre(a_plus, d5) - sre(a_minus, d5)) < 1e-12
    Fp, _ = stabilizer_fidelity(a_plus, dims=d5)
    Fm, _ = stabilizer_fidelity(a_minus, dims=d5)
    assert abs(Fp - Fm) < 1e-12
    dd = enumerate_stabilizer_states(d5)
    assert not np.allclose(np.sort(dd.overlaps(a_plus)),
                           np.sort(dd.overlaps(a_minus)), atol=1e-9)
