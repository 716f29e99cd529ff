"""Exact density-matrix simulation of the doubled five-qubit distillation.

Two five-qubit perfect codes (systems A and B) are projected onto their
trivial syndromes.  Each of the five (A_i, B_i) pairs carries a state in the
basis

    psi_0 = (|T0 T0> - |T1 T1>)/sqrt2      (eigenvalue 1 of T x T^-1)
    psi_1 = |T0 T1>                        (eigenvalue e^(2 pi i/3))
    psi_2 = |T1 T0>                        (eigenvalue e^(-2 pi i/3))
    psi_3 = (|T0 T0> + |T1 T1>)/sqrt2      (the stabilizer state (|00>+i|11>)/sqrt2)

so the ten-qubit computation runs in the 4^5 = 1024-dimensional pair basis,
where trivial-syndrome projection preserves the parametrized form

    rho = (1 - e1 - e2 - e3) psi_0 + e1 psi_1 + e2 psi_2 + e3 psi_3
          + (a + ib)|psi_0><psi_3| + h.c.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .clifford import qudit_clifford_generators
from .phasespace import Dims
from .weyl import unit_phase

DIMS_PAIR = Dims(2, 2)

_PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

FIVE_QUBIT_GENERATORS = ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")


def pauli_string(spec: str) -> np.ndarray:
    op = np.ones((1, 1), dtype=np.complex128)
    for ch in spec:
        op = np.kron(op, _PAULI[ch])
    return op


def t_gate() -> np.ndarray:
    """T = e^(i pi/4) S H, the transversal gate of the five-qubit code."""
    H, S = qudit_clifford_generators(2)
    return unit_phase(1, 8) * S.unitary @ H.unitary


def t_states() -> tuple[np.ndarray, np.ndarray]:
    """|T0>, |T1>: eigenstates of the T gate at e^(+-i pi/3)."""
    r3 = np.sqrt(3)
    T0 = np.array([np.sqrt((3 + r3) / 6),
                   unit_phase(1, 8) * np.sqrt((3 - r3) / 6)])
    T1 = np.array([-np.sqrt((3 - r3) / 6),
                   unit_phase(1, 8) * np.sqrt((3 + r3) / 6)])
    return T0, T1


@dataclass(frozen=True)
class PairParams:
    """Error populations and psi_0/psi_3 coherences of one pair."""

    eps1: float = 0.0
    eps2: float = 0.0
    eps3: float = 0.0
    a: float = 0.0
    b: float = 0.0

    def density(self) -> np.ndarray:
        """4x4 density matrix in the pair basis; raises if not PSD."""
        rho = np.diag([1.0 - self.eps1 - self.eps2 - self.eps3,
                       self.eps1, self.eps2, self.eps3]).astype(np.complex128)
        rho[0, 3] = self.a + 1j * self.b
        rho[3, 0] = self.a - 1j * self.b
        if np.min(np.linalg.eigvalsh(rho)) < -1e-12:
            raise ValueError("parameters do not define a PSD density matrix")
        return rho

    @classmethod
    def from_density(cls, rho: np.ndarray) -> "PairParams":
        return cls(eps1=float(rho[1, 1].real), eps2=float(rho[2, 2].real),
                   eps3=float(rho[3, 3].real),
                   a=float(rho[0, 3].real), b=float(rho[0, 3].imag))


def pair_basis() -> list[np.ndarray]:
    """The four orthonormal two-qubit pair states psi_0..psi_3."""
    T0, T1 = t_states()
    psi0 = (np.kron(T0, T0) - np.kron(T1, T1)) / np.sqrt(2)
    psi1 = np.kron(T0, T1)
    psi2 = np.kron(T1, T0)
    psi3 = (np.kron(T0, T0) + np.kron(T1, T1)) / np.sqrt(2)
    return [psi0, psi1, psi2, psi3]


@dataclass
class CodeSpec:
    """The five-qubit perfect code: generators and trivial-syndrome projector."""

    generators: tuple[str, ...] = FIVE_QUBIT_GENERATORS

    def projector(self) -> np.ndarray:
        P = np.eye(32, dtype=np.complex128)
        for g in self.generators:
            P = P @ (np.eye(32) + pauli_string(g)) / 2.0
        return P


@lru_cache(maxsize=1)
def code_projector() -> np.ndarray:
    return CodeSpec().projector()


def project_T_overlaps() -> dict:
    """<T_x| Pi |T_x> and the phases of Pi |T_x> for all 32 bitstrings.

    Overlap by weight |x|: 1/6, 0, 1/12, 1/12, 0, 1/6.  Phases are relative
    to the logical states sqrt6 Pi |T_11111> (weight-2 sector) and
    sqrt6 Pi |T_00000> (weight-3 sector), in the gauge |T1> -> e^(i pi/3)|T1>
    that makes the weight-2 phases +-pi/3 and the weight-3 phases +-2pi/3;
    the partition of bitstrings into equal-phase sets is gauge-independent.
    """
    Pi = code_projector()
    T0, T1 = t_states()
    T1 = unit_phase(1, 6) * T1
    vecs = {}
    for x in range(32):
        bits = [(x >> (4 - i)) & 1 for i in range(5)]
        v = np.ones(1, dtype=np.complex128)
        for b in bits:
            v = np.kron(v, T1 if b else T0)
        vecs[x] = v
    T0L = np.sqrt(6) * Pi @ vecs[0b11111]   # logical |T0>
    T1L = np.sqrt(6) * Pi @ vecs[0b00000]   # logical |T1>
    out = {}
    for x, v in vecs.items():
        w = bin(x).count("1")
        pv = Pi @ v
        overlap = float(np.real(np.vdot(v, pv)))
        phase = None
        if w in (2, 3):
            ref = T0L if w == 2 else T1L
            amp = np.vdot(ref, pv) * np.sqrt(12)
            phase = float(np.angle(amp))
        out[x] = {"weight": w, "overlap": overlap, "phase": phase}
    return out


def _pair_permutation() -> np.ndarray:
    """Basis permutation from pair-major (A1 B1 A2 B2 ...) to block
    (A1..A5 B1..B5) qubit ordering, as an index array."""
    perm = [0, 2, 4, 6, 8, 1, 3, 5, 7, 9]  # block position -> interleaved axis
    idx = np.arange(1024)
    bits = (idx[:, None] >> (9 - np.arange(10))) & 1  # interleaved bit rows
    out = np.zeros(1024, dtype=np.int64)
    for pos, ax in enumerate(perm):
        out = (out << 1) | bits[:, ax]
    return out


def logical_t_states() -> tuple[np.ndarray, np.ndarray]:
    """|T0_L>, |T1_L> of the five-qubit code: sqrt6 Pi |T1^x5> and
    sqrt6 Pi |T0^x5| (the trivial-syndrome projection flips the label)."""
    Pi = code_projector()
    T0, T1 = t_states()

    def tens(t):
        v = np.ones(1, dtype=np.complex128)
        for _ in range(5):
            v = np.kron(v, t)
        return v

    return np.sqrt(6) * Pi @ tens(T1), np.sqrt(6) * Pi @ tens(T0)


@lru_cache(maxsize=1)
def logical_pair_vectors() -> np.ndarray:
    """Columns L[:, n]: the logical pair basis, expressed in the 1024-dim
    physical pair-basis coordinates used by `distill_step`.

    The logical basis repeats the pair construction on the logical T states
    of the two codes, so the output PairParams live in the same convention
    as the input ones.
    """
    basis = pair_basis()
    T0L, T1L = logical_t_states()
    psi0L = (np.kron(T0L, T0L) - np.kron(T1L, T1L)) / np.sqrt(2)
    psi1L = np.kron(T0L, T1L)
    psi2L = np.kron(T1L, T0L)
    psi3L = (np.kron(T0L, T0L) + np.kron(T1L, T1L)) / np.sqrt(2)
    L_block = np.array([psi0L, psi1L, psi2L, psi3L]).T  # (A-block, B-block) order
    perm = _pair_permutation()
    L_pairmajor = L_block[perm, :]
    # express in pair-basis coordinates, matching the kron of 4x4 densities
    Psi = np.array(basis).T
    B = np.ones((1, 1), dtype=np.complex128)
    for _ in range(5):
        B = np.kron(B, Psi)
    L = B.conj().T @ L_pairmajor
    gram = L.conj().T @ L
    if np.max(np.abs(gram - np.eye(4))) > 1e-9:
        raise RuntimeError("logical pair vectors are not orthonormal")
    return L


def distill_step(params: list[PairParams]) -> tuple[PairParams, float]:
    """One round on five pairs: project both codes on the trivial syndrome.

    Returns the renormalized logical PairParams and the success probability.
    """
    if len(params) != 5:
        raise ValueError("need exactly five pairs")
    rho = np.ones((1, 1), dtype=np.complex128)
    for p in params:
        rho = np.kron(rho, p.density())
    L = logical_pair_vectors()
    rho_L = L.conj().T @ rho @ L
    p_success = float(np.real(np.trace(rho_L)))
    out = PairParams.from_density(rho_L / p_success)
    return out, p_success


def logical_density(params: list[PairParams]) -> np.ndarray:
    """Unnormalized 4x4 logical operator after trivial-syndrome projection."""
    rho = np.ones((1, 1), dtype=np.complex128)
    for p in params:
        rho = np.kron(rho, p.density())
    L = logical_pair_vectors()
    return L.conj().T @ rho @ L


def success_probability_exact(eps: float) -> float:
    """p(eps) for five identical copies with only eps3 = eps nonzero."""
    return (49 - 240 * eps + 600 * eps ** 2 - 640 * eps ** 3
            + 240 * eps ** 4) / 2304


def updated_error_exact(eps: float) -> float:
    """eps'(eps) for five identical copies with only eps3 = eps nonzero."""
    num = eps * (5 + 100 * eps - 240 * eps ** 2 + 160 * eps ** 3 - 16 * eps ** 4)
    den = 49 - 240 * eps + 600 * eps ** 2 - 640 * eps ** 3 + 240 * eps ** 4
    return num / den


def iterate_protocol(params: PairParams, rounds: int) -> list[dict]:
    """Repeat distill_step on five identical copies of the running state."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    traj = []
    current = params
    for r in range(rounds):
        current, p = distill_step([current] * 5)
        traj.append({"round": r + 1, "params": current, "p_success": p})
    return traj


def dephasing_channel(rho_pair: np.ndarray) -> np.ndarray:
    """The preparation channel on a pair-basis density matrix: average over
    {I, TxT^-1, T^2xT^-2} (1/3 each), then over {I, G} (1/2 each) with G the
    entangling Clifford fixing psi_0 and flipping the sign of psi_3.

    The output is diagonal in the pair basis (all coherences removed)."""
    T = t_gate()
    Psi = np.array(pair_basis()).T
    TT = Psi.conj().T @ np.kron(T, np.linalg.inv(T)) @ Psi
    G = np.array([[0, 0, 0, 1j],
                  [0, 1, 0, 0],
                  [0, 0, 1, 0],
                  [-1j, 0, 0, 0]], dtype=np.complex128)
    G = Psi.conj().T @ G @ Psi
    acc = np.zeros_like(rho_pair, dtype=np.complex128)
    for k in range(3):
        U = np.linalg.matrix_power(TT, k)
        acc += U @ rho_pair @ U.conj().T / 3.0
    return (acc + G @ acc @ G.conj().T) / 2.0
