"""Magic measures: mana, stabilizer fidelity, and stabilizer Renyi entropies.

All phase-space sums run over the lexicographic point order of
`phasespace.phase_points`.  Logs are natural.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, UnsupportedDimensionError
from .phasespace import Dims, phase_points
from .stabilizers import StabilizerDictionary, enumerate_stabilizer_states, max_overlap
from .weyl import asmatrix, density_of, displacement_table, phase_point_table

TOL_OP = 1e-10


@dataclass
class WignerFunction:
    """Real quasi-probability values indexed by phase-space point."""

    dims: Dims
    values: np.ndarray

    def as_grid(self) -> np.ndarray:
        """(d^N, d^N) view with rows indexed by p and columns by q."""
        D = self.dims.D
        return self.values.reshape(D, D)

    @property
    def trace_norm(self) -> float:
        return float(np.sum(np.abs(self.values)))


def wigner_function(rho, dims: Dims, tol: float = TOL_OP) -> WignerFunction:
    """W_chi = d^-N Tr(A_chi rho); accepts density matrices or state vectors."""
    if not dims.odd:
        raise UnsupportedDimensionError("Wigner function requires odd d")
    rho = density_of(rho)
    if rho.shape != (dims.D, dims.D):
        raise DimensionMismatchError(f"operator shape {rho.shape} != {(dims.D, dims.D)}")
    A = phase_point_table(dims)
    vals = np.einsum('kij,ji->k', A, rho) / dims.D
    if np.max(np.abs(vals.imag)) > max(tol, 1e-9) * max(1.0, np.max(np.abs(vals))):
        raise ValueError("Wigner values have a non-negligible imaginary part")
    return WignerFunction(dims, vals.real.copy())


def wigner_trace_norm(rho, dims: Dims) -> float:
    return wigner_function(rho, dims).trace_norm


def mana(rho, dims: Dims) -> float:
    """log of the Wigner trace norm; 0 exactly on the stabilizer polytope."""
    return float(np.log(wigner_trace_norm(rho, dims)))


def stabilizer_fidelity(psi: np.ndarray, dictionary: StabilizerDictionary | None = None,
                        dims: Dims | None = None, tie_tol: float = 1e-9):
    """Max squared overlap with the stabilizer set, plus the argmax states."""
    if dictionary is None:
        if dims is None:
            raise ValueError("need a dictionary or dims")
        dictionary = enumerate_stabilizer_states(dims)
    return max_overlap(psi, dictionary, tie_tol)


def group_stabilizer_fidelity(psi: np.ndarray, states: list[np.ndarray],
                              tie_tol: float = 1e-9):
    """Fidelity against an arbitrary finite set of rays (the G-stabilizer set)."""
    if len(states) == 0:
        raise ValueError("empty G-stabilizer set")
    psi = np.asarray(psi, dtype=np.complex128)
    ov = np.abs(np.array(states).conj() @ psi) ** 2
    best = float(np.max(ov))
    return best, [states[i] for i in np.flatnonzero(ov >= best - tie_tol)]


@dataclass
class PauliDistribution:
    """P_chi = d^-N |<psi|T_chi|psi>|^2 over phase-reduced Pauli labels."""

    dims: Dims
    probs: np.ndarray


def pauli_distribution(psi: np.ndarray, dims: Dims) -> PauliDistribution:
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (dims.D,):
        raise DimensionMismatchError(f"state length {psi.shape} != {dims.D}")
    T = displacement_table(dims)
    exps = np.einsum('i,kij,j->k', psi.conj(), T, psi)
    return PauliDistribution(dims, (np.abs(exps) ** 2) / dims.D)


def xi(psi: np.ndarray, dims: Dims, alpha: float = 2.0) -> float:
    """Xi_alpha = sum_chi P_chi^alpha."""
    probs = pauli_distribution(psi, dims).probs
    if float(alpha) == int(alpha):
        return float(np.sum(probs ** int(alpha)))
    return float(np.sum(np.power(probs, alpha)))


def sre(psi: np.ndarray, dims: Dims, alpha: float = 2.0,
        allow_small_alpha: bool = False) -> float:
    """alpha-stabilizer Renyi entropy, offset so stabilizer states give 0."""
    if alpha < 2 and not allow_small_alpha:
        raise ValueError("alpha < 2 is outside the supported contract "
                         "(pass allow_small_alpha=True to override)")
    if alpha == 1:
        raise ValueError("alpha = 1 not supported")
    val = xi(psi, dims, alpha)
    return float(np.log(val) / (1 - alpha) - dims.N * np.log(dims.d))


def sre_upper_bound(dims: Dims, alpha: float = 2.0) -> float:
    """(1-alpha)^-1 log[(1 + (D-1)(D+1)^(1-alpha)) / D]."""
    D = dims.D
    return float(np.log((1 + (D - 1) * (D + 1) ** (1 - alpha)) / D) / (1 - alpha))


def mixed_sre2(rho, dims: Dims) -> float:
    """Mixed-state 2-SRE: -log of the quartic/quadratic Pauli-moment ratio."""
    rho = density_of(rho)
    T = displacement_table(dims)
    traces = np.abs(np.einsum('kij,ji->k', T, rho))
    return float(-np.log(np.sum(traces ** 4) / np.sum(traces ** 2)))


def wh_kernel(O1, O2, chi, dims: Dims) -> complex:
    """K_chi(O1, O2) = d^-N Tr[O1 T_chi O2 T_chi^dag]."""
    from .phasespace import point_index

    T = displacement_table(dims)[point_index(np.asarray(chi), dims)]
    return complex(np.trace(asmatrix(O1) @ T @ asmatrix(O2) @ T.conj().T) / dims.D)


def wh_kernel_all(O1, O2, dims: Dims) -> np.ndarray:
    """K_chi(O1, O2) for every chi, in lexicographic point order."""
    T = displacement_table(dims)
    A = asmatrix(O1)
    B = asmatrix(O2)
    return np.einsum('ij,kjl,lm,kim->k', A, T, B, T.conj()) / dims.D


@dataclass
class MeasureReport:
    """Bundle of the three measures for one state."""

    dims: Dims
    stabilizer_fidelity: float
    nearest_count: int
    sre: dict = field(default_factory=dict)     # alpha -> value
    xi: dict = field(default_factory=dict)      # alpha -> value
    mana: float | None = None
    wigner_trace_norm: float | None = None
    exact_forms: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "d": self.dims.d,
            "N": self.dims.N,
            "stabilizer_fidelity": self.stabilizer_fidelity,
            "nearest_count": self.nearest_count,
            "sre": {str(a): v for a, v in self.sre.items()},
            "xi": {str(a): v for a, v in self.xi.items()},
            "mana": self.mana,
            "wigner_trace_norm": self.wigner_trace_norm,
        }
        if self.exact_forms:
            payload["exact_forms"] = self.exact_forms
        return json.dumps(payload, indent=1)


def measure_report(psi: np.ndarray, dims: Dims, alphas=(2.0,),
                   exact_forms: dict | None = None) -> MeasureReport:
    """Evaluate all applicable measures on a pure state."""
    F, nearest = stabilizer_fidelity(psi, dims=dims)
    rep = MeasureReport(
        dims=dims,
        stabilizer_fidelity=F,
        nearest_count=len(nearest),
        sre={a: sre(psi, dims, a) for a in alphas},
        xi={a: xi(psi, dims, a) for a in alphas},
        exact_forms=exact_forms or {},
    )
    if dims.odd:
        rep.wigner_trace_norm = wigner_trace_norm(psi, dims)
        rep.mana = float(np.log(rep.wigner_trace_norm))
    return rep
