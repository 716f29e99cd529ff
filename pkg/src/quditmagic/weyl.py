"""Dense Weyl-Heisenberg displacement and phase-point operators.

Conventions (odd d):
    omega = exp(2 pi i / d),  zeta = exp(i pi / d),  tau = omega^(2^-1)
    T_(p,q) = tau^(p.q) sum_j omega^(q.j) |p+j><j|
    A_(p,q) = sum_j omega^(2 q.(p-j)) |2p-j><j|

For d = 2 the displacement operators are the Hermitian Pauli representatives
zeta^(p.q) X^p Z^q = i^(p.q) X^p Z^q (one per phase-reduced label); the
phase-point operators are defined for odd d only.

Group-theoretic phases are kept as integer exponents of roots of unity and
materialized to complex doubles only when a matrix is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    UnsupportedDimensionError,
)
from .phasespace import Dims, mod_inverse, phase_points, point_index, split_point

TOL_OP = 1e-10  # default operator tolerance
TOL_EQ = 1e-9   # default operator-equality tolerance


def unit_phase(k: int, order: int) -> complex:
    """exp(2 pi i k / order) with the exponent reduced first."""
    k = int(k) % order
    return np.exp(2j * np.pi * k / order)


def omega(d: int) -> complex:
    return unit_phase(1, d)


def zeta(d: int) -> complex:
    return unit_phase(1, 2 * d)


def tau_exponent(d: int) -> int:
    """tau = omega^tau_exponent with tau_exponent = 2^-1 mod d (odd d)."""
    if d % 2 == 0:
        raise UnsupportedDimensionError("tau = omega^(2^-1) needs odd d")
    return mod_inverse(2, d)


@dataclass
class DenseOperator:
    """A D x D complex matrix with a role tag checked at construction."""

    entries: np.ndarray
    dims: Dims
    role: str = "general"  # general | unitary | hermitian | density
    tol: float = TOL_OP

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=np.complex128)
        D = self.dims.D
        if self.entries.shape != (D, D):
            raise DimensionMismatchError(
                f"expected {D}x{D} matrix, got {self.entries.shape}"
            )
        m = self.entries
        if self.role == "unitary":
            if np.max(np.abs(m.conj().T @ m - np.eye(D))) >= self.tol:
                raise ValueError("matrix is not unitary to tolerance")
        elif self.role == "hermitian":
            if np.max(np.abs(m - m.conj().T)) >= self.tol:
                raise ValueError("matrix is not Hermitian to tolerance")
        elif self.role == "density":
            if np.max(np.abs(m - m.conj().T)) >= self.tol:
                raise ValueError("density matrix is not Hermitian")
            if abs(np.trace(m) - 1.0) >= max(self.tol, 1e-9):
                raise ValueError("density matrix trace is not 1")
            if np.min(np.linalg.eigvalsh(m)) < -self.tol:
                raise ValueError("density matrix has a negative eigenvalue")
        elif self.role != "general":
            raise ValueError(f"unknown role {self.role!r}")

    @property
    def m(self) -> np.ndarray:
        return self.entries


def asmatrix(op) -> np.ndarray:
    """Coerce DenseOperator | ndarray to a complex matrix."""
    if isinstance(op, DenseOperator):
        return op.entries
    return np.asarray(op, dtype=np.complex128)


def density_of(psi) -> np.ndarray:
    """Outer product |psi><psi| from a state vector; matrices pass through."""
    arr = asmatrix(psi) if not isinstance(psi, np.ndarray) else np.asarray(psi, dtype=np.complex128)
    if arr.ndim == 1:
        return np.outer(arr, arr.conj())
    return arr


def _single_qudit_displacement(p: int, q: int, d: int) -> np.ndarray:
    mat = np.zeros((d, d), dtype=np.complex128)
    if d == 2:
        phase = zeta(2) ** ((p * q) % 4)
        for j in range(d):
            mat[(p + j) % d, j] = phase * unit_phase(q * j, d)
        return mat
    t = tau_exponent(d)
    for j in range(d):
        # tau^(p q) omega^(q j) = omega^(t p q + q j)
        mat[(p + j) % d, j] = unit_phase(t * p * q + q * j, d)
    return mat


@lru_cache(maxsize=None)
def _displacement_table_cached(d: int, N: int) -> np.ndarray:
    dims = Dims(d, N)
    singles = np.empty((d, d, d, d), dtype=np.complex128)
    for p in range(d):
        for q in range(d):
            singles[p, q] = _single_qudit_displacement(p, q, d)
    pts = phase_points(dims)
    table = np.empty((dims.n_points, dims.D, dims.D), dtype=np.complex128)
    for i, chi in enumerate(pts):
        p, q = chi[:N], chi[N:]
        op = np.ones((1, 1), dtype=np.complex128)
        for k in range(N):
            op = np.kron(op, singles[p[k], q[k]])
        table[i] = op
    table.setflags(write=False)
    return table


def displacement_table(dims: Dims) -> np.ndarray:
    """All T_chi as a read-only (d^2N, D, D) array, lex order in (p, q)."""
    return _displacement_table_cached(dims.d, dims.N)


def displacement_operator(chi, dims: Dims) -> DenseOperator:
    """The Weyl-Heisenberg unitary T_chi."""
    idx = point_index(chi, dims)
    return DenseOperator(displacement_table(dims)[idx].copy(), dims, role="unitary")


@lru_cache(maxsize=None)
def _phase_point_table_cached(d: int, N: int) -> np.ndarray:
    if d % 2 == 0:
        raise UnsupportedDimensionError("phase-point operators require odd d")
    dims = Dims(d, N)
    singles = np.empty((d, d, d, d), dtype=np.complex128)
    for p in range(d):
        for q in range(d):
            mat = np.zeros((d, d), dtype=np.complex128)
            for j in range(d):
                mat[(2 * p - j) % d, j] = unit_phase(2 * q * (p - j), d)
            singles[p, q] = mat
    pts = phase_points(dims)
    table = np.empty((dims.n_points, dims.D, dims.D), dtype=np.complex128)
    for i, chi in enumerate(pts):
        p, q = chi[:N], chi[N:]
        op = np.ones((1, 1), dtype=np.complex128)
        for k in range(N):
            op = np.kron(op, singles[p[k], q[k]])
        table[i] = op
    table.setflags(write=False)
    return table


def phase_point_table(dims: Dims) -> np.ndarray:
    """All A_chi as a read-only (d^2N, D, D) array, lex order in (p, q)."""
    return _phase_point_table_cached(dims.d, dims.N)


def phase_point_operator(chi, dims: Dims) -> DenseOperator:
    """The Hermitian phase-point operator A_chi (odd d only)."""
    idx = point_index(chi, dims)
    return DenseOperator(phase_point_table(dims)[idx].copy(), dims, role="hermitian")


@dataclass(frozen=True)
class PauliElement:
    """(-1)^x zeta^k X^a Z^b with integer exponents."""

    a: tuple
    b: tuple
    k: int = 0  # exponent of zeta, in Z_2d
    x: int = 0  # sign bit

    def materialize(self, dims: Dims) -> np.ndarray:
        d = dims.d
        op = np.ones((1, 1), dtype=np.complex128)
        for ai, bi in zip(self.a, self.b):
            X = np.zeros((d, d), dtype=np.complex128)
            Z = np.zeros((d, d), dtype=np.complex128)
            for j in range(d):
                X[(j + ai) % d, j] = 1.0
                Z[j, j] = unit_phase(bi * j, d)
            op = np.kron(op, X @ Z)
        phase = (-1) ** (self.x % 2) * unit_phase(self.k, 2 * d)
        return phase * op


def pauli_group(dims: Dims, phase_reduced: bool = True) -> list[DenseOperator]:
    """The generalized Pauli group; d^2N elements if phase-reduced, else 2 d^(2N+1).

    Phase-reduced representatives are the displacement operators T_chi.
    """
    if dims.D > 64:
        raise BudgetExceededError("pauli_group materialization beyond desk budget")
    table = displacement_table(dims)
    if phase_reduced:
        return [DenseOperator(table[i].copy(), dims, role="unitary")
                for i in range(table.shape[0])]
    d = dims.d
    out = []
    pts = phase_points(dims)
    for i in range(table.shape[0]):
        a, b = split_point(pts[i])
        # strip the tau/zeta convention phase so every (k, x) pair is distinct
        base = PauliElement(tuple(int(v) for v in a), tuple(int(v) for v in b)).materialize(dims)
        for x in range(2):
            for k in range(d):
                phase = (-1) ** x * unit_phase(k, 2 * d)
                out.append(DenseOperator(phase * base, dims, role="unitary"))
    return out


def approx_equal(A, B, tol: float = TOL_EQ) -> bool:
    return bool(np.max(np.abs(asmatrix(A) - asmatrix(B))) < tol)


def global_phase(A, B, tol: float = TOL_EQ):
    """Phase c with A = c B (|c| = 1), or None.  Works on vectors and matrices."""
    A = asmatrix(A) if not isinstance(A, np.ndarray) else np.asarray(A, dtype=np.complex128)
    B = asmatrix(B) if not isinstance(B, np.ndarray) else np.asarray(B, dtype=np.complex128)
    if A.shape != B.shape:
        return None
    idx = np.unravel_index(np.argmax(np.abs(B)), B.shape)
    if np.abs(B[idx]) < tol:
        return 1.0 if np.max(np.abs(A)) < tol else None
    c = A[idx] / B[idx]
    if abs(abs(c) - 1.0) > max(tol, 1e-7):
        return None
    if np.max(np.abs(A - c * B)) < tol * max(1.0, np.max(np.abs(B))):
        return c
    return None


def equal_up_to_phase(A, B, tol: float = TOL_EQ) -> bool:
    return global_phase(A, B, tol) is not None


def phase_normalize(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate the first non-negligible entry to the positive real axis."""
    v = np.asarray(v, dtype=np.complex128)
    flat = v.ravel()
    idx = np.flatnonzero(np.abs(flat) > tol)
    if idx.size == 0:
        return v.copy()
    ph = flat[idx[0]] / abs(flat[idx[0]])
    return v / ph


def operator_to_json(op: DenseOperator) -> dict:
    """Row-major [re, im] pairs plus dims and role."""
    m = op.entries
    return {
        "d": op.dims.d,
        "N": op.dims.N,
        "role": op.role,
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def operator_from_json(data: dict) -> DenseOperator:
    dims = Dims(int(data["d"]), int(data["N"]))
    D = dims.D
    flat = np.array([complex(re, im) for re, im in data["entries"]], dtype=np.complex128)
    return DenseOperator(flat.reshape(D, D), dims, role=data.get("role", "general"))


def state_to_json(psi: np.ndarray, dims: Dims) -> dict:
    return {
        "d": dims.d,
        "N": dims.N,
        "amplitudes": [[float(z.real), float(z.imag)] for z in np.asarray(psi).ravel()],
    }


def state_from_json(data: dict) -> tuple[np.ndarray, Dims]:
    dims = Dims(int(data["d"]), int(data["N"]))
    psi = np.array([complex(re, im) for re, im in data["amplitudes"]], dtype=np.complex128)
    if psi.shape != (dims.D,):
        raise DimensionMismatchError(f"expected {dims.D} amplitudes, got {psi.shape}")
    return psi, dims
