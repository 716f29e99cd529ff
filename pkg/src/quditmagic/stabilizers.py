"""Construction and enumeration of pure stabilizer states.

Odd d: |M, chi> is built from the rank-one projector
    P = d^-N sum_{m in M} omega^(<chi, m>) T_m,
the unique joint eigenstate of the displaced stabilizer characters.

d = 2: states are built from signed-generator projector products
    P = prod_i (I + s_i g_i) / 2,   s_i = (-1)^(<chi, b_i>),
with g_i the Hermitian Pauli of the i-th echelon basis row; the odd-d
character route needs the tau convention, which has no analogue mod 2.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceededError, DimensionMismatchError, InvalidStabilizerError
from .phasespace import (
    Dims,
    IsotropicSubspace,
    enumerate_maximal_isotropic,
    phase_points,
    point_index,
    symplectic_product,
)
from .weyl import displacement_table, phase_normalize, unit_phase

TIE_TOL = 1e-9  # default argmax tie tolerance


@dataclass(frozen=True)
class StabilizerState:
    """A pure stabilizer state |M, chi> with its materialized vector."""

    subspace: IsotropicSubspace
    displacement: np.ndarray
    vector: np.ndarray

    @property
    def dims(self) -> Dims:
        return self.subspace.dims

    def check(self, tol: float = 1e-10) -> bool:
        """Re-derive the stabilization equations for the stored vector."""
        dims = self.dims
        d = dims.d
        T = displacement_table(dims)
        rows = self.subspace.basis if d == 2 else self.subspace.elements
        for m in rows:
            ph = unit_phase(symplectic_product(self.displacement, m, d), d)
            v = ph * (T[point_index(m, dims)] @ self.vector)
            if np.max(np.abs(v - self.vector)) >= tol:
                return False
        return True


def stabilizer_state(M: IsotropicSubspace, chi, dims: Dims) -> StabilizerState:
    """The stabilizer state for a maximal isotropic M and displacement chi."""
    if M.dims != dims:
        raise DimensionMismatchError("subspace dims do not match")
    if not M.maximal:
        raise InvalidStabilizerError("subspace is not maximal")
    d, D = dims.d, dims.D
    chi = np.asarray(chi, dtype=np.int64) % d
    T = displacement_table(dims)
    if d == 2:
        proj = np.eye(D, dtype=np.complex128)
        for b in M.basis:
            sign = (-1) ** int(symplectic_product(chi, b, d))
            proj = proj @ (np.eye(D) + sign * T[point_index(b, dims)]) / 2.0
    else:
        proj = np.zeros((D, D), dtype=np.complex128)
        for m in M.elements:
            ph = unit_phase(symplectic_product(chi, m, d), d)
            proj += ph * T[point_index(m, dims)]
        proj /= D
    # rank-one projector: take its dominant column
    col = int(np.argmax(np.linalg.norm(proj, axis=0)))
    v = proj[:, col]
    nrm = np.linalg.norm(v)
    if nrm < 1e-8:
        raise InvalidStabilizerError("sign assignment stabilizes no state")
    state = StabilizerState(M, M.reduce_mod(chi), phase_normalize(v / nrm))
    if not state.check(tol=1e-8):
        raise InvalidStabilizerError("constructed vector fails stabilization equations")
    return state


@dataclass
class StabilizerDictionary:
    """The complete set SS_(N,d), indexed by (subspace, displacement coset)."""

    dims: Dims
    states: list[StabilizerState]

    def __post_init__(self):
        self.matrix = np.array([s.vector for s in self.states])
        self.index = {
            (s.subspace.key(), s.displacement.tobytes()): i
            for i, s in enumerate(self.states)
        }

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def lookup(self, subspace: IsotropicSubspace, chi) -> StabilizerState:
        key = (subspace.key(), subspace.reduce_mod(chi).tobytes())
        return self.states[self.index[key]]

    def overlaps(self, psi: np.ndarray) -> np.ndarray:
        """|<s|psi>|^2 for every dictionary state."""
        return np.abs(self.matrix.conj() @ np.asarray(psi, dtype=np.complex128)) ** 2

    def to_json(self) -> str:
        recs = []
        for s in self.states:
            recs.append({
                "basis": s.subspace.basis.tolist(),
                "displacement": s.displacement.tolist(),
                "amplitudes": [[float(a.real), float(a.imag)] for a in s.vector],
            })
        return json.dumps({"d": self.dims.d, "N": self.dims.N, "states": recs}, indent=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["basis", "displacement", "amplitudes"])
        for s in self.states:
            w.writerow([
                ";".join(",".join(map(str, row)) for row in s.subspace.basis),
                ",".join(map(str, s.displacement)),
                ";".join(f"{a.real:.17g}{a.imag:+.17g}j" for a in s.vector),
            ])
        return buf.getvalue()


def stabilizer_count(dims: Dims) -> int:
    """d^N prod_{i=1..N} (d^i + 1)."""
    n = dims.D
    for i in range(1, dims.N + 1):
        n *= dims.d ** i + 1
    return n


_ENUM_BUDGET = {(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)}


@lru_cache(maxsize=None)
def _dictionary_cached(d: int, N: int) -> StabilizerDictionary:
    dims = Dims(d, N)
    states = []
    for M in enumerate_maximal_isotropic(dims):
        seen = set()
        for chi in phase_points(dims):
            rep = M.reduce_mod(chi)
            key = rep.tobytes()
            if key in seen:
                continue
            seen.add(key)
            states.append(stabilizer_state(M, rep, dims))
        if len(seen) != dims.D:
            raise InvalidStabilizerError(
                f"expected {dims.D} displacement cosets, found {len(seen)}"
            )
    return StabilizerDictionary(dims, states)


def enumerate_stabilizer_states(dims: Dims) -> StabilizerDictionary:
    """The full stabilizer dictionary for dims; cached per (d, N)."""
    if (dims.d, dims.N) not in _ENUM_BUDGET:
        raise BudgetExceededError(
            f"(d={dims.d}, N={dims.N}) outside the stabilizer enumeration budget"
        )
    return _dictionary_cached(dims.d, dims.N)


def max_overlap(psi: np.ndarray, dictionary: StabilizerDictionary,
                tie_tol: float = TIE_TOL) -> tuple[float, list[StabilizerState]]:
    """Largest squared overlap with the dictionary and all states tied for it."""
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (dictionary.dims.D,):
        raise DimensionMismatchError(
            f"state has length {psi.shape}, dictionary needs {dictionary.dims.D}"
        )
    ov = dictionary.overlaps(psi)
    best = float(np.max(ov))
    nearest = [dictionary.states[i] for i in np.flatnonzero(ov >= best - tie_tol)]
    return best, nearest
