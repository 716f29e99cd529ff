"""Command-line front end.

Subcommands: measures, tables, eigenstates, extremality, distill, extent,
catalog, dictionary, search.  State specs are catalog names (qutrit:S),
@file.json, or inline JSON {"d":..,"N":..,"amplitudes":[[re,im],..]}.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import catalog
from .clifford import (
    clifford_equivalence_search,
    enumerate_reduced_clifford,
    nondegenerate_eigenstates,
    word_unitary,
)
from .distill import PairParams, distill_step, iterate_protocol
from .errors import QuditMagicError
from .extent import ExtentProblem, solve_extent, witness_bound
from .extremality import (
    PerturbationFrame,
    classify_mana,
    classify_xi2,
    fidelity_expansion,
    xi2_expansion,
)
from .measures import measure_report, sre, stabilizer_fidelity
from .phasespace import Dims
from .stabilizers import enumerate_stabilizer_states
from .tables import TABLE_IDS, table_rows
from .weyl import state_from_json


def parse_dims(text: str) -> Dims:
    d, n = text.split(",")
    return Dims(int(d), int(n))


def parse_state(spec: str, dims: Dims | None = None) -> tuple[np.ndarray, Dims]:
    if spec.startswith("@"):
        with open(spec[1:]) as fh:
            return state_from_json(json.load(fh))
    if spec.lstrip().startswith("{"):
        return state_from_json(json.loads(spec))
    psi = catalog.build(spec)
    return psi, catalog.entry(spec).dims


def _emit(args, payload, rows=None):
    text = None
    if getattr(args, "json", False) or rows is None:
        text = json.dumps(payload, indent=1, default=_jsonable)
    else:
        buf = []
        w = csv.writer(_ListWriter(buf))
        for r in rows:
            w.writerow(r)
        text = "".join(buf)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + ("\n" if not text.endswith("\n") else ""))
    else:
        print(text)


class _ListWriter:
    def __init__(self, buf):
        self.buf = buf

    def write(self, s):
        self.buf.append(s)


def _jsonable(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return str(obj)


def cmd_measures(args) -> int:
    if not args.state and not args.file:
        raise SystemExit("need a state name or --file")
    spec = f"@{args.file}" if args.file else args.state
    psi, dims = parse_state(spec)
    alphas = tuple(float(a) for a in args.alphas.split(","))
    exact = {}
    if args.state:
        try:
            exact = {k: v[0]
                     for k, v in catalog.entry(args.state).expected.items()}
        except QuditMagicError:
            pass
    rep = measure_report(psi, dims, alphas=alphas, exact_forms=exact)
    if args.json:
        print(rep.to_json())
    else:
        print(f"dims: d={dims.d} N={dims.N}")
        print(f"stabilizer fidelity: {rep.stabilizer_fidelity:.12g}"
              + (f"   [{exact['F']}]" if "F" in exact else ""))
        print(f"nearest stabilizer states: {rep.nearest_count}")
        for a in alphas:
            print(f"M_{a:g}: {rep.sre[a]:.12g}"
                  + (f"   [{exact['M2']}]" if a == 2.0 and "M2" in exact else ""))
        if rep.mana is not None:
            print(f"wigner trace norm: {rep.wigner_trace_norm:.12g}"
                  + (f"   [{exact['wnorm']}]" if "wnorm" in exact else ""))
            print(f"mana: {rep.mana:.12g}")
    return 0


def cmd_tables(args) -> int:
    grid = tuple(int(x) for x in args.grid.split("x")) if args.grid else (181, 361)
    rows = table_rows(args.table, grid=grid)
    _emit(args, {"table": args.table, "rows": rows}, rows=rows)
    return 0


def cmd_eigenstates(args) -> int:
    dims = parse_dims(args.dims)
    results = []
    if args.word:
        U = word_unitary(args.word.split(), dims)
        for val, vec in nondegenerate_eigenstates(U, dims):
            results.append({"eigenvalue": val, "state": vec})
    elif args.all_cliffords:
        dd = enumerate_stabilizer_states(dims)
        classes = {}
        for el in enumerate_reduced_clifford(dims):
            for val, vec in nondegenerate_eigenstates(el.unitary, dims):
                ov = dd.overlaps(vec)
                if np.max(ov) > 1 - 1e-9:
                    continue
                key = tuple(np.round(np.sort(ov), 8).tolist())
                if key not in classes:
                    classes[key] = {"state": vec,
                                    "fidelity": float(np.max(ov)),
                                    "word": list(el.word)}
        results = [{"class": i, **v} for i, v in enumerate(classes.values())]
        print(f"# {len(classes)} non-stabilizer inequivalence classes",
              file=sys.stderr)
    else:
        raise SystemExit("need --word or --all-cliffords")
    _emit(args, results)
    return 0


def _direction_basis(name: str, psi: np.ndarray, dims: Dims) -> list[np.ndarray]:
    """Companion directions: other eigenstates of the catalog eigen-operator
    when available, else a Gram-Schmidt completion."""
    try:
        e = catalog.entry(name)
    except QuditMagicError:
        e = None
    basis = []
    if e is not None and e.eigen_operator is not None:
        for _, vec in nondegenerate_eigenstates(e.eigen_operator(), e.dims):
            if abs(np.vdot(vec, psi)) < 1e-6:
                basis.append(vec)
    if len(basis) < dims.D - 1:
        # complete with Gram-Schmidt over the computational basis
        cur = [psi] + basis
        for k in range(dims.D):
            v = np.zeros(dims.D, dtype=np.complex128)
            v[k] = 1.0
            for b in cur:
                v = v - np.vdot(b, v) * b
            if np.linalg.norm(v) > 1e-8:
                v = v / np.linalg.norm(v)
                basis.append(v)
                cur.append(v)
            if len(basis) == dims.D - 1:
                break
    return basis


def cmd_extremality(args) -> int:
    psi, dims = parse_state(args.state)
    basis = _direction_basis(args.state, psi, dims)
    dd = enumerate_stabilizer_states(dims)

    def classify(direction):
        frame = PerturbationFrame(dims, psi, direction)
        out = {"fidelity": fidelity_expansion(frame, dd)}
        if dims.odd:
            out["mana"] = classify_mana(frame)
        out["xi2"] = classify_xi2(xi2_expansion(frame))
        return out

    if args.sweep:
        nt, np_ = (int(x) for x in args.sweep.split("x"))
        rows = [["theta", "phi", "measure", "kind", "leading_order",
                 "leading_coefficient"]]
        for th in np.linspace(0, np.pi / 2, nt):
            for ph in np.linspace(0, 2 * np.pi, np_, endpoint=False):
                if len(basis) == 1:
                    direction = np.exp(1j * ph) * basis[0]
                else:
                    direction = (np.cos(th) * basis[0]
                                 + np.exp(1j * ph) * np.sin(th) * basis[1])
                    direction /= np.linalg.norm(direction)
                for m, rep in classify(direction).items():
                    rows.append([float(th), float(ph), m, rep.kind,
                                 rep.leading_order, rep.leading_coefficient])
        _emit(args, {"rows": rows}, rows=rows)
        return 0

    spec = args.direction or "phase:0"
    if spec.startswith("phase:"):
        phi = float(spec.split(":", 1)[1])
        direction = np.exp(1j * phi) * basis[0]
    elif spec.startswith("state:"):
        vec, _ = parse_state(spec.split(":", 1)[1])
        vec = vec - np.vdot(psi, vec) * psi
        direction = vec / np.linalg.norm(vec)
    else:
        raise SystemExit(f"bad direction spec {spec!r}")
    reports = classify(direction)
    payload = {m: vars(r) for m, r in reports.items()}
    payload["xi2_coefficients"] = xi2_expansion(
        PerturbationFrame(dims, psi, direction)).tolist()
    _emit(args, payload)
    return 0


def cmd_distill(args) -> int:
    if args.mode == "step":
        params = PairParams(eps1=args.eps1, eps2=args.eps2,
                            eps3=float(args.eps3 or 0.0), a=args.a, b=args.b)
        out, p = distill_step([params] * 5)
        _emit(args, {"p_success": p, "out": vars(out)})
        return 0
    # sweep: --eps3 takes a start:stop:step range here
    start, stop, step = (float(x) for x in (args.eps3 or "0:0.2:0.01").split(":"))
    rows = [["eps3_in", "round", "eps3_out", "p_success"]]
    payload = []
    for eps in np.arange(start, stop + 1e-12, step):
        traj = iterate_protocol(PairParams(eps3=float(eps)), args.rounds)
        payload.append({"eps3": float(eps),
                        "trajectory": [{"round": t["round"],
                                        "eps3": t["params"].eps3,
                                        "p_success": t["p_success"]}
                                       for t in traj]})
        for t in traj:
            rows.append([float(eps), t["round"], t["params"].eps3,
                         t["p_success"]])
    _emit(args, payload, rows=rows)
    return 0


def cmd_extent(args) -> int:
    psi, dims = parse_state(args.state)
    if args.dims and parse_dims(args.dims) != dims:
        raise SystemExit(f"--dims {args.dims} does not match the state")
    dd = enumerate_stabilizer_states(dims)
    if args.group:
        from .clifford import FiniteUnitaryGroup, group_stabilizer_states
        gens = [word_unitary([g], dims) for g in args.group.split(",")]
        G = FiniteUnitaryGroup.generate(gens)
        states = group_stabilizer_states(G)
        span = np.array(states).T
        q, _ = np.linalg.qr(span)
        rank = int(np.sum(np.linalg.svd(span, compute_uv=False) > 1e-10))
        P = q[:, :rank] @ q[:, :rank].conj().T
        problem = ExtentProblem.from_states(psi, states, projector=P)
    else:
        problem = ExtentProblem.from_dictionary(psi, dd)
    sol = solve_extent(problem, tol=args.tol)
    wb = witness_bound(psi, psi, dd) if not args.group else None
    _emit(args, {"extent": sol.value, "l1": sol.l1,
                 "residual": sol.residual, "duality_gap": sol.duality_gap,
                 "iterations": sol.iterations,
                 "self_witness_lower_bound": wb})
    return 0


def cmd_catalog(args) -> int:
    checks = catalog.verify_catalog(tolerance=args.tol)
    equivs = catalog.verify_equivalences()
    n_fail = sum(not c.passed for c in checks) + sum(not e.passed for e in equivs)
    if args.json:
        payload = {
            "checks": [vars(c) for c in checks],
            "equivalences": [{"source": e.source, "target": e.target,
                              "word": list(e.word), "passed": e.passed}
                             for e in equivs],
            "failures": n_fail,
        }
        print(json.dumps(payload, indent=1, default=_jsonable))
    else:
        for c in checks:
            status = "ok " if c.passed else "FAIL"
            print(f"{status} {c.name}: expected {c.expected:.10g} "
                  f"got {c.got:.10g} (err {c.abs_error:.2e})")
        for e in equivs:
            print(f"{'ok ' if e.passed else 'FAIL'} equivalence "
                  f"{e.source} -> {e.target}")
        print(f"{len(checks) + len(equivs)} checks, {n_fail} failures")
    return 1 if n_fail else 0


def cmd_dictionary(args) -> int:
    dims = parse_dims(args.dims)
    dd = enumerate_stabilizer_states(dims)
    text = dd.to_json() if args.json else dd.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text)
    return 0


def cmd_search(args) -> int:
    psi1, dims = parse_state(args.source)
    psi2, _ = parse_state(args.target)
    word = clifford_equivalence_search(psi1, psi2, dims, budget=args.budget,
                                       seed=args.seed)
    if word is None:
        print(json.dumps({"found": False}))
        return 1
    print(json.dumps({"found": True, "word": list(word)}))
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="quditmagic",
                                 description=__doc__.strip().splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", help="magic measures of a state")
    p.add_argument("state", nargs="?", default=None)
    p.add_argument("--file", default=None, help="JSON state file")
    p.add_argument("--alphas", default="2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_measures)

    p = sub.add_parser("tables", help="regenerate a reference table")
    p.add_argument("table", choices=TABLE_IDS)
    p.add_argument("--grid", default=None, help="RxC for the sphere grid")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_tables)

    p = sub.add_parser("eigenstates", help="non-degenerate Clifford eigenstates")
    p.add_argument("--dims", required=True)
    p.add_argument("--all-cliffords", action="store_true")
    p.add_argument("--word", default=None,
                   help="space-separated tokens, e.g. 'CZ@1,2 H@2 H@1'")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_eigenstates)

    p = sub.add_parser("extremality", help="criticality along a direction")
    p.add_argument("state")
    p.add_argument("--direction", default=None,
                   help="phase:<phi> or state:<spec>")
    p.add_argument("--sweep", default=None, help="NTxNP angle grid -> CSV")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_extremality)

    p = sub.add_parser("distill", help="doubled five-qubit code simulation")
    p.add_argument("mode", choices=["step", "sweep"])
    p.add_argument("--eps1", type=float, default=0.0)
    p.add_argument("--eps2", type=float, default=0.0)
    p.add_argument("--eps3", default=None,
                   help="a float for step, start:stop:step for sweep")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--rounds", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_distill)

    p = sub.add_parser("extent", help="stabilizer extent by L1 minimization")
    p.add_argument("mode", choices=["solve"])
    p.add_argument("--state", required=True)
    p.add_argument("--dims", default=None,
                   help="d,N cross-check for JSON state specs")
    p.add_argument("--group", default=None,
                   help="comma-separated generator tokens for the G-variant")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_extent)

    p = sub.add_parser("catalog", help="verify tabulated values")
    p.add_argument("mode", choices=["verify"])
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("dictionary", help="dump a stabilizer dictionary")
    p.add_argument("--dims", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_dictionary)

    p = sub.add_parser("search", help="randomized Clifford equivalence search")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--budget", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_search)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except QuditMagicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
