"""Command-line front end.  Every command prints one JSON document."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import io
from .core import parse_value
from .errors import NotConverged, TropTensorError
from .experiments import Distribution, ExperimentConfig, e_distribution
from .hypergraph import build_hypergraph, min_h_cycle
from .polytope import MODES, check_vertex_structure, cyclic_vertex, default_rmax, enumerate_vertices
from .spectra import (e_eigenpairs, h_eigenvalue, h_eigenvectors, iterate_f, verify_h_eigenpair)

log = logging.getLogger("troptensor")


def _lambda_fields(lam) -> dict:
    return {"lambda": io.exact(lam), "lambda_decimal": io.decimal(lam)}


def cmd_eig(args) -> dict:
    A = io.load_tensor(args.tensor)
    ev = h_eigenvalue(A)
    return {
        **_lambda_fields(ev.lam),
        "x": io.vector(ev.witness.x),
        "kind": ev.witness.kind.value,
        "dual_vertex": io.sparse(ev.dual_point),
        "diagnostics": {"lp_pivots": ev.pivots},
    }


def cmd_eigvecs(args) -> dict:
    A = io.load_tensor(args.tensor)
    ev = h_eigenvalue(A)
    try:
        iterated = io.vector(iterate_f(A, ev.witness.x, args.max_iter, lam=ev.lam).x)
    except NotConverged:
        iterated = None
    found = h_eigenvectors(A, ev.lam)
    return {
        **_lambda_fields(ev.lam),
        "eigenvectors": [io.vector(p.x) for p in found.eigenpairs],
        "iterated": iterated,
        "degenerate": found.degenerate,
        "diagnostics": {"degenerate_patterns": found.degenerate_patterns,
                        "pattern_nodes": found.nodes, "lp_pivots": ev.pivots},
    }


def cmd_verify(args) -> dict:
    A = io.load_tensor(args.tensor)
    x = [parse_value(v) for v in args.x]
    lam = parse_value(args.lam)
    rep = verify_h_eigenpair(A, x, lam)
    return {
        **_lambda_fields(lam),
        "x": io.vector(x),
        "passed": rep.passed,
        "failing_rows": [i + 1 for i in rep.failing_rows],
        "slack": io.vector(rep.slack),
    }


def cmd_hcycles(args) -> dict:
    A = io.load_tensor(args.tensor)
    rmax = args.rmax if args.rmax is not None else default_rmax(A.n, A.m)
    H = build_hypergraph(A)
    mean, cyc = min_h_cycle(H, rmax)
    return {
        "rmax": rmax,
        "min_mean": io.exact(mean),
        "min_mean_decimal": io.decimal(mean),
        "cycle": [{"idx": io.key_to_idx(k), "multiplicity": c} for k, c in sorted(cyc.items())],
    }


def cmd_polytope(args) -> dict:
    vertices = enumerate_vertices(args.n, args.m, args.mode)
    report = check_vertex_structure(vertices, args.n)
    cyc = cyclic_vertex(args.n, args.m, args.mode)
    return {
        "n": args.n,
        "m": args.m,
        "mode": args.mode,
        "count": len(vertices),
        "max_nonzeros": report.max_nonzeros,
        "has_n_nonzero_vertex": report.has_n_nonzero_vertex,
        "cyclic_vertex_found": cyc in vertices,
        "vertices": [io.sparse(v.as_dict()) for v in vertices],
    }


def cmd_e_eigs(args) -> dict:
    A = io.load_tensor(args.tensor)
    pairs, degenerate = e_eigenpairs(A, return_degenerate=True)
    return {
        "count": len(pairs),
        "pairs": [{**_lambda_fields(p.lam), "x": io.vector(p.x)} for p in pairs],
        "diagnostics": {"degenerate_patterns": degenerate},
    }


def cmd_experiment(args) -> dict:
    config = ExperimentConfig(args.trials, args.seed, args.n, args.m, args.dist)
    hist = e_distribution(config, workers=args.workers)
    return {**json.loads(hist.to_json(config))}


def _dist(text):
    try:
        return Distribution.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="troptensor",
                                description="Exact tropical eigenvalues of tensors.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def with_tensor(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("tensor", help="tensor JSON document")
        return sp

    with_tensor("eig", "H-eigenvalue, subeigenvector and dual vertex").set_defaults(func=cmd_eig)
    sp = with_tensor("eigvecs", "verified H-eigenvectors")
    sp.add_argument("--max-iter", type=int, default=1000, help="cap on map iterations")
    sp.set_defaults(func=cmd_eigvecs)
    sp = with_tensor("verify", "check an H-eigenpair")
    sp.add_argument("--x", nargs="+", required=True, help="vector entries")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.set_defaults(func=cmd_verify)
    sp = with_tensor("hcycles", "minimum normalised H-cycle weight")
    sp.add_argument("--rmax", type=int, default=None)
    sp.set_defaults(func=cmd_hcycles)
    sp = sub.add_parser("polytope", help="vertex census of the H-cycle polytope")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--mode", choices=MODES, default="canonical")
    sp.set_defaults(func=cmd_polytope)
    with_tensor("e-eigs", "tropical E-eigenpairs").set_defaults(func=cmd_e_eigs)
    sp = sub.add_parser("experiment", help="E-eigenpair count histogram")
    sp.add_argument("--trials", type=int, default=5000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dist", type=_dist, default=Distribution())
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_experiment)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr)
    try:
        body = args.func(args)
        doc = {"command": args.command, "status": "ok", **body}
        code = 0
    except (TropTensorError, ValueError) as exc:
        log.debug("command failed", exc_info=True)
        doc = {"command": args.command, "status": "error",
               "error": type(exc).__name__, "message": str(exc)}
        code = 1
    stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
