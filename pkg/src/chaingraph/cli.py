"""Command-line interface.

Every subcommand prints one JSON report on stdout. Exit codes: 0 success
(or "yes" for decision queries), 1 "no" for decision queries, 2 usage
errors, 3 invalid input, 4 an internal guarantee failed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional

from . import __version__
from .consensus import DagSpec, consensus_from_dags
from .decomposition import decompose, verify_theorem1
from .errors import ChainGraphError, ConsensusError, ContractViolation
from .formats import format_graph, parse_chain, parse_graph
from .graph import RELATIONS, relatives, validate_cg
from .models import ExplicitModel, GraphBacked, Transformed, check_axioms, materialize
from .separation import separated, separated_oracle
from .structure import markov_equivalent

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INPUT, EXIT_CONTRACT = range(5)


@dataclass
class CommandReport:
    command: List[str]
    inputs_digest: str
    result: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK
    elapsed: float = 0.0

    def to_json(self) -> str:
        # elapsed is kept out of the payload so reports are reproducible
        payload = {"command": self.command, "inputs_digest": self.inputs_digest,
                   "result": self.result, "exit_code": self.exit_code}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


class _Inputs:
    """Reads input files and accumulates their digest."""

    def __init__(self):
        self.sha = hashlib.sha256()

    def read(self, path: str) -> str:
        with open(path, "rb") as fh:
            data = fh.read()
        self.sha.update(os.path.basename(path).encode() + b"\0" + data + b"\0")
        return data.decode("utf-8")

    def graph(self, path):
        return parse_graph(self.read(path))

    def cg(self, path):
        g = self.graph(path)
        g.require_cg()
        return g


def _names(text: Optional[str]) -> List[str]:
    if not text:
        return []
    return sorted(t for t in text.replace(",", " ").split() if t)


def _cmd_validate(args, inp):
    g = inp.graph(args.graph)
    cycles = validate_cg(g)
    return {"valid": not cycles, "cycles": [list(c) for c in cycles]}, (EXIT_OK if not cycles else EXIT_INPUT)


def _cmd_relatives(args, inp):
    g = inp.cg(args.graph)
    x = _names(args.of)
    return {"of": x, "relation": args.rel, "nodes": sorted(relatives(g, x, args.rel))}, EXIT_OK


def _cmd_separate(args, inp):
    g = inp.cg(args.graph)
    x, y, z = _names(args.x), _names(args.y), _names(args.z)
    fn = separated_oracle if args.oracle else separated
    sep = fn(g, x, y, z, args.semantics)
    res = {"x": x, "y": y, "z": z, "semantics": args.semantics, "separated": sep}
    return res, (EXIT_OK if sep else EXIT_NO)


def _cmd_model(args, inp):
    g = inp.cg(args.graph)
    m = Transformed(GraphBacked(g, args.semantics), _names(args.marginalize), _names(args.condition))
    return materialize(m).to_json(), EXIT_OK


def _cmd_decompose(args, inp):
    g = inp.cg(args.graph)
    d = decompose(g)
    os.makedirs(args.out_dir, exist_ok=True)
    files = {"g_d.cg": format_graph(d.g_d), "g_u.cg": format_graph(d.g_u), "g_s.cg": format_graph(d.g_s),
             "selection.json": json.dumps(d.selection_json(), indent=2, sort_keys=True) + "\n"}
    for name, text in files.items():
        with open(os.path.join(args.out_dir, name), "w") as fh:
            fh.write(text)
    return {"files": sorted(files), "selection": d.selection_json(),
            "g_d": format_graph(d.g_d), "g_u": format_graph(d.g_u), "g_s": format_graph(d.g_s)}, EXIT_OK


def _cmd_verify(args, inp):
    g = inp.cg(args.graph)
    rep = verify_theorem1(g, args.semantics, mode=args.mode, jobs=args.jobs)
    ok = rep.inclusion and rep.optimal
    return rep.to_json(), (EXIT_OK if ok else EXIT_CONTRACT)


def _cmd_consensus(args, inp):
    alpha = parse_chain(inp.read(args.chain))
    specs = [DagSpec.from_json(inp.read(p)) for p in args.specs]
    try:
        g, trace = consensus_from_dags(specs, alpha, args.semantics, mode=args.mode)
    except ConsensusError as exc:
        # DAG-derived models are compositional graphoids, so this is on us
        raise ContractViolation(str(exc)) from exc
    text = format_graph(g)
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        with open(os.path.join(args.out_dir, "consensus.cg"), "w") as fh:
            fh.write(text)
        with open(os.path.join(args.out_dir, "consensus.trace.json"), "w") as fh:
            json.dump(trace.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return {"graph": text, "trace": trace.to_json()}, EXIT_OK


def _cmd_axioms(args, inp):
    m = ExplicitModel.from_json(inp.read(args.model))
    violations = check_axioms(m, args.check)
    return {"check": args.check, "count": len(violations),
            "violations": [v.to_json() for v in violations]}, (EXIT_OK if not violations else EXIT_NO)


def _cmd_equivalent(args, inp):
    g, h = inp.cg(args.g1), inp.cg(args.g2)
    eq = markov_equivalent(g, h, args.semantics)
    return {"semantics": args.semantics, "equivalent": eq}, (EXIT_OK if eq else EXIT_NO)


def _cmd_agreement(args, inp):
    from .checks import random_agreement

    mismatches, total = random_agreement(args.nodes, args.queries, args.seed, args.semantics, jobs=args.jobs)
    res = {"nodes": args.nodes, "queries": total, "seed": args.seed,
           "mismatches": [m for m in mismatches[:20]], "mismatch_count": len(mismatches)}
    return res, (EXIT_OK if not mismatches else EXIT_CONTRACT)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chaingraph", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--timing", action="store_true", help="print elapsed time on stderr")
    sub = p.add_subparsers(dest="cmd", required=True)
    sems = ("lwf", "amp", "dag", "ug")

    s = sub.add_parser("validate", help="check that a graph is a chain graph")
    s.add_argument("graph")
    s.set_defaults(fn=_cmd_validate)

    s = sub.add_parser("relatives", help="pa/ch/ne/bd/ad/de/san/co of a node set")
    s.add_argument("graph")
    s.add_argument("--of", required=True)
    s.add_argument("--rel", required=True, choices=RELATIONS)
    s.set_defaults(fn=_cmd_relatives)

    s = sub.add_parser("separate", help="decide x _|_ y | z (exit 0 separated, 1 connected)")
    s.add_argument("graph")
    s.add_argument("--semantics", required=True, choices=sems)
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--z", default="")
    s.add_argument("--oracle", action="store_true", help="use the moral/augmented graph criterion")
    s.set_defaults(fn=_cmd_separate)

    s = sub.add_parser("model", help="elementary triples of I(G), optionally marginalized/conditioned")
    s.add_argument("graph")
    s.add_argument("--semantics", required=True, choices=sems)
    s.add_argument("--marginalize", default="")
    s.add_argument("--condition", default="")
    s.set_defaults(fn=_cmd_model)

    s = sub.add_parser("decompose", help="write G_D, G_U, G_S and the selection-node map")
    s.add_argument("graph")
    s.add_argument("--out-dir", required=True)
    s.set_defaults(fn=_cmd_decompose)

    s = sub.add_parser("verify-theorem1", help="inclusion and optimality wrt the decomposition model")
    s.add_argument("graph")
    s.add_argument("--semantics", required=True, choices=("lwf", "amp"))
    s.add_argument("--mode", default="auto", choices=("auto", "full", "skeleton"))
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(fn=_cmd_verify)

    s = sub.add_parser("consensus", help="inclusion-minimal CG for a chain from DagSpec files")
    s.add_argument("--semantics", required=True, choices=("lwf", "amp"))
    s.add_argument("--chain", required=True)
    s.add_argument("--mode", default="shrink", choices=("shrink", "brute", "both"))
    s.add_argument("--out-dir")
    s.add_argument("specs", nargs="+")
    s.set_defaults(fn=_cmd_consensus)

    s = sub.add_parser("axioms", help="check graphoid axioms of an explicit model (exit 1 on violations)")
    s.add_argument("model")
    s.add_argument("--check", default="compositional", choices=("graphoid", "compositional"))
    s.set_defaults(fn=_cmd_axioms)

    s = sub.add_parser("equivalent", help="Markov equivalence test (exit 0 equivalent, 1 not)")
    s.add_argument("g1")
    s.add_argument("g2")
    s.add_argument("--semantics", required=True, choices=("lwf", "amp"))
    s.set_defaults(fn=_cmd_equivalent)

    s = sub.add_parser("agreement", help="compare the two separation criteria on random CGs")
    s.add_argument("--nodes", type=int, default=7)
    s.add_argument("--queries", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--semantics", default="both", choices=("lwf", "amp", "both"))
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(fn=_cmd_agreement)
    return p


def run(argv: Optional[List[str]] = None):
    """Parse ``argv`` and execute; returns ``(CommandReport, exit_code)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    inp = _Inputs()
    t0 = time.perf_counter()
    try:
        result, code = args.fn(args, inp)
    except ContractViolation as exc:
        result = {"error": str(exc)}
        if exc.witness is not None:
            result["witness"] = format_graph(exc.witness)
        code = EXIT_CONTRACT
    except (ChainGraphError, OSError, UnicodeDecodeError, ValueError) as exc:
        result, code = {"error": str(exc)}, EXIT_INPUT
    report = CommandReport(argv, inp.sha.hexdigest(), result, code, time.perf_counter() - t0)
    return report, code


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    report, code = run(argv)
    sys.stdout.write(report.to_json())
    if "--timing" in argv:
        print(f"elapsed: {report.elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
