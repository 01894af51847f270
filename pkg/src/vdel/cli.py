"""Command-line front end: solver subcommands, instance generation, the
benchmark runner, solution verification, and a raw LP dump.

Exit codes: 0 ok, 2 infeasible solution, 3 certificate violation or strict
failure, 64 usage error, 65 unreadable input file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .certificates import CertificateViolation
from .config import Config, config_markdown
from .cvd import hole_oracle, solve_cvd
from .dhvd import obstruction_oracle, solve_dhvd
from .graph import Graph, GraphError, graph_from_json, read_graph_json
from .harness import (InstanceSpec, default_suite, exact_oracle, gen_instance,
                      instance_from_json, instance_to_json, records_to_csv,
                      residual_ok, run_bench, summarize, timings_to_csv)
from .lp import solve_cover_lp
from .multicut import (MulticutInstance, multicut_lp, solve_multicut_chordal,
                       solve_multicut_general)
from .pmfd import get_family, solve_pmfd

EX_OK = 0
EX_INFEASIBLE = 2
EX_CERTIFICATE = 3
EX_USAGE = 64
EX_DATAERR = 65


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _load_graph(path: str) -> Graph:
    try:
        return read_graph_json(path)
    except (OSError, GraphError) as exc:
        print(f"cannot read graph {path}: {exc}", file=sys.stderr)
        raise SystemExit(EX_DATAERR)


def _load_instance(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read instance {path}: {exc}", file=sys.stderr)
        raise SystemExit(EX_DATAERR)
    if "spec" in doc:
        return instance_from_json(text)
    try:
        g = graph_from_json(json.dumps(doc["graph"] if "graph" in doc else doc))
        pairs = tuple((int(a), int(b)) for a, b in doc.get("pairs", []))
    except (KeyError, GraphError, TypeError, ValueError) as exc:
        print(f"malformed instance {path}: {exc}", file=sys.stderr)
        raise SystemExit(EX_DATAERR)
    return g, pairs


def _config_from_args(args) -> Config:
    cfg = Config()
    for key in vars(cfg):
        flag = getattr(args, key, None)
        if flag is not None:
            setattr(cfg, key, flag)
    if getattr(args, "strict", False):
        cfg.strict = True
    if getattr(args, "config", None):
        cfg.apply_file(args.config)
    try:
        cfg.validate()
    except GraphError as exc:
        print(str(exc), file=sys.stderr)
        raise SystemExit(EX_USAGE)
    return cfg


def _emit_certificate(cert, args) -> int:
    doc = cert.to_dict()
    if getattr(args, "dump_cert", None):
        with open(args.dump_cert, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    if getattr(args, "json", False):
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"problem={doc['problem']} weight={doc['weight']} "
              f"lower_bound={doc['lower_bound']} certified={doc['certified']} "
              f"solution={doc['solution']}")
        if doc["flags"]:
            print("flags: " + ", ".join(doc["flags"]))
    if not doc["certified"]:
        return EX_CERTIFICATE
    return EX_OK


def _add_common(p: _Parser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--config", help="JSON config file (overrides flags)")
    p.add_argument("--strict", action="store_true",
                   help="fail (exit 3) if any repair or defect flag fires")
    p.add_argument("--dump-cert", help="write the full certificate JSON here")


def main(argv=None) -> int:
    parser = _Parser(prog="vdel",
                     description="certified vertex-deletion solvers "
                                 "(chordal, distance-hereditary, minor-free) "
                                 "and multicut")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cvd", parents=[], help="weighted chordal deletion")
    p.add_argument("--input", required=True, help="graph JSON")
    p.add_argument("--short-hole-len", dest="short_hole_len", type=int)
    p.add_argument("--separator-strategy", dest="separator_exact_threshold",
                   type=int, metavar="N",
                   help="exact separator search at or below this size")
    _add_common(p)

    p = sub.add_parser("dhvd", help="weighted distance-hereditary deletion")
    p.add_argument("--input", required=True)
    p.add_argument("--obstruction-size", dest="obstruction_size", type=int)
    p.add_argument("--separator-strategy", dest="separator_exact_threshold",
                   type=int, metavar="N")
    _add_common(p)

    p = sub.add_parser("pmfd", help="weighted planar minor-free deletion")
    p.add_argument("--input", required=True)
    p.add_argument("--family", required=True, choices=["k2", "c3", "k4"])
    _add_common(p)

    p = sub.add_parser("multicut", help="weighted vertex multicut")
    p.add_argument("--input", required=True,
                   help='instance JSON: {"graph": ..., "pairs": [[s,t],...]}')
    p.add_argument("--general", action="store_true",
                   help="force the general rounding even on chordal inputs")
    _add_common(p)

    p = sub.add_parser("gen", help="generate a deterministic instance")
    p.add_argument("--spec", required=True,
                   help="spec JSON file or inline JSON object")
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("bench", help="run a benchmark suite")
    p.add_argument("--suite", help="suite JSON (list of specs); default suite "
                                   "when omitted")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--exact-limit", dest="exact_limit", type=int, default=14)
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("verify", help="check a solution file")
    p.add_argument("--problem", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--solution", required=True,
                   help='JSON: {"solution": [v, ...]}')
    p.add_argument("--pairs", help="JSON file with terminal pairs (multicut)")

    p = sub.add_parser("lp", help="solve and dump an obstruction-cover LP")
    p.add_argument("--input", required=True)
    p.add_argument("--problem", required=True,
                   choices=["cvd", "dhvd", "multicut"])
    p.add_argument("--dump-lp", help="write rows and solution JSON here")
    _add_common(p)

    p = sub.add_parser("config", help="print the generated CONFIG.md")

    args = parser.parse_args(argv)

    if args.command == "config":
        print(config_markdown(), end="")
        return EX_OK

    if args.command == "gen":
        spec_text = args.spec
        if os.path.exists(spec_text):
            with open(spec_text, encoding="utf-8") as fh:
                spec_text = fh.read()
        try:
            spec = InstanceSpec.from_dict(json.loads(spec_text))
            inst = gen_instance(spec)
        except (KeyError, ValueError, GraphError) as exc:
            print(f"bad spec: {exc}", file=sys.stderr)
            return EX_DATAERR
        text = instance_to_json(inst) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EX_OK

    if args.command == "bench":
        if args.suite:
            try:
                with open(args.suite, encoding="utf-8") as fh:
                    suite = [InstanceSpec.from_dict(d) for d in json.load(fh)]
            except (OSError, ValueError, KeyError) as exc:
                print(f"bad suite: {exc}", file=sys.stderr)
                return EX_DATAERR
        else:
            suite = default_suite()
        try:
            records = run_bench(suite, jobs=args.jobs,
                                exact_limit=args.exact_limit,
                                strict=args.strict)
        except CertificateViolation as exc:
            print(f"certificate violation: {exc}", file=sys.stderr)
            return EX_CERTIFICATE
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "records.csv"), "w",
                  encoding="utf-8") as fh:
            fh.write(records_to_csv(records))
        with open(os.path.join(args.out, "timings.csv"), "w",
                  encoding="utf-8") as fh:
            fh.write(timings_to_csv(records))
        summary = summarize(records)
        with open(os.path.join(args.out, "summary.json"), "w",
                  encoding="utf-8") as fh:
            fh.write(json.dumps(summary, sort_keys=True, indent=2) + "\n")
        print(json.dumps(summary, sort_keys=True))
        if summary["infeasible"]:
            return EX_INFEASIBLE
        if summary["uncertified"]:
            return EX_CERTIFICATE
        return EX_OK

    if args.command == "verify":
        g = _load_graph(args.graph)
        try:
            with open(args.solution, encoding="utf-8") as fh:
                sol = json.load(fh).get("solution", [])
            pairs = ()
            if args.pairs:
                with open(args.pairs, encoding="utf-8") as fh:
                    pairs = tuple((int(a), int(b))
                                  for a, b in json.load(fh).get("pairs", []))
        except (OSError, ValueError) as exc:
            print(f"bad solution file: {exc}", file=sys.stderr)
            return EX_DATAERR
        try:
            ok = residual_ok(args.problem, g, sol, pairs)
        except GraphError as exc:
            print(str(exc), file=sys.stderr)
            return EX_USAGE
        print("feasible" if ok else "infeasible")
        return EX_OK if ok else EX_INFEASIBLE

    if args.command == "lp":
        cfg = _config_from_args(args)
        loaded = _load_instance(args.input)
        if args.problem == "multicut":
            if isinstance(loaded, tuple):
                g, pairs = loaded
            else:
                g, pairs = loaded.graph, loaded.pairs
            res = multicut_lp(MulticutInstance.make(g, pairs),
                              cfg.lp_max_rows or None)
        else:
            g = loaded[0] if isinstance(loaded, tuple) else loaded.graph
            oracle = (hole_oracle(cfg.cvd()) if args.problem == "cvd"
                      else obstruction_oracle(cfg.dhvd()))
            res = solve_cover_lp(g, oracle, cfg.lp_max_rows or None)
        doc = res.to_dict()
        if args.dump_lp:
            with open(args.dump_lp, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        print(json.dumps({"weight": doc["weight"],
                          "rows": len(doc["rows"]),
                          "separation_complete": doc["separation_complete"]},
                         sort_keys=True))
        return EX_OK

    # solver subcommands
    cfg = _config_from_args(args)
    try:
        if args.command == "cvd":
            g = _load_graph(args.input)
            cert = solve_cvd(g, cfg.cvd())
        elif args.command == "dhvd":
            g = _load_graph(args.input)
            cert = solve_dhvd(g, cfg.dhvd())
        elif args.command == "pmfd":
            g = _load_graph(args.input)
            cert = solve_pmfd(g, get_family(args.family), cfg.pmfd())
        elif args.command == "multicut":
            loaded = _load_instance(args.input)
            if isinstance(loaded, tuple):
                g, pairs = loaded
            else:
                g, pairs = loaded.graph, loaded.pairs
            inst = MulticutInstance.make(g, pairs)
            from .chordal import is_chordal
            if not args.general and is_chordal(g):
                cert = solve_multicut_chordal(inst, cfg.lp_max_rows or None)
            else:
                cert = solve_multicut_general(inst, cfg.lp_max_rows or None)
        else:
            parser.error(f"unknown command {args.command}")
            return EX_USAGE
    except CertificateViolation as exc:
        print(f"certificate violation: {exc}", file=sys.stderr)
        return EX_CERTIFICATE
    except GraphError as exc:
        print(str(exc), file=sys.stderr)
        return EX_DATAERR
    if not residual_ok(cert.problem, g, cert.solution,
                       pairs if args.command == "multicut" else ()):
        print("solver output infeasible", file=sys.stderr)
        return EX_INFEASIBLE
    return _emit_certificate(cert, args)


if __name__ == "__main__":
    sys.exit(main())
