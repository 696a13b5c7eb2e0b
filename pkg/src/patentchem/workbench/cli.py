"""Command-line entry point.

Exit codes: 0 success, 1 usage or configuration error, 2 data error
(bad SMILES, CSV, labels, columns or model schema), 3 adapter failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import replace
from pathlib import Path

import numpy as np

from ..chem import ParseDiagnostic, parse_smiles, standardize, standardize_molecule
from ..errors import ConfigError, PatentChemError
from ..learn import BorutaConfig, boruta_select
from ..molfeat import ecfp
from ..ocsr import AdapterUnreachable, EvaluatorProtocol, NoValidCandidate, RenderFailed
from ..simnet import adjacency, build_graph, dump_edges
from .bundles import ingest_csv
from .config import load_config
from .pipeline import bundle_features, run_eval, run_ocsr, run_rank, run_train, training_matrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_ADAPTER = 3

_ADAPTER_ERRORS = (AdapterUnreachable, RenderFailed, EvaluatorProtocol, NoValidCandidate)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _select_bundles(bundles, patent: str | None):
    if patent is None:
        return bundles
    chosen = [b for b in bundles if b.patent_id == patent]
    if not chosen:
        raise UsageError(f"patent {patent!r} not found")
    return chosen


def cmd_parse(args, config) -> int:
    status = EXIT_OK
    for s in args.smiles:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                print(standardize(s))
        except ParseDiagnostic as exc:
            print(f"error: {s!r}: {exc}", file=sys.stderr)
            status = EXIT_DATA
    return status


def cmd_fp(args, config) -> int:
    radius = config.fp_radius if args.radius is None else args.radius
    width = config.fp_width if args.width is None else args.width
    for s in args.smiles:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            fp = ecfp(standardize_molecule(parse_smiles(s)), radius, width)
        print(f"{fp.to_hex()}\t{s}")
    return EXIT_OK


def cmd_graph(args, config) -> int:
    bundles = _select_bundles(ingest_csv(args.csv), args.patent)
    cutoff = config.cutoff_grid[0] if args.cutoff is None else args.cutoff
    parts = []
    for b in bundles:
        fps = {
            c.compound_id: ecfp(c.molecule(), config.fp_radius, config.fp_width) for c in b.compounds
        }
        g = build_graph(fps, cutoff)
        parts.append(dump_edges(g))
        if args.adjacency:
            path = Path(args.adjacency)
            target = path if len(bundles) == 1 else path.with_name(f"{path.stem}_{b.patent_id}{path.suffix}")
            np.savetxt(target, adjacency(g), fmt="%d", delimiter="\t",
                       header="\t".join(g.node_ids), comments="")
    _emit("".join(parts), args.output)
    return EXIT_OK


def cmd_features(args, config) -> int:
    bundles = _select_bundles(ingest_csv(args.csv), args.patent)
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    header_done = False
    for b in bundles:
        X = bundle_features(b, config)
        if not header_done:
            writer.writerow(("patent_id", "compound_id", "is_core") + X.columns)
            header_done = True
        for cid, label, row in zip(X.row_ids, X.labels, X.values):
            writer.writerow((b.patent_id, cid, int(label)) + tuple(repr(float(v)) for v in row))
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def cmd_select(args, config) -> int:
    X = training_matrix(ingest_csv(args.csv), config)
    res = boruta_select(X, BorutaConfig(max_iter=config.boruta_max_iter, seed=config.seed,
                                        workers=config.effective_workers))
    doc = {"iterations_run": res.iterations_run, "status": res.status, "hit_count": res.hit_count}
    _emit(json.dumps(doc, indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_train(args, config) -> int:
    if args.no_search:
        config = replace(config, search=False)
    if args.no_boruta:
        config = replace(config, boruta=False)
    if args.budget is not None:
        config = replace(config, budget=args.budget)
    result = run_train(ingest_csv(args.csv), config, args.output)
    print(f"model written to {args.output} ({len(result.model.columns)} feature columns)")
    return EXIT_OK


def cmd_rank(args, config) -> int:
    bundles = _select_bundles(ingest_csv(args.csv), args.patent)
    for b in bundles:
        report = run_rank(b, args.model, config, args.out_dir)
        sys.stdout.write(report.to_markdown())
    return EXIT_OK


def cmd_eval(args, config) -> int:
    reports, summary = run_eval(ingest_csv(args.csv), args.model, config, args.top1_percent)
    doc = {"summary": summary.to_dict(), "reports": [r.to_dict() for r in reports]}
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "eval.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        (out / "eval.md").write_text(summary.to_markdown(), encoding="utf-8")
    sys.stdout.write(summary.to_markdown())
    return EXIT_OK


def cmd_ocsr(args, config) -> int:
    if args.recognizer:
        config = replace(config, recognizers=tuple(args.recognizer))
    if args.renderer:
        config = replace(config, renderer=args.renderer)
    if args.evaluator:
        config = replace(config, evaluator=args.evaluator)
    if not config.recognizers:
        raise UsageError("no recognizer configured (use --recognizer or the [adapters] section)")
    report = run_ocsr(args.manifest, config)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "ocsr.json").write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")
        (out / "ocsr.md").write_text(report.to_markdown(), encoding="utf-8")
    sys.stdout.write(report.to_markdown())
    if report.items and all(i.error for i in report.items):
        # nothing completed: the adapters, not individual images, are at fault
        print("patentchem: adapter error: every image failed", file=sys.stderr)
        return EXIT_ADAPTER
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS keeps a subcommand from resetting options given before it
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="master random seed")
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS,
                        help="worker threads (0 = logical cores)")
    common.add_argument("--config", default=argparse.SUPPRESS, help="config file (default: $PATENTCHEM_CONFIG)")

    p = _Parser(prog="patentchem", description="Patent core-compound and structure-recognition toolkit.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("parse", parents=[common], help="canonical SMILES")
    s.add_argument("smiles", nargs="+")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("fp", parents=[common], help="ECFP bit vectors as hex")
    s.add_argument("smiles", nargs="+")
    s.add_argument("--radius", type=int)
    s.add_argument("--width", type=int)
    s.set_defaults(func=cmd_fp)

    def with_csv(sp, patent=True):
        sp.add_argument("csv", help="compounds CSV")
        if patent:
            sp.add_argument("--patent", help="restrict to one patent id")

    s = sub.add_parser("graph", parents=[common], help="similarity-network edge list")
    with_csv(s)
    s.add_argument("--cutoff", type=float)
    s.add_argument("--adjacency", help="also write the adjacency matrix (TSV)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("features", parents=[common], help="per-compound feature table (CSV)")
    with_csv(s)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_features)

    s = sub.add_parser("select", parents=[common], help="Boruta feature selection (JSON)")
    with_csv(s, patent=False)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_select)

    s = sub.add_parser("train", parents=[common], help="train and save an ensemble model")
    with_csv(s, patent=False)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--budget", type=int)
    s.add_argument("--no-search", action="store_true", help="use the fixed [learn] hyperparameters")
    s.add_argument("--no-boruta", action="store_true")
    s.set_defaults(func=cmd_train)

    s = sub.add_parser("rank", parents=[common], help="rank compounds of each patent")
    with_csv(s)
    s.add_argument("--model", required=True)
    s.add_argument("--out-dir")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("eval", parents=[common], help="Top-k metrics over labeled patents")
    with_csv(s, patent=False)
    s.add_argument("--model", required=True)
    s.add_argument("--out-dir")
    s.add_argument("--top1-percent", action="store_true", help="add a Top 1%% column")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("ocsr", parents=[common], help="benchmark recognizers on a manifest")
    s.add_argument("manifest", help="JSON-lines manifest of image_path/truth_smiles")
    s.add_argument("--recognizer", action="append", help="recognizer command (repeatable, in order)")
    s.add_argument("--renderer")
    s.add_argument("--evaluator")
    s.add_argument("--out-dir")
    s.set_defaults(func=cmd_ocsr)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(getattr(args, "config", None))
        if hasattr(args, "seed"):
            config = replace(config, seed=args.seed)
        if hasattr(args, "workers"):
            config = replace(config, workers=args.workers)
        return args.func(args, config)
    except (UsageError, ConfigError) as exc:
        print(f"patentchem: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _ADAPTER_ERRORS as exc:
        print(f"patentchem: adapter error: {exc}", file=sys.stderr)
        return EXIT_ADAPTER
    except (PatentChemError, ValueError, OSError) as exc:
        print(f"patentchem: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
