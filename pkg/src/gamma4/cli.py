"""``gamma4`` command line.

Exit codes: 0 success, 1 a verified claim failed, 2 usage error, 3 I/O or
model-file format error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from math import comb

from . import kernels
from .engine import (
    GroupModel,
    NormalForm,
    build_model,
    central_class,
    central_class_pair,
    element_order,
    invariants,
    nf,
    summary_json,
)
from .errors import FormatError, Gamma4Error
from .oracle import oracle_rank
from .persist import load_model, save_model
from .reporting import TABLES, export_tables
from .verify import CLAIMS, any_failed, reports_csv, reports_json, torsion_report, verify_all
from .words import commutator_word, format_word, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("GAMMA4_WORKERS", "1")))
    except ValueError:
        return 1


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gamma4", description="Exact computations in the groups Γₙ⁴.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def model_source(p: argparse.ArgumentParser, required: bool = True) -> None:
        src = p.add_mutually_exclusive_group(required=required)
        src.add_argument("-m", "--model", help="model file written by 'gamma4 build'")
        src.add_argument("-n", type=int, help="build the model for this n in memory")
        p.add_argument("--allow-big-n", action="store_true", help="permit n >= 10 (large memory)")
        p.add_argument("--workers", type=_positive, default=_default_workers())

    def fmt(p: argparse.ArgumentParser, choices=("text", "json")) -> None:
        p.add_argument("--format", choices=choices, default="text")

    p = sub.add_parser("build", help="build a model and save it")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--allow-big-n", action="store_true")
    p.add_argument("--workers", type=_positive, default=_default_workers())
    fmt(p)

    p = sub.add_parser("info", help="invariants of a model")
    model_source(p)
    fmt(p)

    for name, text in (("nf", "normal form of a word"), ("order", "order of a word")):
        p = sub.add_parser(name, help=text)
        model_source(p)
        p.add_argument("word", nargs="?", help="e.g. 'd(1,2,3,4) d(1,2,3,5)'")
        p.add_argument("--stdin", action="store_true", help="read one word per line")
        fmt(p)

    p = sub.add_parser("comm", help="normal form of the commutator of two words")
    model_source(p)
    p.add_argument("left")
    p.add_argument("right")
    fmt(p)

    p = sub.add_parser("central", help="the class c^(K) of a 3-subset K")
    model_source(p)
    p.add_argument("K", nargs="+", help="three labels, e.g. 1 2 3 or 1,2,3")
    fmt(p)

    p = sub.add_parser("verify", help="check the relations, lemmas, theorem and corollary")
    model_source(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true")
    which.add_argument("--claim", action="append", choices=CLAIMS)
    p.add_argument("--samples", type=_positive, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--max-len", type=_positive, default=50)
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    fmt(p, ("text", "json", "csv"))

    p = sub.add_parser("oracle-rank", help="independent GF(2) rank of the pentagon abelianization")
    p.add_argument("-n", type=int, required=True)
    fmt(p)

    p = sub.add_parser("export", help="export a table")
    model_source(p)
    p.add_argument("--what", choices=TABLES, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    return parser


def _load(args) -> GroupModel:
    if getattr(args, "model", None):
        return load_model(args.model)
    return build_model(args.n, allow_big_n=args.allow_big_n, workers=args.workers)


def _warn_small(model: GroupModel) -> None:
    if model.warning_n_lt_7:
        print(
            f"warning: n = {model.n} < 7, results concern the class-2 quotient of Γₙ⁴",
            file=sys.stderr,
        )


def _nf_text(model: GroupModel, form: NormalForm) -> str:
    if form.is_identity():
        return "identity"
    gens = [str(model.table[i]) for i in range(model.m) if form.a_res >> i & 1]
    return f"a_res=[{' '.join(gens)}] h_res={form.h_res:#x}"


def _out(text: str, path: str | None = None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _words(args, model: GroupModel):
    if args.stdin:
        for line in sys.stdin:
            yield line.strip(), parse_word(line, model.n)
    elif args.word is None:
        raise Gamma4Error("give a word or --stdin")
    else:
        yield args.word, parse_word(args.word, model.n)


def _parse_K(tokens: list[str]) -> tuple[int, ...]:
    labels = [int(t) for tok in tokens for t in tok.replace(",", " ").split()]
    return tuple(labels)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s: %(message)s")
    try:
        return _dispatch(args)
    except FormatError as exc:
        print(f"gamma4: format error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"gamma4: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (Gamma4Error, ValueError) as exc:
        print(f"gamma4: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "oracle-rank":
        rank = oracle_rank(args.n)
        q = 3 * comb(args.n, 4) - rank
        if args.format == "json":
            _out(json.dumps({"n": args.n, "rank": rank, "q": q}) + "\n")
        else:
            _out(f"{rank}\n")
        return EXIT_OK

    if cmd == "build":
        model = build_model(args.n, allow_big_n=args.allow_big_n, workers=args.workers)
        save_model(model, args.output)
        _warn_small(model)
        inv = invariants(model)
        if args.format == "json":
            _out(json.dumps(inv, sort_keys=True) + "\n")
        else:
            _out(f"n={inv['n']} m={inv['m']} q={inv['q']} p={inv['p']} order=2^{inv['order_log2']} -> {args.output}\n")
        return EXIT_OK

    model = _load(args)
    _warn_small(model)

    if cmd == "info":
        if args.format == "json":
            _out(json.dumps(summary_json(model), indent=2) + "\n")
        else:
            inv = invariants(model)
            lines = [
                f"n = {model.n}",
                f"generators m = {model.m}",
                f"q = {inv['q']}   (abelianization (Z2)^q, bound 3*C(n,4) = {3 * comb(model.n, 4)})",
                f"p = {inv['p']}   (derived subgroup (Z2)^p, bound C(n,3) = {comb(model.n, 3)})",
                f"|G| = 2^{inv['order_log2']}",
                f"nontrivial c^(K): {sum(not c.is_identity() for c in model.central_classes.values())}"
                f" of {len(model.central_classes)}",
                f"kernel backend: {kernels.BACKEND}",
            ]
            _out("\n".join(lines) + "\n")
        return EXIT_OK

    if cmd in ("nf", "order"):
        for text, w in _words(args, model):
            if cmd == "nf":
                form = nf(model, w)
                line = json.dumps({"word": text, **form.to_json(), "identity": form.is_identity()}) if args.format == "json" else _nf_text(model, form)
            else:
                order = element_order(model, w)
                line = json.dumps({"word": text, "order": order}) if args.format == "json" else str(order)
            _out(line + "\n")
        return EXIT_OK

    if cmd == "comm":
        x, y = parse_word(args.left, model.n), parse_word(args.right, model.n)
        form = nf(model, commutator_word(x, y))
        _out((json.dumps(form.to_json()) if args.format == "json" else _nf_text(model, form)) + "\n")
        return EXIT_OK

    if cmd == "central":
        K = _parse_K(args.K)
        form = central_class(model, K)
        s_p, s_q = central_class_pair(model, K)
        if args.format == "json":
            doc = {"K": sorted(K), "trivial": form.is_identity(), "witness": format_word((s_p, s_q)), **form.to_json()}
            _out(json.dumps(doc) + "\n")
        else:
            _out(f"c^({','.join(map(str, sorted(K)))}) = [{s_p}, {s_q}]: {_nf_text(model, form)}\n")
        return EXIT_OK

    if cmd == "verify":
        claims = None if args.all else args.claim
        reports = verify_all(model, args.samples, args.seed, args.max_len, args.workers, claims)
        if args.format == "json":
            text = reports_json(reports, model)
        elif args.format == "csv":
            text = reports_csv(reports)
        else:
            rows = [f"seed={args.seed} samples={args.samples} max_len={args.max_len} n={model.n}"]
            for r in reports:
                extra = f"  counterexample: {' | '.join(r.counterexample)}" if r.counterexample else ""
                rows.append(f"{r.claim:4s} {r.status.upper():7s} {r.mode:10s} checked={r.checked}{extra}")
            if args.all and model.n >= 6:
                wit = torsion_report(model)["witness"]
                rows.append(f"4-torsion witness: {wit['word']} (order {wit['order']})" if wit else "4-torsion witness: none")
            text = "\n".join(rows) + "\n"
        _out(text, args.output)
        return EXIT_FAIL if any_failed(reports) else EXIT_OK

    if cmd == "export":
        _out(export_tables(model, args.what, args.format), args.output)
        return EXIT_OK

    raise Gamma4Error(f"unknown command {cmd}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
