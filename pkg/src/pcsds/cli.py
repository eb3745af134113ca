"""Command-line front end.

Exit codes: 0 ok, 1 verification failed, 2 parse/usage error,
3 search budget refusal, 4 catalog contradiction.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .construct import BaseSequenceQuad, verify_base
from .errors import BudgetExceeded, CatalogContradiction, InfeasibleParameters, ParseError, VerificationError
from .formats import (
    detect_kind,
    format_sds_json,
    format_sds_text,
    format_sequence_file,
    parse_sds_json,
    parse_sds_text,
    parse_sequence_file,
)
from .sds import ParameterSet, check_linear_constraint, pcs_to_sds, sds_to_pcs, verify_sds
from .seqcore import is_acs, is_pcs, nacf, pacf

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET, EXIT_CONTRADICTION = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _load_any(path: str):
    """('sds', SdsFamily) or ('sequences', SequenceFile)."""
    text = _read(path)
    kind = detect_kind(text)
    if kind == "sds":
        fam = parse_sds_json(text) if text.lstrip().startswith("{") else parse_sds_text(text)
        return kind, fam
    return kind, parse_sequence_file(text)


# verify ------------------------------------------------------------------------

def _verify_one(path: str) -> dict:
    kind, obj = _load_any(path)
    if kind == "sds":
        rep = verify_sds(obj)
        ok = rep.ok
        detail = rep.describe()
        if ok and obj.modulus > 1 and check_linear_constraint(obj.parameters):
            ok = bool(is_pcs(sds_to_pcs(obj)))
            detail += "; PCS equivalent" if ok else "; PCS conversion failed"
        return {"file": path, "kind": "sds", "parameters": str(obj.parameters), "ok": ok, "report": detail}
    role = obj.role
    if role == "base":
        rep = verify_base(BaseSequenceQuad(*obj.sequences))
    elif role in ("acs", "golay"):
        rep = is_acs(obj.family())
    else:
        rep = is_pcs(obj.family())
    return {"file": path, "kind": role, "ok": rep.ok, "report": rep.describe()}


def cmd_verify(args) -> int:
    results = [_verify_one(p) for p in args.files]
    if args.format == "structured":
        _emit(_dump(results), args.output)
    else:
        _emit("".join(
            f"{r['file']}: {'OK' if r['ok'] else 'FAIL'} [{r['kind']}] {r['report']}\n" for r in results
        ), args.output)
    return EXIT_OK if all(r["ok"] for r in results) else EXIT_FAIL


# corr --------------------------------------------------------------------------

def _vec(v) -> str:
    return "[" + ",".join(map(str, v)) + "]"


def cmd_corr(args) -> int:
    kind, obj = _load_any(args.file)
    if kind != "sequences":
        raise UsageError("corr expects a sequence file")
    seqs = obj.sequences
    rows = []
    for s in seqs:
        rows.append({"sequence": str(s), "periodic": list(pacf(s)), "aperiodic": list(nacf(s))})
    out = {"sequences": rows}
    if len(seqs) > 1 and len({len(s) for s in seqs}) == 1:
        fam = obj.family() if obj.role != "base" else None
        if fam is not None:
            out["periodic_sum"] = list(is_pcs(fam).sums)
            out["aperiodic_sum"] = list(is_acs(fam).sums)
    if args.format == "structured":
        _emit(_dump(out), args.output)
        return EXIT_OK
    lines = []
    for r in rows:
        lines.append(f"{r['sequence']}")
        lines.append(f"  periodic {_vec(r['periodic'])}")
        lines.append(f"  aperiodic {_vec(r['aperiodic'])}")
    if "periodic_sum" in out:
        lines.append(f"sum periodic {_vec(out['periodic_sum'])}")
        lines.append(f"sum aperiodic {_vec(out['aperiodic_sum'])}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


# convert -----------------------------------------------------------------------

def cmd_convert(args) -> int:
    kind, obj = _load_any(args.file)
    if kind == "sds":
        fam = sds_to_pcs(obj)
        comments = [f"# converted from SDS {obj.parameters}"]
        _emit(format_sequence_file(fam, role="pcs", comments=comments), args.output)
        return EXIT_OK
    if obj.role == "base":
        raise UsageError("base-sequence quads have no SDS form")
    sds = pcs_to_sds(obj.family())
    _emit(format_sds_json(sds) if args.format == "structured" else format_sds_text(sds), args.output)
    return EXIT_OK


# search ------------------------------------------------------------------------

def _search_config(args, request_cfg: dict):
    from .search import SearchConfig

    cfg = dict(request_cfg)
    if args.seed is not None:
        cfg["seed"] = args.seed
        cfg["mode"] = "stochastic"
    if args.mode:
        if args.seed is not None and args.mode != "stochastic":
            raise UsageError("--seed implies --mode stochastic")
        cfg["mode"] = args.mode
    if args.budget is not None:
        cfg["max_evaluations"] = args.budget
    if args.prune is not None:
        cfg["prune"] = args.prune
    if args.progress_interval is not None:
        cfg["progress_interval"] = args.progress_interval
    try:
        return SearchConfig.from_dict(cfg)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad search config: {exc}") from None


def cmd_search(args) -> int:
    from .search import exhaustive_pcs, exhaustive_sds, stochastic_sds

    request: dict = {}
    if args.request:
        try:
            request = json.loads(_read(args.request))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{args.request}: bad JSON: {exc}") from None
    cfg = _search_config(args, request.get("config", {}))
    params = args.params or request.get("parameters")
    pcs = args.pcs or request.get("pcs")
    if bool(params) == bool(pcs):
        raise UsageError("give exactly one of --params or --pcs")

    def progress(evals, best):
        print(f"evaluations={evals} best_fitness={best}", file=sys.stderr, flush=True)

    if params:
        try:
            ps = ParameterSet.parse(params)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if cfg.mode == "stochastic":
            outcome = stochastic_sds(ps, cfg, progress=progress if cfg.progress_interval else None)
        else:
            outcome = exhaustive_sds(ps, cfg)
    else:
        p, N = (int(x) for x in pcs)
        if cfg.mode != "exhaustive":
            raise UsageError("--pcs runs the exhaustive search; use --params for stochastic mode")
        outcome = exhaustive_pcs(p, N, cfg)

    if args.format == "structured":
        _emit(_dump(outcome.to_dict()), args.output)
    else:
        lines = [
            f"target {outcome.target}: {outcome.status}",
            f"evaluations={outcome.stats.evaluations} prunes={outcome.stats.prunes} "
            f"generations={outcome.stats.generations}",
        ]
        for o in outcome.per_parameter:
            lines.append(f"  {o.parameters}: {o.status} ({o.count} witness{'es' if o.count != 1 else ''})")
        text = "\n".join(lines) + "\n"
        for w in outcome.witnesses:
            text += "\n" + format_sds_text(w)
        _emit(text, args.output)
    return EXIT_OK


# table / catalog ---------------------------------------------------------------

def cmd_table(args) -> int:
    from .catalog import build_table

    t = build_table(args.pmax, args.nmax)
    if args.format == "structured":
        _emit(t.to_json(), args.output)
    else:
        _emit(t.render_text(even_only=args.even_only), args.output)
    return EXIT_OK


def cmd_catalog(args) -> int:
    from .catalog import load_catalog

    entries = load_catalog(args.pmax, args.nmax)
    if args.p is not None:
        entries = [e for e in entries if e.p == args.p]
    if args.n is not None:
        entries = [e for e in entries if e.N == args.n]
    records = []
    for e in entries:
        rec = {
            "p": e.p, "N": e.N, "status": e.status, "provenance": e.provenance,
            "decomposition": list(e.decomposition) if e.decomposition else None,
        }
        if args.show and e.witness is not None:
            seqs = e.sequences()
            rec["witness"] = [str(s) for s in seqs]
        records.append(rec)
    if args.format == "structured":
        _emit(_dump(records), args.output)
        return EXIT_OK
    lines = []
    for r in records:
        dec = f" split={r['decomposition'][0]}+{r['decomposition'][1]}" if r["decomposition"] else ""
        lines.append(f"p={r['p']} N={r['N']} {r['status']} [{r['provenance']}]{dec}")
        for s in r.get("witness", []):
            lines.append(f"    {s}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


# parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pcsds", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--output", "-o")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="verify PCS/ACS/Golay/base/SDS files")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corr", parents=[common], help="print periodic and aperiodic correlations")
    p.add_argument("file")
    p.set_defaults(func=cmd_corr)

    p = sub.add_parser("convert", parents=[common], help="convert SDS <-> PCS")
    p.add_argument("file")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("search", parents=[common], help="exhaustive or stochastic witness search")
    p.add_argument("--params", help="parameter set '(N;k1,...,kp;lambda)'")
    p.add_argument("--pcs", nargs=2, metavar=("P", "N"), help="exhaustive PCS_P^N over all parameter sets")
    p.add_argument("--request", help="JSON search request with parameters/pcs and config")
    p.add_argument("--mode", choices=("exhaustive", "stochastic"))
    p.add_argument("--budget", type=int, help="maximum evaluations")
    p.add_argument("--seed", type=int, help="random seed (implies stochastic mode)")
    p.add_argument("--prune", dest="prune", action="store_true", default=None)
    p.add_argument("--no-prune", dest="prune", action="store_false")
    p.add_argument("--progress-interval", type=int, help="print progress every this many evaluations")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("table", parents=[common], help="existence table")
    p.add_argument("--pmax", type=int, default=12)
    p.add_argument("--nmax", type=int, default=50)
    p.add_argument("--even-only", action="store_true", help="only even N columns")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("catalog", parents=[common], help="list catalog entries with provenance")
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--show", action="store_true", help="include witness sequences")
    p.add_argument("--pmax", type=int, default=12)
    p.add_argument("--nmax", type=int, default=50)
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if getattr(args, "pmax", 1) < 1 or getattr(args, "nmax", 1) < 1:
            raise UsageError("--pmax and --nmax must be positive")
        return args.func(args)
    except (ParseError, UsageError, InfeasibleParameters) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CatalogContradiction as exc:
        print(f"contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
