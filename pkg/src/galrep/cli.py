"""Command-line front end.

One JSON report document per invocation goes to standard output --
stable keys, values derived only from the inputs, so repeated runs are
byte-identical apart from the "timings" entry -- and diagnostics go to
standard error.  Exit codes: 0 success, 1 a verification-type check
failed, 2 bad usage or malformed input data.

Subcommands: verify (record certification pipeline), tau-mod (trace
residues at a prime from the factorization pattern), lehmer
(verify-candidate | search), build-genus1 (reconstruct the mod-11
record from the conductor-11 curve), tables (dims | genus |
modsym-check).  Big integers on the command line may be written as
plain decimals, "10^1000+4351", or integral scientific notation
("1e16").
"""

import argparse
import dataclasses
import json
import math
import multiprocessing
import os
import sys
import time

from . import __version__
from .arith import parse_intexpr
from .errors import CheckFailed, GalrepError, UsageError
from .frobenius import tau_mod_ell
from .genus1 import CURVE_X0_11, build_full_poly, build_projective_poly
from .lehmer import (
    default_detectors,
    search as lehmer_search,
    split_range,
    verify_candidate,
)
from .modcurve import dim_J_gammaH, genus_X1
from .modsym import eigensystem_check
from .records import get_record, load_record, load_records_dir, save_record
from .verify import VerifyOptions, verify_record

TABLE_ROWS = ((12, 31), (16, 29), (20, 31), (22, 31))


def _emit(command, inputs, results, t0):
    doc = {
        "command": command,
        "inputs": inputs,
        "results": results,
        "timings": {"seconds": round(time.time() - t0, 3)},
        "version": __version__,
    }
    print(json.dumps(doc, sort_keys=True, indent=2))


def _load_record_arg(args):
    if args.record:
        return get_record(args.record)
    return load_record(args.file)


def cmd_verify(args):
    record = _load_record_arg(args)
    options = VerifyOptions(charpol_pmax=args.pmax)
    report = verify_record(record, options)
    results = report.to_dict()
    return (0 if report.verdict else 1), {
        "record": args.record or args.file, "pmax": args.pmax}, results


def cmd_tau_mod(args):
    record = get_record(args.record)
    p = parse_intexpr(args.p)
    traces = tau_mod_ell(record, p)
    results = {
        "ell": record.ell,
        "weight": record.weight,
        "reps": list(traces.reps),
        "residues": sorted(traces.residues),
        "display": str(traces),
        "unique": traces.is_unique,
        "trace_zero": traces.reps == (0,),
    }
    return 0, {"record": args.record, "p": args.p}, results


def _parse_detector_ells(text):
    try:
        ells = tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError:
        raise UsageError(f"bad detector list {text!r}") from None
    if not ells:
        raise UsageError("empty detector list")
    return ells


def _assemble_detectors(args):
    # --records wins; else the GALREP_EXTERNAL_RECORDS env var, if it
    # points at an existing directory of .galrep files.
    records_dir = args.records or os.environ.get("GALREP_EXTERNAL_RECORDS")
    extra = {}
    if records_dir and (args.records or os.path.isdir(records_dir)):
        loaded = load_records_dir(records_dir)
        for rec in loaded.values():
            if rec.kind == "projective" and rec.weight == 12:
                extra[rec.ell] = rec
    return default_detectors(ells=_parse_detector_ells(args.detectors),
                             extra_records=extra)


def cmd_lehmer_verify(args):
    detectors = _assemble_detectors(args)
    p = parse_intexpr(args.p)
    cand = verify_candidate(p, detectors)
    inputs = {"p": args.p, "detectors": args.detectors,
              "records": args.records}
    return (0 if cand.accepted else 1), inputs, cand.as_dict()


def _search_part(payload):
    lo, hi, detectors, ckpt = payload
    return lehmer_search(lo, hi, detectors, checkpoint=ckpt)


def cmd_lehmer_search(args):
    detectors = _assemble_detectors(args)
    lo = parse_intexpr(args.range_from)
    hi = parse_intexpr(args.range_to)
    workers = args.workers or os.cpu_count() or 1
    if workers <= 1:
        found = lehmer_search(lo, hi, detectors, checkpoint=args.checkpoint)
    else:
        parts = split_range(lo, hi, workers)
        jobs = [
            (a, b, detectors,
             f"{args.checkpoint}.p{i}" if args.checkpoint else None)
            for i, (a, b) in enumerate(parts)
        ]
        with multiprocessing.Pool(workers) as pool:
            hits = [h for h in pool.map(_search_part, jobs) if h is not None]
        found = min(hits) if hits else None
    inputs = {"from": args.range_from, "to": args.range_to,
              "detectors": args.detectors, "records": args.records,
              "workers": workers}
    results = {"found": None if found is None else str(found)}
    return 0, inputs, results


def cmd_build_genus1(args):
    if args.bits < 128:
        raise UsageError("need --bits >= 128")
    builder = build_full_poly if args.kind == "full" else build_projective_poly
    record = builder(CURVE_X0_11, bits=args.bits)
    out = args.out or record.record_id + ".galrep"
    save_record(record, out)
    results = {
        "record": record.record_id,
        "degree": record.degree,
        "path": out,
        "coeffs": [str(c) for c in record.coeffs],
    }
    return 0, {"bits": args.bits, "kind": args.kind, "out": out}, results


def cmd_tables(args):
    if args.what == "dims":
        rows = []
        for k, ell in TABLE_ROWS:
            rows.append({
                "k": k, "ell": ell,
                "gcd": math.gcd(k - 2, ell - 1),
                "dim_j1": genus_X1(ell),
                "dim_jh": dim_J_gammaH(k, ell),
            })
        return 0, {"what": "dims"}, {"rows": rows}
    if args.what == "genus":
        if args.ell is None:
            raise UsageError("tables genus needs --ell")
        return 0, {"what": "genus", "ell": args.ell}, {
            "genus_x1": genus_X1(args.ell)}
    # modsym-check
    if args.k is None or args.ell is None:
        raise UsageError("tables modsym-check needs --k and --ell")
    report = eigensystem_check(args.k, args.ell, args.pmax)
    results = {key: (list(v) if isinstance(v, tuple) else v)
               for key, v in dataclasses.asdict(report).items()}
    inputs = {"what": "modsym-check", "k": args.k, "ell": args.ell,
              "pmax": args.pmax}
    return (0 if report.ok else 1), inputs, results


def build_parser():
    parser = argparse.ArgumentParser(
        prog="galrep",
        description="verify, apply and rebuild mod-ell trace records")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the certification pipeline")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--record", help="built-in record id, e.g. k12l31")
    g.add_argument("--file", help="path to a .galrep record file")
    p.add_argument("--pmax", type=int, default=100,
                   help="trace-consistency prime bound (default 100)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tau-mod", help="trace residues mod ell at a prime")
    p.add_argument("--record", required=True)
    p.add_argument("--p", required=True,
                   help='prime, e.g. "7" or "10^1000+4351"')
    p.set_defaults(func=cmd_tau_mod)

    p = sub.add_parser("lehmer", help="congruence sieve operations")
    lsub = p.add_subparsers(dest="action", required=True)

    q = lsub.add_parser("verify-candidate",
                        help="test one prime against sieve and detectors")
    q.add_argument("--p", required=True)
    q.add_argument("--detectors", default="11,31",
                   help="comma-separated ells (default 11,31)")
    q.add_argument("--records", help="directory of external .galrep records")
    q.set_defaults(func=cmd_lehmer_verify)

    q = lsub.add_parser("search", help="least passing prime in a range")
    q.add_argument("--from", dest="range_from", required=True)
    q.add_argument("--to", dest="range_to", required=True)
    q.add_argument("--detectors", default="11,31")
    q.add_argument("--records", help="directory of external .galrep records")
    q.add_argument("--checkpoint", help="plain-text resume file")
    q.add_argument("--workers", type=int, default=0,
                   help="worker processes (default: logical cores)")
    q.set_defaults(func=cmd_lehmer_search)

    p = sub.add_parser("build-genus1",
                       help="rebuild the mod-11 record from the curve")
    p.add_argument("--bits", type=int, default=300)
    p.add_argument("--kind", choices=("projective", "full"),
                   default="projective")
    p.add_argument("--out", help="output path (default <id>.galrep)")
    p.set_defaults(func=cmd_build_genus1)

    p = sub.add_parser("tables", help="dimension tables and genus values")
    p.add_argument("what", choices=("dims", "genus", "modsym-check"))
    p.add_argument("--ell", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--pmax", type=int, default=20)
    p.set_defaults(func=cmd_tables)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.time()
    try:
        code, inputs, results = args.func(args)
    except CheckFailed as exc:
        print(f"galrep: check failed: {exc}", file=sys.stderr)
        return 1
    except (GalrepError, ValueError, OSError) as exc:
        print(f"galrep: error: {exc}", file=sys.stderr)
        return 2
    _emit(args.command, inputs, results, t0)
    return code


if __name__ == "__main__":
    sys.exit(main())
