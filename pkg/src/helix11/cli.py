"""Command-line interface.

Subcommands: construct, verify, fold, certify-alphabet, rates.
Exit codes: 0 ok, 1 constraint violation, 2 bad input, 3 budget
exceeded (with resume token).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import tempfile

import numpy as np

from . import __version__, codes, dna, fasta, folding, pipeline, plots, sigma, zmod11
from .errors import BadArgument, BudgetExceeded, GuardViolated


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def _write_json(path, payload):
    payload = dict(payload)
    payload["tool_version"] = __version__
    text = json.dumps(_clean(payload), indent=2, sort_keys=True) + "\n"
    _atomic_write(path, text)


def _atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_construct(args):
    try:
        spec = pipeline.CodebookSpec(
            family=args.family, apply_f=args.apply_f,
            augment_complement=args.augment, cap=args.budget,
            max_run=args.max_run, max_stem=args.max_stem,
            flip_threshold=args.flip_threshold, seed=args.seed)
        book = pipeline.build(spec)
    except (BadArgument, GuardViolated, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    if book.enumerable:
        metrics = ("hamming_z11", "induced", "reverse", "reverse_complement",
                   "dna_hamming")
    else:
        metrics = ("hamming_z11", "induced", "dna_hamming_after_f")
    pipeline.certify_distances(book, metrics)
    pipeline.verify_constraints(book)

    report = book.to_dict()
    ind = book.distances.get("induced")
    if ind is not None:
        report["flip_distance_interval"] = pipeline.flip_distance_interval(
            book.code.n, ind.lower)

    exit_code = 0
    if args.out:
        if book.enumerable:
            records = []
            for i, (cw, row) in enumerate(zip(book.codewords, book.sequences)):
                header = fasta.codebook_header(
                    i, zmod11.word_to_str(cw), spec.apply_f)
                records.append(fasta.FastaRecord(header, dna.codes_to_seq(row)))
            fasta.write_fasta(args.out, records)
            print(f"wrote {len(records)} records to {args.out}")
        else:
            print(f"codebook not enumerable (11^{book.size_exponent} words); "
                  "no FASTA written", file=sys.stderr)
            exit_code = 3
    if args.report:
        _write_json(args.report, report)
        print(f"wrote report to {args.report}")
    if not args.out and not args.report:
        print(json.dumps(_clean(report), indent=2, sort_keys=True))
    return exit_code


def cmd_verify(args):
    try:
        records = fasta.read_fasta(args.fasta)
    except (OSError, fasta.FastaParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    results = []
    violated = False
    for rec in records:
        rep = folding.fold(rec.seq)
        run = dna.max_homopolymer_run(rec.seq)
        entry = {
            "header": rec.header,
            "max_run": run,
            "max_stem": rep.max_stem_length,
            "min_free_energy": rep.min_free_energy,
            "stem_witness": rep.stem_witness,
            "gc_content": float(dna.gc_content(rec.seq)),
            "run_ok": run <= args.max_run,
            "stem_ok": rep.max_stem_length <= args.max_stem,
        }
        if not entry["run_ok"]:
            entry["run_witness_position"] = min(
                s for s, l, _ in dna.runs(rec.seq) if l == run)
        if not (entry["run_ok"] and entry["stem_ok"]):
            violated = True
        results.append(entry)
    payload = {"records": results, "max_run": args.max_run,
               "max_stem": args.max_stem,
               "status": "fail" if violated else "pass"}
    if args.report:
        _write_json(args.report, payload)
    for entry in results:
        status = "ok" if entry["run_ok"] and entry["stem_ok"] else "VIOLATION"
        print(f"{entry['header']}: run={entry['max_run']} "
              f"stem={entry['max_stem']} E={entry['min_free_energy']} {status}")
    return 1 if violated else 0


def cmd_fold(args):
    seqs = []
    if args.seq:
        try:
            seqs.append(("cmdline", dna.normalize(args.seq)))
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
    elif args.fasta:
        try:
            seqs.extend((r.header, r.seq) for r in fasta.read_fasta(args.fasta))
        except (OSError, fasta.FastaParseError) as e:
            print(f"error: {e}", file=sys.stderr)
            return 2
    else:
        print("error: need --seq or --fasta", file=sys.stderr)
        return 2
    for name, seq in seqs:
        rep = folding.fold(seq)
        print(f"{name}: min_free_energy={rep.min_free_energy} "
              f"max_stem={rep.max_stem_length} witness={rep.stem_witness}")
        if args.fig:
            plots.plot_fold(seq, rep.stem_witness, rep.min_free_energy,
                            args.fig)
            print(f"wrote figure to {args.fig}")
    return 0


def cmd_certify_alphabet(args):
    try:
        report = folding.certify_concatenations(
            list(sigma.S_BLOCKS), args.window, l_max=args.max_stem,
            budget=args.budget, start=args.start, workers=args.workers)
    except BadArgument as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BudgetExceeded as e:
        print(f"budget exceeded; resume with --start {e.resume_token}",
              file=sys.stderr)
        if e.partial is not None and args.report:
            _write_json(args.report, e.partial.to_dict())
        return 3
    print(f"window={report.window} max_stem={report.max_stem_found} "
          f"witness_word={report.witness_word} "
          f"enumerated={report.enumerated_count} "
          f"elapsed={report.elapsed:.1f}s")
    if args.report:
        _write_json(args.report, report.to_dict())
    return 0


RATE_COLUMNS = ["name", "n_dna", "size_exponent", "rate", "P1_stem",
                "P2_run", "P3_rc", "provenance"]


def cmd_rates(args):
    rows = pipeline.rate_table()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=RATE_COLUMNS)
            writer.writeheader()
            for r in rows:
                writer.writerow({k: r[k] for k in RATE_COLUMNS})
        print(f"wrote {args.out}")
    else:
        for r in rows:
            print(f"{r['name']}: rate={r['rate']:.6f} ({r['provenance']})")
    if args.fig:
        plots.plot_rates(rows, args.fig)
        print(f"wrote figure to {args.fig}")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="helix11",
                                description="Constrained DNA codes over Z11")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build and certify a DNA codebook")
    c.add_argument("--family", required=True,
                   help="family1:k=K | hamming:r=R | rs:delta=D[,alpha=A,a=B]")
    c.add_argument("--apply-f", action="store_true", dest="apply_f")
    c.add_argument("--augment", action="store_true")
    c.add_argument("--out", help="FASTA output path")
    c.add_argument("--report", help="JSON report path")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--budget", type=int, default=codes.DEFAULT_CAP)
    c.add_argument("--max-stem", type=int, default=2)
    c.add_argument("--max-run", type=int, default=4)
    c.add_argument("--flip-threshold", type=int, default=4)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check constraints on a FASTA file")
    v.add_argument("--fasta", required=True)
    v.add_argument("--max-run", type=int, default=4)
    v.add_argument("--max-stem", type=int, default=2)
    v.add_argument("--report")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fold", help="fold sequences and report energy/stems")
    f.add_argument("--seq")
    f.add_argument("--fasta")
    f.add_argument("--fig", help="write an arc-diagram figure")
    f.set_defaults(func=cmd_fold)

    ca = sub.add_parser("certify-alphabet",
                        help="exhaustive stem certification of block windows")
    ca.add_argument("--window", type=int, required=True)
    ca.add_argument("--budget", type=int)
    ca.add_argument("--start", type=int, default=0,
                    help="resume token from a prior run")
    ca.add_argument("--max-stem", type=int, default=2)
    ca.add_argument("--workers", type=int,
                    default=max(1, int(os.environ.get("HELIX_THREADS", "1"))))
    ca.add_argument("--report")
    ca.set_defaults(func=cmd_certify_alphabet)

    r = sub.add_parser("rates", help="emit the code-rate comparison table")
    r.add_argument("--out", help="CSV output path")
    r.add_argument("--fig", help="bar-chart output path")
    r.set_defaults(func=cmd_rates)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
