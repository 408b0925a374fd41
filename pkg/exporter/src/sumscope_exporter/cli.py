"""Exporter command line.

Examples:
    sumscope-export --corpus corpus.jsonl --out emb.jsonl --mode sentences --model hash-64
    sumscope-export --corpus candidates.jsonl --out tok.jsonl --mode tokens --text candidates
    sumscope-export --corpus corpus.jsonl --out ref_tok.jsonl --mode tokens --text references
    sumscope-export --corpus candidates.jsonl --out nsp.jsonl --mode nsp

Exit codes: 0 success, 2 missing input, 1 any export failure (bad model,
unreadable corpus).
"""

from __future__ import annotations

import argparse
import os
import sys

from .export import MODES, ExportJob, run_job


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sumscope-export", description=__doc__)
    parser.add_argument("--corpus", required=True, help="corpus or candidate JSONL")
    parser.add_argument("--out", required=True)
    parser.add_argument("--mode", choices=MODES, required=True)
    parser.add_argument("--model", default="hash-64")
    parser.add_argument("--batch-size", type=int, default=16)
    parser.add_argument("--device", default="cpu")
    parser.add_argument(
        "--text",
        choices=("documents", "references", "candidates"),
        default="documents",
        help="which text to encode (nsp always reads candidates)",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not os.path.exists(args.corpus):
        print(f"error=missing-input path={args.corpus}", file=sys.stderr)
        return 2
    job = ExportJob(
        corpus_path=args.corpus,
        output_path=args.out,
        mode=args.mode,
        model=args.model,
        batch_size=args.batch_size,
        device=args.device,
        text=args.text,
    )
    try:
        run_job(job)
    except Exception as exc:
        print(f"error=export detail={exc}", file=sys.stderr)
        return 1
    print(f"mode={args.mode} model={args.model} out={args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
