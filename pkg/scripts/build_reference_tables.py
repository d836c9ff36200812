#!/usr/bin/env python3
"""Regenerate the shipped unigram/bigram reference TSVs from the bundled
corpus. Rerunning must be byte-stable; a test asserts the shipped files
match what this produces."""

import argparse
from pathlib import Path

from sdescrack import ngrams


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out-dir",
        type=Path,
        default=Path(ngrams.__file__).resolve().parent / "data",
        help="directory for the generated TSVs (default: the package data dir)",
    )
    parser.add_argument(
        "--orders", default="1,2", help="comma-separated n-gram orders to build"
    )
    args = parser.parse_args()

    corpus = ngrams.load_default_corpus()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for order in [int(o) for o in args.orders.split(",")]:
        table = ngrams.ingest_corpus(corpus, order)
        path = args.out_dir / {1: "unigrams.tsv", 2: "bigrams.tsv", 3: "trigrams.tsv"}[order]
        ngrams.write_table(table, path)
        print(f"wrote {path} ({len(table.freq)} n-grams)")


if __name__ == "__main__":
    main()
