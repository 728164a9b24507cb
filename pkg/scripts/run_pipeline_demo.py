#!/usr/bin/env python3
"""End-to-end demonstration of the toolkit on two synthetic corpora.

Builds a spontaneous-profile and a subtitle-profile corpus, classifies
both, produces proportion tables, a percentage comparison, lexical term
statistics, length histograms, top-item lists, and SVG charts.  All
outputs land in --out-dir.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

SCRIPT_DIR = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, SCRIPT_DIR)

from make_synthetic_corpus import build_corpus  # noqa: E402

from feedback_lens.cli import run  # noqa: E402
from feedback_lens.corpus_io import write_corpus  # noqa: E402


def must(argv: list[str]) -> None:
    code = run(argv)
    if code != 0:
        raise SystemExit(f"step failed ({code}): {' '.join(argv)}")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", required=True)
    parser.add_argument("--n", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=11)
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    out = args.out_dir
    os.makedirs(out, exist_ok=True)

    paths: dict[str, dict[str, str]] = {}
    for profile in ("spontaneous", "subtitle"):
        corpus, _ = build_corpus(profile, args.n, args.seed)
        cpath = os.path.join(out, f"{profile}.jsonl")
        mpath = os.path.join(out, f"{profile}.manifest.json")
        write_corpus(corpus, cpath, mpath)
        paths[profile] = {"corpus": cpath, "manifest": mpath}

    for profile, p in paths.items():
        labels = os.path.join(out, f"{profile}.labels.jsonl")
        must(["classify", "--corpus", p["corpus"], "--manifest", p["manifest"],
              "--out", labels])
        p["labels"] = labels
        for denom in ("all_utterances", "feedback_only"):
            must(["stats-proportions", "--labels", labels, "--denominator", denom,
                  "--out", os.path.join(out, f"{profile}.{denom}.json")])
        must(["stats-lengths", "--corpus", p["corpus"], "--manifest", p["manifest"],
              "--labels", labels, "--out", os.path.join(out, f"{profile}.lengths.json")])
        must(["stats-top", "--corpus", p["corpus"], "--manifest", p["manifest"],
              "--labels", labels, "-k", "10", "--out", os.path.join(out, f"{profile}.top.json")])

    must(["compare",
          "--a", os.path.join(out, "spontaneous.all_utterances.json"),
          "--b", os.path.join(out, "subtitle.all_utterances.json"),
          "--out", os.path.join(out, "compare.csv")])
    must(["stats-terms",
          "--corpus-a", paths["spontaneous"]["corpus"], "--manifest-a", paths["spontaneous"]["manifest"],
          "--corpus-b", paths["subtitle"]["corpus"], "--manifest-b", paths["subtitle"]["manifest"],
          "--top-k", "15", "--out", os.path.join(out, "terms.csv")])

    must(["chart", "--in", os.path.join(out, "spontaneous.all_utterances.json"),
          "--out", os.path.join(out, "spontaneous.proportions.svg"),
          "--title", "Spontaneous profile: class shares"])
    must(["chart", "--in", os.path.join(out, "spontaneous.lengths.json"),
          "--out", os.path.join(out, "spontaneous.lengths.svg"),
          "--title", "Spontaneous profile: utterance lengths"])
    must(["chart", "--in", os.path.join(out, "terms.csv"),
          "--out", os.path.join(out, "terms.svg"),
          "--title", "Term f-scores: spontaneous vs subtitle"])

    print(f"demo outputs written to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
