#!/usr/bin/env python3
"""Time the parse -> tokenize -> classify -> proportions pipeline.

Prints a single JSON object with wall-clock seconds (measured inside
this process, so interpreter startup is excluded), peak resident set
size in megabytes, and the number of utterances processed.  Run it as
a subprocess to get an RSS figure unpolluted by a parent process.
"""

from __future__ import annotations

import argparse
import json
import resource
import sys
import time

from feedback_lens.classify import class_proportions, classify_corpus
from feedback_lens.corpus_io import parse_corpus
from feedback_lens.lexicon import load_language


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", required=True)
    parser.add_argument("--manifest", required=True)
    args = parser.parse_args(argv)

    start = time.perf_counter()
    corpus = parse_corpus(args.corpus, args.manifest)
    lexicon = load_language(corpus.manifest.language)
    classified = classify_corpus(corpus, lexicon)
    table = class_proportions(classified.records)
    elapsed = time.perf_counter() - start

    # ru_maxrss is kilobytes on Linux.
    max_rss_kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    print(json.dumps({
        "seconds": round(elapsed, 4),
        "max_rss_mb": round(max_rss_kb / 1024.0, 2),
        "utterances": table.total,
    }, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
