#!/usr/bin/env python3
"""Generate a synthetic English dialogue corpus with a known feedback mix.

Each profile fixes the share of feedback utterances and how that share
splits across feedback classes.  Feedback utterances are drawn from
unambiguous full-match cue phrases; filler utterances are built from
templates guaranteed not to start with a cue token, so the constructed
label mix is exact and the corpus can serve as ground truth for
round-trip checks.

A construction.json sidecar records the exact built counts.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from feedback_lens.corpus_io import Corpus, CorpusManifest, Utterance, write_corpus

# Cue utterances below are verbatim full-sequence entries of the
# bundled English lexicon, each at most three tokens long.
CUE_POOL = {
    "positive": ["yeah", "okay", "right", "that's right", "oh yes", "me too",
                 "of course", "sure", "exactly", "you bet"],
    "neutral": ["uh-huh", "hm", "mm", "well", "um-hum", "hmm", "wow", "huh"],
    "negative": ["no", "no way", "nope", "oh no", "not really", "gosh"],
    "clarification": ["what", "really", "oh really", "why not", "you sure"],
}

# Filler sentences are at least four tokens and never start with a
# single-token cue, so they classify as OTHER.
FILLER_STARTERS = ["the", "my", "our", "her", "his", "their", "this"]
FILLER_SUBJECTS = ["meeting", "garden", "brother", "car", "house", "teacher", "weather", "train"]
FILLER_VERBS = ["started", "looked", "seemed", "arrived", "changed", "stopped", "continued"]
FILLER_TAILS = [
    "after lunch yesterday",
    "before the first break",
    "near the old station",
    "during the long winter",
    "in the early morning",
    "without any warning at all",
]

PROFILES = {
    "spontaneous": {
        "feedback_share": 0.45,
        "class_mix": (("positive", 0.50), ("neutral", 0.40), ("negative", 0.06), ("clarification", 0.04)),
    },
    "subtitle": {
        "feedback_share": 0.15,
        "class_mix": (("positive", 0.30), ("neutral", 0.10), ("negative", 0.35), ("clarification", 0.25)),
    },
}


def split_counts(total: int, weights: list[float]) -> list[int]:
    """Largest-remainder apportionment: integer counts summing to total."""
    raw = [total * w for w in weights]
    counts = [int(x) for x in raw]
    remainders = sorted(range(len(raw)), key=lambda i: (raw[i] - counts[i]), reverse=True)
    deficit = total - sum(counts)
    for i in remainders[:deficit]:
        counts[i] += 1
    return counts


def build_corpus(profile: str, n: int, seed: int, name: str | None = None,
                 feedback_share: float | None = None) -> tuple[Corpus, dict]:
    prof = PROFILES[profile]
    share = prof["feedback_share"] if feedback_share is None else feedback_share
    rng = random.Random(seed)

    n_feedback = round(n * share)
    class_names = [c for c, _ in prof["class_mix"]]
    class_counts = split_counts(n_feedback, [w for _, w in prof["class_mix"]])

    texts: list[tuple[str, str]] = []
    for cls, count in zip(class_names, class_counts):
        pool = CUE_POOL[cls]
        for _ in range(count):
            text = rng.choice(pool)
            if rng.random() < 0.3:
                text = text[0].upper() + text[1:]
            if rng.random() < 0.4:
                text += rng.choice([".", "!", "?"])
            texts.append((text, cls))
    for _ in range(n - n_feedback):
        text = " ".join([
            rng.choice(FILLER_STARTERS), rng.choice(FILLER_SUBJECTS),
            rng.choice(FILLER_VERBS), rng.choice(FILLER_TAILS),
        ])
        texts.append((text, "other"))
    rng.shuffle(texts)

    utterances = []
    per_dialogue = 20
    for i, (text, _) in enumerate(texts):
        utterances.append(Utterance(
            id=f"u{i + 1:06d}",
            dialogue_id=f"d{i // per_dialogue + 1:05d}",
            index=i % per_dialogue + 1,
            text=text,
            speaker="A" if i % 2 == 0 else "B",
        ))
    manifest = CorpusManifest(
        name=name or f"synthetic-{profile}-profile",
        language="en",
        source="synthetic",
    )
    construction = {
        "profile": profile,
        "n": n,
        "seed": seed,
        "feedback_share": n_feedback / n if n else 0.0,
        "feedback_count": n_feedback,
        "class_counts": dict(zip(class_names, class_counts)),
    }
    return Corpus(manifest=manifest, utterances=utterances), construction


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", required=True)
    parser.add_argument("--profile", choices=sorted(PROFILES), default="spontaneous")
    parser.add_argument("--n", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--feedback-share", type=float, default=None,
                        help="override the profile's feedback share")
    args = parser.parse_args(argv)

    corpus, construction = build_corpus(args.profile, args.n, args.seed,
                                        feedback_share=args.feedback_share)
    os.makedirs(args.out_dir, exist_ok=True)
    write_corpus(corpus,
                 os.path.join(args.out_dir, "corpus.jsonl"),
                 os.path.join(args.out_dir, "manifest.json"))
    with open(os.path.join(args.out_dir, "construction.json"), "w", encoding="utf-8", newline="\n") as fh:
        json.dump(construction, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(json.dumps(construction, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
