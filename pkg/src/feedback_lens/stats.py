"""Lexical statistics over dialogue corpora.

The central quantity is a scaled f-score that combines, for each term,
its precision (how specific the term is to one corpus of a pair) and
its frequency (how common it is within that corpus) via a harmonic
mean.  Terms that are both frequent and characteristic surface at the
top; terms frequent everywhere or merely rare sink.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .classify import OTHER
from .corpus_io import Corpus
from .normalize import is_very_short, tokenize

Term = tuple[str, ...]

NGRAM_SCOPES = ("all", "very_short_only")


def extract_ngrams(corpus: Corpus, n_max: int = 3, scope: str = "all") -> Counter:
    """Count token n-grams of order 1..n_max.

    With scope="very_short_only" only utterances of one to three
    tokens contribute, which focuses the counts on the region where
    feedback expressions live.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    if scope not in NGRAM_SCOPES:
        raise ValueError(f"unknown scope {scope!r}; expected one of {NGRAM_SCOPES}")
    language = corpus.manifest.language
    counts: Counter = Counter()
    for utt in corpus.utterances:
        seq = tokenize(utt.text, language)
        if scope == "very_short_only" and not is_very_short(seq):
            continue
        tokens = seq.tokens
        for n in range(1, n_max + 1):
            for i in range(len(tokens) - n + 1):
                counts[tokens[i:i + n]] += 1
    return counts


def scaled_fscore(precision: float, frequency: float) -> float:
    """Harmonic mean of a precision and a frequency, both in [0, 1].

    Zero when both inputs are zero rather than undefined, so terms
    absent from a side score zero instead of raising.
    """
    if not (0.0 <= precision <= 1.0):
        raise ValueError(f"precision out of range: {precision!r}")
    if not (0.0 <= frequency <= 1.0):
        raise ValueError(f"frequency out of range: {frequency!r}")
    if precision + frequency == 0.0:
        return 0.0
    return 2.0 * precision * frequency / (precision + frequency)


@dataclass(frozen=True)
class TermStats:
    """Per-term counts and scores for a two-corpus comparison."""

    term: Term
    count_a: int
    count_b: int
    precision_a: float
    precision_b: float
    frequency_a: float
    frequency_b: float
    fscore_a: float
    fscore_b: float


@dataclass
class TermComparison:
    """Full term table plus the top-k ranking for each side."""

    table: list[TermStats]
    top_a: list[TermStats]
    top_b: list[TermStats]
    total_tokens_a: int
    total_tokens_b: int


def _in_scope_token_total(corpus: Corpus, scope: str) -> int:
    language = corpus.manifest.language
    total = 0
    for utt in corpus.utterances:
        seq = tokenize(utt.text, language)
        if scope == "very_short_only" and not is_very_short(seq):
            continue
        total += len(seq.tokens)
    return total


def compare_corpora_terms(a: Corpus, b: Corpus, n_max: int = 3, top_k: int = 20,
                          scope: str = "very_short_only") -> TermComparison:
    """Score every n-gram of two same-language corpora against each other.

    Term precision for side a is count_a / (count_a + count_b); term
    frequency is count_a over the total number of in-scope tokens of
    corpus a.  The scaled f-score combines the two.  The default scope
    restricts counting to very short utterances, where feedback lives.
    """
    if a.manifest.language != b.manifest.language:
        raise ValueError(
            f"corpora must share a language, got {a.manifest.language!r} and {b.manifest.language!r}"
        )
    if not a.utterances or not b.utterances:
        raise ValueError("both corpora must be non-empty")
    if top_k < 1:
        raise ValueError(f"top_k must be at least 1, got {top_k}")
    counts_a = extract_ngrams(a, n_max=n_max, scope=scope)
    counts_b = extract_ngrams(b, n_max=n_max, scope=scope)
    total_a = _in_scope_token_total(a, scope)
    total_b = _in_scope_token_total(b, scope)
    if total_a == 0 or total_b == 0:
        raise ValueError("no in-scope tokens to compare")

    table: list[TermStats] = []
    for term in sorted(set(counts_a) | set(counts_b)):
        ca = counts_a.get(term, 0)
        cb = counts_b.get(term, 0)
        precision_a = ca / (ca + cb)
        precision_b = cb / (ca + cb)
        frequency_a = ca / total_a
        frequency_b = cb / total_b
        table.append(TermStats(
            term=term,
            count_a=ca,
            count_b=cb,
            precision_a=precision_a,
            precision_b=precision_b,
            frequency_a=frequency_a,
            frequency_b=frequency_b,
            fscore_a=scaled_fscore(precision_a, frequency_a),
            fscore_b=scaled_fscore(precision_b, frequency_b),
        ))
    top_a = sorted(table, key=lambda t: (-t.fscore_a, t.term))[:top_k]
    top_b = sorted(table, key=lambda t: (-t.fscore_b, t.term))[:top_k]
    return TermComparison(table=table, top_a=top_a, top_b=top_b,
                          total_tokens_a=total_a, total_tokens_b=total_b)


@dataclass
class LengthHistogram:
    """Utterance length counts split into feedback and other series.

    bins maps token length to (feedback, other) counts; lengths at or
    above max_length accumulate in the max_length bin.  Utterances
    with no tokens are tallied separately in empty_count.
    """

    bins: dict[int, tuple[int, int]]
    max_length: int
    empty_count: int
    total: int


def length_distribution(corpus: Corpus, labels: list, max_length: int = 20) -> LengthHistogram:
    """Token-length histogram of feedback vs non-feedback utterances.

    labels must align one-to-one with corpus.utterances; any label
    other than OTHER counts as feedback.
    """
    if len(labels) != len(corpus.utterances):
        raise ValueError(
            f"got {len(labels)} labels for {len(corpus.utterances)} utterances"
        )
    if max_length < 1:
        raise ValueError(f"max_length must be at least 1, got {max_length}")
    language = corpus.manifest.language
    bins: dict[int, list[int]] = {}
    empty = 0
    for utt, item in zip(corpus.utterances, labels):
        label = item if isinstance(item, str) else item.label
        n = len(tokenize(utt.text, language).tokens)
        if n == 0:
            empty += 1
            continue
        n = min(n, max_length)
        slot = bins.setdefault(n, [0, 0])
        slot[0 if label != OTHER else 1] += 1
    return LengthHistogram(
        bins={k: (v[0], v[1]) for k, v in sorted(bins.items())},
        max_length=max_length,
        empty_count=empty,
        total=len(corpus.utterances),
    )


@dataclass(frozen=True)
class TopItem:
    """One ranked feedback form: its tokens, count, and label."""

    term: Term
    count: int
    label: str


def top_feedback_items(corpus: Corpus, labels: list, k: int = 10) -> list[TopItem]:
    """Most frequent normalized forms among non-OTHER utterances.

    Forms are whole tokenized utterances; ties in count break
    lexicographically on the token tuple.
    """
    if len(labels) != len(corpus.utterances):
        raise ValueError(
            f"got {len(labels)} labels for {len(corpus.utterances)} utterances"
        )
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    language = corpus.manifest.language
    counts: Counter = Counter()
    first_label: dict[Term, str] = {}
    for utt, item in zip(corpus.utterances, labels):
        label = item if isinstance(item, str) else item.label
        if label == OTHER:
            continue
        term = tokenize(utt.text, language).tokens
        if not term:
            continue
        counts[term] += 1
        first_label.setdefault(term, label)
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:k]
    return [TopItem(term=term, count=count, label=first_label[term]) for term, count in ranked]
