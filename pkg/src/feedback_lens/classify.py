"""Rule-based feedback classification of utterances.

An utterance is labeled by cue lookup at two locations.  Very short
utterances (up to three tokens) are matched against the lexicon as a
whole sequence; failing that, two- and three-token utterances fall
back to checking whether their first token alone is a cue.  Longer
utterances only get the single-token initial check, and only when
include_initial is enabled.  Everything else is OTHER.

The resulting label and the location that produced it (full_short,
initial, or none) are recorded per utterance.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .corpus_io import Corpus, FormatError
from .lexicon import (
    DEFAULT_PRECEDENCE,
    CueLexicon,
    FeedbackClass,
    lookup_cue,
    lookup_extra,
    lookup_extra_initial,
    lookup_initial,
)
from .normalize import TokenSeq, is_very_short, tokenize


class MatchSite(Enum):
    FULL_SHORT = "full_short"
    INITIAL = "initial"
    NONE = "none"


OTHER = "other"

# Core label strings in report order.
CORE_LABELS = ("positive", "neutral", "negative", "clarification", OTHER)
FEEDBACK_LABELS = ("positive", "neutral", "negative", "clarification")


@dataclass(frozen=True, slots=True)
class FeedbackLabel:
    """A feedback label plus the match location that produced it.

    label is a core class value, OTHER, or an extra category name.
    label == OTHER exactly when site == MatchSite.NONE.
    """

    label: str
    site: MatchSite


@dataclass(frozen=True)
class ClassifyOptions:
    """Knobs for the two-location matching rule.

    very_short_limit: token count up to which full-sequence matching
        applies.
    include_initial: match the first token of longer utterances.
    short_initial_fallback: for 2-3 token utterances with no full
        match, try the first token alone.
    extra_classes: extra lexicon categories (e.g. politeness) to match
        after the core classes.
    """

    very_short_limit: int = 3
    include_initial: bool = True
    short_initial_fallback: bool = True
    extra_classes: tuple[str, ...] = ()
    precedence: tuple[FeedbackClass, ...] = DEFAULT_PRECEDENCE


DEFAULT_OPTIONS = ClassifyOptions()

_NONE_LABEL = FeedbackLabel(label=OTHER, site=MatchSite.NONE)


def classify_utterance(seq: TokenSeq, lex: CueLexicon,
                       options: ClassifyOptions = DEFAULT_OPTIONS) -> FeedbackLabel:
    """Label one tokenized utterance by cue lookup."""
    tokens = seq.tokens
    if not tokens:
        return _NONE_LABEL
    use_extras = bool(options.extra_classes)

    if is_very_short(seq, options.very_short_limit):
        cls = lookup_cue(lex, seq, options.precedence)
        if cls is not None:
            return FeedbackLabel(label=cls.value, site=MatchSite.FULL_SHORT)
        if use_extras:
            extra = lookup_extra(lex, seq)
            if extra is not None and extra in options.extra_classes:
                return FeedbackLabel(label=extra, site=MatchSite.FULL_SHORT)
        if len(tokens) >= 2 and options.short_initial_fallback:
            return _initial_label(tokens[0], lex, options, use_extras)
        return _NONE_LABEL

    if options.include_initial:
        return _initial_label(tokens[0], lex, options, use_extras)
    return _NONE_LABEL


def _initial_label(token: str, lex: CueLexicon, options: ClassifyOptions, use_extras: bool) -> FeedbackLabel:
    cls = lookup_initial(lex, token, options.precedence)
    if cls is not None:
        return FeedbackLabel(label=cls.value, site=MatchSite.INITIAL)
    if use_extras:
        extra = lookup_extra_initial(lex, token)
        if extra is not None and extra in options.extra_classes:
            return FeedbackLabel(label=extra, site=MatchSite.INITIAL)
    return _NONE_LABEL


@dataclass
class LabelRecord:
    """Per-utterance classification output."""

    id: str
    label: str
    site: MatchSite


@dataclass
class ClassifiedCorpus:
    """Classification of a whole corpus, in corpus order."""

    records: list[LabelRecord]
    counts: Counter = field(default_factory=Counter)


def classify_corpus(corpus: Corpus, lex: CueLexicon,
                    options: ClassifyOptions = DEFAULT_OPTIONS) -> ClassifiedCorpus:
    """Classify every utterance of a corpus.

    The corpus and lexicon must agree on language; mixing them would
    silently produce near-all-OTHER output.
    """
    if corpus.manifest.language != lex.language:
        raise ValueError(
            f"corpus language {corpus.manifest.language!r} does not match "
            f"lexicon language {lex.language!r}"
        )
    unknown_extras = [name for name in options.extra_classes if name not in lex.extras]
    if unknown_extras:
        raise ValueError(
            f"extra class(es) not in lexicon: {', '.join(sorted(unknown_extras))}"
        )
    language = lex.language
    records: list[LabelRecord] = []
    counts: Counter = Counter()
    for utt in corpus.utterances:
        fl = classify_utterance(tokenize(utt.text, language), lex, options)
        records.append(LabelRecord(id=utt.id, label=fl.label, site=fl.site))
        counts[fl.label] += 1
    return ClassifiedCorpus(records=records, counts=counts)


def write_labels(result: ClassifiedCorpus, path: str) -> None:
    """Write per-utterance labels as JSONL: {"id", "label", "site"}."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in result.records:
            fh.write(json.dumps(
                {"id": rec.id, "label": rec.label, "site": rec.site.value},
                ensure_ascii=False, sort_keys=True, separators=(",", ":"),
            ))
            fh.write("\n")


_SITE_VALUES = {s.value: s for s in MatchSite}


def read_labels(path: str) -> list[LabelRecord]:
    """Read a label JSONL file written by write_labels."""
    records: list[LabelRecord] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            if not raw.strip():
                raise FormatError("blank line in label file", path=path, line=line_no)
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON: {exc.msg}", path=path, line=line_no) from exc
            if not isinstance(obj, dict) or not {"id", "label", "site"} <= set(obj):
                raise FormatError("expected fields id, label, site", path=path, line=line_no)
            site = _SITE_VALUES.get(obj["site"])
            if site is None:
                raise FormatError(f"unknown site {obj['site']!r}", path=path, line=line_no)
            label = obj["label"]
            if not isinstance(label, str) or not label:
                raise FormatError("label must be a non-empty string", path=path, line=line_no)
            if (label == OTHER) != (site is MatchSite.NONE):
                raise FormatError(
                    f"label {label!r} inconsistent with site {site.value!r}", path=path, line=line_no
                )
            records.append(LabelRecord(id=str(obj["id"]), label=label, site=site))
    return records


# --- proportions ----------------------------------------------------------


@dataclass
class ProportionTable:
    """Label counts and their shares under a chosen denominator."""

    denominator: str
    counts: dict[str, int]
    proportions: dict[str, float]
    total: int


def _label_strings(labels: Iterable) -> list[str]:
    out: list[str] = []
    for item in labels:
        if isinstance(item, str):
            out.append(item)
        else:
            out.append(item.label)
    return out


def class_proportions(labels: Iterable, denominator: str = "all_utterances") -> ProportionTable:
    """Share of each label among all utterances or among feedback only.

    With denominator="all_utterances" OTHER is included; with
    "feedback_only" OTHER is excluded and shares renormalize over the
    rest.  All core labels appear in the output even at count zero;
    extra labels appear when observed.
    """
    if denominator not in ("all_utterances", "feedback_only"):
        raise ValueError(f"unknown denominator {denominator!r}")
    strings = _label_strings(labels)
    if not strings:
        raise ValueError("no labels given")
    raw = Counter(strings)

    if denominator == "all_utterances":
        keys = [k for k in CORE_LABELS] + sorted(set(raw) - set(CORE_LABELS))
        counts = {k: raw.get(k, 0) for k in keys}
    else:
        keys = [k for k in FEEDBACK_LABELS] + sorted(set(raw) - set(CORE_LABELS))
        counts = {k: raw.get(k, 0) for k in keys}
    total = sum(counts.values())
    if total == 0:
        raise ValueError("no feedback labels to renormalize over")
    proportions = {k: v / total for k, v in counts.items()}
    return ProportionTable(denominator=denominator, counts=counts, proportions=proportions, total=total)
