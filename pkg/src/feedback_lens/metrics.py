"""Evaluation metrics: confusion matrices and per-class P/R/F1 reports.

Zero denominators resolve to zero rather than raising, so classes that
are never predicted (or never occur) report 0.00 instead of poisoning
the table.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Sequence

from .classify import OTHER, ClassifyOptions, classify_corpus
from .corpus_io import Corpus
from .dialogue_acts import BinaryGroup, SwbdMapping, to_binary_group
from .lexicon import CueLexicon


@dataclass
class ConfusionMatrix:
    """Gold x predicted counts over a shared label universe."""

    labels: tuple
    counts: dict[tuple, int]
    total: int

    def cell(self, gold, pred) -> int:
        return self.counts.get((gold, pred), 0)

    def gold_count(self, label) -> int:
        return sum(self.counts.get((label, p), 0) for p in self.labels)

    def pred_count(self, label) -> int:
        return sum(self.counts.get((g, label), 0) for g in self.labels)

    def trace(self) -> int:
        return sum(self.counts.get((label, label), 0) for label in self.labels)


def _label_sort_key(label) -> tuple:
    value = getattr(label, "value", label)
    return (str(value),)


def confusion_matrix(gold: Sequence[Hashable], pred: Sequence[Hashable],
                     labels: Sequence[Hashable] | None = None) -> ConfusionMatrix:
    """Count gold/pred pairs.

    The label universe defaults to the union of observed labels; pass
    ``labels`` to pin extra classes (they report zeros).
    """
    if len(gold) != len(pred):
        raise ValueError(f"gold and pred lengths differ: {len(gold)} vs {len(pred)}")
    if not gold:
        raise ValueError("no items to score")
    if labels is None:
        universe = tuple(sorted(set(gold) | set(pred), key=_label_sort_key))
    else:
        universe = tuple(labels)
        missing = (set(gold) | set(pred)) - set(universe)
        if missing:
            raise ValueError(f"labels outside the given universe: {sorted(missing, key=_label_sort_key)}")
    counts = Counter(zip(gold, pred))
    return ConfusionMatrix(labels=universe, counts=dict(counts), total=len(gold))


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass
class MetricsReport:
    """Per-class scores plus accuracy and the two standard averages."""

    per_class: dict
    accuracy: float
    macro: ClassMetrics
    weighted: ClassMetrics
    total: int


def prf_metrics(cm: ConfusionMatrix) -> MetricsReport:
    """Precision, recall, F1, and support per class, with averages.

    The macro average weights classes equally; the weighted average
    weights by gold support.  Division by zero yields zero throughout.
    """
    per_class: dict = {}
    for label in cm.labels:
        tp = cm.cell(label, label)
        gold_n = cm.gold_count(label)
        pred_n = cm.pred_count(label)
        precision = tp / pred_n if pred_n else 0.0
        recall = tp / gold_n if gold_n else 0.0
        f1 = 2.0 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[label] = ClassMetrics(precision=precision, recall=recall, f1=f1, support=gold_n)

    n_classes = len(cm.labels)
    macro = ClassMetrics(
        precision=sum(m.precision for m in per_class.values()) / n_classes,
        recall=sum(m.recall for m in per_class.values()) / n_classes,
        f1=sum(m.f1 for m in per_class.values()) / n_classes,
        support=cm.total,
    )
    weighted = ClassMetrics(
        precision=sum(m.precision * m.support for m in per_class.values()) / cm.total,
        recall=sum(m.recall * m.support for m in per_class.values()) / cm.total,
        f1=sum(m.f1 * m.support for m in per_class.values()) / cm.total,
        support=cm.total,
    )
    accuracy = cm.trace() / cm.total
    return MetricsReport(per_class=per_class, accuracy=accuracy, macro=macro,
                         weighted=weighted, total=cm.total)


def _display(label) -> str:
    value = getattr(label, "value", label)
    return str(value).replace("_", " ").capitalize()


def format_metrics_table(report: MetricsReport, class_header: str = "Class") -> str:
    """Aligned plain-text table: one row per class, then the averages."""
    rows = [(_display(label), m) for label, m in report.per_class.items()]
    rows.append(("Macro avg", report.macro))
    rows.append(("Weighted avg", report.weighted))
    name_width = max(len(class_header), max(len(name) for name, _ in rows))
    header = f"{class_header:<{name_width}}  {'P':>5}  {'R':>5}  {'F1':>5}  {'# instances':>11}"
    lines = [header]
    for name, m in rows:
        lines.append(
            f"{name:<{name_width}}  {m.precision:>5.2f}  {m.recall:>5.2f}  {m.f1:>5.2f}  {m.support:>11,}"
        )
    lines.append(f"Accuracy: {report.accuracy:.2f}")
    return "\n".join(lines)


def metrics_to_dict(report: MetricsReport) -> dict:
    """JSON-ready form of a metrics report."""
    def class_key(label) -> str:
        return str(getattr(label, "value", label))

    return {
        "per_class": {
            class_key(label): {
                "precision": m.precision,
                "recall": m.recall,
                "f1": m.f1,
                "support": m.support,
            }
            for label, m in report.per_class.items()
        },
        "accuracy": report.accuracy,
        "macro": {"precision": report.macro.precision, "recall": report.macro.recall,
                  "f1": report.macro.f1, "support": report.macro.support},
        "weighted": {"precision": report.weighted.precision, "recall": report.weighted.recall,
                     "f1": report.weighted.f1, "support": report.weighted.support},
        "total": report.total,
    }


@dataclass
class BinaryCueEvaluation:
    """Cue-rule predictions scored against gold dialogue-act tags."""

    report: MetricsReport
    evaluated: int
    skipped_untagged: int


def evaluate_binary_cues(corpus: Corpus, lex: CueLexicon, mapping: SwbdMapping,
                         options: ClassifyOptions | None = None) -> BinaryCueEvaluation:
    """Score the rule classifier as a binary feedback detector.

    Gold comes from each utterance's dialogue-act tag collapsed to
    feedback/other; prediction is feedback exactly when the rule
    classifier assigns a non-OTHER label.  Utterances without a gold
    tag are skipped and counted.
    """
    options = options or ClassifyOptions()
    result = classify_corpus(corpus, lex, options)
    gold: list[BinaryGroup] = []
    pred: list[BinaryGroup] = []
    skipped = 0
    for utt, rec in zip(corpus.utterances, result.records):
        if utt.da_tag is None:
            skipped += 1
            continue
        gold.append(to_binary_group(utt.da_tag, mapping))
        pred.append(BinaryGroup.FEEDBACK if rec.label != OTHER else BinaryGroup.OTHER)
    if not gold:
        raise ValueError("no utterances carry gold dialogue-act tags")
    cm = confusion_matrix(gold, pred, labels=(BinaryGroup.FEEDBACK, BinaryGroup.OTHER))
    return BinaryCueEvaluation(report=prf_metrics(cm), evaluated=len(gold), skipped_untagged=skipped)
