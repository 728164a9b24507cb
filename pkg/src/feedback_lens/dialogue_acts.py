"""Coarse dialogue-act groups and threshold-based label decisions.

Fine-grained SWBD-style dialogue-act tags collapse into five coarse
groups: forward_looking, other, assessment, backchannel, and
yes_no_answer.  The two feedback-bearing groups (backchannel and
assessment) also fold into a binary feedback/other distinction.

For probabilistic taggers emitting one probability per group, a
per-group threshold rule picks the output label: among groups whose
probability clears their threshold, take the most probable; when none
clears, take the most probable group excluding forward_looking, which
counters majority-class bias.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from importlib import resources

from .corpus_io import FormatError


class DAGroup(Enum):
    FORWARD_LOOKING = "forward_looking"
    OTHER = "other"
    ASSESSMENT = "assessment"
    BACKCHANNEL = "backchannel"
    YES_NO_ANSWER = "yes_no_answer"


# Fixed order used both for tie-breaking and for stable report layout.
GROUP_ORDER = (
    DAGroup.FORWARD_LOOKING,
    DAGroup.OTHER,
    DAGroup.ASSESSMENT,
    DAGroup.BACKCHANNEL,
    DAGroup.YES_NO_ANSWER,
)

_GROUP_BY_VALUE = {g.value: g for g in DAGroup}

# The abandoned/turn-exit tag mixes feedback with unrelated fragments;
# it never counts as feedback regardless of the active mapping.
ABANDONED_TURN_EXIT_TAGS = frozenset({"%", "%-"})


class BinaryGroup(Enum):
    FEEDBACK = "feedback"
    OTHER = "other"


FEEDBACK_GROUPS = frozenset({DAGroup.BACKCHANNEL, DAGroup.ASSESSMENT})


@dataclass(frozen=True)
class SwbdMapping:
    """Total mapping from fine tags to coarse groups.

    Keys are normalized (whitespace-stripped, casefolded); tags not in
    the map fall back to ``default``.
    """

    map: dict[str, DAGroup]
    default: DAGroup = DAGroup.OTHER


def _normalize_tag(tag: str) -> str:
    return tag.strip().casefold()


def mapping_from_dict(obj: dict, *, path: str | None = None) -> SwbdMapping:
    if not isinstance(obj, dict):
        raise FormatError("mapping must be a JSON object", path=path)
    default_value = obj.get("default", "other")
    default = _GROUP_BY_VALUE.get(default_value)
    if default is None:
        raise FormatError(f"unknown default group {default_value!r}", path=path)
    raw_map = obj.get("map")
    if not isinstance(raw_map, dict):
        raise FormatError("mapping must have a 'map' object", path=path)
    tag_map: dict[str, DAGroup] = {}
    for tag, group_value in raw_map.items():
        group = _GROUP_BY_VALUE.get(group_value)
        if group is None:
            raise FormatError(f"unknown group {group_value!r} for tag {tag!r}", path=path)
        tag_map[_normalize_tag(tag)] = group
    return SwbdMapping(map=tag_map, default=default)


def load_mapping(path: str | None = None) -> SwbdMapping:
    """Load a tag mapping JSON file, or the bundled default."""
    if path is None:
        ref = resources.files("feedback_lens").joinpath("data/swbd_mapping.json")
        obj = json.loads(ref.read_text(encoding="utf-8"))
        return mapping_from_dict(obj, path=str(ref))
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}", path=path) from exc
    return mapping_from_dict(obj, path=path)


def map_swbd_tag(tag: str, mapping: SwbdMapping) -> DAGroup:
    """Map one fine tag to its coarse group; unlisted tags get the default."""
    return mapping.map.get(_normalize_tag(tag), mapping.default)


def to_binary_group(value, mapping: SwbdMapping | None = None) -> BinaryGroup:
    """Collapse a coarse group or a fine tag into feedback vs other.

    Feedback covers exactly the backchannel and assessment groups.
    Fine tags are mapped first (with the bundled mapping when none is
    given); the abandoned/turn-exit tag is forced to other even if a
    custom mapping claims it.
    """
    if isinstance(value, DAGroup):
        group = value
    else:
        tag = str(value)
        if tag.strip() in ABANDONED_TURN_EXIT_TAGS:
            return BinaryGroup.OTHER
        if mapping is None:
            mapping = load_mapping()
        group = map_swbd_tag(tag, mapping)
    return BinaryGroup.FEEDBACK if group in FEEDBACK_GROUPS else BinaryGroup.OTHER


# --- probability vectors and the decision rule ---------------------------

PROB_SUM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class ProbVector:
    """One probability per coarse group, summing to one."""

    probs: dict[DAGroup, float]

    def __post_init__(self) -> None:
        missing = [g.value for g in GROUP_ORDER if g not in self.probs]
        if missing:
            raise ValueError(f"missing probabilities for: {', '.join(missing)}")
        extra = set(self.probs) - set(GROUP_ORDER)
        if extra:
            raise ValueError(f"unexpected probability keys: {sorted(g.value for g in extra)}")
        for g, p in self.probs.items():
            if not isinstance(p, (int, float)) or isinstance(p, bool) or not (0.0 <= p <= 1.0):
                raise ValueError(f"probability for {g.value} out of range: {p!r}")
        total = sum(self.probs.values())
        if abs(total - 1.0) > PROB_SUM_TOLERANCE:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")

    def __getitem__(self, group: DAGroup) -> float:
        return self.probs[group]


@dataclass(frozen=True)
class ThresholdConfig:
    """Per-group decision thresholds, each strictly between 0 and 1.

    Defaults raise the bar for the two majority groups and lower it
    for the scarce feedback-bearing ones.
    """

    forward_looking: float = 0.8
    other: float = 0.6
    assessment: float = 0.25
    backchannel: float = 0.5
    yes_no_answer: float = 0.25

    def __post_init__(self) -> None:
        for g in GROUP_ORDER:
            t = getattr(self, g.value)
            if not (0.0 < t < 1.0):
                raise ValueError(f"threshold for {g.value} must be in (0, 1), got {t!r}")

    def __getitem__(self, group: DAGroup) -> float:
        return getattr(self, group.value)

    @staticmethod
    def from_json(path: str) -> "ThresholdConfig":
        with open(path, encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON: {exc}", path=path) from exc
        if not isinstance(obj, dict):
            raise FormatError("threshold config must be a JSON object", path=path)
        unknown = set(obj) - {g.value for g in GROUP_ORDER}
        if unknown:
            raise FormatError(f"unknown threshold keys: {', '.join(sorted(unknown))}", path=path)
        try:
            return ThresholdConfig(**{k: float(v) for k, v in obj.items()})
        except ValueError as exc:
            raise FormatError(str(exc), path=path) from exc


def decide_label(p: ProbVector, t: ThresholdConfig = ThresholdConfig()) -> DAGroup:
    """Pick the output group for one probability vector.

    Among groups at or above their threshold, the most probable wins;
    with none above, the most probable group excluding forward_looking
    wins.  Ties break toward the earlier group in GROUP_ORDER.
    """
    cleared = [g for g in GROUP_ORDER if p[g] >= t[g]]
    candidates = cleared if cleared else [g for g in GROUP_ORDER if g is not DAGroup.FORWARD_LOOKING]
    best = candidates[0]
    for g in candidates[1:]:
        if p[g] > p[best]:
            best = g
    return best


def read_probability_file(path: str) -> list[tuple[str, ProbVector]]:
    """Read JSONL rows of {"id", "probs": {group: float}} in file order."""
    rows: list[tuple[str, ProbVector]] = []
    seen: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            if not raw.strip():
                raise FormatError("blank line in probability file", path=path, line=line_no)
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON: {exc.msg}", path=path, line=line_no) from exc
            if not isinstance(obj, dict) or "id" not in obj or "probs" not in obj:
                raise FormatError("expected fields id and probs", path=path, line=line_no)
            uid = obj["id"]
            if not isinstance(uid, str) or not uid:
                raise FormatError("id must be a non-empty string", path=path, line=line_no)
            if uid in seen:
                raise FormatError(
                    f"duplicate id {uid!r} (first seen at line {seen[uid]})", path=path, line=line_no
                )
            seen[uid] = line_no
            probs_obj = obj["probs"]
            if not isinstance(probs_obj, dict):
                raise FormatError("probs must be an object", path=path, line=line_no)
            unknown = set(probs_obj) - set(_GROUP_BY_VALUE)
            if unknown:
                raise FormatError(f"unknown prob keys: {', '.join(sorted(unknown))}", path=path, line=line_no)
            try:
                vec = ProbVector(probs={_GROUP_BY_VALUE[k]: v for k, v in probs_obj.items()})
            except ValueError as exc:
                raise FormatError(f"id {uid!r}: {exc}", path=path, line=line_no) from exc
            rows.append((uid, vec))
    return rows


@dataclass
class GroupProportions:
    """Counts and percentage shares per coarse group."""

    counts: dict[DAGroup, int]
    percentages: dict[DAGroup, float]
    total: int


def group_proportions(labels: list[DAGroup]) -> GroupProportions:
    """Percentage of each group among the given labels; sums to 100."""
    if not labels:
        raise ValueError("no labels given")
    raw = Counter(labels)
    counts = {g: raw.get(g, 0) for g in GROUP_ORDER}
    total = len(labels)
    percentages = {g: 100.0 * c / total for g, c in counts.items()}
    return GroupProportions(counts=counts, percentages=percentages, total=total)
