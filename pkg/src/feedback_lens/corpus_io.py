"""Read, validate, filter, and write dialogue corpora.

A corpus is a JSONL file with one utterance object per line plus a JSON
manifest describing the corpus as a whole.  Utterance schema:

    {"id": str, "dialogue_id": str, "index": int, "speaker": str|null,
     "text": str, "da_tag": str|null, "meta": {str: str}}

Manifest schema:

    {"name": str, "language": str, "source": str, "genre": str|null,
     "audience": str|null, "year": int|null}

Files are UTF-8 with LF line endings.  Serialization is canonical
(sorted keys, compact separators, one object per line) so that
serialize(parse(x)) is byte-identical for canonical-form inputs.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace

SUPPORTED_LANGUAGES = ("de", "en", "fr", "hu", "it", "ja", "no", "zh")
SOURCES = ("spontaneous", "subtitle", "synthetic")
AUDIENCES = ("hearing_impaired", "foreign")

# Subtitle genres rejected outright: scripted-but-non-conversational or
# non-representative registers.
EXCLUDED_GENRES = (
    "documentary",
    "reality-tv",
    "biography",
    "sport",
    "musical",
    "music",
    "adult",
    "animation",
    "short",
    "game-show",
)

_UTTERANCE_KEYS = {"id", "dialogue_id", "index", "speaker", "text", "da_tag", "meta"}
_REQUIRED_KEYS = ("id", "dialogue_id", "index", "text")


class FormatError(ValueError):
    """An input file violates the documented schema.

    Carries the offending path and, for line-oriented files, the
    1-based line number so callers can report actionable errors.
    """

    def __init__(self, message: str, *, path: str | None = None, line: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}: "
        if line is not None:
            where += f"line {line}: "
        super().__init__(where + message)
        self.path = path
        self.line = line


@dataclass(frozen=True, slots=True)
class Utterance:
    """One dialogue turn segment.

    index orders utterances within their dialogue; da_tag is an optional
    fine-grained dialogue-act annotation carried through from the source.
    """

    id: str
    dialogue_id: str
    index: int
    text: str
    speaker: str | None = None
    da_tag: str | None = None
    meta: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True, slots=True)
class CorpusManifest:
    """Corpus-level descriptors used for filtering and bookkeeping."""

    name: str
    language: str
    source: str
    genre: str | None = None
    audience: str | None = None
    year: int | None = None


@dataclass(slots=True)
class Corpus:
    """A manifest plus its utterances in file order.

    Treat instances as read-only:  operations that change content
    return a new Corpus.
    """

    manifest: CorpusManifest
    utterances: list[Utterance]

    def __len__(self) -> int:
        return len(self.utterances)


def _check_str(obj: dict, key: str, *, path: str, line: int | None, optional: bool = False) -> str | None:
    value = obj.get(key)
    if value is None:
        if optional:
            return None
        raise FormatError(f"missing or null required field {key!r}", path=path, line=line)
    if not isinstance(value, str):
        raise FormatError(f"field {key!r} must be a string, got {type(value).__name__}", path=path, line=line)
    return value


def parse_manifest(path: str) -> CorpusManifest:
    """Read and validate a corpus manifest JSON file."""
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}", path=path) from exc
    if not isinstance(obj, dict):
        raise FormatError("manifest must be a JSON object", path=path)
    name = _check_str(obj, "name", path=path, line=None)
    language = _check_str(obj, "language", path=path, line=None)
    if language not in SUPPORTED_LANGUAGES:
        raise FormatError(
            f"unsupported language {language!r}; expected one of {', '.join(SUPPORTED_LANGUAGES)}",
            path=path,
        )
    source = _check_str(obj, "source", path=path, line=None)
    if source not in SOURCES:
        raise FormatError(f"unknown source {source!r}; expected one of {', '.join(SOURCES)}", path=path)
    genre = _check_str(obj, "genre", path=path, line=None, optional=True)
    audience = _check_str(obj, "audience", path=path, line=None, optional=True)
    if audience is not None:
        if source != "subtitle":
            raise FormatError("audience is only meaningful for subtitle corpora", path=path)
        if audience not in AUDIENCES:
            raise FormatError(f"unknown audience {audience!r}; expected one of {', '.join(AUDIENCES)}", path=path)
    year = obj.get("year")
    if year is not None and (isinstance(year, bool) or not isinstance(year, int)):
        raise FormatError(f"year must be an integer, got {type(year).__name__}", path=path)
    return CorpusManifest(name=name, language=language, source=source, genre=genre, audience=audience, year=year)


def _parse_utterance(obj: object, *, path: str, line: int) -> Utterance:
    if not isinstance(obj, dict):
        raise FormatError("each line must be a JSON object", path=path, line=line)
    unknown = set(obj) - _UTTERANCE_KEYS
    if unknown:
        raise FormatError(f"unknown fields: {', '.join(sorted(unknown))}", path=path, line=line)
    for key in _REQUIRED_KEYS:
        if key not in obj or obj[key] is None:
            raise FormatError(f"missing or null required field {key!r}", path=path, line=line)
    uid = _check_str(obj, "id", path=path, line=line)
    dialogue_id = _check_str(obj, "dialogue_id", path=path, line=line)
    if not uid:
        raise FormatError("field 'id' must be non-empty", path=path, line=line)
    index = obj["index"]
    if isinstance(index, bool) or not isinstance(index, int):
        raise FormatError(f"field 'index' must be an integer, got {type(index).__name__}", path=path, line=line)
    text = _check_str(obj, "text", path=path, line=line)
    speaker = _check_str(obj, "speaker", path=path, line=line, optional=True)
    da_tag = _check_str(obj, "da_tag", path=path, line=line, optional=True)
    meta = obj.get("meta") or {}
    if not isinstance(meta, dict):
        raise FormatError("field 'meta' must be an object", path=path, line=line)
    for k, v in meta.items():
        if not isinstance(k, str) or not isinstance(v, str):
            raise FormatError("meta must map strings to strings", path=path, line=line)
    return Utterance(id=uid, dialogue_id=dialogue_id, index=index, text=text, speaker=speaker, da_tag=da_tag, meta=meta)


def parse_corpus(path: str, manifest_path: str) -> Corpus:
    """Read a JSONL corpus and its manifest.

    Rejects malformed JSON, schema violations, duplicate utterance ids,
    and per-dialogue indices that are not strictly increasing in file
    order.  Errors name the offending line.
    """
    manifest = parse_manifest(manifest_path)
    utterances: list[Utterance] = []
    seen_ids: dict[str, int] = {}
    last_index: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            if not raw.strip():
                raise FormatError("blank line in corpus file", path=path, line=line_no)
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON: {exc.msg} (col {exc.colno})", path=path, line=line_no) from exc
            utt = _parse_utterance(obj, path=path, line=line_no)
            if utt.id in seen_ids:
                raise FormatError(
                    f"duplicate utterance id {utt.id!r} (first seen at line {seen_ids[utt.id]})",
                    path=path,
                    line=line_no,
                )
            seen_ids[utt.id] = line_no
            prev = last_index.get(utt.dialogue_id)
            if prev is not None and utt.index <= prev:
                raise FormatError(
                    f"index {utt.index} does not increase within dialogue {utt.dialogue_id!r} (previous {prev})",
                    path=path,
                    line=line_no,
                )
            last_index[utt.dialogue_id] = utt.index
            utterances.append(utt)
    return Corpus(manifest=manifest, utterances=utterances)


def serialize_utterance(utt: Utterance) -> str:
    """Render one utterance as its canonical JSONL line (no newline)."""
    obj = {
        "da_tag": utt.da_tag,
        "dialogue_id": utt.dialogue_id,
        "id": utt.id,
        "index": utt.index,
        "meta": utt.meta,
        "speaker": utt.speaker,
        "text": utt.text,
    }
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def serialize_manifest(manifest: CorpusManifest) -> str:
    obj = {
        "audience": manifest.audience,
        "genre": manifest.genre,
        "language": manifest.language,
        "name": manifest.name,
        "source": manifest.source,
        "year": manifest.year,
    }
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def write_corpus(corpus: Corpus, path: str, manifest_path: str | None = None) -> None:
    """Write a corpus in canonical form (UTF-8, LF, sorted keys)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for utt in corpus.utterances:
            fh.write(serialize_utterance(utt))
            fh.write("\n")
    if manifest_path is not None:
        with open(manifest_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(serialize_manifest(corpus.manifest))
            fh.write("\n")


# --- markup stripping ---------------------------------------------------

_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class MarkupRuleSet:
    """Transcription markup removal rules.

    delete_brackets:  (open, close) pairs whose whole span is removed,
        e.g. annotator noise like ``((coughs))``.
    unwrap_brackets:  (open, close) pairs whose content is kept,
        e.g. ``<mh>`` becomes ``mh``.
    delete_tokens:    regex patterns matched against whole whitespace
        tokens after bracket handling, e.g. emoticons.
    """

    delete_brackets: tuple[tuple[str, str], ...] = ()
    unwrap_brackets: tuple[tuple[str, str], ...] = ()
    delete_tokens: tuple[str, ...] = ()


# Default rules: double parens and square brackets carry annotator
# events; angle brackets wrap vocalizations whose text is real.
DEFAULT_MARKUP_RULES = MarkupRuleSet(
    delete_brackets=(("((", "))"), ("[", "]")),
    unwrap_brackets=(("<", ">"),),
    delete_tokens=(),
)


@dataclass
class MarkupWarnings:
    """Mutable tally of markup oddities seen while stripping."""

    unmatched_brackets: int = 0


def strip_markup(utt: Utterance, rules: MarkupRuleSet = DEFAULT_MARKUP_RULES,
                 warnings: MarkupWarnings | None = None) -> Utterance:
    """Remove transcription markup from one utterance's text.

    Unmatched bracket halves are left verbatim and counted in
    ``warnings``.  Whitespace is re-normalized to single spaces.  The
    pre-strip text is kept under meta["raw_text"]; an already-stripped
    utterance passes through unchanged, so the operation is idempotent.
    """
    text = utt.text
    for open_b, close_b in rules.delete_brackets:
        pattern = re.compile(re.escape(open_b) + r".*?" + re.escape(close_b), re.DOTALL)
        text = pattern.sub(" ", text)
    for open_b, close_b in rules.unwrap_brackets:
        pattern = re.compile(re.escape(open_b) + r"(.*?)" + re.escape(close_b), re.DOTALL)
        text = pattern.sub(r" \1 ", text)
    if warnings is not None:
        for open_b, close_b in (*rules.delete_brackets, *rules.unwrap_brackets):
            warnings.unmatched_brackets += text.count(open_b)
            if close_b != open_b:
                warnings.unmatched_brackets += text.count(close_b)
    if rules.delete_tokens:
        patterns = [re.compile(p) for p in rules.delete_tokens]
        kept = [tok for tok in text.split() if not any(p.fullmatch(tok) for p in patterns)]
        text = " ".join(kept)
    text = _WS_RE.sub(" ", text).strip()
    if text == utt.text and "raw_text" in utt.meta:
        return utt
    meta = dict(utt.meta)
    meta.setdefault("raw_text", utt.text)
    return replace(utt, text=text, meta=meta)


def strip_corpus_markup(corpus: Corpus, rules: MarkupRuleSet = DEFAULT_MARKUP_RULES) -> tuple[Corpus, MarkupWarnings]:
    """Apply strip_markup to every utterance; returns the warnings tally."""
    warnings = MarkupWarnings()
    stripped = [strip_markup(u, rules, warnings) for u in corpus.utterances]
    return Corpus(manifest=corpus.manifest, utterances=stripped), warnings


# --- filtering ----------------------------------------------------------


@dataclass(frozen=True)
class FilterPolicy:
    """Corpus admission rules.

    Whole-corpus rules (min_year, excluded_genres, min_utterances)
    reject the corpus outright; single-character removal drops
    individual utterances.  Year and genre only constrain subtitle
    corpora, where they describe the film; recording year is not a
    quality signal for spontaneous speech.
    """

    min_year: int = 1990
    min_utterances: int = 100
    excluded_genres: tuple[str, ...] = EXCLUDED_GENRES
    drop_single_character_utterances: bool = True

    @staticmethod
    def from_json(path: str) -> "FilterPolicy":
        with open(path, encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise FormatError(f"invalid JSON: {exc}", path=path) from exc
        if not isinstance(obj, dict):
            raise FormatError("filter policy must be a JSON object", path=path)
        known = {"min_year", "min_utterances", "excluded_genres", "drop_single_character_utterances"}
        unknown = set(obj) - known
        if unknown:
            raise FormatError(f"unknown filter policy fields: {', '.join(sorted(unknown))}", path=path)
        kwargs: dict = {}
        if "min_year" in obj:
            kwargs["min_year"] = int(obj["min_year"])
        if "min_utterances" in obj:
            kwargs["min_utterances"] = int(obj["min_utterances"])
        if "excluded_genres" in obj:
            kwargs["excluded_genres"] = tuple(str(g).lower() for g in obj["excluded_genres"])
        if "drop_single_character_utterances" in obj:
            kwargs["drop_single_character_utterances"] = bool(obj["drop_single_character_utterances"])
        return FilterPolicy(**kwargs)


@dataclass
class FilterReport:
    """What filter_corpus did: rejection reason or per-rule removal counts."""

    initial: int
    kept: int
    rejected_reason: str | None = None
    removed_single_character: int = 0


def filter_corpus(corpus: Corpus, policy: FilterPolicy = FilterPolicy()) -> tuple[Corpus, FilterReport]:
    """Apply an admission policy; never reorders surviving utterances.

    Subtitle corpora are rejected whole for an unknown or early year or
    for an excluded genre.  Any corpus below min_utterances is rejected
    whole.  Surviving corpora optionally drop utterances whose trimmed
    text is a single Unicode scalar (so a lone CJK character is also
    dropped); run after strip_markup when markup matters.
    """
    n = len(corpus.utterances)
    m = corpus.manifest

    def rejected(reason: str) -> tuple[Corpus, FilterReport]:
        return (
            Corpus(manifest=m, utterances=[]),
            FilterReport(initial=n, kept=0, rejected_reason=reason),
        )

    if m.source == "subtitle":
        if m.year is None:
            return rejected("year unknown")
        if m.year < policy.min_year:
            return rejected(f"year < {policy.min_year}")
        if m.genre is not None and m.genre.lower() in policy.excluded_genres:
            return rejected(f"excluded genre {m.genre!r}")
    if n < policy.min_utterances:
        return rejected("below minimum utterances")

    if not policy.drop_single_character_utterances:
        return Corpus(manifest=m, utterances=list(corpus.utterances)), FilterReport(initial=n, kept=n)

    kept = [u for u in corpus.utterances if len(u.text.strip()) != 1]
    report = FilterReport(initial=n, kept=len(kept), removed_single_character=n - len(kept))
    return Corpus(manifest=m, utterances=kept), report
