"""Cue phrase lexicons for feedback classification.

A lexicon maps short cue phrases to one of four feedback classes:
positive/acknowledgment, neutral/continuer, negative, and
clarification request.  Cues are stored post-tokenization so lookup is
a plain tuple match against whatever the tokenizer produced; a cue
listed as "that's right" and an utterance "That's right!" meet in the
middle as ("that's", "right").

Lexicon JSON schema (one file per language, see data/lexicons/):

    {"language": str,
     "classes": {"positive": [str], "neutral": [str],
                 "negative": [str], "clarification": [str]},
     "extras": {str: [str]}}        # optional extension categories

Duplicate cues within a class are dropped silently; the same cue in
two classes is kept in both and reported, with lookup resolving the
conflict by a fixed precedence (negative, then clarification, then
positive, then neutral) so that rarer, more marked classes win.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from enum import Enum
from importlib import resources

from .corpus_io import SUPPORTED_LANGUAGES, FormatError
from .normalize import TokenSeq, tokenize

ENV_LEXICON_DIR = "FEEDBACK_LENS_LEXICON_DIR"

# Cues are short by construction; anything longer than the very-short
# utterance region plus a small margin is a data error.
MAX_CUE_TOKENS = 5


class FeedbackClass(Enum):
    POSITIVE = "positive"
    NEUTRAL = "neutral"
    NEGATIVE = "negative"
    CLARIFICATION = "clarification"


DEFAULT_PRECEDENCE = (
    FeedbackClass.NEGATIVE,
    FeedbackClass.CLARIFICATION,
    FeedbackClass.POSITIVE,
    FeedbackClass.NEUTRAL,
)

Cue = tuple[str, ...]


@dataclass(frozen=True)
class CueLexicon:
    """Tokenized cue sets for one language.

    classes holds full cue sequences; initial_classes holds the
    single-token subset used for utterance-initial matching.
    cross_class_duplicates records cues present in more than one class,
    sorted for deterministic reporting.
    """

    language: str
    classes: dict[FeedbackClass, frozenset[Cue]]
    initial_classes: dict[FeedbackClass, frozenset[str]]
    extras: dict[str, frozenset[Cue]]
    initial_extras: dict[str, frozenset[str]]
    cross_class_duplicates: tuple[tuple[Cue, tuple[FeedbackClass, ...]], ...]

    def cue_count(self) -> int:
        return sum(len(s) for s in self.classes.values())


def _tokenize_cues(entries: list, *, language: str, label: str, path: str | None) -> frozenset[Cue]:
    cues: set[Cue] = set()
    for entry in entries:
        if not isinstance(entry, str):
            raise FormatError(f"{label}: cues must be strings, got {type(entry).__name__}", path=path)
        if not entry.strip():
            raise FormatError(f"{label}: empty cue string", path=path)
        seq = tokenize(entry, language)
        if not seq.tokens:
            raise FormatError(f"{label}: cue {entry!r} normalizes to no tokens", path=path)
        if len(seq.tokens) > MAX_CUE_TOKENS:
            raise FormatError(
                f"{label}: cue {entry!r} has {len(seq.tokens)} tokens (limit {MAX_CUE_TOKENS})",
                path=path,
            )
        cues.add(seq.tokens)
    return frozenset(cues)


def lexicon_from_dict(obj: dict, *, path: str | None = None) -> CueLexicon:
    """Build a validated CueLexicon from parsed JSON."""
    if not isinstance(obj, dict):
        raise FormatError("lexicon must be a JSON object", path=path)
    language = obj.get("language")
    if not isinstance(language, str) or language not in SUPPORTED_LANGUAGES:
        raise FormatError(
            f"lexicon language must be one of {', '.join(SUPPORTED_LANGUAGES)}, got {language!r}",
            path=path,
        )
    classes_obj = obj.get("classes")
    if not isinstance(classes_obj, dict):
        raise FormatError("lexicon must have a 'classes' object", path=path)
    expected = {cls.value for cls in FeedbackClass}
    missing = expected - set(classes_obj)
    if missing:
        raise FormatError(f"lexicon classes missing: {', '.join(sorted(missing))}", path=path)
    unknown = set(classes_obj) - expected
    if unknown:
        raise FormatError(f"unknown lexicon classes: {', '.join(sorted(unknown))}", path=path)

    classes: dict[FeedbackClass, frozenset[Cue]] = {}
    for cls in FeedbackClass:
        entries = classes_obj[cls.value]
        if not isinstance(entries, list):
            raise FormatError(f"class {cls.value!r} must be a list", path=path)
        classes[cls] = _tokenize_cues(entries, language=language, label=f"class {cls.value!r}", path=path)

    extras_obj = obj.get("extras", {})
    if not isinstance(extras_obj, dict):
        raise FormatError("'extras' must be an object", path=path)
    extras: dict[str, frozenset[Cue]] = {}
    for key, entries in extras_obj.items():
        if key in expected:
            raise FormatError(f"extra category {key!r} collides with a core class", path=path)
        if not isinstance(entries, list):
            raise FormatError(f"extra category {key!r} must be a list", path=path)
        extras[key] = _tokenize_cues(entries, language=language, label=f"extra {key!r}", path=path)

    owners: dict[Cue, list[FeedbackClass]] = {}
    for cls in FeedbackClass:
        for cue in classes[cls]:
            owners.setdefault(cue, []).append(cls)
    duplicates = tuple(
        (cue, tuple(owner_list))
        for cue, owner_list in sorted(owners.items())
        if len(owner_list) > 1
    )

    initial_classes = {
        cls: frozenset(c[0] for c in cues if len(c) == 1) for cls, cues in classes.items()
    }
    initial_extras = {
        key: frozenset(c[0] for c in cues if len(c) == 1) for key, cues in extras.items()
    }
    return CueLexicon(
        language=language,
        classes=classes,
        initial_classes=initial_classes,
        extras=extras,
        initial_extras=initial_extras,
        cross_class_duplicates=duplicates,
    )


def load_lexicon(path: str) -> CueLexicon:
    """Read and validate a lexicon JSON file."""
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}", path=path) from exc
    return lexicon_from_dict(obj, path=path)


def lexicon_dir() -> str | None:
    """Directory holding per-language lexicons, if overridden."""
    return os.environ.get(ENV_LEXICON_DIR)


def load_language(language: str, directory: str | None = None) -> CueLexicon:
    """Load the lexicon for a language code.

    Resolution order: explicit ``directory``, then the directory named
    by the FEEDBACK_LENS_LEXICON_DIR environment variable, then the
    lexicons bundled with the package.
    """
    directory = directory or lexicon_dir()
    if directory is not None:
        return load_lexicon(os.path.join(directory, f"{language}.json"))
    ref = resources.files("feedback_lens").joinpath(f"data/lexicons/{language}.json")
    try:
        raw = ref.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FormatError(f"no bundled lexicon for language {language!r}") from None
    return lexicon_from_dict(json.loads(raw), path=str(ref))


def lookup_cue(lex: CueLexicon, seq: TokenSeq,
               precedence: tuple[FeedbackClass, ...] = DEFAULT_PRECEDENCE) -> FeedbackClass | None:
    """Exact full-sequence cue match; precedence settles class ties."""
    key = seq.tokens
    for cls in precedence:
        if key in lex.classes[cls]:
            return cls
    return None


def lookup_initial(lex: CueLexicon, token: str,
                   precedence: tuple[FeedbackClass, ...] = DEFAULT_PRECEDENCE) -> FeedbackClass | None:
    """Single-token cue match for utterance-initial position.

    Multiword cues never fire here: an initial match asks whether the
    first token alone is a cue.
    """
    for cls in precedence:
        if token in lex.initial_classes[cls]:
            return cls
    return None


def lookup_extra(lex: CueLexicon, seq: TokenSeq) -> str | None:
    """Full-sequence match among extra categories, in sorted key order."""
    key = seq.tokens
    for name in sorted(lex.extras):
        if key in lex.extras[name]:
            return name
    return None


def lookup_extra_initial(lex: CueLexicon, token: str) -> str | None:
    for name in sorted(lex.initial_extras):
        if token in lex.initial_extras[name]:
            return name
    return None
