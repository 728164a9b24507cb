"""Cue lexicon loading, validation, and lookup tests."""

from __future__ import annotations

import json

import pytest

from feedback_lens.corpus_io import SUPPORTED_LANGUAGES, FormatError
from feedback_lens.lexicon import (
    DEFAULT_PRECEDENCE,
    ENV_LEXICON_DIR,
    MAX_CUE_TOKENS,
    FeedbackClass,
    lexicon_from_dict,
    load_language,
    load_lexicon,
    lookup_cue,
    lookup_extra,
    lookup_extra_initial,
    lookup_initial,
)
from feedback_lens.normalize import TokenSeq, tokenize


def minimal_dict(**overrides) -> dict:
    base = {
        "language": "en",
        "classes": {
            "positive": ["yeah", "that's right"],
            "neutral": ["hm"],
            "negative": ["no"],
            "clarification": ["what"],
        },
    }
    base.update(overrides)
    return base


class TestLexiconValidation:
    def test_minimal_loads(self):
        lex = lexicon_from_dict(minimal_dict())
        assert lex.language == "en"
        assert lex.cue_count() == 5

    def test_all_classes_required(self):
        obj = minimal_dict()
        del obj["classes"]["neutral"]
        with pytest.raises(FormatError):
            lexicon_from_dict(obj)

    def test_unknown_class_rejected(self):
        obj = minimal_dict()
        obj["classes"]["sarcasm"] = ["sure"]
        with pytest.raises(FormatError):
            lexicon_from_dict(obj)

    def test_unsupported_language_rejected(self):
        with pytest.raises(FormatError):
            lexicon_from_dict(minimal_dict(language="xx"))

    def test_empty_cue_rejected(self):
        obj = minimal_dict()
        obj["classes"]["positive"].append("   ")
        with pytest.raises(FormatError):
            lexicon_from_dict(obj)

    def test_cue_longer_than_five_tokens_rejected(self):
        obj = minimal_dict()
        obj["classes"]["positive"].append("a b c d e f")
        with pytest.raises(FormatError):
            lexicon_from_dict(obj)
        assert MAX_CUE_TOKENS == 5

    def test_cues_normalized_like_tokenizer(self):
        obj = minimal_dict()
        obj["classes"]["positive"].append("Oh YES!")
        lex = lexicon_from_dict(obj)
        assert ("oh", "yes") in lex.classes[FeedbackClass.POSITIVE]

    def test_within_class_duplicates_merged(self):
        obj = minimal_dict()
        obj["classes"]["positive"] += ["yeah", "YEAH"]
        lex = lexicon_from_dict(obj)
        assert lex.cue_count() == 5

    def test_cross_class_duplicates_reported(self):
        obj = minimal_dict()
        obj["classes"]["neutral"].append("yeah")
        lex = lexicon_from_dict(obj)
        assert lex.cross_class_duplicates == (
            (("yeah",), (FeedbackClass.POSITIVE, FeedbackClass.NEUTRAL)),
        )

    def test_extras_cannot_collide_with_core(self):
        obj = minimal_dict(extras={"politeness": ["positive"]})
        lex = lexicon_from_dict(obj)
        assert ("positive",) in lex.extras["politeness"]
        obj_bad = minimal_dict(extras={"positive": ["thanks"]})
        with pytest.raises(FormatError):
            lexicon_from_dict(obj_bad)

    def test_extras_loaded(self):
        obj = minimal_dict(extras={"politeness": ["thanks", "thank you"]})
        lex = lexicon_from_dict(obj)
        assert ("thanks",) in lex.extras["politeness"]
        assert "thanks" in lex.initial_extras["politeness"]
        assert ("thank", "you") in lex.extras["politeness"]
        assert "thank you" not in lex.initial_extras["politeness"]


class TestBundledLexicons:
    def test_all_supported_languages_bundle(self):
        for language in SUPPORTED_LANGUAGES:
            lex = load_language(language)
            assert lex.language == language
            assert lex.cue_count() > 0

    def test_bundled_counts(self):
        expected = {"de": 77, "en": 139, "fr": 76, "hu": 95,
                    "it": 100, "ja": 28, "no": 72, "zh": 60}
        for language, count in expected.items():
            assert load_language(language).cue_count() == count, language

    def test_hungarian_cross_class_duplicate_membership(self):
        lex = load_language("hu")
        dupes = {cue: classes for cue, classes in lex.cross_class_duplicates}
        assert ("ja",) in dupes
        assert FeedbackClass.POSITIVE in dupes[("ja",)]

    def test_english_oh_in_two_classes(self):
        lex = load_language("en")
        assert ("oh",) in lex.classes[FeedbackClass.POSITIVE]
        assert ("oh",) in lex.classes[FeedbackClass.NEUTRAL]

    def test_english_extras_present(self):
        lex = load_language("en")
        assert "politeness" in lex.extras
        assert "emoji" in lex.extras
        assert (":)",) in lex.extras["emoji"]

    def test_chinese_cues_stored_per_character(self):
        lex = load_language("zh")
        all_cues = set()
        for cues in lex.classes.values():
            all_cues |= cues
        assert ("什", "么") in all_cues
        # No stored cue token is a multi-character CJK run.
        for cue in all_cues:
            for token in cue:
                if any("一" <= ch <= "鿿" for ch in token):
                    assert len(token) == 1


class TestLoadOrder:
    def test_explicit_directory_wins(self, tmp_path, monkeypatch):
        override = minimal_dict()
        override["classes"]["positive"] = ["customcue"]
        (tmp_path / "en.json").write_text(json.dumps(override), encoding="utf-8")
        monkeypatch.delenv(ENV_LEXICON_DIR, raising=False)
        lex = load_language("en", directory=str(tmp_path))
        assert ("customcue",) in lex.classes[FeedbackClass.POSITIVE]

    def test_environment_variable_dir(self, tmp_path, monkeypatch):
        override = minimal_dict()
        override["classes"]["positive"] = ["envcue"]
        (tmp_path / "en.json").write_text(json.dumps(override), encoding="utf-8")
        monkeypatch.setenv(ENV_LEXICON_DIR, str(tmp_path))
        lex = load_language("en")
        assert ("envcue",) in lex.classes[FeedbackClass.POSITIVE]

    def test_bundled_fallback(self, monkeypatch):
        monkeypatch.delenv(ENV_LEXICON_DIR, raising=False)
        assert load_language("en").cue_count() == 139

    def test_load_lexicon_from_path(self, tmp_path):
        path = tmp_path / "mini.json"
        path.write_text(json.dumps(minimal_dict()), encoding="utf-8")
        assert load_lexicon(str(path)).cue_count() == 5

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(OSError):
            load_lexicon(str(tmp_path / "nope.json"))


class TestLookups:
    def test_full_sequence_match(self):
        lex = load_language("en")
        assert lookup_cue(lex, tokenize("that's right", "en")) == FeedbackClass.POSITIVE
        assert lookup_cue(lex, tokenize("zebra", "en")) is None

    def test_precedence_on_cross_class_cue(self):
        lex = load_language("en")
        # "oh" sits in positive and neutral; default precedence asks
        # negative, clarification, positive, neutral in that order.
        assert lookup_cue(lex, tokenize("oh", "en")) == FeedbackClass.POSITIVE
        reversed_precedence = tuple(reversed(DEFAULT_PRECEDENCE))
        assert lookup_cue(lex, tokenize("oh", "en"), reversed_precedence) == FeedbackClass.NEUTRAL

    def test_initial_is_single_token_only(self):
        lex = load_language("en")
        assert lookup_initial(lex, "yeah") == FeedbackClass.POSITIVE
        # "that's right" is a stored cue but "that's" alone is not.
        assert lookup_initial(lex, "that's") is None

    def test_extras_lookup(self):
        lex = load_language("en")
        assert lookup_extra(lex, tokenize("thank you", "en")) == "politeness"
        assert lookup_extra(lex, tokenize(":)", "en")) == "emoji"
        assert lookup_extra(lex, tokenize("zebra", "en")) is None
        assert lookup_extra_initial(lex, "thanks") == "politeness"

    def test_default_precedence_order(self):
        assert DEFAULT_PRECEDENCE == (
            FeedbackClass.NEGATIVE,
            FeedbackClass.CLARIFICATION,
            FeedbackClass.POSITIVE,
            FeedbackClass.NEUTRAL,
        )

    def test_lookup_uses_tokens_not_text(self):
        lex = load_language("en")
        assert lookup_cue(lex, TokenSeq(tokens=("no", "way"))) == FeedbackClass.NEGATIVE


def test_cross_class_duplicate_count_on_controlled_fixture():
    # A file with exactly one duplicated cue reports exactly one entry.
    obj = minimal_dict()
    obj["classes"]["neutral"].append("what")
    lex = lexicon_from_dict(obj)
    assert len(lex.cross_class_duplicates) == 1
    (cue, classes) = lex.cross_class_duplicates[0]
    assert cue == ("what",)
    assert set(classes) == {FeedbackClass.NEUTRAL, FeedbackClass.CLARIFICATION}
