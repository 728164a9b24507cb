"""Corpus parsing, serialization, markup stripping, and filtering tests."""

from __future__ import annotations

import json
import os
import string

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_corpus, write_corpus_files
from feedback_lens.corpus_io import (
    DEFAULT_MARKUP_RULES,
    EXCLUDED_GENRES,
    SOURCES,
    SUPPORTED_LANGUAGES,
    Corpus,
    CorpusManifest,
    FilterPolicy,
    FormatError,
    MarkupRuleSet,
    MarkupWarnings,
    Utterance,
    filter_corpus,
    parse_corpus,
    parse_manifest,
    serialize_manifest,
    serialize_utterance,
    strip_corpus_markup,
    strip_markup,
    write_corpus,
)


def write_lines(path, lines: list[str]) -> str:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")
    return str(path)


def write_manifest(path, **fields) -> str:
    base = {"name": "t", "language": "en", "source": "spontaneous"}
    base.update(fields)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(base, fh)
    return str(path)


class TestParseCorpus:
    def test_round_trip(self, tmp_path, tiny_corpus):
        cpath, mpath = write_corpus_files(tiny_corpus, tmp_path)
        parsed = parse_corpus(cpath, mpath)
        assert parsed.utterances == tiny_corpus.utterances
        assert parsed.manifest == tiny_corpus.manifest

    def test_malformed_json_names_line(self, tmp_path):
        mpath = write_manifest(tmp_path / "m.json")
        cpath = write_lines(tmp_path / "c.jsonl", [
            '{"id":"u1","dialogue_id":"d1","index":1,"text":"hi"}',
            "{not json",
        ])
        with pytest.raises(FormatError) as exc:
            parse_corpus(cpath, mpath)
        assert exc.value.line == 2

    def test_duplicate_id_reports_both_lines(self, tmp_path):
        mpath = write_manifest(tmp_path / "m.json")
        cpath = write_lines(tmp_path / "c.jsonl", [
            '{"id":"u1","dialogue_id":"d1","index":1,"text":"hi"}',
            '{"id":"u2","dialogue_id":"d1","index":2,"text":"ho"}',
            '{"id":"u1","dialogue_id":"d1","index":3,"text":"hum"}',
        ])
        with pytest.raises(FormatError) as exc:
            parse_corpus(cpath, mpath)
        message = str(exc.value)
        assert "u1" in message
        assert "1" in message and "3" in message

    def test_non_increasing_index_rejected(self, tmp_path):
        mpath = write_manifest(tmp_path / "m.json")
        cpath = write_lines(tmp_path / "c.jsonl", [
            '{"id":"u1","dialogue_id":"d1","index":2,"text":"hi"}',
            '{"id":"u2","dialogue_id":"d1","index":2,"text":"ho"}',
        ])
        with pytest.raises(FormatError):
            parse_corpus(cpath, mpath)

    def test_index_ordering_is_per_dialogue(self, tmp_path):
        mpath = write_manifest(tmp_path / "m.json")
        cpath = write_lines(tmp_path / "c.jsonl", [
            '{"id":"u1","dialogue_id":"d1","index":1,"text":"hi"}',
            '{"id":"u2","dialogue_id":"d2","index":1,"text":"ho"}',
            '{"id":"u3","dialogue_id":"d1","index":2,"text":"hum"}',
        ])
        corpus = parse_corpus(cpath, mpath)
        assert len(corpus) == 3

    def test_unknown_field_rejected(self, tmp_path):
        mpath = write_manifest(tmp_path / "m.json")
        cpath = write_lines(tmp_path / "c.jsonl", [
            '{"id":"u1","dialogue_id":"d1","index":1,"text":"hi","bogus":1}',
        ])
        with pytest.raises(FormatError):
            parse_corpus(cpath, mpath)

    def test_missing_required_field_rejected(self, tmp_path):
        mpath = write_manifest(tmp_path / "m.json")
        cpath = write_lines(tmp_path / "c.jsonl", ['{"id":"u1","dialogue_id":"d1","index":1}'])
        with pytest.raises(FormatError):
            parse_corpus(cpath, mpath)

    def test_empty_file_gives_empty_corpus(self, tmp_path):
        mpath = write_manifest(tmp_path / "m.json")
        cpath = write_lines(tmp_path / "c.jsonl", [])
        assert len(parse_corpus(cpath, mpath)) == 0


class TestParseManifest:
    def test_minimal(self, tmp_path):
        mpath = write_manifest(tmp_path / "m.json")
        manifest = parse_manifest(mpath)
        assert manifest.language == "en"
        assert manifest.genre is None

    def test_unsupported_language(self, tmp_path):
        mpath = write_manifest(tmp_path / "m.json", language="xx")
        with pytest.raises(FormatError):
            parse_manifest(mpath)

    def test_unknown_source(self, tmp_path):
        mpath = write_manifest(tmp_path / "m.json", source="webcrawl")
        with pytest.raises(FormatError):
            parse_manifest(mpath)

    def test_audience_only_for_subtitle(self, tmp_path):
        mpath = write_manifest(tmp_path / "m.json", audience="foreign")
        with pytest.raises(FormatError):
            parse_manifest(mpath)
        mpath2 = write_manifest(tmp_path / "m2.json", source="subtitle",
                                audience="hearing_impaired", year=2001)
        assert parse_manifest(mpath2).audience == "hearing_impaired"

    def test_supported_sets(self):
        assert SUPPORTED_LANGUAGES == ("de", "en", "fr", "hu", "it", "ja", "no", "zh")
        assert SOURCES == ("spontaneous", "subtitle", "synthetic")
        assert len(EXCLUDED_GENRES) == 10
        assert all(g == g.lower() for g in EXCLUDED_GENRES)


class TestSerialization:
    def test_canonical_compact_sorted(self):
        utt = Utterance(id="u1", dialogue_id="d1", index=1, text="hi", speaker="A")
        line = serialize_utterance(utt)
        obj = json.loads(line)
        assert list(obj) == sorted(obj)
        assert ": " not in line and ", " not in line

    def test_non_ascii_not_escaped(self):
        utt = Utterance(id="u1", dialogue_id="d1", index=1, text="对")
        assert "对" in serialize_utterance(utt)

    def test_manifest_round_trip(self, tmp_path):
        manifest = CorpusManifest(name="x", language="ja", source="subtitle",
                                  genre="drama", audience="foreign", year=2004)
        mpath = tmp_path / "m.json"
        mpath.write_text(serialize_manifest(manifest), encoding="utf-8")
        assert parse_manifest(str(mpath)) == manifest


TEXTS = st.text(alphabet=string.ascii_lowercase + " ", min_size=1, max_size=30)


class TestSerializationProperties:
    @given(texts=st.lists(TEXTS, min_size=1, max_size=10))
    def test_write_parse_byte_identity(self, tmp_path_factory, texts):
        tmp = tmp_path_factory.mktemp("rt")
        corpus = make_corpus(texts)
        cpath, mpath = write_corpus_files(corpus, tmp)
        with open(cpath, "rb") as fh:
            first = fh.read()
        parsed = parse_corpus(cpath, mpath)
        cpath2 = os.path.join(str(tmp), "again.jsonl")
        write_corpus(parsed, cpath2)
        with open(cpath2, "rb") as fh:
            second = fh.read()
        assert first == second


class TestStripMarkup:
    def _utt(self, text: str) -> Utterance:
        return Utterance(id="u1", dialogue_id="d1", index=1, text=text)

    def test_delete_double_paren_annotation(self):
        out = strip_markup(self._utt("yeah ((laughter)) right"))
        assert out.text == "yeah right"

    def test_delete_square_brackets(self):
        out = strip_markup(self._utt("[noise] okay"))
        assert out.text == "okay"

    def test_unwrap_angle_brackets(self):
        out = strip_markup(self._utt("<b_aside> sure <e_aside>"))
        assert out.text == "b_aside sure e_aside"

    def test_unmatched_bracket_left_verbatim_and_counted(self):
        warnings = MarkupWarnings()
        out = strip_markup(self._utt("so [unclosed yes"), DEFAULT_MARKUP_RULES, warnings)
        assert "[unclosed" in out.text
        assert warnings.unmatched_brackets == 1

    def test_raw_text_preserved_in_meta(self):
        out = strip_markup(self._utt("a ((b)) c"))
        assert out.meta["raw_text"] == "a ((b)) c"

    def test_idempotent(self):
        once = strip_markup(self._utt("a ((b)) c"))
        twice = strip_markup(once)
        assert twice.text == once.text
        assert twice.meta["raw_text"] == "a ((b)) c"

    def test_whitespace_renormalized(self):
        out = strip_markup(self._utt("a   ((b))   c"))
        assert out.text == "a c"

    def test_delete_tokens_rule(self):
        rules = MarkupRuleSet(delete_brackets=(), unwrap_brackets=(), delete_tokens=("--",))
        out = strip_markup(self._utt("well -- yes"), rules)
        assert out.text == "well yes"

    def test_corpus_level(self, tiny_corpus):
        stripped, warnings = strip_corpus_markup(tiny_corpus)
        assert len(stripped) == len(tiny_corpus)
        assert warnings.unmatched_brackets == 0

    @given(TEXTS)
    def test_idempotence_property(self, text):
        once = strip_markup(Utterance(id="u1", dialogue_id="d1", index=1, text=text))
        twice = strip_markup(once)
        assert once.text == twice.text


class TestFilterCorpus:
    def _subtitle(self, n: int = 120, **kwargs) -> Corpus:
        manifest_kwargs = {"source": "subtitle", "year": 2005}
        manifest_kwargs.update(kwargs)
        return make_corpus([f"utterance number {i}" for i in range(n)], **manifest_kwargs)

    def test_passing_corpus_unchanged(self):
        corpus = self._subtitle()
        policy = FilterPolicy(min_utterances=100)
        kept, report = filter_corpus(corpus, policy)
        assert len(kept) == 120
        assert report.rejected_reason is None

    def test_old_subtitle_year_rejected(self):
        kept, report = filter_corpus(self._subtitle(year=1985))
        assert len(kept) == 0
        assert report.rejected_reason == "year < 1990"

    def test_unknown_subtitle_year_rejected(self):
        kept, report = filter_corpus(self._subtitle(year=None))
        assert report.rejected_reason == "year unknown"

    def test_year_rule_not_applied_to_spontaneous(self):
        corpus = make_corpus([f"utterance number {i}" for i in range(120)], year=1972)
        kept, report = filter_corpus(corpus)
        assert len(kept) == 120

    def test_excluded_genre(self):
        kept, report = filter_corpus(self._subtitle(genre="musical"))
        assert len(kept) == 0
        assert report.rejected_reason == "excluded genre 'musical'"

    def test_acceptable_genre_kept(self):
        kept, report = filter_corpus(self._subtitle(genre="drama"))
        assert len(kept) == 120

    def test_below_minimum_utterances(self):
        kept, report = filter_corpus(self._subtitle(n=99))
        assert report.rejected_reason == "below minimum utterances"

    def test_single_character_utterances_dropped(self):
        texts = [f"utterance number {i}" for i in range(110)] + ["k", "?", "对"]
        corpus = make_corpus(texts)
        kept, report = filter_corpus(corpus)
        assert report.removed_single_character == 3
        assert len(kept) == 110

    def test_single_character_drop_can_be_disabled(self):
        texts = [f"utterance number {i}" for i in range(110)] + ["k"]
        corpus = make_corpus(texts)
        policy = FilterPolicy(drop_single_character_utterances=False)
        kept, report = filter_corpus(corpus, policy)
        assert len(kept) == 111
        assert report.removed_single_character == 0

    def test_min_utterances_checked_before_single_char_drop(self):
        # 100 utterances where one is single-character: corpus passes the
        # size gate on its raw count, then loses the single-character one.
        texts = [f"utterance number {i}" for i in range(99)] + ["k"]
        kept, report = filter_corpus(make_corpus(texts))
        assert report.rejected_reason is None
        assert len(kept) == 99

    def test_filter_never_reorders(self):
        texts = [f"utterance number {i}" for i in range(150)]
        corpus = make_corpus(texts)
        kept, _ = filter_corpus(corpus)
        ids = [u.id for u in kept.utterances]
        assert ids == sorted(ids, key=lambda s: int(s[1:]))

    @given(st.lists(TEXTS, min_size=100, max_size=140))
    def test_kept_is_subsequence_property(self, texts):
        corpus = make_corpus(texts)
        kept, report = filter_corpus(corpus)
        kept_ids = [u.id for u in kept.utterances]
        all_ids = [u.id for u in corpus.utterances]
        it = iter(all_ids)
        assert all(uid in it for uid in kept_ids)
        assert report.initial == len(texts)
        assert report.kept == len(kept)

    def test_policy_from_json(self, tmp_path):
        path = tmp_path / "policy.json"
        path.write_text(json.dumps({"min_year": 1995, "min_utterances": 10}), encoding="utf-8")
        policy = FilterPolicy.from_json(str(path))
        assert policy.min_year == 1995
        assert policy.min_utterances == 10
        assert policy.drop_single_character_utterances is True
