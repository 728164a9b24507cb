"""Shared fixtures and helpers for the test suite."""

from __future__ import annotations

import os
import subprocess
import sys

import pytest

from feedback_lens.corpus_io import Corpus, CorpusManifest, Utterance, write_corpus

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA_DIR = os.path.join(REPO_ROOT, "tests", "data")
SCRIPTS_DIR = os.path.join(REPO_ROOT, "scripts")

FIXTURE_CORPUS = os.path.join(DATA_DIR, "en_fixture_60.jsonl")
FIXTURE_MANIFEST = os.path.join(DATA_DIR, "en_fixture_60.manifest.json")
FIXTURE_EXPECTED = os.path.join(DATA_DIR, "en_fixture_60_expected.json")


def run_script(name: str, *args: str, check: bool = True) -> subprocess.CompletedProcess:
    """Run a repository script in a child interpreter."""
    cmd = [sys.executable, os.path.join(SCRIPTS_DIR, name), *args]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(
            f"{name} exited {proc.returncode}\nstdout:\n{proc.stdout}\nstderr:\n{proc.stderr}")
    return proc


def make_corpus(texts: list[str], language: str = "en", source: str = "spontaneous",
                name: str = "test-corpus", da_tags: list[str | None] | None = None,
                **manifest_kwargs) -> Corpus:
    """Build an in-memory corpus from plain utterance texts."""
    utterances = []
    for i, text in enumerate(texts):
        utterances.append(Utterance(
            id=f"u{i + 1:03d}",
            dialogue_id="d001",
            index=i + 1,
            text=text,
            speaker="A" if i % 2 == 0 else "B",
            da_tag=da_tags[i] if da_tags else None,
        ))
    manifest = CorpusManifest(name=name, language=language, source=source, **manifest_kwargs)
    return Corpus(manifest=manifest, utterances=utterances)


def write_corpus_files(corpus: Corpus, directory, stem: str = "corpus") -> tuple[str, str]:
    """Write a corpus + manifest under a directory, return their paths."""
    cpath = os.path.join(str(directory), f"{stem}.jsonl")
    mpath = os.path.join(str(directory), f"{stem}.manifest.json")
    write_corpus(corpus, cpath, mpath)
    return cpath, mpath


@pytest.fixture
def tiny_corpus() -> Corpus:
    return make_corpus([
        "yeah",
        "I drove past the lake yesterday",
        "uh-huh",
        "no way",
        "what",
        "the meeting ran long again",
    ])
