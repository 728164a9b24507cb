"""Normalize utterance text into token sequences.

Tokenization is deliberately simple and language-light: whitespace
split, edge punctuation stripped per token, Unicode case folding.
Utterance-final punctuation is recorded separately because it carries
pragmatic signal (a trailing "?" often marks a clarification) that
would otherwise be lost.

For Japanese and Chinese, tokens made of several CJK characters are
split into one token per character, keeping embedded Latin or digit
runs whole.  Whitespace-segmented text ("对 对 对") and unsegmented
text ("真的吗") thus normalize to the same token shapes, which keeps
cue matching consistent across differently-preprocessed corpora.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# Edge punctuation stripped per token.  Inner characters are kept, so
# apostrophes and hyphens survive inside tokens ("that's", "uh-huh").
_STRIP_CHARS = (
    ".,!?;:…·'\"`´‘’“”„‚«»‹›()[]{}<>-–—~*_/\\|¿¡"
    "。、，．！？：；・「」『』（）【】《》〈〉〜～｡､･"
)

# Utterance-final punctuation worth recording, with fullwidth forms
# normalized to their ASCII equivalents.
_TERMINAL_MAP = {
    ".": ".", "!": "!", "?": "?", "…": "…",
    "。": ".", "．": ".", "｡": ".", "！": "!", "？": "?",
}

# ASCII emoticons survive tokenization whole; they would otherwise be
# destroyed by edge stripping.  Checked only for tokens that do not
# start with an alphanumeric character.
_EMOTICON_RE = re.compile(
    r"""(?:
        [<>]? [:;=8] ['\-o^*]? [)(\]\[dp3/\\|}{*oO]+   # :-) ;) :d =(
      | [)(\]\[dp/\\|}{]+ ['\-o^*]? [:;=8] [<>]?       # (-: ]:
      | <3+                                            # hearts
      | \^_?\^                                         # ^^  ^_^
    )$""",
    re.VERBOSE,
)

# CJK characters split one-per-token for ja/zh: kana (3040-30FF,
# 31F0-31FF, halfwidth FF66-FF9D), unified ideographs (3400-4DBF,
# 4E00-9FFF, compat F900-FAFF), and hangul (AC00-D7AF).  CJK
# punctuation (3000-303F, fullwidth FF01-FF60) is excluded: it strips
# like any other punctuation.
_CJK = (
    "぀-ヿㇰ-ㇿ㐀-䶿一-鿿"
    "豈-﫿ｦ-ﾝ가-힯"
)
_CJK_RUN_RE = re.compile(f"[{_CJK}]|[^{_CJK}]+")
_HAS_CJK_RE = re.compile(f"[{_CJK}]")

_PER_CHARACTER_LANGUAGES = frozenset({"ja", "zh"})


@dataclass(frozen=True, slots=True)
class TokenSeq:
    """Normalized tokens plus the recorded utterance-final punctuation."""

    tokens: tuple[str, ...]
    terminal_punct: str | None = None

    def __len__(self) -> int:
        return len(self.tokens)


def _split_cjk(token: str) -> list[str]:
    # "真的吗" -> 真 的 吗; "okay嗯" -> okay 嗯 (Latin run kept whole).
    parts = _CJK_RUN_RE.findall(token)
    return [p for p in parts if p]


def tokenize(text: str, language: str) -> TokenSeq:
    """Normalize raw utterance text into a TokenSeq.

    Whitespace split; per-token edge punctuation stripped; tokens
    lowercased by Unicode case folding; pure-punctuation tokens
    dropped; ASCII emoticons kept whole; for ja/zh, multi-character
    CJK runs split one token per character.  The utterance-final
    punctuation mark (one of . ! ? …) is recorded before stripping.
    """
    trailing = text.rstrip()
    terminal = _TERMINAL_MAP.get(trailing[-1]) if trailing else None

    per_char = language in _PER_CHARACTER_LANGUAGES
    tokens: list[str] = []
    for raw in text.casefold().split():
        if not raw[0].isalnum() and _EMOTICON_RE.fullmatch(raw):
            tokens.append(raw)
            continue
        tok = raw.strip(_STRIP_CHARS)
        if not tok:
            continue
        if per_char and len(tok) > 1 and _HAS_CJK_RE.search(tok):
            tokens.extend(_split_cjk(tok))
        else:
            tokens.append(tok)
    return TokenSeq(tokens=tuple(tokens), terminal_punct=terminal)


def is_very_short(seq: TokenSeq, limit: int = 3) -> bool:
    """True when the sequence has between 1 and ``limit`` tokens.

    The default of three tokens bounds the region where short feedback
    expressions live; empty sequences are never very short.
    """
    return 1 <= len(seq.tokens) <= limit
