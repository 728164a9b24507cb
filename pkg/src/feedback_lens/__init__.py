"""Quantify conversational feedback in dialogue corpora.

The toolkit labels utterances with feedback classes via cue lexicons,
aggregates lexical statistics, maps dialogue-act tags into coarse
groups, applies threshold-based label decisions to tagger output, and
evaluates the pieces against gold annotations.
"""

from .classify import (
    ClassifyOptions,
    FeedbackLabel,
    MatchSite,
    class_proportions,
    classify_corpus,
    classify_utterance,
)
from .corpus_io import (
    Corpus,
    CorpusManifest,
    FilterPolicy,
    FormatError,
    MarkupRuleSet,
    Utterance,
    filter_corpus,
    parse_corpus,
    strip_markup,
    write_corpus,
)
from .dialogue_acts import (
    BinaryGroup,
    DAGroup,
    ProbVector,
    SwbdMapping,
    ThresholdConfig,
    decide_label,
    group_proportions,
    map_swbd_tag,
    to_binary_group,
)
from .lexicon import CueLexicon, FeedbackClass, load_language, load_lexicon, lookup_cue
from .metrics import confusion_matrix, evaluate_binary_cues, prf_metrics
from .normalize import TokenSeq, is_very_short, tokenize
from .stats import compare_corpora_terms, extract_ngrams, scaled_fscore

__version__ = "0.1.0"

__all__ = [
    "BinaryGroup",
    "ClassifyOptions",
    "Corpus",
    "CorpusManifest",
    "CueLexicon",
    "DAGroup",
    "FeedbackClass",
    "FeedbackLabel",
    "FilterPolicy",
    "FormatError",
    "MarkupRuleSet",
    "MatchSite",
    "ProbVector",
    "SwbdMapping",
    "ThresholdConfig",
    "TokenSeq",
    "Utterance",
    "class_proportions",
    "classify_corpus",
    "classify_utterance",
    "compare_corpora_terms",
    "confusion_matrix",
    "decide_label",
    "evaluate_binary_cues",
    "extract_ngrams",
    "filter_corpus",
    "group_proportions",
    "is_very_short",
    "load_language",
    "load_lexicon",
    "lookup_cue",
    "map_swbd_tag",
    "parse_corpus",
    "prf_metrics",
    "scaled_fscore",
    "strip_markup",
    "to_binary_group",
    "tokenize",
    "write_corpus",
]
