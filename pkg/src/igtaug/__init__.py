"""Corpus augmentation and evaluation toolkit for low-resource ASR.

Builds synthetic training text from interlinear-glossed corpora (gloss
replacement, random replacement, LLM generation), emits TTS synthesis
manifests, and scores ASR output with WER/CER/PER plus paired-bootstrap
significance testing.
"""

from .augment import (
    AugmentedSentence,
    LlmEndpoint,
    LlmPromptSpec,
    LlmValidationReport,
    augment_corpus,
    build_llm_prompt,
    gloss_replace,
    make_prompt_spec,
    random_replace,
    request_llm_generation,
    validate_llm_output,
)
from .corpus import (
    Corpus,
    SplitSpec,
    Utterance,
    parse_corpus,
    serialize_corpus,
    split_corpus,
)
from .errors import ToolkitError
from .lexicon import (
    CorpusStats,
    GlossLexicon,
    alternative_rate,
    build_lexicon,
    corpus_stats,
    oov_rate,
    vocabulary,
)
from .metrics import (
    AlignmentCounts,
    EvalReport,
    SignificanceReport,
    edit_distance,
    error_rate,
    paired_bootstrap,
    tokenize,
)
from .synthesis import (
    DEFAULT_VOICES,
    SynthesisEntry,
    TrainingManifest,
    assign_voices,
    emit_manifest,
    emit_training_manifest,
    mix_training_set,
)

__version__ = "0.1.0"
