"""Gloss-to-words lexicon and corpus summary statistics.

The lexicon maps each gloss tag seen in training to the ordered set of
distinct words that carry it. Gloss keys are exact strings after NFC and
trimming, case-sensitive. Words come from the corpus's primary token
stream (orthographic or IPA), so both transcription conventions work
symmetrically.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus
from .errors import EmptyLexiconError, ToolkitError


@dataclass(frozen=True)
class GlossLexicon:
    """Map gloss tag -> distinct words sharing it, in first-occurrence order."""

    entries: dict[str, tuple[str, ...]]
    source_split_id: str = ""

    def __len__(self):
        return len(self.entries)

    def alternatives(self, gloss: str) -> tuple[str, ...]:
        return self.entries[gloss]


@dataclass(frozen=True)
class CorpusStats:
    """One summary row: durations, speaker/word/gloss counts and rates."""

    minutes: float
    speakers: int
    total_words: int
    total_unique: int
    train_words: int
    train_unique: int
    gloss_count: int
    pct_alt: float
    pct_out: float | None = None

    def __post_init__(self):
        if self.train_words > self.total_words:
            raise ToolkitError("train_words exceeds total_words")
        if self.train_unique > self.total_unique:
            raise ToolkitError("train_unique exceeds total_unique")
        if not 0.0 <= self.pct_alt <= 100.0:
            raise ToolkitError(f"pct_alt {self.pct_alt} outside [0, 100]")
        if self.pct_out is not None and not 0.0 <= self.pct_out <= 100.0:
            raise ToolkitError(f"pct_out {self.pct_out} outside [0, 100]")


def build_lexicon(train: Corpus) -> GlossLexicon:
    """Collect every (gloss -> word) association in the training split.

    Words are deduplicated per gloss and kept in first-occurrence order.
    Positions with an empty gloss tag contribute nothing. Raises
    EmptyLexiconError when no utterance carries glosses (augmentation
    would be impossible).
    """
    entries: dict[str, list[str]] = {}
    seen: dict[str, set[str]] = {}
    any_gloss = False
    for u in train:
        if u.gloss_tokens is None:
            continue
        any_gloss = True
        words = train.primary_tokens(u)
        for word, gloss in zip(words, u.gloss_tokens):
            gloss = gloss.strip()
            if not gloss:
                continue
            bucket = seen.setdefault(gloss, set())
            if word not in bucket:
                bucket.add(word)
                entries.setdefault(gloss, []).append(word)
    if not any_gloss:
        raise EmptyLexiconError(
            f"no utterance in {train.name or 'corpus'} has gloss annotations"
        )
    return GlossLexicon(
        entries={g: tuple(ws) for g, ws in entries.items()},
        source_split_id=train.name,
    )


def vocabulary(train: Corpus) -> list[str]:
    """Distinct words of the primary token stream in first-occurrence order."""
    seen = set()
    vocab = []
    for u in train:
        for word in train.primary_tokens(u):
            if word not in seen:
                seen.add(word)
                vocab.append(word)
    return vocab


def alternative_rate(lexicon: GlossLexicon) -> float:
    """Percentage of gloss types with at least two distinct words."""
    if not lexicon.entries:
        raise EmptyLexiconError("cannot compute alternative rate of an empty lexicon")
    with_alts = sum(1 for words in lexicon.entries.values() if len(words) >= 2)
    return 100.0 * with_alts / len(lexicon.entries)


def oov_rate(generated_tokens, vocab, by_type: bool = False) -> float:
    """Percentage of generated tokens absent from the training vocabulary.

    Counts token occurrences by default; by_type=True counts distinct
    word types instead.
    """
    tokens = list(generated_tokens)
    if not tokens:
        raise ToolkitError("cannot compute OOV rate of an empty token list")
    vocab = set(vocab)
    if by_type:
        tokens = list(dict.fromkeys(tokens))
    oov = sum(1 for t in tokens if t not in vocab)
    return 100.0 * oov / len(tokens)


def corpus_stats(full: Corpus, train: Corpus, llm_tokens=None) -> CorpusStats:
    """Compute the full summary row for a corpus and its training split."""
    if not train.ids() <= full.ids():
        missing = sorted(train.ids() - full.ids())
        raise ToolkitError(f"train is not a subset of the full corpus: {missing}")
    lex = build_lexicon(train)
    train_vocab = vocabulary(train)
    pct_out = None
    if llm_tokens is not None:
        pct_out = oov_rate(llm_tokens, train_vocab)
    return CorpusStats(
        minutes=sum(u.duration for u in full) / 60.0,
        speakers=len({u.speaker for u in full}),
        total_words=sum(len(full.primary_tokens(u)) for u in full),
        total_unique=len(vocabulary(full)),
        train_words=sum(len(train.primary_tokens(u)) for u in train),
        train_unique=len(train_vocab),
        gloss_count=len(lex),
        pct_alt=alternative_rate(lex),
        pct_out=pct_out,
    )
