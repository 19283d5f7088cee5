"""Synthetic sentence generation.

Three methods:

* gloss: each word is replaced by a uniform draw over all training words
  sharing its gloss (the original word included, so singleton entries
  reproduce the input)
* random: each word is replaced by a uniform draw over the training
  vocabulary; only the sentence length is kept
* llm: sentences come from an external language model; the raw output is
  validated, never trusted (novel words allowed, structural misalignment
  rejected)

Randomness is reproducible: every utterance gets its own substream derived
from (seed, utterance index), so output is independent of evaluation order
and thread count.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import httpx
import numpy as np

from .corpus import Corpus, Utterance, _decode_utf8, _nfc, _tokenize
from .errors import (
    ConfigError,
    EmptyResultError,
    LlmClientError,
    MissingGlossError,
    ParseError,
    ToolkitError,
)
from .lexicon import GlossLexicon, build_lexicon, oov_rate, vocabulary

METHODS = ("gloss", "random", "llm")


@dataclass(frozen=True)
class AugmentedSentence:
    """A synthetic sentence with provenance.

    seed_trace records the chosen-candidate index for every position that
    consumed a random draw (None where the token was kept as-is), which is
    enough to replay any single replacement.
    """

    origin_id: str
    method: str
    tokens: tuple[str, ...]
    gloss_tokens: tuple[str, ...] | None = None
    seed_trace: tuple[int | None, ...] = ()

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigError(f"unknown augmentation method {self.method!r}")
        if not self.tokens:
            raise ToolkitError(f"augmented sentence from {self.origin_id!r} is empty")


def _substream(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def gloss_replace(
    u: Utterance, lex: GlossLexicon, rng: np.random.Generator
) -> AugmentedSentence:
    """Replace every glossed word with a uniform draw over its alternatives.

    The gloss sequence is preserved verbatim; positions with an empty
    gloss keep their original word.
    """
    if u.gloss_tokens is None:
        raise ToolkitError(f"utterance {u.id!r} has no gloss annotations")
    out = []
    trace = []
    for word, gloss in zip(u.text_tokens, u.gloss_tokens):
        gloss = gloss.strip()
        if not gloss:
            out.append(word)
            trace.append(None)
            continue
        if gloss not in lex.entries:
            raise MissingGlossError(gloss, u.id)
        candidates = lex.entries[gloss]
        idx = int(rng.integers(len(candidates)))
        out.append(candidates[idx])
        trace.append(idx)
    return AugmentedSentence(
        origin_id=u.id,
        method="gloss",
        tokens=tuple(out),
        gloss_tokens=u.gloss_tokens,
        seed_trace=tuple(trace),
    )


def random_replace(u: Utterance, vocab, rng: np.random.Generator) -> AugmentedSentence:
    """Replace every word with a uniform draw over vocabulary word types.

    The input sentence defines only the output length; gloss and POS are
    ignored and not carried over.
    """
    vocab = list(vocab)
    if not vocab:
        raise ToolkitError("random replacement needs a non-empty vocabulary")
    idxs = [int(rng.integers(len(vocab))) for _ in u.text_tokens]
    return AugmentedSentence(
        origin_id=u.id,
        method="random",
        tokens=tuple(vocab[i] for i in idxs),
        seed_trace=tuple(idxs),
    )


def augment_corpus(
    train: Corpus,
    method: str,
    seed: int,
    workers: int | None = None,
    frequency_weighted: bool = False,
) -> list[AugmentedSentence]:
    """Generate one synthetic sentence per training utterance (1:1 ratio).

    Element i is derived from utterance i via a substream keyed on
    (seed, i); identical inputs and seed give identical output for any
    worker count. frequency_weighted switches random replacement from
    word types to token occurrences.
    """
    if method not in ("gloss", "random"):
        raise ConfigError(f"augment_corpus supports gloss|random, got {method!r}")
    if len(train) == 0:
        raise ToolkitError("cannot augment an empty corpus")
    if method == "gloss":
        lex = build_lexicon(train)
        missing = [u.id for u in train if u.gloss_tokens is None]
        if missing:
            raise ToolkitError(
                f"method=gloss requires glosses throughout; missing for {missing}"
            )

        def one(i, u):
            return gloss_replace(u, lex, _substream(seed, i))

    else:
        if frequency_weighted:
            vocab = [w for u in train for w in train.primary_tokens(u)]
        else:
            vocab = vocabulary(train)

        def one(i, u):
            return random_replace(u, vocab, _substream(seed, i))

    jobs = list(enumerate(train.utterances))
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda iu: one(*iu), jobs))
    return [one(i, u) for i, u in jobs]


# ---------------------------------------------------------------------------
# LLM-based generation

PROMPT_TEMPLATE = (
    "Given the following CSV, focus on columns [text, clean_text, english, "
    "gloss] and generate {count} sentences in a CSV with all of the original "
    "columns, consisting of only the new sentences; this is in {language}, "
    "{description}; do not use Python code to generate the sentences but "
    "rather use your understanding of other languages as an LLM to generate "
    "sentences; make sure that the text and gloss generated match; this text "
    "will be passed on to a TTS model to generate synthetic audio, to use "
    "for additional training data for a wav2vec2-based ASR model."
)


@dataclass(frozen=True)
class LlmPromptSpec:
    """Everything needed to build a generation prompt for one language."""

    sentence_count: int
    language_name: str
    language_description: str
    train_payload: str

    def __post_init__(self):
        if self.sentence_count <= 0:
            raise ConfigError("sentence_count must be positive")
        if not self.language_name or not self.language_description:
            raise ConfigError("language name and description must be non-empty")


@dataclass(frozen=True)
class LlmEndpoint:
    """Where and how to reach the generation endpoint."""

    url: str
    auth_env: str = ""
    timeout_s: float = 120.0
    max_attempts: int = 3
    backoff_base_s: float = 0.5


@dataclass(frozen=True)
class LlmValidationReport:
    accepted: tuple[AugmentedSentence, ...]
    rejected_count: int
    rejection_reasons: dict[str, int]
    oov_rate: float


def make_prompt_spec(
    train: Corpus, language_name: str, language_description: str
) -> LlmPromptSpec:
    from .corpus import serialize_corpus

    return LlmPromptSpec(
        sentence_count=len(train),
        language_name=language_name,
        language_description=language_description,
        train_payload=serialize_corpus(train, "delimited").decode("utf-8"),
    )


def build_llm_prompt(spec: LlmPromptSpec) -> str:
    """Render the prompt template and append the serialized training data.

    Byte-deterministic for a given spec.
    """
    head = PROMPT_TEMPLATE.format(
        count=spec.sentence_count,
        language=spec.language_name,
        description=spec.language_description,
    )
    return head + "\n\n" + spec.train_payload


def request_llm_generation(
    prompt: str,
    endpoint: LlmEndpoint,
    transport: httpx.BaseTransport | None = None,
    sleep=time.sleep,
) -> str:
    """POST the prompt and return the response body unmodified.

    Retries transient failures (5xx, timeouts, connection errors) with
    exponential backoff, at most endpoint.max_attempts attempts total.
    """
    headers = {"Content-Type": "text/plain; charset=utf-8"}
    if endpoint.auth_env:
        token = os.environ.get(endpoint.auth_env)
        if not token:
            raise LlmClientError(
                endpoint.url, f"auth env var {endpoint.auth_env!r} is not set"
            )
        headers["Authorization"] = f"Bearer {token}"

    last_error = None
    with httpx.Client(transport=transport, timeout=endpoint.timeout_s) as client:
        for attempt in range(endpoint.max_attempts):
            if attempt > 0:
                sleep(endpoint.backoff_base_s * (2 ** (attempt - 1)))
            try:
                resp = client.post(endpoint.url, content=prompt, headers=headers)
            except httpx.HTTPError as e:
                last_error = f"transport error: {e}"
                continue
            if resp.status_code >= 500:
                last_error = f"server error {resp.status_code}"
                continue
            if resp.status_code >= 400:
                raise LlmClientError(endpoint.url, f"request failed: {resp.status_code}")
            return resp.text
    raise LlmClientError(
        endpoint.url, f"gave up after {endpoint.max_attempts} attempts ({last_error})"
    )


def sentences_to_jsonl(sentences) -> bytes:
    """Serialize augmented sentences, one JSON object per line."""
    lines = []
    for s in sentences:
        obj = {
            "origin_id": s.origin_id,
            "method": s.method,
            "tokens": list(s.tokens),
            "seed_trace": list(s.seed_trace),
        }
        if s.gloss_tokens is not None:
            obj["gloss"] = list(s.gloss_tokens)
        lines.append(json.dumps(obj, ensure_ascii=False, sort_keys=True))
    return ("\n".join(lines) + ("\n" if lines else "")).encode("utf-8")


def sentences_from_jsonl(source) -> list[AugmentedSentence]:
    text = _decode_utf8(source)
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", line=lineno)
        out.append(
            AugmentedSentence(
                origin_id=obj["origin_id"],
                method=obj["method"],
                tokens=tuple(obj["tokens"]),
                gloss_tokens=tuple(obj["gloss"]) if "gloss" in obj else None,
                seed_trace=tuple(obj.get("seed_trace", [])),
            )
        )
    return out


def _sniff_rows(text: str):
    """Parse LLM output as delimited rows with at least a text column."""
    for delim in ("\t", ","):
        reader = csv.reader(io.StringIO(text), delimiter=delim, quotechar='"')
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            break
        if "text" in header or "clean_text" in header:
            return header, list(reader)
    raise ParseError("LLM output has no parseable header with a text column")


def validate_llm_output(raw, train: Corpus) -> LlmValidationReport:
    """Filter raw LLM output down to structurally valid sentences.

    Rows where text and gloss token counts differ are rejected with reason
    "alignment"; rows with no text with "empty_text"; rows lacking a gloss
    with "missing_gloss". Novel (hallucinated) words are allowed and show
    up in the OOV rate, computed over accepted tokens against the training
    vocabulary.
    """
    text = _decode_utf8(raw)
    header, rows = _sniff_rows(text)
    text_col = "text" if "text" in header else "clean_text"
    accepted = []
    reasons: dict[str, int] = {}

    def reject(reason):
        reasons[reason] = reasons.get(reason, 0) + 1

    for i, fields in enumerate(rows):
        if not any(f.strip() for f in fields):
            continue
        row = dict(zip(header, fields))
        tokens = _tokenize(_nfc(row.get(text_col, "")))
        if not tokens:
            reject("empty_text")
            continue
        gloss = _tokenize(_nfc(row.get("gloss", "")))
        if not gloss:
            reject("missing_gloss")
            continue
        if len(gloss) != len(tokens):
            reject("alignment")
            continue
        accepted.append(
            AugmentedSentence(
                origin_id=row.get("id") or f"llm-{i:05d}",
                method="llm",
                tokens=tokens,
                gloss_tokens=gloss,
            )
        )
    if not accepted:
        raise EmptyResultError("no LLM-generated row passed validation")
    all_tokens = [t for s in accepted for t in s.tokens]
    rate = oov_rate(all_tokens, vocabulary(train))
    return LlmValidationReport(
        accepted=tuple(accepted),
        rejected_count=sum(reasons.values()),
        rejection_reasons=reasons,
        oov_rate=rate,
    )
