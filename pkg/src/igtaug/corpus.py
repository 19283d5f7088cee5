"""Data model, parsing, serialization and splitting for glossed speech corpora.

Two interchange formats are supported:

* delimited: UTF-8 tab-separated values with a header row and minimally
  quoted fields (columns: id, speaker, audio, duration_s, text, ipa, gloss,
  pos, translation_en, translation_other; empty string = absent)
* json_lines: one JSON object per utterance with the same keys; token
  lists are arrays

All text fields are NFC-normalized at parse time and tokenized on runs of
whitespace. Corpora are immutable after construction and every operation
here is a pure function.
"""

from __future__ import annotations

import csv
import io
import json
import unicodedata
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AlignmentError,
    ConfigError,
    DuplicateIdError,
    ParseError,
    ToolkitError,
)

DELIMITED_COLUMNS = [
    "id",
    "speaker",
    "audio",
    "duration_s",
    "text",
    "ipa",
    "gloss",
    "pos",
    "translation_en",
    "translation_other",
]

FORMATS = ("delimited", "json_lines")
TRANSCRIPTION_MODES = ("orthographic", "ipa")


def _nfc(s: str) -> str:
    return unicodedata.normalize("NFC", s)


def _tokenize(text: str) -> tuple[str, ...]:
    """Split on runs of whitespace; never emits empty tokens."""
    return tuple(text.split())


@dataclass(frozen=True)
class Utterance:
    """One annotated speech segment.

    Parallel annotation streams (gloss, pos, ipa), when present, align
    one-to-one with text_tokens; morpheme separators like "-" stay inside
    a single token.
    """

    id: str
    speaker: str
    text_tokens: tuple[str, ...]
    audio_ref: str = ""
    duration: float = 0.0
    ipa_tokens: tuple[str, ...] | None = None
    gloss_tokens: tuple[str, ...] | None = None
    pos_tokens: tuple[str, ...] | None = None
    translations: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise ToolkitError("utterance id must be non-empty")
        if not self.speaker:
            raise ToolkitError(f"utterance {self.id!r}: speaker must be non-empty")
        if not self.text_tokens:
            raise ToolkitError(f"utterance {self.id!r}: text_tokens is empty")
        if any(t == "" for t in self.text_tokens):
            raise ToolkitError(f"utterance {self.id!r}: empty text token")
        if self.duration < 0:
            raise ToolkitError(f"utterance {self.id!r}: negative duration")
        n = len(self.text_tokens)
        for name in ("gloss_tokens", "pos_tokens", "ipa_tokens"):
            stream = getattr(self, name)
            if stream is not None and len(stream) != n:
                raise AlignmentError(self.id, name.split("_")[0], n, len(stream))


@dataclass(frozen=True)
class Corpus:
    """An ordered, immutable collection of utterances with unique ids."""

    name: str
    utterances: tuple[Utterance, ...]
    transcription_mode: str = "orthographic"

    def __post_init__(self):
        if self.transcription_mode not in TRANSCRIPTION_MODES:
            raise ConfigError(
                f"transcription_mode must be one of {TRANSCRIPTION_MODES}, "
                f"got {self.transcription_mode!r}"
            )
        seen = set()
        for u in self.utterances:
            if u.id in seen:
                raise DuplicateIdError(f"duplicate utterance id {u.id!r}")
            seen.add(u.id)

    def __len__(self):
        return len(self.utterances)

    def __iter__(self):
        return iter(self.utterances)

    def primary_tokens(self, u: Utterance) -> tuple[str, ...]:
        """The token stream scored and augmented for this corpus."""
        if self.transcription_mode == "ipa":
            if u.ipa_tokens is None:
                raise ToolkitError(
                    f"utterance {u.id!r} has no IPA tokens but corpus "
                    "transcription_mode is 'ipa'"
                )
            return u.ipa_tokens
        return u.text_tokens

    def ids(self) -> set[str]:
        return {u.id for u in self.utterances}


@dataclass(frozen=True)
class SplitSpec:
    """Train/val/test fractions plus the seed driving the assignment."""

    train_fraction: float = 0.8
    val_fraction: float = 0.1
    test_fraction: float = 0.1
    seed: int = 0

    def __post_init__(self):
        fracs = (self.train_fraction, self.val_fraction, self.test_fraction)
        for f in fracs:
            if f < 0 or f > 1:
                raise ConfigError(f"split fraction {f} outside [0, 1]")
        if abs(sum(fracs) - 1.0) > 1e-9:
            raise ConfigError(f"split fractions {fracs} do not sum to 1.0")
        if self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")


# ---------------------------------------------------------------------------
# parsing


def _decode_utf8(source) -> str:
    if isinstance(source, str):
        return source
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, str):
        return source
    try:
        return source.decode("utf-8")
    except UnicodeDecodeError as e:
        line = source[: e.start].count(b"\n") + 1
        raise ParseError(f"invalid UTF-8: {e.reason}", line=line) from e


def _parse_translations(row: dict) -> dict[str, str]:
    out = {}
    en = row.get("translation_en") or ""
    if en:
        out["en"] = _nfc(en)
    other = row.get("translation_other") or ""
    if other:
        try:
            parsed = json.loads(other)
        except json.JSONDecodeError:
            parsed = None
        if isinstance(parsed, dict):
            out.update({k: _nfc(str(v)) for k, v in parsed.items()})
        else:
            out["other"] = _nfc(other)
    return out


def _utterance_from_row(row: dict, line: int) -> Utterance:
    for key in ("id", "speaker", "text"):
        if not (row.get(key) or "").strip():
            raise ParseError(f"missing required field {key!r}", line=line)
    text = _tokenize(_nfc(row["text"]))

    def stream(key):
        raw = row.get(key) or ""
        if isinstance(raw, list):
            toks = tuple(_nfc(str(t)) for t in raw)
            return toks or None
        raw = _nfc(raw)
        return _tokenize(raw) or None

    dur_raw = row.get("duration_s")
    try:
        duration = float(dur_raw) if dur_raw not in (None, "") else 0.0
    except (TypeError, ValueError):
        raise ParseError(f"bad duration_s {dur_raw!r}", line=line)
    return Utterance(
        id=_nfc(str(row["id"]).strip()),
        speaker=_nfc(str(row["speaker"]).strip()),
        audio_ref=str(row.get("audio") or ""),
        duration=duration,
        text_tokens=text,
        ipa_tokens=stream("ipa"),
        gloss_tokens=stream("gloss"),
        pos_tokens=stream("pos"),
        translations=_parse_translations(row),
    )


def _rows_delimited(text: str):
    reader = csv.reader(io.StringIO(text), delimiter="\t", quotechar='"')
    try:
        header = next(reader)
    except StopIteration:
        return
    missing = {"id", "speaker", "text"} - set(header)
    if missing:
        raise ParseError(f"header missing required columns {sorted(missing)}", line=1)
    for lineno, fields in enumerate(reader, start=2):
        if not any(f.strip() for f in fields):
            continue
        yield dict(zip(header, fields)), lineno


def _rows_json_lines(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", line=lineno)
        if not isinstance(obj, dict):
            raise ParseError("expected a JSON object", line=lineno)
        if isinstance(obj.get("text"), list):
            obj = dict(obj, text=" ".join(str(t) for t in obj["text"]))
        if isinstance(obj.get("translation_other"), dict):
            obj = dict(obj, translation_other=json.dumps(obj["translation_other"]))
        yield obj, lineno


def parse_corpus(
    source,
    format: str = "delimited",
    name: str = "",
    transcription_mode: str = "orthographic",
) -> Corpus:
    """Parse a corpus from bytes, text, or a binary stream.

    Input order is preserved; all text is NFC-normalized; tokenization is
    whitespace-only. Raises ParseError / AlignmentError / DuplicateIdError
    with line or utterance context.
    """
    if format not in FORMATS:
        raise ConfigError(f"unknown corpus format {format!r}")
    text = _decode_utf8(source)
    rows = _rows_delimited(text) if format == "delimited" else _rows_json_lines(text)
    utterances = []
    for row, lineno in rows:
        try:
            utterances.append(_utterance_from_row(row, lineno))
        except AlignmentError:
            raise
        except ToolkitError as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(str(e), line=lineno)
    return Corpus(
        name=name,
        utterances=tuple(utterances),
        transcription_mode=transcription_mode,
    )


# ---------------------------------------------------------------------------
# serialization


def _utterance_row(u: Utterance) -> dict:
    other = {k: v for k, v in u.translations.items() if k != "en"}
    return {
        "id": u.id,
        "speaker": u.speaker,
        "audio": u.audio_ref,
        "duration_s": repr(u.duration),
        "text": " ".join(u.text_tokens),
        "ipa": " ".join(u.ipa_tokens) if u.ipa_tokens else "",
        "gloss": " ".join(u.gloss_tokens) if u.gloss_tokens else "",
        "pos": " ".join(u.pos_tokens) if u.pos_tokens else "",
        "translation_en": u.translations.get("en", ""),
        "translation_other": json.dumps(other, ensure_ascii=False, sort_keys=True)
        if other
        else "",
    }


def serialize_corpus(corpus: Corpus, format: str = "delimited") -> bytes:
    """Serialize so that parse_corpus(serialize_corpus(c)) == c field-for-field."""
    if format not in FORMATS:
        raise ConfigError(f"unknown corpus format {format!r}")
    if format == "delimited":
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter="\t", quotechar='"', lineterminator="\n")
        writer.writerow(DELIMITED_COLUMNS)
        for u in corpus.utterances:
            row = _utterance_row(u)
            writer.writerow([row[c] for c in DELIMITED_COLUMNS])
        return buf.getvalue().encode("utf-8")
    lines = []
    for u in corpus.utterances:
        obj = {
            "id": u.id,
            "speaker": u.speaker,
            "audio": u.audio_ref,
            "duration_s": u.duration,
            "text": list(u.text_tokens),
        }
        if u.ipa_tokens:
            obj["ipa"] = list(u.ipa_tokens)
        if u.gloss_tokens:
            obj["gloss"] = list(u.gloss_tokens)
        if u.pos_tokens:
            obj["pos"] = list(u.pos_tokens)
        if "en" in u.translations:
            obj["translation_en"] = u.translations["en"]
        other = {k: v for k, v in u.translations.items() if k != "en"}
        if other:
            obj["translation_other"] = other
        lines.append(json.dumps(obj, ensure_ascii=False, sort_keys=True))
    return ("\n".join(lines) + ("\n" if lines else "")).encode("utf-8")


# ---------------------------------------------------------------------------
# splitting


def split_corpus(corpus: Corpus, spec: SplitSpec) -> tuple[Corpus, Corpus, Corpus]:
    """Deterministic utterance-level split; speakers may overlap splits.

    Val/test sizes are round(fraction * N); the remainder goes to train.
    Membership is a pure function of (spec.seed, utterance order); original
    corpus order is preserved within each split.
    """
    n = len(corpus.utterances)
    if n == 0:
        raise ToolkitError("cannot split an empty corpus")
    n_val = int(round(spec.val_fraction * n))
    n_test = int(round(spec.test_fraction * n))
    if n_val + n_test > n:
        raise ConfigError("val + test fractions leave no training data")
    n_train = n - n_val - n_test

    rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
    order = rng.permutation(n)
    buckets = {
        "train": sorted(order[:n_train]),
        "val": sorted(order[n_train : n_train + n_val]),
        "test": sorted(order[n_train + n_val :]),
    }

    def sub(name):
        utts = tuple(corpus.utterances[i] for i in buckets[name])
        label = f"{corpus.name}.{name}" if corpus.name else name
        return Corpus(label, utts, corpus.transcription_mode)

    return sub("train"), sub("val"), sub("test")
