"""TTS synthesis manifests and combined training manifests.

Synthetic sentences are assigned round-robin to a fixed set of exactly
five voices (no speaker cloning), and combined with the original corpus
at a 1:1 ratio by default. Everything here is a pure transformation over
immutable inputs; file formats are JSON lines.
"""

from __future__ import annotations

import io
import json
import warnings
from dataclasses import dataclass

from .augment import AugmentedSentence
from .corpus import Corpus, _decode_utf8
from .errors import ConfigError, ParseError, ToolkitError

TARGET_SAMPLE_RATE = 16000
VOICE_COUNT = 5
DEFAULT_VOICES = ("alder", "birch", "cedar", "dahlia", "elm")


@dataclass(frozen=True)
class SynthesisEntry:
    """One line of a TTS manifest: what to say and which voice says it."""

    id: str
    text: str
    voice_id: str
    method: str
    target_sample_rate: int = TARGET_SAMPLE_RATE

    def __post_init__(self):
        if not self.text:
            raise ToolkitError(f"synthesis entry {self.id!r} has empty text")


@dataclass(frozen=True)
class ManifestEntry:
    id: str
    audio_ref: str
    transcript: str
    origin: str  # "original" | "synthetic"


@dataclass(frozen=True)
class TrainingManifest:
    entries: tuple[ManifestEntry, ...]
    ratio: float

    def __post_init__(self):
        ids = [e.id for e in self.entries]
        if len(ids) != len(set(ids)):
            raise ToolkitError("training manifest ids are not unique")


def assign_voices(sentences, voices=DEFAULT_VOICES) -> list[SynthesisEntry]:
    """Round-robin the five configured voices over the sentences.

    Per-voice counts end up within 1 of each other; assignment depends
    only on sentence order, so reruns are identical.
    """
    voices = tuple(voices)
    if len(voices) != VOICE_COUNT:
        raise ConfigError(f"exactly {VOICE_COUNT} voices required, got {len(voices)}")
    sentences = list(sentences)
    if not sentences:
        raise ToolkitError("no sentences to assign voices to")
    entries = []
    for i, s in enumerate(sentences):
        entries.append(
            SynthesisEntry(
                id=f"{s.origin_id}__{s.method}__{i:05d}",
                text=" ".join(s.tokens),
                voice_id=voices[i % VOICE_COUNT],
                method=s.method,
            )
        )
    return entries


def emit_manifest(entries) -> bytes:
    """Serialize synthesis entries as JSON lines."""
    buf = io.StringIO()
    for e in entries:
        buf.write(
            json.dumps(
                {
                    "id": e.id,
                    "text": e.text,
                    "voice": e.voice_id,
                    "method": e.method,
                    "sample_rate": e.target_sample_rate,
                },
                ensure_ascii=False,
                sort_keys=True,
            )
        )
        buf.write("\n")
    return buf.getvalue().encode("utf-8")


def parse_manifest(source) -> list[SynthesisEntry]:
    text = _decode_utf8(source)
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", line=lineno)
        entries.append(
            SynthesisEntry(
                id=obj["id"],
                text=obj["text"],
                voice_id=obj["voice"],
                method=obj["method"],
                target_sample_rate=int(obj.get("sample_rate", TARGET_SAMPLE_RATE)),
            )
        )
    return entries


def mix_training_set(
    original: Corpus,
    synthetic_audio_index: dict[str, str],
    entries,
    allow_oversampling: bool = False,
) -> TrainingManifest:
    """Interleave original and synthetic utterances into one manifest.

    Ratios above 1:1 are refused unless allow_oversampling is set (and
    then warned about), since oversampling synthetic data is known to
    hurt. An empty entry list yields the originals-only baseline
    (ratio 0.0).
    """
    entries = list(entries)
    missing = [e.id for e in entries if e.id not in synthetic_audio_index]
    if missing:
        raise ToolkitError(f"no synthesized audio for ids: {missing}")
    if len(original) == 0:
        raise ToolkitError("original corpus is empty")
    ratio = len(entries) / len(original)
    if ratio > 1.0:
        if not allow_oversampling:
            raise ConfigError(
                f"synthetic:original ratio {ratio:.2f} exceeds 1:1; "
                "pass allow_oversampling to override"
            )
        warnings.warn(
            f"synthetic:original ratio {ratio:.2f} exceeds 1:1, which tends "
            "to hurt fine-tuning",
            stacklevel=2,
        )

    originals = [
        ManifestEntry(
            id=u.id,
            audio_ref=u.audio_ref,
            transcript=" ".join(original.primary_tokens(u)),
            origin="original",
        )
        for u in original
    ]
    synthetics = [
        ManifestEntry(
            id=e.id,
            audio_ref=synthetic_audio_index[e.id],
            transcript=e.text,
            origin="synthetic",
        )
        for e in entries
    ]
    mixed: list[ManifestEntry] = []
    for i in range(max(len(originals), len(synthetics))):
        if i < len(originals):
            mixed.append(originals[i])
        if i < len(synthetics):
            mixed.append(synthetics[i])
    return TrainingManifest(entries=tuple(mixed), ratio=ratio)


def emit_training_manifest(manifest: TrainingManifest) -> bytes:
    buf = io.StringIO()
    for e in manifest.entries:
        buf.write(
            json.dumps(
                {
                    "id": e.id,
                    "audio": e.audio_ref,
                    "transcript": e.transcript,
                    "origin": e.origin,
                },
                ensure_ascii=False,
                sort_keys=True,
            )
        )
        buf.write("\n")
    return buf.getvalue().encode("utf-8")


def parse_training_manifest(source) -> list[ManifestEntry]:
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
            ManifestEntry(
                id=obj["id"],
                audio_ref=obj["audio"],
                transcript=obj["transcript"],
                origin=obj.get("origin", "original"),
            )
        )
    return out
