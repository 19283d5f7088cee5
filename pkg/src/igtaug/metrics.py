"""Edit-distance scoring (WER/CER/PER) and paired-bootstrap significance.

Conventions pinned here (the common ones are ambiguous in the wild):

* corpus rates are pooled: 100 * sum(S+D+I) / sum(ref_len), not a mean of
  per-utterance rates
* character mode collapses whitespace runs to a single space and keeps
  that space as a token, so word-boundary errors are penalized
* backtrace ties prefer substitution over insertion over deletion; the
  total distance is tie-break independent
* the bootstrap p-value uses add-one smoothing: (k + 1) / (B + 1)
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass

import numpy as np
import regex as _regex

from .errors import (
    ConfigError,
    PairingError,
    SegmentationError,
    ToolkitError,
    UndefinedRateError,
)

METRICS = ("wer", "cer", "per")
_GRAPHEME = _regex.compile(r"\X")

# Unicode categories that attach to the preceding base segment in phoneme
# mode: modifier letters/symbols (superscripts, length marks) on top of the
# combining marks already merged into grapheme clusters.
_ATTACHING_CATEGORIES = {"Lm", "Sk", "Mn", "Mc", "Me"}

# Combining double-articulation tie bars link the next base segment into
# the same phoneme (affricates like a stop + fricative pair).
_TIE_BARS = ("͡", "͜")


def _graphemes(text: str) -> list[str]:
    return _GRAPHEME.findall(text)


def tokenize(text: str, mode: str, inventory=None) -> list[str]:
    """Tokenize NFC text for scoring.

    word: whitespace split. character: whitespace runs collapse to one
    space which stays a token. phoneme: greedy longest match against the
    inventory when given, else grapheme clusters with modifier letters
    attached to the preceding base; spaces are dropped.
    """
    if mode == "word":
        return text.split()
    if mode == "character":
        collapsed = " ".join(text.split())
        return _graphemes(collapsed)
    if mode != "phoneme":
        raise ConfigError(f"unknown tokenize mode {mode!r}")
    if inventory:
        return _segment_with_inventory(text, inventory)
    tokens: list[str] = []
    for cluster in _graphemes(text):
        if cluster.isspace():
            continue
        if tokens and (
            unicodedata.category(cluster[0]) in _ATTACHING_CATEGORIES
            or tokens[-1].endswith(_TIE_BARS)
        ):
            tokens[-1] += cluster
        else:
            tokens.append(cluster)
    return tokens


def _segment_with_inventory(text: str, inventory) -> list[str]:
    units = sorted(set(inventory), key=len, reverse=True)
    tokens = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        for unit in units:
            if text.startswith(unit, i):
                tokens.append(unit)
                i += len(unit)
                break
        else:
            raise SegmentationError(text, i)
    return tokens


@dataclass(frozen=True)
class AlignmentCounts:
    substitutions: int
    deletions: int
    insertions: int
    hits: int
    ref_len: int

    def __post_init__(self):
        counts = (
            self.substitutions,
            self.deletions,
            self.insertions,
            self.hits,
            self.ref_len,
        )
        if any(c < 0 for c in counts):
            raise ToolkitError("negative alignment count")
        if self.substitutions + self.deletions + self.hits != self.ref_len:
            raise ToolkitError("S + D + hits must equal ref_len")

    @property
    def errors(self) -> int:
        return self.substitutions + self.deletions + self.insertions

    def as_dict(self):
        return {
            "substitutions": self.substitutions,
            "deletions": self.deletions,
            "insertions": self.insertions,
            "hits": self.hits,
            "ref_len": self.ref_len,
        }


def edit_distance(ref, hyp) -> AlignmentCounts:
    """Minimal unit-cost alignment of hyp against ref.

    Deletion = ref token with no hyp counterpart; insertion = extra hyp
    token. Backtrace ties resolve match > substitution > insertion >
    deletion so the S/D/I decomposition is reproducible.
    """
    ref = list(ref)
    hyp = list(hyp)
    n, m = len(ref), len(hyp)
    dist = np.zeros((n + 1, m + 1), dtype=np.int64)
    dist[:, 0] = np.arange(n + 1)
    dist[0, :] = np.arange(m + 1)
    for i in range(1, n + 1):
        ri = ref[i - 1]
        row = dist[i]
        prev = dist[i - 1]
        for j in range(1, m + 1):
            cost = 0 if ri == hyp[j - 1] else 1
            row[j] = min(prev[j - 1] + cost, row[j - 1] + 1, prev[j] + 1)

    subs = dels = ins = hits = 0
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and ref[i - 1] == hyp[j - 1] and dist[i, j] == dist[i - 1, j - 1]:
            hits += 1
            i -= 1
            j -= 1
        elif i > 0 and j > 0 and dist[i, j] == dist[i - 1, j - 1] + 1:
            subs += 1
            i -= 1
            j -= 1
        elif j > 0 and dist[i, j] == dist[i, j - 1] + 1:
            ins += 1
            j -= 1
        else:
            dels += 1
            i -= 1
    return AlignmentCounts(subs, dels, ins, hits, n)


@dataclass(frozen=True)
class EvalReport:
    metric: str
    corpus_rate: float
    per_utterance: tuple[tuple[str, AlignmentCounts], ...]

    def as_dict(self):
        return {
            "metric": self.metric,
            "corpus_rate": self.corpus_rate,
            "per_utterance": [
                {"id": uid, **counts.as_dict()} for uid, counts in self.per_utterance
            ],
        }


def _mode_for_metric(metric: str) -> str:
    if metric not in METRICS:
        raise ConfigError(f"unknown metric {metric!r}; expected one of {METRICS}")
    return {"wer": "word", "cer": "character", "per": "phoneme"}[metric]


def _pair_counts(refs, hyps, metric, inventory=None) -> list[AlignmentCounts]:
    if len(refs) != len(hyps):
        raise PairingError(
            f"{len(refs)} references but {len(hyps)} hypotheses; "
            "inputs must be index-aligned"
        )
    if not refs:
        raise ToolkitError("reference list is empty")
    mode = _mode_for_metric(metric)
    counts = []
    for ref, hyp in zip(refs, hyps):
        counts.append(
            edit_distance(
                tokenize(ref, mode, inventory), tokenize(hyp, mode, inventory)
            )
        )
    return counts


def error_rate(refs, hyps, metric: str, inventory=None, ids=None) -> EvalReport:
    """Score hypotheses against references, pooled over the whole corpus."""
    counts = _pair_counts(refs, hyps, metric, inventory)
    total_ref = sum(c.ref_len for c in counts)
    if total_ref == 0:
        raise UndefinedRateError("all references are empty; rate undefined")
    total_err = sum(c.errors for c in counts)
    if ids is None:
        ids = [str(i) for i in range(len(counts))]
    return EvalReport(
        metric=metric,
        corpus_rate=100.0 * total_err / total_ref,
        per_utterance=tuple(zip(ids, counts)),
    )


@dataclass(frozen=True)
class SignificanceReport:
    metric: str
    rate_a: float
    rate_b: float
    mean_delta: float
    p_value: float
    significant: bool
    replicates: int
    alpha: float
    seed: int

    def as_dict(self):
        return {
            "metric": self.metric,
            "rate_a": self.rate_a,
            "rate_b": self.rate_b,
            "mean_delta": self.mean_delta,
            "p_value": self.p_value,
            "significant": self.significant,
            "replicates": self.replicates,
            "alpha": self.alpha,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def _resample_indices(seed: int, replicate: int, n: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(replicate,)))
    return rng.integers(0, n, size=n)


def paired_bootstrap(
    refs,
    hyps_a,
    hyps_b,
    metric: str,
    replicates: int = 10000,
    alpha: float = 0.05,
    seed: int = 0,
    inventory=None,
) -> SignificanceReport:
    """One-sided paired bootstrap: is system B better than baseline A?

    Per-utterance counts are computed once; each replicate resamples N
    utterance indices with replacement (substream keyed on the replicate
    index, so results do not depend on execution order) and pools counts.
    p = (#{replicates where rate_b - rate_a >= 0} + 1) / (replicates + 1).
    """
    if replicates < 1:
        raise ConfigError("replicates must be >= 1")
    if not 0 < alpha < 1:
        raise ConfigError("alpha must be in (0, 1)")
    if len(hyps_a) != len(refs) or len(hyps_b) != len(refs):
        raise PairingError("refs, baseline and system must have equal lengths")
    counts_a = _pair_counts(refs, hyps_a, metric, inventory)
    counts_b = _pair_counts(refs, hyps_b, metric, inventory)
    n = len(refs)

    err_a = np.array([c.errors for c in counts_a], dtype=np.float64)
    err_b = np.array([c.errors for c in counts_b], dtype=np.float64)
    ref_len = np.array([c.ref_len for c in counts_a], dtype=np.float64)
    if ref_len.sum() == 0:
        raise UndefinedRateError("all references are empty; rate undefined")

    idx = np.empty((replicates, n), dtype=np.int64)
    for r in range(replicates):
        idx[r] = _resample_indices(seed, r, n)
    pooled_ref = ref_len[idx].sum(axis=1)
    pooled_ref = np.where(pooled_ref == 0, 1.0, pooled_ref)
    rate_a_rep = 100.0 * err_a[idx].sum(axis=1) / pooled_ref
    rate_b_rep = 100.0 * err_b[idx].sum(axis=1) / pooled_ref
    delta = rate_b_rep - rate_a_rep

    k = int(np.count_nonzero(delta >= 0))
    p_value = (k + 1) / (replicates + 1)
    full_a = 100.0 * err_a.sum() / ref_len.sum()
    full_b = 100.0 * err_b.sum() / ref_len.sum()
    return SignificanceReport(
        metric=metric,
        rate_a=full_a,
        rate_b=full_b,
        mean_delta=float(delta.mean()),
        p_value=p_value,
        significant=p_value < alpha,
        replicates=replicates,
        alpha=alpha,
        seed=seed,
    )
