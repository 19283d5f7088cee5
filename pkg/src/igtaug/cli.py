"""Single entry point exposing the pipeline as subcommands.

Exit codes: 0 success, 1 usage error, 2 data/configuration error.
With --json, machine-readable JSON goes to stdout; otherwise human tables.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import augment as aug
from . import config as cfgmod
from . import corpus as cp
from . import lexicon as lx
from . import metrics as mt
from . import synthesis as sy
from .errors import ConfigError, ToolkitError


def _detect_format(path, explicit=None):
    if explicit:
        return explicit
    suffix = Path(path).suffix.lower()
    return "json_lines" if suffix in (".jsonl", ".ndjson", ".json") else "delimited"


def _load_corpus(path, fmt=None, mode="orthographic"):
    fmt = _detect_format(path, fmt)
    with open(path, "rb") as fh:
        return cp.parse_corpus(
            fh, format=fmt, name=Path(path).stem, transcription_mode=mode
        )


def _read_lines(path):
    with open(path, encoding="utf-8") as fh:
        return [line.rstrip("\n") for line in fh]


def _read_inventory(path):
    if path is None:
        return None
    return [t for t in Path(path).read_text(encoding="utf-8").split() if t]


_FORMAT_OPT = click.option(
    "--format", "fmt", type=click.Choice(cp.FORMATS), default=None,
    help="Corpus file format (default: inferred from extension).",
)
_MODE_OPT = click.option(
    "--transcription-mode", "mode", type=click.Choice(cp.TRANSCRIPTION_MODES),
    default="orthographic", show_default=True,
    help="Which token stream is primary.",
)


@click.group(name="igtaug")
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="TOML config file; flags override its values.")
@click.option("--seed", type=int, default=None, help="Master random seed.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON on stdout.")
@click.pass_context
def cli(ctx, config_path, seed, as_json):
    """Corpus augmentation and evaluation toolkit for low-resource ASR."""
    ctx.obj = {
        "config": cfgmod.load_config(config_path, {"seed": seed}),
        "json": as_json,
    }


@cli.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path())
@click.option("--train", "train_path", type=click.Path(), default=None,
              help="Explicit training split (default: derived via the split spec).")
@click.option("--train-fraction", type=float, default=None)
@click.option("--val-fraction", type=float, default=None)
@click.option("--test-fraction", type=float, default=None)
@click.option("--llm-tokens", type=click.Path(), default=None,
              help="Whitespace-separated LLM-generated tokens for the OOV column.")
@click.option("--by-type", is_flag=True, help="Count OOV over word types.")
@_FORMAT_OPT
@_MODE_OPT
@click.pass_context
def stats(ctx, corpus_path, train_path, train_fraction, val_fraction,
          test_fraction, llm_tokens, by_type, fmt, mode):
    """Summary statistics row for a corpus and its training split."""
    cfg = _override_fractions(ctx.obj["config"], train_fraction, val_fraction,
                              test_fraction)
    full = _load_corpus(corpus_path, fmt, mode)
    if train_path:
        train = _load_corpus(train_path, None, mode)
    else:
        train, _, _ = cp.split_corpus(full, cfg.split_spec())
    tokens = None
    if llm_tokens:
        tokens = Path(llm_tokens).read_text(encoding="utf-8").split()
        if by_type:
            tokens = list(dict.fromkeys(tokens))
    row = lx.corpus_stats(full, train, tokens)
    if ctx.obj["json"]:
        click.echo(json.dumps(_stats_dict(row), sort_keys=True))
    else:
        _print_stats_table(row)


def _override_fractions(cfg, train_f, val_f, test_f):
    from dataclasses import replace

    updates = {}
    if train_f is not None:
        updates["train_fraction"] = train_f
        if val_f is None and test_f is None:
            rest = (1.0 - train_f) / 2.0
            updates["val_fraction"] = rest
            updates["test_fraction"] = rest
    if val_f is not None:
        updates["val_fraction"] = val_f
    if test_f is not None:
        updates["test_fraction"] = test_f
    return replace(cfg, **updates).validate() if updates else cfg


def _stats_dict(row):
    d = {
        "minutes": row.minutes,
        "speakers": row.speakers,
        "total_words": row.total_words,
        "total_unique": row.total_unique,
        "train_words": row.train_words,
        "train_unique": row.train_unique,
        "gloss_count": row.gloss_count,
        "pct_alt": row.pct_alt,
    }
    if row.pct_out is not None:
        d["pct_out"] = row.pct_out
    return d


def _print_stats_table(row):
    headers = ["Minutes", "Speakers", "Total Words", "Total Unique",
               "Train Words", "Train Unique", "Gloss", "% Alt.", "% Out"]
    values = [f"{row.minutes:.1f}", str(row.speakers), str(row.total_words),
              str(row.total_unique), str(row.train_words),
              str(row.train_unique), str(row.gloss_count),
              f"{row.pct_alt:.1f}",
              f"{row.pct_out:.1f}" if row.pct_out is not None else "-"]
    widths = [max(len(h), len(v)) for h, v in zip(headers, values)]
    click.echo("  ".join(h.rjust(w) for h, w in zip(headers, widths)))
    click.echo("  ".join(v.rjust(w) for v, w in zip(values, widths)))


@cli.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path())
@click.option("--out-dir", required=True, type=click.Path())
@click.option("--train-fraction", type=float, default=None)
@click.option("--val-fraction", type=float, default=None)
@click.option("--test-fraction", type=float, default=None)
@_FORMAT_OPT
@_MODE_OPT
@click.pass_context
def split(ctx, corpus_path, out_dir, train_fraction, val_fraction,
          test_fraction, fmt, mode):
    """Deterministically split a corpus into train/val/test files."""
    cfg = _override_fractions(ctx.obj["config"], train_fraction, val_fraction,
                              test_fraction)
    fmt = _detect_format(corpus_path, fmt)
    full = _load_corpus(corpus_path, fmt, mode)
    parts = cp.split_corpus(full, cfg.split_spec())
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ext = ".jsonl" if fmt == "json_lines" else ".tsv"
    written = {}
    for name, part in zip(("train", "val", "test"), parts):
        path = out / f"{name}{ext}"
        path.write_bytes(cp.serialize_corpus(part, fmt))
        written[name] = {"path": str(path), "utterances": len(part)}
    if ctx.obj["json"]:
        click.echo(json.dumps(written, sort_keys=True))
    else:
        for name, info in written.items():
            click.echo(f"{name}: {info['utterances']} utterances -> {info['path']}")


@cli.command()
@click.option("--train", "train_path", required=True, type=click.Path())
@click.option("--out", "out_path", type=click.Path(), default=None)
@_MODE_OPT
@click.pass_context
def lexicon(ctx, train_path, out_path, mode):
    """Build the gloss -> words lexicon from a training split."""
    train = _load_corpus(train_path, None, mode)
    lex = lx.build_lexicon(train)
    payload = json.dumps(
        {g: list(ws) for g, ws in lex.entries.items()},
        ensure_ascii=False, indent=2, sort_keys=True,
    )
    if out_path:
        Path(out_path).write_text(payload + "\n", encoding="utf-8")
        click.echo(f"{len(lex)} gloss entries -> {out_path}")
    else:
        click.echo(payload)


@cli.command()
@click.option("--method", type=click.Choice(["gloss", "random"]), required=True)
@click.option("--seed", type=int, default=None, help="Override the master seed.")
@click.option("--train", "train_path", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--workers", type=int, default=None)
@click.option("--frequency-weighted", is_flag=True,
              help="Sample random replacements by token frequency.")
@_MODE_OPT
@click.pass_context
def augment(ctx, method, seed, train_path, out_path, workers,
            frequency_weighted, mode):
    """Generate synthetic sentences at a 1:1 ratio with the training split."""
    cfg = ctx.obj["config"]
    train = _load_corpus(train_path, None, mode)
    sentences = aug.augment_corpus(
        train, method, seed if seed is not None else cfg.seed,
        workers=workers, frequency_weighted=frequency_weighted,
    )
    Path(out_path).write_bytes(aug.sentences_to_jsonl(sentences))
    click.echo(f"{len(sentences)} synthetic sentences -> {out_path}")


@cli.command()
@click.option("--train", "train_path", required=True, type=click.Path())
@click.option("--language", required=True)
@click.option("--description", required=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
@_MODE_OPT
@click.pass_context
def prompt(ctx, train_path, language, description, out_path, mode):
    """Build the LLM generation prompt for a training split."""
    train = _load_corpus(train_path, None, mode)
    text = aug.build_llm_prompt(aug.make_prompt_spec(train, language, description))
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
        click.echo(f"prompt -> {out_path}")
    else:
        click.echo(text, nl=False)


@cli.command("ingest-llm")
@click.option("--raw", "raw_path", required=True, type=click.Path())
@click.option("--train", "train_path", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--report", "report_path", type=click.Path(), default=None)
@_MODE_OPT
@click.pass_context
def ingest_llm(ctx, raw_path, train_path, out_path, report_path, mode):
    """Validate raw LLM output and keep the structurally sound sentences."""
    train = _load_corpus(train_path, None, mode)
    with open(raw_path, "rb") as fh:
        report = aug.validate_llm_output(fh, train)
    Path(out_path).write_bytes(aug.sentences_to_jsonl(report.accepted))
    summary = {
        "accepted": len(report.accepted),
        "rejected_count": report.rejected_count,
        "rejection_reasons": report.rejection_reasons,
        "oov_rate": report.oov_rate,
    }
    if report_path:
        Path(report_path).write_text(
            json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    if ctx.obj["json"]:
        click.echo(json.dumps(summary, sort_keys=True))
    else:
        click.echo(
            f"accepted {summary['accepted']}, rejected {summary['rejected_count']}, "
            f"OOV {summary['oov_rate']:.1f}%"
        )


@cli.command()
@click.option("--sentences", "sentences_path", required=True, type=click.Path(),
              help="JSON-lines of augmented sentences.")
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--voices", default=None,
              help="Comma-separated list of exactly 5 voice names.")
@click.pass_context
def manifest(ctx, sentences_path, out_path, voices):
    """Turn synthetic sentences into a five-voice TTS synthesis manifest."""
    cfg = ctx.obj["config"]
    with open(sentences_path, "rb") as fh:
        sentences = aug.sentences_from_jsonl(fh)
    voice_list = tuple(v.strip() for v in voices.split(",")) if voices else cfg.voices
    entries = sy.assign_voices(sentences, voice_list)
    Path(out_path).write_bytes(sy.emit_manifest(entries))
    click.echo(f"{len(entries)} synthesis entries -> {out_path}")


@cli.command()
@click.option("--train", "train_path", required=True, type=click.Path(),
              help="Original training corpus.")
@click.option("--audio-index", "index_path", type=click.Path(), default=None,
              help="JSON-lines id->audio mapping from the TTS step.")
@click.option("--manifest", "manifest_path", type=click.Path(), default=None)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--allow-baseline", is_flag=True,
              help="Permit a manifest with no synthetic entries (ratio 0).")
@click.option("--allow-oversampling", is_flag=True,
              help="Permit a synthetic:original ratio above 1:1.")
@_MODE_OPT
@click.pass_context
def mix(ctx, train_path, index_path, manifest_path, out_path,
        allow_baseline, allow_oversampling, mode):
    """Combine original and synthetic data into one training manifest."""
    train = _load_corpus(train_path, None, mode)
    entries = []
    if manifest_path:
        with open(manifest_path, "rb") as fh:
            entries = sy.parse_manifest(fh)
    if not entries and not allow_baseline:
        raise ConfigError(
            "no synthetic entries; pass --allow-baseline for an originals-only "
            "manifest"
        )
    index = {}
    if index_path:
        with open(index_path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    obj = json.loads(line)
                    index[obj["id"]] = obj["audio"]
    mixed = sy.mix_training_set(train, index, entries,
                                allow_oversampling=allow_oversampling)
    Path(out_path).write_bytes(sy.emit_training_manifest(mixed))
    click.echo(
        f"{len(mixed.entries)} manifest entries (ratio {mixed.ratio:.2f}) "
        f"-> {out_path}"
    )


@cli.command()
@click.option("--refs", "refs_path", required=True, type=click.Path())
@click.option("--hyps", "hyps_path", required=True, type=click.Path())
@click.option("--metric", type=click.Choice(mt.METRICS), required=True)
@click.option("--inventory", "inventory_path", type=click.Path(), default=None)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.pass_context
def evaluate(ctx, refs_path, hyps_path, metric, inventory_path, out_path):
    """Score a hypothesis file against references (one utterance per line)."""
    refs = _read_lines(refs_path)
    hyps = _read_lines(hyps_path)
    report = mt.error_rate(refs, hyps, metric,
                           inventory=_read_inventory(inventory_path))
    payload = json.dumps(report.as_dict(), sort_keys=True)
    if out_path:
        Path(out_path).write_text(payload + "\n", encoding="utf-8")
    if ctx.obj["json"] or not out_path:
        click.echo(payload if ctx.obj["json"]
                   else f"{metric.upper()}: {report.corpus_rate:.2f}%")


@cli.command()
@click.option("--refs", "refs_path", required=True, type=click.Path())
@click.option("--baseline", "baseline_path", required=True, type=click.Path())
@click.option("--system", "system_path", required=True, type=click.Path())
@click.option("--metric", type=click.Choice(mt.METRICS), required=True)
@click.option("--replicates", type=int, default=10000, show_default=True)
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--inventory", "inventory_path", type=click.Path(), default=None)
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.pass_context
def significance(ctx, refs_path, baseline_path, system_path, metric,
                 replicates, alpha, seed, inventory_path, out_path):
    """Paired-bootstrap comparison of a system against a baseline."""
    cfg = ctx.obj["config"]
    report = mt.paired_bootstrap(
        _read_lines(refs_path),
        _read_lines(baseline_path),
        _read_lines(system_path),
        metric,
        replicates=replicates,
        alpha=alpha,
        seed=seed if seed is not None else cfg.seed,
        inventory=_read_inventory(inventory_path),
    )
    payload = report.to_json()
    if out_path:
        Path(out_path).write_text(payload + "\n", encoding="utf-8")
    if ctx.obj["json"]:
        click.echo(payload)
    else:
        marker = "*" if report.significant else ""
        click.echo(
            f"{metric.upper()}: baseline {report.rate_a:.2f}% vs system "
            f"{report.rate_b:.2f}% (p={report.p_value:.4f}{marker})"
        )


def run(argv) -> int:
    """Invoke the CLI; returns the process exit code instead of exiting."""
    try:
        cli.main(args=list(argv), prog_name="igtaug", standalone_mode=False)
        return 0
    except click.UsageError as e:
        click.echo(e.format_message(), err=True)
        if e.ctx is not None:
            click.echo(e.ctx.get_usage(), err=True)
        return 1
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.Abort:
        return 1
    except ToolkitError as e:
        click.echo(f"error: {e}", err=True)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
