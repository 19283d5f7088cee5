#!/usr/bin/env node
/**
 * Batch TTS adapter.
 *
 * Reads a synthesis manifest (JSON lines with id, text, voice, method,
 * sample_rate), renders one 16 kHz mono WAV per entry into the output
 * directory, and writes an audio index (JSON lines with id, audio) suitable
 * for the igtaug `mix` subcommand. Entries that fail (e.g. unknown voice)
 * are reported and skipped; the index still covers the successful entries and
 * the process exits nonzero.
 */

import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { parseArgs, readJsonl, writeJsonl } from "./io.js";
import { getVoice, synthesize, TARGET_SAMPLE_RATE } from "./synthesis.js";
import { encodeWav } from "./wav.js";

interface ManifestEntry {
  id: string;
  text: string;
  voice: string;
  method?: string;
  sample_rate?: number;
}

export interface TtsResult {
  written: { id: string; audio: string }[];
  failures: { id: string; reason: string }[];
}

export function runTts(manifestPath: string, outDir: string): TtsResult {
  const entries = readJsonl<ManifestEntry>(manifestPath);
  fs.mkdirSync(outDir, { recursive: true });
  const written: { id: string; audio: string }[] = [];
  const failures: { id: string; reason: string }[] = [];
  for (const entry of entries) {
    try {
      if (!entry.id || typeof entry.text !== "string") {
        throw new Error("entry must have an id and text");
      }
      const rate = entry.sample_rate ?? TARGET_SAMPLE_RATE;
      if (rate !== TARGET_SAMPLE_RATE) {
        throw new Error(`sample_rate must be ${TARGET_SAMPLE_RATE}, got ${rate}`);
      }
      const voice = getVoice(entry.voice);
      const samples = synthesize(entry.text, voice, rate);
      const audioPath = path.join(outDir, `${entry.id}.wav`);
      fs.writeFileSync(audioPath, encodeWav(samples, rate));
      written.push({ id: entry.id, audio: audioPath });
    } catch (err) {
      failures.push({ id: entry.id ?? "<missing id>", reason: (err as Error).message });
    }
  }
  writeJsonl(path.join(outDir, "audio_index.jsonl"), written);
  return { written, failures };
}

export function main(argv: string[]): number {
  let options: Record<string, string | boolean>;
  try {
    ({ options } = parseArgs(argv, { manifest: {}, out: {} }));
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 2;
  }
  const manifest = options.manifest as string | undefined;
  const out = options.out as string | undefined;
  if (!manifest || !out) {
    console.error("usage: tts-adapter --manifest MANIFEST.jsonl --out DIR");
    return 2;
  }
  let result: TtsResult;
  try {
    result = runTts(manifest, out);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  console.log(`synthesized ${result.written.length} of ${result.written.length + result.failures.length} entries`);
  for (const f of result.failures) {
    console.error(`failed ${f.id}: ${f.reason}`);
  }
  return result.failures.length > 0 ? 1 : 0;
}

const invokedDirectly = process.argv[1] &&
  path.resolve(process.argv[1]) === fileURLToPath(import.meta.url);
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
