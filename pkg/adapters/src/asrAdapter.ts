#!/usr/bin/env node
/**
 * Batch ASR adapter.
 *
 * Trains the built-in vector-quantization acoustic matcher on a training
 * manifest (JSON lines with id, audio, transcript, origin), decodes every
 * entry of a test manifest (JSON lines with id and audio), and writes one
 * hypothesis line per test entry, in manifest order, to the --hyp file.
 * Any entry whose audio file is missing aborts the run with the offending
 * ids listed.
 */

import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { ConfigError, loadConfig } from "./config.js";
import { extractFeatures } from "./features.js";
import { parseArgs, readJsonl } from "./io.js";
import { decode, trainModel } from "./model.js";
import { decodeWav } from "./wav.js";

interface TrainEntry {
  id: string;
  audio: string;
  transcript: string;
  origin?: string;
}

interface TestEntry {
  id: string;
  audio: string;
}

function loadFrames(audioPath: string, expectedRate: number): Float32Array[] {
  const wav = decodeWav(fs.readFileSync(audioPath));
  if (wav.sampleRate !== expectedRate) {
    throw new Error(`${audioPath}: expected ${expectedRate} Hz audio, got ${wav.sampleRate}`);
  }
  return extractFeatures(wav.samples, wav.sampleRate);
}

export function runAsr(trainPath: string, testPath: string, hypPath: string,
                       configPath?: string): { hypotheses: string[] } {
  const config = loadConfig(configPath);
  const trainEntries = readJsonl<TrainEntry>(trainPath);
  const testEntries = readJsonl<TestEntry>(testPath);
  if (trainEntries.length === 0) throw new Error(`${trainPath}: empty training manifest`);
  if (testEntries.length === 0) throw new Error(`${testPath}: empty test manifest`);

  const missing = [...trainEntries, ...testEntries]
    .filter((e) => !e.audio || !fs.existsSync(e.audio))
    .map((e) => e.id);
  if (missing.length > 0) {
    throw new Error(`missing audio for: ${missing.join(", ")}`);
  }

  const trainData = trainEntries.map((e) => ({
    frames: loadFrames(e.audio, config.sample_rate),
    transcript: e.transcript ?? "",
  }));
  const model = trainModel(trainData, {
    codebookSize: config.codebook_size,
    epochs: config.epochs,
    learningRate: config.learning_rate,
    seed: config.seed,
  });

  const hypotheses = testEntries.map((e) =>
    decode(model, loadFrames(e.audio, config.sample_rate)));
  fs.writeFileSync(hypPath, hypotheses.join("\n") + "\n");
  return { hypotheses };
}

export function main(argv: string[]): number {
  let options: Record<string, string | boolean>;
  try {
    ({ options } = parseArgs(argv, { train: {}, test: {}, config: {}, hyp: {} }));
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 2;
  }
  const train = options.train as string | undefined;
  const test = options.test as string | undefined;
  const hyp = options.hyp as string | undefined;
  if (!train || !test || !hyp) {
    console.error("usage: asr-adapter --train TRAIN.jsonl --test TEST.jsonl [--config C.json] --hyp OUT.txt");
    return 2;
  }
  try {
    const { hypotheses } = runAsr(train, test, hyp, options.config as string | undefined);
    console.log(`decoded ${hypotheses.length} utterances -> ${hyp}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return err instanceof ConfigError ? 2 : 1;
  }
}

const invokedDirectly = process.argv[1] &&
  path.resolve(process.argv[1]) === fileURLToPath(import.meta.url);
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
