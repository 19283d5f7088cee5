/**
 * Vector-quantization acoustic matcher.
 *
 * Training fits a codebook to the pooled feature frames of the training
 * audio (one Lloyd update per epoch, step scaled by the learning rate), then
 * stores a code-usage histogram per training utterance. Decoding assigns the
 * test utterance's frames to codes and returns the transcript of the training
 * utterance with the closest histogram.
 */

import { NUM_BANDS } from "./features.js";

/** mulberry32: small fast seeded PRNG, deterministic across platforms. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export interface TrainedModel {
  codebook: Float32Array[];
  /** Per training utterance: normalized code histogram and its transcript. */
  exemplars: { histogram: Float32Array; transcript: string }[];
}

function sqDist(a: Float32Array, b: Float32Array): number {
  let d = 0;
  for (let i = 0; i < a.length; i++) {
    const diff = a[i] - b[i];
    d += diff * diff;
  }
  return d;
}

function nearestCode(codebook: Float32Array[], frame: Float32Array): number {
  let best = 0;
  let bestDist = Infinity;
  for (let k = 0; k < codebook.length; k++) {
    const d = sqDist(codebook[k], frame);
    if (d < bestDist) {
      bestDist = d;
      best = k;
    }
  }
  return best;
}

function histogram(codebook: Float32Array[], frames: Float32Array[]): Float32Array {
  const h = new Float32Array(codebook.length);
  for (const f of frames) h[nearestCode(codebook, f)] += 1;
  const total = frames.length || 1;
  for (let k = 0; k < h.length; k++) h[k] /= total;
  return h;
}

export function trainModel(
  utterances: { frames: Float32Array[]; transcript: string }[],
  options: { codebookSize: number; epochs: number; learningRate: number; seed: number },
): TrainedModel {
  const pooled: Float32Array[] = [];
  for (const u of utterances) pooled.push(...u.frames);
  if (pooled.length === 0) throw new Error("no feature frames to train on");

  const rng = mulberry32(options.seed);
  const k = Math.min(options.codebookSize, pooled.length);
  // Initialize centroids from randomly chosen frames (sampling w/o replacement).
  const order = pooled.map((_, i) => i);
  for (let i = order.length - 1; i > 0; i--) {
    const j = Math.floor(rng() * (i + 1));
    [order[i], order[j]] = [order[j], order[i]];
  }
  const codebook = order.slice(0, k).map((i) => Float32Array.from(pooled[i]));

  // The learning rate rescales how far each centroid moves toward the mean of
  // its assigned frames; a rate of 1/1e-4 recovers a plain Lloyd update.
  const step = Math.min(1, options.learningRate / 1e-4);
  for (let epoch = 0; epoch < options.epochs; epoch++) {
    const sums = codebook.map(() => new Float32Array(NUM_BANDS));
    const counts = new Float32Array(codebook.length);
    for (const frame of pooled) {
      const c = nearestCode(codebook, frame);
      counts[c] += 1;
      for (let b = 0; b < NUM_BANDS; b++) sums[c][b] += frame[b];
    }
    for (let c = 0; c < codebook.length; c++) {
      if (counts[c] === 0) {
        // Re-seed dead centroids from a random frame.
        codebook[c] = Float32Array.from(pooled[Math.floor(rng() * pooled.length)]);
        continue;
      }
      for (let b = 0; b < NUM_BANDS; b++) {
        const mean = sums[c][b] / counts[c];
        codebook[c][b] += step * (mean - codebook[c][b]);
      }
    }
  }

  const exemplars = utterances.map((u) => ({
    histogram: histogram(codebook, u.frames),
    transcript: u.transcript,
  }));
  return { codebook, exemplars };
}

export function decode(model: TrainedModel, frames: Float32Array[]): string {
  const h = histogram(model.codebook, frames);
  let best = 0;
  let bestDist = Infinity;
  for (let i = 0; i < model.exemplars.length; i++) {
    const d = sqDist(model.exemplars[i].histogram, h);
    if (d < bestDist) {
      bestDist = d;
      best = i;
    }
  }
  return model.exemplars[best].transcript;
}
