/**
 * Frame-level log filterbank energies.
 *
 * Frames of 400 samples (25 ms at 16 kHz) with a 160-sample hop (10 ms) are
 * reduced to a small vector of log band energies via Goertzel-style single-bin
 * DFT probes spaced geometrically across the speech band.
 */

export const FRAME_LEN = 400;
export const HOP_LEN = 160;
export const NUM_BANDS = 8;

const BAND_CENTERS_HZ = (() => {
  const lo = 80;
  const hi = 4000;
  const centers: number[] = [];
  for (let b = 0; b < NUM_BANDS; b++) {
    centers.push(lo * Math.pow(hi / lo, b / (NUM_BANDS - 1)));
  }
  return centers;
})();

function bandEnergy(frame: Float32Array, start: number, freq: number,
                    sampleRate: number): number {
  // Single-frequency DFT bin magnitude over the frame.
  let re = 0;
  let im = 0;
  const w = (2 * Math.PI * freq) / sampleRate;
  for (let i = 0; i < FRAME_LEN; i++) {
    const s = frame[start + i];
    re += s * Math.cos(w * i);
    im -= s * Math.sin(w * i);
  }
  return (re * re + im * im) / FRAME_LEN;
}

export function extractFeatures(samples: Float32Array, sampleRate: number): Float32Array[] {
  const frames: Float32Array[] = [];
  for (let start = 0; start + FRAME_LEN <= samples.length; start += HOP_LEN) {
    const vec = new Float32Array(NUM_BANDS);
    for (let b = 0; b < NUM_BANDS; b++) {
      vec[b] = Math.log(bandEnergy(samples, start, BAND_CENTERS_HZ[b], sampleRate) + 1e-10);
    }
    frames.push(vec);
  }
  if (frames.length === 0) {
    // Very short clip: zero-pad to one frame so every utterance has features.
    const padded = new Float32Array(FRAME_LEN);
    padded.set(samples.subarray(0, Math.min(samples.length, FRAME_LEN)));
    const vec = new Float32Array(NUM_BANDS);
    for (let b = 0; b < NUM_BANDS; b++) {
      vec[b] = Math.log(bandEnergy(padded, 0, BAND_CENTERS_HZ[b], sampleRate) + 1e-10);
    }
    frames.push(vec);
  }
  return frames;
}
