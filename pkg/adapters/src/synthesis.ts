/**
 * Deterministic built-in waveform synthesis.
 *
 * Each (text, voice) pair maps to a fixed audio signal: every character of the
 * text contributes a short tone segment whose pitch is derived from the
 * character code and the voice's base register. This is not natural speech,
 * but it is fully reproducible, runs offline, and gives downstream acoustic
 * models a consistent signal to fit.
 */

export const TARGET_SAMPLE_RATE = 16000;

export interface VoiceProfile {
  id: string;
  /** Base frequency in Hz for the lowest character tone. */
  baseHz: number;
  /** Relative strength of the second harmonic, shapes the timbre. */
  harmonic: number;
  /** Amplitude vibrato depth, 0..1. */
  vibrato: number;
}

export const BUILTIN_VOICES: readonly VoiceProfile[] = [
  { id: "alder", baseHz: 110, harmonic: 0.5, vibrato: 0.0 },
  { id: "birch", baseHz: 146, harmonic: 0.35, vibrato: 0.1 },
  { id: "cedar", baseHz: 174, harmonic: 0.25, vibrato: 0.0 },
  { id: "dahlia", baseHz: 220, harmonic: 0.4, vibrato: 0.15 },
  { id: "elm", baseHz: 98, harmonic: 0.6, vibrato: 0.05 },
];

export function getVoice(id: string): VoiceProfile {
  const voice = BUILTIN_VOICES.find((v) => v.id === id);
  if (!voice) {
    throw new Error(`unknown voice '${id}' (available: ${BUILTIN_VOICES.map((v) => v.id).join(", ")})`);
  }
  return voice;
}

const SEGMENT_S = 0.06; // per-character tone length
const GAP_S = 0.02; // silence between words

export function synthesize(text: string, voice: VoiceProfile,
                           sampleRate: number = TARGET_SAMPLE_RATE): Float32Array {
  const chars = Array.from(text);
  const segLen = Math.round(SEGMENT_S * sampleRate);
  const gapLen = Math.round(GAP_S * sampleRate);
  const chunks: Float32Array[] = [];
  for (const ch of chars) {
    if (/\s/.test(ch)) {
      chunks.push(new Float32Array(gapLen));
      continue;
    }
    const code = ch.codePointAt(0) ?? 0;
    // Map the character into one of 24 semitone steps above the voice base.
    const step = code % 24;
    const freq = voice.baseHz * Math.pow(2, step / 12);
    const seg = new Float32Array(segLen);
    for (let i = 0; i < segLen; i++) {
      const t = i / sampleRate;
      // Raised-cosine envelope avoids clicks at segment boundaries.
      const env = 0.5 * (1 - Math.cos((2 * Math.PI * i) / (segLen - 1)));
      const vib = 1 + voice.vibrato * Math.sin(2 * Math.PI * 6 * t);
      const fundamental = Math.sin(2 * Math.PI * freq * t);
      const overtone = voice.harmonic * Math.sin(2 * Math.PI * 2 * freq * t);
      seg[i] = 0.6 * env * vib * (fundamental + overtone) / (1 + voice.harmonic);
    }
    chunks.push(seg);
  }
  if (chunks.length === 0) chunks.push(new Float32Array(gapLen));
  const total = chunks.reduce((n, c) => n + c.length, 0);
  const out = new Float32Array(total);
  let pos = 0;
  for (const c of chunks) {
    out.set(c, pos);
    pos += c.length;
  }
  return out;
}
