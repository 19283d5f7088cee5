import * as fs from "node:fs";
import { TARGET_SAMPLE_RATE } from "./synthesis.js";

export interface AdapterConfig {
  learning_rate: number;
  epochs: number;
  sample_rate: number;
  tts_engine: string;
  seed: number;
  codebook_size: number;
}

export const DEFAULT_CONFIG: AdapterConfig = {
  learning_rate: 1e-4,
  epochs: 20,
  sample_rate: TARGET_SAMPLE_RATE,
  tts_engine: "builtin",
  seed: 0,
  codebook_size: 16,
};

export class ConfigError extends Error {}

export function loadConfig(path?: string): AdapterConfig {
  let raw: Record<string, unknown> = {};
  if (path) {
    let parsed: unknown;
    try {
      parsed = JSON.parse(fs.readFileSync(path, "utf8"));
    } catch (err) {
      throw new ConfigError(`cannot read config ${path}: ${(err as Error).message}`);
    }
    if (typeof parsed !== "object" || parsed === null || Array.isArray(parsed)) {
      throw new ConfigError(`config ${path} must be a JSON object`);
    }
    raw = parsed as Record<string, unknown>;
  }
  const config = { ...DEFAULT_CONFIG };
  for (const [key, value] of Object.entries(raw)) {
    if (!(key in config)) throw new ConfigError(`unknown config key '${key}'`);
    if (key === "tts_engine") {
      if (typeof value !== "string") throw new ConfigError("tts_engine must be a string");
      config.tts_engine = value;
    } else {
      if (typeof value !== "number" || !Number.isFinite(value)) {
        throw new ConfigError(`config key '${key}' must be a finite number`);
      }
      (config as unknown as Record<string, number>)[key] = value;
    }
  }
  if (!Number.isInteger(config.epochs) || config.epochs < 1 || config.epochs > 200) {
    throw new ConfigError(`epochs must be an integer in [1, 200], got ${config.epochs}`);
  }
  if (config.learning_rate <= 0) {
    throw new ConfigError(`learning_rate must be positive, got ${config.learning_rate}`);
  }
  if (config.sample_rate !== TARGET_SAMPLE_RATE) {
    throw new ConfigError(`sample_rate is fixed at ${TARGET_SAMPLE_RATE}`);
  }
  if (config.tts_engine !== "builtin") {
    throw new ConfigError(`unknown tts_engine '${config.tts_engine}'`);
  }
  if (!Number.isInteger(config.codebook_size) || config.codebook_size < 2) {
    throw new ConfigError(`codebook_size must be an integer >= 2, got ${config.codebook_size}`);
  }
  return config;
}
