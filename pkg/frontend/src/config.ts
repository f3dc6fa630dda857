/**
 * Fine-tuning configuration.
 *
 * Defaults are the published recipe for this task family: learning
 * rate 3e-5 warmed up from zero, gradient clipping at 1.0, dropout 0.1
 * before the output layer, sequences capped at 500 subword units,
 * batches of 12, early-stopping patience of 15 epochs. Every value can
 * be overridden (and whatever ran is logged into the checkpoint), so a
 * laptop-sized smoke run and a full training differ only in overrides.
 */
import { readFileSync } from "node:fs";

import { MalformedRow } from "./errors.js";

export interface FineTuneConfig {
  learningRate: number;
  /** Global-norm gradient clip. */
  gradientClip: number;
  /** Dropout probability applied before the output layer. */
  dropout: number;
  /** Cap on subword units per sequence, sentinels included. */
  maxSequenceLength: number;
  batchSize: number;
  /** Early stopping: epochs without a dev improvement before halting. */
  patience: number;
  /** Steps over which the learning rate ramps linearly from zero. */
  warmupSteps: number;
  maxEpochs: number;
  seed: number;
  /** Encoder size knobs (the stand-in for a pre-trained download). */
  vocabSize: number;
  embeddingDim: number;
  attentionHeads: number;
  encoderLayers: number;
  feedForwardDim: number;
}

export const DEFAULT_CONFIG: FineTuneConfig = {
  learningRate: 3e-5,
  gradientClip: 1.0,
  dropout: 0.1,
  maxSequenceLength: 500,
  batchSize: 12,
  patience: 15,
  warmupSteps: 100,
  maxEpochs: 100,
  seed: 0,
  vocabSize: 2000,
  embeddingDim: 64,
  attentionHeads: 4,
  encoderLayers: 2,
  feedForwardDim: 128,
};

const POSITIVE_FIELDS: (keyof FineTuneConfig)[] = [
  "learningRate",
  "gradientClip",
  "maxSequenceLength",
  "batchSize",
  "patience",
  "maxEpochs",
  "vocabSize",
  "embeddingDim",
  "attentionHeads",
  "encoderLayers",
  "feedForwardDim",
];

export function resolveConfig(overrides: Partial<FineTuneConfig> = {}): FineTuneConfig {
  for (const key of Object.keys(overrides)) {
    if (!(key in DEFAULT_CONFIG)) {
      throw new MalformedRow(`unknown config key ${JSON.stringify(key)}`);
    }
  }
  const config = { ...DEFAULT_CONFIG, ...overrides };
  for (const key of POSITIVE_FIELDS) {
    if (!(config[key] > 0)) {
      throw new MalformedRow(`config ${key} must be positive, got ${config[key]}`);
    }
  }
  if (config.dropout < 0 || config.dropout >= 1) {
    throw new MalformedRow(`config dropout must be in [0, 1), got ${config.dropout}`);
  }
  if (config.warmupSteps < 0) {
    throw new MalformedRow(`config warmupSteps must be >= 0, got ${config.warmupSteps}`);
  }
  if (config.embeddingDim % config.attentionHeads !== 0) {
    throw new MalformedRow(
      `embeddingDim ${config.embeddingDim} must divide evenly into ${config.attentionHeads} heads`,
    );
  }
  return config;
}

/**
 * Read a JSON config file mirroring FineTuneConfig field for field.
 * Unknown keys are rejected so typos cannot silently fall back to
 * defaults.
 */
export function loadConfigFile(path: string): Partial<FineTuneConfig> {
  let parsed: unknown;
  try {
    parsed = JSON.parse(readFileSync(path, "utf-8"));
  } catch (err) {
    throw new MalformedRow(`${path}: ${(err as Error).message}`);
  }
  if (typeof parsed !== "object" || parsed === null || Array.isArray(parsed)) {
    throw new MalformedRow(`${path}: config file must hold a JSON object`);
  }
  for (const [key, value] of Object.entries(parsed)) {
    if (!(key in DEFAULT_CONFIG)) {
      throw new MalformedRow(`${path}: unknown config key ${JSON.stringify(key)}`);
    }
    if (typeof value !== "number" || !Number.isFinite(value)) {
      throw new MalformedRow(`${path}: config ${key} must be a finite number`);
    }
  }
  return parsed as Partial<FineTuneConfig>;
}

/** Learning rate at a given optimizer step under linear warmup from zero. */
export function learningRateAt(step: number, config: FineTuneConfig): number {
  if (config.warmupSteps === 0) return config.learningRate;
  return config.learningRate * Math.min(1, step / config.warmupSteps);
}
