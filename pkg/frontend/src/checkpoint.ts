/**
 * Checkpoint directory layout:
 *
 *   checkpoint/
 *     config.json   resolved FineTuneConfig + selection record
 *                   (best epoch, dev selection score, label count)
 *     labels.txt    BIO tag vocabulary, one per line, model order
 *     vocab.txt     subword vocabulary, one piece per line, id order
 *     weights.json  manifest: name, shape, offset into weights.bin
 *     weights.bin   all parameters as little-endian float32, concatenated
 *
 * Everything needed to predict is in the directory; nothing about the
 * training corpus is.
 */
import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { FineTuneConfig, resolveConfig } from "./config.js";
import { CheckpointError } from "./errors.js";
import type { NamedWeights } from "./model.js";
import { WordPiece } from "./wordpiece.js";

export interface SelectionRecord {
  bestEpoch: number;
  epochsRun: number;
  /** Dev strict-agreement score used only to pick the checkpoint. */
  devSelectionScore: number;
}

export interface Checkpoint {
  config: FineTuneConfig;
  selection: SelectionRecord;
  labels: string[];
  wordpiece: WordPiece;
  weights: NamedWeights;
}

interface ManifestEntry {
  name: string;
  shape: number[];
  offset: number;
  length: number;
}

export function saveCheckpoint(dir: string, checkpoint: Checkpoint): void {
  mkdirSync(dir, { recursive: true });

  const manifest: ManifestEntry[] = [];
  let offset = 0;
  const names = Object.keys(checkpoint.weights).sort();
  for (const name of names) {
    const { shape, values } = checkpoint.weights[name];
    manifest.push({ name, shape, offset, length: values.length });
    offset += values.length;
  }
  const flat = new Float32Array(offset);
  for (const entry of manifest) {
    flat.set(checkpoint.weights[entry.name].values, entry.offset);
  }

  writeFileSync(
    join(dir, "config.json"),
    JSON.stringify({ config: checkpoint.config, selection: checkpoint.selection }, null, 2) + "\n",
  );
  writeFileSync(join(dir, "labels.txt"), checkpoint.labels.join("\n") + "\n");
  writeFileSync(join(dir, "vocab.txt"), checkpoint.wordpiece.toLines());
  writeFileSync(join(dir, "weights.json"), JSON.stringify(manifest, null, 2) + "\n");
  writeFileSync(join(dir, "weights.bin"), Buffer.from(flat.buffer, 0, flat.byteLength));
}

export function loadCheckpoint(dir: string): Checkpoint {
  let configDoc: { config?: unknown; selection?: SelectionRecord };
  let manifest: ManifestEntry[];
  let labels: string[];
  let wordpiece: WordPiece;
  let raw: Buffer;
  try {
    configDoc = JSON.parse(readFileSync(join(dir, "config.json"), "utf-8"));
    manifest = JSON.parse(readFileSync(join(dir, "weights.json"), "utf-8"));
    labels = readFileSync(join(dir, "labels.txt"), "utf-8")
      .split("\n")
      .filter((line) => line.length > 0);
    wordpiece = WordPiece.fromLines(readFileSync(join(dir, "vocab.txt"), "utf-8"));
    raw = readFileSync(join(dir, "weights.bin"));
  } catch (err) {
    throw new CheckpointError(`${dir}: ${(err as Error).message}`);
  }

  const flat = new Float32Array(raw.buffer, raw.byteOffset, raw.byteLength / 4);
  const weights: NamedWeights = {};
  for (const entry of manifest) {
    const expected = entry.shape.reduce((a, b) => a * b, 1);
    if (expected !== entry.length || entry.offset + entry.length > flat.length) {
      throw new CheckpointError(`${dir}: manifest entry ${entry.name} does not fit weights.bin`);
    }
    weights[entry.name] = {
      shape: entry.shape,
      values: flat.slice(entry.offset, entry.offset + entry.length),
    };
  }
  if (labels.length === 0) {
    throw new CheckpointError(`${dir}: labels.txt is empty`);
  }
  return {
    config: resolveConfig(configDoc.config as Partial<FineTuneConfig>),
    selection: configDoc.selection ?? { bestEpoch: 0, epochsRun: 0, devSelectionScore: 0 },
    labels,
    wordpiece,
    weights,
  };
}
