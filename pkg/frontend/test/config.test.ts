import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import {
  DEFAULT_CONFIG,
  learningRateAt,
  loadConfigFile,
  resolveConfig,
} from "../src/config.js";
import { MalformedRow } from "../src/errors.js";

describe("fine-tune configuration", () => {
  it("defaults to the published recipe", () => {
    expect(DEFAULT_CONFIG.learningRate).toBe(3e-5);
    expect(DEFAULT_CONFIG.gradientClip).toBe(1.0);
    expect(DEFAULT_CONFIG.dropout).toBe(0.1);
    expect(DEFAULT_CONFIG.maxSequenceLength).toBe(500);
    expect(DEFAULT_CONFIG.batchSize).toBe(12);
    expect(DEFAULT_CONFIG.patience).toBe(15);
  });

  it("applies overrides and rejects unknown or invalid values", () => {
    expect(resolveConfig({ batchSize: 4 }).batchSize).toBe(4);
    expect(resolveConfig({}).learningRate).toBe(3e-5);
    expect(() => resolveConfig({ batchsize: 4 } as never)).toThrow(MalformedRow);
    expect(() => resolveConfig({ dropout: 1.5 })).toThrow(MalformedRow);
    expect(() => resolveConfig({ maxEpochs: 0 })).toThrow(MalformedRow);
    expect(() => resolveConfig({ embeddingDim: 30, attentionHeads: 4 })).toThrow(/heads/);
  });

  it("reads a JSON file mirroring the config field for field", () => {
    const dir = mkdtempSync(join(tmpdir(), "bridge-config-"));
    const path = join(dir, "overrides.json");
    writeFileSync(path, JSON.stringify({ learningRate: 1e-4, patience: 3 }));
    const resolved = resolveConfig(loadConfigFile(path));
    expect(resolved.learningRate).toBe(1e-4);
    expect(resolved.patience).toBe(3);
    expect(resolved.batchSize).toBe(12);

    writeFileSync(path, JSON.stringify({ learning_rate: 1e-4 }));
    expect(() => loadConfigFile(path)).toThrow(/unknown config key/);
    writeFileSync(path, JSON.stringify({ patience: "many" }));
    expect(() => loadConfigFile(path)).toThrow(/finite number/);
    writeFileSync(path, "[1, 2]");
    expect(() => loadConfigFile(path)).toThrow(/JSON object/);
  });

  it("warms the learning rate up linearly from zero to the maximum", () => {
    const config = resolveConfig({ warmupSteps: 10, learningRate: 1e-3 });
    expect(learningRateAt(0, config)).toBe(0);
    expect(learningRateAt(5, config)).toBeCloseTo(5e-4, 12);
    expect(learningRateAt(10, config)).toBeCloseTo(1e-3, 12);
    expect(learningRateAt(99, config)).toBeCloseTo(1e-3, 12);
    const flat = resolveConfig({ warmupSteps: 0 });
    expect(learningRateAt(1, flat)).toBe(flat.learningRate);
  });
});
