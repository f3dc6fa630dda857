#!/usr/bin/env node
/**
 * One-shot command line around the bridge: fine-tune from interchange
 * files, predict back into interchange files.
 *
 *   transformer-bridge fine-tune --train train.tsv --dev dev.tsv \
 *       --checkpoint ckpt/ [--config overrides.json] [--set key=value ...]
 *   transformer-bridge predict --checkpoint ckpt/ --in test.tsv --out pred.tsv
 *
 * `--config` reads a JSON file mirroring FineTuneConfig; `--set`
 * overrides single fields on top of it. Exit codes: 0 ok, 1 data or
 * checkpoint problem, 2 usage.
 */
import { stderr, stdout } from "node:process";

import { FineTuneConfig, loadConfigFile } from "./config.js";
import { BridgeError, MalformedRow } from "./errors.js";
import { readInterchange, writeInterchange } from "./interchange.js";
import { fineTune, predict } from "./trainer.js";

const USAGE = `usage:
  transformer-bridge fine-tune --train FILE --dev FILE --checkpoint DIR [--config FILE] [--set key=value ...]
  transformer-bridge predict --checkpoint DIR --in FILE --out FILE
`;

function parseFlags(argv: string[], allowed: Set<string>): Map<string, string[]> {
  const flags = new Map<string, string[]>();
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || !allowed.has(flag) || value === undefined) {
      throw new UsageError(`unexpected argument ${flag}`);
    }
    const bucket = flags.get(flag) ?? [];
    bucket.push(value);
    flags.set(flag, bucket);
  }
  return flags;
}

class UsageError extends Error {}

function single(flags: Map<string, string[]>, flag: string): string {
  const values = flags.get(flag);
  if (values === undefined || values.length !== 1) {
    throw new UsageError(`${flag} is required exactly once`);
  }
  return values[0];
}

function collectOverrides(flags: Map<string, string[]>): Partial<FineTuneConfig> {
  const overrides: Partial<FineTuneConfig> = {};
  const configPath = flags.get("--config");
  if (configPath !== undefined) {
    Object.assign(overrides, loadConfigFile(configPath[0]));
  }
  for (const pair of flags.get("--set") ?? []) {
    const eq = pair.indexOf("=");
    if (eq <= 0) throw new MalformedRow(`--set expects key=value, got ${JSON.stringify(pair)}`);
    const key = pair.slice(0, eq);
    const value = Number(pair.slice(eq + 1));
    if (!Number.isFinite(value)) {
      throw new MalformedRow(`--set ${key}: value must be a finite number`);
    }
    (overrides as Record<string, number>)[key] = value;
  }
  return overrides;
}

export async function main(argv: string[]): Promise<number> {
  try {
    const [command, ...rest] = argv;
    if (command === "fine-tune") {
      const flags = parseFlags(
        rest,
        new Set(["--train", "--dev", "--checkpoint", "--config", "--set"]),
      );
      const train = readInterchange(single(flags, "--train"));
      const dev = readInterchange(single(flags, "--dev"));
      const checkpointDir = single(flags, "--checkpoint");
      const result = await fineTune(train, dev, collectOverrides(flags), checkpointDir);
      stdout.write(
        `trained ${result.epochsRun} epochs; kept epoch ${result.bestEpoch} ` +
          `(dev selection score ${result.devSelectionScore.toFixed(4)}) -> ${checkpointDir}\n`,
      );
      return 0;
    }
    if (command === "predict") {
      const flags = parseFlags(rest, new Set(["--checkpoint", "--in", "--out"]));
      const sentences = readInterchange(single(flags, "--in"));
      const outPath = single(flags, "--out");
      writeInterchange(outPath, predict(single(flags, "--checkpoint"), sentences));
      stdout.write(`predicted ${sentences.length} sentences -> ${outPath}\n`);
      return 0;
    }
    stderr.write(USAGE);
    return 2;
  } catch (err) {
    if (err instanceof UsageError) {
      stderr.write(`error: ${err.message}\n${USAGE}`);
      return 2;
    }
    if (err instanceof BridgeError || (err as NodeJS.ErrnoException).code !== undefined) {
      stderr.write(`error: ${(err as Error).constructor.name}: ${(err as Error).message}\n`);
      return 1;
    }
    throw err;
  }
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js") ?? false;
if (invokedDirectly) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
