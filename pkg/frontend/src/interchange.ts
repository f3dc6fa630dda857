/**
 * Token/tag interchange TSV.
 *
 * This is the only channel between the bridge and the companion
 * de-identification toolkit: one token per line with character offsets
 * and gold/pred BIO tags, blank lines between sentences, `# doc:`
 * comments carrying document ids, and `-` for an absent column. The
 * writer reproduces the companion's byte layout exactly so files can be
 * swapped in either direction.
 */
import { readFileSync, writeFileSync } from "node:fs";

import { MalformedRow } from "./errors.js";

export const ABSENT = "-";
const REQUIRED_COLUMNS = ["token", "start", "end", "gold", "pred"] as const;

export interface Token {
  surface: string;
  start: number;
  end: number;
}

export interface Sentence {
  docId: string;
  index: number;
  tokens: Token[];
  /** One BIO tag per token, or null when the column was absent. */
  gold: string[] | null;
  pred: string[] | null;
}

export function readInterchange(path: string): Sentence[] {
  const text = readFileSync(path, "utf-8");
  const lines = text.split("\n");
  if (lines.length === 0 || !lines[0].startsWith("# columns: ")) {
    throw new MalformedRow(`${path}: missing '# columns:' header`);
  }
  const columns = lines[0].slice("# columns: ".length).split(" ");
  for (let i = 0; i < REQUIRED_COLUMNS.length; i++) {
    if (columns[i] !== REQUIRED_COLUMNS[i]) {
      throw new MalformedRow(
        `${path}: header must begin with ${REQUIRED_COLUMNS.join(" ")}`,
      );
    }
  }

  const sentences: Sentence[] = [];
  let rows: string[][] = [];
  let docId = "";
  let indexOverride: number | null = null;
  let nextIndex = 0;

  const flush = () => {
    if (rows.length === 0) return;
    const index = indexOverride ?? nextIndex;
    sentences.push(buildSentence(rows, docId, index, path));
    nextIndex = index + 1;
    indexOverride = null;
    rows = [];
  };

  for (let lineno = 2; lineno <= lines.length; lineno++) {
    const line = lines[lineno - 1];
    if (line === "") {
      flush();
    } else if (line.startsWith("# doc: ")) {
      flush();
      docId = line.slice("# doc: ".length);
      nextIndex = 0;
    } else if (line.startsWith("# index: ")) {
      const parsed = Number(line.slice("# index: ".length));
      if (!Number.isInteger(parsed)) {
        throw new MalformedRow(`${path}:${lineno}: bad sentence index`);
      }
      indexOverride = parsed;
    } else if (line.startsWith("#")) {
      continue;
    } else {
      const cells = line.split("\t");
      if (cells.length !== columns.length) {
        throw new MalformedRow(
          `${path}:${lineno}: expected ${columns.length} columns, got ${cells.length}`,
        );
      }
      rows.push(cells);
    }
  }
  flush();
  return sentences;
}

function buildSentence(
  rows: string[][],
  docId: string,
  index: number,
  path: string,
): Sentence {
  const tokens: Token[] = [];
  const gold: string[] = [];
  const pred: string[] = [];
  for (const cells of rows) {
    const start = Number(cells[1]);
    const end = Number(cells[2]);
    if (!Number.isInteger(start) || !Number.isInteger(end)) {
      throw new MalformedRow(`${path}: non-integer offsets ${cells[1]} ${cells[2]}`);
    }
    if (start < 0 || end <= start) {
      throw new MalformedRow(`${path}: bad offsets [${start}, ${end})`);
    }
    tokens.push({ surface: cells[0], start, end });
    gold.push(cells[3]);
    pred.push(cells[4]);
  }
  return {
    docId,
    index,
    tokens,
    gold: columnOrNull(gold, "gold", path),
    pred: columnOrNull(pred, "pred", path),
  };
}

function columnOrNull(cells: string[], name: string, path: string): string[] | null {
  if (cells.every((c) => c === ABSENT)) return null;
  if (cells.some((c) => c === ABSENT)) {
    throw new MalformedRow(`${path}: ${name} column partially filled within a sentence`);
  }
  return cells;
}

export function writeInterchange(path: string, sentences: Sentence[]): void {
  const lines = ["# columns: " + REQUIRED_COLUMNS.join(" ")];
  let docId: string | null = null;
  let nextIndex = 0;
  for (const sent of sentences) {
    if (sent.docId !== docId) {
      docId = sent.docId;
      nextIndex = 0;
      lines.push(`# doc: ${docId}`);
    }
    if (sent.index !== nextIndex) {
      lines.push(`# index: ${sent.index}`);
    }
    nextIndex = sent.index + 1;
    sent.tokens.forEach((tok, i) => {
      const gold = sent.gold === null ? ABSENT : sent.gold[i];
      const pred = sent.pred === null ? ABSENT : sent.pred[i];
      lines.push([tok.surface, String(tok.start), String(tok.end), gold, pred].join("\t"));
    });
    lines.push("");
  }
  writeFileSync(path, lines.join("\n"), "utf-8");
}
