import { describe, expect, it } from "vitest";

import { buildVocab, CLS, PAD, SEP, UNK, WordPiece } from "../src/wordpiece.js";

// A small Spanish-flavoured corpus: frequent words should survive whole,
// characters guarantee the tokenizer never dead-ends on training data.
const CORPUS = [
  ...Array(20).fill("paciente"),
  ...Array(20).fill("hospital"),
  ...Array(15).fill("años"),
  ...Array(10).fill("Maria"),
  ...Array(10).fill("sella"),
  ...Array(5).fill("villa"),
  "mando",
];

describe("subword vocabulary", () => {
  it("is deterministic and keeps the special pieces first", () => {
    const a = buildVocab(CORPUS, { size: 80 });
    const b = buildVocab(CORPUS, { size: 80 });
    expect(a).toEqual(b);
    expect(a.slice(0, 4)).toEqual([PAD, UNK, CLS, SEP]);
    expect(new Set(a).size).toBe(a.length);
  });

  it("keeps frequent words as single pieces", () => {
    const wp = new WordPiece(buildVocab(CORPUS, { size: 120 }));
    expect(wp.encode("paciente")).toEqual(["paciente"]);
    expect(wp.encode("hospital")).toEqual(["hospital"]);
  });

  it("splits an unseen word into first-plain then ##-continuations", () => {
    const wp = new WordPiece(buildVocab(CORPUS, { size: 120 }));
    const pieces = wp.encode("Marsella"); // never in the corpus
    expect(pieces.length).toBeGreaterThan(1);
    expect(pieces[0].startsWith("##")).toBe(false);
    for (const piece of pieces.slice(1)) {
      expect(piece.startsWith("##")).toBe(true);
    }
    // Gluing the pieces back together reconstructs the original surface.
    const glued = pieces.map((p, i) => (i === 0 ? p : p.slice(2))).join("");
    expect(glued).toBe("Marsella");
  });

  it("returns [UNK] for a token with characters outside the alphabet", () => {
    const wp = new WordPiece(buildVocab(CORPUS, { size: 120 }));
    expect(wp.encode("早期")).toEqual([UNK]);
  });

  it("round-trips through its line serialization", () => {
    const wp = new WordPiece(buildVocab(CORPUS, { size: 90 }));
    const again = WordPiece.fromLines(wp.toLines());
    expect(again.vocab).toEqual(wp.vocab);
    expect(again.encode("Marsella")).toEqual(wp.encode("Marsella"));
  });

  it("respects the size budget", () => {
    const small = buildVocab(CORPUS, { size: 40 });
    expect(small.length).toBeLessThanOrEqual(41);
    const wp = new WordPiece(small);
    // Even under a tight budget every training word still encodes.
    for (const word of new Set(CORPUS)) {
      expect(wp.encode(word)).not.toEqual([UNK]);
    }
  });
});
