/**
 * Token-level labels <-> subword-level training rows.
 *
 * The classifier sees subword pieces wrapped in sequence sentinels; the
 * de-identification labels live on whole tokens. Alignment puts each
 * token's label on its first piece and masks every continuation piece
 * and sentinel out of the loss, and the recorded first-piece positions
 * make the inverse exact: one label back per original token, always.
 */
import { LabelVocabularyError, SequenceTooLong } from "./errors.js";
import type { Sentence, Token } from "./interchange.js";
import { CLS, SEP, WordPiece } from "./wordpiece.js";

export interface AlignedSentence {
  /** Subword pieces, wrapped as [CLS] ... [SEP]. */
  pieces: string[];
  pieceIds: number[];
  /** Label index per piece; masked positions carry 0 and never train. */
  labelIds: number[];
  /** 1 where a loss is taken (first piece of each token), else 0. */
  lossMask: number[];
  /** Position of each original token's first piece within `pieces`. */
  tokenPieceIndex: number[];
}

/**
 * Expand tokens to pieces and lift the token labels onto them.
 *
 * `labels` may be null (prediction time); alignment is identical, the
 * label column is simply all zeros. Throws SequenceTooLong when the
 * expansion (plus the two sentinels) exceeds `maxLen`, because cutting
 * inside a sentence could cut through an annotation.
 */
export function alignLabelsToSubwords(
  tokens: Token[],
  labels: string[] | null,
  wordpiece: WordPiece,
  labelIndex: Map<string, number>,
  maxLen: number,
): AlignedSentence {
  const pieces: string[] = [CLS];
  const labelIds: number[] = [0];
  const lossMask: number[] = [0];
  const tokenPieceIndex: number[] = [];

  tokens.forEach((token, t) => {
    const expanded = wordpiece.encode(token.surface);
    tokenPieceIndex.push(pieces.length);
    expanded.forEach((piece, p) => {
      pieces.push(piece);
      if (p === 0) {
        const label = labels === null ? "O" : labels[t];
        const id = labelIndex.get(label);
        if (id === undefined) {
          throw new LabelVocabularyError(`unknown label ${JSON.stringify(label)}`);
        }
        labelIds.push(id);
        lossMask.push(1);
      } else {
        labelIds.push(0);
        lossMask.push(0);
      }
    });
  });

  pieces.push(SEP);
  labelIds.push(0);
  lossMask.push(0);

  if (pieces.length > maxLen) {
    throw new SequenceTooLong(
      `sentence expands to ${pieces.length} subword units, over the cap of ${maxLen}`,
    );
  }

  return {
    pieces,
    pieceIds: pieces.map((p) => wordpiece.pieceId(p)),
    labelIds,
    lossMask,
    tokenPieceIndex,
  };
}

/** Inverse of alignment: read back exactly one label per original token. */
export function restoreTokenLabels(
  aligned: Pick<AlignedSentence, "tokenPieceIndex">,
  pieceLabels: string[],
): string[] {
  return aligned.tokenPieceIndex.map((position) => pieceLabels[position]);
}

/**
 * Split a run of sentences into chunks that each fit the length cap,
 * cutting only between sentences so no annotation is ever truncated.
 * A single sentence that cannot fit on its own is a hard error.
 */
export function splitAtSentenceBoundaries(
  sentences: Sentence[],
  wordpiece: WordPiece,
  maxLen: number,
): Sentence[][] {
  const chunks: Sentence[][] = [];
  let current: Sentence[] = [];
  let used = 2; // sentinels
  for (const sent of sentences) {
    const units = sent.tokens.reduce(
      (n, tok) => n + wordpiece.encode(tok.surface).length,
      0,
    );
    if (units + 2 > maxLen) {
      throw new SequenceTooLong(
        `sentence ${sent.docId}#${sent.index} alone expands to ${units + 2} units, over ${maxLen}`,
      );
    }
    if (current.length > 0 && used + units > maxLen) {
      chunks.push(current);
      current = [];
      used = 2;
    }
    current.push(sent);
    used += units;
  }
  if (current.length > 0) chunks.push(current);
  return chunks;
}
