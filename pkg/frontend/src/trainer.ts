/**
 * Fine-tuning and prediction.
 *
 * `fineTune` reads labelled sentences, learns a subword vocabulary,
 * trains the token classifier with the configured recipe (warmup,
 * clipping, dropout before the output layer), checks the dev set each
 * epoch, and keeps the best-scoring weights. `predict` loads a
 * checkpoint and fills the `pred` column of sentences, ready to be
 * written back as interchange TSV.
 *
 * The dev score computed here is a selection signal only — it decides
 * which epoch's weights survive. Reporting quality is the companion
 * evaluator's job, working from the emitted TSV.
 */
import * as tf from "@tensorflow/tfjs";

import { AlignedSentence, alignLabelsToSubwords, restoreTokenLabels } from "./align.js";
import { Checkpoint, loadCheckpoint, saveCheckpoint } from "./checkpoint.js";
import { FineTuneConfig, learningRateAt, resolveConfig } from "./config.js";
import { EarlyStopper } from "./earlyStopping.js";
import { LabelVocabularyError } from "./errors.js";
import type { Sentence } from "./interchange.js";
import { ClippedAdam, NamedWeights, TokenClassifier } from "./model.js";
import { Rng } from "./rng.js";
import { buildVocab, WordPiece } from "./wordpiece.js";

export interface EpochRecord {
  epoch: number;
  trainLoss: number;
  devSelectionScore: number;
  learningRate: number;
}

export interface FineTuneResult {
  config: FineTuneConfig;
  labels: string[];
  bestEpoch: number;
  epochsRun: number;
  devSelectionScore: number;
  history: EpochRecord[];
}

/** Collect the BIO tag vocabulary from gold sentences, O first. */
export function labelSetFrom(sentences: Sentence[]): string[] {
  const seen = new Set<string>();
  for (const sent of sentences) {
    if (sent.gold === null) {
      throw new LabelVocabularyError(
        `sentence ${sent.docId}#${sent.index} has no gold tags; training needs labelled input`,
      );
    }
    sent.gold.forEach((tag) => seen.add(tag));
  }
  seen.delete("O");
  return ["O", ...[...seen].sort()];
}

/**
 * Strict token agreement (F1 over non-O tags) used to rank epochs.
 * Internal by design: its one consumer is early stopping.
 */
function selectionScore(gold: string[][], pred: string[][]): number {
  let tp = 0;
  let fp = 0;
  let fn = 0;
  gold.forEach((tags, s) => {
    tags.forEach((goldTag, i) => {
      const predTag = pred[s][i];
      if (goldTag !== "O" && predTag === goldTag) tp += 1;
      else {
        if (predTag !== "O") fp += 1;
        if (goldTag !== "O") fn += 1;
      }
    });
  });
  const denominator = 2 * tp + fp + fn;
  return denominator === 0 ? 0 : (2 * tp) / denominator;
}

interface Batch {
  pieceIds: tf.Tensor2D;
  padMask: tf.Tensor2D;
  labelIds: tf.Tensor2D;
  lossMask: tf.Tensor2D;
}

/** Pad a group of aligned sentences to the longest member and tensorize. */
function makeBatch(aligned: AlignedSentence[]): Batch {
  const width = Math.max(...aligned.map((a) => a.pieces.length));
  const ids: number[][] = [];
  const pad: number[][] = [];
  const labels: number[][] = [];
  const loss: number[][] = [];
  for (const a of aligned) {
    const fill = width - a.pieces.length;
    ids.push([...a.pieceIds, ...new Array(fill).fill(0)]);
    pad.push([...new Array(a.pieces.length).fill(1), ...new Array(fill).fill(0)]);
    labels.push([...a.labelIds, ...new Array(fill).fill(0)]);
    loss.push([...a.lossMask, ...new Array(fill).fill(0)]);
  }
  return {
    pieceIds: tf.tensor2d(ids, [aligned.length, width], "int32"),
    padMask: tf.tensor2d(pad, [aligned.length, width], "float32"),
    labelIds: tf.tensor2d(labels, [aligned.length, width], "int32"),
    lossMask: tf.tensor2d(loss, [aligned.length, width], "float32"),
  };
}

function disposeBatch(batch: Batch): void {
  batch.pieceIds.dispose();
  batch.padMask.dispose();
  batch.labelIds.dispose();
  batch.lossMask.dispose();
}

/** Argmax labels per piece, then collapse back to one label per token. */
function predictTags(
  model: TokenClassifier,
  aligned: AlignedSentence[],
  labels: string[],
): string[][] {
  if (aligned.length === 0) return [];
  const out: string[][] = [];
  const batch = makeBatch(aligned);
  const best = tf.tidy(() =>
    model.logits(batch.pieceIds, batch.padMask).argMax(-1),
  );
  const flat = best.dataSync();
  const width = best.shape[1] as number;
  best.dispose();
  disposeBatch(batch);
  aligned.forEach((a, row) => {
    const pieceLabels: string[] = [];
    for (let i = 0; i < a.pieces.length; i++) {
      pieceLabels.push(labels[flat[row * width + i]]);
    }
    out.push(restoreTokenLabels(a, pieceLabels));
  });
  return out;
}

export async function fineTune(
  train: Sentence[],
  dev: Sentence[],
  overrides: Partial<FineTuneConfig>,
  checkpointDir: string,
): Promise<FineTuneResult> {
  const config = resolveConfig(overrides);
  if (train.length === 0) throw new LabelVocabularyError("training set is empty");
  if (dev.length === 0) throw new LabelVocabularyError("dev set is empty");

  const labels = labelSetFrom(train);
  labelSetFrom(dev); // dev must be labelled too; tags outside train's set fail below
  const labelIndex = new Map(labels.map((tag, id) => [tag, id]));

  const wordpiece = new WordPiece(
    buildVocab(
      train.flatMap((s) => s.tokens.map((t) => t.surface)),
      { size: config.vocabSize },
    ),
  );

  const alignedTrain = train.map((s) =>
    alignLabelsToSubwords(s.tokens, s.gold, wordpiece, labelIndex, config.maxSequenceLength),
  );
  const alignedDev = dev.map((s) =>
    alignLabelsToSubwords(s.tokens, s.gold, wordpiece, labelIndex, config.maxSequenceLength),
  );
  const devGold = dev.map((s) => s.gold as string[]);

  const model = new TokenClassifier(
    {
      vocabSize: wordpiece.size,
      maxLen: config.maxSequenceLength,
      embeddingDim: config.embeddingDim,
      attentionHeads: config.attentionHeads,
      encoderLayers: config.encoderLayers,
      feedForwardDim: config.feedForwardDim,
      numLabels: labels.length,
    },
    config.seed,
  );
  const optimizer = new ClippedAdam(config.gradientClip);
  const rng = new Rng(config.seed);
  const stopper = new EarlyStopper(config.patience);
  const history: EpochRecord[] = [];

  let bestWeights: NamedWeights | null = null;
  let step = 0;
  const order = alignedTrain.map((_, i) => i);

  for (let epoch = 1; epoch <= config.maxEpochs; epoch++) {
    rng.shuffle(order);
    let lossSum = 0;
    let batches = 0;
    let lastRate = 0;
    for (let at = 0; at < order.length; at += config.batchSize) {
      const batch = makeBatch(order.slice(at, at + config.batchSize).map((i) => alignedTrain[i]));
      step += 1;
      lastRate = learningRateAt(step, config);
      const dropoutSeed = config.seed + step;
      const { value, grads } = tf.variableGrads(
        () =>
          model.loss(
            model.logits(batch.pieceIds, batch.padMask, {
              training: true,
              dropout: config.dropout,
              dropoutSeed,
            }),
            batch.labelIds,
            batch.lossMask,
          ),
        model.trainableVariables(),
      );
      optimizer.apply(model.trainableVariables(), grads, lastRate);
      lossSum += value.dataSync()[0];
      value.dispose();
      Object.values(grads).forEach((g) => g.dispose());
      disposeBatch(batch);
      batches += 1;
    }

    const devPred = predictTags(model, alignedDev, labels);
    const score = selectionScore(devGold, devPred);
    history.push({
      epoch,
      trainLoss: lossSum / Math.max(1, batches),
      devSelectionScore: score,
      learningRate: lastRate,
    });
    if (stopper.update(score)) {
      bestWeights = model.getWeights();
    }
    if (stopper.shouldStop) break;
  }

  const weights = bestWeights ?? model.getWeights();
  saveCheckpoint(checkpointDir, {
    config,
    selection: {
      bestEpoch: stopper.bestEpoch,
      epochsRun: stopper.epochsRun,
      devSelectionScore: stopper.bestScore,
    },
    labels,
    wordpiece,
    weights,
  });

  const result: FineTuneResult = {
    config,
    labels,
    bestEpoch: stopper.bestEpoch,
    epochsRun: stopper.epochsRun,
    devSelectionScore: stopper.bestScore,
    history,
  };
  optimizer.dispose();
  model.dispose();
  return result;
}

/** Load a checkpoint and return sentences with the `pred` column filled. */
export function predict(checkpointSource: string | Checkpoint, sentences: Sentence[]): Sentence[] {
  const checkpoint =
    typeof checkpointSource === "string" ? loadCheckpoint(checkpointSource) : checkpointSource;
  const { config, labels, wordpiece } = checkpoint;
  const labelIndex = new Map(labels.map((tag, id) => [tag, id]));

  const model = new TokenClassifier(
    {
      vocabSize: wordpiece.size,
      maxLen: config.maxSequenceLength,
      embeddingDim: config.embeddingDim,
      attentionHeads: config.attentionHeads,
      encoderLayers: config.encoderLayers,
      feedForwardDim: config.feedForwardDim,
      numLabels: labels.length,
    },
    config.seed,
  );
  model.setWeights(checkpoint.weights);

  const output: Sentence[] = [];
  for (let at = 0; at < sentences.length; at += config.batchSize) {
    const group = sentences.slice(at, at + config.batchSize);
    const aligned = group.map((s) =>
      alignLabelsToSubwords(s.tokens, null, wordpiece, labelIndex, config.maxSequenceLength),
    );
    const tags = predictTags(model, aligned, labels);
    group.forEach((sent, i) => output.push({ ...sent, pred: tags[i] }));
  }
  model.dispose();
  return output;
}
