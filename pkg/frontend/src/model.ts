/**
 * A small transformer encoder with a token-classification head.
 *
 * This is the stand-in for a pre-trained multilingual encoder: same
 * shape (embeddings + positional embeddings, self-attention blocks with
 * residuals and layer norm, a dropout-protected linear output layer),
 * sized to train from scratch on a CPU. Checkpoint weights are plain
 * named tensors, so a larger pre-trained encoder with the same layout
 * can be dropped in without code changes.
 */
import * as tf from "@tensorflow/tfjs";

export interface ModelDims {
  vocabSize: number;
  maxLen: number;
  embeddingDim: number;
  attentionHeads: number;
  encoderLayers: number;
  feedForwardDim: number;
  numLabels: number;
}

export interface NamedWeights {
  [name: string]: { shape: number[]; values: Float32Array };
}

function gelu(x: tf.Tensor): tf.Tensor {
  return tf.mul(tf.mul(x, 0.5), tf.add(1, tf.erf(tf.div(x, Math.SQRT2))));
}

export class TokenClassifier {
  readonly dims: ModelDims;
  private readonly params = new Map<string, tf.Variable>();

  constructor(dims: ModelDims, seed: number) {
    this.dims = dims;
    let next = seed;
    const init = (name: string, shape: number[], std = 0.02) => {
      next += 1;
      this.params.set(
        name,
        tf.variable(tf.randomNormal(shape, 0, std, "float32", next), true, name),
      );
    };
    const zeros = (name: string, shape: number[]) => {
      this.params.set(name, tf.variable(tf.zeros(shape), true, name));
    };
    const ones = (name: string, shape: number[]) => {
      this.params.set(name, tf.variable(tf.ones(shape), true, name));
    };

    const d = dims.embeddingDim;
    init("embedding", [dims.vocabSize, d]);
    init("position", [dims.maxLen, d]);
    for (let layer = 0; layer < dims.encoderLayers; layer++) {
      const p = `block${layer}.`;
      init(p + "wq", [d, d]);
      init(p + "wk", [d, d]);
      init(p + "wv", [d, d]);
      init(p + "wo", [d, d]);
      ones(p + "ln1.gamma", [d]);
      zeros(p + "ln1.beta", [d]);
      init(p + "ff1", [d, dims.feedForwardDim]);
      zeros(p + "ff1.bias", [dims.feedForwardDim]);
      init(p + "ff2", [dims.feedForwardDim, d]);
      zeros(p + "ff2.bias", [d]);
      ones(p + "ln2.gamma", [d]);
      zeros(p + "ln2.beta", [d]);
    }
    init("output", [d, dims.numLabels]);
    zeros("output.bias", [dims.numLabels]);
  }

  trainableVariables(): tf.Variable[] {
    return [...this.params.values()];
  }

  variable(name: string): tf.Variable {
    const v = this.params.get(name);
    if (v === undefined) throw new RangeError(`no model parameter named ${name}`);
    return v;
  }

  private layerNorm(x: tf.Tensor, prefix: string): tf.Tensor {
    const { mean, variance } = tf.moments(x, -1, true);
    const normed = tf.div(tf.sub(x, mean), tf.sqrt(tf.add(variance, 1e-6)));
    return tf.add(tf.mul(normed, this.variable(prefix + ".gamma")), this.variable(prefix + ".beta"));
  }

  private project(x: tf.Tensor, name: string): tf.Tensor {
    const [b, t, d] = x.shape as [number, number, number];
    const w = this.variable(name);
    return tf.matMul(x.reshape([b * t, d]), w).reshape([b, t, w.shape[1] as number]);
  }

  /**
   * Logits per subword position: [batch, time, labels].
   *
   * `padMask` is 1 on real pieces, 0 on padding; padded positions are
   * hidden from attention. Dropout runs only when `training` and only
   * before the output layer.
   */
  logits(
    pieceIds: tf.Tensor2D,
    padMask: tf.Tensor2D,
    options: { training: boolean; dropout: number; dropoutSeed?: number } = {
      training: false,
      dropout: 0,
    },
  ): tf.Tensor3D {
    const [b, t] = pieceIds.shape;
    const dims = this.dims;
    const headDim = dims.embeddingDim / dims.attentionHeads;

    const positions = this.variable("position").slice([0, 0], [t, dims.embeddingDim]);
    let x = tf.add(tf.gather(this.variable("embedding"), pieceIds), positions);

    // Padding becomes a large negative bias on attention scores.
    const attnBias = tf.mul(tf.sub(1, padMask.reshape([b, 1, 1, t])), -1e9);

    for (let layer = 0; layer < dims.encoderLayers; layer++) {
      const p = `block${layer}.`;
      const split = (name: string) =>
        this.project(x, name)
          .reshape([b, t, dims.attentionHeads, headDim])
          .transpose([0, 2, 1, 3]);
      const q = split(p + "wq");
      const k = split(p + "wk");
      const v = split(p + "wv");
      const scores = tf.add(tf.div(tf.matMul(q, k, false, true), Math.sqrt(headDim)), attnBias);
      const attended = tf
        .matMul(tf.softmax(scores), v)
        .transpose([0, 2, 1, 3])
        .reshape([b, t, dims.embeddingDim]);
      x = this.layerNorm(tf.add(x, this.project(attended, p + "wo")), p + "ln1");
      const hidden = gelu(tf.add(this.project(x, p + "ff1"), this.variable(p + "ff1.bias")));
      const ff = tf.add(this.project(hidden, p + "ff2"), this.variable(p + "ff2.bias"));
      x = this.layerNorm(tf.add(x, ff), p + "ln2");
    }

    if (options.training && options.dropout > 0) {
      x = tf.dropout(x, options.dropout, undefined, options.dropoutSeed);
    }
    return tf.add(this.project(x, "output"), this.variable("output.bias")) as tf.Tensor3D;
  }

  /**
   * Mean cross-entropy over loss-carrying positions only. Masked
   * positions (continuation pieces, sentinels, padding) are multiplied
   * by zero, so their labels can never move a gradient.
   */
  loss(logits: tf.Tensor3D, labelIds: tf.Tensor2D, lossMask: tf.Tensor2D): tf.Scalar {
    const logProbs = tf.logSoftmax(logits);
    const oneHot = tf.oneHot(labelIds.cast("int32"), this.dims.numLabels);
    const perPosition = tf.neg(tf.sum(tf.mul(logProbs, oneHot), -1));
    const masked = tf.mul(perPosition, lossMask);
    return tf.div(tf.sum(masked), tf.maximum(tf.sum(lossMask), 1e-8)) as tf.Scalar;
  }

  getWeights(): NamedWeights {
    const out: NamedWeights = {};
    for (const [name, variable] of this.params) {
      out[name] = {
        shape: [...variable.shape],
        values: variable.dataSync() as Float32Array,
      };
    }
    return out;
  }

  setWeights(weights: NamedWeights): void {
    for (const [name, variable] of this.params) {
      const stored = weights[name];
      if (stored === undefined) {
        throw new RangeError(`checkpoint is missing parameter ${name}`);
      }
      if (stored.shape.join(",") !== variable.shape.join(",")) {
        throw new RangeError(
          `parameter ${name} has shape [${stored.shape}], expected [${variable.shape}]`,
        );
      }
      variable.assign(tf.tensor(stored.values, stored.shape as number[]));
    }
  }

  dispose(): void {
    for (const variable of this.params.values()) variable.dispose();
    this.params.clear();
  }
}

/** Adam with linear warmup and global-norm gradient clipping. */
export class ClippedAdam {
  private readonly beta1 = 0.9;
  private readonly beta2 = 0.999;
  private readonly epsilon = 1e-8;
  private step = 0;
  private readonly firstMoment = new Map<string, tf.Variable>();
  private readonly secondMoment = new Map<string, tf.Variable>();

  constructor(private readonly clip: number) {}

  /** One update; `learningRate` is the already-warmed rate for this step. */
  apply(
    variables: tf.Variable[],
    grads: { [name: string]: tf.Tensor },
    learningRate: number,
  ): void {
    this.step += 1;
    tf.tidy(() => {
      let squared = tf.scalar(0);
      for (const g of Object.values(grads)) {
        squared = tf.add(squared, tf.sum(tf.square(g)));
      }
      const globalNorm = tf.sqrt(squared);
      const scale = tf.minimum(tf.scalar(1), tf.div(this.clip, tf.add(globalNorm, 1e-12)));

      const correction1 = 1 - Math.pow(this.beta1, this.step);
      const correction2 = 1 - Math.pow(this.beta2, this.step);
      for (const variable of variables) {
        const grad = grads[variable.name];
        if (grad === undefined) continue;
        const clipped = tf.mul(grad, scale);
        if (!this.firstMoment.has(variable.name)) {
          this.firstMoment.set(
            variable.name,
            tf.variable(tf.zerosLike(variable), false, variable.name + "/m"),
          );
          this.secondMoment.set(
            variable.name,
            tf.variable(tf.zerosLike(variable), false, variable.name + "/v"),
          );
        }
        const m = this.firstMoment.get(variable.name)!;
        const v = this.secondMoment.get(variable.name)!;
        m.assign(tf.add(tf.mul(m, this.beta1), tf.mul(clipped, 1 - this.beta1)));
        v.assign(tf.add(tf.mul(v, this.beta2), tf.mul(tf.square(clipped), 1 - this.beta2)));
        const mHat = tf.div(m, correction1);
        const vHat = tf.div(v, correction2);
        variable.assign(
          tf.sub(variable, tf.mul(tf.div(mHat, tf.add(tf.sqrt(vHat), this.epsilon)), learningRate)),
        );
      }
    });
  }

  dispose(): void {
    for (const v of this.firstMoment.values()) v.dispose();
    for (const v of this.secondMoment.values()) v.dispose();
    this.firstMoment.clear();
    this.secondMoment.clear();
  }
}
