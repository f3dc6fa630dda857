/**
 * Patience-based early stopping on a dev-set selection score.
 *
 * Only a strict improvement resets the counter; training halts once
 * `patience` consecutive epochs fail to improve. With patience 15 and a
 * best first epoch, a strictly worsening run therefore executes exactly
 * 16 epochs: the first plus fifteen unrewarded ones.
 */
export class EarlyStopper {
  readonly patience: number;
  private best = -Infinity;
  private bestAt = 0;
  private sinceBest = 0;
  private epoch = 0;

  constructor(patience: number) {
    if (!(patience > 0)) {
      throw new RangeError(`patience must be positive, got ${patience}`);
    }
    this.patience = patience;
  }

  /** Record one epoch's score; returns true when this epoch is the new best. */
  update(score: number): boolean {
    this.epoch += 1;
    if (score > this.best) {
      this.best = score;
      this.bestAt = this.epoch;
      this.sinceBest = 0;
      return true;
    }
    this.sinceBest += 1;
    return false;
  }

  get shouldStop(): boolean {
    return this.sinceBest >= this.patience;
  }

  get bestScore(): number {
    return this.best;
  }

  get bestEpoch(): number {
    return this.bestAt;
  }

  get epochsRun(): number {
    return this.epoch;
  }
}
