/** Typed failures so callers can tell data problems from resource problems. */

export class BridgeError extends Error {
  constructor(message: string) {
    super(message);
    this.name = new.target.name;
  }
}

/** A single sentence expands past the subword length cap and cannot be split. */
export class SequenceTooLong extends BridgeError {}

/** An interchange line that does not follow the token/tag TSV contract. */
export class MalformedRow extends BridgeError {}

/** A tag outside the label vocabulary the model was trained with. */
export class LabelVocabularyError extends BridgeError {}

/** A checkpoint directory that is missing pieces or internally inconsistent. */
export class CheckpointError extends BridgeError {}

/** Requested compute is not available; callers may retry in small-sample mode. */
export class ResourceUnavailable extends BridgeError {}
