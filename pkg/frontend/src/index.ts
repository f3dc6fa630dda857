export {
  AlignedSentence,
  alignLabelsToSubwords,
  restoreTokenLabels,
  splitAtSentenceBoundaries,
} from "./align.js";
export { Checkpoint, loadCheckpoint, saveCheckpoint, SelectionRecord } from "./checkpoint.js";
export {
  DEFAULT_CONFIG,
  FineTuneConfig,
  learningRateAt,
  loadConfigFile,
  resolveConfig,
} from "./config.js";
export { EarlyStopper } from "./earlyStopping.js";
export {
  BridgeError,
  CheckpointError,
  LabelVocabularyError,
  MalformedRow,
  ResourceUnavailable,
  SequenceTooLong,
} from "./errors.js";
export { ABSENT, readInterchange, Sentence, Token, writeInterchange } from "./interchange.js";
export { ClippedAdam, ModelDims, NamedWeights, TokenClassifier } from "./model.js";
export { Rng } from "./rng.js";
export {
  EpochRecord,
  fineTune,
  FineTuneResult,
  labelSetFrom,
  predict,
} from "./trainer.js";
export { buildVocab, CLS, PAD, SEP, SPECIAL_PIECES, UNK, VocabOptions, WordPiece } from "./wordpiece.js";
