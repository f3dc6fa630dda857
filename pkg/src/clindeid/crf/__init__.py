"""Linear-chain CRF tagger: features, inference, training, persistence."""
from .features import DEFAULT_WINDOW, FeatureAlphabet, extract_features, featurize
from .inference import (
    ForwardBackward,
    forward_backward,
    sentence_offsets,
    sequence_scores,
    viterbi_decode,
)
from .model import CrfConfig, CrfModel, load_model, save_model
from .owlqn import MinimizeResult, minimize_owlqn, pseudo_gradient
from .train import TrainingStats, fit_crf, log_likelihood_and_gradient, make_objective

__all__ = [
    "CrfConfig",
    "CrfModel",
    "DEFAULT_WINDOW",
    "FeatureAlphabet",
    "ForwardBackward",
    "MinimizeResult",
    "TrainingStats",
    "extract_features",
    "featurize",
    "fit_crf",
    "forward_backward",
    "load_model",
    "log_likelihood_and_gradient",
    "make_objective",
    "minimize_owlqn",
    "pseudo_gradient",
    "save_model",
    "sentence_offsets",
    "sequence_scores",
    "viterbi_decode",
]
