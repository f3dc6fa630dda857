"""Corpus handling: BRAT standoff IO, tokenization, BIO codec, splits, TSV."""
from .bio import REPAIR_POLICIES, decode_bio, encode_bio, gold_sentences
from .brat import (
    parse_brat,
    read_brat_dir,
    read_brat_file,
    serialize_brat,
    write_brat_dir,
)
from .interchange import read_interchange, write_interchange
from .split import apportion, split_corpus, subsample_sentences, subsample_train
from .tokenize import detokenize, split_sentences, tokenize
from .types import (
    DEFAULT_CATEGORIES,
    Annotation,
    CorpusSplit,
    Document,
    LabelSet,
    Sentence,
    Token,
    bio_category,
    normalize_annotations,
    parse_bio,
)

__all__ = [
    "DEFAULT_CATEGORIES",
    "REPAIR_POLICIES",
    "Annotation",
    "CorpusSplit",
    "Document",
    "LabelSet",
    "Sentence",
    "Token",
    "apportion",
    "bio_category",
    "decode_bio",
    "detokenize",
    "encode_bio",
    "gold_sentences",
    "normalize_annotations",
    "parse_bio",
    "parse_brat",
    "read_brat_dir",
    "read_brat_file",
    "read_interchange",
    "serialize_brat",
    "split_corpus",
    "split_sentences",
    "subsample_sentences",
    "subsample_train",
    "tokenize",
    "write_brat_dir",
    "write_interchange",
]
