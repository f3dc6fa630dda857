"""Exception hierarchy shared by all clindeid modules."""


class ClinDeidError(Exception):
    """Base class for all errors raised by this package."""


# corpus parsing / validation

class MalformedLine(ClinDeidError):
    """A BRAT annotation line does not follow the entity syntax."""


class OffsetMismatch(ClinDeidError):
    """An annotation's surface string differs from the text slice at its offsets."""


class UnknownLabel(ClinDeidError):
    """An annotation carries a category outside the configured label set."""


class OverlapError(ClinDeidError):
    """Two annotations claim the same token or character range."""


class IllFormedSequence(ClinDeidError):
    """A BIO sequence contains an I tag with no compatible predecessor (strict mode)."""


class EmptyCorpus(ClinDeidError):
    """A corpus operation received zero documents."""


class MalformedRow(ClinDeidError):
    """An interchange TSV row does not match the declared column layout."""


class LabelVocabularyError(ClinDeidError):
    """An interchange file contains a label outside the configured alphabet."""


class FileMissing(ClinDeidError):
    """A required resource file does not exist."""


# CRF

class IndexOutOfRange(ClinDeidError):
    """A token index falls outside its sentence."""


class NumericalOverflow(ClinDeidError):
    """A partition-function computation produced a non-finite value."""


class EmptyTrainingSet(ClinDeidError):
    """CRF training was invoked without any training sentences."""


class DivergenceDetected(ClinDeidError):
    """The penalized training objective increased across too many accepted steps."""


class VersionMismatch(ClinDeidError):
    """A model file was written by an incompatible format version."""


class CorruptFile(ClinDeidError):
    """A model file is truncated or fails integrity checks."""


# evaluation

class LengthMismatch(ClinDeidError):
    """Gold and predicted sequences have different lengths."""


class CrossDocumentAnnotation(ClinDeidError):
    """A predicted annotation references a document absent from the gold set."""


# anonymisation

class OffsetOutOfRange(ClinDeidError):
    """An annotation's offsets fall outside the document text."""


class UnknownCategory(ClinDeidError):
    """A surrogate was requested for a category outside the configured set."""
