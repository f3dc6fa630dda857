"""Clinical-text de-identification: corpus IO, taggers, scoring, anonymisation."""

__version__ = "0.1.0"
