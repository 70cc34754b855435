"""Occurrence-embedding extraction and sense-release conversion.

Produces the SSCD occurrence files and SSEB sense-embedding binaries consumed
by the sensescd scoring toolkit, using a pretrained masked language model for
the contextual side.
"""

__version__ = "0.1.0"

from .convert import convert_sense_release
from .corpus import Occurrence, find_occurrences
from .embedder import ExtractionConfig, ExtractionSummary, embed_occurrences
