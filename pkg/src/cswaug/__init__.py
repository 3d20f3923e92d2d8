"""Synthetic Arabic-English code-switched data from parallel corpora.

Lexical replacement, Equivalence-Constraint / Matrix-Language-Frame
generation, back-translation hypothesis selection, code-switching metrics and
annotation agreement.
"""

from importlib import resources
from pathlib import Path

from .agreement import AnnotationRecord, cohen_kappa, fleiss_kappa, mos, mos_histogram
from .align import AlignmentSet, SegmentPair, extract_segments, order_preserving, union
from .augmentation import Augmentation, Replacement, Technique
from .btselect import NBestList, select_csw, selection_stats
from .corpus import (
    BiSentence,
    Corpus,
    Norm,
    Token,
    append_target_target,
    intersect_augmented,
    load_parallel,
    normalize,
    sample_subset,
)
from .errors import CswError, FormatError, StructuralError, UsageError
from .langid import LangTag, classify_token, is_csw
from .lexrep import GlossLexicon, lex_dict, lex_pred, lex_rand_segment, lex_rand_word
from .metrics import CswStats, cmi, corpus_stats, pct_en, spf
from .tagger import tag_targets
from .theories import GenerationSet, SPFReference, generate_ec, generate_mlf, sample_random, sample_spf
from .trees import ParseTree

__version__ = "0.1.0"


def data_path(name: str) -> Path:
    """Path of a bundled data file (``toy.tsv``, ``worked_example.tsv``, ...)."""
    return Path(str(resources.files(__name__).joinpath("data", name)))
