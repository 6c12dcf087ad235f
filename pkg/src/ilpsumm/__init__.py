"""Multi-document abstractive summarization.

Documents are clustered around the sentences of the most central document,
each cluster is fused through a word graph into candidate sentences, and an
exact 0/1 program picks at most one non-redundant candidate per cluster.
"""

from importlib.resources import files

from .errors import (EmptySummaryError, InputError, NoCandidatesError, NoClustersError,
                     PipelineError, TooFewDocumentsError)
from .ilpselect import Summary, solve_exact
from .lm import TrigramModel, parse_arpa, train_from_sentences
from .pipeline import PipelineConfig, RunReport, run_pipeline, summarize
from .rouge import RougeConfig, evaluate_text

__version__ = "0.1.0"

__all__ = [
    "EmptySummaryError", "InputError", "NoCandidatesError", "NoClustersError", "PipelineError",
    "PipelineConfig", "RougeConfig", "RunReport", "Summary", "TooFewDocumentsError",
    "TrigramModel", "evaluate_text", "fixture_path", "parse_arpa", "run_pipeline",
    "solve_exact", "summarize", "train_from_sentences",
]


def fixture_path(name: str = "flood"):
    """Directory of the bundled fixture set ``name`` (holds ``docs/`` and ``refs/``)."""
    return files(__name__).joinpath("data", "fixtures", name)
