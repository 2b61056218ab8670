"""Detect and repair implicit inconsistencies in ported C patches."""
from .diag import Diagnostic, RefCheckBackend, compile
from .index import CodebaseIndex, FunctionRecord, index_codebase, index_texts
from .match import MatcherConfig, collect_usage_pairs, rank_candidates
from .sched import RefinementRequest, RefinementResult, refine

__version__ = "0.1.0"
