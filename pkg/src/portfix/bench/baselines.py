"""Non-model baselines: compiler suggestions (CS) and definition matching (CS+)."""
from __future__ import annotations

from typing import Dict, Optional

from .. import diag
from ..diag import RefCheckBackend
from ..index import FunctionRecord, apply_patch
from ..lexer import replace_identifier
from ..match import MatcherConfig, rank_candidates
from .faults import PortingCase


def _type2(case: PortingCase):
    patched = apply_patch(case.tgt_index, case.ported_function)
    fn = patched.function(case.ported_function.name, case.ported_function.file)
    diags = diag.in_scope(diag.compile(patched, RefCheckBackend(), fn))
    return diag.get_nonexist_identifier_errs(diags)


def _rewrite(case: PortingCase, mapping: Dict[str, str]) -> FunctionRecord:
    text = case.ported_function.text
    for old in sorted(mapping):
        text = replace_identifier(text, old, mapping[old])
    return FunctionRecord.from_text(text, case.ported_function.file)


def cs_baseline(case: PortingCase) -> FunctionRecord:
    """Replace each non-existent identifier by the compiler's suggestion, if any."""
    mapping = {d.subject_identifier: d.fixit for d in _type2(case) if d.fixit}
    return _rewrite(case, mapping)


def _is_call(d: diag.Diagnostic) -> bool:
    return d.message.startswith("implicit declaration of function")


def _best_definition_match(case: PortingCase, name: str, config: MatcherConfig) -> Optional[str]:
    try:
        src_fn = case.src_index.function(name)
    except Exception:
        return None
    ranked = rank_candidates(src_fn, case.tgt_index, config, exclude_names=(case.ported_function.name,))
    return ranked[0][0].name if ranked else None


def cs_plus_baseline(case: PortingCase, config: MatcherConfig = MatcherConfig()) -> FunctionRecord:
    """Map missing functions through their source definitions; otherwise as CS."""
    mapping = {}
    for d in _type2(case):
        new = None
        if _is_call(d):
            new = _best_definition_match(case, d.subject_identifier, config)
        if new is None:
            new = d.fixit
        if new:
            mapping[d.subject_identifier] = new
    return _rewrite(case, mapping)
