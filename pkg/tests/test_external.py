"""Cross-check the lexical reference checker against a real gcc."""
from __future__ import annotations

import shutil

import pytest

from portfix import diag
from portfix.diag import OTHER, ExternalBackend, RefCheckBackend
from portfix.index import apply_patch

pytestmark = [
    pytest.mark.external,
    pytest.mark.skipif(shutil.which("gcc") is None, reason="gcc not on PATH"),
]


def both(case, fn):
    idx = apply_patch(case.tgt_index, fn)
    rec = idx.function(fn.name, fn.file)
    ref = diag.in_scope(diag.compile(idx, RefCheckBackend(), rec))
    ext = diag.in_scope(diag.compile(idx, ExternalBackend(), rec))
    return ref, ext


def pairs(diags):
    return {(d.kind, d.subject_identifier) for d in diags if d.kind != OTHER}


def test_gcc_agrees_with_refcheck(suite):
    for case in suite:
        ref, ext = both(case, case.ported_function)
        r, e = pairs(ref), pairs(ext)
        assert e <= r, case.name
        if r != e:
            # gcc abandons a call after a syntax error on a type argument and
            # never reaches the identifiers that follow on that line
            cascade = {d.line for d in ext if d.kind == OTHER and d.message.startswith("expected expression")}
            missed = {d.line for d in ref if (d.kind, d.subject_identifier) in r - e}
            assert missed <= cascade, case.name


def test_gcc_accepts_ground_truth(suite):
    for case in suite:
        _, ext = both(case, case.ground_truth)
        assert ext == [], case.name
