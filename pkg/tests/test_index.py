from __future__ import annotations

import pytest

from portfix.errors import AmbiguousPatchTarget, IndexingError, PatchTargetMissing
from portfix.index import (
    CACHE_NAME,
    FunctionRecord,
    apply_patch,
    find_usages,
    index_codebase,
    index_texts,
    load_or_build,
)


def write_tree(root, texts):
    for name, text in texts.items():
        (root / name).write_text(text)


def test_index_counts(mini_texts):
    idx = index_texts(mini_texts)
    names = sorted(f.name for f in idx.all_functions())
    assert names == ["get_value", "make_name", "total"]
    assert idx.is_known("LIMIT") and idx.is_known("item_T") and idx.is_known("counter")
    assert not idx.is_known("nonexistent")
    assert idx.signatures("get_value")[0].param_count == 2


def test_function_record_text_and_lines(mini_texts):
    idx = index_texts(mini_texts)
    fn = idx.function("total")
    sf = idx.file("use.c")
    assert sf.text[fn.span[0] : fn.span[1]] == fn.text
    assert fn.start_line == 3
    assert fn.end_line == 3 + fn.text.count("\n")
    assert fn.declaration.startswith("int total(")
    assert fn.body.startswith("{")


def test_usages(mini_texts):
    idx = index_texts(mini_texts)
    uses = find_usages(idx, "get_value")
    assert [(u.enclosing_function, u.file, u.line) for u in uses] == [("total", "use.c", 8)]


def test_missing_and_ambiguous_targets(mini_texts):
    idx = index_texts(mini_texts)
    with pytest.raises(PatchTargetMissing):
        idx.function("nope")
    dup = dict(mini_texts)
    dup["other.c"] = "int total(void)\n{\n  return 0;\n}\n"
    with pytest.raises(AmbiguousPatchTarget):
        index_texts(dup).function("total")
    assert index_texts(dup).function("total", "other.c").file == "other.c"


def test_apply_patch_replaces_function_only(mini_texts):
    idx = index_texts(mini_texts)
    new = FunctionRecord.from_text("int total(item_T *items, int n)\n{\n  return n;\n}\n", "use.c")
    patched = apply_patch(idx, new)
    assert patched.function("total").text.strip() == new.text.strip()
    assert patched.file("api.c").text == idx.file("api.c").text
    assert idx.function("total").text != patched.function("total").text  # original untouched


def test_apply_patch_missing_target(mini_texts):
    idx = index_texts(mini_texts)
    with pytest.raises(PatchTargetMissing):
        apply_patch(idx, FunctionRecord.from_text("void ghost(void)\n{\n}\n", "use.c"))


def test_index_codebase_relative_paths(tmp_path, mini_texts):
    (tmp_path / "sub").mkdir()
    write_tree(tmp_path, {k: v for k, v in mini_texts.items() if k != "use.c"})
    (tmp_path / "sub" / "use.c").write_text(mini_texts["use.c"])
    (tmp_path / "notes.txt").write_text("int ignored(void) { return 0; }")
    idx = index_codebase(tmp_path)
    assert sorted(f.path for f in idx.files) == ["api.c", "api.h", "sub/use.c"]
    assert idx.function("total").file == "sub/use.c"


def test_missing_directory():
    with pytest.raises(IndexingError):
        index_codebase("/definitely/not/here")


def test_cache_round_trip(tmp_path, mini_texts):
    write_tree(tmp_path, mini_texts)
    first, hit1 = load_or_build(tmp_path)
    assert not hit1 and (tmp_path / CACHE_NAME).exists()
    second, hit2 = load_or_build(tmp_path)
    assert hit2
    assert second.to_dict() == first.to_dict()
    (tmp_path / "use.c").write_text(mini_texts["use.c"].replace("sum = 0", "sum = 1"))
    _, hit3 = load_or_build(tmp_path)
    assert not hit3


def test_unparsable_file_keeps_text(tmp_path, mini_texts):
    texts = dict(mini_texts)
    texts["broken.c"] = "int broken(void)\n{\n  if (x {\n"
    idx = index_texts(texts)
    assert idx.has_file("broken.c")
    assert "broken" not in idx.functions
