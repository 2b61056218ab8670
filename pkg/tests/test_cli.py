from __future__ import annotations

import json
import shutil

import pytest

from portfix.bench.dataset import MANIFEST, SUITE_PATH
from portfix.cli import (
    EXIT_BACKEND,
    EXIT_DATASET,
    EXIT_OK,
    EXIT_TARGET,
    EXIT_UNCLEAN,
    EXIT_USAGE,
    load_config,
    main,
)
from portfix.errors import ConfigError
from portfix.lexer import normalized_tokens

GOLDEN = SUITE_PATH / "golden_scriptinfo"


def manifest(name="golden_scriptinfo"):
    return json.loads((SUITE_PATH / name / MANIFEST).read_text())


@pytest.fixture
def patched(tmp_path):
    p = tmp_path / "ported.c"
    p.write_text(manifest()["ported"])
    return p


def refine_args(patched, *extra):
    return [
        "refine", "--src", str(GOLDEN / "src"), "--tgt", str(GOLDEN / "tgt"),
        "--function", "f_getscriptinfo", "--patched-file", str(patched),
        "--cassette", str(GOLDEN / "cassette.jsonl"), *extra,
    ]


def test_refine_golden(tmp_path, patched, capsys):
    out = tmp_path / "fixed.c"
    assert main(refine_args(patched, "--out", str(out))) == EXIT_OK
    assert normalized_tokens(out.read_text()) == normalized_tokens(manifest()["ground_truth"])
    trace = json.loads((tmp_path / "fixed.c.trace.json").read_text())
    assert trace["status"] == "clean"
    assert "status: clean" in capsys.readouterr().err


def test_refine_json_stdout_is_json(patched, capsys):
    assert main(refine_args(patched, "--json")) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "clean" and data["trace"]


def test_explain(patched, capsys):
    args = refine_args(patched)
    args[0] = "explain"
    assert main(args) == EXIT_OK
    out = capsys.readouterr().out
    assert "dict_find" in out and "tv_dict_find" in out


def test_refine_already_clean(tmp_path, capsys):
    p = tmp_path / "clean.c"
    p.write_text(manifest()["ground_truth"])
    out = tmp_path / "o.c"
    assert main(refine_args(p, "--out", str(out))) == EXIT_OK
    assert normalized_tokens(out.read_text()) == normalized_tokens(p.read_text())


def test_refine_missing_recording(tmp_path, patched, capsys):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    args = refine_args(patched)
    args[args.index("--cassette") + 1] = str(empty)
    assert main(args) == EXIT_BACKEND
    assert "backend error" in capsys.readouterr().err


def test_refine_wrong_function(patched, capsys):
    args = refine_args(patched)
    args[args.index("--function") + 1] = "no_such_function"
    assert main(args) == EXIT_TARGET


def test_refine_unparseable_patch(tmp_path, capsys):
    p = tmp_path / "bad.c"
    p.write_text("this is not C {{{")
    assert main(refine_args(p)) == EXIT_TARGET


def test_check(patched, capsys):
    base = ["check", "--tgt", str(GOLDEN / "tgt"), "--function", "f_getscriptinfo"]
    assert main(base + ["--patched-file", str(patched), "--json"]) == EXIT_UNCLEAN
    found = [(d["kind"], d["subject_identifier"]) for d in json.loads(capsys.readouterr().out)["diagnostics"]]
    assert found == [
        ("Type2", "dict_find"),
        ("Type1", "tv_get_number_chk"),
        ("Type2", "e_invalid_value_for_argument_str_str"),
    ]
    assert main(base) == EXIT_OK


def test_index_and_cache(tmp_path, capsys):
    root = tmp_path / "tgt"
    shutil.copytree(GOLDEN / "tgt", root)
    assert main(["index", str(root), "--json"]) == EXIT_OK
    first = json.loads(capsys.readouterr().out)
    assert first["cache_hit"] is False and first["functions"] > 0
    assert main(["index", str(root), "--json"]) == EXIT_OK
    second = json.loads(capsys.readouterr().out)
    assert second["cache_hit"] is True
    assert {k: v for k, v in first.items() if k != "cache_hit"} == {k: v for k, v in second.items() if k != "cache_hit"}


def test_index_missing_dir(tmp_path, capsys):
    assert main(["index", str(tmp_path / "nope")]) == EXIT_USAGE


def test_eval_table(tmp_path, capsys):
    ds = tmp_path / "ds"
    for name in ("golden_alloc", "golden_scriptinfo"):
        shutil.copytree(SUITE_PATH / name, ds / name)
    out = tmp_path / "report.json"
    assert main(["eval", str(ds), "--out", str(out)]) == EXIT_OK
    text = capsys.readouterr().out
    assert text.splitlines()[0].split() == ["Approach", "Patch", "#T1", "#T2"]
    assert "full" in text and "2/2 (100.0%)" in text
    assert json.loads(out.read_text())["scores"]["full"]["patch_correct"] == 2


def test_eval_bad_strategy(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", str(SUITE_PATH), "--strategies", "cs,bogus"])
    assert exc.value.code == EXIT_USAGE


def test_eval_dataset_errors(tmp_path, capsys):
    (tmp_path / "empty").mkdir()
    assert main(["eval", str(tmp_path / "empty")]) == EXIT_DATASET
    bad = tmp_path / "bad" / "case_x"
    bad.mkdir(parents=True)
    (bad / MANIFEST).write_text("{")
    assert main(["eval", str(tmp_path / "bad")]) == EXIT_DATASET
    assert "case_x" in capsys.readouterr().err


def test_config_rejects_credentials(tmp_path, patched, capsys):
    cfg = tmp_path / "portfix.toml"
    cfg.write_text('[model]\nbackend = "http"\nendpoint = "http://x"\nname = "m"\napi_key = "sk-123"\n')
    with pytest.raises(ConfigError):
        load_config(str(cfg), {})
    assert main(refine_args(patched, "--config", str(cfg))) == EXIT_USAGE


def test_config_key_from_environment(tmp_path):
    cfg = tmp_path / "portfix.toml"
    cfg.write_text(
        '[model]\nbackend = "http"\nendpoint = "http://x"\nname = "m"\napi_key_env = "MY_KEY"\n'
        '[refine]\nmax_iter = 3\n[matcher]\ntop_k = 2\n'
    )
    c = load_config(str(cfg), {"MY_KEY": "secret-value"}).validate()
    assert c.api_key == "secret-value" and c.max_iter == 3 and c.matcher.top_k == 2
    assert "secret-value" not in repr(c)
    assert load_config(str(cfg), {}).api_key is None


def test_config_relative_cassette(tmp_path):
    shutil.copy(GOLDEN / "cassette.jsonl", tmp_path / "c.jsonl")
    cfg = tmp_path / "portfix.toml"
    cfg.write_text('[model]\nbackend = "replay"\ncassette = "c.jsonl"\n')
    assert load_config(str(cfg), {}).validate().cassette == str(tmp_path / "c.jsonl")


@pytest.mark.parametrize(
    "body",
    ['[refine]\nmax_iter = 0\n', '[model]\nbackend = "http"\n', '[compiler]\nbackend = "clang"\n', "not toml ="],
)
def test_config_invalid(tmp_path, body):
    cfg = tmp_path / "portfix.toml"
    cfg.write_text(body)
    with pytest.raises(ConfigError):
        load_config(str(cfg), {}).validate()
