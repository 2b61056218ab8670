"""Command-line entry point: index, check, refine, explain, eval and gen."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import diag
from .diag import DEFAULT_COMMAND, ExternalBackend, RefCheckBackend
from .errors import (
    AmbiguousPatchTarget,
    ConfigError,
    DatasetError,
    IndexingError,
    ModelBackendError,
    PatchTargetMissing,
)
from .cparse import ParseError
from .index import FunctionRecord, IndexConfig, apply_patch, load_or_build
from .match import MatcherConfig
from .models import HttpBackend, RecordingBackend, ReplayBackend
from .sched import CLEAN, RefinementRequest, explain, refine

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

log = logging.getLogger("portfix")

EXIT_OK = 0
EXIT_UNCLEAN = 1
EXIT_USAGE = 2
EXIT_TARGET = 3
EXIT_BACKEND = 4
EXIT_DATASET = 5

DEFAULT_KEY_ENV = "PORTFIX_API_KEY"
_CREDENTIAL_KEYS = ("api_key", "key", "token", "password", "secret")


@dataclass
class Config:
    compiler: str = "refcheck"
    compiler_command: str = DEFAULT_COMMAND
    include_dirs: Tuple[str, ...] = ()
    model: str = "replay"
    endpoint: Optional[str] = None
    model_name: Optional[str] = None
    api_key_env: str = DEFAULT_KEY_ENV
    api_key: Optional[str] = field(default=None, repr=False)
    cassette: Optional[str] = None
    matcher: MatcherConfig = field(default_factory=MatcherConfig)
    max_iter: int = 5
    extensions: Tuple[str, ...] = (".c", ".h")

    def validate(self) -> "Config":
        if self.compiler not in ("refcheck", "external"):
            raise ConfigError(f"unknown compiler backend {self.compiler!r}")
        if self.model not in ("http", "replay", "record"):
            raise ConfigError(f"unknown model backend {self.model!r}")
        if not 1 <= self.max_iter <= 100:
            raise ConfigError("max_iter must lie in [1, 100]")
        if not self.extensions:
            raise ConfigError("at least one file extension is required")
        if self.model == "replay" and self.cassette and not Path(self.cassette).is_file():
            raise ConfigError(f"cassette not found: {self.cassette}")
        if self.model in ("http", "record") and not (self.endpoint and self.model_name):
            raise ConfigError("http models need [model] endpoint and name")
        for d in self.include_dirs:
            if not Path(d).is_dir():
                raise ConfigError(f"include directory not found: {d}")
        return self


def load_config(path: Optional[str], environ=os.environ) -> Config:
    """Read TOML configuration; credentials come only from the environment."""
    data: dict = {}
    if path:
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    comp = data.get("compiler", {})
    model = data.get("model", {})
    for k in _CREDENTIAL_KEYS:
        if k in model:
            raise ConfigError(f"[model] {k} must not be stored in config; set an environment variable instead")
    try:
        m = data.get("matcher", {})
        matcher = MatcherConfig(
            top_n=int(m.get("top_n", 5)),
            top_k=int(m.get("top_k", 3)),
            name_threshold=float(m.get("name_threshold", 0.5)),
            body_threshold=float(m.get("body_threshold", 0.3)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[matcher] {exc}") from exc
    base = Path(path).parent if path else Path(".")

    def rel(p):
        return str(base / p) if p else None

    cfg = Config(
        compiler=comp.get("backend", "refcheck"),
        compiler_command=comp.get("command", DEFAULT_COMMAND),
        include_dirs=tuple(rel(d) for d in comp.get("include_dirs", ())),
        model=model.get("backend", "replay"),
        endpoint=model.get("endpoint"),
        model_name=model.get("name"),
        api_key_env=model.get("api_key_env", DEFAULT_KEY_ENV),
        cassette=rel(model.get("cassette")),
        matcher=matcher,
        max_iter=int(data.get("refine", {}).get("max_iter", 5)),
        extensions=tuple(data.get("index", {}).get("extensions", (".c", ".h"))),
    )
    cfg.api_key = environ.get(cfg.api_key_env)
    return cfg


def _apply_flags(cfg: Config, args) -> Config:
    if getattr(args, "backend", None):
        cfg.compiler = args.backend
    if getattr(args, "model", None):
        cfg.model = args.model
    if getattr(args, "cassette", None):
        cfg.cassette = args.cassette
    if getattr(args, "max_iter", None) is not None:
        cfg.max_iter = args.max_iter
    return cfg.validate()


def make_compiler(cfg: Config):
    if cfg.compiler == "external":
        return ExternalBackend(command=cfg.compiler_command, include_dirs=cfg.include_dirs)
    return RefCheckBackend()


def make_model(cfg: Config, cassette: Optional[str] = None):
    cassette = cassette or cfg.cassette
    if cfg.model == "replay":
        if cassette is None:
            return ReplayBackend()
        return ReplayBackend(cassette)
    http = HttpBackend(cfg.endpoint, cfg.model_name, cfg.api_key)
    if cfg.model == "record":
        if cassette is None:
            raise ConfigError("record mode needs a cassette path")
        return RecordingBackend(http, cassette)
    return http


# ---------------------------------------------------------------------------
# commands


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


def cmd_index(args, cfg: Config) -> int:
    index, hit = load_or_build(args.root, IndexConfig(cfg.extensions))
    counts = {
        "files": len(index.files),
        "functions": sum(1 for _ in index.all_functions()),
        "definitions": sum(len(v) for v in index.definitions.values()),
        "cache_hit": hit,
    }
    human = (
        f"files: {counts['files']}\nfunctions: {counts['functions']}\n"
        f"definitions: {counts['definitions']}\n{'cache hit' if hit else 'index built'}"
    )
    _emit(args, counts, human)
    return EXIT_OK


def _load_target(args, cfg: Config):
    ext = IndexConfig(cfg.extensions)
    tgt, _ = load_or_build(args.tgt, ext, write=False)
    func = None
    if args.patched_file:
        func = _read_patched(args.patched_file, args.function, tgt)
        tgt = apply_patch(tgt, func)
    elif args.function:
        func = tgt.function(args.function)
    return tgt, func


def _read_patched(path: str, name: Optional[str], tgt) -> FunctionRecord:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise PatchTargetMissing(f"cannot read {path}: {exc}") from exc
    try:
        func = FunctionRecord.from_text(text)
    except ParseError as exc:
        raise PatchTargetMissing(f"{path}: {exc}") from exc
    if name and func.name != name:
        raise PatchTargetMissing(f"{path} defines {func.name!r}, not {name!r}")
    current = tgt.function(func.name)
    return FunctionRecord.from_text(text, current.file)


def cmd_check(args, cfg: Config) -> int:
    tgt, func = _load_target(args, cfg)
    diags = diag.compile(tgt, make_compiler(cfg), func)
    if func is not None:
        diags = diag.in_scope(diags)
    lines = [f"{d.file}:{d.line}:{d.column}: [{d.kind}] {d.message}" for d in diags]
    _emit(args, {"diagnostics": [d.to_dict() for d in diags]}, "\n".join(lines) or "no diagnostics")
    return EXIT_OK if not diags else EXIT_UNCLEAN


def _run_refine(args, cfg: Config):
    if not args.patched_file:
        raise PatchTargetMissing("--patched-file is required")
    ext = IndexConfig(cfg.extensions)
    src, _ = load_or_build(args.src, ext, write=False)
    tgt, _ = load_or_build(args.tgt, ext, write=False)
    func = _read_patched(args.patched_file, args.function, tgt)
    req = RefinementRequest(
        func, tgt, src, make_model(cfg), make_compiler(cfg), cfg.max_iter, cfg.matcher
    )
    return refine(req)


def _refine_exit(result) -> int:
    if result.status == CLEAN:
        return EXIT_OK
    if result.backend_errors:
        for e in result.backend_errors:
            print(f"backend error: {e.payload.get('error_type')}: {e.payload.get('message')}", file=sys.stderr)
        return EXIT_BACKEND
    return EXIT_UNCLEAN


def cmd_refine(args, cfg: Config) -> int:
    result = _run_refine(args, cfg)
    text = result.refined_function.text
    if args.out:
        out = Path(args.out)
        out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        out.with_name(out.name + ".trace.json").write_text(result.dumps() + "\n", encoding="utf-8")
    if args.json:
        print(result.dumps())
    elif not args.out:
        print(text)
    print(f"status: {result.status} after {result.iterations_used} iteration(s)", file=sys.stderr)
    return _refine_exit(result)


def cmd_explain(args, cfg: Config) -> int:
    result = _run_refine(args, cfg)
    if args.json:
        print(result.dumps())
    else:
        print(explain(result))
    return _refine_exit(result)


def cmd_eval(args, cfg: Config) -> int:
    from .bench.dataset import load_suite
    from .bench.evaluate import evaluate, replay_factory

    strategies = args.strategies
    cases = load_suite(args.dataset)
    if cfg.model == "replay":
        factory = replay_factory
    else:
        factory = lambda case: make_model(cfg, case.cassette or str(Path(args.dataset) / case.name / "cassette.jsonl"))
    report = evaluate(cases, strategies, factory, cfg.max_iter)
    if args.out:
        Path(args.out).write_text(report.dumps() + "\n", encoding="utf-8")
    if args.json:
        print(report.dumps())
    else:
        print(report.table())
    return EXIT_OK


def cmd_gen(args, cfg: Config) -> int:
    from .bench.dataset import build_suite

    dirs = build_suite(args.out_dir, seed=args.seed, count=args.count)
    _emit(args, {"cases": [d.name for d in dirs]}, f"wrote {len(dirs)} cases to {args.out_dir}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _strategies(text: str) -> List[str]:
    from .bench.evaluate import STRATEGIES

    names = [s.strip() for s in text.split(",") if s.strip()]
    for n in names:
        if n not in STRATEGIES:
            raise argparse.ArgumentTypeError(f"unknown strategy {n!r} (choose from {', '.join(STRATEGIES)})")
    return names


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML configuration file")
    common.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    run = argparse.ArgumentParser(add_help=False)
    run.add_argument("--backend", choices=("external", "refcheck"), help="compiler backend")
    run.add_argument("--model", choices=("http", "replay", "record"), help="model backend")
    run.add_argument("--cassette", help="cassette for replay/record")
    run.add_argument("--max-iter", type=int, dest="max_iter")

    target = argparse.ArgumentParser(add_help=False)
    target.add_argument("--tgt", required=True, help="target codebase root")
    target.add_argument("--function", help="name of the ported function")
    target.add_argument("--patched-file", dest="patched_file", help="file holding the ported function")

    p = argparse.ArgumentParser(prog="portfix", description="Detect and repair implicit inconsistencies in ported C patches.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("index", parents=[common], help="build and cache a codebase index")
    s.add_argument("root")
    s.set_defaults(func=cmd_index)

    s = sub.add_parser("check", parents=[common, target], help="compile and classify diagnostics")
    s.add_argument("--backend", choices=("external", "refcheck"))
    s.set_defaults(func=cmd_check)

    for name, fn, help_ in (
        ("refine", cmd_refine, "refine a ported function"),
        ("explain", cmd_explain, "refine and explain every decision"),
    ):
        s = sub.add_parser(name, parents=[common, run, target], help=help_)
        s.add_argument("--src", required=True, help="source codebase root")
        s.add_argument("--out", help="write the refined function here (trace goes next to it)")
        s.set_defaults(func=fn)

    s = sub.add_parser("eval", parents=[common, run], help="score strategies on a dataset")
    s.add_argument("dataset")
    s.add_argument("--strategies", type=_strategies, default=["cs", "cs+", "diagnostics", "full"])
    s.add_argument("--out", help="write the JSON report here")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("gen", parents=[common], help="generate the synthetic suite with cassettes")
    s.add_argument("out_dir")
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--count", type=int, default=42)
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = _apply_flags(load_config(args.config), args)
        return args.func(args, cfg)
    except ConfigError as exc:
        print(f"portfix: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IndexingError as exc:
        print(f"portfix: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PatchTargetMissing, AmbiguousPatchTarget) as exc:
        print(f"portfix: target error: {exc}", file=sys.stderr)
        return EXIT_TARGET
    except ModelBackendError as exc:
        print(f"portfix: backend error: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except DatasetError as exc:
        print(f"portfix: dataset error: {exc}", file=sys.stderr)
        return EXIT_DATASET


if __name__ == "__main__":
    sys.exit(main())
