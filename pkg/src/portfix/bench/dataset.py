"""On-disk porting cases: ``<case>/src``, ``<case>/tgt``, manifest and cassette."""
from __future__ import annotations

import json
import os
import shutil
from pathlib import Path
from typing import Dict, List, Sequence

from ..errors import DatasetError, PortfixError
from ..index import CodebaseIndex, FunctionRecord, index_codebase, index_texts
from ..models import RecordingBackend, read_cassette
from .faults import InjectedFault, PortingCase
from .golden import GOLDEN

MANIFEST = "manifest.json"
CASSETTE = "cassette.jsonl"
SUITE_PATH = Path(__file__).resolve().parent.parent / "data" / "suite"


def golden_case(name: str) -> PortingCase:
    g = GOLDEN[name]
    return PortingCase(
        name,
        index_texts(g["src"], root="<src>"),
        index_texts(g["tgt"], root="<tgt>"),
        FunctionRecord.from_text(g["ported"], g["file"]),
        FunctionRecord.from_text(g["ground_truth"], g["file"]),
        [InjectedFault.from_dict(f) for f in g["faults"]],
    )


def golden_cases() -> List[PortingCase]:
    return [golden_case(k) for k in sorted(GOLDEN)]


def _write_tree(root: Path, index: CodebaseIndex) -> None:
    for sf in index.files:
        p = root / sf.path
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(sf.text, encoding="utf-8")


def manifest_of(case: PortingCase) -> dict:
    return {
        "name": case.name,
        "function": case.ported_function.name,
        "file": case.ported_function.file,
        "ported": case.ported_function.text,
        "ground_truth": case.ground_truth.text,
        "faults": [f.to_dict() for f in case.faults],
    }


def save_case(case: PortingCase, root: os.PathLike) -> Path:
    """Write ``case`` under ``root/<case.name>``, replacing any previous copy."""
    d = Path(root) / case.name
    if d.exists():
        shutil.rmtree(d)
    _write_tree(d / "src", case.src_index)
    _write_tree(d / "tgt", case.tgt_index)
    (d / MANIFEST).write_text(json.dumps(manifest_of(case), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    if case.cassette:
        shutil.copyfile(case.cassette, d / CASSETTE)
    return d


def load_case(path: os.PathLike) -> PortingCase:
    d = Path(path)
    name = d.name
    try:
        m = json.loads((d / MANIFEST).read_text(encoding="utf-8"))
        if m.get("name", name) != name:
            raise DatasetError(f"case {name}: manifest names {m['name']!r}")
        ported = FunctionRecord.from_text(m["ported"], m["file"])
        truth = FunctionRecord.from_text(m["ground_truth"], m["file"])
        if ported.name != m["function"]:
            raise DatasetError(f"case {name}: ported text does not define {m['function']!r}")
        faults = [InjectedFault.from_dict(f) for f in m["faults"]]
        src = index_codebase(d / "src")
        tgt = index_codebase(d / "tgt")
        tgt.function(m["function"], m["file"])
    except DatasetError:
        raise
    except (OSError, ValueError, KeyError, TypeError, PortfixError) as exc:
        raise DatasetError(f"case {name}: {exc}") from exc
    cassette = d / CASSETTE
    return PortingCase(name, src, tgt, ported, truth, faults, str(cassette) if cassette.exists() else None)


def case_dirs(root: os.PathLike) -> List[Path]:
    r = Path(root)
    if not r.is_dir():
        raise DatasetError(f"dataset root {root} is not a directory")
    dirs = sorted(p for p in r.iterdir() if p.is_dir())
    if not dirs:
        raise DatasetError(f"dataset root {root} contains no cases")
    return dirs


def load_suite(root: os.PathLike) -> List[PortingCase]:
    return [load_case(p) for p in case_dirs(root)]


def dedupe_cassette(path: os.PathLike) -> None:
    """Keep the first record per digest, ordered by digest."""
    records: Dict[str, dict] = {}
    for rec in read_cassette(path):
        records.setdefault(rec["digest"], rec)
    with open(path, "w", encoding="utf-8") as fh:
        for digest in sorted(records):
            fh.write(json.dumps(records[digest], sort_keys=True) + "\n")


def record_cassette(case_dir: os.PathLike, model, strategies: Sequence[str] = ("diagnostics", "full")) -> Path:
    """Run the model strategies on a saved case and store every exchange."""
    from .evaluate import run_strategy

    d = Path(case_dir)
    path = d / CASSETTE
    if path.exists():
        path.unlink()
    case = load_case(d)
    recorder = RecordingBackend(model, path)
    for s in strategies:
        run_strategy(case, s, lambda _c: recorder)
    if path.exists():
        dedupe_cassette(path)
    else:
        path.write_text("", encoding="utf-8")
    return path


def write_suite(root: os.PathLike, cases: Sequence[PortingCase], model=None) -> List[Path]:
    """Save ``cases`` and, given a model, record a cassette for each."""
    out = []
    for case in cases:
        d = save_case(case, root)
        if model is not None:
            record_cassette(d, model)
        out.append(d)
    return out


def build_suite(root: os.PathLike, seed: int = 7, count: int = 42) -> List[Path]:
    """Generate the synthetic suite plus the golden cases with cassettes."""
    from .generate import generate_suite
    from .simulate import SimulatedModel

    root = Path(root)
    if root.exists():
        for p in root.iterdir():
            if p.is_dir() and (p / MANIFEST).exists():
                shutil.rmtree(p)
    cases = generate_suite(seed, count) + golden_cases()
    return write_suite(root, cases, SimulatedModel())
