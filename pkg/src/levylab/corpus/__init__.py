"""Versioned corpus of example sentences with golden expectations.

Each entry is a formula file under ``data/`` plus a manifest row::

    id <tab> file <tab> expected_class <tab> ord_only <tab> transfer <tab> provenance

Formula files may carry pragmas in comments: ``#@ params: a, b:ordinal`` and
``#@ eval=none``.  Entries listed in :data:`GENERATED` are written by the
partition generator and compared byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from ..classify import classify, is_ordinal_bounded_only
from ..errors import CorpusError
from ..levy import LevyClass
from ..parser import parse
from ..partition import EDM, Mode, PartitionStatementSpec, partition_source
from ..registry import Registry, loads_registry
from ..syntax import Formula, subformulas, DefinedAtom
from ..transfer import ParameterDeclaration, check_transfer

DATA = Path(__file__).parent / "data"

GENERATED: dict[str, PartitionStatementSpec] = {
    "edm": EDM,
    "partition-hom-fin": PartitionStatementSpec(exponent=None),
    "partition-anti-3": PartitionStatementSpec(exponent=3, mode=Mode.ANTI_HOMOGENEOUS),
    "partition-op-2": PartitionStatementSpec(exponent=2, order_preserving=True),
}


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    file: str
    source: str
    formula: Formula
    params: tuple[ParameterDeclaration, ...]
    expected_class: LevyClass
    expected_ord_bounded_only: bool
    expected_transfer: str
    evaluable: bool
    provenance: str


@dataclass
class Mismatch:
    entry: str
    field: str
    expected: str
    actual: str

    def __str__(self) -> str:
        return f"{self.entry}: {self.field} expected {self.expected}, got {self.actual}"


@dataclass
class CheckResult:
    entry: str
    actual: dict[str, str] = field(default_factory=dict)
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def corpus_registry(data_dir: Path = DATA) -> Registry:
    return loads_registry((data_dir / "registry.txt").read_text(encoding="utf-8"))


def generated_header(entry_id: str, spec: PartitionStatementSpec) -> str:
    params = ", ".join(str(p) for p in spec.parameters())
    return (
        f"# {spec.arrow()}\n"
        f"# generated by levylab.partition; regenerate with `levylab corpus check --bless`\n"
        f"#@ params: {params}\n"
        f"#@ eval=none\n"
    )


def generated_text(entry_id: str) -> str:
    spec = GENERATED[entry_id]
    return generated_header(entry_id, spec) + partition_source(spec) + "\n"


def _pragmas(source: str) -> tuple[list[ParameterDeclaration], bool]:
    params: list[ParameterDeclaration] = []
    evaluable = True
    for line in source.splitlines():
        line = line.strip()
        if not line.startswith("#@"):
            continue
        body = line[2:].strip()
        if body.startswith("params:"):
            params.extend(ParameterDeclaration.parse_list(body[len("params:"):]))
        elif body == "eval=none":
            evaluable = False
        else:
            raise CorpusError(f"unknown pragma {line!r}")
    return params, evaluable


def _parse_bool(text: str, where: str) -> bool:
    if text in ("true", "false"):
        return text == "true"
    raise CorpusError(f"{where}: expected true/false, got {text!r}")


def load_corpus(data_dir: Path = DATA) -> list[CorpusEntry]:
    registry = corpus_registry(data_dir)
    entries = []
    for n, line in enumerate((data_dir / "manifest.tsv").read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 6:
            raise CorpusError(f"manifest line {n}: expected 6 tab-separated fields, got {len(cols)}")
        eid, fname, cls, ord_only, transfer, provenance = cols
        source = (data_dir / fname).read_text(encoding="utf-8")
        params, evaluable = _pragmas(source)
        formula = parse(source, registry)
        atoms = [a for a in subformulas(formula) if isinstance(a, DefinedAtom)]
        if any(registry.get(a.name).evaluator is None for a in atoms):
            evaluable = False
        entries.append(CorpusEntry(
            eid, fname, source, formula, tuple(params), LevyClass.parse(cls),
            _parse_bool(ord_only, f"manifest line {n}"), transfer, evaluable, provenance,
        ))
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise CorpusError("duplicate corpus ids")
    return entries


@lru_cache(maxsize=1)
def _cached() -> tuple[CorpusEntry, ...]:
    return tuple(load_corpus())


def corpus() -> list[CorpusEntry]:
    return list(_cached())


def get_entry(entry_id: str) -> CorpusEntry:
    for e in _cached():
        if e.id == entry_id:
            return e
    raise CorpusError(f"no corpus entry {entry_id!r}")


def evaluable_entries() -> list[CorpusEntry]:
    return [e for e in _cached() if e.evaluable]


def check_entry(entry: CorpusEntry, registry: Registry | None = None, data_dir: Path = DATA) -> CheckResult:
    registry = registry or corpus_registry(data_dir)
    res = CheckResult(entry.id)
    cls = classify(entry.formula, "zf", registry)[0]
    ord_only = is_ordinal_bounded_only(entry.formula)
    verdict = check_transfer(entry.formula, entry.params, registry)
    res.actual = {
        "class": str(cls),
        "ord_only": "true" if ord_only else "false",
        "transfer": verdict.outcome,
    }
    expected = {
        "class": str(entry.expected_class),
        "ord_only": "true" if entry.expected_ord_bounded_only else "false",
        "transfer": entry.expected_transfer,
    }
    for key, want in expected.items():
        if res.actual[key] != want:
            res.mismatches.append(Mismatch(entry.id, key, want, res.actual[key]))
    if entry.id in GENERATED and entry.source != generated_text(entry.id):
        res.mismatches.append(Mismatch(entry.id, "generated source", "generator output", "stale file"))
    return res


def check_corpus(data_dir: Path = DATA) -> list[CheckResult]:
    registry = corpus_registry(data_dir)
    return [check_entry(e, registry, data_dir) for e in load_corpus(data_dir)]


def bless(data_dir: Path = DATA) -> list[str]:
    """Regenerate generated files and rewrite manifest expectations from tool output.

    Returns the ids whose rows or files changed.
    """
    changed = []
    for eid in GENERATED:
        path = data_dir / f"{eid}.lvy"
        text = generated_text(eid)
        if not path.exists() or path.read_text(encoding="utf-8") != text:
            path.write_text(text, encoding="utf-8")
            changed.append(eid)
    manifest = data_dir / "manifest.tsv"
    lines = manifest.read_text(encoding="utf-8").splitlines()
    results = {r.entry: r for r in check_corpus(data_dir)}
    out = []
    for line in lines:
        if not line.strip() or line.startswith("#"):
            out.append(line)
            continue
        cols = line.split("\t")
        act = results[cols[0]].actual
        new = [cols[0], cols[1], act["class"], act["ord_only"], act["transfer"], cols[5]]
        if new != cols and cols[0] not in changed:
            changed.append(cols[0])
        out.append("\t".join(new))
    manifest.write_text("\n".join(out) + "\n", encoding="utf-8")
    _cached.cache_clear()
    return changed
