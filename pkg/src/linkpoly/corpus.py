"""Bundled test diagrams with frozen reference values, and batch PD input.

Corpus files hold one entry per block of ``key: value`` lines separated by
blank lines::

    name: trefoil
    pd: X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]
    components: 1
    oracle_homfly: ...
    oracle_kauffman: ...

HOMFLY values refer to the orientation the PD code implies.  The frozen values
come from :mod:`linkpoly.oracle`; ``python3 -m linkpoly.oracle`` rewrites them.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

from .diagram import DiagramError, LinkDiagram, default_orientation, parse_pd
from .expansion import verify_identity
from .homfly import evaluate_homfly
from .kauffman import evaluate_kauffman
from .laurent import RationalFunction, parse_rational

__all__ = [
    "BUNDLED_PATH",
    "CorpusEntry",
    "CorpusError",
    "CheckRow",
    "CrossCheckReport",
    "parse_corpus",
    "format_corpus",
    "load_corpus",
    "bundled_corpus",
    "find_entry",
    "cross_check",
    "load_pd_batch",
]

BUNDLED_PATH = Path(__file__).with_name("data") / "corpus.txt"


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    pd: str
    components: int
    oracle_homfly: RationalFunction | None = field(default=None, compare=False)
    oracle_kauffman: RationalFunction | None = field(default=None, compare=False)

    def __post_init__(self):
        d = self.diagram()
        if d.component_count != self.components:
            raise CorpusError(f"{self.name}: stored component count {self.components}, "
                              f"diagram has {d.component_count}")

    def diagram(self) -> LinkDiagram:
        return parse_pd(self.pd)

    def with_oracles(self, homfly: RationalFunction, kauffman: RationalFunction) -> CorpusEntry:
        return replace(self, oracle_homfly=homfly, oracle_kauffman=kauffman)


def parse_corpus(text: str) -> list[CorpusEntry]:
    entries = []
    for block in _blocks(text):
        fields: dict[str, str] = {}
        for line in block:
            key, sep, value = line.partition(":")
            if not sep:
                raise CorpusError(f"expected 'key: value', got {line!r}")
            fields[key.strip()] = value.strip()
        if "name" not in fields or "pd" not in fields:
            raise CorpusError(f"entry needs name and pd: {block}")
        try:
            d = parse_pd(fields["pd"])
            components = int(fields.get("components", d.component_count))
            homfly = parse_rational(fields["oracle_homfly"]) if "oracle_homfly" in fields else None
            kauffman = parse_rational(fields["oracle_kauffman"]) if "oracle_kauffman" in fields else None
        except (DiagramError, ValueError) as exc:
            raise CorpusError(f"{fields['name']}: {exc}") from exc
        entries.append(CorpusEntry(fields["name"], fields["pd"], components, homfly, kauffman))
    return entries


def _blocks(text: str) -> Iterable[list[str]]:
    block: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if block:
                yield block
            block = []
        else:
            block.append(line)
    if block:
        yield block


def format_corpus(entries: Sequence[CorpusEntry]) -> str:
    chunks = []
    for e in entries:
        lines = [f"name: {e.name}", f"pd: {e.pd}", f"components: {e.components}"]
        if e.oracle_homfly is not None:
            lines.append(f"oracle_homfly: {e.oracle_homfly}")
        if e.oracle_kauffman is not None:
            lines.append(f"oracle_kauffman: {e.oracle_kauffman}")
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + ("\n" if chunks else "")


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    return parse_corpus(Path(path).read_text())


def bundled_corpus() -> list[CorpusEntry]:
    return load_corpus(BUNDLED_PATH)


def find_entry(name: str, entries: Sequence[CorpusEntry] | None = None) -> CorpusEntry:
    for e in entries if entries is not None else bundled_corpus():
        if e.name == name:
            return e
    raise KeyError(f"no corpus entry named {name!r}")


def load_pd_batch(path: str | Path) -> list[tuple[str, LinkDiagram]]:
    """One PD code per non-empty line; a single-diagram file is one line.
    Lines may start with ``name:`` to label the diagram."""
    out = []
    for k, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, rest = line.partition(":")
        if sep and "[" not in name:
            out.append((name.strip(), parse_pd(rest)))
        else:
            out.append((f"line{k}", parse_pd(line)))
    return out


@dataclass
class CheckRow:
    name: str
    homfly_ok: bool
    kauffman_ok: bool
    identity_ok: bool
    states: int
    seconds: float
    messages: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.homfly_ok and self.kauffman_ok and self.identity_ok


@dataclass
class CrossCheckReport:
    rows: list[CheckRow]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def lines(self) -> list[str]:
        out = []
        for r in self.rows:
            status = "PASS" if r.passed else "FAIL"
            out.append(f"{status} {r.name} states={r.states} time={r.seconds:.3f}s")
            out.extend("    " + m for m in r.messages)
        return out


def _check(e: CorpusEntry) -> CheckRow:
    start = time.perf_counter()
    d = e.diagram()
    messages = []
    homfly_ok = kauffman_ok = True
    if e.oracle_homfly is not None:
        got = evaluate_homfly(default_orientation(d))
        homfly_ok = got == e.oracle_homfly
        if not homfly_ok:
            messages.append(f"homfly: computed {got} but frozen {e.oracle_homfly}")
    if e.oracle_kauffman is not None:
        got = evaluate_kauffman(d)
        kauffman_ok = got == e.oracle_kauffman
        if not kauffman_ok:
            messages.append(f"kauffman: computed {got} but frozen {e.oracle_kauffman}")
    report = verify_identity(d)
    if not report.equal:
        messages.append(f"expansion: {report.expansion} but kauffman {report.kauffman}")
    return CheckRow(e.name, homfly_ok, kauffman_ok, report.equal, report.states,
                    time.perf_counter() - start, messages)


def cross_check(entries: Sequence[CorpusEntry] | None = None, jobs: int = 1) -> CrossCheckReport:
    """Compare both engines with the frozen values and check the expansion
    identity for every entry.  Rows keep the input order."""
    entries = list(entries) if entries is not None else bundled_corpus()
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_check, entries))
    else:
        rows = [_check(e) for e in entries]
    return CrossCheckReport(rows)
