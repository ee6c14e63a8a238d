"""Machine-readable and text reports with source traceability."""

from __future__ import annotations

import json
from importlib import resources
from typing import Iterable, Optional

from .minimize import CheckStats
from .reduction import Gr1Problem

SCHEMA_RESOURCE = "report.schema.json"


def load_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath(SCHEMA_RESOURCE).read_text())


def element_entry(problem: Gr1Problem, eid) -> dict:
    decl = problem.decls[eid]
    return {
        "id": eid.ordinal,
        "kind": eid.kind,
        "source_line": eid.line,
        "origin": eid.origin,
        "text": " ".join(decl.text.split()),
    }


def _elements(problem, ids) -> list:
    return [element_entry(problem, i) for i in sorted(ids)]


def make_report(problem: Gr1Problem, *, realizable: bool, algorithm: str,
                cores: Iterable = (), intersection: Optional[Iterable] = None,
                complete: bool = True, stats: Optional[CheckStats] = None,
                elapsed: float = 0.0) -> dict:
    stats = stats or CheckStats()
    ordered = sorted((frozenset(c) for c in cores), key=lambda c: sorted(c))
    return {
        "realizable": realizable,
        "algorithm": algorithm,
        "cores": [_elements(problem, c) for c in ordered],
        "intersection": None if intersection is None else _elements(problem, intersection),
        "complete": complete,
        "stats": {
            "actual_checks": stats.actual_checks,
            "memo_hits": stats.memo_hits,
            "core_computations": stats.core_computations,
            "syswin_checks": stats.syswin_checks,
            "elapsed_ms": round(elapsed * 1000.0, 3),
        },
    }


def _lines(entries) -> str:
    return ", ".join(str(e["source_line"]) for e in entries) or "(none)"


def format_text(report: dict, show_stats: bool = False) -> str:
    out = ["REALIZABLE" if report["realizable"] else "UNREALIZABLE"]
    if report["algorithm"] != "check":
        out.append(f"algorithm: {report['algorithm']}")
    for n, core in enumerate(report["cores"], 1):
        out.append(f"core {n}: lines {_lines(core)}")
        for e in core:
            out.append(f"  {e['source_line']:>4}  [{e['origin']}] {e['text']}")
    if report["intersection"] is not None:
        out.append(f"intersection: lines {_lines(report['intersection'])}")
    if not report["complete"]:
        out.append("INCOMPLETE: timeout reached, cores above are partial")
    if show_stats:
        s = report["stats"]
        out.append(
            "stats: actual_checks={actual_checks} memo_hits={memo_hits} "
            "core_computations={core_computations} syswin_checks={syswin_checks} "
            "elapsed_ms={elapsed_ms}".format(**s)
        )
    return "\n".join(out)
