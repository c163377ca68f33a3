"""Canonical JSON documents and plain-text tables for invariant reports."""

from __future__ import annotations

import json
from typing import Any

from . import __version__
from .characteristic import InvariantReport
from .data import matrix_hash
from .exact_math import IntegerMatrix


def _s(x) -> str | None:
    return None if x is None else str(x)


def _idx(indices) -> list[str]:
    return [str(i + 1) for i in sorted(indices)]


def report_document(report: InvariantReport, matrix: IntegerMatrix, role: str = "A") -> dict[str, Any]:
    faces = []
    for k, r in enumerate(report.records, 1):
        faces.append(
            {
                "id": str(k),
                "dim": str(r.face.dim),
                "kind": r.face.kind.value,
                "points": _idx(r.face.points),
                "complement": _idx(r.face.complement),
                "vol": str(r.vol),
                "mu_P": _s(r.mu_P),
                "i_P": _s(r.i_P),
                "eu": str(r.eu),
            }
        )
    return {
        "input": {"role": role, "n": str(report.n), "hash": matrix_hash(matrix)},
        "faces": faces,
        "V": [str(v) for v in report.V],
        "delta": [str(d) for d in report.delta],
        "degree": str(report.degree),
        "dual_degree": str(report.dual_degree),
        "ed_degree": str(report.ed_degree),
        "convention": report.convention,
        "version": __version__,
    }


def dumps(doc: Any) -> str:
    """Canonical serialization: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def loads(text: str) -> Any:
    return json.loads(text)


def _fmt(x) -> str:
    return "-" if x is None else str(x)


def _set(indices) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(indices)) + "}"


def render_table(report: InvariantReport) -> str:
    header = ("face", "B_face", "dim", "Vol", "mu(P,.)", "i(P,.)", "Eu")
    rows = [header]
    for r in report.records:
        name = "P" if not r.face.complement else _set(r.face.points)
        rows.append((name, _set(r.face.complement), str(r.face.dim), str(r.vol), _fmt(r.mu_P), _fmt(r.i_P), str(r.eu)))
    widths = [max(len(row[c]) for row in rows) for c in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    tup = lambda v: "(" + ", ".join(map(str, v)) + ")"  # noqa: E731
    lines += [
        "",
        f"convention  = {report.convention}",
        f"V           = {tup(report.V)}",
        f"delta       = {tup(report.delta)}",
        f"degree      = {report.degree}",
        f"dual degree = {report.dual_degree}",
        f"ED degree   = {report.ed_degree}",
    ]
    return "\n".join(lines) + "\n"
