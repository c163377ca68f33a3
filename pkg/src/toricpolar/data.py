"""Matrix text files and the bundled fixtures."""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path

from .exact_math import IntegerMatrix

FIXTURES = (
    "running_example",
    "twisted_cubic",
    "A1",
    "A2",
    "A3",
    "A4",
    "A5",
    "A6",
)


class MatrixParseError(ValueError):
    pass


class UnknownFixtureError(LookupError):
    def __init__(self, name: str):
        super().__init__(f"unknown fixture {name!r}; available fixtures: {', '.join(FIXTURES)}")
        self.name = name


def parse_matrix(text: str, source: str = "<text>") -> IntegerMatrix:
    """One row per line, whitespace-separated integers; ``#`` lines and blank lines skipped."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            rows.append([int(tok) for tok in stripped.split()])
        except ValueError:
            raise MatrixParseError(f"{source}:{lineno}: non-integer entry in {stripped!r}") from None
        if len(rows[-1]) != len(rows[0]):
            raise MatrixParseError(
                f"{source}:{lineno}: ragged row ({len(rows[-1])} entries, expected {len(rows[0])})"
            )
    if not rows:
        raise MatrixParseError(f"{source}: no matrix rows found")
    return IntegerMatrix.from_rows(rows)


def format_matrix(M: IntegerMatrix) -> str:
    rows = M.to_rows()
    width = max((len(str(x)) for r in rows for x in r), default=1)
    return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in rows)


def matrix_hash(M: IntegerMatrix) -> str:
    canon = ";".join(",".join(map(str, r)) for r in M.to_rows())
    return hashlib.sha256(f"{M.rows}x{M.cols}:{canon}".encode()).hexdigest()


def _fixture_dir():
    return resources.files("toricpolar") / "fixtures"


def fixture_matrix(name: str) -> IntegerMatrix:
    if name not in FIXTURES:
        raise UnknownFixtureError(name)
    text = (_fixture_dir() / f"{name}.txt").read_text()
    return parse_matrix(text, f"fixture {name}")


def golden(name: str | None = None) -> dict:
    """Reference values shipped with the fixtures, integers as decimal strings."""
    data = json.loads((_fixture_dir() / "golden.json").read_text())
    return data if name is None else data[name]


def load_matrix(source: str) -> tuple[IntegerMatrix, str]:
    """Read ``source`` as a file path if it exists, otherwise as a fixture name."""
    path = Path(source)
    if path.is_file():
        return parse_matrix(path.read_text(), str(path)), str(path)
    if source in FIXTURES:
        return fixture_matrix(source), source
    if path.suffix or "/" in source:
        raise FileNotFoundError(f"no such file: {source}")
    raise UnknownFixtureError(source)
