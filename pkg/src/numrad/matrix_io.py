"""Plain-text matrix format.

The first line holds the dimension ``n``; each of the next ``n`` lines holds
``n`` whitespace-separated entries written ``a+bi`` or ``a-bi``.  Writing with
17 significant digits makes ``parse(format(M))`` reproduce ``M`` bit for bit.
"""

from __future__ import annotations

import math
import re
from pathlib import Path

import numpy as np

from numrad.errors import ParseError
from numrad.linalg import as_matrix

_REAL = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_ENTRY = re.compile(rf"^(?P<re>[+-]?{_REAL})(?:(?P<sign>[+-])(?P<im>{_REAL})?[ij])?$")
_IMAG_ONLY = re.compile(rf"^(?P<im>[+-]?(?:{_REAL})?)[ij]$")


def format_real(x: float, digits: int = 17) -> str:
    return f"{x:.{digits}g}"


def format_entry(z: complex, digits: int = 17) -> str:
    re_part, im_part = z.real, z.imag
    sign = "-" if math.copysign(1.0, im_part) < 0 else "+"
    return f"{format_real(re_part, digits)}{sign}{format_real(abs(im_part), digits)}i"


def parse_entry(token: str) -> complex:
    m = _ENTRY.match(token)
    if m:
        re_part = float(m.group("re"))
        if m.group("sign") is None:
            return complex(re_part, 0.0)
        im_text = m.group("im") or "1"
        im_part = float(im_text)
        return complex(re_part, -im_part if m.group("sign") == "-" else im_part)
    m = _IMAG_ONLY.match(token)
    if m:
        text = m.group("im")
        im_part = float(text + "1") if text in ("", "+", "-") else float(text)
        return complex(0.0, im_part)
    raise ParseError(f"cannot parse matrix entry {token!r}")


def format_matrix(m, digits: int = 17) -> str:
    a = np.asarray(m, dtype=np.complex128)
    lines = [str(a.shape[0])]
    for row in a:
        lines.append(" ".join(format_entry(complex(z), digits) for z in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty matrix text")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"first line must be the dimension, got {lines[0]!r}") from None
    if n < 1:
        raise ParseError(f"dimension must be positive, got {n}")
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}")
    entries = []
    for i, row in enumerate(rows):
        tokens = row.split()
        if len(tokens) != n:
            raise ParseError(f"row {i + 1} has {len(tokens)} entries, expected {n}")
        entries.append([parse_entry(tok) for tok in tokens])
    a = np.array(entries, dtype=np.complex128)
    if not np.all(np.isfinite(a)):
        raise ParseError("matrix entries must be finite")
    return as_matrix(a)


def parse_matrices(text: str) -> list[np.ndarray]:
    """Several matrices written back to back, each starting with its dimension line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    out = []
    i = 0
    while i < len(lines):
        try:
            n = int(lines[i])
        except ValueError:
            raise ParseError(f"expected a dimension line, got {lines[i]!r}") from None
        out.append(parse_matrix("\n".join(lines[i:i + n + 1])))
        i += n + 1
    return out


def read_matrix(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_matrix(text)


def write_matrix(path, m, digits: int = 17) -> None:
    Path(path).write_text(format_matrix(m, digits))
