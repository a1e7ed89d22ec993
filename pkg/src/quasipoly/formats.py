"""Text files for function tables (.qpf), set functions (.qsf) and unary maps (.qum).

Each file is a magic line, a shape line, then whitespace-separated integers::

    qpf 1                     qsf 1                     qum 1
    chain <m> arity <n>       arity <n> chain <m>       chain <m>
    <m**n values>             <2**n values>             <m values>
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Union

from .chain import ChainError, FiniteChain
from .poly import SetFunction
from .table import DiscreteFunction, UnaryMap

Loaded = Union[DiscreteFunction, SetFunction, UnaryMap]

_SHAPES = {
    "qpf": ("chain", "arity"),
    "qsf": ("arity", "chain"),
    "qum": ("chain",),
}


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def _values(body: list[str], first_line: int):
    """(value, line, column) for every token after the two header lines."""
    for offset, text in enumerate(body):
        for match in re.finditer(r"\S+", text):
            yield match.group(), first_line + offset, match.start() + 1


def _header(lines: list[str], kind: str) -> dict[str, int]:
    if not lines or lines[0].strip() != f"{kind} 1":
        got = lines[0].strip() if lines else "empty input"
        raise FormatError(f"expected header '{kind} 1', got {got!r}", 1, 1)
    if len(lines) < 2:
        raise FormatError("missing shape line", 2)
    keys = _SHAPES[kind]
    tokens = lines[1].split()
    expected = " ".join(f"{k} <int>" for k in keys)
    if len(tokens) != 2 * len(keys) or tokens[0::2] != list(keys):
        raise FormatError(f"expected shape line '{expected}', got {lines[1].strip()!r}", 2, 1)
    shape = {}
    for key, raw in zip(keys, tokens[1::2]):
        if not raw.isdigit():
            raise FormatError(f"{key} must be a non-negative integer, got {raw!r}", 2,
                              lines[1].index(raw) + 1)
        shape[key] = int(raw)
    if shape["chain"] < 2:
        raise FormatError(f"chain size must be >= 2, got {shape['chain']}", 2)
    if shape.get("arity", 1) < 1:
        raise FormatError(f"arity must be >= 1, got {shape['arity']}", 2)
    return shape


def _body(lines: list[str], count: int, m: int) -> tuple[int, ...]:
    tokens = list(_values(lines[2:], 3))
    if len(tokens) != count:
        line = tokens[count][1] if len(tokens) > count else max(len(lines), 3)
        column = tokens[count][2] if len(tokens) > count else None
        raise FormatError(f"expected {count} values, got {len(tokens)}", line, column)
    out = []
    for raw, line, column in tokens:
        if not re.fullmatch(r"-?\d+", raw):
            raise FormatError(f"not an integer: {raw!r}", line, column)
        v = int(raw)
        if not 0 <= v < m:
            raise FormatError(f"value {v} outside chain 0..{m - 1}", line, column)
        out.append(v)
    return tuple(out)


def _split(text: str) -> list[str]:
    return text.splitlines()


def parse_function(text: str) -> DiscreteFunction:
    lines = _split(text)
    shape = _header(lines, "qpf")
    m, n = shape["chain"], shape["arity"]
    return DiscreteFunction(FiniteChain(m), n, _body(lines, m**n, m))


def parse_set_function(text: str) -> SetFunction:
    lines = _split(text)
    shape = _header(lines, "qsf")
    m, n = shape["chain"], shape["arity"]
    return SetFunction(FiniteChain(m), n, _body(lines, 1 << n, m))


def parse_unary(text: str) -> UnaryMap:
    lines = _split(text)
    m = _header(lines, "qum")["chain"]
    return UnaryMap(FiniteChain(m), _body(lines, m, m))


def serialize(obj: Loaded) -> str:
    if isinstance(obj, DiscreteFunction):
        head = f"qpf 1\nchain {obj.m} arity {obj.arity}"
        values = obj.table
    elif isinstance(obj, SetFunction):
        head = f"qsf 1\narity {obj.arity} chain {obj.chain.size}"
        values = obj.values
    elif isinstance(obj, UnaryMap):
        head = f"qum 1\nchain {obj.chain.size}"
        values = obj.values
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return head + "\n" + " ".join(map(str, values)) + "\n"


_PARSERS = {"qpf": parse_function, "qsf": parse_set_function, "qum": parse_unary}


def parse(text: str) -> Loaded:
    """Parse any of the three formats, chosen by the magic line."""
    first = text.split("\n", 1)[0].split()
    kind = first[0] if first else ""
    if kind not in _PARSERS:
        raise FormatError(f"unknown file type {kind!r}; expected qpf, qsf or qum", 1, 1)
    try:
        return _PARSERS[kind](text)
    except ChainError as exc:
        raise FormatError(str(exc)) from exc


def load(path: str | Path) -> Loaded:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise FormatError(f"{path}: not UTF-8 text") from exc
    return parse(text)


def save(obj: Loaded, path: str | Path) -> None:
    Path(path).write_text(serialize(obj), encoding="utf-8")
