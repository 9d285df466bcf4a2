"""Reading and writing arrangement files (TOML, or JSON with the same layout).

Example::

    name = "P(1,2)"

    [group]
    rank = 1
    torsion = []

    [beta]
    vectors = [[1], [-2]]

    [theta]
    lift = [0, 1]     # or: value = [1]
    sign = 1
"""

from __future__ import annotations

import json
import re
import sys
from importlib import resources
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised on 3.10 only
    import tomli as tomllib

from .arrangement import StackyArrangement, validate_data, ValidationReport
from .zlattice import FgAbGroup


class InputError(Exception):
    """Base class for problems with an input document."""


class ParseError(InputError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 key: Optional[str] = None):
        self.line, self.column, self.key = line, column, key
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class SchemaError(InputError):
    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        self.key, self.line = key, line
        prefix = f"[{key}] " if key else ""
        where = f" (line {line})" if line is not None else ""
        super().__init__(prefix + message + where)


class ResidueError(InputError, ValueError):
    """A torsion coordinate lies outside ``[0, n)``."""


@dataclass(frozen=True)
class InputDocument:
    rank: int
    torsion: tuple[int, ...]
    vectors: tuple[tuple[int, ...], ...]
    lift: Optional[tuple[int, ...]] = None
    value: Optional[tuple[int, ...]] = None
    sign: int = -1
    name: str = ""
    description: str = field(default="", compare=True)

    @property
    def group(self) -> FgAbGroup:
        return FgAbGroup(self.rank, self.torsion)

    def validate(self) -> ValidationReport:
        return validate_data(self.group, self.vectors, lift=self.lift, theta=self.value, sign=self.sign)

    def arrangement(self, check: bool = True) -> StackyArrangement:
        if self.lift is not None:
            return StackyArrangement(self.group, self.vectors, self.lift, self.sign, check)
        return StackyArrangement.from_theta(self.group, self.vectors, self.value, self.sign, check)


_POS = re.compile(r"line (\d+), column (\d+)")


def _key_line(text: str, key: str) -> Optional[int]:
    for n, raw in enumerate(text.splitlines(), 1):
        if re.match(rf"\s*(\[{re.escape(key)}\]|{re.escape(key.split('.')[-1])}\s*=)", raw):
            return n
    return None


def _int_list(obj: Any, key: str, text: str) -> tuple[int, ...]:
    if not isinstance(obj, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in obj):
        raise SchemaError("expected a list of integers", key, _key_line(text, key))
    return tuple(obj)


def _table(data: dict, key: str, text: str) -> dict:
    if key not in data:
        raise SchemaError("missing section", key)
    if not isinstance(data[key], dict):
        raise SchemaError("expected a table", key, _key_line(text, key))
    return data[key]


def _check_keys(table: dict, allowed: set, where: str, text: str):
    for k in table:
        if k not in allowed:
            raise SchemaError(f"unknown key {k!r}", f"{where}.{k}", _key_line(text, f"{where}.{k}"))


def document_from_data(data: dict, text: str = "") -> InputDocument:
    _check_keys(data, {"name", "description", "group", "beta", "theta"}, "", text)
    g = _table(data, "group", text)
    b = _table(data, "beta", text)
    t = _table(data, "theta", text)
    _check_keys(g, {"rank", "torsion"}, "group", text)
    _check_keys(b, {"vectors"}, "beta", text)
    _check_keys(t, {"lift", "value", "sign"}, "theta", text)
    if "rank" not in g:
        raise SchemaError("missing key", "group.rank")
    rank = g["rank"]
    if isinstance(rank, bool) or not isinstance(rank, int) or rank < 0:
        raise SchemaError("rank must be a nonnegative integer", "group.rank", _key_line(text, "group.rank"))
    torsion = _int_list(g.get("torsion", []), "group.torsion", text)
    try:
        group = FgAbGroup(rank, torsion)
    except ValueError as exc:
        raise SchemaError(str(exc), "group.torsion", _key_line(text, "group.torsion")) from None
    if "vectors" not in b:
        raise SchemaError("missing key", "beta.vectors")
    raw = b["vectors"]
    if not isinstance(raw, list):
        raise SchemaError("expected a list of vectors", "beta.vectors", _key_line(text, "beta.vectors"))
    vectors = []
    for n, v in enumerate(raw, 1):
        v = _int_list(v, f"beta.vectors[{n}]", text)
        if len(v) != group.ngens:
            raise SchemaError(f"vector {n} has {len(v)} entries, expected {group.ngens}",
                              "beta.vectors", _key_line(text, "beta.vectors"))
        if not group.is_normalized(v):
            raise ResidueError(f"vector {n} = {list(v)} has an unreduced torsion residue")
        vectors.append(v)
    has_lift, has_value = "lift" in t, "value" in t
    if has_lift and has_value:
        raise SchemaError("give exactly one of theta.lift and theta.value, not both", "theta",
                          _key_line(text, "theta"))
    if not has_lift and not has_value:
        raise SchemaError("missing theta.lift or theta.value", "theta")
    sign = t.get("sign", -1)
    if sign not in (1, -1) or isinstance(sign, bool):
        raise SchemaError("sign must be 1 or -1", "theta.sign", _key_line(text, "theta.sign"))
    lift = value = None
    if has_lift:
        lift = _int_list(t["lift"], "theta.lift", text)
        if len(lift) != len(vectors):
            raise SchemaError(f"lift has {len(lift)} entries, expected {len(vectors)}",
                              "theta.lift", _key_line(text, "theta.lift"))
    else:
        value = _int_list(t["value"], "theta.value", text)
    name = data.get("name", "")
    desc = data.get("description", "")
    if not isinstance(name, str) or not isinstance(desc, str):
        raise SchemaError("name and description must be strings", "name")
    return InputDocument(rank, torsion, tuple(vectors), lift, value, sign, name, desc)


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise SchemaError("duplicate key", k)
        out[k] = v
    return out


def parse_text(text: str, fmt: str = "toml") -> InputDocument:
    if fmt == "json":
        try:
            data = json.loads(text, object_pairs_hook=_no_duplicates)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        if not isinstance(data, dict):
            raise SchemaError("top level must be an object")
        return document_from_data(data, "")
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        msg = str(exc)
        pos = _POS.search(msg)
        line, col = (int(pos.group(1)), int(pos.group(2))) if pos else (None, None)
        base = _POS.sub("", msg).replace("(at )", "").replace("( at )", "").strip(" ()")
        if "overwrite" in msg.lower() or "twice" in msg.lower() or "already" in msg.lower():
            raise SchemaError(f"duplicate key: {base}", line=line) from None
        raise ParseError(base, line, col) from None
    return document_from_data(data, text)


def parse(path: Union[str, Path]) -> InputDocument:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    fmt = "json" if path.suffix.lower() == ".json" or text.lstrip().startswith("{") else "toml"
    return parse_text(text, fmt)


def _toml_str(s: str) -> str:
    # json escapes the C0 controls; TOML also forbids a raw DEL
    return json.dumps(s, ensure_ascii=False).replace("\x7f", "\\u007f")


def _toml_list(xs) -> str:
    return "[" + ", ".join(str(int(x)) for x in xs) + "]"


def dump(doc: InputDocument) -> str:
    """TOML text that parses back to ``doc``."""
    lines = []
    if doc.name:
        lines.append(f"name = {_toml_str(doc.name)}")
    if doc.description:
        lines.append(f"description = {_toml_str(doc.description)}")
    if lines:
        lines.append("")
    lines += ["[group]", f"rank = {doc.rank}", f"torsion = {_toml_list(doc.torsion)}", ""]
    lines += ["[beta]", "vectors = [" + ", ".join(_toml_list(v) for v in doc.vectors) + "]", ""]
    lines.append("[theta]")
    if doc.lift is not None:
        lines.append(f"lift = {_toml_list(doc.lift)}")
    else:
        lines.append(f"value = {_toml_list(doc.value)}")
    lines.append(f"sign = {doc.sign}")
    return "\n".join(lines) + "\n"


def to_json(doc: InputDocument) -> dict:
    out: dict = {}
    if doc.name:
        out["name"] = doc.name
    if doc.description:
        out["description"] = doc.description
    out["group"] = {"rank": doc.rank, "torsion": list(doc.torsion)}
    out["beta"] = {"vectors": [list(v) for v in doc.vectors]}
    th: dict = {"sign": doc.sign}
    if doc.lift is not None:
        th["lift"] = list(doc.lift)
    else:
        th["value"] = list(doc.value)
    out["theta"] = th
    return out


def document_from_arrangement(A: StackyArrangement, name: str = "") -> InputDocument:
    return InputDocument(A.group.rank, A.group.torsion, A.vectors, A.lift, None, A.sign, name)


FIXTURES = ("p12", "gerbe", "p122", "tp112", "aprime", "crepant2", "crepant3", "crepant4",
            "crepant5", "crepant6", "nongeneric")


def fixture_text(name: str) -> str:
    """Text of a bundled fixture such as ``"p12"``."""
    return resources.files("hyperchow").joinpath("fixtures", f"{name}.toml").read_text(encoding="utf-8")


def load_fixture(name: str) -> InputDocument:
    return parse_text(fixture_text(name))
