"""
Algebra and frame documents.

Documents are JSON-compatible text, read with the YAML loader so that every
node keeps its line and column for diagnostics. Serialisation is canonical:
rows in index order, triples sorted, one row or triple per line.
"""
import json
from pathlib import Path
from typing import Any, Optional, Union

import structlog
import yaml
from pydantic import ValidationError

from src.core.boolean_core import MAX_ATOMS, FinBoolAlg
from src.core.conditional_algebra import CondAlg
from src.core.errors import InputError
from src.core.hybrid_frames import TFrame
from src.core.models import AlgebraDocument, FrameDocument

logger = structlog.get_logger(__name__)

ALGEBRA_TYPE = "conditional-algebra"
FRAME_TYPE = "t-frame"


def _position(node: Optional[yaml.Node]):
    if node is None:
        return {}
    return {"line": node.start_mark.line + 1, "column": node.start_mark.column + 1}


def _reject_duplicate_keys(node: yaml.Node):
    if isinstance(node, yaml.MappingNode):
        seen = set()
        for key, value in node.value:
            if isinstance(key, yaml.ScalarNode):
                if key.value in seen:
                    raise InputError(f"duplicate key {key.value!r}", **_position(key))
                seen.add(key.value)
            _reject_duplicate_keys(value)
    elif isinstance(node, yaml.SequenceNode):
        for item in node.value:
            _reject_duplicate_keys(item)


def _compose(text: str):
    # JSON allows tabs as whitespace, YAML does not; one for one keeps columns
    loader = yaml.SafeLoader(text.replace("\t", " "))
    try:
        node = loader.get_single_node()
        if node is None:
            raise InputError("document is empty")
        _reject_duplicate_keys(node)
        return node, loader.construct_document(node)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark or e.context_mark
        line = mark.line + 1 if mark else None
        column = mark.column + 1 if mark else None
        raise InputError(f"malformed document: {e.problem or e}", line=line, column=column)
    except yaml.YAMLError as e:
        raise InputError(f"malformed document: {e}")
    finally:
        loader.dispose()


def _field(node: yaml.Node, name: str) -> Optional[yaml.Node]:
    if not isinstance(node, yaml.MappingNode):
        return None
    for key, value in node.value:
        if key.value == name:
            return value
    return None


def _item(node: Optional[yaml.Node], index: int) -> Optional[yaml.Node]:
    if isinstance(node, yaml.SequenceNode) and index < len(node.value):
        return node.value[index]
    return node


def _require_mapping(node: yaml.Node, data: Any):
    if not isinstance(data, dict):
        raise InputError("document must be a mapping", **_position(node))


def _validation_error(e: ValidationError, node: yaml.Node) -> InputError:
    first = e.errors()[0]
    target = node
    for step in first["loc"]:
        target = _field(target, step) if isinstance(step, str) else _item(target, step)
        if target is None:
            target = node
            break
    where = ".".join(str(step) for step in first["loc"])
    return InputError(f"invalid field {where}: {first['msg']}", **_position(target))


def parse_algebra(text: str) -> CondAlg:
    node, data = _compose(text)
    _require_mapping(node, data)
    try:
        doc = AlgebraDocument.model_validate(data)
    except ValidationError as e:
        raise _validation_error(e, node)
    if doc.atoms > MAX_ATOMS:
        raise InputError(f"atoms {doc.atoms} exceeds the cap of {MAX_ATOMS}", **_position(_field(node, "atoms")))
    size = 1 << doc.atoms
    rows_node = _field(node, "cond")
    if len(doc.cond) != size:
        raise InputError(f"cond has {len(doc.cond)} rows, expected {size}", **_position(rows_node))
    for a, row in enumerate(doc.cond):
        row_node = _item(rows_node, a)
        if len(row) != size:
            raise InputError(f"row {a} has {len(row)} entries, expected {size}", **_position(row_node))
        for b, value in enumerate(row):
            if not 0 <= value < size:
                raise InputError(
                    f"entry [{a}][{b}] = {value} is outside [0, {size})", **_position(_item(row_node, b))
                )
    return CondAlg(base=FinBoolAlg(atom_count=doc.atoms), cond=doc.cond)


def parse_frame(text: str) -> TFrame:
    node, data = _compose(text)
    _require_mapping(node, data)
    try:
        doc = FrameDocument.model_validate(data)
    except ValidationError as e:
        raise _validation_error(e, node)
    m = doc.points
    if m > MAX_ATOMS:
        raise InputError(f"points {m} exceeds the cap of {MAX_ATOMS}", **_position(_field(node, "points")))
    triples_node = _field(node, "triples")
    seen = set()
    for index, (x, z, y) in enumerate(doc.triples):
        triple_node = _item(triples_node, index)
        if not (0 <= x < m and 0 <= y < m and 0 <= z < 1 << m):
            raise InputError(f"triple [{x}, {z}, {y}] is out of range", **_position(triple_node))
        if (x, z, y) in seen:
            raise InputError(f"duplicate triple [{x}, {z}, {y}]", **_position(triple_node))
        seen.add((x, z, y))
    return TFrame(point_count=m, triples=doc.triples)


def serialize_algebra(alg: CondAlg) -> str:
    rows = ",\n".join(f"    {json.dumps(list(row))}" for row in alg.cond)
    return (
        "{\n"
        f'  "type": "{ALGEBRA_TYPE}",\n'
        f'  "atoms": {alg.atom_count},\n'
        f'  "cond": [\n{rows}\n  ]\n'
        "}\n"
    )


def serialize_frame(f: TFrame) -> str:
    if f.triples:
        body = ",\n".join(f"    {json.dumps(list(t))}" for t in f.triples)
        triples = f"[\n{body}\n  ]"
    else:
        triples = "[]"
    return (
        "{\n"
        f'  "type": "{FRAME_TYPE}",\n'
        f'  "points": {f.point_count},\n'
        f'  "triples": {triples}\n'
        "}\n"
    )


def read_text(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}")


def document_type(text: str) -> str:
    node, data = _compose(text)
    _require_mapping(node, data)
    kind = data.get("type")
    if kind not in (ALGEBRA_TYPE, FRAME_TYPE):
        raise InputError(f"unknown document type {kind!r}", **_position(_field(node, "type") or node))
    return kind


def load_document(path: Union[str, Path]) -> Union[CondAlg, TFrame]:
    """Parse an algebra or a frame according to the document's type field."""
    text = read_text(path)
    if document_type(text) == ALGEBRA_TYPE:
        return parse_algebra(text)
    return parse_frame(text)


def load_algebra(path: Union[str, Path]) -> CondAlg:
    text = read_text(path)
    if document_type(text) != ALGEBRA_TYPE:
        raise InputError(f"{path} is not a {ALGEBRA_TYPE} document")
    return parse_algebra(text)


def load_frame(path: Union[str, Path]) -> TFrame:
    text = read_text(path)
    if document_type(text) != FRAME_TYPE:
        raise InputError(f"{path} is not a {FRAME_TYPE} document")
    return parse_frame(text)
