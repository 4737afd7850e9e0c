"""JSON rod-file I/O (format "rod-v1").

Schema: {"A": number, "kinks": [{"z": number, "a": number}, ...],
"angles": [number x (r+1)] (optional, default all 1)}.  An optional
"format": "rod-v1" tag is accepted and always written.
"""

import json
from typing import Union

from .errors import ParseError, ValidationError
from .plf import build_rod_function
from .polytope import RodStructure, make_rod_structure

FORMAT_TAG = "rod-v1"


def parse_rod_file(data: Union[bytes, str]) -> RodStructure:
    """Parse and validate a rod-v1 JSON document."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"rod file is not UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: "
                         f"{exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("rod file must be a JSON object")
    if doc.get("format", FORMAT_TAG) != FORMAT_TAG:
        raise ParseError(f"unsupported format tag {doc['format']!r}; expected "
                         f"{FORMAT_TAG!r}")
    unknown = set(doc) - {"format", "A", "kinks", "angles"}
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}")
    if "A" not in doc or "kinks" not in doc:
        raise ParseError('missing required field "A" or "kinks"')
    if not isinstance(doc["A"], (int, float)) or isinstance(doc["A"], bool):
        raise ParseError('field "A" must be a number')
    if not isinstance(doc["kinks"], list) or not doc["kinks"]:
        raise ParseError('field "kinks" must be a nonempty array')
    kinks = []
    for idx, item in enumerate(doc["kinks"]):
        if (not isinstance(item, dict) or set(item) != {"z", "a"}
                or any(isinstance(item[key], bool)
                       or not isinstance(item[key], (int, float))
                       for key in ("z", "a"))):
            raise ParseError(f'kinks[{idx}] must be an object {{"z": number, '
                             f'"a": number}}, got {item!r}')
        kinks.append((float(item["z"]), float(item["a"])))
    f = build_rod_function(float(doc["A"]), kinks)
    angles = doc.get("angles")
    if angles is not None:
        if (not isinstance(angles, list)
                or any(isinstance(a, bool) or not isinstance(a, (int, float))
                       for a in angles)):
            raise ParseError('field "angles" must be an array of numbers')
        if len(angles) != f.r + 1:
            raise ParseError(f'field "angles" needs {f.r + 1} entries '
                             f'(one per edge), got {len(angles)}')
        if any(a <= 0.0 for a in angles):
            raise ValidationError(f"cone angles must be positive: {angles}")
    return make_rod_structure(f, angles)


def serialize_rod(rod: RodStructure) -> str:
    """Serialize to rod-v1 JSON; round-trips through parse_rod_file exactly."""
    doc = {
        "format": FORMAT_TAG,
        "A": rod.f.A,
        "kinks": [{"z": z, "a": a} for z, a in rod.f.kinks],
        "angles": [float(a) for a in rod.angles],
    }
    return json.dumps(doc, indent=2) + "\n"
