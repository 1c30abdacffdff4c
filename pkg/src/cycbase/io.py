"""Reading group files and writing certificates.

A group file is a JSON object with a ``degree``, a list of
``generators``, and an optional ``name``.  Each generator is either a
1-based image table (a list of integers) or a string in disjoint cycle
notation such as ``"(1,2,3)(4,5)"``.

A certificate is a JSON document recording the input, the control
subgroup found for it, the branch trace of the run, and optionally the
cycle base.  Certificates contain no timestamps or environment data, so
the same input and seed always produce byte-identical output.
"""

import hashlib
import json
from typing import Any

from .cyclebase import CycleBaseResult
from .control import ControlResult
from .errors import GroupFileError
from .group import Group
from .perm import Perm, format_cycles, parse_cycles

CERT_SCHEMA = 1


def _perm_from_entry(entry: Any, degree: int, pos: int) -> Perm:
    if isinstance(entry, str):
        try:
            return parse_cycles(entry, degree)
        except ValueError as e:
            raise GroupFileError(f"generator {pos}: {e}") from e
    if isinstance(entry, list):
        if not all(isinstance(x, int) and not isinstance(x, bool)
                   for x in entry):
            raise GroupFileError(
                f"generator {pos}: image table must contain integers")
        try:
            return Perm([x - 1 for x in entry])
        except ValueError as e:
            raise GroupFileError(f"generator {pos}: {e}") from e
    raise GroupFileError(
        f"generator {pos}: expected a cycle string or an image table, "
        f"got {type(entry).__name__}")


def group_from_dict(data: Any) -> Group:
    if not isinstance(data, dict):
        raise GroupFileError("group file must be a JSON object")
    degree = data.get("degree")
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise GroupFileError("'degree' must be a positive integer")
    gens = data.get("generators")
    if not isinstance(gens, list):
        raise GroupFileError("'generators' must be a list")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise GroupFileError("'name' must be a string")
    perms = [_perm_from_entry(e, degree, i) for i, e in enumerate(gens)]
    for i, g in enumerate(perms):
        if g.degree != degree:
            raise GroupFileError(
                f"generator {i} has degree {g.degree}, expected {degree}")
    return Group(degree, perms, name=name)


def load_group(path: str) -> Group:
    """Read a group file.  Raises GroupFileError on malformed input."""
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise GroupFileError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise GroupFileError(f"{path} is not valid JSON: {e}") from e
    return group_from_dict(data)


def _image_list(g: Perm) -> list[int]:
    return [int(x) + 1 for x in g.images()]


def group_payload(G: Group) -> dict:
    """JSON form of a group: degree, 1-based image tables, name."""
    out: dict[str, Any] = {
        "degree": G.degree,
        "generators": [_image_list(g) for g in G.generators],
    }
    if G.name is not None:
        out["name"] = G.name
    return out


def save_group(G: Group, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(group_payload(G), f, indent=2)
        f.write("\n")


def input_digest(G: Group) -> str:
    """SHA-256 over the degree and generator tables, name excluded."""
    core = {"degree": G.degree,
            "generators": [_image_list(g) for g in G.generators]}
    blob = json.dumps(core, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


def make_certificate(K: Group, res: ControlResult,
                     base: CycleBaseResult | None = None) -> dict:
    """Assemble the certificate document for one run.

    Orders are decimal strings so consumers never round them through
    floats.  The trace is included verbatim.
    """
    cert: dict[str, Any] = {
        "schema": CERT_SCHEMA,
        "input": group_payload(K) | {"sha256": input_digest(K)},
        "seed": res.seed,
        "group_order": str(K.order()),
        "conclusion": res.conclusion,
        "control": {
            "order": str(res.M.order()),
            "generators": [_image_list(g) for g in res.M.generators],
            "cycles": [format_cycles(g) for g in res.M.generators],
        },
        "trace": list(res.trace),
    }
    if base is not None:
        cert["base"] = {
            "method": base.method,
            "verified": base.verified,
            "phi_bound": base.phi_bound,
            "caveat": base.caveat,
            "size": base.size,
            "cycles": [_image_list(g) for g in base.base],
        }
    # round-trip through the serializer so tuples left over from the
    # trace compare equal to a reloaded document
    return json.loads(json.dumps(cert))


def write_certificate(cert: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(cert, f, indent=2, sort_keys=True)
        f.write("\n")


def load_certificate(path: str) -> dict:
    with open(path, encoding="utf-8") as f:
        return json.load(f)
