"""JSON serialization of Fock states.

Document layout::

    {"n_modes": 4, "amplitudes": [{"mask": 3, "re": 0.7071067811865476, "im": 0.0}]}

Masks are the occupation bitmasks of the library's bit-ordering convention
(mode 0 is the least significant bit). Entries below the zero tolerance are
pruned on write and the list is mask-ascending, so equal states produce
identical documents. Floats round-trip exactly: json emits the shortest
repr that recovers the double.
"""

import json
from pathlib import Path
from typing import Any

from .errors import StateFormatError
from .fock import FockState, make_state

__all__ = ["state_to_dict", "state_from_dict", "dump_state", "load_state"]


def state_to_dict(state: FockState) -> dict[str, Any]:
    """Plain-dict form of a state, ready for json.dumps."""
    entries = [
        {"mask": mask, "re": amp.real, "im": amp.imag}
        for mask, amp in state.nonzero_amplitudes()
    ]
    return {"n_modes": state.n_modes, "amplitudes": entries}


def state_from_dict(doc: Any, normalize: bool = True) -> FockState:
    """Rebuild a state from the dict layout, validating as it goes."""
    if not isinstance(doc, dict):
        raise StateFormatError("state document must be a JSON object")
    try:
        n_modes = doc["n_modes"]
        entries = doc["amplitudes"]
    except (KeyError, TypeError) as exc:
        raise StateFormatError(f"missing required key: {exc}") from exc
    if not isinstance(n_modes, int) or isinstance(n_modes, bool) or n_modes < 1:
        raise StateFormatError(f"n_modes must be a positive integer, got {n_modes!r}")
    if not isinstance(entries, list):
        raise StateFormatError("amplitudes must be a list")
    dim = 1 << n_modes
    amplitudes: dict[int, complex] = {}
    for pos, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise StateFormatError(f"amplitude #{pos} is not an object")
        try:
            mask = entry["mask"]
            re = entry["re"]
            im = entry["im"]
        except (KeyError, TypeError) as exc:
            raise StateFormatError(f"amplitude #{pos} missing key: {exc}") from exc
        if not isinstance(mask, int) or isinstance(mask, bool):
            raise StateFormatError(f"amplitude #{pos}: mask must be an integer")
        if not 0 <= mask < dim:
            raise StateFormatError(
                f"amplitude #{pos}: mask {mask} outside [0, {dim}) for {n_modes} modes"
            )
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re, im)):
            raise StateFormatError(f"amplitude #{pos}: re/im must be numbers")
        if mask in amplitudes:
            raise StateFormatError(f"amplitude #{pos}: duplicate mask {mask}")
        amplitudes[mask] = complex(re, im)
    if not amplitudes:
        raise StateFormatError("amplitudes list is empty")
    return make_state(n_modes, amplitudes, normalize=normalize)


def dump_state(state: FockState, path: str | Path) -> None:
    """Write a state document to path as UTF-8 JSON."""
    text = json.dumps(state_to_dict(state), indent=2)
    Path(path).write_text(text + "\n", encoding="utf-8")


def load_state(path: str | Path, normalize: bool = True) -> FockState:
    """Read a state document from path."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StateFormatError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"{path} is not valid JSON: {exc}") from exc
    return state_from_dict(doc, normalize=normalize)
