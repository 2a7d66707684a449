"""JSON state files, CSV sweeps, and serialization of check certificates.

State files are JSON documents {"dim": d, "re": [[...]], "im": [[...]]};
doubles survive a round trip exactly. Infinite measure values serialize as
the literal string "inf".
"""

from __future__ import annotations

import json
import math

import numpy as np

from .channels import Freeness, KrausChannel
from .linalg import DEFAULT_TOL, Tolerances
from .states import DensityMatrix, validate_density

CSV_DIGITS = 12


class StateFileError(ValueError):
    """State file is not parseable as {dim, re, im} with finite rectangular arrays."""


def density_to_dict(rho: DensityMatrix) -> dict:
    return {
        "dim": rho.dim,
        "re": rho.matrix.real.tolist(),
        "im": rho.matrix.imag.tolist(),
    }


def matrix_from_dict(doc: dict) -> np.ndarray:
    try:
        dim = int(doc["dim"])
        re = np.asarray(doc["re"], dtype=float)
        im = np.asarray(doc["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise StateFileError(f"not a valid state document: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise StateFileError(
            f"arrays must be {dim}x{dim}; got re {re.shape}, im {im.shape}"
        )
    if not np.all(np.isfinite(re)) or not np.all(np.isfinite(im)):
        raise StateFileError("state document contains non-finite entries")
    return re + 1j * im


def density_from_dict(doc: dict, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    return validate_density(matrix_from_dict(doc), tol)


def read_state_file(path: str, tol: Tolerances = DEFAULT_TOL) -> DensityMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StateFileError(f"invalid JSON: {exc}") from exc
    return density_from_dict(doc, tol)


def write_state_file(path: str, rho: DensityMatrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(density_to_dict(rho), fh)
        fh.write("\n")


def channel_to_dict(ch: KrausChannel) -> dict:
    return {
        "dim": ch.dim,
        "freeness": ch.freeness.value,
        "kraus": [{"re": k.real.tolist(), "im": k.imag.tolist()} for k in ch.kraus],
    }


def channel_from_dict(doc: dict) -> KrausChannel:
    ops = tuple(
        np.asarray(k["re"], dtype=float) + 1j * np.asarray(k["im"], dtype=float)
        for k in doc["kraus"]
    )
    return KrausChannel(ops, Freeness(doc.get("freeness", "uncertified")))


def encode_value(x: float):
    """Map +inf to the literal "inf" for JSON output; finite floats pass through."""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def decode_value(x) -> float:
    return math.inf if x == "inf" else float(x)


def encode_json_values(obj):
    """Recursively encode infinities inside dicts/lists destined for JSON."""
    if isinstance(obj, dict):
        return {k: encode_json_values(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode_json_values(v) for v in obj]
    if isinstance(obj, float):
        return encode_value(obj)
    return obj


def format_cell(x: float) -> str:
    """CSV cell with 12 significant digits; infinities as the token "inf"."""
    return f"{x:.{CSV_DIGITS}g}"


def write_csv(path: str, header: list[str] | None, rows) -> None:
    lines = []
    if header is not None:
        lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(format_cell(x) if isinstance(x, float) else str(x) for x in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def csv_text(header: list[str] | None, rows) -> str:
    lines = []
    if header is not None:
        lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(format_cell(x) if isinstance(x, float) else str(x) for x in row))
    return "\n".join(lines) + "\n"
