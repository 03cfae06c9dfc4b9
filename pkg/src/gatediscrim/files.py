"""JSON file formats used by the command line tools.

Gate inputs come in two kinds: an explicit matrix ({"kind": "matrix",
"rows": 4x4 of [re, im] pairs}) or an interaction vector ({"kind":
"alpha", "alpha": [ax, ay, az]}) that is expanded through `build_ud`.
Documents written here serialize floats with Python repr semantics, so a
parse/render cycle is byte-idempotent and numbers round-trip losslessly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import __version__, canonical, numerics
from .errors import DomainError


@dataclass(frozen=True)
class LoadedGate:
    matrix: np.ndarray
    label: str
    kind: str
    alpha: np.ndarray | None = None


def _pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def vector_pairs(v) -> list[list[float]]:
    return [_pair(z) for z in np.asarray(v, dtype=complex).ravel()]


def matrix_pairs(m) -> list[list[list[float]]]:
    m = np.asarray(m, dtype=complex)
    return [[_pair(z) for z in row] for row in m]


def floats(v) -> list[float]:
    return [float(x) for x in np.asarray(v, dtype=float).ravel()]


def _as_complex_matrix(rows) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != 4:
        raise DomainError("matrix file needs exactly 4 rows")
    out = np.empty((4, 4), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 4:
            raise DomainError(f"matrix row {i} must have exactly 4 entries")
        for j, cell in enumerate(row):
            if (
                not isinstance(cell, list)
                or len(cell) != 2
                or not all(isinstance(x, (int, float)) for x in cell)
            ):
                raise DomainError(
                    f"matrix entry ({i},{j}) must be a [re, im] pair"
                )
            out[i, j] = complex(cell[0], cell[1])
    return out


def load_matrix_file(path, tol: float = 1e-8) -> LoadedGate:
    """Read a gate file; raises DomainError with a specific message on any
    malformed content, non-unitary matrix, or out-of-chamber alpha."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as err:
        raise DomainError(f"cannot read {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise DomainError(f"{path} is not valid JSON: {err}") from err
    if not isinstance(doc, dict):
        raise DomainError(f"{path}: top level must be a JSON object")
    kind = doc.get("kind")
    label = doc.get("label", str(path))
    if not isinstance(label, str):
        raise DomainError(f"{path}: label must be a string")
    if kind == "matrix":
        m = _as_complex_matrix(doc.get("rows"))
        if not numerics.is_unitary(m, tol=tol):
            raise DomainError(
                f"{path}: matrix is not unitary within tolerance {tol:g}"
            )
        return LoadedGate(matrix=m, label=label, kind="matrix")
    if kind == "alpha":
        a = doc.get("alpha")
        if (
            not isinstance(a, list)
            or len(a) != 3
            or not all(isinstance(x, (int, float)) for x in a)
        ):
            raise DomainError(f"{path}: alpha must be a list of 3 numbers")
        alpha = np.asarray(a, dtype=float)
        matrix = canonical.build_ud(alpha)  # validates the chamber
        return LoadedGate(matrix=matrix, label=label, kind="alpha", alpha=alpha)
    raise DomainError(
        f"{path}: kind must be 'matrix' or 'alpha', got {kind!r}"
    )


def render_document(doc: dict) -> str:
    """Canonical text form: 2-space indent, key order preserved, newline."""
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def parse_document(text: str) -> dict:
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise DomainError("document top level must be a JSON object")
    return doc


def write_document(doc: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_document(doc))


def matrix_document(matrix, label: str) -> dict:
    return {
        "kind": "matrix",
        "label": label,
        "rows": matrix_pairs(matrix),
    }


def probe_block(probe) -> dict:
    from .discrimination import concurrence

    return {
        "magic_amplitudes": vector_pairs(probe.u),
        "computational": vector_pairs(probe.psi_computational),
        "weights": floats(probe.weights),
        "local_a": None if probe.local_a is None else vector_pairs(probe.local_a),
        "local_b": None if probe.local_b is None else vector_pairs(probe.local_b),
        "concurrence": float(concurrence(probe.u)),
        "via_fallback": bool(probe.via_fallback),
    }


def report_document(report, label1: str, label2: str, tol: float) -> dict:
    return {
        "kind": "discrimination_report",
        "tool": "gatediscrim",
        "version": __version__,
        "inputs": {"first": label1, "second": label2},
        "priors": {"p1": float(report.p1), "p2": float(report.p2)},
        "tolerances": {
            "magic_diagonal": float(tol),
            "probe_achieve": 1e-9,
            "probe_concurrence": 1e-9,
        },
        "omega": floats(report.omega),
        "fidelity": float(report.fidelity),
        "error_probability": float(report.error_probability),
        "perfectly_distinguishable": bool(report.perfectly_distinguishable),
        "case": report.case.value,
        "achieved_value": float(report.achieved_value),
        "probe": probe_block(report.probe),
    }
