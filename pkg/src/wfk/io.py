"""File formats: parameter/realization JSON, verification reports, CSV signals.

Complex numbers are serialized as two-element ``[re, im]`` arrays
everywhere; structured data is JSON, sampled data is CSV.  Loading always
revalidates the domain invariants by rebuilding values through their
constructors.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InvariantError
from .filters import BoxPoint, CheckReport, Factor, FilterParameters
from .realization import Realization


def _pair(c: complex) -> list[float]:
    c = complex(c)
    return [c.real, c.imag]


def _from_pair(p) -> complex:
    if not isinstance(p, (list, tuple)) or len(p) != 2:
        raise InvariantError(f"expected a [re, im] pair, got {p!r}")
    return complex(float(p[0]), float(p[1]))


def parameters_to_dict(params: FilterParameters, box: BoxPoint | None = None) -> dict:
    doc = {
        "n": params.n,
        "m": params.m,
        "rho": params.rho,
        "factors": [
            {"v": [_pair(c) for c in f.v], "alpha": _pair(f.alpha)}
            for f in params.factors
        ],
    }
    if box is not None:
        doc["box"] = [float(x) for x in box.coords.reshape(-1)]
    return doc


def parameters_from_dict(doc: dict) -> FilterParameters:
    try:
        n = int(doc["n"])
        m = int(doc["m"])
        rho = float(doc["rho"])
        raw = doc["factors"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvariantError(f"malformed parameter document: {exc}") from exc
    if len(raw) != m:
        raise InvariantError(f"document claims m={m} but carries {len(raw)} factors")
    factors = tuple(
        Factor(
            v=np.array([_from_pair(p) for p in entry["v"]]),
            alpha=_from_pair(entry["alpha"]),
        )
        for entry in raw
    )
    return FilterParameters(n=n, rho=rho, factors=factors)


def save_parameters(params: FilterParameters, path, box: BoxPoint | None = None) -> None:
    Path(path).write_text(
        json.dumps(parameters_to_dict(params, box), indent=2, sort_keys=True) + "\n"
    )


def load_parameters(path) -> FilterParameters:
    return parameters_from_dict(json.loads(Path(path).read_text()))


def _block_to_dict(m: np.ndarray) -> dict:
    return {
        "rows": m.shape[0],
        "cols": m.shape[1],
        "entries": [_pair(c) for c in m.reshape(-1)],
    }


def _block_from_dict(doc: dict) -> np.ndarray:
    rows, cols = int(doc["rows"]), int(doc["cols"])
    entries = [_from_pair(p) for p in doc["entries"]]
    if len(entries) != rows * cols:
        raise InvariantError(
            f"block declares {rows}x{cols} but carries {len(entries)} entries"
        )
    return np.array(entries, dtype=complex).reshape(rows, cols)


def realization_to_dict(r: Realization) -> dict:
    return {
        "n": r.outputs,
        "state_dim": r.state_dim,
        "a": _block_to_dict(r.a),
        "b": _block_to_dict(r.b),
        "c": _block_to_dict(r.c),
        "d": _block_to_dict(r.d),
    }


def realization_from_dict(doc: dict) -> Realization:
    try:
        blocks = {k: _block_from_dict(doc[k]) for k in ("a", "b", "c", "d")}
        state_dim = int(doc["state_dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvariantError(f"malformed realization document: {exc}") from exc
    r = Realization(**blocks)
    if r.state_dim != state_dim:
        raise InvariantError(
            f"document claims state_dim={state_dim} but blocks give {r.state_dim}"
        )
    return r


def save_realization(r: Realization, path) -> None:
    Path(path).write_text(
        json.dumps(realization_to_dict(r), indent=2, sort_keys=True) + "\n"
    )


def load_realization(path) -> Realization:
    return realization_from_dict(json.loads(Path(path).read_text()))


def report_to_dict(checks: list[CheckReport], seed: int, points: int, tol: float) -> dict:
    return {
        "seed": seed,
        "points": points,
        "tolerance": tol,
        "passed": all(c.passed for c in checks),
        "checks": [
            {
                "name": c.name,
                "max_residual": c.max_residual,
                "tolerance": c.tolerance,
                "passed": c.passed,
                "sample_count": c.sample_count,
                "seed": c.seed,
            }
            for c in checks
        ],
    }


def save_signal(x, path) -> None:
    """Write one complex sample per line as ``re,im``."""
    x = np.asarray(x, dtype=complex).reshape(-1)
    lines = [f"{float(c.real)!r},{float(c.imag)!r}" for c in x]
    Path(path).write_text("\n".join(lines) + "\n")


def load_signal(path) -> np.ndarray:
    samples = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise InvariantError(f"{path}:{lineno}: expected 're,im', got {line!r}")
        samples.append(complex(float(parts[0]), float(parts[1])))
    return np.array(samples, dtype=complex)


def save_eval_csv(rows: list[tuple[complex, np.ndarray]], path) -> None:
    """Write evaluation rows: ``z_re, z_im`` then row-major entry re/im pairs."""
    lines = []
    for z, value in rows:
        cells = [repr(complex(z).real), repr(complex(z).imag)]
        for c in np.asarray(value, dtype=complex).reshape(-1):
            cells.append(repr(float(c.real)))
            cells.append(repr(float(c.imag)))
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")


def load_box(path, n: int, m: int, rho: float) -> BoxPoint:
    """Read box coordinates from a JSON file (flat array or ``{"box": [...]}``)."""
    doc = json.loads(Path(path).read_text())
    if isinstance(doc, dict):
        doc = doc.get("box")
    if not isinstance(doc, list):
        raise InvariantError("box file must hold a flat array of coordinates")
    coords = np.array([float(x) for x in doc], dtype=float)
    if coords.size != m * 2 * n:
        raise InvariantError(
            f"box file has {coords.size} coordinates, expected {m * 2 * n}"
        )
    return BoxPoint(n=n, rho=rho, coords=coords.reshape(m, 2 * n))
