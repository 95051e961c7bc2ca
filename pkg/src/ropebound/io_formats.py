"""Geometry serialization: VECT, CSV, and JSON.

VECT is the plain-text polyline format consumed by standard knot-tightening
pipelines: a `VECT` magic line, `<n_components> <n_vertices> <n_colors>`,
per-component vertex counts (negated to mark closed loops), per-component
color counts (always 0 here), then one `x y z` line per vertex with
components concatenated in order.  CSV uses a `component,vertex,x,y,z`
header; JSON stores the full configuration with provenance.  Coordinates are
written with 17 significant digits, so round trips reproduce them exactly.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .curves import PolyCurve
from .measure import LinkConfiguration

__all__ = ["export_geometry", "import_geometry", "FormatError"]

_JSON_FORMAT = "ropebound-link/1"


class FormatError(ValueError):
    """Malformed geometry file; message carries line/column diagnostics."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _require(cond: bool, path: str, line: int, message: str):
    if not cond:
        raise FormatError(f"{path}:{line}: {message}")


def _to_vect(link: LinkConfiguration) -> str:
    comps = link.components
    lines = ["VECT"]
    total = sum(c.n_vertices for c in comps)
    lines.append(f"{len(comps)} {total} 0")
    lines.append(" ".join(
        str(-c.n_vertices if c.closed else c.n_vertices) for c in comps
    ))
    lines.append(" ".join("0" for _ in comps))
    for c in comps:
        for v in c.vertices:
            lines.append(f"{_fmt(v[0])} {_fmt(v[1])} {_fmt(v[2])}")
    return "\n".join(lines) + "\n"


def _from_vect(text: str, path: str) -> LinkConfiguration:
    lines = text.splitlines()
    _require(len(lines) >= 4, path, 1, "truncated file: need at least 4 lines")
    _require(lines[0].strip() == "VECT", path, 1,
             f"expected literal 'VECT', got {lines[0]!r}")
    header = lines[1].split()
    _require(len(header) == 3, path, 2,
             "expected '<n_components> <n_vertices> <n_colors>'")
    try:
        n_comp, n_vert, _n_col = (int(v) for v in header)
    except ValueError:
        raise FormatError(f"{path}:2: non-integer header field in {header}")
    counts_raw = lines[2].split()
    _require(len(counts_raw) == n_comp, path, 3,
             f"expected {n_comp} vertex counts, got {len(counts_raw)}")
    try:
        counts = [int(v) for v in counts_raw]
    except ValueError:
        raise FormatError(f"{path}:3: non-integer vertex count in {counts_raw}")
    _require(sum(abs(c) for c in counts) == n_vert, path, 3,
             "vertex counts do not sum to the header total")
    comps = []
    row = 4
    for k, count in enumerate(counts):
        n = abs(count)
        _require(n >= 2, path, 3, f"component {k} has fewer than 2 vertices")
        verts = np.empty((n, 3))
        for i in range(n):
            _require(row < len(lines) + 1 and row <= len(lines), path, row + 1,
                     "unexpected end of file inside vertex block")
            fields = lines[row].split()
            _require(len(fields) == 3, path, row + 1,
                     f"expected 3 coordinates, got {len(fields)}")
            try:
                verts[i] = [float(v) for v in fields]
            except ValueError as exc:
                col = next(
                    (j + 1 for j, v in enumerate(fields)
                     if not _is_float(v)), 1,
                )
                raise FormatError(
                    f"{path}:{row + 1}:{col}: non-numeric coordinate ({exc})"
                )
            row += 1
        comps.append(PolyCurve(verts, closed=count < 0))
    return LinkConfiguration(comps, description=os.path.basename(path))


def _is_float(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def _to_csv(link: LinkConfiguration) -> str:
    lines = ["component,vertex,x,y,z"]
    for k, c in enumerate(link.components):
        for i, v in enumerate(c.vertices):
            lines.append(f"{k},{i},{_fmt(v[0])},{_fmt(v[1])},{_fmt(v[2])}")
    return "\n".join(lines) + "\n"


def _from_csv(text: str, path: str) -> LinkConfiguration:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    _require(bool(lines), path, 1, "empty file")
    header = [h.strip().lower() for h in lines[0].split(",")]
    _require(header == ["component", "vertex", "x", "y", "z"], path, 1,
             f"expected header 'component,vertex,x,y,z', got {lines[0]!r}")
    by_comp: dict = {}
    for idx, ln in enumerate(lines[1:], start=2):
        fields = ln.split(",")
        _require(len(fields) == 5, path, idx,
                 f"expected 5 comma-separated fields, got {len(fields)}")
        try:
            comp = int(fields[0])
            vert = int(fields[1])
        except ValueError:
            raise FormatError(f"{path}:{idx}:1: non-integer component/vertex index")
        try:
            xyz = [float(v) for v in fields[2:]]
        except ValueError:
            col = 3 + next(
                (j for j, v in enumerate(fields[2:]) if not _is_float(v)), 0
            )
            raise FormatError(f"{path}:{idx}:{col}: non-numeric coordinate")
        by_comp.setdefault(comp, []).append((vert, xyz))
    comps = []
    for k in sorted(by_comp):
        rows = sorted(by_comp[k])
        _require([r[0] for r in rows] == list(range(len(rows))), path, 1,
                 f"component {k} vertex indices are not 0..n-1")
        comps.append(PolyCurve(np.array([r[1] for r in rows])))
    return LinkConfiguration(comps, description=os.path.basename(path))


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _to_json(link: LinkConfiguration) -> str:
    payload = {
        "format": _JSON_FORMAT,
        "description": link.description,
        "crossing_number": link.crossing_number,
        "metadata": link.metadata,
        "components": [
            {
                "closed": bool(c.closed),
                "vertices": [[float(x) for x in v] for v in c.vertices],
            }
            for c in link.components
        ],
    }
    return json.dumps(payload, indent=1, sort_keys=True, default=_json_default) + "\n"


def _from_json(text: str, path: str) -> LinkConfiguration:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})")
    _require(isinstance(payload, dict), path, 1, "top-level JSON value must be an object")
    _require(payload.get("format") == _JSON_FORMAT, path, 1,
             f"unrecognized format tag {payload.get('format')!r}")
    raw = payload.get("components")
    _require(isinstance(raw, list) and raw, path, 1, "missing components array")
    comps = []
    for k, entry in enumerate(raw):
        _require(isinstance(entry, dict) and "vertices" in entry, path, 1,
                 f"component {k} lacks a vertices array")
        try:
            verts = np.array([[float(x) for x in v] for v in entry["vertices"]])
        except (TypeError, ValueError):
            raise FormatError(f"{path}:1: component {k} has malformed vertices")
        _require(verts.ndim == 2 and verts.shape[1] == 3, path, 1,
                 f"component {k} vertices are not Nx3")
        comps.append(PolyCurve(verts, closed=bool(entry.get("closed", True))))
    return LinkConfiguration(
        comps,
        crossing_number=payload.get("crossing_number"),
        description=payload.get("description", ""),
        metadata=payload.get("metadata") or {},
    )


_WRITERS = {"vect": _to_vect, "csv": _to_csv, "json": _to_json}
_SUFFIXES = {".vect": "vect", ".csv": "csv", ".json": "json"}


def export_geometry(link, fmt: str | None = None, path: str = "") -> str:
    """Write a configuration to `path` in the given format ("vect", "csv",
    or "json"; inferred from the suffix when omitted).  Returns the path."""
    if not isinstance(link, LinkConfiguration):
        link = LinkConfiguration(list(link))
    if fmt is None:
        fmt = _SUFFIXES.get(os.path.splitext(path)[1].lower())
        if fmt is None:
            raise ValueError(f"cannot infer format from {path!r}; pass fmt")
    fmt = fmt.lower()
    if fmt not in _WRITERS:
        raise ValueError(f"unknown format {fmt!r}; choose vect, csv, or json")
    text = _WRITERS[fmt](link)
    with open(path, "w") as fh:
        fh.write(text)
    return path


def import_geometry(path: str) -> LinkConfiguration:
    """Read a geometry file in any supported format, detected from content."""
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("VECT"):
        return _from_vect(text, path)
    if stripped.startswith("{"):
        return _from_json(text, path)
    if stripped.lower().startswith("component"):
        return _from_csv(text, path)
    raise FormatError(
        f"{path}:1: unrecognized geometry format "
        "(expected VECT magic, JSON object, or CSV header)"
    )
