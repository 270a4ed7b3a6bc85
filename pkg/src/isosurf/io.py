"""Config parsing and OBJ / CSV / JSON writers."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .core import Signature
from .curves import GeneratingCurve, from_spec
from .errors import ConfigError
from .motion import MotionSubgroup

SCHEMA = "isosurf/1"
CSV_HEADER = ["u", "t", "x", "y", "z", "K", "H", "det_g"]


@dataclass
class JobConfig:
    sig: Optional[Signature] = None
    subgroup: Optional[MotionSubgroup] = None
    curve: Optional[GeneratingCurve] = None
    u_range: tuple[float, float] = (0.0, 1.0)
    t_range: tuple[float, float] = (0.0, 1.0)
    grid: tuple[int, int] = (32, 32)
    tol: Optional[float] = None
    out: Path = Path("out")
    figures: bool = False
    options: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)


def parse_grid(text) -> tuple[int, int]:
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = str(text).lower().split("x")
    try:
        nu, nt = (int(p) for p in parts)
    except (TypeError, ValueError):
        raise ConfigError(f"grid must look like NxM, got {text!r}") from None
    if nu < 2 or nt < 2:
        raise ConfigError(f"grid needs at least 2 samples per axis, got {nu}x{nt}")
    return nu, nt


def _range(value, name) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in value)
    except (TypeError, ValueError):
        raise ConfigError(f"domain.{name} must be a pair [lo, hi]") from None
    if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
        raise ConfigError(f"domain.{name} must satisfy lo < hi, got {value}")
    return lo, hi


def parse_config(data: dict) -> JobConfig:
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    cfg = JobConfig(raw=data)
    sig_value = data.get("signature")
    sub = data.get("subgroup")
    if sub is not None:
        if not isinstance(sub, dict):
            raise ConfigError("subgroup must be an object")
        sub = dict(sub)
        sub.setdefault("signature", sig_value)
        if sub["signature"] is None:
            raise ConfigError("subgroup needs a signature (top-level 'signature' or subgroup.signature)")
        try:
            cfg.subgroup = MotionSubgroup.from_dict(sub)
        except ValueError as exc:
            raise ConfigError(f"subgroup: {exc}") from None
        cfg.sig = cfg.subgroup.sig
    elif sig_value is not None:
        try:
            cfg.sig = Signature.parse(sig_value)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    if "curve" in data:
        cfg.curve = from_spec(data["curve"])
    dom = data.get("domain", {})
    if not isinstance(dom, dict):
        raise ConfigError("domain must be an object with 'u' and 't' ranges")
    if "u" in dom:
        cfg.u_range = _range(dom["u"], "u")
    if "t" in dom:
        cfg.t_range = _range(dom["t"], "t")
    if "grid" in data:
        cfg.grid = parse_grid(data["grid"])
    if "tol" in data:
        cfg.tol = float(data["tol"])
    if "out" in data:
        cfg.out = Path(data["out"])
    cfg.figures = bool(data.get("figures", False))
    cfg.options = {k: v for k, v in data.items()
                   if k not in {"signature", "subgroup", "curve", "domain", "grid", "tol", "out", "figures"}}
    return cfg


def load_config(path) -> JobConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return parse_config(data)


# --- meshes -----------------------------------------------------------------

def grid_mesh(points: np.ndarray):
    """Vertices and 1-based quad faces for an (nu, nt, 3) point grid."""
    nu, nt, _ = points.shape
    verts = points.reshape(-1, 3)
    idx = np.arange(nu * nt).reshape(nu, nt) + 1
    faces = np.stack([idx[:-1, :-1], idx[1:, :-1], idx[1:, 1:], idx[:-1, 1:]], axis=-1).reshape(-1, 4)
    return verts, faces


def write_obj(path, vertices, faces) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as fh:
        fh.write("# isosurf mesh\n")
        for v in vertices:
            fh.write("v %.17g %.17g %.17g\n" % tuple(v))
        for f in faces:
            fh.write("f " + " ".join(str(int(i)) for i in f) + "\n")


def read_obj(path):
    verts, faces = [], []
    for line in Path(path).read_text().splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            verts.append([float(p) for p in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(p.split("/")[0]) for p in parts[1:]])
    return np.array(verts, dtype=float).reshape(-1, 3), np.array(faces, dtype=int)


def write_csv(path, header, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return v


def read_csv(path):
    with Path(path).open() as fh:
        rows = list(csv.reader(fh))
    return rows[0], [[float(x) for x in r] for r in rows[1:]]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, Path):
        return str(obj)
    return obj


def write_json(path, payload: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {"schema": SCHEMA, **_jsonable(payload)}
    path.write_text(json.dumps(doc, indent=2, sort_keys=False) + "\n")
