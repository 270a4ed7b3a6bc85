"""``isosurf`` command line: generate, classify, solve, curvature, verify."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import verify as suites
from .curvature import curvatures_closed_form, curvatures_numeric, fundamental_forms
from .errors import ConfigError, IsosurfError, NoClosedForm, NotAdmissible, VerificationFailure
from .io import (CSV_HEADER, JobConfig, grid_mesh, load_config, parse_config, parse_grid,
                 write_csv, write_json, write_obj)
from .motion import classify, orbit_shape
from .prescribed import (CurvatureProfile, solve_H_helicoidal_i, solve_H_parabolic_i,
                         solve_K_helicoidal_i, solve_K_helicoidal_ni, solve_K_parabolic_i)
from .surfaces import InvariantSurface, admissibility

ROUNDTRIP_TOL = 1e-5


def _config(args) -> JobConfig:
    cfg = load_config(args.config) if args.config else parse_config({})
    if args.out is not None:
        cfg.out = Path(args.out)
    if args.grid is not None:
        cfg.grid = parse_grid(args.grid)
    if args.tol is not None:
        cfg.tol = args.tol
    if args.figures:
        cfg.figures = True
    return cfg


def _surface(cfg: JobConfig) -> InvariantSurface:
    if cfg.subgroup is None:
        raise ConfigError("config needs a 'subgroup' object")
    if cfg.curve is None:
        raise ConfigError("config needs a 'curve' object {plane, kind, params}")
    return InvariantSurface(cfg.curve, cfg.subgroup)


def _sample(S, cfg: JobConfig):
    nu, nt = cfg.grid
    uu, tt = np.meshgrid(np.linspace(*cfg.u_range, nu), np.linspace(*cfg.t_range, nt), indexing="ij")
    return uu, tt


def _require_admissible(S, cfg: JobConfig):
    rep = admissibility(S, (cfg.u_range, cfg.t_range))
    if not rep.admissible:
        why = f" ({rep.obstruction})" if rep.obstruction else ""
        raise NotAdmissible(
            f"{S.family.name} is not admissible on the domain{why}: min |det g| = {rep.det_g_min:.3g} "
            f"at (u, t) = ({rep.witness[0]:.6g}, {rep.witness[1]:.6g})", rep.obstruction)
    return rep


def cmd_generate(cfg: JobConfig) -> dict:
    S = _surface(cfg)
    rep = _require_admissible(S, cfg)
    uu, tt = _sample(S, cfg)
    pts = S.point(uu, tt)
    F = fundamental_forms(S, uu, tt)
    K, H = curvatures_numeric(S, uu, tt)
    verts, faces = grid_mesh(pts)
    out = cfg.out
    write_obj(out / "surface.obj", verts, faces)
    rows = zip(uu.ravel(), tt.ravel(), *pts.reshape(-1, 3).T, K.ravel(), H.ravel(), F.det_g.ravel())
    write_csv(out / "surface.csv", CSV_HEADER, rows)
    files = ["surface.obj", "surface.csv"]
    if cfg.figures:
        from .plotting import surface_figure

        surface_figure(pts, K, out / "surface.png", title=S.family.name, label="K")
        files.append("surface.png")
    summary = {
        "command": "generate",
        "family": S.family.name,
        "subgroup": S.group.to_dict(),
        "curve": S.curve.to_dict(),
        "grid": list(cfg.grid),
        "vertices": int(len(verts)),
        "faces": int(len(faces)),
        "det_g_min": rep.det_g_min,
        "files": files,
    }
    write_json(out / "generate.json", summary)
    print(f"{S.family.name}: {len(verts)} vertices, {len(faces)} quads -> {out}")
    return summary


def cmd_classify(cfg: JobConfig) -> dict:
    if cfg.subgroup is None:
        raise ConfigError("config needs a 'subgroup' object")
    g = cfg.subgroup
    mtype = classify(g)
    shape = orbit_shape(mtype, g.sig)
    line = f"{mtype.roman} {mtype.label}; orbit: {shape}; ruled: {'yes' if mtype.ruled else 'no'}"
    print(line)
    summary = {"command": "classify", "type": mtype.roman, "label": mtype.label,
               "orbit": shape, "ruled": mtype.ruled, "subgroup": g.to_dict()}
    if cfg.raw.get("out") is not None or cfg.out != Path("out"):
        write_json(cfg.out / "classify.json", summary)
    return summary


_SOLVERS = {
    "K_helicoidal_i": (solve_K_helicoidal_i, ("c", "phi", "k0", "k1"), ("plane",)),
    "H_helicoidal_i": (solve_H_helicoidal_i, ("h0", "h1"), ("eps", "phi", "c")),
    "K_parabolic_i": (solve_K_parabolic_i, ("a", "b", "c1", "c2", "k0", "k1"), ("plane",)),
    "H_parabolic_i": (solve_H_parabolic_i, ("a", "b", "c1", "c2", "h0", "h1"), ("plane",)),
    "K_helicoidal_ni": (solve_K_helicoidal_ni, ("c", "phi", "k0", "k1"), ("eps",)),
}


def run_solver(cfg: JobConfig):
    spec = cfg.options.get("solve")
    if not isinstance(spec, dict):
        raise ConfigError("solve needs a 'solve' object with solver, profile, params")
    name = spec.get("solver")
    if name not in _SOLVERS:
        raise ConfigError(f"solve.solver must be one of {sorted(_SOLVERS)}, got {name!r}")
    if cfg.sig is None:
        raise ConfigError("solve needs a top-level 'signature'")
    fn, required, optional = _SOLVERS[name]
    params = spec.get("params", {})
    missing = [k for k in required if k not in params]
    if missing:
        raise ConfigError(f"solve.params is missing {missing}")
    unknown = set(params) - set(required) - set(optional)
    if unknown:
        raise ConfigError(f"solve.params has unknown keys {sorted(unknown)}")
    profile = CurvatureProfile.from_spec(spec.get("profile", {}), spec.get("domain"))
    kwargs = {k: params[k] for k in optional if k in params}
    if "eps" in kwargs:
        kwargs["eps"] = int(kwargs["eps"])
    args = [float(params[k]) for k in required]
    return fn(profile, *args, sig=cfg.sig, **kwargs)


def cmd_solve(cfg: JobConfig) -> dict:
    out_sol = run_solver(cfg)
    nu, nt = cfg.grid
    s = out_sol.samples(nu)
    pts = out_sol.curve.point(s)
    out = cfg.out
    write_csv(out / "curve.csv", ["s", "x", "y", "z"], zip(s, *pts.T))
    surf = InvariantSurface(out_sol.curve, out_sol.group)
    t = np.linspace(*cfg.t_range, nt)
    ss, tt = np.meshgrid(s, t, indexing="ij")
    K, H = curvatures_numeric(surf, ss, tt)
    got = K if out_sol.quantity == "K" else H
    want = np.broadcast_to(out_sol.profile(ss), ss.shape)
    err = np.abs(got - want)
    write_csv(out / "roundtrip.csv", ["s", "t", "prescribed", "recovered", "abs_error"],
              zip(ss.ravel(), tt.ravel(), want.ravel(), got.ravel(), err.ravel()))
    files = ["curve.csv", "roundtrip.csv"]
    if cfg.figures:
        from .plotting import curve_figure, roundtrip_figure

        title = f"prescribed {out_sol.quantity}: {surf.family.name}"
        i, j = out_sol.curve.plane.axes
        curve_figure(pts[:, i], pts[:, j], out / "curve.png", xlabel="xyz"[i], ylabel="xyz"[j], title=title)
        roundtrip_figure(s, want[:, 0], got[:, 0], out / "roundtrip.png", out_sol.quantity)
        files += ["curve.png", "roundtrip.png"]
    tol = cfg.tol if cfg.tol is not None else ROUNDTRIP_TOL
    summary = {"command": "solve", **out_sol.report(), "family": surf.family.name,
               "roundtrip_max_error": float(err.max()), "tolerance": tol, "files": files}
    write_json(out / "solve.json", summary)
    print(f"{surf.family.name}: validity [{out_sol.validity[0]:.6g}, {out_sol.validity[1]:.6g}], "
          f"round-trip max |{out_sol.quantity} - profile| = {err.max():.3e}")
    if not err.max() <= tol:
        raise VerificationFailure(f"round-trip error {err.max():.3e} exceeds {tol:g}")
    return summary


def cmd_curvature(cfg: JobConfig) -> dict:
    S = _surface(cfg)
    _require_admissible(S, cfg)
    uu, tt = _sample(S, cfg)
    F = fundamental_forms(S, uu, tt)
    K, H = curvatures_numeric(S, uu, tt)
    try:
        Kc, Hc = curvatures_closed_form(S, uu)
    except NoClosedForm:
        Kc = Hc = np.full(uu.shape, np.nan)
    records = [
        {"u": u, "t": t, "K_numeric": k, "H_numeric": h,
         "K_closed": kc if np.isfinite(kc) else None, "H_closed": hc if np.isfinite(hc) else None,
         "det_g": d}
        for u, t, k, h, kc, hc, d in zip(uu.ravel(), tt.ravel(), K.ravel(), H.ravel(),
                                         Kc.ravel(), Hc.ravel(), F.det_g.ravel())
    ]
    has_closed = bool(np.all(np.isfinite(Kc)))
    dev = float(max(np.max(np.abs(K - Kc)), np.max(np.abs(H - Hc)))) if has_closed else None
    summary = {"command": "curvature", "family": S.family.name, "closed_form": has_closed,
               "max_closed_numeric_deviation": dev, "records": records}
    out = cfg.out
    write_json(out / "curvature.json", summary)
    files = ["curvature.json"]
    if cfg.figures:
        from .plotting import surface_figure

        surface_figure(S.point(uu, tt), K, out / "curvature_K.png", title=S.family.name, label="K")
        surface_figure(S.point(uu, tt), H, out / "curvature_H.png", title=S.family.name, label="H")
        files += ["curvature_K.png", "curvature_H.png"]
    msg = f"{S.family.name}: K in [{K.min():.6g}, {K.max():.6g}], H in [{H.min():.6g}, {H.max():.6g}]"
    if dev is not None:
        msg += f", closed-form deviation {dev:.3e}"
    print(msg)
    return summary


def cmd_verify(cfg: JobConfig, inject_sign_flip: bool = False) -> dict:
    closed = suites.flip_sign() if inject_sign_flip else curvatures_closed_form
    only = cfg.options.get("suites")
    results = suites.run_all(closed, only)
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    summary = {"command": "verify", "passed": ok, "suites": [r.to_dict() for r in results]}
    write_json(cfg.out / "verify.json", summary)
    if not ok:
        bad = ", ".join(r.name for r in results if not r.passed)
        raise VerificationFailure(f"failing suites: {bad}")
    return summary


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON job configuration")
    common.add_argument("--out", help="output directory (overrides config 'out')")
    common.add_argument("--grid", help="sample grid NxM (overrides config 'grid')")
    common.add_argument("--tol", type=float, help="tolerance override")
    common.add_argument("--figures", action="store_true",
                        help="also render static PNG figures next to the tables")
    parser = argparse.ArgumentParser(prog="isosurf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common], help="sample a surface to OBJ + CSV")
    sub.add_parser("classify", parents=[common], help="name the type of a 1-parameter subgroup")
    sub.add_parser("solve", parents=[common], help="prescribed-curvature solver with round trip")
    sub.add_parser("curvature", parents=[common], help="numeric and closed-form curvature report")
    v = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    v.add_argument("--inject-sign-flip", action="store_true",
                   help="flip the sign of closed-form K (mutation smoke test)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "generate":
            cmd_generate(cfg)
        elif args.command == "classify":
            cmd_classify(cfg)
        elif args.command == "solve":
            cmd_solve(cfg)
        elif args.command == "curvature":
            cmd_curvature(cfg)
        else:
            cmd_verify(cfg, args.inject_sign_flip)
    except IsosurfError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ConfigError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
