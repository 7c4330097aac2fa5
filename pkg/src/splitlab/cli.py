"""Command-line front end: subcommands, config handling, result cache.

Subcommands: portrait, soliton, shoot, sweep, roots, inner-series, stokes,
verify. Flag precedence is flags > config file (key = value lines) >
defaults. The environment variable SPLITLAB_CACHE names a cache directory;
when set, results are cached under a content hash of (schema_version,
command, config) and repeated runs emit byte-identical output. Exit codes:
0 ok, 1 usage, 2 invariant failure, 3 precision inadequate,
4 no convergence.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import math
import os
import sys
import time

from .errors import (BlowUpError, BracketError, ConvergenceError, DomainError,
                     FitError, NoCrossingError, PrecisionError,
                     SeedTooCloseError)
from .extprec import Real, sin
from .integrator import PlanarField, StepPolicy, step
from .model import GAMMA_FLOOR, Params, geometry, planar_field, soliton
from .splitting import (fit_stokes, roots_for_range, shoot,
                        sign_changes_per_interval, sweep)
from . import inner as inner_mod
from . import verify as verify_mod

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2
EXIT_PRECISION = 3
EXIT_NO_CONVERGENCE = 4


# ---------------------------------------------------------------------------
# config handling
# ---------------------------------------------------------------------------

_DEFAULTS = {
    "gamma": -0.1,
    "precision": "dd",
    "format": "json",
    "jobs": os.cpu_count() or 1,
    "eps_steps": 60,
    "n_min": 6,
    "n_max": 12,
    "N": 60,
    "y_values": "20,25,30",
    "x_min": -10.0,
    "x_max": 10.0,
    "x_steps": 401,
    "radii": "0.3,0.6,0.9",
    "orbit_points": 12,
    "t_span": 12.0,
}


def _read_config_file(path):
    out = {}
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line (need key = value): {line!r}")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def _merge_config(args, keys):
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        file_cfg = _read_config_file(args.config)
        cfg.update(file_cfg)
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    out = {}
    for k in keys:
        if k in cfg:
            out[k] = cfg[k]
    return out


def _coerce(cfg, casts):
    for k, cast in casts.items():
        if k in cfg and cfg[k] is not None:
            try:
                cfg[k] = cast(cfg[k])
            except (TypeError, ValueError) as e:
                raise ValueError(f"bad value for {k}: {cfg[k]!r} ({e})") from None
    return cfg


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Real):
        return x.to_decimal()
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def canonical_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2,
                      ensure_ascii=False) + "\n"


def result_record(command, config, outputs, audits, wall_time, precision):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "outputs": outputs,
        "invariant_audit": audits,
        "precision_mode": precision,
        "wall_time_s": wall_time,
    }


def _cache_key(command, config):
    payload = json.dumps({"schema": SCHEMA_VERSION, "command": command,
                          "config": _jsonable(config)}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def _cache_dir():
    return os.environ.get("SPLITLAB_CACHE") or None


def _cache_load(command, config):
    d = _cache_dir()
    if not d:
        return None
    path = os.path.join(d, _cache_key(command, config) + ".json")
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as f:
            blob = json.load(f)
        if blob.get("schema_version") != SCHEMA_VERSION:
            return None
        return blob
    except (json.JSONDecodeError, OSError) as e:
        print(f"warning: cache entry unreadable ({e}); recomputing",
              file=sys.stderr)
        return None


def _cache_store(command, config, record_text, side_csv):
    d = _cache_dir()
    if not d:
        return
    os.makedirs(d, exist_ok=True)
    path = os.path.join(d, _cache_key(command, config) + ".json")
    blob = {"schema_version": SCHEMA_VERSION, "record": record_text,
            "csv": side_csv}
    tmp = path + f".tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as f:
        json.dump(blob, f)
    os.replace(tmp, path)


def _emit(args, record_text, csv_text):
    fmt = getattr(args, "format", None) or "json"
    out_path = getattr(args, "out", None)
    text = csv_text if (fmt == "csv" and csv_text is not None) else record_text
    if out_path:
        tmp = out_path + f".tmp.{os.getpid()}"
        with open(tmp, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, out_path)
        if fmt == "csv" and csv_text is not None:
            side = out_path + ".json"
            tmp = side + f".tmp.{os.getpid()}"
            with open(tmp, "w", encoding="utf-8") as f:
                f.write(record_text)
            os.replace(tmp, side)
    else:
        sys.stdout.write(text)


def _run_cached(args, command, config, compute):
    cached = _cache_load(command, config)
    if cached is not None:
        _emit(args, cached["record"], cached.get("csv"))
        return EXIT_OK
    t0 = time.time()
    outputs, audits, csv_text = compute()
    rec = result_record(command, config, outputs, audits,
                        time.time() - t0, config.get("precision", "dd"))
    record_text = canonical_json(rec)
    _cache_store(command, config, record_text, csv_text)
    _emit(args, record_text, csv_text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_soliton(args):
    keys = ("gamma", "x_min", "x_max", "x_steps", "precision")
    cfg = _coerce(_merge_config(args, keys),
                  {"gamma": float, "x_min": float, "x_max": float,
                   "x_steps": int, "precision": str})
    g = cfg["gamma"]
    n = cfg["x_steps"]
    if n < 2:
        raise ValueError("x-steps must be >= 2")

    def compute():
        buf = io.StringIO()
        buf.write("x,u0,u0_prime,u0_doubleprime\n")
        for i in range(n):
            x = cfg["x_min"] + (cfg["x_max"] - cfg["x_min"]) * i / (n - 1)
            u0, u0p, u0pp = soliton(g, x, cfg["precision"])
            buf.write(f"{x!r},{u0.to_decimal()},{u0p.to_decimal()},"
                      f"{u0pp.to_decimal()}\n")
        u0, _, _ = soliton(g, 0.0, cfg["precision"])
        outputs = {"peak_u0": u0, "rows": n}
        return outputs, {"domain": "1 + 9*gamma > 0 ok"}, buf.getvalue()

    return _run_cached(args, "soliton", cfg, compute)


def _cmd_portrait(args):
    keys = ("gamma", "radii", "orbit_points", "t_span", "precision")
    cfg = _coerce(_merge_config(args, keys),
                  {"gamma": float, "radii": str, "orbit_points": int,
                   "t_span": float, "precision": str})
    g = cfg["gamma"]
    if not g > GAMMA_FLOOR:
        raise DomainError(f"portrait needs gamma > -1/9, got {g}")

    def compute():
        radii = [float(r) for r in str(cfg["radii"]).split(",") if r.strip()]
        n_dir = int(cfg["orbit_points"])
        T = float(cfg["t_span"])
        h = 0.02
        fld = PlanarField(g, "std")
        pol = StepPolicy(h=h, method_order=12)
        buf = io.StringIO()
        buf.write("orbit,t,u,w,status\n")
        n_orbits = 0
        n_blowup = 0

        def emit_orbit(tag, u, w, direction):
            nonlocal n_blowup
            state = (Real.of(u, "std"), Real.of(w, "std"))
            t = 0.0
            rows = [(t, float(state[0]), float(state[1]), "ok")]
            for _ in range(int(T / h)):
                try:
                    if direction < 0:
                        # time reversal of the planar flow is (u, w) -> (u, -w)
                        flipped = (state[0], -state[1])
                        nxt, _ = step(fld, flipped, pol)
                        state = (nxt[0], -nxt[1])
                    else:
                        state, _ = step(fld, state, pol)
                except BlowUpError:
                    rows.append((t + h, float("nan"), float("nan"), "blowup"))
                    n_blowup += 1
                    break
                t += h
                rows.append((t, float(state[0]), float(state[1]), "ok"))
            for (tt, uu, ww, st) in rows[::2]:
                buf.write(f"{tag},{direction * tt!r},{uu!r},{ww!r},{st}\n")

        for r in radii:
            for k in range(n_dir):
                phi = 2 * math.pi * k / n_dir
                u, w = r * math.cos(phi), r * math.sin(phi)
                emit_orbit(f"ring_{r}_{k}", u, w, +1)
                emit_orbit(f"ring_{r}_{k}", u, w, -1)
                n_orbits += 1

        has_separatrix = GAMMA_FLOOR < g < 0
        if has_separatrix:
            for i in range(481):
                x = -12.0 + 24.0 * i / 480
                u0, u0p, _ = soliton(g, x, "dd")
                buf.write(f"separatrix,{x!r},{float(u0)!r},{float(u0p)!r},ok\n")
        outputs = {"orbits": n_orbits, "separatrix_included": has_separatrix,
                   "blowup_orbits": n_blowup}
        return outputs, {"planar_field": "ok"}, buf.getvalue()

    return _run_cached(args, "portrait", cfg, compute)


def _cmd_shoot(args):
    keys = ("gamma", "eps", "precision")
    cfg = _coerce(_merge_config(args, keys),
                  {"gamma": float, "eps": float, "precision": str})
    if cfg.get("eps") is None:
        raise ValueError("shoot requires --eps")

    def compute():
        p = Params.make(cfg["gamma"], cfg["eps"], cfg["precision"])
        rec = shoot(p)
        outputs = {
            "S": rec.S, "u_at_sigma": rec.u_at_sigma,
            "v_at_sigma": rec.v_at_sigma, "t_cross": rec.t_cross,
            "amplitude": rec.amplitude(), "x0": rec.x0, "K": rec.K,
            "n_steps": rec.n_steps,
        }
        audits = {"G_drift": rec.G_drift, "energy_tol": rec.energy_tol,
                  "seed_truncation": rec.seed_truncation,
                  "event_residual": rec.event_residual,
                  "noise_floor": rec.noise_floor}
        return outputs, audits, None

    return _run_cached(args, "shoot", cfg, compute)


def _cmd_sweep(args):
    keys = ("gamma", "eps_min", "eps_max", "eps_steps", "precision", "jobs")
    cfg = _coerce(_merge_config(args, keys),
                  {"gamma": float, "eps_min": float, "eps_max": float,
                   "eps_steps": int, "precision": str, "jobs": int})
    if cfg.get("eps_min") is None or cfg.get("eps_max") is None:
        raise ValueError("sweep requires --eps-min and --eps-max")

    if cfg["eps_steps"] < 2:
        raise ValueError("eps-steps must be >= 2")

    def compute():
        n = cfg["eps_steps"]
        grid = [cfg["eps_min"] + (cfg["eps_max"] - cfg["eps_min"]) * i / (n - 1)
                for i in range(n)]
        recs = sweep(cfg["gamma"], grid, mode=cfg["precision"], jobs=cfg["jobs"])
        geo = geometry(cfg["gamma"])
        buf = io.StringIO()
        buf.write("eps,S,amplitude,sin_alpha_over_eps,G_drift,event_residual\n")
        for r in recs:
            sn = float(sin(geo.alpha / Real.of(r.eps, "dd")))
            buf.write(f"{r.eps!r},{r.S.to_decimal()},{r.amplitude()!r},"
                      f"{sn!r},{r.G_drift!r},{r.event_residual!r}\n")
        outputs = {"n_shots": len(recs)}
        if len(recs) >= 8:
            fit = fit_stokes(recs)
            outputs["theta_fit"] = {
                "theta": fit.theta, "uncertainty": fit.uncertainty,
                "rel_max_residual": fit.rel_max_residual,
                "phase_fit": fit.detail["phase_fit"],
            }
            outputs["sign_changes"] = [
                {"interval": list(iv), "changes": ch}
                for iv, ch in sign_changes_per_interval(recs)]
        audits = {"max_G_drift": max(r.G_drift for r in recs),
                  "max_event_residual": max(r.event_residual for r in recs)}
        return outputs, audits, buf.getvalue()

    return _run_cached(args, "sweep", cfg, compute)


def _cmd_roots(args):
    keys = ("gamma", "n_min", "n_max", "precision", "eps_tol")
    cfg = _coerce(_merge_config(args, keys),
                  {"gamma": float, "n_min": int, "n_max": int,
                   "precision": str, "eps_tol": float})
    eps_tol = cfg.get("eps_tol") or 1e-10

    def compute():
        roots = roots_for_range(cfg["gamma"], cfg["n_min"], cfg["n_max"],
                                mode=cfg["precision"], eps_tol=eps_tol,
                                check_return=True)
        geo = geometry(cfg["gamma"])
        alpha = float(geo.alpha)
        buf = io.StringIO()
        buf.write("n,eps_n,residual_S,root_tol,bracket_lo,bracket_hi,"
                  "n_pi_eps_over_alpha,return_distance\n")
        for r in roots:
            ratio = r.n * math.pi * r.eps_n / alpha
            buf.write(f"{r.n},{r.eps_n!r},{r.residual_S!r},{r.root_tol!r},"
                      f"{r.bracket[0]!r},{r.bracket[1]!r},{ratio!r},"
                      f"{r.return_distance!r}\n")
        outputs = {"roots": [
            {"n": r.n, "eps_n": r.eps_n, "residual_S": r.residual_S,
             "partial": r.partial, "return_distance": r.return_distance}
            for r in roots]}
        audits = {"max_containment": max(
            abs(r.n * math.pi * r.eps_n / alpha - 1) * r.n / 0.2 for r in roots)}
        return outputs, audits, buf.getvalue()

    return _run_cached(args, "roots", cfg, compute)


def _cmd_inner_series(args):
    keys = ("N",)
    cfg = _coerce(_merge_config(args, keys), {"N": int})

    def compute():
        s = inner_mod.inner_series(cfg["N"])
        diag = inner_mod.series_diagnostics(s) if cfg["N"] >= 10 else None
        buf = io.StringIO()
        buf.write("n,a_n,rho_n,r_n\n")
        for n, a in enumerate(s.a):
            rho = diag.growth_ratios[n] if diag and n < len(diag.growth_ratios) else ""
            rn = diag.factorial_ratios[n] if diag else ""
            buf.write(f"{n},{a.numerator}/{a.denominator},{rho!r},{rn!r}\n")
        outputs = {"N": s.N,
                   "a_head": [f"{a.numerator}/{a.denominator}" for a in s.a[:6]]}
        audits = {}
        if diag:
            audits = {"sign_alternation": diag.sign_alternation,
                      "factorial_bound": diag.factorial_bound,
                      "ratio_bound": diag.ratio_bound}
        return outputs, audits, buf.getvalue()

    return _run_cached(args, "inner-series", cfg, compute)


def _cmd_stokes(args):
    keys = ("y_values", "L", "precision")
    cfg = _coerce(_merge_config(args, keys),
                  {"y_values": str, "L": float, "precision": str})

    def compute():
        Ys = [float(v) for v in str(cfg["y_values"]).split(",") if v.strip()]
        est = inner_mod.stokes_direct(Ys, L=cfg.get("L"), mode=cfg["precision"])
        outputs = {"theta": est.theta, "uncertainty": est.uncertainty,
                   "method": est.method, "reliable": est.reliable,
                   "per_Y": est.detail["per_Y"]}
        audits = {"extrapolation_residual": est.detail["extrapolation_residual"],
                  "max_imag_fraction": max(
                      max(p["imag_fraction_phi"], p["imag_fraction_psi"])
                      for p in est.detail["per_Y"])}
        return outputs, audits, None

    return _run_cached(args, "stokes", cfg, compute)


def _cmd_verify(args):
    deep = bool(getattr(args, "deep", False))
    results = verify_mod.run_all(deep=deep)
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL':4s} {r.name:34s} "
              f"{r.elapsed:7.2f}s  {r.detail}")
    ok = all(r.ok for r in results)
    print(f"{'OK' if ok else 'FAILED'}: {sum(r.ok for r in results)}/{len(results)} checks")
    return EXIT_OK if ok else EXIT_INVARIANT


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser():
    ap = argparse.ArgumentParser(
        prog="splitlab",
        description="High-precision laboratory for exponentially small "
                    "separatrix splitting in a fourth-order traveling-wave model")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, eps=False, eps_range=False, nrange=False):
        p.add_argument("--gamma", type=float, default=None)
        p.add_argument("--precision", choices=("std", "dd", "qd"), default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--jobs", type=int, default=None)
        p.add_argument("--config", default=None)
        if eps:
            p.add_argument("--eps", type=float, default=None)
        if eps_range:
            p.add_argument("--eps-min", dest="eps_min", type=float, default=None)
            p.add_argument("--eps-max", dest="eps_max", type=float, default=None)
            p.add_argument("--eps-steps", dest="eps_steps", type=int, default=None)
        if nrange:
            p.add_argument("--n-min", dest="n_min", type=int, default=None)
            p.add_argument("--n-max", dest="n_max", type=int, default=None)

    p = sub.add_parser("portrait", help="planar phase-portrait orbit data (CSV)")
    common(p)
    p.add_argument("--radii", default=None)
    p.add_argument("--orbit-points", dest="orbit_points", type=int, default=None)
    p.add_argument("--t-span", dest="t_span", type=float, default=None)
    p.set_defaults(fn=_cmd_portrait)

    p = sub.add_parser("soliton", help="closed-form pulse samples (CSV)")
    common(p)
    p.add_argument("--x-min", dest="x_min", type=float, default=None)
    p.add_argument("--x-max", dest="x_max", type=float, default=None)
    p.add_argument("--x-steps", dest="x_steps", type=int, default=None)
    p.set_defaults(fn=_cmd_soliton)

    p = sub.add_parser("shoot", help="one splitting measurement S(eps)")
    common(p, eps=True)
    p.set_defaults(fn=_cmd_shoot)

    p = sub.add_parser("sweep", help="S(eps) over a grid, with Stokes fit")
    common(p, eps_range=True)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("roots", help="homoclinic parameter values eps_n")
    common(p, nrange=True)
    p.add_argument("--eps-tol", dest="eps_tol", type=float, default=None)
    p.set_defaults(fn=_cmd_roots)

    p = sub.add_parser("inner-series", help="exact inner-series coefficients")
    common(p)
    p.add_argument("--N", type=int, default=None)
    p.set_defaults(fn=_cmd_inner_series)

    p = sub.add_parser("stokes", help="Stokes constant from the inner equation")
    common(p)
    p.add_argument("--y-values", dest="y_values", default=None)
    p.add_argument("--L", type=float, default=None)
    p.set_defaults(fn=_cmd_stokes)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--deep", action="store_true")
    p.set_defaults(fn=_cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except PrecisionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECISION
    except (NoCrossingError, ConvergenceError, BracketError,
            SeedTooCloseError, FitError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (DomainError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BlowUpError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
