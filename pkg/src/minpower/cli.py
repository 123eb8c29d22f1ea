"""``minpower`` command-line front end.

Subcommands: solve, ratio, sweep, generate, validate. Exit codes: 0 ok,
1 bad input or configuration, 2 cross-check or validation failure,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analysis, farthest, oracle, quadratic
from .errors import (CrossCheckFailure, EmptyInput, InvalidAlpha, MinPowerError, NoConvergence,
                     ParseError, ToleranceNotReached)
from .geometry import PointSet, incircle
from .pointio import dumps, fmt, parse_points, write_points
from .svg import emit_svg

log = logging.getLogger("minpower")

METHODS = ("geometric", "numeric", "both")
CROSS_CHECK_TOL = 1e-5


class ConfigError(MinPowerError, ValueError):
    """Inconsistent command-line options."""


@dataclass(frozen=True)
class RunConfig:
    input: Path
    alpha: float = 2.0
    method: str = "both"
    tolerance: float = 1e-8
    seed: int = 0
    json: Path | None = None
    csv: Path | None = None
    svg: Path | None = None
    scan_order: str = "paper"
    dump: Path | None = None

    def validate(self) -> "RunConfig":
        try:
            oracle.check_alpha(self.alpha)
        except InvalidAlpha as exc:
            raise ConfigError(str(exc)) from None
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}")
        if self.method == "geometric" and self.alpha != 2.0:
            raise ConfigError("method=geometric requires alpha=2")
        if not self.tolerance > 0:
            raise ConfigError("tolerance must be positive")
        if self.scan_order not in quadratic.SCAN_ORDERS:
            raise ConfigError(f"unknown scan order {self.scan_order!r}")
        return self


def _setup_logging():
    level = os.environ.get("MINPOWER_LOG", "error").lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG,
              "warning": logging.WARNING}
    logging.basicConfig(level=levels.get(level, logging.ERROR), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _write_csv(path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    Path(path).write_text(buf.getvalue())


def _emit(obj, path):
    text = dumps(obj) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------- solve

def solve(cfg: RunConfig, X: PointSet | None = None) -> dict:
    """Run the configured solver(s); returns the result document."""
    X = parse_points(cfg.input) if X is None else X
    diam = X.diameter()
    doc = {"method": cfg.method, "alpha": cfg.alpha, "n": X.n}
    geo = num = None
    if cfg.alpha == 2.0 and cfg.method in ("geometric", "both"):
        geo = quadratic.solve_quadratic(X, scan_order=cfg.scan_order, seed=cfg.seed)
    if cfg.method in ("numeric", "both"):
        num = oracle.solve_numeric(X, cfg.alpha, tol=cfg.tolerance, strict=True)
    if geo is not None:
        doc.update(s_star=list(geo.s_star), objective=geo.objective, case=geo.case,
                   active_indices=[int(v) for v in geo.active],
                   lambdas={str(j): v for j, v in sorted(geo.lambdas.items())},
                   witness_face=[geo.witness_face[0],
                                 [int(v) for v in np.atleast_1d(geo.witness_face[1])]])
    else:
        ev = oracle.eval_objective(X, num.s, cfg.alpha, rel_tol=1e-9)
        doc.update(s_star=list(num.s), objective=num.objective, case=None,
                   active_indices=[int(v) for v in ev.active_set], lambdas=None, witness_face=None)
    if num is not None:
        if geo is not None:
            other = geo.s_star
        else:
            # for alpha != 2, the optimum must solve the quadratic problem on X(s)
            other = quadratic.solve_quadratic(oracle.transform_X(X, num.s, cfg.alpha)).s_star
        dist = math.hypot(num.s[0] - other[0], num.s[1] - other[1])
        doc["cross_check"] = {"numeric_s": list(num.s), "geometric_s": list(other),
                              "distance": dist, "certified_gap": num.certified_gap,
                              "tolerance": CROSS_CHECK_TOL * diam}
    else:
        doc["cross_check"] = None
    return doc


def _cmd_solve(args) -> int:
    cfg = RunConfig(Path(args.input), args.alpha, args.method, args.tol, args.seed,
                    _p(args.json), _p(args.csv), _p(args.svg), args.scan_order,
                    _p(args.dump)).validate()
    X = parse_points(cfg.input)
    doc = solve(cfg, X)
    _emit(doc, cfg.json)
    if cfg.csv:
        s = doc["s_star"]
        _write_csv(cfg.csv, ["s_x", "s_y", "objective", "case", "method", "alpha"],
                   [[s[0], s[1], doc["objective"], doc["case"], cfg.method, cfg.alpha]])
    if cfg.svg or cfg.dump:
        if X.is_singleton():
            log.error("diagram output needs two distinct points")
        else:
            fpvd = farthest.build_fpvd(X, seed=cfg.seed)
            if cfg.svg:
                res = quadratic.solve_quadratic(X, fpvd=fpvd) if cfg.alpha == 2.0 else None
                emit_svg(X, fpvd, fpvd.fpdt, res, cfg.svg)
            if cfg.dump:
                _emit(farthest.dump_structures(X, fpvd), cfg.dump)
    cc = doc["cross_check"]
    if cc is not None and cc["distance"] > cc["tolerance"]:
        raise CrossCheckFailure(f"solvers disagree by {cc['distance']:.3g}")
    return 0


# ---------------------------------------------------------------- others

def _cmd_ratio(args) -> int:
    if args.input:
        X = parse_points(args.input)
        rep = analysis.approx_ratio(X)
        _emit({"rho": rep.rho, "k": rep.k, "n": rep.n, "bound": rep.bound,
               "slack": rep.slack}, _p(args.json))
        return 0 if rep.slack >= -1e-9 else 2
    n_values = [int(v) for v in args.n_values.split(",")]
    rows = analysis.ratio_limit_experiment(args.seed, n_values, args.trials, args.family)
    header = ["n", "max_rho", "mean_rho", "general_bound", "within_bound"]
    table = [[r.n, r.max_rho, r.mean_rho, r.general_bound, int(r.within_bound)] for r in rows]
    if args.csv:
        _write_csv(args.csv, header, table)
    _emit([dict(zip(header, row)) for row in table], _p(args.json))
    return 0 if all(r.within_bound for r in rows) else 2


def _cmd_sweep(args) -> int:
    X = parse_points(args.input)
    alphas = [float(a) for a in args.alphas.split(",")]
    try:
        alphas = [oracle.check_alpha(a) for a in alphas]
    except InvalidAlpha as exc:
        raise ConfigError(str(exc)) from None
    rows = analysis.alpha_sweep(X, alphas)
    header = ["alpha", "s_x", "s_y", "dist_C", "dist_s2", "dist_M"]
    table = [[r.alpha, r.s.x, r.s.y, r.dist_C, r.dist_s2, r.dist_M] for r in rows]
    if args.csv:
        _write_csv(args.csv, header, table)
    _emit([dict(zip(header, row)) for row in table], _p(args.json))
    return 0


def _cmd_generate(args) -> int:
    X = parse_points(args.input)
    try:
        w = tuple(float(v) for v in args.target.split(","))
        assert len(w) == 2
    except (ValueError, AssertionError):
        raise ConfigError("--target must be 'x,y'") from None
    g = analysis.generate_target_instance(X, w, tol=args.tol)
    if args.output:
        write_points(g.result, args.output)
    _emit({"target": list(g.target), "m": g.m, "y": None if g.y is None else list(g.y),
           "n_base": g.base_hull.n, "n": g.result.n}, _p(args.json))
    return 0


def validate_instance(X, seed: int = 0, probes: int = 1000) -> dict:
    """Run the structural and optimality checks on one instance."""
    X = PointSet(X.coords) if isinstance(X, PointSet) else PointSet(X)
    checks = {}
    diam = max(X.diameter(), 1e-300)
    res = quadratic.solve_quadratic(X, seed=seed)
    tc = quadratic.two_centroids(X)
    if not X.is_singleton():
        fpvd = farthest.build_fpvd(X, seed=seed)
        if fpvd.fpdt is not None:
            C = X.coords
            ok = all(incircle(C[a], C[b], C[c], p) >= 0
                     for a, b, c in fpvd.fpdt.triangles for p in C)
            checks["fpdt_full_circle"] = ok
        rng = np.random.default_rng(seed)
        lo, hi = X.coords.min(axis=0), X.coords.max(axis=0)
        c, half = 0.5 * (lo + hi), 1.5 * max(float((hi - lo).max()), 1e-9)
        S = c + rng.uniform(-half, half, size=(probes, 2))
        got = farthest.locate_regions(fpvd, X, S)
        agree = all(int(g) in farthest.locate_farthest(X, s, rel_tol=1e-9) for g, s in zip(got, S))
        checks["region_probes"] = agree
        try:
            quadratic.classify_case(res, tc, fpvd, X)
            checks["case_equivalence"] = True
        except MinPowerError:
            checks["case_equivalence"] = False
    kkt = quadratic.kkt_residuals(X, res, tc)
    checks["kkt"] = (kkt["stationarity"] <= 1e-9 * diam and kkt["normalisation"] <= 1e-9
                     and kkt["slackness"] <= 1e-9 * diam ** 2 and kkt["min_lambda"] >= 0)
    rng = np.random.default_rng(seed + 1)
    ang = rng.uniform(0, 2 * math.pi, 100)
    p0 = res.objective
    checks["first_order"] = all(
        quadratic.power((res.s_star[0] + 1e-5 * diam * math.cos(t),
                         res.s_star[1] + 1e-5 * diam * math.sin(t)), X) >= p0 - 1e-10 * max(p0, 1)
        for t in ang)
    d = np.hypot(*(X.coords - np.asarray(res.s_star)).T)
    r = tc.r
    checks["mr_within_radius"] = float(np.hypot(*(tc.Mj[r] - X.coords[r]))) <= d[r] + 1e-12 * diam
    checks["containment"] = quadratic._in_convex(tc.Mj, res.s_star, 1e-9)
    if X.n >= 2 and p0 > 0:
        checks["ratio_bound"] = analysis.approx_ratio(X).slack >= -1e-9
        try:
            quadratic.one_centre_checks(X, res)
            checks["one_centre"] = True
        except MinPowerError:
            checks["one_centre"] = False
    num = oracle.solve_numeric(X, 2.0)
    checks["oracle_agreement"] = math.dist(num.s, res.s_star) <= 1e-6 * diam
    return {k: bool(v) for k, v in checks.items()}


def _cmd_validate(args) -> int:
    X = parse_points(args.input)
    checks = validate_instance(X, seed=args.seed)
    _emit({"passed": all(checks.values()), "checks": checks}, _p(args.json))
    return 0 if all(checks.values()) else 2


def _p(v):
    return None if v is None else Path(v)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minpower", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, need_input=True):
        p.add_argument("--input", required=need_input, help="CSV or JSON point file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", help="write JSON here instead of stdout")
        p.add_argument("--csv", help="also write a CSV table")

    p = sub.add_parser("solve", help="min-power centre of a point file")
    common(p)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--method", choices=METHODS, default="both")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--svg")
    p.add_argument("--dump", help="write the diagram and triangulation as JSON")
    p.add_argument("--scan-order", choices=quadratic.SCAN_ORDERS, default="paper")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("ratio", help="centroid approximation ratio")
    common(p, need_input=False)
    p.add_argument("--n-values", default="2,5,10,20,50,100")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--family", choices=analysis.FAMILIES, default="uniform")
    p.set_defaults(func=_cmd_ratio)

    p = sub.add_parser("sweep", help="numeric optimum over a list of alphas")
    common(p)
    p.add_argument("--alphas", default="1.5,2,3,4,8,16,32")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("generate", help="instance whose min-power centre is a target")
    common(p)
    p.add_argument("--target", required=True, help="x,y on the farthest-point diagram")
    p.add_argument("--output", help="write the generated points here")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("validate", help="run the invariant checks on a point file")
    common(p)
    p.set_defaults(func=_cmd_validate)
    return ap


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, EmptyInput, ConfigError, FileNotFoundError) as exc:
        print(f"minpower: {exc}", file=sys.stderr)
        return 1
    except CrossCheckFailure as exc:
        print(f"minpower: {exc}", file=sys.stderr)
        return 2
    except (ToleranceNotReached, NoConvergence) as exc:
        print(f"minpower: numeric failure: {exc}", file=sys.stderr)
        return 3
    except MinPowerError as exc:
        print(f"minpower: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
