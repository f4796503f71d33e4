"""Command-line front end.

    supermac compute {macdonald,super,skew,pieri,norm} ...
    supermac verify {eigen,orthogonality,norms,radii,self-adjoint,appendix-d,
                     factorization,commutators,all} ...

Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input.
Environment: SUPERMAC_THREADS caps BLAS threads, SUPERMAC_OUTPUT_DIR also
writes each report to a file there.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .operators import commutator_checks, eigen_check
from .partitions import Partition, in_Hnm, parse_partition
from .quadrature import (InvalidRadii, QuadratureSpec, appendix_d_suite, factorization_check,
                         hermiticity_check, inversion_check, norm_formula_Nn, norm_formula_Nnm,
                         orthogonality_suite, radii_region_suite, self_adjointness_suite)
from .scalars import DEFAULT_QSQRT, DEFAULT_TRUNCATION, DEFAULT_TSQRT, ParameterError, ParamSet, parse_rational
from .supermac import labels, super_P
from .symfunc import macdonald_P, pieri_f, skew_P

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2

SUITES = ("eigen", "orthogonality", "norms", "radii", "self-adjoint", "appendix-d",
          "factorization", "commutators", "all")

# (n, m) sets and sizes used when no --n/--m is given; these mirror the acceptance runs
DEFAULT_SHAPES = {
    "eigen": [(1, 1), (2, 1), (1, 2), (2, 2)],
    "orthogonality": [(1, 1), (2, 1), (1, 2)],
    "norms": [(1, 1), (2, 1), (1, 2)],
    "radii": [(1, 1), (2, 1)],
    "self-adjoint": [(1, 1), (2, 1)],
    "factorization": [(2, 0), (1, 1), (2, 1)],
    "commutators": [(1, 1), (2, 1)],
}
DEFAULT_WEIGHT = {"eigen": 6, "orthogonality": 5, "norms": 5, "radii": 3, "self-adjoint": 2,
                  "commutators": 4}


class InvalidInput(ValueError):
    pass


@dataclass
class RunConfig:
    params: ParamSet
    n: int | None
    m: int | None
    spec: QuadratureSpec
    seed: int
    output: str

    @property
    def mode(self) -> str:
        return "exact" if self.params.exact else "float"

    def as_dict(self) -> dict:
        return {"mode": self.mode, "params": self.params.as_dict(), "n": self.n, "m": self.m,
                "spec": self.spec.as_dict(), "seed": self.seed, "output": self.output}


# ---------------------------------------------------------------------------
# argument handling


def _common(p: argparse.ArgumentParser):
    g = p.add_argument_group("parameters")
    g.add_argument("--qsqrt", help="q^(1/2) as an exact rational, e.g. 7/10")
    g.add_argument("--tsqrt", help="t^(1/2) as an exact rational, e.g. 1/2")
    g.add_argument("--q", type=float, help="q as a float (switches to float mode)")
    g.add_argument("--t", type=float, help="t as a float (switches to float mode)")
    g.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION, help="q-Pochhammer truncation K")
    g.add_argument("--xi", type=float, default=2.0)
    g.add_argument("--xip", type=float, default=1.0)
    g.add_argument("--grid", type=int, default=64, help="grid points per angle")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    g.add_argument("--output", help="also write the report to this file")
    p.add_argument("--lambda", dest="lam", help="partition, e.g. 2,1")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="supermac", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute a polynomial, coefficient or norm")
    c.add_argument("kind", choices=("macdonald", "super", "skew", "pieri", "norm"))
    c.add_argument("--mu", help="inner partition (skew) or first factor (pieri)")
    c.add_argument("--nu", help="second factor (pieri)")
    _common(c)

    cs = sub.add_parser("compute-sp", help="same as 'compute super'")
    _common(cs)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--max-weight", type=int)
    v.add_argument("--degree", type=int, help="basis degree for commutators / self-adjoint")
    v.add_argument("--points", type=int, default=None)
    v.add_argument("--probe-excluded", action="store_true",
                   help="radii: also evaluate at xi = xi' (excluded region, diagnostic only)")
    _common(v)
    return parser


def params_from_args(args) -> ParamSet:
    floats = args.q is not None or args.t is not None
    exacts = args.qsqrt is not None or args.tsqrt is not None
    if floats and exacts:
        raise InvalidInput("give either --qsqrt/--tsqrt or --q/--t, not both")
    if floats:
        for name in ("q", "t"):
            val = getattr(args, name)
            if val is not None and not 0 < val < 1:
                raise InvalidInput(f"--{name} must lie in (0, 1), got {val}")
        q = args.q if args.q is not None else float(DEFAULT_QSQRT) ** 2
        t = args.t if args.t is not None else float(DEFAULT_TSQRT) ** 2
        params = ParamSet.from_qt(q, t)
    else:
        a = parse_rational(args.qsqrt) if args.qsqrt else DEFAULT_QSQRT
        b = parse_rational(args.tsqrt) if args.tsqrt else DEFAULT_TSQRT
        if a <= 0 or b <= 0:
            raise InvalidInput("--qsqrt and --tsqrt must be positive")
        params = ParamSet(a, b)
    params.validate()
    return params


def config_from_args(args) -> RunConfig:
    params = params_from_args(args)
    try:
        spec = QuadratureSpec(args.xi, args.xip, args.grid, args.truncation)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    for name in ("n", "m"):
        val = getattr(args, name)
        if val is not None and val < 0:
            raise InvalidInput(f"--{name} must be >= 0")
    return RunConfig(params, args.n, args.m, spec, args.seed, args.format)


def _partition(text: str | None, flag: str) -> Partition:
    if text is None:
        raise InvalidInput(f"{flag} is required")
    try:
        lam = parse_partition(text)
    except ValueError as exc:
        raise InvalidInput(f"bad partition for {flag}: {text!r}") from exc
    if any(p < 0 for p in lam):
        raise InvalidInput(f"bad partition for {flag}: {text!r}")
    return lam


# ---------------------------------------------------------------------------
# serialisation


def _scalar(c):
    if isinstance(c, Fraction):
        return {"numerator": c.numerator, "denominator": c.denominator}
    if isinstance(c, int):
        return {"numerator": c, "denominator": 1}
    if isinstance(c, complex):
        return {"float": [c.real, c.imag]}
    return {"float": float(c)}


def _json_default(o):
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    if isinstance(o, (complex, np.complexfloating)):
        return [float(o.real), float(o.imag)]
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not serialisable: {type(o)}")


def _flatten(report: dict) -> list[dict]:
    if "rows" in report:
        return report["rows"]
    rows = []
    for chk in report.get("checks", []):
        rows.append({k: chk.get(k) for k in ("check", "max_residual", "tolerance", "passed", "seed")})
    if not rows:
        rows.append({k: v for k, v in report.items() if not isinstance(v, (dict, list))})
    return rows


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, default=_json_default) + "\n"
    if fmt == "csv":
        rows = _flatten(report)
        buf = io.StringIO()
        fields = list(rows[0].keys()) if rows else []
        w = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _json_default(v) if isinstance(v, (np.generic, complex)) else v for k, v in r.items()})
        return buf.getvalue()
    lines = []
    if "checks" in report:
        for chk in report["checks"]:
            flag = "PASS" if chk.get("passed") else "FAIL"
            lines.append(f"{flag}  {chk['check']:<48} max_residual={chk.get('max_residual', 0):.3e}"
                         f"  tol={chk.get('tolerance', 0):.0e}")
            if chk.get("note"):
                lines.append(f"      {chk['note']}")
        lines.append(f"overall: {'PASS' if report.get('passed') else 'FAIL'}")
    else:
        head = {k: v for k, v in report.items() if not isinstance(v, (dict, list))}
        lines.append("  ".join(f"{k}={v}" for k, v in sorted(head.items())))
        for r in report.get("rows", []):
            lines.append("  " + "  ".join(f"{k}={v}" for k, v in r.items()))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# compute


def cmd_compute(kind: str, args, cfg: RunConfig) -> tuple[dict, int]:
    params = cfg.params
    q, t = params.q, params.t
    lam = _partition(args.lam, "--lambda")
    meta = {"kind": kind, "lambda": str(lam), "config": cfg.as_dict()}
    if kind == "macdonald":
        n = cfg.n if cfg.n is not None else len(lam)
        f = macdonald_P(lam, q, t, n)
        meta["polynomial"] = f.to_m().to_json()
        meta["rows"] = [dict(partition=r["partition"], **{k: v for k, v in r.items() if k != "partition"})
                        for r in meta["polynomial"]["terms"]]
        return meta, EXIT_OK
    if kind == "super":
        n, m = _nm(cfg)
        P = super_P(lam, n, m, params)
        rows = []
        for (lx, ly), c in sorted(P.canonical().items(), key=lambda kv: (-sum(kv[0][0]) - sum(kv[0][1]), kv[0])):
            rows.append({"x": str(lx), "y": str(ly), **_scalar(c)})
        meta.update({"n": n, "m": m, "in_H": in_Hnm(lam, n, m), "basis": "m_x m_y", "terms": rows,
                     "rows": rows})
        if P.is_zero():
            meta["warning"] = f"SP_{lam} vanishes for n={n}, m={m} (lambda not in H_{n},{m})"
            print("warning: " + meta["warning"], file=sys.stderr)
        return meta, EXIT_OK
    if kind == "skew":
        mu = _partition(args.mu, "--mu")
        f = skew_P(lam, mu, q, t, cfg.n)
        meta.update({"mu": str(mu), "polynomial": f.to_json()})
        meta["rows"] = meta["polynomial"]["terms"]
        return meta, EXIT_OK
    if kind == "pieri":
        mu, nu = _partition(args.mu, "--mu"), _partition(args.nu, "--nu")
        c = pieri_f(lam, mu, nu, q, t)
        meta.update({"mu": str(mu), "nu": str(nu), "coefficient": _scalar(c)})
        meta["rows"] = [{"lambda": str(lam), "mu": str(mu), "nu": str(nu), **_scalar(c)}]
        return meta, EXIT_OK
    # norm
    n = cfg.n if cfg.n is not None else max(len(lam), 1)
    m = cfg.m if cfg.m is not None else 0
    K = cfg.spec.K
    if m == 0:
        if len(lam) > n:
            raise InvalidInput(f"{lam} has more than n={n} parts")
        val = norm_formula_Nn(lam, n, q, t, K)
    else:
        if not in_Hnm(lam, n, m):
            raise InvalidInput(f"{lam} is not in H_({n},{m})")
        val = norm_formula_Nnm(lam, n, m, params, K)
    meta.update({"n": n, "m": m, "truncation": K, "norm": val})
    meta["rows"] = [{"lambda": str(lam), "n": n, "m": m, "K": K, "norm": val}]
    return meta, EXIT_OK


def _nm(cfg: RunConfig) -> tuple[int, int]:
    if cfg.n is None or cfg.m is None:
        raise InvalidInput("--n and --m are required")
    return cfg.n, cfg.m


# ---------------------------------------------------------------------------
# verify


def _shapes(suite: str, cfg: RunConfig) -> list[tuple[int, int]]:
    if cfg.n is not None or cfg.m is not None:
        n = cfg.n if cfg.n is not None else 1
        m = cfg.m if cfg.m is not None else 1
        return [(n, m)]
    return DEFAULT_SHAPES[suite]


def _weight(suite: str, args) -> int:
    if args.max_weight is not None:
        if args.max_weight < 0:
            raise InvalidInput("--max-weight must be >= 0")
        return args.max_weight
    return DEFAULT_WEIGHT[suite]


def suite_eigen(args, cfg):
    checks = []
    points = args.points or 20
    for n, m in _shapes("eigen", cfg):
        if args.lam is not None:
            lam = _partition(args.lam, "--lambda")
            if not in_Hnm(lam, n, m):
                raise InvalidInput(f"{lam} is not in H_({n},{m}); SP_lambda vanishes there")
            labs = [lam]
        else:
            labs = labels(n, m, _weight("eigen", args))
        for lam in labs:
            checks.append(eigen_check(lam, n, m, cfg.params, points, cfg.seed).as_dict())
    return checks


def suite_orthogonality(args, cfg, rows_out=None):
    checks = []
    for n, m in _shapes("orthogonality", cfg):
        res, coeffs = orthogonality_suite(n, m, cfg.params, cfg.spec, _weight("orthogonality", args))
        s = res.summary(coeffs)
        checks.append({"check": f"norms n={n} m={m}", "max_residual": s["max_norm_rel_error"],
                       "tolerance": 1e-6, "passed": s["max_norm_rel_error"] <= 1e-6, "seed": cfg.seed})
        checks.append({"check": f"zero norms n={n} m={m}", "max_residual": s["max_zero_norm_abs"],
                       "tolerance": 1e-10, "passed": s["max_zero_norm_abs"] <= 1e-10, "seed": cfg.seed})
        checks.append({"check": f"off-diagonal n={n} m={m}", "max_residual": s["max_offdiag_scaled"],
                       "tolerance": 1e-8, "passed": s["max_offdiag_scaled"] <= 1e-8, "seed": cfg.seed,
                       "worst_pair": s["worst_offdiag_pair"]})
        checks.append({"check": f"nonnegative formulas n={n} m={m}", "max_residual": max(0.0, -s["min_formula"]),
                       "tolerance": 0.0, "passed": s["min_formula"] >= 0, "seed": cfg.seed})
        if rows_out is not None:
            rows_out.extend(r.row(cfg.seed) for r in res.reports())
    return checks


def suite_radii(args, cfg):
    checks = []
    K, N = cfg.spec.K, cfg.spec.N
    for n, m in _shapes("radii", cfg):
        r = radii_region_suite(n, m, cfg.params, _weight("radii", args), N, K,
                               probe_excluded=args.probe_excluded)
        d = r.as_dict()
        d["seed"] = cfg.seed
        if r.probe:
            d["note"] = (f"diagnostic xi=xi'={r.probe['xi']}: differs by "
                         f"{r.probe['max_difference_nonkernel']:.3e} on {r.probe['pair']} (expected)")
        checks.append(d)
        checks.append(hermiticity_check(n, m, cfg.params, cfg.spec, seed=cfg.seed))
        checks.append(inversion_check(n, m, cfg.params, cfg.spec, seed=cfg.seed))
    return checks


def suite_self_adjoint(args, cfg):
    checks = []
    degree = args.degree if args.degree is not None else _weight("self-adjoint", args)
    user_radii = args.xi != 2.0 or args.xip != 1.0
    spec = cfg.spec if user_radii else cfg.spec.with_(xi=4.0, xip=1.0)
    for n, m in _shapes("self-adjoint", cfg):
        d = self_adjointness_suite(n, m, cfg.params, degree, spec)
        d["seed"] = cfg.seed
        checks.append(d)
    return checks


def suite_appendix_d(args, cfg):
    d = appendix_d_suite(cfg.params, cfg.spec.xi, cfg.spec.xip, cfg.spec.N)
    d["seed"] = cfg.seed
    d["tolerance"] = 1e-8
    return [d]


def suite_factorization(args, cfg):
    checks = []
    for n, m in _shapes("factorization", cfg):
        checks.append(factorization_check(n, m, cfg.params, cfg.spec.xi, cfg.spec.xip,
                                          points=args.points or 10, seed=cfg.seed, K=cfg.spec.K))
    return checks


def suite_commutators(args, cfg):
    checks = []
    degree = args.degree if args.degree is not None else _weight("commutators", args)
    for n, m in _shapes("commutators", cfg):
        d = commutator_checks(n, m, cfg.params, degree, args.points or 10, cfg.seed)
        d.pop("details", None)
        checks.append(d)
    return checks


def cmd_verify(suite: str, args, cfg: RunConfig) -> tuple[dict, int]:
    if suite not in ("eigen", "commutators", "factorization"):
        cfg.spec.validate(cfg.params)
    rows: list = []
    runners = {
        "eigen": suite_eigen,
        "orthogonality": suite_orthogonality,
        "norms": lambda a, c: suite_orthogonality(a, c, rows),
        "radii": suite_radii,
        "self-adjoint": suite_self_adjoint,
        "appendix-d": suite_appendix_d,
        "factorization": suite_factorization,
        "commutators": suite_commutators,
    }
    if suite == "all":
        checks = []
        for name in ("eigen", "norms", "radii", "self-adjoint", "appendix-d", "factorization", "commutators"):
            checks.extend(runners[name](args, cfg))
    else:
        checks = runners[suite](args, cfg)
    passed = all(bool(c.get("passed")) for c in checks)
    report = {"suite": suite, "config": cfg.as_dict(), "checks": checks, "passed": passed}
    if not passed:
        first = next(c for c in checks if not c.get("passed"))
        report["first_failure"] = {k: first.get(k) for k in ("check", "max_residual", "tolerance")}
    if suite == "norms":
        report["rows"] = rows
    return report, EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------------------


def _emit(text: str, args, name: str):
    sys.stdout.write(text)
    paths = []
    if args.output:
        paths.append(args.output)
    outdir = os.environ.get("SUPERMAC_OUTPUT_DIR")
    if outdir:
        os.makedirs(outdir, exist_ok=True)
        ext = {"json": "json", "csv": "csv", "pretty": "txt"}[args.format]
        paths.append(os.path.join(outdir, f"{name}.{ext}"))
    for p in paths:
        with open(p, "w") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = config_from_args(args)
        if args.command == "verify":
            report, code = cmd_verify(args.suite, args, cfg)
            name = f"verify-{args.suite}"
        else:
            kind = "super" if args.command == "compute-sp" else args.kind
            report, code = cmd_compute(kind, args, cfg)
            name = f"compute-{kind}"
    except (InvalidInput, ParameterError, InvalidRadii) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.format == "json" and args.command != "verify":
        report.pop("rows", None)
    _emit(render(report, args.format), args, name)
    return code


if __name__ == "__main__":
    sys.exit(main())
