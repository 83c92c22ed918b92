"""Command-line front end: evaluation commands and the verification suite.

Exit codes: 0 all checks passed, 1 at least one identity failed, 2 usage
or configuration error, 3 infrastructure failure (a verifier crashed).
Reports are JSON; numbers beyond double precision are emitted as decimal
strings next to a precision_bits field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from .elliptic import EllipticParams, gamma_pq, theta
from .errors import EllipqError, UsageError
from .hpcomplex import DEFAULT_PRECISION, HPComplex
from .laurent import LaurentPoly, lex_sorted_partitions
from .macdonald import macdonald_coeffs
from .partitions import SignedPartition
from .ratfun import RationalFn
from .series import LaurentRing, PSeries
from .spectral import elliptic_macdonald, kernel_coefficient
from . import verify as V

SCHEMA_VERSION = "1"
ARTIFACT_VERSION = "0.1.0"

IDENTITIES = {
    "gamma-identities": {"runner": "gamma", "params": ("points",)},
    "theta-identity": {"runner": "theta-id", "params": ("n", "k")},
    "grry": {"runner": "grry", "params": ("n",)},
    "rains": {"runner": "rains", "params": ("n", "m")},
    "qd-commutation": {"runner": "qd", "params": ("n", "k")},
    "qhqp": {"runner": "qhqp", "params": ("n",)},
    "eigenvalue-series": {"runner": "eigenvalue-series", "params": ("lam", "n")},
    "ns-residue": {"runner": "ns", "params": ("n", "k")},
}


@dataclass
class SuiteConfig:
    """Validated configuration of one verification run."""

    precision_bits: int = DEFAULT_PRECISION
    tolerance: float = 1e-10
    quad_start: int = 32
    quad_cap: int = 256
    seeds: list = field(default_factory=lambda: [0])
    identities: list = field(default_factory=list)  # list of dicts with "id" + params
    out_path: str | None = None

    def validate(self):
        if not self.identities:
            raise UsageError("no identities selected")
        if not self.tolerance > 2.0 ** (-self.precision_bits + 8):
            raise UsageError(
                f"tolerance {self.tolerance} is below the precision floor "
                f"2^-{self.precision_bits - 8}")
        for item in self.identities:
            if item.get("id") not in IDENTITIES:
                raise UsageError(f"unknown identity {item.get('id')!r}; "
                                 f"see `list-identities`")
        if self.quad_cap < self.quad_start:
            raise UsageError("quadrature cap below the starting order")


@dataclass
class SuiteReport:
    config: dict
    reports: list
    passed: int
    failed: int
    total_wall_time_s: float

    def to_json_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "artifact_version": ARTIFACT_VERSION,
            "config": self.config,
            "reports": [r.to_json_dict() for r in self.reports],
            "summary": {"passed": self.passed, "failed": self.failed,
                        "total": self.passed + self.failed},
            "total_wall_time_s": self.total_wall_time_s,
        }


def _dispatch(item: dict, seed: int, cfg: SuiteConfig):
    ident = item["id"]
    runner = IDENTITIES[ident]["runner"]
    n = int(item.get("n", 2))
    k = int(item.get("k", 1))
    if runner == "gamma":
        return V.verify_gamma_identities(seed, points=int(item.get("points", 100)),
                                         prec=cfg.precision_bits)
    if runner == "theta-id":
        return V.verify_theta_identity(n, k, seed, prec=cfg.precision_bits)
    if runner == "grry":
        return V.verify_grry(n, seed, N=cfg.quad_start,
                             threshold=cfg.tolerance, cap=cfg.quad_cap)
    if runner == "rains":
        return V.verify_rains(n, int(item.get("m", 1)), seed, N=cfg.quad_start,
                              threshold=cfg.tolerance, cap=cfg.quad_cap)
    if runner == "qd":
        return V.verify_qd_commutation(n, k, seed, N=cfg.quad_start,
                                       threshold=cfg.tolerance, cap=cfg.quad_cap)
    if runner == "qhqp":
        return V.verify_qhqp(n, seed, N=cfg.quad_start,
                             threshold=cfg.tolerance, cap=cfg.quad_cap)
    if runner == "eigenvalue-series":
        lam = _parse_partition(item.get("lam", "0,0"))
        return V.verify_eigenvalue_series(lam, n, seed, N=cfg.quad_start, cap=cfg.quad_cap)
    if runner == "ns":
        return V.residue_noumi_sano(n, k, None, seed, cap=cfg.quad_cap)
    raise UsageError(f"unknown runner for {ident}")


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    """Execute the selected verifiers over all seeds; deterministic order."""
    cfg.validate()
    t0 = time.time()
    reports = []
    for item in cfg.identities:
        for seed in cfg.seeds:
            reports.append(_dispatch(item, seed, cfg))
    passed = sum(1 for r in reports if r.passed)
    cfg_echo = {
        "precision_bits": cfg.precision_bits,
        "tolerance": cfg.tolerance,
        "quad_start": cfg.quad_start,
        "quad_cap": cfg.quad_cap,
        "seeds": list(cfg.seeds),
        "identities": list(cfg.identities),
    }
    return SuiteReport(config=cfg_echo, reports=reports, passed=passed,
                       failed=len(reports) - passed,
                       total_wall_time_s=time.time() - t0)


# ----------------------------------------------------------------------
# argument handling
# ----------------------------------------------------------------------


def _parse_partition(text: str) -> tuple:
    try:
        return tuple(int(v) for v in str(text).split(","))
    except ValueError as exc:
        raise UsageError(f"cannot parse partition {text!r}") from exc


def _parse_complex(text: str, prec: int) -> HPComplex:
    try:
        z = complex(text.replace(" ", ""))
    except ValueError as exc:
        raise UsageError(f"cannot parse complex number {text!r}") from exc
    return HPComplex(z.real, z.imag, precision_bits=prec)


def _parse_poly(text: str, n: int) -> LaurentPoly:
    """Exponent-coefficient list 'e1,..,en:coeff;...' with integer coeffs."""
    from fractions import Fraction

    out = LaurentPoly(n)
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        exps, _, coeff = chunk.partition(":")
        mono = tuple(int(v) for v in exps.split(","))
        if len(mono) != n:
            raise UsageError(f"monomial {exps!r} has wrong arity (expected {n})")
        c = Fraction(coeff.strip() or "1")
        out = out + LaurentPoly(n, {mono: RationalFn(c, ("q", "t"))})
    return out


def _certified_digits(prec: int) -> int:
    return max(1, int((prec - 16) * 0.30103))


def _print_value(z: HPComplex, prec: int):
    print(z.to_str(_certified_digits(prec)), f"(certified to about "
          f"{_certified_digits(prec)} digits at {prec} bits)")


def _pseries_str(series: PSeries) -> dict:
    return {str(k): str(c) for k, c in enumerate(series.coeffs)}


def _coeffs_json(layers) -> dict:
    out = {}
    for k, layer in enumerate(layers):
        for parts, c in sorted(layer.items()):
            out.setdefault(",".join(map(str, parts)), {})[str(k)] = str(c)
    return out


def eval_command(kind: str, args) -> int:
    """Evaluation subcommands; numeric kinds print decimals with a stated
    certified digit count, symbolic kinds exact rational-function strings."""
    prec = args.prec
    if kind == "gamma":
        p = _parse_complex(args.p, prec)
        q = _parse_complex(args.q, prec)
        x = _parse_complex(args.x, prec)
        params = EllipticParams(p, q, 2.0 ** (-(prec + 16)))
        _print_value(gamma_pq(x, params), prec)
        return 0
    if kind == "theta":
        p = _parse_complex(args.p, prec)
        x = _parse_complex(args.x, prec)
        _print_value(theta(x, p, 2.0 ** (-(prec + 16)), prec), prec)
        return 0
    if kind == "macdonald":
        lam = SignedPartition(_parse_partition(args.lam))
        coeffs = macdonald_coeffs(lam, args.n)
        bits = []
        for parts in lex_sorted_partitions(coeffs.keys()):
            c = coeffs[parts]
            name = "m[" + ",".join(map(str, parts)) + "]"
            bits.append(name if c == RationalFn(1) else f"({c})*{name}")
        print(" + ".join(bits))
        return 0
    if kind == "emacdonald":
        lam = SignedPartition(_parse_partition(args.lam))
        em = elliptic_macdonald(lam, args.n, args.order)
        print(json.dumps({"partition": ",".join(map(str, lam.parts)),
                          "coefficients": _coeffs_json(em.layers),
                          "eigenvalue_order1": [str(e) for e in em.eps1],
                          "eigenvalue_order2": [str(e) for e in em.eps2]},
                         indent=2, sort_keys=True))
        return 0
    if kind == "kernel-expand":
        ke = kernel_coefficient(args.m, args.n, args.order)
        diag = {",".join(map(str, parts)): _pseries_str(b)
                for parts, b in sorted(ke.diagonal.items())}
        print(json.dumps({"m": args.m, "n": args.n, "order": args.order,
                          "diagonal": diag}, indent=2, sort_keys=True))
        return 0
    if kind == "apply":
        from .operators import apply_noumi_sano, apply_ruijsenaars

        f = _parse_poly(args.target, args.n)
        fs = PSeries.constant(f, LaurentRing(args.n), args.order)
        if args.op == "ruijsenaars":
            out = apply_ruijsenaars(args.k, fs, args.order)
        else:
            variant = "H" if args.op == "noumi-sano-gauged" else "Ht"
            out = apply_noumi_sano(variant, args.k, fs, args.order)
        layers = [c.monomial_expansion() if c else {} for c in out.coeffs]
        print(json.dumps({"coefficients": _coeffs_json(layers)},
                         indent=2, sort_keys=True))
        return 0
    raise UsageError(f"unknown eval kind {kind!r}")


def _load_config(path: str) -> dict:
    import tomli

    with open(path, "rb") as fh:
        return tomli.load(fh)


def _build_parser():
    ap = argparse.ArgumentParser(prog="ellipq",
                                 description="elliptic special functions and "
                                             "integral-identity verification")
    sub = ap.add_subparsers(dest="command")

    vp = sub.add_parser("verify", help="run identity verifiers")
    vp.add_argument("--identity", action="append", default=[],
                    help="identity id (repeatable); see list-identities")
    vp.add_argument("--n", type=int, default=2)
    vp.add_argument("--k", type=int, default=1)
    vp.add_argument("--m", type=int, default=1)
    vp.add_argument("--lambda", dest="lam", default="0,0")
    vp.add_argument("--points", type=int, default=100)
    vp.add_argument("--seeds", type=int, default=1, help="number of seeds (0..k-1)")
    vp.add_argument("--seed-list", default=None, help="explicit comma-separated seeds")
    vp.add_argument("--prec", type=int, default=None)
    vp.add_argument("--tol", type=float, default=None)
    vp.add_argument("--quad", type=int, default=None, help="starting quadrature order")
    vp.add_argument("--quad-cap", type=int, default=None)
    vp.add_argument("--config", default=None, help="TOML config file; flags win")
    vp.add_argument("--out", default=None, help="JSON report path")

    ep = sub.add_parser("eval", help="evaluate one object")
    esub = ep.add_subparsers(dest="kind")
    for kind in ("gamma", "theta"):
        kp = esub.add_parser(kind)
        kp.add_argument("--x", required=True)
        kp.add_argument("--p", required=True)
        if kind == "gamma":
            kp.add_argument("--q", required=True)
        kp.add_argument("--prec", type=int, default=DEFAULT_PRECISION)
    mp = esub.add_parser("macdonald")
    mp.add_argument("--lambda", dest="lam", required=True)
    mp.add_argument("--n", type=int, required=True)
    mp.add_argument("--prec", type=int, default=DEFAULT_PRECISION)
    emp = esub.add_parser("emacdonald")
    emp.add_argument("--lambda", dest="lam", required=True)
    emp.add_argument("--n", type=int, required=True)
    emp.add_argument("--order", type=int, default=1)
    emp.add_argument("--prec", type=int, default=DEFAULT_PRECISION)
    kp = esub.add_parser("kernel-expand")
    kp.add_argument("--m", type=int, default=0)
    kp.add_argument("--n", type=int, default=2)
    kp.add_argument("--order", type=int, default=1)
    kp.add_argument("--prec", type=int, default=DEFAULT_PRECISION)
    app = esub.add_parser("apply")
    app.add_argument("--op", choices=("ruijsenaars", "noumi-sano", "noumi-sano-gauged"),
                     default="ruijsenaars")
    app.add_argument("--k", type=int, default=1)
    app.add_argument("--n", type=int, required=True)
    app.add_argument("--order", type=int, default=1)
    app.add_argument("--target", required=True,
                     help="exponent-coefficient list, e.g. '1,0:1;0,1:1'")
    app.add_argument("--prec", type=int, default=DEFAULT_PRECISION)

    sub.add_parser("list-identities", help="print the registered identity ids")
    return ap


_EVAL_ALIASES = ("macdonald", "emacdonald", "kernel-expand", "apply")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] in _EVAL_ALIASES:
        argv = ["eval"] + argv
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.command == "list-identities":
        for name, info in sorted(IDENTITIES.items()):
            print(f"{name}  (params: {', '.join(info['params'])})")
        return 0
    if args.command == "eval":
        if not getattr(args, "kind", None):
            print("eval requires a kind", file=sys.stderr)
            return 2
        try:
            return eval_command(args.kind, args)
        except UsageError as exc:
            print(f"usage error: {exc}", file=sys.stderr)
            return 2
        except EllipqError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 3
    if args.command == "verify":
        try:
            cfg = _assemble_config(args)
            cfg.validate()
        except UsageError as exc:
            print(f"usage error: {exc}", file=sys.stderr)
            return 2
        try:
            report = run_suite(cfg)
        except EllipqError as exc:
            print(f"verifier infrastructure failure: {exc}", file=sys.stderr)
            return 3
        payload = json.dumps(report.to_json_dict(), indent=2, sort_keys=True)
        if cfg.out_path:
            with open(cfg.out_path, "w") as fh:
                fh.write(payload + "\n")
        else:
            print(payload)
        for r in report.reports:
            status = "pass" if r.passed else "FAIL"
            print(f"[{status}] {r.identity} seed={r.seed} "
                  f"rel={r.rel_residual:.3e} thr={r.threshold:.1e}",
                  file=sys.stderr)
        return 0 if report.failed == 0 else 1
    ap.print_help()
    return 2


def _assemble_config(args) -> SuiteConfig:
    base = {}
    if args.config:
        base = _load_config(args.config)
    suite = base.get("suite", {})
    cfg = SuiteConfig(
        precision_bits=args.prec or suite.get("precision_bits", DEFAULT_PRECISION),
        tolerance=args.tol or suite.get("tolerance", 1e-10),
        quad_start=args.quad or suite.get("quad_start", 32),
        quad_cap=args.quad_cap or suite.get("quad_cap", 256),
        out_path=args.out or suite.get("out"),
    )
    if args.seed_list:
        cfg.seeds = [int(v) for v in args.seed_list.split(",")]
    elif args.seeds != 1:
        cfg.seeds = list(range(args.seeds))
    elif suite.get("seeds"):
        cfg.seeds = [int(v) for v in suite["seeds"]]
    else:
        cfg.seeds = [0]
    identities = []
    for ident in args.identity:
        identities.append({"id": ident, "n": args.n, "k": args.k, "m": args.m,
                           "lam": args.lam, "points": args.points})
    for item in base.get("identity", []):
        identities.append(dict(item))
    cfg.identities = identities
    return cfg


if __name__ == "__main__":
    sys.exit(main())
