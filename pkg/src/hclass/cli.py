"""The ``hclass`` command line."""

from __future__ import annotations

import argparse
import json
import sys

from . import cohen, kloosterman, qforms
from .config import build_config
from .report import dump_reports, fmt_value
from . import verify

# identity_id prefix -> tolerance table key, for the rationale recorded in each report
_RATIONALE_KEY = {
    "thm-1-1/coefficient-direct": "thm-1-1-direct",
    "thm-1-1/coefficient": "thm-1-1",
    "thm-1-1/constant": "exact",
    "thm-1-2/coefficient": "thm-1-2",
    "thm-1-2/": "thm-1-2-exact",
    "cor-1-3": "cor-1-3",
    "cor-1-5": "cor-1-5",
    "thm-1-4-const": "thm-1-4-const",
    "kloosterman/reflection": "reflection",
    "local-factors": "local-factors",
    "kohnen": "kohnen",
    "theta-integral": "theta-integral",
    "ramanujan-remark": "ramanujan-remark",
}


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _emit_series(series, fmt: str) -> str:
    return series.to_csv() if fmt == "csv" else series.to_json() + "\n"


def _add_truncation(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float)
    p.add_argument("--a-max", type=int, dest="a_max")
    p.add_argument("--c-max", type=int, dest="c_max")
    p.add_argument("--lattice-bound", type=int, dest="lattice_bound")
    p.add_argument("--seed", type=int)
    p.add_argument("--quick", action="store_true", default=None)
    p.add_argument("--timings", action="store_true", default=None, help="record wall-clock runtime_ms (breaks byte-identical output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hclass", description="Generalised Hurwitz class numbers and identity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hurwitz", help="coefficients H_{k,ell,N}(n) for 0 <= n <= nmax")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("series", help="derived q-series")
    p.add_argument("kind", choices=("combination", "real-trace", "holomorphic"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="csv")

    p = sub.add_parser("zeta", help="Kloosterman zeta values")
    p.add_argument("which", choices=("level", "modified", "plus"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--direct", action="store_true", help="plus: sum the truncated series instead of the Euler product")
    p.add_argument("--c-max", type=int, dest="c_max")

    p = sub.add_parser("trace", help="traces of the weight 0 Eisenstein series")
    p.add_argument("which", choices=("real", "imag"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--disc", type=int, required=True, help="D > 0; imag uses discriminant -D")
    p.add_argument("--doubled", action="store_true", help="imag: count negative definite classes too")
    _add_truncation(p)

    p = sub.add_parser("verify", help="run an identity suite and print JSON reports")
    p.add_argument("suite", choices=("thm-1-1", "thm-1-2", "cor-1-3", "cor-1-5", "thm-1-4-const", "primitives"))
    p.add_argument("--k", type=int)
    p.add_argument("--level", type=int, help="N for thm-1-1, the prime p otherwise")
    p.add_argument("--nmax", type=int)
    p.add_argument("--disc", type=_int_list, help="comma separated D list")
    p.add_argument("--path", choices=("closed", "direct", "both"), default="both")
    _add_truncation(p)
    return parser


def _config(args):
    keys = ("a_max", "c_max", "lattice_bound", "tol", "seed", "quick", "timings")
    return build_config({k: getattr(args, k, None) for k in keys})


def _annotate(reports, cfg):
    for r in reports:
        for prefix, key in _RATIONALE_KEY.items():
            if r.identity_id.startswith(prefix):
                r.notes.setdefault("tolerance_rationale", cfg.rationale(key))
                break
    return reports


def run_verify(args) -> list:
    cfg = _config(args)
    s = args.suite
    if s == "primitives":
        return verify.suite_primitives(cfg)
    k = args.k if args.k is not None else 2
    if s == "thm-1-1":
        paths = ("closed", "direct") if args.path == "both" else (args.path,)
        return verify.suite_theorem_1_1(k, args.level or 1, args.nmax if args.nmax is not None else 30, cfg, paths)
    p = args.level or 3
    if s == "thm-1-2":
        return verify.suite_theorem_1_2(k, p, args.nmax if args.nmax is not None else 40, cfg)
    if s == "cor-1-3":
        return verify.suite_cor_1_3(k, p, args.disc or [1, 4, 9, 16, 25], cfg)
    if s == "cor-1-5":
        return verify.suite_cor_1_5(k, p, args.disc or [3, 4, 7, 8, 11, 12], cfg)
    return verify.suite_theorem_1_4_constant(k, p, cfg)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "hurwitz":
            out.write(_emit_series(cohen.cohen_eisenstein_series(args.k, args.ell, args.level, args.nmax), args.format))
        elif args.command == "series":
            if args.kind == "combination":
                s = cohen.theorem_1_1_combination(args.k, args.level, args.nmax)
            elif args.kind == "holomorphic":
                s = cohen.holomorphic_eisenstein_coefficients(args.k, args.level, args.nmax)
            else:
                scalar, s = cohen.theorem_1_2_rhs(args.k, args.level, args.nmax)
                if args.format == "json":
                    body = {"scalar": str(scalar.value), "sqrt": scalar.radicand, "series": json.loads(s.to_json())}
                    out.write(json.dumps(body, indent=2) + "\n")
                    return 0
            out.write(_emit_series(s, args.format))
        elif args.command == "zeta":
            if args.which == "level":
                v = kloosterman.zeta_K_level(args.level, args.n, args.k)
                body = {"exact": str(v), "value": float(v)}
            elif args.which == "modified":
                if args.n:
                    parser.error("modified zeta is only available at n = 0")
                body = {"value": kloosterman.zeta_K_constants(args.level, args.k, "modified")}
            else:
                if args.direct:
                    cfg = build_config({"c_max": args.c_max})
                    sv = kloosterman.plus_zeta_direct(
                        kloosterman.parity_kappa(args.k), args.level, args.n, args.k, cfg.truncation.c_max
                    )
                    body = {"value": [sv.value.real, sv.value.imag], "tail_bound": sv.tail_bound, "c_max": sv.terms}
                else:
                    v = kloosterman.plus_zeta_closed(args.k, args.level, args.n)
                    body = {"value": [v.real, v.imag]}
            out.write(json.dumps(body, indent=2) + "\n")
        elif args.command == "trace":
            cfg = _config(args)
            if args.which == "real":
                t = qforms.real_trace_unfolded(args.k, args.level, args.disc, cfg.truncation)
                body = {"value": t.value, "tail_bound": t.tail_bound, "a_max": cfg.truncation.a_max}
            else:
                v = qforms.imag_trace(args.k, args.level, -args.disc, cfg.truncation, doubled=args.doubled)
                classes = qforms.enumerate_heegner_classes(args.level, -args.disc)
                body = {
                    "value": v,
                    "lattice_bound": cfg.truncation.lattice_bound,
                    "classes": [c.as_dict() for c in classes],
                }
            out.write(json.dumps(body, indent=2, default=fmt_value) + "\n")
        else:
            cfg = _config(args)
            reports = _annotate(run_verify(args), cfg)
            out.write(dump_reports(reports))
            return 0 if all(r.passed for r in reports) else 1
    except ValueError as exc:
        print(f"hclass: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
