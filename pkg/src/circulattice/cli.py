"""Command line interface.

Every subcommand prints one JSON document (or writes it to ``--out``).
Exact integers are emitted as decimal strings. Exit status: 0 on success,
2 when the enumeration budget ran out (partial output is still written),
1 when a verification suite reports a failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import counting, group, harness, lattice, primes
from .dcode import DEFAULT_BUDGET, DoubleCirculantCode, min_norm
from .errors import BudgetExceeded, CirculatticeError
from .modp import Params

EXIT_OK, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2

GLOBAL_DEFAULTS = {"seed": 0, "budget": DEFAULT_BUDGET, "workers": 1, "out": None}


def parse_config(path: str) -> dict:
    """Flat ``key = value`` file; '#' starts a comment; keys use flag names (dashes or underscores)."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _int_list(s: str) -> tuple:
    return tuple(int(v) for v in s.split(",") if v.strip())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget", type=int, default=None, help="word/visit cap for enumerations")
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--out", default=None, help="write JSON here instead of stdout")
    common.add_argument("--config", default=None, help="key=value file mirroring the flags")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="circulattice", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", parents=[common], help="search double circulant codes")
    s.add_argument("--q", type=int)
    s.add_argument("--p", type=int, help="alphabet prime (default: direct selection)")
    s.add_argument("--mode", choices=["exhaustive", "random"])
    s.add_argument("--samples", type=int)
    s.add_argument("--w2", type=int, help="target squared norm (default from vol S_n(w) = c n p^q)")
    s.add_argument("--c", type=float)
    s.add_argument("--csv", help="also write the d^2 histogram as CSV")

    s = sub.add_parser("select-prime", parents=[common], help="choose p with p mod q primitive")
    s.add_argument("--q", type=int)
    s.add_argument("--method", choices=["direct", "linnik"])
    s.add_argument("--relax", action="store_true")

    s = sub.add_parser("min-norm", parents=[common], help="minimum norm of one code")
    s.add_argument("--q", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--a", type=_int_list)
    s.add_argument("--full", action="store_true", help="scan all codewords without orbit reduction")

    s = sub.add_parser("count-ball", parents=[common], help="|B_{n,p}(d)| and the volume sandwich")
    s.add_argument("--n", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--d2", type=int)

    s = sub.add_parser("moment-bound", parents=[common], help="first-moment bound at w^2")
    s.add_argument("--q", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--w2", type=int)

    s = sub.add_parser("build-lattice", parents=[common], help="Construction A basis and density")
    s.add_argument("--q", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--a", type=_int_list)
    s.add_argument("--hnf", action="store_true")
    s.add_argument("--gram", action="store_true")

    s = sub.add_parser("orbit-census", parents=[common], help="orbit lengths inside a ball")
    s.add_argument("--q", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--w2", type=int)

    s = sub.add_parser("verify-lemmas", parents=[common], help="run the invariant suites")
    s.add_argument("--q", type=int)
    s.add_argument("--p", type=int)
    return ap


_CONVERTERS = {"q": int, "p": int, "n": int, "samples": int, "w2": int, "d2": int, "seed": int,
               "budget": int, "workers": int, "c": float, "a": _int_list}
_FLAGS = {"relax", "hnf", "gram", "full", "verbose"}


def resolve_args(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset options from --config, then from defaults. Command-line values win."""
    cfg = parse_config(args.config) if args.config else {}
    for key, raw in cfg.items():
        if not hasattr(args, key):
            continue
        current = getattr(args, key)
        if key in _FLAGS:
            if not current:
                setattr(args, key, raw.lower() in ("1", "true", "yes", "on"))
        elif current is None:
            setattr(args, key, _CONVERTERS.get(key, str)(raw))
    for key, val in GLOBAL_DEFAULTS.items():
        if getattr(args, key, None) is None:
            setattr(args, key, val)
    return args


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise SystemExit(f"circulattice {args.command}: missing --{', --'.join(missing)}")


def _emit(doc: dict, out) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run(args: argparse.Namespace) -> tuple[dict, int]:
    cmd = args.command
    if cmd == "search":
        _need(args, "q")
        cfg = harness.SearchConfig(
            q=args.q, p=args.p, mode=args.mode or "exhaustive", samples=args.samples or 1000,
            w_sq=args.w2, c=args.c if args.c is not None else counting.C_THEOREM,
            seed=args.seed, budget=args.budget, workers=args.workers)
        result = harness.search(cfg)
        if args.csv:
            Path(args.csv).write_text(harness.histogram_csv(result))
        return result.to_json(), EXIT_BUDGET if result.partial else EXIT_OK

    if cmd == "select-prime":
        _need(args, "q")
        if (args.method or "direct") == "linnik":
            sel = primes.select_p_linnik(args.q)
        else:
            sel = primes.select_p_direct(args.q, relax=args.relax)
        return sel.to_json(), EXIT_OK

    if cmd == "min-norm":
        _need(args, "q", "p", "a")
        code = DoubleCirculantCode(Params(args.q, args.p), args.a)
        return min_norm(code, args.budget, reduce=not args.full).to_json(), EXIT_OK

    if cmd == "count-ball":
        _need(args, "n", "p", "d2")
        return counting.ball_count_report(args.n, args.p, args.d2).to_json(), EXIT_OK

    if cmd == "moment-bound":
        _need(args, "q", "p", "w2")
        params = Params(args.q, args.p)
        mb = counting.moment_bound(params, args.w2)
        doc = mb.to_json()
        doc["ratios"] = mb.ratios(params)
        doc["n1_disc_bound"] = counting.type1_disc_bound(params, args.w2)
        return doc, EXIT_OK

    if cmd == "build-lattice":
        _need(args, "q", "p", "a")
        code = DoubleCirculantCode(Params(args.q, args.p), args.a)
        lat = lattice.construction_a(code, min_norm(code, args.budget).d2)
        doc = {"basis": [list(r) for r in lat.basis], "d2": str(lat.d_sq)}
        doc.update(lattice.density(lat).to_json())
        if args.hnf:
            doc["hnf"] = lat.hnf()
        if args.gram:
            doc["gram"] = lat.gram()
        return doc, EXIT_OK

    if cmd == "orbit-census":
        _need(args, "q", "p", "w2")
        census = group.orbit_census(Params(args.q, args.p), args.w2, args.budget)
        return {"q": args.q, "p": str(args.p), "w2": str(args.w2),
                "census": {str(k): str(v) for k, v in census.items()}}, EXIT_OK

    if cmd == "verify-lemmas":
        _need(args, "q", "p")
        report = harness.verify_lemmas(Params(args.q, args.p), args.budget, args.seed)
        return {"q": args.q, "p": str(args.p), "suites": report}, (
            EXIT_FAIL if harness.report_failed(report) else EXIT_OK)

    raise SystemExit(f"unknown command {cmd}")  # pragma: no cover


def main(argv=None) -> int:
    args = resolve_args(build_parser().parse_args(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        doc, code = run(args)
    except BudgetExceeded as exc:
        partial = exc.partial
        doc = {"error": "BudgetExceeded", "needed": str(exc.needed), "budget": str(exc.budget),
               "partial": None if partial is None else [str(int(v)) for v in partial]}
        code = EXIT_BUDGET
    except CirculatticeError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.out)
        return EXIT_FAIL
    _emit(doc, args.out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
