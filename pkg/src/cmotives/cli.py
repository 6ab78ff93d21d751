"""Command-line front end: `cmotives <command> ...`.

Every command prints canonical JSON (sorted keys) on stdout.
Exit codes: 0 success, 1 domain error (JSON on stderr), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .algebra.printing import to_str
from .catalog import Catalog, dump
from .errors import CMotiveError, TowerMismatch
from .hondatate import honda_tate_class
from .isogeny import endomorphism_report, hom_space, is_quasi_isogenous
from .motive import char_data, load_motive, validate
from .realization import DEFAULT_PRECISION, crystalline, tate_module, zeta


class UsageError(Exception):
    pass


def _place(M, text):
    return M.rings.place(text)


def _bounds(text):
    if text is None:
        return None
    try:
        D, K = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--bounds expects D,K with integers, got {text!r}")
    return D, K


def cmd_validate(args):
    return validate(load_motive(args.file))


def cmd_charpoly(args):
    cd = char_data(load_motive(args.file))
    return {"chi": to_str(cd.chi), "mu": to_str(cd.mu)}


def cmd_endo(args):
    return endomorphism_report(load_motive(args.file))


def cmd_zeta(args):
    return zeta(load_motive(args.file), drop_h0=args.drop_h0).to_json()


def cmd_tate(args):
    M = load_motive(args.file)
    return tate_module(M, _place(M, args.place), args.precision).to_json(M.tower)


def cmd_crystal(args):
    M = load_motive(args.file)
    return crystalline(M, _place(M, args.place), args.precision).to_json()


def cmd_hom(args):
    M, N = load_motive(args.file1), load_motive(args.file2)
    out = hom_space(M, N, _bounds(args.bounds)).to_json()
    out["seed"] = args.seed
    return out


def cmd_isog(args):
    M, N = load_motive(args.file1), load_motive(args.file2)
    return is_quasi_isogenous(M, N, seed=args.seed).to_json()


def cmd_class(args):
    M = load_motive(args.file)
    from .motive import motive_hash
    return honda_tate_class(M, witness=motive_hash(M)).to_json()


def cmd_catalog(args):
    cat = Catalog(args.catalog)
    if args.action == "add":
        if not args.file:
            raise UsageError("catalog add needs a motive file")
        entry = cat.add(load_motive(args.file))
        return {"id": entry["id"], "class": entry["class"], "invariants": entry["invariants"]}
    if args.action == "buckets":
        return cat.buckets()
    return cat.check()


def cmd_selftest(args):
    from .acceptance import run_all
    results = run_all(quick=args.quick, out=lambda line: print(line, file=sys.stderr, flush=True))
    return {
        "quick": args.quick,
        "passed": sum(r.passed for r in results),
        "total": len(results),
        "results": [{"criterion": r.number, "name": r.name, "passed": r.passed,
                     "seconds": round(r.seconds, 1), "detail": r.detail} for r in results],
    }


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cmotives", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"cmotives {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn, help_ in [("validate", cmd_validate, "validation report"),
                            ("charpoly", cmd_charpoly, "chi and mu of Frobenius"),
                            ("endo", cmd_endo, "endomorphism report"),
                            ("class", cmd_class, "Honda-Tate class record")]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.set_defaults(func=fn)

    p = sub.add_parser("zeta", help="zeta function as numerator/denominator")
    p.add_argument("file")
    p.add_argument("--drop-h0", action="store_true", help="omit the degree-0 factor")
    p.set_defaults(func=cmd_zeta)

    for name, fn in [("tate", cmd_tate), ("crystal", cmd_crystal)]:
        p = sub.add_parser(name, help=f"{name} realization at a place")
        p.add_argument("file")
        p.add_argument("--place", required=True)
        p.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
        p.set_defaults(func=fn)

    p = sub.add_parser("hom", help="Hom space between two motives")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--bounds", help="D,K degree bounds")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("isog", help="decide quasi-isogeny")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_isog)

    p = sub.add_parser("catalog", help="maintain the isogeny-class catalog")
    p.add_argument("action", choices=["add", "buckets", "check"])
    p.add_argument("file", nargs="?")
    p.add_argument("--catalog", help="catalog root (overrides $CMOTIVES_CATALOG)")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--quick", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return ap


def _error(kind: str, exc: BaseException) -> str:
    doc = exc.to_json() if isinstance(exc, CMotiveError) else {"error": type(exc).__name__,
                                                                "message": str(exc)}
    doc["kind"] = kind
    return json.dumps(doc, sort_keys=True)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        result = args.func(args)
    except (UsageError, TowerMismatch, FileNotFoundError, IsADirectoryError) as exc:
        print(_error("usage", exc), file=sys.stderr)
        return 2
    except (CMotiveError, ArithmeticError) as exc:
        print(_error("domain", exc), file=sys.stderr)
        return 1
    sys.stdout.write(dump(result))
    if args.command == "selftest":
        return 0 if result["passed"] == result["total"] else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
