"""Command-line front end: ``qid list | verify | eval | expand``.

Exit status is 0 when everything passes, 1 on any Fail or Skipped result
and 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from itertools import product

from . import families
from .errors import QidError, UnknownIdentity
from .primitives import Alpha
from .verify import engine
from .verify.registry import POINTS, SERIES, all_ids, get
from .verify.report import FAIL, PASS, RunDocument

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


# -- argument parsing helpers ------------------------------------------------------------
def parse_rs(text: str) -> tuple[tuple[int, int], ...]:
    """``MIN..MAX`` (both r and s range over it) or a single pair ``r,s``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (int(v) for v in text.split("..", 1))
            if lo > hi:
                raise UsageError(f"empty range {text!r}")
            vals = range(lo, hi + 1)
            return tuple(product(vals, vals))
        r, s = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--rs expects MIN..MAX or r,s, got {text!r}") from None
    return ((r, s),)


def parse_alpha(text: str) -> str:
    try:
        return str(Alpha.parse(text))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_params(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _jobs_default() -> int:
    return engine.default_jobs()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qid", description="Exact verification of q-series identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list registered identities")

    def common(p, points_default):
        p.add_argument("--id", action="append", dest="ids", metavar="ID", help="identity id (repeatable)")
        p.add_argument("--order", type=int, default=8, help="truncation order N (default 8)")
        p.add_argument("--alpha", action="append", dest="alphas", metavar="MODE", help="int:K, sym or inf (repeatable)")
        p.add_argument("--rs", help="MIN..MAX or r,s")
        p.add_argument("--n-max", type=int, dest="n_max")
        p.add_argument("--param", action="append", metavar="KEY=VALUE", help="explicit parameter (repeatable)")
        p.add_argument("--points", type=int, default=points_default)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--jobs", type=int, default=_jobs_default())
        p.add_argument("--report", metavar="PATH")
        p.add_argument("--format", choices=("human", "machine"), default="human")
        p.add_argument("--timings", action="store_true", help="record elapsed times in reports")
        p.add_argument("--perturb", action="store_true", help="perturb one RHS coefficient (harness self-test)")

    v = sub.add_parser("verify", help="run identity verification")
    v.add_argument("--suite", help="'all' or a comma-separated list of ids")
    v.add_argument("--mode", choices=(SERIES, POINTS), help="restrict to one verification mode")
    common(v, engine.DEFAULT_POINTS)

    e = sub.add_parser("eval", help="verify at seeded random rational points")
    common(e, engine.DEFAULT_POINTS)

    x = sub.add_parser("expand", help="expand a polynomial family")
    x.add_argument("--family", required=True)
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--rs", default="0,0")
    x.add_argument("--alpha", default="sym")
    return parser


# -- commands ------------------------------------------------------------------------------
def cmd_list(out) -> int:
    for identity_id in all_ids():
        desc = get(identity_id)
        modes = "+".join(desc.modes)
        out.write(f"{identity_id:<20} [{modes}] {desc.statement}\n")
    return EXIT_OK


def _selected_ids(args) -> tuple[str, ...] | None:
    ids: list[str] = []
    if getattr(args, "suite", None):
        if args.suite.strip() == "all":
            if args.ids:
                raise UsageError("--suite all cannot be combined with --id")
            return None
        ids.extend(s.strip() for s in args.suite.split(",") if s.strip())
    ids.extend(args.ids or ())
    if not ids:
        raise UsageError("nothing to verify: give --suite or --id")
    for identity_id in ids:
        get(identity_id)  # raises UnknownIdentity
    return tuple(ids)


def _config(args, ids, modes) -> engine.SuiteConfig:
    if args.order < 1:
        raise UsageError("--order must be at least 1")
    if args.points < 1:
        raise UsageError("--points must be at least 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    return engine.SuiteConfig(
        ids=ids,
        order=args.order,
        alphas=tuple(parse_alpha(a) for a in args.alphas) if args.alphas else None,
        rs=parse_rs(args.rs) if args.rs else None,
        n_max=args.n_max,
        seed=args.seed,
        jobs=args.jobs,
        points=args.points,
        modes=modes,
        timings=args.timings,
    )


def _explicit_reports(args, ids, modes, cfg):
    """Reports for ``--param`` runs: one tuple per identity, no grid."""
    explicit = parse_params(args.param)
    reports = []
    for identity_id in ids:
        desc = get(identity_id)
        params = dict(explicit)
        if desc.truncation_param and desc.truncation_param not in params:
            params[desc.truncation_param] = args.order
        for mode in desc.modes:
            if modes is not None and mode not in modes:
                continue
            r = engine.verify(identity_id, params, mode, perturb=args.perturb, points=args.points, seed=args.seed)
            if not args.timings:
                r.elapsed_ms = None
            reports.append(r)
    if not reports:
        raise UsageError("no selected identity supports the requested mode")
    return reports


def _perturbed_suite(cfg):
    reports = []
    for identity_id, params, mode in engine.plan(cfg):
        if isinstance(mode, Exception):
            raise mode
        r = engine.verify(identity_id, params, mode, perturb=True, points=cfg.points, seed=cfg.seed)
        if not cfg.timings:
            r.elapsed_ms = None
        reports.append(r)
    return reports


def _emit(args, doc: RunDocument, out) -> int:
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(doc.dumps())
    if args.format == "machine":
        out.write(doc.dumps())
    else:
        for r in doc.reports:
            out.write(r.summary_line() + "\n")
            if r.status == FAIL:
                m = r.first_mismatch
                out.write(f"    first mismatch in {m.check} at exponents {m.exponents}\n")
                if m.point:
                    out.write(f"    point: {m.point}\n")
                out.write(f"    difference: {m.diff_rendered}\n")
            elif r.status != PASS:
                out.write(f"    reason: {r.reason}\n")
        passed = sum(r.status == PASS for r in doc.reports)
        out.write(f"{passed}/{len(doc.reports)} passed\n")
    ok = doc.reports and all(r.status == PASS for r in doc.reports)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args, out, modes=None) -> int:
    if modes is None and getattr(args, "mode", None):
        modes = (args.mode,)
    ids = _selected_ids(args)
    cfg = _config(args, ids, modes)
    if args.param:
        if ids is None:
            raise UsageError("--param needs explicit --id")
        reports = _explicit_reports(args, ids, modes, cfg)
    elif args.perturb:
        reports = _perturbed_suite(cfg)
    else:
        reports = engine.run_suite(cfg)
    doc = RunDocument(engine.__version__, cfg.seed, cfg.to_dict(), reports)
    return _emit(args, doc, out)


def cmd_eval(args, out) -> int:
    if not args.ids:
        raise UsageError("eval needs --id")
    for identity_id in args.ids:
        if POINTS not in get(identity_id).modes:
            raise UsageError(f"{identity_id} has no point-evaluation mode")
    return cmd_verify(args, out, modes=(POINTS,))


def _family_builders():
    return {
        "cauchy": lambda n, r, s, al: families.cauchy_p(n),
        "ltilde": lambda n, r, s, al: families.ltilde(n, r, s, al),
        "ljia": lambda n, r, s, al: families.l_jia(n, r, s, al),
        "cigler-c": lambda n, r, s, al: families.cigler_c(n, al),
        "cigler-d": lambda n, r, s, al: families.cigler_d(n, al),
        "hahn": lambda n, r, s, al: families.hahn_phi(n),
        "rs": lambda n, r, s, al: families.rs_r(n),
        "F": lambda n, r, s, al: families.f_trivariate(n),
        "rho_e": lambda n, r, s, al: families.rho_e_reduced(n),
        "h": lambda n, r, s, al: families.h_reduced(n),
        "g": lambda n, r, s, al: families.g_reduced(n),
    }


def cmd_expand(args, out) -> int:
    builders = _family_builders()
    if args.family not in builders:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(sorted(builders))}")
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    pairs = parse_rs(args.rs)
    if len(pairs) != 1:
        raise UsageError("expand takes a single r,s pair")
    (r, s), al = pairs[0], Alpha.parse(parse_alpha(args.alpha))
    poly = builders[args.family](args.n, r, s, al)
    out.write(f"{args.family} n={args.n} r={r} s={s} alpha={al}\n")
    out.write(poly.render() + "\n")
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "list":
            return cmd_list(out)
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.command == "eval":
            return cmd_eval(args, out)
        return cmd_expand(args, out)
    except UnknownIdentity as exc:
        sys.stderr.write(f"UnknownIdentity: {exc}\n")
        return EXIT_USAGE
    except (UsageError, QidError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
