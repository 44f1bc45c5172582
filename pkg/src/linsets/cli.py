"""Command-line front end.  Every report is a JSON line on stdout."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import acceptance as acc
from . import criteria as cr
from . import semifield as sf
from .curves import genus_family
from .errors import LinsetError, SizeCapExceeded
from .field import field_for, make_field
from .linset import build, point_from_key
from .qpoly import QPoly, parse_qpoly
from .rng import NAME as RNG_NAME, XorShift64Star

EXIT_VIOLATION = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output


def _flatten(rec: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in rec.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            out[key] = json.dumps(v, sort_keys=True)
        else:
            out[key] = v
    return out


class Emitter:
    def __init__(self, out, as_csv: bool):
        self.out = out
        self.as_csv = as_csv
        self.rows: list[dict] = []

    def emit(self, rec: dict) -> None:
        if self.as_csv:
            self.rows.append(_flatten(rec))
        else:
            self.out.write(json.dumps(rec, sort_keys=True) + "\n")

    def close(self) -> None:
        if not self.as_csv or not self.rows:
            return
        cols = sorted({k for r in self.rows for k in r})
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow(r)
        self.out.write(buf.getvalue())


# ---------------------------------------------------------------------------
# argument helpers


def _ctx(args):
    if args.p is None or args.n is None:
        raise UsageError("--p and --n are required (--m defaults to 1)")
    ctx = make_field(args.p, args.m, args.n, cap=args.max_field)
    if args.modulus is not None:
        want = tuple(int(c) for c in args.modulus.split(","))
        if want != ctx.modulus:
            raise UsageError(f"only the canonical modulus {list(ctx.modulus)} is supported for (p, m, n) = ({args.p}, {args.m}, {args.n})")
    return ctx


def _poly(ctx, text: str) -> QPoly:
    try:
        coeffs = json.loads(text) if text.strip().startswith("[") else [int(c) for c in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse coefficient list {text!r}: use c0,c1,... or a JSON list") from exc
    coeffs = list(coeffs) + [0] * (ctx.n - len(coeffs))
    return parse_qpoly(ctx, coeffs)


def _params(text: str) -> dict:
    try:
        out = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--params is not valid JSON: {exc}") from exc
    if not isinstance(out, dict):
        raise UsageError("--params must be a JSON object")
    return out


def _binomial(ctx, d: dict) -> cr.BinomialParams:
    missing = [k for k in ("alpha", "beta", "k", "f", "h") if k not in d]
    if missing:
        raise UsageError(f"binomial parameters need {missing}")
    f = _poly(ctx, json.dumps(d["f"]))
    return cr.BinomialParams(d["alpha"], d["beta"], d["k"], f, d["h"])


def _club(ctx, d: dict) -> cr.ClubParams:
    return cr.ClubParams(ctx, d.get("r1", 1), d.get("r2", 1), d.get("alpha", 1))


# ---------------------------------------------------------------------------
# subcommands


def cmd_field(args, em: Emitter) -> int:
    ctx = _ctx(args)
    rec = ctx.to_json()
    if args.tables:
        rec["log"] = [ctx.log(x) if x else None for x in range(ctx.size)]
        rec["exp"] = [ctx.exp(i) for i in range(ctx.order)]
    em.emit(rec)
    return 0


def cmd_linset(args, em: Emitter) -> int:
    ctx = _ctx(args)
    ls = build(_poly(ctx, args.f), args.h, args.swapped)
    rec = ls.to_json()
    rec["size"] = len(ls)
    em.emit(rec)
    return 0


def cmd_intersect(args, em: Emitter) -> int:
    ctx = _ctx(args)
    l1 = build(_poly(ctx, args.f1), args.h1, args.swapped1)
    l2 = build(_poly(ctx, args.f2), args.h2, args.swapped2)
    keys = sorted(l1.keys & l2.keys)
    em.emit({"points": [point_from_key(ctx, k).to_json() for k in keys], "size": len(keys)})
    return 0


def _oracle(family: str, p, d: dict) -> dict:
    ctx = p.ctx
    if family.startswith("CLUB"):
        l1 = build(QPoly.trace(ctx, p.r1))
        if family == "CLUB_SIGMA":
            l2 = build(QPoly.trace(ctx, p.r2, p.alpha), 0, True)
            common = l1.keys & l2.keys
            return {"checked": True, "witness": point_from_key(ctx, min(common)).to_json() if common else None, "count": len(common)}
        common = l1.keys & build(QPoly.trace(ctx, p.r2, p.alpha)).keys
        extra = sorted(k for k in common if k != ctx.size)
        return {"checked": True, "witness": point_from_key(ctx, extra[0]).to_json() if extra else None, "count": len(common)}
    if family.startswith("PSEUDOREGULUS"):
        l1 = build(QPoly.monomial(ctx, 1))
        l2 = build(p, d.get("h", 0), bool(d.get("swapped", False)))
    else:
        l1 = build(p.g)
        l2 = build(p.f, p.h, cr.family_swapped(family))
    common = l1.keys & l2.keys
    return {"checked": True, "witness": point_from_key(ctx, min(common)).to_json() if common else None, "count": len(common)}


def _agrees(family: str, v: cr.CriterionVerdict, oracle: dict) -> bool:
    if family in ("CLUB_PRIMO", "CLUB_PRIMO_LITERAL", "CLUB_SECONDO"):
        met = oracle["count"] >= 2
    else:
        met = oracle["count"] >= 1
    if v.kind is cr.VerdictKind.DECIDED:
        return v.nonempty == met
    if v.kind is cr.VerdictKind.GUARANTEED_NONEMPTY:
        return met
    return True


def cmd_criteria(args, em: Emitter) -> int:
    ctx = _ctx(args)
    d = _params(args.params)
    fam = args.family
    if fam in cr.IFF_FAMILIES:
        p = _binomial(ctx, d)
        v = cr.iff_criterion(p, fam)
    elif fam in cr.SUFFICIENT_FAMILIES:
        p = _binomial(ctx, d)
        v = cr.sufficient_bound(p, fam)
    elif fam == "BEST":
        p = _binomial(ctx, d)
        v = cr.best_verdict(p, bool(d.get("swapped", False)))
        fam = v.criterion_id if v.criterion_id in cr.IFF_FAMILIES + cr.SUFFICIENT_FAMILIES else ("SIGMA_MON" if d.get("swapped") else "MON_GENERAL")
    elif fam in ("CLUB_PRIMO", "CLUB_PRIMO_LITERAL"):
        p = _club(ctx, d)
        v = cr.club_primo(p, literal=fam.endswith("LITERAL"))
    elif fam == "CLUB_SECONDO":
        p = _club(ctx, d)
        v = cr.club_secondo(p, d["a"], d["b"])
    elif fam == "CLUB_SIGMA":
        p = _club(ctx, d)
        v = cr.club_sigma_bound(p)
    elif fam == "CLUB_SAME_FIELD":
        p = _club(ctx, d)
        v = cr.club_same_field(p)
        fam = "CLUB_SIGMA"
    elif fam == "PSEUDOREGULUS":
        p = _poly(ctx, json.dumps(d["f"]))
        v = cr.pseudoregulus_conditions(p, d.get("h", 0), bool(d.get("swapped", False)))
    else:
        raise UsageError(f"unknown family {args.family!r}")
    rec = {"verdict": v.to_json(), "hypotheses": v.to_json()["hypotheses"]}
    code = 0
    if args.no_oracle:
        rec["oracle"] = {"checked": False, "agrees": None, "witness": None}
    else:
        o = _oracle(fam, p, d)
        o["agrees"] = _agrees(fam, v, o)
        rec["oracle"] = o
        code = 0 if o["agrees"] else EXIT_VIOLATION
    em.emit(rec)
    return code


def cmd_genus(args, em: Emitter) -> int:
    ctx = _ctx(args)
    d = _params(args.params)
    params = _club(ctx, d) if args.family == "CLUBS_SIGMA" else _binomial(ctx, d)
    rep = genus_family(args.family, params)
    em.emit(rep.to_json())
    return 0


def cmd_semifield(args, em: Emitter) -> int:
    cap = args.max_pairs
    if args.action == "open-cases":
        if args.q is None:
            raise UsageError("open-cases needs --q")
        rows = sf.resolve_open_cases(args.q, cap, args.archive, args.max_n)
        for row in rows:
            em.emit(row)
        return 0
    if args.q is None or args.n is None:
        raise UsageError(f"semifield {args.action} needs --q and --n")
    ctx = field_for(args.q, args.n)
    if args.action == "scan":
        if args.L1 is not None:
            pair = sf.BelPair(_poly(ctx, args.L1), _poly(ctx, args.L2 or "1"))
        else:
            pair = sf.trace_pair(ctx, args.r1, args.r, args.alpha)
        rep = sf.is_presemifield(pair, cap)
        rec = {**pair.to_json(), **rep.to_json(), "field": ctx.to_json()}
        em.emit(rec)
        return 0 if rep.rank_oracle_agrees is not False else EXIT_VIOLATION
    if args.action == "cor43":
        pair = sf.BelPair(_poly(ctx, args.L1), _poly(ctx, args.L2))
        rep = sf.check_cor43(pair, cap)
        em.emit({**pair.to_json(), **rep.to_json(), "field": ctx.to_json()})
        return 0 if rep.extra["cor43_consistent"] else EXIT_VIOLATION
    raise UsageError(f"unknown semifield action {args.action!r}")


def cmd_sweep(args, em: Emitter) -> int:
    """Random sweep of one family against the intersection oracle."""
    fam = args.family
    if fam not in cr.IFF_FAMILIES + cr.SUFFICIENT_FAMILIES:
        raise UsageError(f"sweep supports {list(cr.IFF_FAMILIES + cr.SUFFICIENT_FAMILIES)}")
    specs = [s for s in acc.fields_upto(args.max_field) if s[2] >= 2]
    if args.p is not None:
        specs = [s for s in specs if s[0] == args.p and (args.n is None or s[2] == args.n)]
    if not specs:
        raise UsageError("no field satisfies the sweep filters")
    rng = XorShift64Star(args.seed)
    res = acc.CriterionResult("sweep", fam, True)
    done = 0
    while done < args.count:
        ctx = make_field(*rng.choice(specs))
        p = acc.sample_iff(rng, ctx, fam) if fam in cr.IFF_FAMILIES else acc.sample_sufficient(rng, ctx, fam)
        if p is None:
            continue
        done += 1
        truth = acc.meets_shape(p.g, p.f, p.h, cr.family_swapped(fam))
        v = cr.iff_criterion(p, fam) if fam in cr.IFF_FAMILIES else cr.sufficient_bound(p, fam)
        acc._bump(res.stats, "checked")
        if v.claims_nonempty:
            acc._bump(res.stats, "nonempty")
        bad = (v.kind is cr.VerdictKind.DECIDED and v.nonempty != truth) or (v.claims_nonempty and not truth)
        if bad:
            res.add_violation({"field": ctx.to_json(), "params": p.to_json()})
    em.emit({"rng": RNG_NAME, "seed": args.seed, "family": fam, "max_field": args.max_field})
    em.emit(res.to_json())
    return 0 if res.passed else EXIT_VIOLATION


def _run_one(job):
    cid, seed, max_field, archive = job
    return acc.run_criterion(cid, seed, max_field, archive).to_json()


def cmd_verify_all(args, em: Emitter) -> int:
    ids = list(acc.CRITERIA) if not args.only else args.only.split(",")
    unknown = [c for c in ids if c not in acc.CRITERIA]
    if unknown:
        raise UsageError(f"unknown criteria {unknown}; choose from {list(acc.CRITERIA)}")
    jobs = [(cid, args.seed, args.max_field, args.archive) for cid in ids]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    em.emit({"rng": RNG_NAME, "seed": args.seed, "max_field": args.max_field, "criteria": ids})
    for r in results:
        em.emit(r)
    failed = [r["criterion"] for r in results if not r["passed"]]
    em.emit({"summary": {"passed": len(results) - len(failed), "failed": failed, "total": len(results)}})
    return EXIT_VIOLATION if failed else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int)
    common.add_argument("--m", type=int, default=1)
    common.add_argument("--n", type=int)
    common.add_argument("--modulus", help="comma-separated GF(p) coefficients, low degree first")
    common.add_argument("--seed", type=int, default=acc.DEFAULT_SEED)
    common.add_argument("--max-field", type=int, default=1024)
    common.add_argument("--max-pairs", type=int, default=None)
    common.add_argument("--json", action="store_true", help="JSON lines (the default)")
    common.add_argument("--csv", action="store_true", help="flatten reports to CSV")
    common.add_argument("--jobs", type=int, default=1)

    ap = argparse.ArgumentParser(prog="linsets", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("field", parents=[common], help="field parameters and modulus")
    s.add_argument("--tables", action="store_true")
    s.set_defaults(func=cmd_field)

    s = sub.add_parser("linset", parents=[common], help="points and weights of L_f")
    s.add_argument("--f", required=True, help="coefficients a0,a1,... of f")
    s.add_argument("--h", type=int, default=0)
    s.add_argument("--swapped", action="store_true")
    s.set_defaults(func=cmd_linset)

    s = sub.add_parser("intersect", parents=[common], help="common points of two linear sets")
    for i in ("1", "2"):
        s.add_argument(f"--f{i}", required=True)
        s.add_argument(f"--h{i}", type=int, default=0)
        s.add_argument(f"--swapped{i}", action="store_true")
    s.set_defaults(func=cmd_intersect)

    s = sub.add_parser("criteria", parents=[common], help="evaluate one criterion")
    s.add_argument("--family", required=True)
    s.add_argument("--params", required=True, help="JSON object")
    s.add_argument("--no-oracle", action="store_true")
    s.set_defaults(func=cmd_criteria)

    s = sub.add_parser("genus", parents=[common], help="genus report for a curve family")
    s.add_argument("--family", required=True)
    s.add_argument("--params", required=True)
    s.set_defaults(func=cmd_genus)

    s = sub.add_parser("semifield", parents=[common], help="BEL-rank two presemifield checks")
    s.add_argument("action", choices=["scan", "open-cases", "cor43"])
    s.add_argument("--q", type=int)
    s.add_argument("--r", type=int, default=1, help="r2 of the trace pair")
    s.add_argument("--r1", type=int, default=1)
    s.add_argument("--alpha", type=int, default=1)
    s.add_argument("--L1")
    s.add_argument("--L2")
    s.add_argument("--archive", help="JSON-lines results file")
    s.add_argument("--max-n", type=int, default=13)
    s.set_defaults(func=cmd_semifield)

    s = sub.add_parser("sweep", parents=[common], help="seeded random sweep of one family")
    s.add_argument("--family", required=True)
    s.add_argument("--count", type=int, default=1000)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("verify-all", parents=[common], help="run the acceptance sweeps")
    s.add_argument("--only", help="comma-separated criterion ids")
    s.add_argument("--archive", help="archive for open-case results")
    s.set_defaults(func=cmd_verify_all)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    em = Emitter(sys.stdout, args.csv)
    try:
        code = args.func(args, em)
    except UsageError as exc:
        ap.error(str(exc))
    except SizeCapExceeded as exc:
        sys.stderr.write(json.dumps({"error": "SizeCapExceeded", "message": str(exc), "cost": exc.cost, "cap": exc.cap}) + "\n")
        return EXIT_USAGE
    except LinsetError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_USAGE
    em.close()
    return code


if __name__ == "__main__":
    sys.exit(main())
