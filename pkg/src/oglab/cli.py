"""Command line entry point: ``oglab <subcommand> ...``.

Every subcommand prints one JSON report per line (``ring`` without ``--json``
prints a short table instead).  Exit status is 0 iff every report passes,
1 on a failed check, 3 when a ring fails the rank gate, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import cache, motiva, ogcalc, quadric, weylcomb
from .report import FAIL, PASS, REFUSED, Report, _ms

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3


def _ring(args):
    return cache.load_or_build(args.d, args.m, args.cache_dir, not args.no_cache)


def cmd_ring(args) -> list[Report]:
    t0 = time.perf_counter()
    og, _, hit = _ring(args)
    params = {"d": args.d, "m": args.m, "topdeg": og.topdeg, "ranks": og.ranks,
              "expected": og.expected, "total": sum(og.ranks),
              "relations": len(og.ring.relations),
              "generators": [g.name for g in og.ring.generators]}
    if og.complete:
        rep = Report("ring", params, PASS)
    else:
        rep = Report("ring", params, REFUSED, [{"rank_deficit": og.deficit()}])
    rep.elapsed_ms = _ms(t0)
    rep.cache = hit
    if not args.json:
        print(f"OG({args.m + 1},{2 * args.d + 2})  dim {og.topdeg}  "
              f"{'COMPLETE' if og.complete else 'INCOMPLETE'}  cache={'hit' if hit else 'miss'}")
        print("generators: " + " ".join(params["generators"]))
        for c, (r, e) in enumerate(zip(og.ranks, og.expected)):
            print(f"  codim {c:3d}: rank {r:4d}  cells {e:4d}")
        print(f"total {sum(og.ranks)}")
        return [rep], False
    return [rep], True


def cmd_verify(args) -> list[Report]:
    which = args.claim
    if which == "gras":
        og, action, hit = _ring(args)
        rep = ogcalc.verify_gras(args.d, args.m, og, action) if og.complete else \
            Report.refused("gras", {"d": args.d, "m": args.m}, og.deficit(), time.perf_counter())
        rep.cache = hit
        return [rep]
    if which == "example":
        args.d, args.m = 5, 1
        og, action, hit = _ring(args)
        rep = ogcalc.verify_example(og, action)
        rep.cache = hit
        return [rep]
    if which == "maksim":
        return [motiva.maksim_sweep(args.r_max, args.v_max)]
    if which == "poincare":
        return [motiva.verify_poincare_identity(args.r, args.v)]
    if which == "counts":
        return [motiva.verify_counts(args.r, args.v)]
    if which == "corsim":
        import numpy as np

        rng = np.random.default_rng(args.seed)
        bpi = sorted(rng.choice(args.n, size=args.bpi, replace=False).tolist())
        return [motiva.corsim_check(args.n, bpi, args.seed, args.trials)]
    raise AssertionError(which)


def cmd_steenrod(args) -> list[Report]:
    t0 = time.perf_counter()
    og, action, hit = _ring(args)
    params = {"d": args.d, "m": args.m, "apply": args.apply, "i": args.i}
    if action is None:
        rep = Report.refused("steenrod", params, og.deficit(), t0)
    else:
        e = og.parse(args.apply)
        val = action.apply(e, args.i)
        c = og.ring.homogeneous_codim(e)
        params.update(codim=c, value=og.ring.format(val),
                      degree=og.og_degree(val) if c is not None and c + args.i == og.topdeg
                      else None)
        rep = Report("steenrod", params, PASS)
        rep.elapsed_ms = _ms(t0)
    rep.cache = hit
    return [rep]


SELFTEST_RINGS = [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (4, 1)]


def selftest_reports() -> list[Report]:
    reports = []

    t0 = time.perf_counter()
    bad = [w for d in range(1, 7) for w in quadric.verify_axioms(d)]
    reports.append(Report.from_witnesses("selftest.quadric", {"d": [1, 6]}, bad, t0))

    t0 = time.perf_counter()
    bad = []
    if weylcomb.coset_poincare_bruteforce(4, set())(1) != weylcomb.weyl_d_order(4):
        bad.append({"order_D4": weylcomb.coset_poincare_bruteforce(4, set())(1)})
    for n in range(2, 6):
        for k in range(1, n + 1):
            brute = weylcomb.coset_poincare_bruteforce(n, weylcomb.og_parabolic(k, n))
            if k == n:
                brute = brute * 2
            if brute != weylcomb.og_poincare(k, 2 * n):
                bad.append({"n": n, "k": k})
    reports.append(Report.from_witnesses("selftest.weyl", {"n": [2, 5]}, bad, t0))

    t0 = time.perf_counter()
    bad = []
    for d, m in SELFTEST_RINGS:
        og = ogcalc.build_og_ring(d, m)
        if not og.complete:
            bad.append({"d": d, "m": m, "rank_deficit": og.deficit()})
            continue
        fc = ogcalc.FlagCalculus(d, m, og.ring)
        for i in range(1, d - m + 1):
            if not og.ring.is_zero(fc.push_xi(fc.xi_power(m + i)) + og.gen(f"w{i}")):
                bad.append({"d": d, "m": m, "segre": i})
        if fc.pull_total(fc.quadric.h) != fc.xi_power(1):
            bad.append({"d": d, "m": m, "pull_h": False})
        # the square rule for z is an input; the pushforward formula must reproduce it
        action = ogcalc.compute_steenrod_action(og)
        for g in og.ring.generators:
            x = og.gen(g.name)
            if not og.ring.is_zero(action.apply(x, g.codim) + og.ring.mul(x, x)):
                bad.append({"d": d, "m": m, "square": g.name})
    reports.append(Report.from_witnesses("selftest.conventions",
                                         {"rings": [list(p) for p in SELFTEST_RINGS]}, bad, t0))
    return reports


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oglab", description=__doc__.splitlines()[0])
    p.add_argument("--cache-dir", default=None,
                   help=f"cache directory (default: ${cache.ENV_VAR} or the user cache dir)")
    p.add_argument("--stable", action="store_true",
                   help="zero elapsed_ms and drop the cache flag so output is byte-deterministic")
    sub = p.add_subparsers(dest="cmd", required=True)

    def dm(sp):
        sp.add_argument("--d", type=int, required=True)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--no-cache", action="store_true")

    sp = sub.add_parser("ring", help="derive and rank-check a presentation")
    dm(sp)
    sp.add_argument("--json", action="store_true")

    vp = sub.add_parser("verify", help="run one verifier")
    vsub = vp.add_subparsers(dest="claim", required=True)
    dm(vsub.add_parser("gras"))
    ex = vsub.add_parser("example")
    ex.add_argument("--no-cache", action="store_true")
    mk = vsub.add_parser("maksim")
    mk.add_argument("--r-max", type=int, required=True)
    mk.add_argument("--v-max", type=int, required=True)
    for name in ("poincare", "counts"):
        sp2 = vsub.add_parser(name)
        sp2.add_argument("--r", type=int, required=True)
        sp2.add_argument("--v", type=int, required=True)
    cs = vsub.add_parser("corsim")
    cs.add_argument("--n", type=int, required=True)
    cs.add_argument("--bpi", type=int, required=True)
    cs.add_argument("--trials", type=int, default=1000)
    cs.add_argument("--seed", type=int, default=0)

    st = sub.add_parser("steenrod", help="apply S^i to a product of generators")
    dm(st)
    st.add_argument("--apply", required=True, help="e.g. z4*z5")
    st.add_argument("--i", type=int, required=True)

    sub.add_parser("selftest", help="quadric tables, Weyl oracles, convention checks")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    pretty_only = False
    try:
        if args.cmd == "ring":
            reports, as_json = cmd_ring(args)
            pretty_only = not as_json
        elif args.cmd == "verify":
            reports = cmd_verify(args)
        elif args.cmd == "steenrod":
            if args.i < 0:
                parser.error("--i must be >= 0")
            reports = cmd_steenrod(args)
        else:
            reports = selftest_reports()
    except (ValueError, KeyError) as exc:
        parser.error(str(exc))
    if not pretty_only:
        for rep in reports:
            print(rep.to_json(stable=args.stable))
    statuses = {rep.status for rep in reports}
    if REFUSED in statuses:
        return EXIT_INCOMPLETE
    if FAIL in statuses:
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
