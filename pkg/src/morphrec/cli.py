"""Command-line front end.

Usage: ``morphrec <command> -m <spec|@file> [options]``. Every command
prints a human-readable report, or a JSON document with ``--json``.
"""
from __future__ import annotations

import argparse
import json
import sys

from .core import (
    MorphismError,
    SequenceGen,
    expand,
    morphism_profile,
    parse_morphism,
    power,
    seed_generators,
)
from .language import (
    HorizonError,
    build_language,
    complexity_profile,
    find_periodic_points,
    special_factors,
)
from .recognizability import (
    DEFAULT_DEPTH,
    DEFAULT_MAX_SCOPE,
    NotApplicable,
    cached_language,
    exceptional_points,
    left_special_sequences,
    one_sided_verdict,
    tower_partition,
    two_sided_verdict,
    weak_one_sided_check,
    witness_search,
)
from .spectra import eigen_check

GALLERY = {
    "fibonacci": "a:ab,b:a",
    "anti-fibonacci": "a:ba,b:a",
    "period-doubling": "a:ab,b:aa",
    "period-doubling-conjugate": "a:ba,b:aa",
    "thue-morse": "a:ab,b:ba",
    "erasing": "a:ab,b:ac,c:",
    "doubling": "a:aa",
    "durand": "a:abac,b:ab,c:c",
}


class UsageError(Exception):
    pass


def load_morphism(spec):
    if spec is None:
        raise UsageError("a morphism is required (-m)")
    if spec.startswith("@"):
        try:
            with open(spec[1:], encoding="utf-8") as fh:
                spec = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {spec[1:]}: {exc}") from exc
    try:
        return parse_morphism(spec)
    except MorphismError as exc:
        raise UsageError(str(exc)) from exc


def _reference(m, k_max):
    for g in seed_generators(m, k_max):
        if g.kind == "fixed_point":
            return g
    for ls in left_special_sequences(m, k_max=k_max):
        return ls.sequence
    raise NotApplicable("no infinite fixed point of a power of the morphism")


# -- commands -------------------------------------------------------------

def cmd_analyze(m, args):
    n = args.n
    L = build_language(m, n + 1)
    prof = complexity_profile(L, n)
    periodic = find_periodic_points(m, args.max_period, L=build_language(m, max(2 * args.max_period, n + 1)))
    return {
        "morphism": str(m),
        "profile": morphism_profile(m).to_json(),
        "complexity": {"p": prof.p[1:n + 1], "s": prof.s[1:n + 1], "extension_sums_agree": prof.extension_sums_agree(),
                       "left_special": prof.left_special_counts[1:n + 1]},
        "periodic_points": periodic,
        "horizon": L.horizon,
        "saturated_up_to": L.saturated_up_to,
    }


def cmd_rec(m, args):
    two = two_sided_verdict(m, N_max=args.max_scope)
    if args.mode == "two-sided":
        v = two
    else:
        v = one_sided_verdict(m, N_max=args.max_scope, depth=args.depth, k_max=args.seed_depth,
                              two_sided=two if args.max_scope >= 8 else None)
    return {"morphism": str(m), "verdict": v.to_json(), "depth": args.depth}


def cmd_witness(m, args):
    wits = witness_search(m, u_len_max=args.max_u, depth=args.depth, k_max=args.k_max)
    return {"morphism": str(m), "depth": args.depth, "witnesses": [w.to_json() for w in wits]}


def cmd_language(m, args):
    L = build_language(m, args.n)
    return {"morphism": str(m), "horizon": L.horizon, "saturated_up_to": L.saturated_up_to,
            "words": {str(n): L.sorted_words(n) for n in range(1, args.n + 1)}}


def cmd_special(m, args):
    L = build_language(m, args.n + 1)
    return {"morphism": str(m), "side": args.side, "horizon": L.horizon,
            "special": {str(n): special_factors(L, n, args.side) for n in range(args.n + 1)},
            "sequences": [ls.to_json() for ls in left_special_sequences(m, k_max=args.seed_depth)]
            if args.side == "left" else []}


def cmd_periodic(m, args):
    H = max(2 * args.max_period, 8)
    return {"morphism": str(m), "horizon": H,
            "periodic_points": find_periodic_points(m, args.max_period, L=build_language(m, H))}


def cmd_tower(m, args):
    N = args.scope
    if N is None:
        two = two_sided_verdict(m)
        if not two.recognizable:
            raise NotApplicable("no two-sided scope found; pass --scope")
        N = two.scope
    L = cached_language(m, max(32, 2 * N + 2))
    table = tower_partition(m, L, N)
    return {"morphism": str(m), "scope": N,
            "windows": {f"{a},{k}": ws for (a, k), ws in table.windows.items()}}


def cmd_eigen(m, args):
    x = _reference(m, args.seed_depth)
    rep = eigen_check(m, args.j, x, args.len)
    return {"morphism": str(m), "x": x.describe(), "report": rep.to_json()}


def gallery_checks(depth=DEFAULT_DEPTH):
    """Run the worked examples; returns a list of ``(name, passed, detail)``."""
    P = {k: parse_morphism(v) for k, v in GALLERY.items()}
    out = []

    def check(name, fn):
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, reported
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))

    fib = P["fibonacci"]

    def fib_complexity():
        p = complexity_profile(cached_language(fib, 32), 30).p
        return p[1:31] == list(range(2, 32)), f"p_1..p_30 = {p[1]}..{p[30]}"

    check("fibonacci: p_n = n+1", fib_complexity)
    check("fibonacci: two-sided recognizable",
          lambda: (two_sided_verdict(fib).recognizable, two_sided_verdict(fib).scope))
    check("fibonacci: one-sided recognizable", lambda: _status(one_sided_verdict(fib), "recognizable"))
    check("fibonacci: unique left-special sequence",
          lambda: _ls(fib, [SequenceGen.fixed_point(fib, "a")]))

    pd = P["period-doubling"]
    check("period-doubling: one-sided recognizable", lambda: _status(one_sided_verdict(pd), "recognizable"))

    pdc = P["period-doubling-conjugate"]
    check("conjugate: two-sided recognizable", lambda: _status(two_sided_verdict(pdc), "recognizable"))
    check("conjugate: witness (ay,1),(by,1) at y = a·σ(y)",
          lambda: _has_witness(pdc, ("a", "b", "a", 1, 1), SequenceGen.self_similar(pdc, "a"), depth))
    check("conjugate: weakly one-sided recognizable", lambda: _weak(pdc))

    anti = P["anti-fibonacci"]
    t = SequenceGen.fixed_point(fib, "a")
    check("anti-fibonacci: witness (bt,0),(at,1)",
          lambda: _has_witness(anti, ("b", "a", "a", 0, 1), t, depth))
    check("anti-fibonacci squared: at least 2 exceptional shifts",
          lambda: _count_exceptional(power(anti, 2), 2, depth))

    er = P["erasing"]
    check("erasing: erasable letters = {c}",
          lambda: (morphism_profile(er).erasable_letters == {"c"}, sorted(morphism_profile(er).erasable_letters)))
    check("erasing: two-sided recognizable", lambda: _status(two_sided_verdict(er), "recognizable"))

    dbl = P["doubling"]
    check("a:aa: periodic witness at a^∞", lambda: _status(two_sided_verdict(dbl), "not_recognizable"))

    dur = P["durand"]
    check("durand: periodic points = {c}",
          lambda: (find_periodic_points(dur, 6, L=cached_language(dur, 32)) == ["c"],
                   find_periodic_points(dur, 6, L=cached_language(dur, 32))))
    check("durand: σ^ω(a) is left-special", lambda: _ls_contains(dur, SequenceGen.fixed_point(dur, "a")))
    check("durand: σ^ω(c^n a) left-special for n = 2, 3, 4",
          lambda: _ls_contains(dur, *[SequenceGen.fixed_point(dur, "a").with_prefix("c" * n) for n in (2, 3, 4)]))
    check("durand: one-sided not recognizable",
          lambda: _status(one_sided_verdict(dur, depth=depth), "not_recognizable"))

    tm = P["thue-morse"]
    check("thue-morse: eigenvalue -1",
          lambda: (eigen_check(tm, 1, SequenceGen.fixed_point(tm, "a"), 4096).passed, "j=1, h=2"))
    return out


def _status(v, want):
    return v.status == want, v.status


def _ls(m, expected):
    got = left_special_sequences(m)
    want = {expand(g, 256) for g in expected}
    have = {expand(ls.sequence, 256) for ls in got}
    return have == want, [ls.sequence.describe() for ls in got]


def _ls_contains(m, *expected):
    have = {expand(ls.sequence, 256) for ls in left_special_sequences(m)}
    missing = [g.describe() for g in expected if expand(g, 256) not in have]
    return not missing, f"missing {missing}" if missing else "all present"


def _has_witness(m, shape, x, depth):
    target = expand(x, 256)
    for w in witness_search(m, depth=depth):
        if (w.u, w.u_prime, w.v, w.k, w.k_prime) == shape and expand(w.x, 256) == target:
            return w.certified_depth >= min(depth, 512), f"certified to {w.certified_depth}"
    return False, "no matching witness"


def _weak(m):
    r = weak_one_sided_check(m, depth=512)
    return r.passed, f"{len(r.checked)} candidates checked"


def _count_exceptional(m, at_least, depth):
    r = exceptional_points(m, depth=depth)
    shifts = r.shifts()
    return len(shifts) >= at_least, f"{len(shifts)} shifts"


def cmd_gallery(m, args):
    checks = gallery_checks(args.depth)
    return {"checks": [{"name": n, "passed": ok, "detail": str(d)} for n, ok, d in checks],
            "passed": all(ok for _, ok, _ in checks)}


COMMANDS = {
    "analyze": cmd_analyze, "rec": cmd_rec, "witness": cmd_witness, "language": cmd_language,
    "special": cmd_special, "periodic": cmd_periodic, "tower": cmd_tower, "eigen": cmd_eigen,
    "gallery": cmd_gallery,
}


def _global_flags(parser, suppress):
    # subcommands repeat the global flags; their defaults are suppressed so a
    # flag given before the command is not overwritten
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("-m", "--morphism", default=d(None),
                        help="morphism spec like 'a:ab,b:a', or @file")
    parser.add_argument("--json", action="store_true", default=d(False))
    parser.add_argument("--depth", type=int, default=d(DEFAULT_DEPTH),
                        help=f"certification depth (default {DEFAULT_DEPTH})")
    parser.add_argument("--seed-depth", type=int, default=d(4),
                        help="largest power k for fixed points of m^k (default 4)")
    parser.add_argument("--strict", action="store_true", default=d(False),
                        help="exit 1 on an unknown verdict")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    p = argparse.ArgumentParser(prog="morphrec",
                                description="Recognizability of morphisms and substitution shifts")
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", parents=[common], help="profile, complexity and periodic points")
    s.add_argument("-n", type=int, default=10)
    s.add_argument("--max-period", type=int, default=6)
    s = sub.add_parser("rec", parents=[common], help="recognizability verdict")
    s.add_argument("--mode", choices=["one-sided", "two-sided"], default="two-sided")
    s.add_argument("--max-scope", type=int, default=DEFAULT_MAX_SCOPE)
    s = sub.add_parser("witness", parents=[common], help="one-sided non-recognizability witnesses")
    s.add_argument("--max-u", type=int, default=3)
    s.add_argument("--k-max", type=int, default=4)
    s = sub.add_parser("language", parents=[common], help="factors up to length n")
    s.add_argument("-n", type=int, default=6)
    s = sub.add_parser("special", parents=[common], help="special factors and sequences")
    s.add_argument("-n", type=int, default=6)
    s.add_argument("--side", choices=["left", "right"], default="left")
    s = sub.add_parser("periodic", parents=[common], help="periodic points of the shift")
    s.add_argument("--max-period", type=int, default=6)
    s = sub.add_parser("tower", parents=[common], help="tower partition windows")
    s.add_argument("--scope", type=int, default=None)
    s = sub.add_parser("eigen", parents=[common], help="root-of-unity eigenfunction check")
    s.add_argument("--j", type=int, default=1)
    s.add_argument("--len", type=int, default=4096)
    sub.add_parser("gallery", parents=[common], help="run the worked examples")
    return p


def _print_human(cmd, report, out):
    if cmd == "gallery":
        for c in report["checks"]:
            out.write(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}  ({c['detail']})\n")
        out.write(f"{'all passed' if report['passed'] else 'some checks failed'}\n")
        return
    for key, val in report.items():
        if isinstance(val, dict):
            out.write(f"{key}:\n")
            for k, v in val.items():
                out.write(f"  {k}: {json.dumps(v, ensure_ascii=False)}\n")
        elif isinstance(val, list):
            out.write(f"{key}: {json.dumps(val, ensure_ascii=False)}\n")
        else:
            out.write(f"{key}: {val}\n")


def _unknown(report):
    v = report.get("verdict")
    return bool(v) and v["status"] == "unknown"


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        m = None if args.command == "gallery" else load_morphism(args.morphism)
        report = COMMANDS[args.command](m, args)
    except UsageError as exc:
        print(f"morphrec: {exc}", file=sys.stderr)
        return 2
    except (NotApplicable, HorizonError, MorphismError, ValueError) as exc:
        print(f"morphrec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.json:
        out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        _print_human(args.command, report, out)
    if args.command == "gallery" and not report["passed"]:
        return 1
    if args.strict and _unknown(report):
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
