"""Command line front end.

Points are 1-based on the way in and on the way out; group files are
JSON documents as described in the io module.  Exit status 0 means
success, 2 a problem with the input, and 3 a computation that could not
be completed or a check that failed.
"""

import argparse
import json
import sys

from .control import control_subgroup
from .cyclebase import cycle_base, matches_oracle
from .errors import GroupFileError
from .io import load_group, make_certificate, write_certificate
from .oracle import generate_corpus, oracle_cyc
from .perm import format_cycles
from .report import scaling_report

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_COMPUTE = 3


def _emit(data: dict, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def cmd_cycle_base(args) -> int:
    K = load_group(args.group)
    r = cycle_base(K, seed=args.seed, enum_cap=args.enum_cap,
                   sample_budget=args.sample_budget)
    data = {
        "degree": K.degree,
        "group_order": str(K.order()),
        "classes": [{"cycles": format_cycles(g),
                     "images": [int(x) + 1 for x in g.images()]}
                    for g in r.base],
        "phi_bound": r.phi_bound,
        "method": r.method,
        "verified": r.verified,
        "caveat": r.caveat,
    }
    lines = [
        f"degree: {K.degree}",
        f"group order: {K.order()}",
        f"classes: {r.size} (phi bound {r.phi_bound})",
        f"method: {r.method}",
        f"verified: {'yes' if r.verified else 'no'}",
    ]
    if r.caveat:
        lines.append(f"caveat: {r.caveat}")
    lines += [f"class {i}: {format_cycles(g)}"
              for i, g in enumerate(r.base)]

    status = EXIT_OK
    if args.verify:
        ok = matches_oracle(K, r, oracle_cyc(K, cap=args.enum_cap))
        lines.append(f"oracle check: {'ok' if ok else 'MISMATCH'}")
        data["oracle_check"] = ok
        if not ok:
            status = EXIT_COMPUTE
    _emit(data, args.json, lines)
    if args.certificate:
        write_certificate(make_certificate(K, r.control, r),
                          args.certificate)
    return status


def cmd_control(args) -> int:
    K = load_group(args.group)
    res = control_subgroup(K, seed=args.seed)
    cert = make_certificate(K, res)
    lines = [
        f"degree: {K.degree}",
        f"group order: {K.order()}",
        f"conclusion: {res.conclusion}",
        f"control order: {res.M.order()}",
    ]
    lines += [f"generator: {format_cycles(g)}" for g in res.M.generators]
    for rec in res.trace:
        blocks = rec.get("blocks")
        shape = (f", {blocks} blocks of {rec.get('block_size')}"
                 if blocks is not None else "")
        lines.append(f"depth {rec['depth']}: degree {rec['degree']}"
                     f"{shape} -> {rec['branch']}")
    _emit(cert, args.json, lines)
    if args.certificate:
        write_certificate(cert, args.certificate)
    return EXIT_OK


def cmd_oracle(args) -> int:
    K = load_group(args.group)
    oc = oracle_cyc(K, cap=args.cap)
    data = {
        "degree": K.degree,
        "group_order": str(K.order()),
        "classes": [format_cycles(g) for g in oc.reps],
        "subgroup_count": oc.subgroup_count,
        "cycle_count": oc.cycle_count,
    }
    lines = [
        f"degree: {K.degree}",
        f"group order: {K.order()}",
        f"classes: {oc.class_count}",
        f"subgroups: {oc.subgroup_count}",
        f"full cycles: {oc.cycle_count}",
    ]
    lines += [f"class {i}: {format_cycles(g)}"
              for i, g in enumerate(oc.reps)]
    _emit(data, args.json, lines)
    return EXIT_OK


def cmd_representations(args) -> int:
    K = load_group(args.group)
    r = cycle_base(K, seed=args.seed, enum_cap=args.enum_cap,
                   sample_budget=args.sample_budget)
    for g in r.base:
        print(format_cycles(g))
    return EXIT_OK


def cmd_selftest(args) -> int:
    entries = [e for e in generate_corpus(args.profile)
               if e.degree <= args.max_degree]
    failures = 0
    for e in entries:
        K = e.group()
        r = cycle_base(K, seed=args.seed)
        ok = matches_oracle(K, r, oracle_cyc(K))
        print(f"{'ok  ' if ok else 'FAIL'} {e.name}: "
              f"{r.size} classes")
        failures += 0 if ok else 1
    print(f"{len(entries) - failures}/{len(entries)} groups agree "
          f"with the oracle")
    return EXIT_OK if failures == 0 else EXIT_COMPUTE


def cmd_scaling(args) -> int:
    rep = scaling_report(args.out, levels=args.levels, seed=args.seed)
    for r in rep["rows"]:
        print(f"degree {r['degree']:5d}  {r['seconds']:8.3f}s  "
              f"control order {len(r['control_order'])} digits")
    print(f"fitted slope: {rep['slope']:.2f}")
    print(f"wrote {rep['csv']}")
    print(f"wrote {rep['png']}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cycbase",
        description="Conjugacy classes of regular cyclic subgroups, "
                    "computed through a solvable control subgroup.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_group_arg(sp):
        sp.add_argument("group", help="path to a JSON group file")

    def add_search_args(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--enum-cap", type=int, default=10 ** 6,
                        help="largest control order enumerated exactly")
        sp.add_argument("--sample-budget", type=int, default=None,
                        help="random draws when the cap is exceeded")

    sp = sub.add_parser("cycle-base",
                        help="one representative per class of full cycles")
    add_group_arg(sp)
    add_search_args(sp)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--verify", action="store_true",
                    help="cross-check against brute-force enumeration")
    sp.add_argument("--certificate", metavar="PATH",
                    help="write a JSON certificate of the run")
    sp.set_defaults(func=cmd_cycle_base)

    sp = sub.add_parser("control",
                        help="construct the solvable control subgroup")
    add_group_arg(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--certificate", metavar="PATH")
    sp.set_defaults(func=cmd_control)

    sp = sub.add_parser("oracle",
                        help="brute-force class count for small groups")
    add_group_arg(sp)
    sp.add_argument("--cap", type=int, default=10 ** 6,
                    help="largest group order enumerated")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("representations",
                        help="print the cycle representatives, one per line")
    add_group_arg(sp)
    add_search_args(sp)
    sp.set_defaults(func=cmd_representations)

    sp = sub.add_parser("selftest",
                        help="compare search and oracle over bundled groups")
    sp.add_argument("--profile", choices=["tiny", "full"], default="tiny")
    sp.add_argument("--max-degree", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_selftest)

    sp = sub.add_parser("scaling",
                        help="time the construction on a doubling family")
    sp.add_argument("--levels", type=int, default=6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default="scaling-out",
                    help="directory for scaling.csv and scaling.png")
    sp.set_defaults(func=cmd_scaling)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GroupFileError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    raise SystemExit(main())
