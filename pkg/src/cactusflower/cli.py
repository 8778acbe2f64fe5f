"""Command-line interface: enumeration, verification, coordinate maps, and
exports over the whole toolkit.

Every invocation is reproducible from its flags (randomized checks take an
explicit seed, with a fixed default).  Exit status: 0 on success/pass, 1 on
a verification failure, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import acceptance as acc
from . import cubecomplexes as cc
from . import groups as gr
from . import projective as pj
from . import realgeometry as rg
from . import rootsystems as rs

VARIETY_CODES = {
    "T": "LosevManin",
    "f": "Flower",
    "Cf": "DeformedFlower",
    "M": "DeligneMumford",
    "Q": "MauWoodward",
    "CQ": "DeformedMauWoodward",
}


def _emit(args, payload: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
            if not payload.endswith("\n"):
                fh.write("\n")
    else:
        print(payload)


def _cmd_enumerate(args) -> int:
    c = cc.build_complex(args.complex, args.n)
    if args.subdivide:
        sub = cc.cubical_subdivision(c)
        counts = {str(k): v for k, v in sub.counts().items()}
    else:
        counts = {str(k): v for k, v in c.counts().items()}
    if args.counts or True:
        _emit(args, json.dumps(counts, sort_keys=True))
    return 0


def _cmd_verify(args) -> int:
    if args.what == "npc":
        rep = cc.check_gromov_flag(cc.build_complex(args.complex, args.n))
        _emit(args, json.dumps({"complex": args.complex, "n": args.n, "pass": rep.ok,
                                "witness": None if rep.ok else [rep.detail, list(rep.witness or ())]},
                               sort_keys=True))
        return 0 if rep.ok else 1

    if args.what == "local-isometry":
        src = cc.build_complex(getattr(args, "from"), args.n)
        dst = cc.build_complex(args.to, args.n)
        rep = cc.check_local_isometry(cc.quotient_map(src, dst))
        _emit(args, json.dumps({"map": f"{src.kind}->{dst.kind}", "n": args.n, "pass": rep.ok},
                               sort_keys=True))
        return 0 if rep.ok else 1

    if args.what == "hom":
        pair = (getattr(args, "from"), args.to)
        h = gr.hom(pair, args.n)
        mode = "solvable_target" if args.to in gr.SOLVABLE_TARGETS else "bounded_rewrite"
        rep = gr.verify_hom(h, mode, depth=args.depth)
        counts = {}
        for _, st, _ in rep.results:
            counts[st] = counts.get(st, 0) + 1
        ok = not rep.failures and not rep.inconclusive
        _emit(args, json.dumps({"hom": f"{pair[0]}->{pair[1]}", "n": args.n,
                                "mode": mode, "statuses": counts, "pass": ok}, sort_keys=True))
        return 0 if ok else 1

    if args.what == "diagram":
        report = gr.diagram_report(args.n)
        bad = [f"{src}:{g}" for src, g, ok in report if not ok]
        _emit(args, json.dumps({"n": args.n, "checks": len(report), "failures": bad,
                                "pass": not bad}, sort_keys=True))
        return 0 if not bad else 1

    if args.what == "membership":
        with open(args.infile) as fh:
            point = pj.point_from_json(fh.read())
        tag = VARIETY_CODES[args.variety]
        n = args.n if args.n else point.n
        rep = pj.check_membership(pj.VarietySpec(tag, n), point)
        _emit(args, json.dumps(
            {"variety": tag, "n": n, "pass": rep.ok,
             "violations": [[name, list(idx)] for name, idx, _ in sorted(rep.violations)[:20]]},
            sort_keys=True))
        return 0 if rep.ok else 1

    if args.what == "presentation":
        ext = cc.extract_presentation(cc.build_complex(args.complex, args.n))
        family = "pure_virtual_cactus" if args.complex == "hatD" else "pure_virtual_sym"
        gen = gr.make_presentation(family, args.n)
        ok = cc.presentations_match(ext, gen)
        _emit(args, json.dumps({"complex": args.complex, "family": family, "n": args.n,
                                "relators": len(ext.relators), "pass": ok}, sort_keys=True))
        return 0 if ok else 1

    if args.what == "acceptance":
        if args.criterion:
            results = [acc.run_criterion(args.criterion, args.seed)]
        elif args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(lambda f: f(args.seed), acc.ALL_CRITERIA))
        else:
            results = [f(args.seed) for f in acc.ALL_CRITERIA]
        for r in sorted(results, key=lambda r: r.number):
            print(r.line())
        return 0 if all(r.passed for r in results) else 1

    raise AssertionError(args.what)


def _cmd_classify(args) -> int:
    with open(args.infile) as fh:
        point = pj.point_from_json(fh.read())
    s, b, dims = pj.classify_strata(point)
    _emit(args, json.dumps({
        "S": sorted(sorted(blk) for blk in s.blocks),
        "B": sorted(sorted(blk) for blk in b.blocks),
        "dim_S_stratum": dims[0],
        "dim_B_stratum": dims[1],
    }, sort_keys=True))
    return 0


def _cmd_map(args) -> int:
    with open(args.infile) as fh:
        text = fh.read()
    if args.which == "gamma":
        p = rg.CubePoint.from_json(text)
        x = rg.gamma(p)
        _emit(args, json.dumps({"order": list(x.order), "diffs": [str(d) for d in x.diffs]},
                               sort_keys=True))
        return 0
    if args.which == "theta":
        p = rg.CubePoint.from_json(text)
        im = rg.theta(p)
        out = {
            "partition": sorted(sorted(b) for b in im.s_part.blocks),
            "nu": {f"{i},{j}": str(v) for (i, j), v in im.nu.as_dict().items()},
            "mu": {
                ",".join(map(str, sorted(part))): {
                    f"{a},{b},{c}": str(v) for (a, b, c), v in mu.as_dict().items()
                }
                for part, mu in im.mu_dict().items()
            },
        }
        _emit(args, json.dumps(out, sort_keys=True))
        return 0
    if args.which == "theta-star":
        d = json.loads(text)
        x = rg.StarPoint(tuple(d["order"]), tuple(Fraction(v) for v in d["diffs"]))
        nut = rg.theta_star(x, convention=args.convention)
        _emit(args, json.dumps(
            {f"{i},{j}": str(v) for (i, j), v in nut.as_dict().items()}, sort_keys=True))
        return 0
    raise AssertionError(args.which)


def _cmd_path(args) -> int:
    lines = ["n,k,t,s,coordinate,re,im"]
    for step in range(args.samples + 1):
        t = step / args.samples
        point = rg.affine_cactus_path(args.n, args.k, t, args.s)
        for (i, j), v in point.nu:
            if v is None:
                continue
            lines.append(f"{args.n},{args.k},{t},{args.s},nu_{i}_{j},{v.real},{v.imag}")
        for (a, b, c), v in point.mu:
            lines.append(f"{args.n},{args.k},{t},{args.s},mu_{a}_{b}_{c},{v.real},{v.imag}")
    _emit(args, "\n".join(lines))
    return 0


def _cmd_roots(args) -> int:
    spec = args.type
    if spec.strip().startswith("["):
        spec = json.loads(spec)
    system = rs.build_root_system(spec)
    if args.verify == "face-centers":
        import itertools as it

        total = bad = 0
        for ss in system.simple_systems():
            for dsize in range(system.rank + 1):
                for delta in it.combinations(range(system.rank), dsize):
                    total += 1
                    if not rs.verify_face_center(rs.FaceDatum(ss, frozenset(delta))):
                        bad += 1
        _emit(args, json.dumps({"type": args.type, "checked": total, "failures": bad,
                                "pass": bad == 0}, sort_keys=True))
        return 0 if bad == 0 else 1
    if args.format == "csv":
        lines = ["simple_coords,weight_coords"]
        for root in system.roots:
            lines.append(
                '"%s","%s"' % (" ".join(map(str, root.simple)), " ".join(map(str, root.weight)))
            )
        _emit(args, "\n".join(lines))
    else:
        _emit(args, json.dumps({
            "type": args.type,
            "rank": system.rank,
            "roots": [list(r.simple) for r in system.roots],
            "weyl_order": system.order,
        }, sort_keys=True))
    return 0


def _cmd_export(args) -> int:
    c = cc.build_complex(args.complex, args.n)
    if args.format == "dot":
        _emit(args, cc.export_dot(c))
    else:
        _emit(args, cc.export_poset(c))
    return 0


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=acc.DEFAULT_SEED)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=("json", "csv", "dot"), default="json")
    common.add_argument("--out", default=None)

    ap = argparse.ArgumentParser(
        prog="cactusflower",
        description="exact computations on flower and cactus-flower moduli",
        parents=[common],
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_parser(owner, name, **kw):
        return owner.add_parser(name, parents=[common], **kw)

    p = add_parser(sub, "enumerate", help="cell counts of a complex")
    p.add_argument("--complex", required=True, choices=("D", "hatD", "breveD", "P", "hatP", "breveP"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--subdivide", action="store_true")
    p.add_argument("--counts", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = add_parser(sub, "verify", help="run a verification")
    vsub = p.add_subparsers(dest="what", required=True)

    q = add_parser(vsub, "npc")
    q.add_argument("--complex", required=True, choices=("D", "hatD", "breveD"))
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=_cmd_verify)

    q = add_parser(vsub, "local-isometry")
    q.add_argument("--from", required=True, choices=("D", "breveD"))
    q.add_argument("--to", required=True, choices=("breveD", "hatD"))
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=_cmd_verify)

    q = add_parser(vsub, "hom")
    q.add_argument("--from", required=True, choices=gr.GROUPS)
    q.add_argument("--to", required=True, choices=gr.GROUPS)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--depth", type=int, default=6)
    q.set_defaults(func=_cmd_verify)

    q = add_parser(vsub, "diagram")
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=_cmd_verify)

    q = add_parser(vsub, "membership")
    q.add_argument("--variety", required=True, choices=tuple(VARIETY_CODES))
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--in", dest="infile", required=True)
    q.set_defaults(func=_cmd_verify)

    q = add_parser(vsub, "presentation")
    q.add_argument("--complex", required=True, choices=("hatD", "hatP"))
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=_cmd_verify)

    q = add_parser(vsub, "acceptance")
    q.add_argument("--criterion", type=int, default=None)
    q.set_defaults(func=_cmd_verify)

    p = add_parser(sub, "classify", help="strata of a flower-space point")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=_cmd_classify)

    p = add_parser(sub, "map", help="evaluate a coordinate map")
    p.add_argument("--which", required=True, choices=("gamma", "theta", "theta-star"))
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--f", default="default", choices=("default",))
    p.add_argument("--convention", default="descending", choices=("descending", "ascending"))
    p.set_defaults(func=_cmd_map)

    p = add_parser(sub, "path", help="sample the twisting path, CSV output")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--s", type=float, default=1.0)
    p.set_defaults(func=_cmd_path)

    p = add_parser(sub, "roots", help="root system data and verifications")
    p.add_argument("--type", required=True)
    p.add_argument("--verify", choices=("face-centers",), default=None)
    p.set_defaults(func=_cmd_roots)

    p = add_parser(sub, "export", help="DOT 1-skeleton or JSON cell poset")
    p.add_argument("--complex", required=True, choices=("D", "hatD", "breveD", "P", "hatP", "breveP"))
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_export)

    return ap


def main(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    # seed propagation for subcommands that use it
    args.criterion = getattr(args, "criterion", None)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
