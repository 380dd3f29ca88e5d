"""Command-line front end.

Commands: validate, eval, suite, presheaf build, catalog list.
Exit codes: 0 pass, 1 assertion/validation failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import DEFAULT_CAP
from .errors import QuantcatError
from .io import (
    SUITE_NAMES,
    SuiteConfig,
    detect_kind,
    dump_carrier,
    load_category,
    load_distributor,
    load_functor,
    load_quantaloid,
    parse_quantaloid_ref,
)
from .reports import clean, render_human, to_jsonl


def _fail_input(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def cmd_validate(args) -> int:
    try:
        kind = detect_kind(args.path)
    except (OSError, json.JSONDecodeError, QuantcatError) as e:
        return _fail_input(str(e))
    try:
        if kind == "quantaloid":
            Q = load_quantaloid(args.path)
            print(f"ok: quantaloid {Q.name} with {Q.n_objects} objects, "
                  f"{Q.n_elements} hom elements")
        elif kind == "category":
            X = load_category(args.path)
            print(f"ok: category {X.name} with {X.n} elements")
        elif kind == "distributor":
            phi = load_distributor(args.path)
            from .qdist import check_distributor
            ok, wit = check_distributor(phi)
            if not ok:
                print(f"fail: not a distributor: {json.dumps(clean(wit))}")
                return 1
            print(f"ok: distributor {phi.source.name} -|-> {phi.target.name}")
        elif kind == "functor":
            f = load_functor(args.path)
            from .qcat import check_functor
            ok, wit = check_functor(f)
            if not ok:
                print(f"fail: not a functor: {json.dumps(clean(wit))}")
                return 1
            print(f"ok: functor {f.source.name} -> {f.target.name}")
    except (OSError, json.JSONDecodeError, KeyError) as e:
        return _fail_input(str(e))
    except QuantcatError as e:
        print(f"fail: {e}" + (f" witness={json.dumps(clean(e.witness))}"
                              if e.witness else ""))
        return 1
    return 0


def _load_ref(spec: dict, kind: str, objects: dict):
    if kind == "category":
        return load_category(spec["path"])
    if kind == "distributor":
        src = objects.get(spec.get("source"))
        tgt = objects.get(spec.get("target"))
        return load_distributor(spec["path"], src, tgt)
    if kind == "functor":
        src = objects.get(spec.get("source"))
        tgt = objects.get(spec.get("target"))
        return load_functor(spec["path"], src, tgt)
    raise QuantcatError(f"unknown object kind {kind!r}")


def cmd_eval(args) -> int:
    """Evaluate one operation over objects loaded from files.

    The expression file holds {"load": {name: {"kind": ..., "path": ...}},
    "op": ..., "args": [names...]}; the resulting table prints in
    canonical order.
    """
    from . import presheaf as ps
    from .qdist import (
        compose as d_compose,
        dist_residual_left,
        dist_residual_right,
        graph as d_graph,
        cograph as d_cograph,
    )
    try:
        doc = json.load(open(args.path, encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        return _fail_input(str(e))
    try:
        objects = {}
        for name, spec in doc.get("load", {}).items():
            objects[name] = _load_ref(spec, spec["kind"], objects)
        op = doc["op"]
        argv = [objects[a] for a in doc.get("args", [])]
    except (KeyError, QuantcatError) as e:
        return _fail_input(str(e))

    ops = {
        "compose": lambda a, b: _print_dist(d_compose(a, b)),
        "residual_left": lambda a, b: _print_dist(dist_residual_left(a, b)),
        "residual_right": lambda a, b: _print_dist(dist_residual_right(a, b)),
        "graph": lambda f: _print_dist(d_graph(f)),
        "cograph": lambda f: _print_dist(d_cograph(f)),
        "yoneda": lambda X: _print_functor(ps.yoneda(X)),
        "co_yoneda": lambda X: _print_functor(ps.co_yoneda(X)),
        "kan": lambda phi: [_print_functor(g) for g in ps.kan(phi)],
        "isbell": lambda phi: [_print_functor(g) for g in ps.isbell(phi)],
        "transpose_to_P": lambda phi: _print_functor(ps.transpose_to_P(phi)),
        "transpose_to_Pd": lambda phi: _print_functor(ps.transpose_to_Pd(phi)),
        "extension": lambda phi: _print_dist(_extension(doc, phi)),
    }
    if op not in ops:
        return _fail_input(f"unknown operation {op!r}")
    try:
        ops[op](*argv)
    except QuantcatError as e:
        return _fail_input(str(e))
    except TypeError as e:
        return _fail_input(f"bad arguments for {op!r}: {e}")
    return 0


def _extension(doc, phi):
    from .laws import closed_form_extension
    return closed_form_extension(doc.get("which", "P"), phi)


def _print_dist(phi):
    Q = phi.Q
    print(f"{phi.source.name} -|-> {phi.target.name}")
    for i in range(phi.source.n):
        row = [Q.elem_name(int(v)) for v in phi.mat[i]]
        print(f"  {phi.source.ids[i]}: " + " ".join(row))


def _print_functor(f):
    print(f"{f.name}: {f.source.name} -> {f.target.name}")
    for i in range(f.source.n):
        print(f"  {f.source.ids[i]} |-> {f.target.ids[f(i)]}")


def cmd_suite(args) -> int:
    from .suites import run_suites
    try:
        if args.config:
            doc = json.load(open(args.config, encoding="utf-8"))
            config = SuiteConfig.from_doc(doc)
        else:
            config = SuiteConfig()
        if args.suites:
            config = SuiteConfig.from_doc(
                {**config.to_doc(), "suites": args.suites.split(",")})
        if args.quantaloids:
            config = SuiteConfig.from_doc(
                {**config.to_doc(), "quantaloids": args.quantaloids.split(",")})
        if args.cap is not None:
            config.max_carrier = args.cap
        if args.seed is not None:
            config.seed = args.seed
        if args.size is not None:
            config.max_category_size = args.size
        if args.mutate:
            config.mutate = args.mutate
        if args.out:
            config.output_path = args.out
        config.human = args.human
    except (OSError, json.JSONDecodeError, QuantcatError) as e:
        return _fail_input(str(e))

    records, summary = run_suites(config)
    text = to_jsonl(records, config.to_doc())
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    if config.human:
        print(render_human(records), end="")
    elif not config.output_path:
        print(text, end="")
    return 1 if summary["failures"] else 0


def cmd_presheaf(args) -> int:
    from .presheaf import P, Pd
    try:
        X = load_category(args.category)
    except (OSError, json.JSONDecodeError, KeyError, QuantcatError) as e:
        return _fail_input(str(e))
    try:
        carrier = P(X, args.cap) if args.kind == "P" else Pd(X, args.cap)
    except QuantcatError as e:
        print(f"fail: {e}")
        return 1
    doc = dump_carrier(carrier)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def cmd_catalog(args) -> int:
    from .quantaloid import catalog_names
    for name in catalog_names():
        print(name)
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="quantcat",
        description="exact workbench for finite quantaloid-enriched "
                    "category theory")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a description file")
    p.add_argument("path")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("eval", help="evaluate one operation from an "
                                    "expression file")
    p.add_argument("path")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("suite", help="run named verification suites")
    p.add_argument("--config", default=None)
    p.add_argument("--suites", default=None,
                   help=f"comma list from {','.join(SUITE_NAMES)}")
    p.add_argument("--quantaloids", default=None,
                   help="comma list of catalog refs or paths")
    p.add_argument("--cap", type=int, default=None,
                   help=f"carrier cap (default {DEFAULT_CAP})")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--size", type=int, default=None,
                   help="max generated category size")
    p.add_argument("--out", default=None, help="report output path")
    p.add_argument("--human", action="store_true",
                   help="render a human-readable table instead of JSON lines")
    p.add_argument("--mutate", default=None,
                   help="mutation plugin name (testing harness)")
    p.set_defaults(fn=cmd_suite)

    p = sub.add_parser("presheaf", help="carrier construction")
    psub = p.add_subparsers(dest="subcommand", required=True)
    pb = psub.add_parser("build", help="enumerate a carrier and dump JSON")
    pb.add_argument("category", help="category file")
    pb.add_argument("--kind", choices=["P", "Pd"], default="P")
    pb.add_argument("--cap", type=int, default=None)
    pb.add_argument("--out", default=None)
    pb.set_defaults(fn=cmd_presheaf)

    p = sub.add_parser("catalog", help="built-in quantaloids")
    csub = p.add_subparsers(dest="subcommand", required=True)
    cl = csub.add_parser("list", help="list catalog entries")
    cl.set_defaults(fn=cmd_catalog)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
