"""Command line entry point: ``python -m inflatorkit <command> ...``.

Output is JSON (``--pretty`` renders an indented text view instead).
Exit codes: 0 pass, 1 property failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import fields as F
from . import hahn as H
from . import lattice as LT
from . import repro, suites
from .errors import InflatorKitError
from .fundamental import classify_tame, membership, mv_type_test
from .inflators import BUILTIN, build, builtin, check_morphism, malleability_probe, spec_to_json
from .linalg import Subspace
from .mutation import Line, limit_ring_probe, mutate

DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


def _load_json(arg):
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return json.load(fh)
    try:
        return json.loads(arg)
    except json.JSONDecodeError:
        raise UsageError(f"{arg!r} is neither a file nor inline JSON") from None


def load_inflator(arg):
    """A built-in name, a JSON file, or inline JSON."""
    if arg in BUILTIN:
        return builtin(arg)
    if arg.startswith("builtin:"):
        return builtin(arg.split(":", 1)[1])
    return build(_load_json(arg))


def _split(text):
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def _qs(args, default):
    if args.qs is None:
        return default
    return [Fraction(q) for q in _split(args.qs)]


def _status(ok):
    return "pass" if ok else "fail"


# ---------------------------------------------------------------------------
# commands; each returns (payload, ok)


def cmd_eval(args):
    f = load_inflator(args.inflator)
    V = Subspace.from_json(_load_json(args.subspace))
    X = f.evaluate(V.ambient, V)
    return {"element": X.to_json(), "length": X.length}, True


def cmd_fundamental(args):
    f = load_inflator(args.inflator)
    a = F.parse_element(f.source_field, args.element)
    return {"element": F.format_element(a), **membership(f, a).to_json()}, True


def cmd_tame(args):
    f = load_inflator(args.inflator)
    a = F.parse_element(f.source_field, args.element)
    tr = classify_tame(f, a, _qs(args, list(range(f.degree + 1))))
    return tr.to_json(), tr.tame


def cmd_mvtype(args):
    f = load_inflator(args.inflator)
    samples = [F.parse_element(f.source_field, s) for s in _split(args.samples)]
    rep = mv_type_test(f, samples, _qs(args, list(range(f.degree))))
    return rep.to_json(), rep.passed


def cmd_mutate(args):
    f = load_inflator(args.inflator)
    L = Line.parse(f.source_field, _split(args.line))
    g = mutate(f, L)
    return {"spec": spec_to_json(g.spec), "degree": g.degree,
            "codomain": g.codomain.to_json(), "kept_summands": list(g.recoord.kept)}, True


def cmd_limit_ring(args):
    f = load_inflator(args.inflator)
    x = F.parse_element(f.source_field, args.element)
    out = limit_ring_probe(f, x, _qs(args, list(range(f.degree))))
    return out, out["in_limit_ring"]


def cmd_check_morphism(args):
    f = load_inflator(args.inflator)
    rep = check_morphism(f, trials=args.trials or 100, seed=args.seed, max_level=args.max_level)
    return rep.to_json(), rep.passed


def cmd_malleable(args):
    f = load_inflator(args.inflator)
    rep = malleability_probe(f, trials=args.trials or 50, seed=args.seed,
                             max_level=args.max_level)
    return rep.to_json(), rep.passed


def _load_lattice(arg):
    corpus = LT.corpus()
    if arg in corpus:
        return corpus[arg]
    if arg == "two-place-modules":
        return LT.two_place_module_lattice()
    return LT.FiniteLattice.from_json(_load_json(arg))


def cmd_lattice(args):
    M = _load_lattice(args.lattice)
    ok, wit = LT.is_modular(M)
    out = {"elements": M.n, "modular": ok,
           "witness": None if wit is None else [M.labels[w] for w in wit]}
    if args.action == "validate":
        return out, True
    if not ok:
        return out, False
    if args.action == "rank":
        c1, c2, c3 = LT.cube_conditions_agree(M)
        out.update(rk0=LT.rk0(M), rk_bot=LT.rk_bot(M), conditions=[c1, c2, c3])
        return out, c1 == c2 == c3
    fr = LT.flatten(M)
    rep = LT.flatten_report(M)
    out.update(flattening=fr.to_json(M), checks=rep.to_json()["checks"])
    return out, rep.passed


def cmd_hahn(args):
    p = H.mutated_gamma(_split(args.line))
    w = H.endless_witness(p)
    return w.to_json(p.gamma), w.verified


def cmd_suite(args):
    if args.name not in suites.SUITES:
        raise UsageError(f"unknown suite {args.name!r}; known: {sorted(suites.SUITES)}")
    rep = suites.run_suite(args.name, seed=args.seed, trials=args.trials)
    return rep.to_json(), rep.passed


def cmd_repro(args):
    if args.example not in repro.CATALOG:
        raise UsageError(f"unknown example {args.example!r}; known: {sorted(repro.CATALOG)}")
    rep = repro.run(args.example, seed=args.seed)
    return rep.to_json(), rep.passed


# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--max-level", type=int, default=3)
    common.add_argument("--qs", default=None, help="comma-separated rationals")
    common.add_argument("--pretty", action="store_true")
    common.add_argument("--out", default=None, help="write the report to this file")

    p = argparse.ArgumentParser(prog="inflatorkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, **opts):
        sp = sub.add_parser(name, parents=[common])
        for arg in positional:
            sp.add_argument(arg)
        for flag, kw in opts.items():
            sp.add_argument("--" + flag.replace("_", "-"), **kw)
        sp.set_defaults(fn=fn)
        return sp

    add("eval", cmd_eval, "inflator", "subspace")
    add("fundamental", cmd_fundamental, "inflator", element={"required": True})
    add("tame", cmd_tame, "inflator", element={"required": True})
    add("mvtype", cmd_mvtype, "inflator", samples={"required": True})
    add("mutate", cmd_mutate, "inflator", line={"required": True})
    add("limit-ring", cmd_limit_ring, "inflator", element={"required": True})
    add("check-morphism", cmd_check_morphism, "inflator")
    add("malleable", cmd_malleable, "inflator")
    lat = add("lattice", cmd_lattice)
    lat.add_argument("action", choices=["validate", "rank", "flatten"])
    lat.add_argument("lattice", help="corpus name or lattice JSON")
    hh = add("hahn", cmd_hahn)
    hh.add_argument("action", choices=["endless"])
    hh.add_argument("--line", required=True)
    add("suite", cmd_suite, "name")
    add("repro", cmd_repro, "example")
    return p


def _render(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, ok = args.fn(args)
    except (UsageError, InflatorKitError, json.JSONDecodeError, OSError, KeyError) as e:
        print(f"inflatorkit: error: {e}", file=sys.stderr)
        return 2
    report = {"command": argv, "seed": args.seed, "status": _status(ok), "result": payload}
    text = "\n".join(_render(report)) if args.pretty else json.dumps(report, indent=2,
                                                                     ensure_ascii=False)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
