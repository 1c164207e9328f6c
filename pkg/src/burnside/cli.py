"""Command-line entry point.

Subcommands expose each pipeline with machine-readable output:

    ramanujan <d>                 matrix plus structural identity report
    conjecture --max-d N          coprime-partition sweep over even degrees
    suborbits --group SPEC        stabiliser orbits of a permutation group
    diagnose --group SPEC         imprimitive / 2-transitive dichotomy
    nullsets <p> <n>              solution-set enumeration or verification
    examples wreath|manning|ex42  the product-action constructions

Group specs are either a named family (cyclic:6, dihedral:8, wreath:5,
sym:7, affine:9:2) or explicit cycle-notation generators separated by
semicolons, e.g. "(0,1,2,3)(4,5);(0,4)".

Exit codes: 0 success (all verdicts hold), 1 a mathematical verdict
failed, 2 usage or input error.  BURNSIDE_JOBS sets the default worker
count.  Sweep output is one JSON object per line so long runs can be
monitored; results are canonically ordered and independent of the worker
count.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from . import coprime, method, nullsets, permgroup, ramanujan

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2


def _default_jobs() -> int:
    env = os.environ.get("BURNSIDE_JOBS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def parse_group(spec: str) -> permgroup.PermGroup:
    """A named family, cycle-notation generators, or JSON image arrays."""
    if spec.lstrip().startswith("["):
        try:
            arrays = json.loads(spec)
            gens = [permgroup.Permutation(tuple(a)) for a in arrays]
        except (TypeError, ValueError) as exc:
            raise ValueError(f"bad image-array group spec: {exc}") from None
        if not gens:
            raise ValueError("no generators given")
        return permgroup.PermGroup(gens[0].degree, tuple(gens), name="custom")
    head, _, rest = spec.partition(":")
    families = {
        "cyclic": permgroup.cyclic,
        "dihedral": permgroup.dihedral,
        "sym": permgroup.symmetric,
        "wreath": lambda d: permgroup.wreath_product_action(d).group,
    }
    if head in families:
        try:
            d = int(rest)
        except ValueError:
            raise ValueError(f"expected {head}:<degree>, got {spec!r}") from None
        return families[head](d)
    if head == "affine":
        try:
            d_text, s_text = rest.split(":")
            return permgroup.affine(int(d_text), int(s_text))
        except ValueError:
            raise ValueError(f"expected affine:<degree>:<multiplier>, got {spec!r}") from None
    if spec.lstrip().startswith("("):
        gens = permgroup.parse_generators(spec)
        return permgroup.PermGroup(gens[0].degree, tuple(gens), name="custom")
    raise ValueError(f"unrecognised group spec {spec!r}")


def _default_cycle(G: permgroup.PermGroup) -> permgroup.Permutation:
    """The canonical full cycle for families that contain one."""
    candidate = G.generators[0]
    if len(candidate.cycles()) == 1 and len(candidate.cycles()[0]) == G.degree:
        return candidate
    raise ValueError("this group has no canonical full cycle; pass --cycle")


class _Output:
    def __init__(self, path: str | None):
        self.path = path
        self.handle = open(path, "w") if path else sys.stdout

    def line(self, text: str) -> None:
        self.handle.write(text + "\n")
        self.handle.flush()  # sweeps stream one line per result

    def close(self) -> None:
        if self.path:
            self.handle.close()


def _json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def _blocks_dict(system: permgroup.BlockSystem | None):
    if system is None:
        return None
    return {
        "size": system.block_size,
        "count": system.block_count,
        "blocks": system.blocks(),
    }


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_ramanujan(args, out: _Output) -> int:
    R = ramanujan.matrix_formula(args.d)
    report = ramanujan.structure_identities(args.d)
    if args.format == "csv":
        out.line(ramanujan.to_csv(R).rstrip("\n"))
    elif args.format == "json":
        payload = ramanujan.to_json_dict(R)
        payload["identities"] = dataclasses.asdict(report)
        out.line(_json(payload))
    else:
        width = max(len(str(v)) for row in R.entries for v in row)
        header = " ".join(f"{c:>{width}}" for c in R.divisors)
        out.line(f"R({args.d})   columns: {header}")
        for r, row in zip(R.divisors, R.entries):
            cells = " ".join(f"{v:>{width}}" for v in row)
            out.line(f"row {r:>4}: {cells}")
        out.line(f"identities ok: {report.ok}")
        for f in report.failures:
            out.line(f"  failure: {f}")
    return EXIT_OK if report.ok else EXIT_VERDICT


def _cmd_conjecture(args, out: _Output) -> int:
    failed = False
    for r in coprime.iter_verify_range(args.max_d, jobs=args.jobs):
        failed = failed or not r.holds
        if args.format == "pretty":
            masks = ", ".join("{" + ",".join(map(str, m)) + "}" for m in r.coprime_masks)
            out.line(
                f"d={r.d}: {'holds' if r.holds else 'FAILS'} "
                f"({r.subsets_scanned} subsets, coprime: {masks}, {r.millis} ms)"
            )
        else:
            out.line(_json(r.to_json_dict()))
    return EXIT_VERDICT if failed else EXIT_OK


def _cmd_suborbits(args, out: _Output) -> int:
    G = parse_group(args.group)
    subs = permgroup.suborbits(G, base=args.base)
    payload = {
        "group": G.name or args.group,
        "degree": G.degree,
        "base": args.base,
        "suborbits": subs,
        "sizes": sorted(len(s) for s in subs),
    }
    if args.format == "pretty":
        out.line(f"{payload['group']} (degree {G.degree}), base {args.base}:")
        for s in subs:
            out.line(f"  size {len(s)}: {s}")
    else:
        out.line(_json(payload))
    return EXIT_OK


def _cmd_diagnose(args, out: _Output) -> int:
    G = parse_group(args.group)
    if args.cycle:
        g = permgroup.parse_permutation(args.cycle, G.degree)
    else:
        g = _default_cycle(G)
    report = method.diagnose(G, g)
    payload = {
        "group": report.group,
        "degree": report.degree,
        "cycle": report.cycle,
        "verdict": report.verdict,
        "blocks": _blocks_dict(report.blocks),
        "suborbits": [list(o) for o in report.suborbits],
        "basis_classes": [list(c) for c in report.basis_classes],
        "orbit_rows": list(report.orbit_rows.rows.divisors()) if report.orbit_rows else None,
        "relabelling": list(report.relabelling),
    }
    if args.format == "pretty":
        out.line(f"{payload['group']} (degree {report.degree}): {report.verdict}")
        if report.blocks:
            out.line(f"  blocks: {report.blocks.blocks()}")
        out.line(f"  suborbit sizes: {sorted(len(o) for o in report.suborbits)}")
        out.line(f"  basis classes: {payload['basis_classes']}")
    else:
        out.line(_json(payload))
    return EXIT_VERDICT if report.verdict == "counterexample" else EXIT_OK


def _cmd_nullsets(args, out: _Output) -> int:
    if args.verify:
        rep = nullsets.verify_classification(args.p, args.n, jobs=args.jobs)
        payload = dataclasses.asdict(rep)
        payload["verdict"] = "holds" if rep.ok else "fails"
        if args.format == "pretty":
            out.line(
                f"p={rep.p} n={rep.n}: {payload['verdict']} "
                f"({rep.solution_count} solutions, smallest nonempty "
                f"{rep.smallest_nonempty}, {rep.millis} ms)"
            )
        else:
            out.line(_json(payload))
        return EXIT_OK if rep.ok else EXIT_VERDICT
    sols = nullsets.enumerate_solutions(args.p, args.n, jobs=args.jobs)
    for O in sols:
        cls = nullsets.classify(O)
        payload = {
            "p": args.p,
            "n": args.n,
            "set": list(O.members),
            "class": cls.kind,
        }
        if cls.remainder is not None:
            payload["certificate"] = {
                "s": cls.remainder.s,
                "grid": [list(row) for row in cls.remainder.grid],
            }
        if cls.residue_reps is not None:
            payload["residue_reps"] = list(cls.residue_reps)
        if args.format == "pretty":
            out.line(f"{sorted(O.members)}: {cls.kind}")
        else:
            out.line(_json(payload))
    return EXIT_OK


def _cmd_examples(args, out: _Output) -> int:
    name = args.name
    if name == "wreath":
        d = args.d or 3
        W = permgroup.wreath_product_action(d)
        subs = permgroup.suborbits(W.group)
        payload = {
            "construction": "wreath",
            "d": d,
            "degree": d * d,
            "encoding": "pair (i, j) is the point i*d + j",
            "primitive": permgroup.is_primitive(W.group),
            "two_transitive": permgroup.is_2transitive(W.group),
            "suborbit_sizes": sorted(len(s) for s in subs),
            "embedded_regular": permgroup.regular_check(
                d * d, list(W.embedded_abelian)
            ),
        }
        ok = (
            payload["primitive"]
            and not payload["two_transitive"]
            and payload["embedded_regular"]
        ) or d == 2
    elif name == "manning":
        d = args.d or 3
        rep = method.manning_invariance_check(d)
        payload = {
            "construction": "manning",
            "d": d,
            "middle_class": [list(x) for x in rep.middle_class],
            "galois_invariant": rep.galois_invariant,
            "violation": [list(x) for x in rep.violation] if rep.violation else None,
        }
        ok = rep.galois_invariant and (rep.violation is not None or d <= 2)
    elif name == "ex42":
        if args.d not in (None, 4):
            raise ValueError("the three-generator counterexample is specific to d=4")
        W = permgroup.wreath_product_action(4)
        a = W.embedded_abelian[0]
        k1 = permgroup.second_coordinate_perm(
            permgroup.parse_permutation("(0,1)(2,3)", 4), 4
        )
        k2 = permgroup.second_coordinate_perm(
            permgroup.parse_permutation("(0,2)(1,3)", 4), 4
        )
        payload = {
            "construction": "ex42",
            "d": 4,
            "degree": 16,
            "generators": [str(a), str(k1), str(k2)],
            "regular_c4xc2xc2": permgroup.regular_check(16, [a, k1, k2]),
            "primitive": permgroup.is_primitive(W.group),
            "two_transitive": permgroup.is_2transitive(W.group),
        }
        ok = (
            payload["regular_c4xc2xc2"]
            and payload["primitive"]
            and not payload["two_transitive"]
        )
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown example {name!r}")
    payload["verdict"] = "holds" if ok else "fails"
    if args.format == "pretty":
        for key, value in payload.items():
            out.line(f"{key}: {value}")
    else:
        out.line(_json(payload))
    return EXIT_OK if ok else EXIT_VERDICT


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="burnside",
        description="Exact computations with Ramanujan matrices, divisor "
        "partitions, suborbit dualities and cyclotomic solution sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, default_format):
        p.add_argument(
            "--format",
            choices=["json", "csv", "pretty"],
            default=default_format,
            help=f"output format (default {default_format})",
        )
        p.add_argument("--out", default=None, help="write output to a file")
        p.add_argument(
            "--jobs",
            type=int,
            default=_default_jobs(),
            help="worker count (default $BURNSIDE_JOBS or 1)",
        )

    p = sub.add_parser("ramanujan", help="print R(d) and its identity report")
    p.add_argument("d", type=int)
    add_common(p, "pretty")
    p.set_defaults(handler=_cmd_ramanujan)

    p = sub.add_parser("conjecture", help="coprime-partition sweep over even degrees")
    p.add_argument("--max-d", type=int, required=True, dest="max_d")
    add_common(p, "json")
    p.set_defaults(handler=_cmd_conjecture)

    p = sub.add_parser("suborbits", help="stabiliser orbits of a group")
    p.add_argument("--group", required=True)
    p.add_argument("--base", type=int, default=0)
    add_common(p, "json")
    p.set_defaults(handler=_cmd_suborbits)

    p = sub.add_parser("diagnose", help="imprimitive / 2-transitive dichotomy")
    p.add_argument("--group", required=True)
    p.add_argument("--cycle", default=None, help="a full cycle in cycle notation")
    add_common(p, "json")
    p.set_defaults(handler=_cmd_diagnose)

    p = sub.add_parser("nullsets", help="enumerate or verify solution sets")
    p.add_argument("p", type=int)
    p.add_argument("n", type=int)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--enumerate", action="store_true")
    mode.add_argument("--verify", action="store_true")
    add_common(p, "json")
    p.set_defaults(handler=_cmd_nullsets)

    p = sub.add_parser("examples", help="the product-action constructions")
    p.add_argument("name", choices=["wreath", "manning", "ex42"])
    p.add_argument("--d", type=int, default=None)
    add_common(p, "json")
    p.set_defaults(handler=_cmd_examples)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.command != "ramanujan":
        print("csv output is only available for the ramanujan subcommand", file=sys.stderr)
        return EXIT_USAGE
    args.jobs = max(1, args.jobs)
    out = None
    try:
        out = _Output(args.out)
        return args.handler(args, out)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if out is not None:
            out.close()


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
