"""Shared fixtures-in-spirit: the group corpus and small utilities."""

from __future__ import annotations

import io
import json
from contextlib import redirect_stdout

from burnside import cli, permgroup
from burnside.permgroup import PermGroup, Permutation


def full_cycle(d: int) -> Permutation:
    return permgroup.cycle(range(d), d)


def composite_degrees(low: int, high: int) -> list[int]:
    return [
        d
        for d in range(low, high + 1)
        if any(d % q == 0 for q in range(2, d))
    ]


def cyclic_regular_corpus(max_degree: int = 100) -> list[tuple[PermGroup, Permutation]]:
    """Transitive groups of composite degree with the canonical regular
    d-cycle: dihedral, cyclic-regular, symmetric and affine families."""
    corpus: list[tuple[PermGroup, Permutation]] = []
    for d in composite_degrees(4, 28):
        corpus.append((permgroup.dihedral(d), full_cycle(d)))
    for d in composite_degrees(4, 30):
        corpus.append((permgroup.cyclic(d), full_cycle(d)))
    for d in [4, 6, 8, 9, 10]:
        corpus.append((permgroup.symmetric(d), full_cycle(d)))
    for d, s in [(9, 2), (15, 2), (16, 3), (21, 2), (25, 2), (27, 2), (33, 2), (49, 3), (55, 2), (100, 3)]:
        if d <= max_degree:
            corpus.append((permgroup.affine(d, s), full_cycle(d)))
    return [(G, g) for G, g in corpus if G.degree <= max_degree]


def run_cli(argv: list[str]) -> tuple[int, str]:
    """Run the CLI in-process, capturing stdout."""
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = cli.run(argv)
    return code, buffer.getvalue()


def masked_report_lines(text: str) -> list[str]:
    """JSON lines with the timing field zeroed, for determinism diffs."""
    out = []
    for line in text.splitlines():
        obj = json.loads(line)
        if "millis" in obj:
            obj["millis"] = 0
        out.append(json.dumps(obj, sort_keys=True))
    return out
