"""Ramanujan matrices: divisor-indexed tables of cyclotomic sums.

For d >= 1 let D be the sorted divisors of d.  The Ramanujan matrix R(d)
has rows and columns indexed by D, with

    R[r][c] = mu(r / g) * phi(r) / phi(r / g),   g = gcd(r, c),

which equals the sum of c-th powers of the primitive r-th roots of unity.
Two independent constructions are provided: `matrix_formula` evaluates the
closed form above, while `matrix_direct` sums roots of unity in exact
cyclotomic arithmetic and reduces; the two must agree entrywise.

Structural facts validated by `structure_identities`:
  * row 1 is constant equal to 1;
  * every column c < d sums to 0, and column d sums to d;
  * for d = p^n: det R = p^{n(n+1)/2}, the inverse is the half-turn
    rotation of R divided by p^n, and L @ R is upper triangular with
    L the all-ones lower triangular matrix.

All entries are exact integers (Python ints; entries are bounded by
phi(r) <= d, and the fraction-free determinant never leaves Z).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from . import cyclotomic
from .cyclotomic import PrimitiveClass, _factorize


@dataclass(frozen=True)
class DivisorData:
    """Divisors of n with their Moebius and totient values."""

    n: int
    divisors: tuple[int, ...]
    mobius: dict[int, int]
    totient: dict[int, int]


def divisor_data(n: int) -> DivisorData:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    factors = _factorize(n)
    divisors = [1]
    for p, e in factors:
        divisors = [d * p**k for d in divisors for k in range(e + 1)]
    divisors.sort()
    mobius = {}
    totient = {}
    for d in divisors:
        mu, phi = 1, 1
        for p, e in _factorize(d):
            mu = 0 if e > 1 else -mu
            phi *= (p - 1) * p ** (e - 1)
        mobius[d] = mu
        totient[d] = phi
    return DivisorData(n, tuple(divisors), mobius, totient)


@dataclass(frozen=True)
class RamanujanMatrix:
    d: int
    divisors: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]  # entries[i][j] for (divisors[i], divisors[j])

    def index(self, divisor: int) -> int:
        try:
            return self.divisors.index(divisor)
        except ValueError:
            raise ValueError(f"{divisor} is not a divisor of {self.d}") from None

    def entry(self, r: int, c: int) -> int:
        return self.entries[self.index(r)][self.index(c)]


def matrix_formula(d: int) -> RamanujanMatrix:
    """R(d) from the closed form; the division phi(r)/phi(r/g) is exact."""
    data = divisor_data(d)
    rows = []
    for r in data.divisors:
        row = []
        for c in data.divisors:
            g = math.gcd(r, c)
            q = r // g
            num = data.mobius[q] * data.totient[r]
            assert num % data.totient[q] == 0
            row.append(num // data.totient[q])
        rows.append(tuple(row))
    return RamanujanMatrix(d, data.divisors, tuple(rows))


def matrix_direct(d: int) -> RamanujanMatrix:
    """R(d) as literal root-of-unity sums, reduced in exact arithmetic.

    Entry (r, c) is sum of z_d^{i c} over the primitive-class indices i of
    order r.  Serves as the independent oracle for `matrix_formula`; raises
    if any sum fails to reduce to a rational integer.
    """
    data = divisor_data(d)
    rows = []
    for r in data.divisors:
        base = cyclotomic.from_indices(d, PrimitiveClass(d, r).elements)
        row = []
        for c in data.divisors:
            value = cyclotomic.as_integer(cyclotomic.power_map(base, c))
            if value is None:
                raise ArithmeticError(
                    f"sum over primitive class ({d}, {r}) at column {c} "
                    "did not reduce to an integer"
                )
            row.append(value)
        rows.append(tuple(row))
    return RamanujanMatrix(d, data.divisors, tuple(rows))


def prime_power_entry(p: int, n: int, e: int, f: int) -> int:
    """Entry of R(p^n) in row p^e, column p^f.

    Piecewise: 0 below the first subdiagonal, -p^{e-1} on it, and
    (p-1)p^{e-1} on or above the diagonal; row e = 0 is constant 1.
    """
    if not (0 <= e <= n and 0 <= f <= n):
        raise ValueError(f"exponents ({e}, {f}) outside [0, {n}]")
    if e == 0:
        return 1
    if f < e - 1:
        return 0
    if f == e - 1:
        return -(p ** (e - 1))
    return (p - 1) * p ** (e - 1)


def tensor_check(d: int) -> bool:
    """True iff R(d) factors as the Kronecker product of its prime-power parts.

    Indexing uses the bijection rr' <-> (r, r') between divisors of d and
    pairs of divisors of the coprime prime-power factors, rather than any
    particular display ordering.
    """
    if d < 2:
        raise ValueError("tensor factorisation needs d >= 2")
    R = matrix_formula(d)
    parts = [(p, p**e) for p, e in _factorize(d)]
    factor_matrices = {q: matrix_formula(q) for _, q in parts}

    def split(m: int) -> tuple[int, ...]:
        return tuple(math.gcd(m, q) for _, q in parts)

    for r in R.divisors:
        rs = split(r)
        for c in R.divisors:
            cs = split(c)
            prod = 1
            for (_, q), rq, cq in zip(parts, rs, cs):
                prod *= factor_matrices[q].entry(rq, cq)
            if prod != R.entry(r, c):
                return False
    return True


def bareiss_determinant(mat: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [row[:] for row in mat]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                assert num % prev == 0
                m[i][j] = num // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class StructureReport:
    """Outcome of the structural identity checks for one degree."""

    d: int
    column_sums_ok: bool
    is_prime_power: bool
    determinant: int | None
    determinant_expected: int | None
    determinant_ok: bool | None
    rotation_inverse_ok: bool | None
    triangular_ok: bool | None
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def structure_identities(d: int) -> StructureReport:
    """Check the column-sum identity, and for prime powers the determinant,
    rotation-inverse and triangular-factorisation identities."""
    R = matrix_formula(d)
    k = len(R.divisors)
    failures: list[str] = []

    column_sums_ok = True
    for j, c in enumerate(R.divisors):
        s = sum(R.entries[i][j] for i in range(k))
        want = d if c == d else 0
        if s != want:
            column_sums_ok = False
            failures.append(f"column sum at divisor {c}: got {s}, want {want}")

    split = cyclotomic.prime_power_split(d)
    det = det_expected = None
    det_ok = rot_ok = tri_ok = None
    if split is not None:
        p, n = split
        det = bareiss_determinant([list(row) for row in R.entries])
        det_expected = p ** (n * (n + 1) // 2)
        det_ok = det == det_expected
        if not det_ok:
            failures.append(f"determinant: got {det}, want {det_expected}")

        # R times its half-turn rotation must be p^n * identity
        rot = [
            [R.entries[k - 1 - i][k - 1 - j] for j in range(k)] for i in range(k)
        ]
        rot_ok = True
        for i in range(k):
            for j in range(k):
                s = sum(R.entries[i][t] * rot[t][j] for t in range(k))
                want = d if i == j else 0
                if s != want:
                    rot_ok = False
                    failures.append(f"rotation inverse at ({i}, {j}): {s} != {want}")

        # all-ones lower triangular L: L @ R is upper triangular with
        # row e equal to p^e on and above the diagonal
        tri_ok = True
        for e in range(k):
            for f in range(k):
                s = sum(R.entries[t][f] for t in range(e + 1))
                want = p**e if f >= e else 0
                if s != want:
                    tri_ok = False
                    failures.append(f"triangular factor at ({e}, {f}): {s} != {want}")

    return StructureReport(
        d=d,
        column_sums_ok=column_sums_ok,
        is_prime_power=split is not None,
        determinant=det,
        determinant_expected=det_expected,
        determinant_ok=det_ok,
        rotation_inverse_ok=rot_ok,
        triangular_ok=tri_ok,
        failures=tuple(failures),
    )


# ---------------------------------------------------------------------------
# export formats


def to_csv(R: RamanujanMatrix) -> str:
    lines = ["divisor," + ",".join(str(c) for c in R.divisors)]
    for r, row in zip(R.divisors, R.entries):
        lines.append(str(r) + "," + ",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def to_json_dict(R: RamanujanMatrix) -> dict:
    return {
        "d": R.d,
        "divisors": list(R.divisors),
        "entries": [list(row) for row in R.entries],
    }


def to_json(R: RamanujanMatrix) -> str:
    return json.dumps(to_json_dict(R), separators=(",", ":"))
