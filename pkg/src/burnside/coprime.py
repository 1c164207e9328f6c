"""Divisor partitions from Ramanujan row sums, and the exhaustive verifier.

For a row subset E of the Ramanujan matrix R(d), the profile of a column
c in D \\ {d} is sum_{r in E} R[r][c].  Columns with equal profiles are
equivalent; the resulting partition is *coprime* when every class has
gcd 1.  The conjecture under test: for even d and E containing 2, the
partition is coprime exactly when E is D or D \\ {1}.

The verifier enumerates every E containing {1, 2}.  Dropping the
complementary half of the space is sound because row 1 of R(d) is
constant, so adding divisor 1 to E shifts every profile equally and
leaves the partition unchanged; under this convention the two conjectured
solutions collapse to the single full mask.  The scan walks the subsets
in Gray-code order, so each step adds or removes one row of the matrix;
steps are batched as cumulative sums over numpy blocks.  Profile values
are bounded by sum_{r|d} phi(r) = d, far inside int64.

A coprime partition is detected per prime q dividing d: some class lies
entirely inside the q-divisible columns iff some q-divisible column's
profile matches no q-free column.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .ramanujan import RamanujanMatrix, matrix_formula
from .cyclotomic import _factorize, prime_power_split

_BLOCK_BITS = 16
MAX_DIVISOR_BITS = 64  # subset masks are machine-word bitmasks


@dataclass(frozen=True)
class RowSubset:
    """A subset of the divisor rows of R(d), stored as a bitmask over the
    ascending divisor list."""

    d: int
    mask: int

    def divisors(self) -> tuple[int, ...]:
        divs = matrix_formula(self.d).divisors
        return tuple(r for i, r in enumerate(divs) if self.mask >> i & 1)

    @classmethod
    def from_divisors(cls, d: int, rows) -> "RowSubset":
        divs = matrix_formula(d).divisors
        mask = 0
        for r in rows:
            try:
                mask |= 1 << divs.index(r)
            except ValueError:
                raise ValueError(f"{r} is not a divisor of {d}") from None
        return cls(d, mask)


@dataclass(frozen=True)
class DivisorPartition:
    """Partition of D \\ {d} by equal profiles, with the profile map."""

    d: int
    classes: tuple[tuple[int, ...], ...]
    profile: dict[int, int]


def _group_by_profile(columns: tuple[int, ...], profile: dict[int, int]):
    groups: dict[int, list[int]] = {}
    for c in columns:
        groups.setdefault(profile[c], []).append(c)
    classes = tuple(tuple(sorted(g)) for g in groups.values())
    return tuple(sorted(classes, key=lambda cl: cl[0]))


def partition_for(R: RamanujanMatrix, E: RowSubset) -> DivisorPartition:
    """Partition of the proper divisors by the row sums over E."""
    if E.mask == 0:
        raise ValueError("row subset must be nonempty")
    if E.d != R.d:
        raise ValueError("row subset and matrix degree differ")
    rows = [i for i in range(len(R.divisors)) if E.mask >> i & 1]
    columns = R.divisors[:-1]
    profile = {
        c: sum(R.entries[i][j] for i in rows) for j, c in enumerate(columns)
    }
    return DivisorPartition(R.d, _group_by_profile(columns, profile), profile)


def partition_mod(R: RamanujanMatrix, E: RowSubset, modulus: int) -> DivisorPartition:
    """Same relation, but profiles compared modulo `modulus`.

    Restricted to degrees d = 2 p^n with p an odd prime, the setting in
    which the modular refinement is meaningful, and modulus p^n or p^{n-1}.
    """
    half = prime_power_split(R.d // 2) if R.d % 2 == 0 else None
    if half is None or half[0] == 2:
        raise ValueError(f"degree {R.d} is not of the form 2*p^n with p odd")
    p, n = half
    if modulus not in (p**n, p ** (n - 1)):
        raise ValueError(f"modulus must be {p**n} or {p**(n-1)}")
    plain = partition_for(R, E)
    profile = {c: v % modulus for c, v in plain.profile.items()}
    columns = R.divisors[:-1]
    return DivisorPartition(R.d, _group_by_profile(columns, profile), profile)


def is_coprime(P: DivisorPartition) -> bool:
    """True iff every class of the partition has gcd 1."""
    return all(math.gcd(*cl) == 1 if len(cl) > 1 else cl[0] == 1 for cl in P.classes)


@dataclass(frozen=True)
class ConjectureReport:
    d: int
    divisor_count: int
    subsets_scanned: int
    coprime_masks: tuple[tuple[int, ...], ...]  # each as a divisor tuple
    holds: bool
    millis: int
    error: str = ""

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "divisors": self.divisor_count,
            "subsets_scanned": self.subsets_scanned,
            "coprime": [list(m) for m in self.coprime_masks],
            "verdict": "holds" if self.holds else "fails",
            "millis": self.millis,
            **({"error": self.error} if self.error else {}),
        }


def subset_profile(R: RamanujanMatrix, mask: int) -> list[int]:
    """Profile vector over D \\ {d}, recomputed from scratch for a bitmask.

    Reference implementation used to cross-check the incremental scan.
    """
    k = len(R.divisors)
    rows = [i for i in range(k) if mask >> i & 1]
    return [sum(R.entries[i][j] for i in rows) for j in range(k - 1)]


def gray_mask(t: int) -> int:
    """The t-th bitmask in standard reflected Gray order."""
    return t ^ (t >> 1)


def _scan_gray_blocks(C_free: np.ndarray, base: np.ndarray, coprime_test):
    """Yield (t0, coprime_boolean_block) over the whole Gray walk.

    C_free holds one row per free divisor; the profile at counter t is
    base + the rows selected by gray_mask(t).  Within a block the profiles
    are produced by a cumulative sum of single-row flips, which is exactly
    the one-row-per-step incremental update, batched.
    """
    f = len(C_free)
    total = 1 << f
    width = base.shape[0]
    block = 1 << _BLOCK_BITS
    prev = base.copy()  # profile at the last counter of the previous block
    for t0 in range(0, total, block):
        t1 = min(t0 + block, total)
        ts = np.arange(max(t0, 1), t1, dtype=np.int64)  # no flip leads to t=0
        if ts.size:
            low = ts & -ts
            bits = np.log2(low.astype(np.float64)).astype(np.int64)
            gs = ts ^ (ts >> 1)
            signs = np.where((gs >> bits) & 1, 1, -1).astype(np.int64)
            deltas = C_free[bits] * signs[:, None]
            np.cumsum(deltas, axis=0, out=deltas)
        else:
            deltas = np.zeros((0, width), dtype=np.int64)
        if t0 == 0:
            profiles = np.empty((t1, width), dtype=np.int64)
            profiles[0] = prev
            profiles[1:] = prev + deltas
        else:
            profiles = prev + deltas
        yield t0, coprime_test(profiles)
        prev = profiles[-1].copy()


def verify_degree(d: int) -> ConjectureReport:
    """Exhaustively test the conjecture at one even degree.

    Scans all 2^(|D|-2) row subsets containing {1, 2} and records every
    coprime partition found; the verdict holds iff the only coprime subset
    is the full divisor set.
    """
    if d < 2 or d % 2:
        raise ValueError(f"degree must be even and >= 2, got {d}")
    start = time.perf_counter()
    R = matrix_formula(d)
    divs = R.divisors
    k = len(divs)
    if k > MAX_DIVISOR_BITS:
        raise ValueError(f"{d} has {k} divisors, beyond the mask width")
    # Row for divisor 1 must be constant: this is what lets the scan fix
    # 1 in E without losing any partitions.
    assert all(v == 1 for v in R.entries[0]), "row 1 of R(d) is not constant"

    entries = np.array(R.entries, dtype=np.int64)
    columns = entries[:, : k - 1]  # D \ {d}
    base = columns[0] + columns[1]  # rows for divisors 1 and 2
    C_free = columns[2:]
    col_divs = np.array(divs[: k - 1], dtype=np.int64)

    primes = [p for p, _ in _factorize(d)]
    tests = []
    for q in primes:
        A = np.nonzero(col_divs % q == 0)[0]
        B = np.nonzero(col_divs % q != 0)[0]
        if A.size:
            tests.append((A, B))

    def coprime_test(profiles: np.ndarray) -> np.ndarray:
        ok = np.ones(profiles.shape[0], dtype=bool)
        for A, B in tests:
            qfree = profiles[:, B]
            for a in A:
                ok &= (qfree == profiles[:, a : a + 1]).any(axis=1)
                if not ok.any():
                    return ok
        return ok

    hits: list[int] = []
    total = 1 << (k - 2)
    for t0, good in _scan_gray_blocks(C_free, base, coprime_test):
        for offset in np.nonzero(good)[0]:
            hits.append(t0 + int(offset))

    hits.sort()
    masks = []
    for t in hits:
        g = gray_mask(t)
        mask = 0b11 | (g << 2)
        masks.append(tuple(r for i, r in enumerate(divs) if mask >> i & 1))
    full = tuple(divs)
    holds = masks == [full]
    millis = int((time.perf_counter() - start) * 1000)
    return ConjectureReport(d, k, total, tuple(masks), holds, millis)


def _verify_degree_guarded(d: int) -> ConjectureReport:
    try:
        return verify_degree(d)
    except Exception as exc:  # surfaced per degree without killing the sweep
        return ConjectureReport(d, 0, 0, (), False, 0, error=str(exc))


def iter_verify_range(d_max: int, jobs: int = 1):
    """Yield verify_degree reports for every even d <= d_max, in degree order.

    Reports stream as degrees complete (worker pool when jobs > 1), so a
    long sweep can be monitored line by line; the sequence is independent
    of the worker count.
    """
    if d_max < 2:
        raise ValueError(f"d_max must be at least 2, got {d_max}")
    degrees = list(range(2, d_max + 1, 2))
    if jobs <= 1:
        for d in degrees:
            yield _verify_degree_guarded(d)
        return
    import multiprocessing

    with multiprocessing.Pool(jobs) as pool:
        yield from pool.imap(_verify_degree_guarded, degrees, chunksize=1)


def verify_range(d_max: int, jobs: int = 1) -> list[ConjectureReport]:
    """verify_degree for every even d <= d_max, as a degree-ordered list."""
    return list(iter_verify_range(d_max, jobs=jobs))
