"""Brute-force enumeration and classification of cyclotomic-sum solution sets.

Fix a prime power p^n with n >= 2, let z be a primitive p^n-th root of
unity and w = z^{p^{n-1}} (a primitive p-th root).  A set O inside
{1..p^n-1} is a *solution* when

    sum_{i in O} z^i  =  sum_{i in O} w^i ,

tested exactly in the group ring.  Solutions are classified into two
families built from the progression sets R(r) = {r, r+p^{n-1}, ...}:

  * balanced ("null") sets: disjoint unions of full progressions using
    equally many residues r = 0, 1, ..., p-1 mod p;
  * layered sets: the whole top layer {p^{n-1}, ..., (p-1)p^{n-1}}, one
    extra progression per nonzero residue, and a balanced remainder.

The smallest nonempty solution always has size p^2 - 1 (a layered set
with empty remainder); for n >= 3 this is strictly smaller than the full
set, so a solver that assumes |O| = p^n - 1 is the only solution is wrong
for every such modulus.

Enumeration sweeps all 2^(p^n - 1) subsets in Gray-code order while
maintaining the difference of the two sums as its exact canonical vector
(reduction mod Phi is linear, so one flip updates the reduced vector by a
precomputed row); steps are batched as numpy cumulative sums.  The choice
w = z^{p^{n-1}} (rather than another primitive p-th root) is harmless:
other choices are reached by the exponent scalings i -> s*i with
s = 1 mod p, and the solution family is closed under those maps, which
the test suite checks.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import numpy as np

from . import cyclotomic
from .cyclotomic import CycSum, ProgressionSet, prime_power_split

_BLOCK_BITS = 16
MAX_MODULUS = 27  # 2^(p^n - 1) subsets; keep the sweep at desk scale


def _check_modulus(p: int, n: int, enforce_bound: bool = False) -> int:
    if prime_power_split(p) != (p, 1):
        raise ValueError(f"{p} is not prime")
    if n < 2:
        raise ValueError("need exponent n >= 2")
    N = p**n
    if enforce_bound and N > MAX_MODULUS:
        raise ValueError(f"modulus {N} exceeds the sweep bound {MAX_MODULUS}")
    return N


@dataclass(frozen=True)
class IndexSet:
    """A subset of {1..p^n-1}, stored as a bitmask (bit i <=> element i)."""

    p: int
    n: int
    mask: int

    def __post_init__(self) -> None:
        N = _check_modulus(self.p, self.n)
        if self.mask & 1 or self.mask >> N:
            raise ValueError("members must lie in {1..p^n-1}")

    @classmethod
    def from_members(cls, p: int, n: int, members) -> "IndexSet":
        mask = 0
        for i in members:
            mask |= 1 << i
        return cls(p, n, mask)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.p**self.n) if self.mask >> i & 1)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")


def paired_sums(O: IndexSet) -> tuple[CycSum, CycSum]:
    """The z-side and w-side sums of O as formal vectors of order p^n."""
    N = O.p**O.n
    step = O.p ** (O.n - 1)
    members = O.members
    zside = cyclotomic.from_indices(N, members)
    wside = cyclotomic.from_indices(N, [(i * step) % N for i in members])
    return zside, wside


def is_solution(O: IndexSet) -> bool:
    """Exact test: the difference of the two sums reduces to zero."""
    zside, wside = paired_sums(O)
    return cyclotomic.is_zero(cyclotomic.combine(zside, wside, 1, -1))


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class NullCertificate:
    """Witness that a set is a balanced union of progressions.

    grid[i] lists the s progression residues congruent to i mod p; all
    p*s residues are distinct and each contributes its full progression.
    """

    p: int
    n: int
    s: int
    grid: tuple[tuple[int, ...], ...]

    def members(self) -> tuple[int, ...]:
        out: set[int] = set()
        for row in self.grid:
            for r in row:
                out.update(ProgressionSet(self.p, self.n, r).elements)
        return tuple(sorted(out))


NULL = "null"
LAYERED = "layered"
NOT_SOLUTION = "not_solution"


@dataclass(frozen=True)
class SolutionClass:
    """Classification outcome: a balanced set, a layered set, or neither.

    For `layered`, residue_reps holds the designated progression residues
    r_1 < ... indexed by their residue class 1..p-1, and remainder is the
    certificate of the balanced rest.  For `null`, remainder certifies the
    set itself.
    """

    kind: str
    residue_reps: tuple[int, ...] | None = None
    remainder: NullCertificate | None = None


def _progression_decomposition(O: IndexSet) -> list[int] | None:
    """Residues r whose full progressions tile O, or None if O is not a
    disjoint union of full progressions (top-layer elements also fail)."""
    N = O.p**O.n
    step = O.p ** (O.n - 1)
    members = set(O.members)
    if any(i % step == 0 for i in members):
        return None
    used = []
    covered: set[int] = set()
    for r in range(1, step):
        elems = set(ProgressionSet(O.p, O.n, r).elements)
        inter = members & elems
        if not inter:
            continue
        if inter != elems:
            return None
        used.append(r)
        covered |= elems
    return used if covered == members else None


def is_null(Z: IndexSet) -> NullCertificate | None:
    """Certificate that Z is balanced, or None.

    Z must decompose into full progressions whose residues hit every
    class mod p equally often.
    """
    residues = _progression_decomposition(Z)
    if residues is None:
        return None
    rows: list[list[int]] = [[] for _ in range(Z.p)]
    for r in residues:
        rows[r % Z.p].append(r)
    counts = {len(row) for row in rows}
    if len(counts) != 1:
        return None
    s = counts.pop()
    return NullCertificate(Z.p, Z.n, s, tuple(tuple(sorted(row)) for row in rows))


def classify(O: IndexSet) -> SolutionClass:
    """Match O against the two solution families."""
    cert = is_null(O)
    if cert is not None:
        return SolutionClass(NULL, remainder=cert)

    p, n = O.p, O.n
    N = p**n
    step = p ** (n - 1)
    members = set(O.members)
    top = set(range(step, N, step))
    if not top <= members:
        return SolutionClass(NOT_SOLUTION)
    rest = IndexSet.from_members(p, n, members - top)
    residues = _progression_decomposition(rest)
    if residues is None:
        return SolutionClass(NOT_SOLUTION)
    rows: list[list[int]] = [[] for _ in range(p)]
    for r in residues:
        rows[r % p].append(r)
    s = len(rows[0])
    if any(len(rows[i]) != s + 1 for i in range(1, p)):
        return SolutionClass(NOT_SOLUTION)
    reps = tuple(min(rows[i]) for i in range(1, p))
    grid = [tuple(sorted(rows[0]))]
    for i in range(1, p):
        grid.append(tuple(sorted(set(rows[i]) - {reps[i - 1]})))
    remainder = NullCertificate(p, n, s, tuple(grid))
    return SolutionClass(LAYERED, residue_reps=reps, remainder=remainder)


def null_set(cert: NullCertificate) -> IndexSet:
    return IndexSet.from_members(cert.p, cert.n, cert.members())


def layered_set(
    p: int, n: int, reps: tuple[int, ...], remainder: NullCertificate
) -> IndexSet:
    N = p**n
    step = p ** (n - 1)
    members = set(range(step, N, step))
    for r in reps:
        members.update(ProgressionSet(p, n, r).elements)
    members.update(remainder.members())
    return IndexSet.from_members(p, n, members)


# ---------------------------------------------------------------------------
# exhaustive enumeration


def _flip_rows(p: int, n: int) -> np.ndarray:
    """Canonical vector of z^i - w^i for each element i, as int16 rows."""
    N = p**n
    step = p ** (n - 1)
    rows = []
    for i in range(1, N):
        diff = cyclotomic.combine(
            cyclotomic.from_indices(N, [i]),
            cyclotomic.from_indices(N, [(i * step) % N]),
            1,
            -1,
        )
        rows.append(cyclotomic.reduced_coeffs(diff))
    arr = np.array(rows, dtype=np.int64)
    assert np.abs(arr).max() < 2**14  # entries are O(p); int16 is ample
    return arr.astype(np.int16)


def _scan_range(p: int, n: int, t_start: int, t_stop: int) -> list[int]:
    """Gray-walk the subset counters [t_start, t_stop) and return the
    counters whose running difference vector is exactly zero."""
    rows = _flip_rows(p, n)
    width = rows.shape[1]
    hits: list[int] = []
    # seed: reduced difference of the subset at t_start
    g0 = t_start ^ (t_start >> 1)
    prev = np.zeros(width, dtype=np.int16)
    for b in range(rows.shape[0]):
        if g0 >> b & 1:
            prev = prev + rows[b]
    block = 1 << _BLOCK_BITS
    for t0 in range(t_start, t_stop, block):
        t1 = min(t0 + block, t_stop)
        # prev is the profile at t0 for the seeded first block, and at
        # t0 - 1 afterwards; the flip range starts accordingly
        ts = np.arange(t0 + 1 if t0 == t_start else t0, t1, dtype=np.int64)
        if ts.size:
            low = ts & -ts
            bits = np.log2(low.astype(np.float64)).astype(np.int64)
            gs = ts ^ (ts >> 1)
            signs = np.where((gs >> bits) & 1, 1, -1).astype(np.int16)
            deltas = rows[bits] * signs[:, None]
            np.cumsum(deltas, axis=0, out=deltas)
        else:
            deltas = np.zeros((0, width), dtype=np.int16)
        if t0 == t_start:
            profiles = np.empty((t1 - t0, width), dtype=np.int16)
            profiles[0] = prev
            profiles[1:] = prev + deltas
        else:
            profiles = prev + deltas
        zero = ~profiles.any(axis=1)
        for offset in np.nonzero(zero)[0]:
            hits.append(t0 + int(offset))
        prev = profiles[-1].copy()
    return hits


def _scan_worker(args) -> list[int]:
    return _scan_range(*args)


def enumerate_solutions(p: int, n: int, jobs: int = 1) -> list[IndexSet]:
    """All solution sets for the modulus p^n, sorted by bitmask.

    Sweeps every subset of {1..p^n-1}; with jobs > 1 the counter range is
    split into contiguous chunks with independently seeded Gray walks and
    the merged result is identical to the serial one.
    """
    N = _check_modulus(p, n, enforce_bound=True)
    total = 1 << (N - 1)
    if jobs <= 1:
        counters = _scan_range(p, n, 0, total)
    else:
        bounds = [total * i // jobs for i in range(jobs + 1)]
        chunks = [
            (p, n, bounds[i], bounds[i + 1])
            for i in range(jobs)
            if bounds[i] < bounds[i + 1]
        ]
        import multiprocessing

        with multiprocessing.Pool(min(jobs, len(chunks))) as pool:
            counters = [t for part in pool.map(_scan_worker, chunks) for t in part]
    masks = sorted((t ^ (t >> 1)) << 1 for t in counters)
    return [IndexSet(p, n, m) for m in masks]


def enumerate_certificates(p: int, n: int):
    """All balanced certificates and all layered configurations for p^n.

    Independent of the sweep: generated combinatorially from the
    progression residues.  Returns (null_certs, layered_configs) with
    layered_configs a list of (residue_reps, remainder_certificate).
    """
    _check_modulus(p, n)
    step = p ** (n - 1)
    classes: list[list[int]] = [[] for _ in range(p)]
    for r in range(1, step):
        classes[r % p].append(r)

    def certs_from(avail: list[list[int]]):
        out = []
        for s in range(min(len(c) for c in avail) + 1):
            for combo in itertools.product(
                *(itertools.combinations(c, s) for c in avail)
            ):
                out.append(NullCertificate(p, n, s, tuple(combo)))
        return out

    null_certs = certs_from(classes)
    layered = []
    for reps in itertools.product(*(classes[i] for i in range(1, p))):
        remaining = [classes[0]] + [
            [r for r in classes[i] if r != reps[i - 1]] for i in range(1, p)
        ]
        for cert in certs_from(remaining):
            layered.append((reps, cert))
    return null_certs, layered


@dataclass(frozen=True)
class ClassificationReport:
    p: int
    n: int
    subsets_scanned: int
    solution_count: int
    all_classified: bool
    constructed_match: bool
    smallest_nonempty: int | None
    smallest_expected: int
    small_witness_ok: bool
    refutes_unique_solution: bool | None  # n >= 3: a solution smaller than p^n - 1
    millis: int

    @property
    def ok(self) -> bool:
        return (
            self.all_classified
            and self.constructed_match
            and self.small_witness_ok
            and self.refutes_unique_solution is not False
        )


def verify_classification(p: int, n: int, jobs: int = 1) -> ClassificationReport:
    """Run the sweep and check it against the structural classification.

    (a) every enumerated solution classifies as balanced or layered;
    (b) the sets built from all certificates are exactly the enumerated
        solutions (so every certificate also *is* a solution);
    (c) the smallest nonempty solution has size p^2 - 1, and for n >= 3
        that is strictly below p^n - 1.
    """
    start = time.perf_counter()
    N = _check_modulus(p, n, enforce_bound=True)
    sols = enumerate_solutions(p, n, jobs=jobs)
    all_classified = all(classify(O).kind != NOT_SOLUTION for O in sols)

    null_certs, layered = enumerate_certificates(p, n)
    constructed = {null_set(c).mask for c in null_certs}
    constructed.update(layered_set(p, n, reps, cert).mask for reps, cert in layered)
    constructed_match = constructed == {O.mask for O in sols}

    sizes = sorted(O.size for O in sols if O.mask)
    smallest = sizes[0] if sizes else None
    expected = p * p - 1
    small_ok = smallest == expected
    refutes = (smallest is not None and smallest < N - 1) if n >= 3 else None
    millis = int((time.perf_counter() - start) * 1000)
    return ClassificationReport(
        p=p,
        n=n,
        subsets_scanned=1 << (N - 1),
        solution_count=len(sols),
        all_classified=all_classified,
        constructed_match=constructed_match,
        smallest_nonempty=smallest,
        smallest_expected=expected,
        small_witness_ok=small_ok,
        refutes_unique_solution=refutes,
        millis=millis,
    )
