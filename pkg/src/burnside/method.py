"""The character-free suborbit-sum pipeline for groups with a regular
cyclic (or small abelian) subgroup.

Setting: G is transitive on {0..d-1} and g in G is a d-cycle.  After
relabelling points by powers of g, the vectors v_j = sum_i z^{-ij} e_i
(z a primitive d-th root of unity) are a simultaneous eigenbasis for g,
and the natural permutation module splits uniquely into irreducible
summands each spanned by some of the v_j.  Writing O for an orbit of the
stabiliser of 0, the indicator sums

    sums[O][j] = sum_{i in O} z^{ij}

are constant for j inside each summand's index set.  The index partition
is recovered here as the equality classes of the columns of that sum
matrix: the number of distinct columns can never exceed the suborbit
count, while the number of summands equals the suborbit count (the
permutation character is multiplicity free), so the column classes and
the summand index sets coincide.  This rank argument is the one piece of
justification that is ours rather than classical; the wreath-action
examples below validate it against independently known basis sets.

(The orthogonality expansion e_i = (1/d) sum_j z^{ij} v_j is used
implicitly; the 1/d normalisation is the only sensible one even though
sources sometimes misprint the factor.)

The pair variants handle a regular product C_da x C_db inside a group on
da*db points, with sums valued in Z[z_L], L = lcm(da, db).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import cyclotomic, permgroup
from .cyclotomic import CycSum, PrimitiveClass
from .permgroup import BlockSystem, PermGroup, Permutation, WreathAction
from .ramanujan import divisor_data
from .coprime import RowSubset


def relabel_by_cycle(G: PermGroup, g: Permutation) -> tuple[PermGroup, tuple[int, ...]]:
    """Relabel points so the given d-cycle becomes (0,1,...,d-1).

    Returns the relabelled group and the map new_label -> old_point.
    """
    d = G.degree
    if g.degree != d:
        raise ValueError("cycle degree differs from group degree")
    order_pts = [0]
    x = g[0]
    while x != 0:
        order_pts.append(x)
        x = g[x]
    if len(order_pts) != d:
        raise ValueError("the supplied permutation is not a d-cycle")
    new_of_old = {old: new for new, old in enumerate(order_pts)}
    gens = tuple(
        Permutation(tuple(new_of_old[gen[order_pts[i]]] for i in range(d)))
        for gen in G.generators
    )
    return PermGroup(d, gens, name=G.name), tuple(order_pts)


@dataclass(frozen=True)
class SuborbitSumMatrix:
    """Reduced cyclotomic sums indexed by (suborbit, exponent column)."""

    d: int
    suborbits: tuple[tuple[int, ...], ...]
    reduced: tuple[tuple[tuple[int, ...], ...], ...]  # [orbit][j] -> canonical coeffs
    relabelling: tuple[int, ...]  # new label -> original point

    def sum(self, orbit_index: int, j: int) -> CycSum:
        phi = len(self.reduced[orbit_index][j])
        coeffs = self.reduced[orbit_index][j] + (0,) * (self.d - phi)
        return CycSum(self.d, coeffs)

    def column(self, j: int) -> tuple[tuple[int, ...], ...]:
        return tuple(row[j] for row in self.reduced)


def suborbit_sums(G: PermGroup, g: Permutation) -> SuborbitSumMatrix:
    """Indicator sums of every stabiliser orbit at every exponent.

    Points are relabelled so that g = (0,1,...,d-1); the relabelling is
    recorded in the result.
    """
    H, relab = relabel_by_cycle(G, g)
    d = H.degree
    subs = tuple(tuple(o) for o in permgroup.suborbits(H))
    rows = []
    for orbit in subs:
        row = []
        for j in range(d):
            s = cyclotomic.from_indices(d, [(i * j) % d for i in orbit])
            row.append(cyclotomic.reduced_coeffs(s))
        rows.append(tuple(row))
    return SuborbitSumMatrix(d, subs, tuple(rows), relab)


@dataclass(frozen=True)
class BasisPartition:
    """Partition of the exponent indices dual to the suborbits.

    `classes` partitions {0..d-1} (or the pair grid, for the two-generator
    variants); the class of the zero index is always the singleton {0}.
    """

    classes: tuple[tuple, ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    def class_of(self, j):
        for cl in self.classes:
            if j in cl:
                return cl
        raise KeyError(j)


def _classes_by_equal_columns(columns: dict) -> tuple[tuple, ...]:
    groups: dict = {}
    for j, col in columns.items():
        groups.setdefault(col, []).append(j)
    classes = tuple(tuple(sorted(g)) for g in groups.values())
    return tuple(sorted(classes, key=lambda cl: cl[0]))


def basis_partition(G: PermGroup, g: Permutation) -> BasisPartition:
    """Equality classes of the suborbit-sum columns."""
    M = suborbit_sums(G, g)
    columns = {j: M.column(j) for j in range(M.d)}
    return BasisPartition(_classes_by_equal_columns(columns))


# ---------------------------------------------------------------------------
# two-generator (pair) variants


def _coordinates(degree: int, a: Permutation, b: Permutation, da: int, db: int):
    """Exponent coordinates of every point with respect to the commuting
    pair (a, b), assuming <a> x <b> acts regularly from the point 0."""
    coords: dict[int, tuple[int, int]] = {}
    pt_x = 0
    for x in range(da):
        pt = pt_x
        for y in range(db):
            if pt in coords:
                raise ValueError("generator pair does not act regularly")
            coords[pt] = (x, y)
            pt = b[pt]
        pt_x = a[pt_x]
    if len(coords) != degree:
        raise ValueError("generator pair does not act regularly")
    return coords


def pair_suborbit_sums(
    G: PermGroup, a: Permutation, da: int, b: Permutation, db: int
):
    """Reduced sums sum_{(x,y) in O} z_L^{x j L/da + y j' L/db} on the
    (j, j') grid, L = lcm(da, db), for every stabiliser orbit O."""
    L = da * db // math.gcd(da, db)
    coords = _coordinates(G.degree, a, b, da, db)
    subs = tuple(tuple(o) for o in permgroup.suborbits(G))
    wa, wb = L // da, L // db
    rows = []
    for orbit in subs:
        row = {}
        pts = [coords[p] for p in orbit]
        for j in range(da):
            for jp in range(db):
                s = cyclotomic.from_indices(
                    L, [(x * j * wa + y * jp * wb) % L for x, y in pts]
                )
                row[(j, jp)] = cyclotomic.reduced_coeffs(s)
        rows.append(row)
    return subs, rows


def pair_basis_partition(
    G: PermGroup, a: Permutation, da: int, b: Permutation, db: int
) -> BasisPartition:
    subs, rows = pair_suborbit_sums(G, a, da, b, db)
    columns = {
        key: tuple(row[key] for row in rows) for key in rows[0]
    }
    return BasisPartition(_classes_by_equal_columns(columns))


def basis_partition_pair(
    W: WreathAction, generator_choice: str = "standard"
) -> BasisPartition:
    """Basis partition of the wreath product action over the (j, j') grid.

    generator_choice selects the generating pair of the embedded regular
    C_d x C_d: 'standard' uses the cycle on each coordinate separately;
    'manning' replaces the second generator by the simultaneous cycle on
    both coordinates, which relabels the grid and moves the middle class.
    """
    a, b = W.embedded_abelian
    if generator_choice == "standard":
        pair = (a, b)
    elif generator_choice == "manning":
        pair = (a, permgroup.compose(a, b))
    else:
        raise ValueError(f"unknown generator choice {generator_choice!r}")
    return pair_basis_partition(W.group, pair[0], W.d, pair[1], W.d)


@dataclass(frozen=True)
class ManningReport:
    """Invariance of the mixed basis class under index scalings."""

    d: int
    middle_class: tuple[tuple[int, int], ...]
    galois_invariant: bool  # under (j, j') -> (s j, s j'), gcd(s, d) = 1
    violation: tuple[tuple[int, int], tuple[int, int]] | None  # under (j, j') -> (j, -j')


def manning_invariance_check(d: int) -> ManningReport:
    """Check the two invariance claims for the mixed basis class.

    With the 'manning' generators the class containing (0, 1) is
    C = {(j, j)} u {(0, j')}.  C is invariant under the simultaneous
    scalings (j, j') -> (s j, s j'), but not under independent scalings:
    (j, j') -> (j, -j') moves (1, 1) out of C whenever d > 2.  The first
    returned witness pair demonstrates the failure; None when d = 2.
    """
    W = permgroup.wreath_product_action(d)
    B = basis_partition_pair(W, "manning")
    C = B.class_of((0, 1))
    members = set(C)

    galois_ok = True
    for s in range(1, d):
        if math.gcd(s, d) != 1:
            continue
        mapped = {((s * j) % d, (s * jp) % d) for j, jp in members}
        if mapped != members:
            galois_ok = False
            break

    violation = None
    for j, jp in sorted(members):
        image = (j, (-jp) % d)
        if image not in members:
            violation = ((j, jp), image)
            break
    return ManningReport(d, tuple(sorted(members)), galois_ok, violation)


# ---------------------------------------------------------------------------
# Galois action, divisor sets, imprimitivity prediction


def galois_orbit_action_check(G: PermGroup, g: Permutation) -> bool:
    """True iff every unit scaling i -> s*i permutes the suborbits setwise."""
    M = suborbit_sums(G, g)
    d = M.d
    original = {frozenset(o) for o in M.suborbits}
    for s in range(1, d):
        if math.gcd(s, d) != 1:
            continue
        mapped = {frozenset((s * i) % d for i in o) for o in original}
        if mapped != original:
            return False
    return True


@dataclass(frozen=True)
class OrbitRowReport:
    d: int
    orbit: tuple[int, ...]  # the stabiliser orbit containing d/2
    rows: RowSubset  # orders r with the primitive class of r inside the orbit
    decomposition_ok: bool  # orbit is exactly the union of those classes
    is_full_complement: bool  # rows = all divisors except 1
    two_transitive: bool
    equivalence_ok: bool  # (rows = D \ {1}) iff 2-transitive


def orbit_row_subset(G: PermGroup, g: Permutation) -> OrbitRowReport:
    """Decompose the stabiliser orbit containing d/2 into primitive classes.

    For even d the orbit through d/2 is a union of the Galois-orbit index
    sets of primitive r-th roots; the returned row subset collects those r.
    The group is 2-transitive exactly when every order except 1 occurs.
    A decomposition failure is reported rather than raised, since it would
    falsify the Galois-invariance of that orbit.
    """
    M = suborbit_sums(G, g)
    d = M.d
    if d % 2:
        raise ValueError("the half-degree orbit needs even degree")
    half = d // 2
    orbit = next(o for o in M.suborbits if half in o)
    members = set(orbit)
    divisors = divisor_data(d).divisors
    rows = []
    covered: set[int] = set()
    for r in divisors:
        elems = set(PrimitiveClass(d, r).elements)
        if elems <= members:
            rows.append(r)
            covered |= elems
    ok = covered == members
    full_complement = tuple(rows) == tuple(r for r in divisors if r != 1)
    two_t = len(M.suborbits) == 2
    return OrbitRowReport(
        d=d,
        orbit=orbit,
        rows=RowSubset.from_divisors(d, rows),
        decomposition_ok=ok,
        is_full_complement=full_complement,
        two_transitive=two_t,
        equivalence_ok=full_complement == two_t,
    )


@dataclass(frozen=True)
class BlockPrediction:
    d: int
    p: int
    predicted: bool
    witness_class: tuple[int, ...] | None  # a basis class with all indices divisible by p
    blocks: BlockSystem | None
    confirmed: bool | None  # a non-trivial system exists through (0, d/p)


def predict_blocks_from_basis(
    G: PermGroup, g: Permutation, p: int
) -> BlockPrediction:
    """Imprimitivity prediction from a p-divisible basis class.

    If some basis class other than {0} consists entirely of indices
    divisible by p, the group must preserve a non-trivial block system
    whose blocks are unions of orbits of g^{d/p}; the prediction is
    cross-checked by gluing the points 0 and d/p.
    """
    d = G.degree
    if d % p:
        raise ValueError(f"{p} does not divide the degree {d}")
    B = basis_partition(G, g)
    witness = None
    for cl in B.classes:
        if cl == (0,):
            continue
        if all(j % p == 0 for j in cl):
            witness = cl
            break
    if witness is None:
        return BlockPrediction(d, p, False, None, None, None)
    H, _ = relabel_by_cycle(G, g)
    system = permgroup.minimal_blocks(H, 0, d // p)
    return BlockPrediction(d, p, True, witness, system, not system.is_trivial)


@dataclass(frozen=True)
class CosetStructureReport:
    """How each basis class meets the cosets of <d/p> in Z/dZ."""

    d: int
    p: int
    per_class: tuple[tuple[tuple[int, ...], bool, tuple[int, ...]], ...]
    # (class, structure_ok, offsets of proper cosets met only partially)


def coset_structure_report(
    B: BasisPartition, d: int, p: int
) -> CosetStructureReport:
    """Report, per basis class, which cosets of <d/p> are empty, full or
    partial; the structural expectation is that proper cosets are never
    partial while the subgroup itself may contribute any subset.

    Analysis only: the expectation is a consequence of primitivity
    hypotheses, so on imprimitive inputs partial cosets are simply flagged.
    Requires composite, non-prime-power d.
    """
    if cyclotomic.prime_power_split(d) is not None or d < 2:
        raise ValueError("coset structure analysis needs composite non-prime-power degree")
    if d % p:
        raise ValueError(f"{p} does not divide {d}")
    step = d // p
    subgroup = set(range(0, d, step))
    results = []
    for cl in B.classes:
        members = set(cl)
        partial = []
        for offset in range(step):
            coset = {(offset + k * step) % d for k in range(p)}
            inter = members & coset
            if inter and inter != coset and offset != 0:
                partial.append(offset)
        results.append((cl, not partial, tuple(partial)))
    return CosetStructureReport(d, p, tuple(results))


# ---------------------------------------------------------------------------
# the dichotomy diagnosis


@dataclass(frozen=True)
class DiagnosisReport:
    degree: int
    group: str
    cycle: str
    verdict: str  # "imprimitive" | "two_transitive" | "counterexample"
    blocks: BlockSystem | None
    suborbits: tuple[tuple[int, ...], ...]
    basis_classes: tuple[tuple, ...]
    orbit_rows: OrbitRowReport | None
    relabelling: tuple[int, ...]


def diagnose(G: PermGroup, g: Permutation) -> DiagnosisReport:
    """Classify a transitive group of composite degree with a regular
    cyclic subgroup as imprimitive or 2-transitive.

    Any group for which neither holds is reported as a counterexample with
    full supporting data; no such group can contain a regular cyclic
    subgroup of composite order, so a counterexample verdict indicates a
    bug somewhere in this package.
    """
    d = G.degree
    if cyclotomic.prime_power_split(d) == (d, 1) or d < 4:
        raise ValueError(f"the dichotomy concerns composite degrees, got {d}")
    H, relab = relabel_by_cycle(G, g)
    M = suborbit_sums(G, g)
    B = basis_partition(G, g)
    orbit_rows = orbit_row_subset(G, g) if d % 2 == 0 else None

    blocks = None
    for beta in range(1, d):
        system = permgroup.minimal_blocks(H, 0, beta)
        if not system.is_trivial:
            blocks = system
            break
    if blocks is not None:
        verdict = "imprimitive"
    elif len(M.suborbits) == 2:
        verdict = "two_transitive"
    else:
        verdict = "counterexample"
    return DiagnosisReport(
        degree=d,
        group=G.name or "<unnamed>",
        cycle=str(g),
        verdict=verdict,
        blocks=blocks,
        suborbits=M.suborbits,
        basis_classes=B.classes,
        orbit_rows=orbit_rows,
        relabelling=relab,
    )
