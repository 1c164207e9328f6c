from collections import deque

import pytest

from burnside import permgroup as pg
from helpers import cyclic_regular_corpus, full_cycle


def closure(gens, degree, cap=100_000):
    elems = {pg.identity(degree).images}
    queue = deque([pg.identity(degree)])
    while queue:
        h = queue.popleft()
        for g in gens:
            nxt = pg.compose(h, g)
            if nxt.images not in elems:
                elems.add(nxt.images)
                assert len(elems) <= cap
                queue.append(nxt)
    return elems


class TestBasics:
    def test_compose_inverse(self):
        g = full_cycle(4)
        assert pg.compose(g, pg.inverse(g)).images == (0, 1, 2, 3)

    def test_cycle_wraps(self):
        assert pg.cycle([0, 1, 2, 3], 4)[3] == 0

    def test_cycle_power_order(self):
        g = full_cycle(7)
        h = g
        for _ in range(6):
            h = pg.compose(h, g)
        assert h.images == tuple(range(7))

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            pg.compose(full_cycle(4), full_cycle(5))

    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            pg.Permutation((0, 0, 1))

    def test_parse_and_str(self):
        perm = pg.parse_permutation("(0,1,2,3)(4,5)", 6)
        assert perm.images == (1, 2, 3, 0, 5, 4)
        assert str(perm) == "(0,1,2,3)(4,5)"
        assert pg.parse_permutation("()", 3).images == (0, 1, 2)
        with pytest.raises(ValueError):
            pg.parse_permutation("(0,1", 3)
        with pytest.raises(ValueError):
            pg.parse_permutation("(0,5)", 3)

    def test_parse_generators_infers_degree(self):
        gens = pg.parse_generators("(0,1,2,3)(4,5);(0,4)")
        assert gens[0].degree == 6 and len(gens) == 2


class TestOrbits:
    def test_two_orbits(self):
        G = pg.PermGroup(4, (pg.parse_permutation("(0,1)(2,3)", 4),))
        assert pg.orbits(G) == [[0, 1], [2, 3]]

    def test_cycle_transitive(self):
        assert pg.is_transitive(pg.cyclic(9))

    def test_trivial_group_singletons(self):
        G = pg.PermGroup(3, (pg.identity(3),))
        assert pg.orbits(G) == [[0], [1], [2]]


class TestSuborbits:
    @pytest.mark.parametrize("d", [2, 3, 5, 8])
    def test_symmetric(self, d):
        assert pg.suborbits(pg.symmetric(d)) == [[0], list(range(1, d))]

    def test_dihedral4(self):
        assert pg.suborbits(pg.dihedral(4)) == [[0], [1, 3], [2]]

    def test_wreath_25(self):
        subs = pg.suborbits(pg.wreath_product_action(5).group)
        assert sorted(len(s) for s in subs) == [1, 8, 16]

    def test_requires_transitive(self):
        G = pg.PermGroup(4, (pg.parse_permutation("(0,1)(2,3)", 4),))
        with pytest.raises(ValueError):
            pg.suborbits(G)

    def test_sizes_sum_to_degree_on_corpus(self):
        for G, _ in cyclic_regular_corpus(40):
            subs = pg.suborbits(G)
            assert sum(len(s) for s in subs) == G.degree, G.name

    def test_agrees_with_stabiliser_orbits(self):
        # brute-force oracle: enumerate the group, form the stabiliser of 0,
        # and take its orbits directly
        small = [
            (G, g)
            for G, g in cyclic_regular_corpus(30)
            if G.name.startswith(("dihedral", "cyclic", "affine"))
        ] + [(pg.symmetric(d), full_cycle(d)) for d in (4, 5, 6)]
        for G, _ in small:
            elements = closure(G.generators, G.degree)
            stab = [e for e in elements if e[0] == 0]
            seen = set()
            orbits = []
            for x in range(G.degree):
                if x in seen:
                    continue
                orbit = {x}
                frontier = [x]
                while frontier:
                    y = frontier.pop()
                    for e in stab:
                        z = e[y]
                        if z not in orbit:
                            orbit.add(z)
                            frontier.append(z)
                seen |= orbit
                orbits.append(sorted(orbit))
            orbits.sort(key=lambda o: o[0])
            assert orbits == pg.suborbits(G), G.name


class TestTwoTransitivity:
    def test_examples(self):
        assert pg.is_2transitive(pg.symmetric(4))
        assert not pg.is_2transitive(pg.dihedral(5))
        assert not pg.is_2transitive(pg.wreath_product_action(5).group)


class TestBlocks:
    def test_dihedral6_antipodal(self):
        system = pg.minimal_blocks(pg.dihedral(6), 0, 3)
        assert sorted(map(tuple, system.blocks())) == [(0, 3), (1, 4), (2, 5)]
        assert system.block_size == 2 and system.block_count == 3

    def test_cyclic4(self):
        system = pg.minimal_blocks(pg.cyclic(4), 0, 2)
        assert sorted(map(tuple, system.blocks())) == [(0, 2), (1, 3)]

    def test_wreath_primitive(self):
        assert pg.is_primitive(pg.wreath_product_action(5).group)

    def test_dihedral_primitive_iff_prime_degree(self):
        for d in range(3, 31):
            is_prime = all(d % q for q in range(2, d))
            assert pg.is_primitive(pg.dihedral(d)) == is_prime, d

    def test_blocks_respected_by_generators(self):
        G = pg.dihedral(12)
        system = pg.minimal_blocks(G, 0, 4)
        for g in G.generators:
            for block in system.blocks():
                image = {g[x] for x in block}
                assert image in map(set, system.blocks())

    def test_rejects_equal_points(self):
        with pytest.raises(ValueError):
            pg.minimal_blocks(pg.cyclic(4), 1, 1)


class TestRegularCheck:
    def test_cycle_regular(self):
        for d in (3, 6, 10):
            assert pg.regular_check(d, [full_cycle(d)])

    def test_intransitive(self):
        assert not pg.regular_check(4, [pg.cycle([0, 1], 4)])

    def test_too_big(self):
        assert not pg.regular_check(4, list(pg.symmetric(4).generators))

    def test_embedded_product_in_wreath(self):
        W = pg.wreath_product_action(5)
        assert pg.regular_check(25, list(W.embedded_abelian))

    def test_c4_c2_c2(self):
        W = pg.wreath_product_action(4)
        gens = [
            W.embedded_abelian[0],
            pg.second_coordinate_perm(pg.parse_permutation("(0,1)(2,3)", 4), 4),
            pg.second_coordinate_perm(pg.parse_permutation("(0,2)(1,3)", 4), 4),
        ]
        assert pg.regular_check(16, gens)


class TestWreath:
    def test_degree_and_transitivity(self):
        W = pg.wreath_product_action(3)
        assert W.group.degree == 9
        assert pg.is_transitive(W.group)

    def test_order_72_at_d3(self):
        assert len(closure(pg.wreath_product_action(3).group.generators, 9)) == 72

    def test_swap_involution(self):
        tau = pg.coordinate_swap(4)
        assert pg.compose(tau, tau).images == tuple(range(16))

    def test_pair_encoding(self):
        assert pg.pair_code(2, 3, 5) == 13

    def test_standard_groups_map(self):
        families = pg.standard_groups(4)
        assert set(families) == {"cyclic", "dihedral", "symmetric", "wreath"}
        assert families["wreath"].degree == 16


class TestAffine:
    def test_multiplier_must_be_unit(self):
        with pytest.raises(ValueError):
            pg.affine(9, 3)

    def test_order(self):
        G = pg.affine(9, 2)
        assert len(closure(G.generators, 9)) == 54  # 9 * ord(2 mod 9)
