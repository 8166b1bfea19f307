"""Cochain complex and cohomology of finite monoids.

Fixed small cases are checked against hand-computed differentials and
tables; group cases are checked against an unnormalized bar complex with
mod p linear algebra, which shares no code with the package.
"""

from __future__ import annotations

import pytest

from moncoh.abelian import AbHom, FgAbGroup, TRIVIAL_GROUP, Z, Zmod
from moncoh.coeff import constant_system, explicit_system, group_action_system
from moncoh.leech import (
    LeechComplex,
    cochain_group,
    coboundary,
    leech_cohomology,
    leech_cohomology_table,
)
from moncoh.monoid import cyclic_group, power_set_monoid, trivial_monoid, union_monoid

from catalog import (
    monogenic_three,
    negation_on_integers,
    small_monoids,
    swap_action_system,
    systems_for,
)
from oracles import bar_cohomology_dims_mod_p


def table_renders(groups):
    return [g.render() for g in groups]


class TestCochainGroups:
    def test_degree_zero_is_group_at_identity(self):
        m = union_monoid([{"x"}])
        c = explicit_system(
            m,
            [Z, Zmod(2)],
            {(0, 0): AbHom.identity(Z), (0, 1): AbHom.identity(Zmod(2)),
             (1, 0): AbHom(Z, Zmod(2), ((1,),)), (1, 1): AbHom.identity(Zmod(2))},
            {(0, 0): AbHom.identity(Z), (0, 1): AbHom.identity(Zmod(2)),
             (1, 0): AbHom(Z, Zmod(2), ((1,),)), (1, 1): AbHom.identity(Zmod(2))},
        )
        assert cochain_group(m, c, 0).total == Z
        assert cochain_group(m, c, 1).total == Zmod(2)

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_tuple_count_excludes_identity(self, n):
        m = power_set_monoid(2)
        c = constant_system(m, Zmod(2))
        cg = cochain_group(m, c, n)
        assert len(cg.tuples) == (m.size - 1) ** n
        assert all(m.identity_index not in t for t in cg.tuples)

    def test_tuples_are_lexicographic(self):
        m = cyclic_group(3)
        c = constant_system(m, Z)
        cg = cochain_group(m, c, 2)
        assert cg.tuples == ((1, 1), (1, 2), (2, 1), (2, 2))

    def test_negative_degree_rejected(self):
        m = cyclic_group(2)
        with pytest.raises(ValueError):
            cochain_group(m, constant_system(m, Z), -1)


class TestFrozenDifferentials:
    def test_order_two_constant_integers(self):
        m = cyclic_group(2)
        c = constant_system(m, Z)
        assert coboundary(m, c, 0).matrix == ((0,),)
        assert coboundary(m, c, 1).matrix == ((2,),)
        assert coboundary(m, c, 2).matrix == ((0,),)
        assert coboundary(m, c, 3).matrix == ((2,),)

    def test_two_element_semilattice_degree_one(self):
        # merged middle entry stays non-identity, so the three terms give
        # 1 - 1 + 1 = 1
        m = union_monoid([{"x"}])
        c = constant_system(m, Zmod(2))
        assert coboundary(m, c, 0).matrix == ((0,),)
        assert coboundary(m, c, 1).matrix == ((1,),)

    def test_composition_vanishes_across_catalog(self):
        for m in small_monoids():
            for c in systems_for(m, [Zmod(6), FgAbGroup(1, (2,))]):
                LeechComplex(m, c, 3)  # raises if d o d != 0

    def test_broken_relations_caught_at_construction(self):
        m = cyclic_group(2)
        lstar = {(0, 0): AbHom.identity(Z), (0, 1): AbHom.identity(Z),
                 (1, 0): AbHom(Z, Z, ((-1,),)), (1, 1): AbHom.identity(Z)}
        rstar = {k: AbHom.identity(Z) for k in lstar}
        c = explicit_system(m, [Z, Z], lstar, rstar)
        with pytest.raises(AssertionError, match="translation relations"):
            LeechComplex(m, c, 2)


class TestFrozenTables:
    def test_order_two_constant_integers(self):
        m = cyclic_group(2)
        table = leech_cohomology_table(m, constant_system(m, Z), 4)
        assert table_renders(table) == ["Z", "0", "Z/2", "0", "Z/2"]

    def test_order_three_constant_integers(self):
        m = cyclic_group(3)
        table = leech_cohomology_table(m, constant_system(m, Z), 4)
        assert table_renders(table) == ["Z", "0", "Z/3", "0", "Z/3"]

    def test_order_two_sign_action_on_integers(self):
        table = leech_cohomology_table(cyclic_group(2),
                                       negation_on_integers(2), 4)
        assert table_renders(table) == ["0", "Z/2", "0", "Z/2", "0"]

    def test_trivial_monoid_concentrated_in_degree_zero(self):
        m = trivial_monoid()
        g = FgAbGroup(2, (4,))
        table = leech_cohomology_table(m, constant_system(m, g), 4)
        assert table[0] == g
        assert all(h == TRIVIAL_GROUP for h in table[1:])

    def test_semilattice_explicit_projection_system(self):
        m = union_monoid([{"x"}])
        ident_z = AbHom.identity(Z)
        ident_2 = AbHom.identity(Zmod(2))
        reduce_mod2 = AbHom(Z, Zmod(2), ((1,),))
        stars = {(0, 0): ident_z, (0, 1): ident_2,
                 (1, 0): reduce_mod2, (1, 1): ident_2}
        c = explicit_system(m, [Z, Zmod(2)], stars, dict(stars))
        table = leech_cohomology_table(m, c, 2)
        assert table_renders(table) == ["Z", "0", "0"]

    def test_semilattice_constant_mod_two(self):
        m = union_monoid([{"x"}])
        table = leech_cohomology_table(m, constant_system(m, Zmod(2)), 2)
        assert table_renders(table) == ["Z/2", "0", "0"]

    def test_single_degree_matches_table(self):
        m = cyclic_group(3)
        c = constant_system(m, Z)
        table = leech_cohomology_table(m, c, 3)
        for n, h in enumerate(table):
            assert leech_cohomology(m, c, n) == h


class TestBarComplexOracle:
    """For a group, translation cohomology with a one-sided action system
    is group cohomology; the oracle computes the latter from scratch."""

    def check(self, m, system, rank, p, n_max, action_mats):
        dims = bar_cohomology_dims_mod_p(m.table, action_mats, rank, p, n_max)
        table = leech_cohomology_table(m, system, n_max)
        expected = [FgAbGroup.from_invariants([p] * d) for d in dims]
        assert table == expected, (table_renders(table), dims)

    def test_order_two_constant_mod_two(self):
        m = cyclic_group(2)
        ident = [[1]]
        self.check(m, constant_system(m, Zmod(2)), 1, 2, 4, [ident, ident])

    def test_order_three_constant_mod_three(self):
        m = cyclic_group(3)
        ident = [[1]]
        self.check(m, constant_system(m, Zmod(3)), 1, 3, 4, [ident] * 3)

    def test_order_four_constant_mod_two(self):
        m = cyclic_group(4)
        ident = [[1]]
        self.check(m, constant_system(m, Zmod(2)), 1, 2, 3, [ident] * 4)

    def test_order_two_swap_action(self):
        m = cyclic_group(2)
        ident = [[1, 0], [0, 1]]
        swap = [[0, 1], [1, 0]]
        self.check(m, swap_action_system(), 2, 2, 4, [ident, swap])


class TestComplexApi:
    def test_mismatched_monoid_rejected(self):
        c = constant_system(cyclic_group(2), Z)
        with pytest.raises(ValueError, match="different monoid"):
            LeechComplex(cyclic_group(3), c, 2)

    def test_cohomology_needs_one_more_degree(self):
        m = cyclic_group(2)
        cx = LeechComplex(m, constant_system(m, Z), 2)
        assert cx.cohomology(1).render() == "0"
        with pytest.raises(ValueError):
            cx.cohomology(2)

    def test_monogenic_catalog_entry_has_collapsing_table(self):
        m = monogenic_three()
        assert m.mul(1, 1) == 2 and m.mul(1, 2) == 2 and m.mul(2, 2) == 2
