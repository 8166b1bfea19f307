"""Small monoids and coefficient systems shared by the randomized tests."""

from __future__ import annotations

from moncoh.abelian import AbHom, FgAbGroup, Z, Zmod
from moncoh.coeff import CoeffSystem, constant_system, group_action_system
from moncoh.monoid import (
    FinMonoid,
    cyclic_group,
    power_set_monoid,
    trivial_monoid,
    union_monoid,
)


def monogenic_three() -> FinMonoid:
    """e, a, b with a*a = b and everything longer collapsing to b."""
    return FinMonoid("mono3", ("e", "a", "b"), 0,
                     ((0, 1, 2), (1, 2, 2), (2, 2, 2)))


def left_zero_adjoined() -> FinMonoid:
    """Two left-zero elements with an identity adjoined."""
    return FinMonoid("lzero", ("e", "x", "y"), 0,
                     ((0, 1, 2), (1, 1, 1), (2, 2, 2)))


def right_zero_adjoined() -> FinMonoid:
    return FinMonoid("rzero", ("e", "x", "y"), 0,
                     ((0, 1, 2), (1, 1, 2), (2, 1, 2)))


def chain_semilattice(n: int) -> FinMonoid:
    """Union monoid of a chain of n nested sets; n + 1 elements."""
    return union_monoid([set(str(i) for i in range(k + 1)) for k in range(n)])


def small_monoids() -> list[FinMonoid]:
    return [
        trivial_monoid(),
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        chain_semilattice(1),
        chain_semilattice(2),
        power_set_monoid(2),
        monogenic_three(),
        left_zero_adjoined(),
        right_zero_adjoined(),
    ]


def small_groups() -> list[FgAbGroup]:
    return [Z, Zmod(2), Zmod(3), Zmod(4), FgAbGroup(1, (2,))]


def negation_on_integers(order: int) -> CoeffSystem:
    """The cyclic group of even order acting on Z through the sign of the
    exponent."""
    m = cyclic_group(order)
    sign = {g: AbHom(Z, Z, ((1,),) if g % 2 == 0 else ((-1,),))
            for g in range(order)}
    return group_action_system(m, Z, sign)


def swap_action_system() -> CoeffSystem:
    """Order-two group permuting the two generators of Z/2 + Z/2."""
    m = cyclic_group(2)
    g = FgAbGroup(0, (2, 2))
    swap = AbHom(g, g, ((0, 1), (1, 0)))
    return group_action_system(m, g, [AbHom.identity(g), swap])


def systems_for(m: FinMonoid, groups: list[FgAbGroup] | None = None) -> list[CoeffSystem]:
    """Constant systems on every monoid, plus sign actions on even cyclic
    groups."""
    out = [constant_system(m, g) for g in (groups or small_groups())]
    if m.is_group() and m.size in (2, 4) and m.table == cyclic_group(m.size).table:
        out.append(negation_on_integers(m.size))
    return out


def seven_point_system():
    """Three sets over seven points, one point per nonempty subcollection."""
    from moncoh.structured import SetSystem

    return SetSystem.from_names(
        list("abcdefg"),
        [
            ("U0", ["a", "d", "e", "g"]),
            ("U1", ["b", "d", "f", "g"]),
            ("U2", ["c", "e", "f", "g"]),
        ],
    )


def disjoint_pair_system():
    """Two disjoint sets; no point lies in both."""
    from moncoh.structured import SetSystem

    return SetSystem.from_names(
        ["p", "q"], [("U0", ["p"]), ("U1", ["q"])])
