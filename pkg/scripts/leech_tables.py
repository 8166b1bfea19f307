#!/usr/bin/env python3
"""Print Leech cohomology tables for a small zoo of monoids.

Each row is one monoid with one coefficient system; columns are H^0
through H^p_max.  Groups are rendered in invariant-factor form.
"""

import argparse

from moncoh import (
    FgAbGroup,
    FinMonoid,
    Z,
    Zmod,
    constant_system,
    cyclic_group,
    group_action_system,
    leech_cohomology_table,
    power_set_monoid,
    trivial_monoid,
    union_monoid,
)
from moncoh.abelian import AbHom


def monogenic_three() -> FinMonoid:
    return FinMonoid("mono3", ("e", "a", "b"), 0,
                     ((0, 1, 2), (1, 2, 2), (2, 2, 2)))


def sign_action_on_integers(order: int):
    m = cyclic_group(order)
    sign = {g: AbHom(Z, Z, ((1,),) if g % 2 == 0 else ((-1,),))
            for g in range(order)}
    return m, group_action_system(m, Z, sign)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pmax", type=int, default=4)
    args = parser.parse_args()

    rows: list[tuple[str, FinMonoid, object]] = []
    for m in (trivial_monoid(), cyclic_group(2), cyclic_group(3),
              cyclic_group(4), union_monoid([{"x"}]), power_set_monoid(2),
              monogenic_three()):
        for g in (Z, Zmod(2), FgAbGroup(1, (2,))):
            rows.append((f"constant {g}", m, constant_system(m, g)))
    for order in (2, 4):
        m, system = sign_action_on_integers(order)
        rows.append(("sign action on Z", m, system))

    rendered = [(m.name, label,
                 [g.render() for g in leech_cohomology_table(m, c, args.pmax)])
                for label, m, c in rows]
    cols = (["monoid", "coefficients"]
            + [f"H^{n}" for n in range(args.pmax + 1)])
    body = [[name, label] + cells for name, label, cells in rendered]
    widths = [max(len(row[i]) for row in [cols] + body)
              for i in range(len(cols))]
    print("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
    print("-" * (sum(widths) + 2 * (len(widths) - 1)))
    for row in body:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())


if __name__ == "__main__":
    main()
