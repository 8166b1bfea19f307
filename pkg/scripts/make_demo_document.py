#!/usr/bin/env python3
"""Write a demo JSON document exercising every CLI subcommand.

The document defines two cyclic groups and a two-element semilattice,
constant and sign-action coefficient systems, a two-floor grid with a
descent path, the seven-point set system and a two-descriptor list.
"""

import json
import sys

DOCUMENT = {
    "monoids": [
        {"name": "C2", "elements": ["e", "g"], "identity": "e",
         "table": [["e", "g"], ["g", "e"]]},
        {"name": "C3", "elements": ["e", "a", "b"], "identity": "e",
         "table": [["e", "a", "b"], ["a", "b", "e"], ["b", "e", "a"]]},
        {"name": "S", "elements": ["{}", "{x}"], "identity": "{}",
         "table": [["{}", "{x}"], ["{x}", "{x}"]]},
    ],
    "coefficients": [
        {"name": "c2Z", "monoid": "C2", "kind": "constant", "group": "Z"},
        {"name": "c3Z", "monoid": "C3", "kind": "constant", "group": "Z"},
        {"name": "sign", "monoid": "C2", "kind": "action", "group": "Z",
         "action": {"e": [[1]], "g": [[-1]]}},
    ],
    "grids": [
        {"name": "pair",
         "floors": [{"monoid": "C2", "coeff": "c2Z"},
                    {"monoid": "C3", "coeff": "c3Z"}],
         "vertical": "zero",
         "path": {"moves": "D"},
         "pmax": 3},
    ],
    "set_systems": [
        {"name": "seven",
         "points": ["a", "b", "c", "d", "e", "f", "g"],
         "sets": [{"name": "U0", "members": ["a", "d", "e", "g"]},
                  {"name": "U1", "members": ["b", "d", "f", "g"]},
                  {"name": "U2", "members": ["c", "e", "f", "g"]}]},
    ],
    "descriptor_lists": [
        {"name": "two", "descriptors": [
            {"operations": [{"arity": 2, "properties": ["associative"]}]},
            {"operations": [{"arity": 2}]},
        ]},
    ],
    "defaults": {"p_max": 4, "coefficients": "Z"},
}


def main() -> None:
    target = sys.argv[1] if len(sys.argv) > 1 else "demo.json"
    with open(target, "w", encoding="utf-8") as fh:
        json.dump(DOCUMENT, fh, indent=2)
        fh.write("\n")
    print(f"wrote {target}")
    print("try:")
    for cmd in ("validate", "leech", "square", "total", "fs", "h"):
        extra = " --pmax 2" if cmd in ("fs", "h") else ""
        print(f"  moncoh {cmd} --input {target}{extra}")


if __name__ == "__main__":
    main()
