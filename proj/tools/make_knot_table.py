#!/usr/bin/env python3
"""Regenerate data/knot_table.json from the Rolfsen table shipped with spherogram.

Each entry stores a signed Gauss code as [label, "O"|"U", sign] triples in
traversal order. Labels are 1-based crossing indices.

    pip install spherogram snappy_manifolds
    python3 tools/make_knot_table.py > data/knot_table.json
"""
import json
import sys

import spherogram

NAMES = (["3_1", "4_1", "5_1", "5_2"]
         + [f"6_{i}" for i in range(1, 4)]
         + [f"7_{i}" for i in range(1, 8)]
         + [f"8_{i}" for i in range(1, 22)])


def gauss_from_pd(pd):
    n = len(pd)
    edges = 2 * n
    head = {}
    signs = []
    for c, (a, b, cc, d) in enumerate(pd):
        if cc != (a + 1) % edges:
            raise ValueError(f"under strand not consecutive at crossing {c}: {pd[c]}")
        head[a] = (c, "U")
        if d == (b + 1) % edges:
            head[b] = (c, "O")
            signs.append(-1)
        elif b == (d + 1) % edges:
            head[d] = (c, "O")
            signs.append(1)
        else:
            raise ValueError(f"over strand not consecutive at crossing {c}: {pd[c]}")
    order = []
    seen = {}
    for e in range(edges):
        c, kind = head[e]
        if c not in seen:
            seen[c] = len(seen) + 1
        order.append([seen[c], kind, signs[c]])
    return order


def main():
    table = []
    for name in NAMES:
        pd = spherogram.Link(name).PD_code()
        table.append({"name": name, "gauss": gauss_from_pd(pd)})
    json.dump(table, sys.stdout, indent=None, separators=(",", ":"))
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
