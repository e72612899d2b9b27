#!/usr/bin/env python3
"""Writes a random graph, update batch and query list for the CLI."""

import argparse
import random


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--W", type=int, default=2)
    ap.add_argument("--density", type=float, default=0.2)
    ap.add_argument("--f", type=int, default=4)
    ap.add_argument("--queries", type=int, default=30)
    ap.add_argument("--reach", action="store_true", help="allow delnode updates")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("prefix")
    a = ap.parse_args()
    rng = random.Random(a.seed)

    pi = [rng.randint(0, 1) for _ in range(a.n + 1)]

    def weight(u, v):
        if a.W == 0:
            return 0
        return rng.randint(0, a.W - 1) - pi[u] + pi[v]

    edges = {}
    for u in range(1, a.n + 1):
        for v in range(1, a.n + 1):
            if u != v and rng.random() < a.density:
                edges[(u, v)] = weight(u, v)
    with open(a.prefix + ".graph", "w") as out:
        out.write(f"p dgraph {a.n} {len(edges)} {a.W}\n")
        for (u, v), w in edges.items():
            out.write(f"e {u} {v} {w}\n")

    ops, touched, dead = [], set(), set()
    while len(ops) < a.f:
        if a.reach and rng.random() < 0.25:
            v = rng.randint(1, a.n)
            if v not in dead:
                dead.add(v)
                ops.append(f"delnode {v}")
            continue
        u, v = rng.randint(1, a.n), rng.randint(1, a.n)
        if u == v or (u, v) in touched:
            continue
        touched.add((u, v))
        if (u, v) not in edges:
            ops.append(f"add {u} {v} {weight(u, v)}")
        elif rng.random() < 0.5:
            ops.append(f"del {u} {v}")
        else:
            ops.append(f"rew {u} {v} {weight(u, v)}")
    with open(a.prefix + ".updates", "w") as out:
        out.write("".join(op + "\n" for op in ops))

    with open(a.prefix + ".queries", "w") as out:
        for _ in range(a.queries):
            out.write(f"{rng.randint(1, a.n)} {rng.randint(1, a.n)}\n")


if __name__ == "__main__":
    main()
