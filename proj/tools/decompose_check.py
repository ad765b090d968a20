#!/usr/bin/env python3
"""Re-evaluate a `decompose` output over every coalition and compare it
against `value`. Usage: decompose_check.py <trustgame-binary> <graph-file>
Exits 0 when every coalition matches within 1e-9."""

import itertools
import json
import subprocess
import sys


def run(cli, *args):
    proc = subprocess.run([cli, *args], capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main():
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        return 2
    cli, graph = sys.argv[1], sys.argv[2]

    decomposition = run(cli, "decompose", graph)
    props = run(cli, "props", graph)
    labels = [p["label"] for p in props["players"]]
    if len(labels) > 12:
        print(f"graph has {len(labels)} players; refusing to enumerate", file=sys.stderr)
        return 2

    terms = [(frozenset(t["support"]), t["coeff"]) for t in decomposition["terms"]]
    worst = 0.0
    for r in range(len(labels) + 1):
        for subset in itertools.combinations(labels, r):
            members = frozenset(subset)
            reconstructed = sum(c for support, c in terms if support <= members)
            reported = run(cli, "value", graph, "--coalition", ",".join(subset))
            worst = max(worst, abs(reconstructed - reported["total"]))

    print(f"max |reconstruction - value| = {worst:.3e} over 2^{len(labels)} coalitions")
    return 0 if worst <= 1e-9 else 1


if __name__ == "__main__":
    sys.exit(main())
