"""Regenerate the bundled Les Miserables dataset.

Topology comes from the classic coappearance network (77 characters, 254
edges).  Community labels are greedy-modularity groups computed once here and
frozen into the JSON, and each node also carries its group as a nominal
attribute so the attribute-extension stage has something to chew on.

Usage: python scripts/make_lesmis_dataset.py [out.json]
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import networkx as nx

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "gegraph" / "data" / "lesmis.json"


def build() -> dict:
    g = nx.les_miserables_graph()
    names = sorted(g.nodes())
    groups = nx.community.greedy_modularity_communities(g)
    label_of = {}
    for gi, members in enumerate(sorted(groups, key=lambda s: sorted(s)[0])):
        for name in members:
            label_of[name] = f"g{gi}"
    nodes = [
        {"id": name, "label": label_of[name], "attrs": {"group": label_of[name]}}
        for name in names
    ]
    edges = sorted([sorted(e) for e in g.edges()])
    return {"nodes": nodes, "edges": edges}


def main() -> None:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else DEFAULT_OUT
    doc = build()
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(doc, indent=1))
    print(f"wrote {out}: {len(doc['nodes'])} nodes, {len(doc['edges'])} edges")


if __name__ == "__main__":
    main()
