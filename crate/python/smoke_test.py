#!/usr/bin/env python3
"""Smoke test for the ollivier_py extension module.

Build the extension first:

    cargo build -p ollivier-py            # or --release

then run:

    python3 python/smoke_test.py
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path


def import_extension():
    repo = Path(__file__).resolve().parent.parent
    candidates = [
        repo / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libollivier_py.so", "ollivier_py.so", "libollivier_py.dylib")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("extension not built; run `cargo build -p ollivier-py` first")
    staging = Path(tempfile.mkdtemp(prefix="ollivier-py-"))
    shutil.copy2(built, staging / "ollivier_py.so")
    sys.path.insert(0, str(staging))
    import ollivier_py

    return ollivier_py


def main():
    ollivier_py = import_extension()

    # exact known curvatures
    triangle = ollivier_py.Graph([("a", "b"), ("b", "c"), ("c", "a")])
    assert triangle.kappa("a", "b") == "1/2"
    assert triangle.wasserstein("a", "b", method="full-lp") == "1/2"
    assert triangle.forman("a", "b") == "0"

    single_edge = ollivier_py.Graph([("a", "b")])
    assert single_edge.forman("a", "b") == "2"
    assert single_edge.kappa("a", "b") == "0"

    square = ollivier_py.Graph([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    assert square.kappa("a", "b") == "0"
    assert square.is_bipartite()
    assert square.w_bm_bipartite("a", "b") == "1"

    pentagon = ollivier_py.Graph.from_edge_list("a b\nb c\nc d\nd e\ne a\n")
    assert pentagon.girth_at_least(5)
    assert pentagon.kappa("a", "b") == "0"
    record = json.loads(pentagon.curvature_json("a", "b", method="brute-force"))
    assert record["W"] == "1"
    assert record["breakdown"]["W_minus"] == "1/2"
    partition = json.loads(pentagon.partition_json("a", "b"))
    assert partition["pentagon_uv"] == ["d"]

    # methods disagree with the refuted formulas exactly where they should
    report = json.loads(ollivier_py.counterexample_report("bipartite", 5))
    assert report["refuted"] is True
    assert report["w_bm"] == "1"
    assert report["wasserstein_full_lp"] == "23/21"
    report = json.loads(ollivier_py.counterexample_report("bipartite", 4))
    assert report["refuted"] is False
    report = json.loads(ollivier_py.counterexample_report("girth5", 6))
    assert report["refuted"] is True
    assert report["w_bm"] == "37/24"
    assert report["witness_profit"] == "13/8"

    # a counterexample edge list round-trips through the graph constructor
    text = ollivier_py.counterexample_edge_list("girth5", 3)
    rebuilt = ollivier_py.Graph.from_edge_list(text)
    assert rebuilt.girth_at_least(5)
    assert rebuilt.kappa("u", "v") == rebuilt.kappa("v", "u")

    # the small-graph corpus sizes are the known values
    assert ollivier_py.connected_graph_count(6) == 143

    print("ollivier_py smoke test: OK")


if __name__ == "__main__":
    main()
