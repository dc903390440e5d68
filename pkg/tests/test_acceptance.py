"""Acceptance gate: one test and one printed pass/fail line per requirement.

Run with ``pytest tests/test_acceptance.py -s`` to see the verdict lines.
Everything here checks end-to-end behavior against independent oracles:
hand-evaluated formulas, exact rational-arithmetic geometry, frequency
statistics, and brute-force rankings.
"""

import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest
from fastapi.testclient import TestClient
from jsonschema import validate

from gegraph.graph_model import binnings_for, extend_graph, load_graph
from gegraph.insight import CommunityAssignment
from gegraph.layout import enhanced_adjacency
from gegraph.metrics import (
    LayoutUnderTest,
    community_entropy,
    edge_crossings,
    edge_length_variation,
    full_report,
    group_overlap,
    minimum_angle,
    node_occlusions,
    node_spread,
    spatial_autocorrelation,
)
from gegraph.pipeline import (
    PipelineConfig,
    build_session,
    report_for,
    run_layout_pipeline,
)
from gegraph.server import create_app
from gegraph.walks import WalkParams, _Walker, transition_weight
from gegraph.layout import truncate

from test_server import (
    AGGREGATION_SCHEMA,
    EXPANSION_SCHEMA,
    LAYOUT_SCHEMA,
    METRICS_SCHEMA,
    RELATED_SCHEMA,
)

SEEDS = (0, 1, 2, 3, 4)


def verdict(ok: bool, label: str) -> bool:
    print(f"{'PASS' if ok else 'FAIL'}: {label}")
    return ok


def default_config(seed: int) -> PipelineConfig:
    return PipelineConfig(dataset="lesmis", seed=seed)


def baseline_config(seed: int) -> PipelineConfig:
    return PipelineConfig(dataset="lesmis", seed=seed, w=1.0, t_ein=0.0, t_eout=0.0)


def communities_of(assignment) -> CommunityAssignment:
    a = np.asarray(assignment)
    return CommunityAssignment(a, int(a.max()) + 1, "labels")


def lut(positions, edges, assignment) -> LayoutUnderTest:
    return LayoutUnderTest(
        np.asarray(positions, dtype=float),
        tuple(tuple(e) for e in edges),
        communities_of(assignment),
    )


@pytest.fixture(scope="module")
def lesmis_session(lesmis):
    return build_session(lesmis, default_config(0))


# ---------------------------------------------------------------------------
# 1. Enhanced layout beats the plain force baseline on community readability


def test_enhanced_layout_improves_readability_over_baseline(lesmis):
    started = time.perf_counter()
    rows = []
    for seed in SEEDS:
        ours = report_for(run_layout_pipeline(lesmis, default_config(seed)))
        plain = report_for(run_layout_pipeline(lesmis, baseline_config(seed)))
        rows.append((ours, plain))
    elapsed = time.perf_counter() - started

    h_wins = sum(ours.H < plain.H for ours, plain in rows)
    c_wins = sum(ours.C < plain.C for ours, plain in rows)
    sp_wins = sum(ours.N_sp <= plain.N_sp for ours, plain in rows)
    mean = lambda picks: float(np.mean(picks))
    means_ok = (
        mean([o.H for o, _ in rows]) < mean([p.H for _, p in rows])
        and mean([o.C for o, _ in rows]) < mean([p.C for _, p in rows])
        and mean([o.N_sp for o, _ in rows]) <= mean([p.N_sp for _, p in rows])
    )
    ok = means_ok and h_wins >= 4 and c_wins >= 4 and sp_wins >= 4 and elapsed < 60.0
    assert verdict(
        ok,
        "community readability: enhanced layout beats plain force baseline "
        f"(H {h_wins}/5, C {c_wins}/5, N_sp {sp_wins}/5 seed wins, "
        f"means {'ordered' if means_ok else 'NOT ordered'}, {elapsed:.1f}s)",
    )


# ---------------------------------------------------------------------------
# 2. Formula oracles: step weights, truncation, matrix fusion, nine metrics


def _extended(doc):
    g = load_graph(json.dumps(doc))
    return extend_graph(g, binnings_for(g))


def test_formula_oracles_match_hand_computations():
    checks = []
    tol = 1e-9

    # step weights on a 4-cycle with a chord and on an attributed pair
    diamond = _extended(
        {
            "nodes": [{"id": i} for i in "abcd"],
            "edges": [["a", "b"], ["b", "c"], ["b", "d"], ["a", "c"]],
        }
    )
    colored = _extended(
        {
            "nodes": [{"id": "a", "attrs": {"hue": "red"}},
                      {"id": "b", "attrs": {"hue": "red"}}],
            "edges": [["a", "b"]],
        }
    )
    w = transition_weight(1, 0, 2, WalkParams(p=1, q=1, r=0.5), colored)
    checks.append((abs(w - 2.0) < tol, "virtual step, r=0.5 -> 2.0"))
    w = transition_weight(0, 1, 2, WalkParams(p=1, q=1, r=1), diamond)
    checks.append((abs(w - 1.0) < tol, "uniform params -> 1.0"))
    w = transition_weight(0, 1, 0, WalkParams(p=4, q=1, r=1), diamond)
    checks.append((abs(w - 0.25) < tol, "return step, p=4 -> 0.25"))

    # truncation boundary behavior
    checks.append((truncate(0.39, 0.4) == 0.0, "truncate below"))
    checks.append((truncate(0.4, 0.4) == 0.4, "truncate boundary kept"))
    checks.append((truncate(0.9, 0.4) == 0.9, "truncate above"))

    # matrix fusion
    path_adj = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=float)
    pure = enhanced_adjacency(
        path_adj, np.zeros((3, 3)), communities_of([0, 1, 2]),
        w=1.0, t_ein=0.0, t_eout=0.0,
    )
    checks.append(
        (np.abs(pure.values - path_adj).max() < tol, "w=1, thresholds 0 -> adjacency")
    )
    sim = np.array([[1.0, 0.25, 0.5], [0.25, 1.0, 0.75], [0.5, 0.75, 1.0]])
    trunc_sim = enhanced_adjacency(
        np.zeros((3, 3)), sim, communities_of([0, 0, 0]),
        w=0.0, t_ein=0.5, t_eout=0.5,
    )
    expected = np.array([[0, 0, 0.5], [0, 0, 1.0], [0.5, 1.0, 0]])
    checks.append(
        (np.abs(trunc_sim.values - expected).max() < tol,
         "w=0 -> truncated normalized similarity")
    )
    pair = enhanced_adjacency(
        np.array([[0.0, 1.0], [1.0, 0.0]]),
        np.array([[1.0, 0.5], [0.5, 1.0]]),
        communities_of([0, 0]),
        w=0.4, t_ein=0.4, t_eout=0.6,
    )
    checks.append(
        (abs(pair.values[0, 1] - 1.0) < tol,
         "2-node blend 0.7 -> degenerate range -> 1.0")
    )

    # N_sp
    checks.append(
        (abs(node_spread(lut([[0.3, 0.3]] * 3 + [[0.7, 0.7]] * 2, [],
                             [0, 0, 0, 1, 1]))) < tol,
         "spread of coincident communities = 0")
    )
    checks.append(
        (abs(node_spread(lut([[0, 0], [1, 0]], [], [0, 0])) - 0.5) < tol,
         "spread of a length-1 pair = 0.5")
    )
    checks.append(
        (abs(node_spread(lut([[0, 0], [1, 0], [5, 3], [6, 3]], [],
                             [0, 0, 1, 1])) - 0.5) < tol,
         "two equal communities -> still 0.5")
    )

    # N_oc
    checks.append(
        (abs(node_occlusions(lut([[0, 0], [0, 0], [0.5, 0.5]], [], [0] * 3)) - 1 / 3)
         < tol, "one coincident pair of three -> 1/3")
    )
    checks.append(
        (node_occlusions(lut([[0, 0], [0.5, 0.5], [1, 1]], [], [0] * 3)) == 0.0,
         "spread nodes -> 0")
    )
    checks.append(
        (node_occlusions(lut([[0.4, 0.4]] * 4, [], [0] * 4)) == 1.0,
         "all coincident -> 1")
    )

    # E_c
    x_cross = lut([[0, 0], [1, 1], [0, 1], [1, 0]], [(0, 1), (2, 3)], [0] * 4)
    checks.append((edge_crossings(x_cross)[0] == 1.0, "X -> 1"))
    shared = lut([[0, 0], [1, 0], [0.5, 1]], [(0, 1), (1, 2)], [0] * 3)
    checks.append((edge_crossings(shared)[0] == 0.0, "shared endpoint -> 0"))
    square = lut(
        [[0, 0], [1, 0], [1, 1], [0, 1]],
        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)],
        [0] * 4,
    )
    checks.append(
        (edge_crossings(square)[0] == pytest.approx(1 / 15, abs=tol),
         "square with diagonals -> 1/15")
    )

    # M_a
    straight = lut([[0, 0], [1, 0], [-1, 0]], [(0, 1), (0, 2)], [0] * 3)
    checks.append((abs(minimum_angle(straight) - 1.0) < tol, "straight pair -> 1"))
    fan = lut(
        [[0, 0], [1, 0], [0, 1], [-1, 0], [0, -1]],
        [(0, 1), (0, 2), (0, 3), (0, 4)],
        [0] * 5,
    )
    checks.append((abs(minimum_angle(fan) - 1.0) < tol, "perfect 90-degree fan -> 1"))
    folded = lut([[0, 0], [1, 0], [2, 0]], [(0, 1), (0, 2)], [0] * 3)
    checks.append((abs(minimum_angle(folded)) < tol, "folded pair -> 0"))

    # M_l
    checks.append(
        (edge_length_variation(
            lut([[0, 0], [1, 0], [0, 1], [1, 1]], [(0, 1), (2, 3)], [0] * 4)
        ) == 0.0, "equal lengths -> 0")
    )
    checks.append(
        (abs(edge_length_variation(
            lut([[0, 0], [1, 0], [0, 1], [3, 1]], [(0, 1), (2, 3)], [0] * 4)
        ) - 0.5) < tol, "lengths 1 and 3 -> 0.5")
    )
    checks.append(
        (edge_length_variation(lut([[0, 0], [1, 1]], [(0, 1)], [0] * 2)) == 0.0,
         "single edge -> 0")
    )

    # G_o
    disjoint = lut(
        [[0, 0], [1, 0], [0.5, 1], [5, 5], [6, 5], [5.5, 6]], [], [0, 0, 0, 1, 1, 1]
    )
    checks.append((group_overlap(disjoint) == 0.0, "disjoint hulls -> 0"))
    nested = lut(
        [[0, 0], [4, 0], [4, 4], [0, 4], [1, 1], [2, 1]], [], [0, 0, 0, 0, 1, 1]
    )
    checks.append(
        (abs(group_overlap(nested) - 0.5) < tol,
         "degenerate inner community -> mean(1, 0) = 0.5")
    )
    coincident = lut(
        [[0, 0], [4, 0], [4, 4], [0, 4]] * 2, [], [0] * 4 + [1] * 4
    )
    checks.append(
        (group_overlap(coincident) == 0.0,
         "coincident hull corners sit on, not strictly inside, each other")
    )

    # H
    pure_cells = lut([[0.01, 0.01], [0.9, 0.9]], [], [0, 1])
    checks.append((community_entropy(pure_cells) == 0.0, "pure cells -> 0"))
    half = lut([[0.01, 0.01], [0.02, 0.02], [0.9, 0.9]], [], [0, 1, 0])
    checks.append(
        (abs(community_entropy(half) - 0.5) < tol, "one 1-bit cell of two -> 0.5")
    )
    four_way = lut(
        [[0.01, 0.01], [0.02, 0.02], [0.03, 0.03], [0.04, 0.04]], [], [0, 1, 2, 3]
    )
    checks.append(
        (abs(community_entropy(four_way) - 2.0) < tol, "four-way mix -> 2 bits")
    )

    # C (radius 0.1)
    same = lut([[0, 0], [0.05, 0]], [], [0, 0])
    checks.append((spatial_autocorrelation(same) == 0.0, "all same community -> 0"))
    diff = lut([[0, 0], [0.05, 0]], [], [0, 1])
    checks.append(
        (abs(spatial_autocorrelation(diff) - 1.0) < tol, "all different -> 1")
    )
    # per-node values 0.25 (the hand fixture), 0.4, 1.0 -> mean 0.55
    trio = lut([[0, 0], [0.025, 0], [0.075, 0]], [], [0, 0, 1])
    checks.append(
        (abs(spatial_autocorrelation(trio) - 0.55) < tol,
         "weighted mix -> node scores 0.25/0.4/1.0, mean 0.55")
    )

    # full report on an empty layout
    empty = LayoutUnderTest(
        np.zeros((0, 2)), (), CommunityAssignment(np.array([], dtype=int), 0, "labels")
    )
    report = full_report(empty)
    checks.append(
        (report.N_sp == 0 and report.E_c == 0 and report.H == 0 and report.C == 0,
         "empty layout -> zero report")
    )

    failed = [label for ok, label in checks if not ok]
    assert verdict(
        not failed,
        f"formula oracles: {len(checks) - len(failed)}/{len(checks)} hand-computed "
        f"fixtures match" + (f" (failed: {failed})" if failed else ""),
    )


# ---------------------------------------------------------------------------
# 3. Edge crossings against exact rational-arithmetic brute force


def _proper_cross_exact(p1, p2, p3, p4) -> bool:
    """Solve the two-segment intersection system in exact rationals."""
    x1, y1 = (Fraction(v) for v in p1)
    x2, y2 = (Fraction(v) for v in p2)
    x3, y3 = (Fraction(v) for v in p3)
    x4, y4 = (Fraction(v) for v in p4)
    dx1, dy1 = x2 - x1, y2 - y1
    dx2, dy2 = x4 - x3, y4 - y3
    den = dx1 * dy2 - dy1 * dx2
    if den == 0:
        return False  # parallel or collinear: no single proper crossing point
    t = ((x3 - x1) * dy2 - (y3 - y1) * dx2) / den
    s = ((x3 - x1) * dy1 - (y3 - y1) * dx1) / den
    return 0 < t < 1 and 0 < s < 1


def test_edge_crossings_match_exact_brute_force():
    rng = np.random.default_rng(2024)
    fixtures = 0
    mismatches = 0
    while fixtures < 60:
        n = int(rng.integers(4, 10))
        positions = rng.integers(0, 50, size=(n, 2)).astype(float)
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        count = int(rng.integers(2, min(12, len(pairs)) + 1))
        take = rng.permutation(len(pairs))[:count]
        edges = [pairs[t] for t in take]
        l = lut(positions, edges, rng.integers(0, 3, size=n))

        total = crossed = 0
        for i in range(len(edges)):
            for j in range(i + 1, len(edges)):
                total += 1
                if set(edges[i]) & set(edges[j]):
                    continue
                u1, v1 = edges[i]
                u2, v2 = edges[j]
                if _proper_cross_exact(
                    positions[u1], positions[v1], positions[u2], positions[v2]
                ):
                    crossed += 1
        expected = crossed / total
        if edge_crossings(l)[0] != expected:
            mismatches += 1
        fixtures += 1
    assert verdict(
        mismatches == 0,
        f"edge crossings: exact match with rational brute force on "
        f"{fixtures} random fixtures (<= 12 edges each)",
    )


# ---------------------------------------------------------------------------
# 4. Walk sampling statistics on the four-node fixture


def test_walk_sampling_matches_normalized_weights():
    g = _extended(
        {
            "nodes": [{"id": i} for i in "abcd"],
            "edges": [["a", "b"], ["b", "c"], ["b", "d"], ["a", "c"]],
        }
    )
    params = WalkParams(p=2.0, q=4.0, r=1.0)
    # from b after a: return a weighs 1/2, mutual c weighs 1, outward d 1/4
    expected = {0: 2 / 7, 2: 4 / 7, 3: 1 / 7}
    walker = _Walker(g, params)
    rng = np.random.default_rng(77)
    draws = 100_000
    counts = np.zeros(4)
    for _ in range(draws):
        counts[walker.sample_next(0, 1, rng)] += 1
    freqs = counts / draws
    worst = max(abs(freqs[t] - p) for t, p in expected.items())
    assert verdict(
        worst <= 0.02 and freqs[1] == 0.0,
        f"walk sampling: empirical frequencies within +/-0.02 of theory "
        f"over 1e5 draws (worst deviation {worst:.4f})",
    )


# ---------------------------------------------------------------------------
# 5. Planted barbell communities are separated in the final layout


def test_barbell_cliques_separate_in_layout(barbell):
    ratios = []
    for seed in SEEDS:
        config = PipelineConfig(dataset="barbell", seed=seed, k=2)
        arts = run_layout_pipeline(barbell, config)
        half = barbell.n // 2
        a, b = arts.layout.positions[:half], arts.layout.positions[half:]
        centroid_gap = float(np.linalg.norm(a.mean(axis=0) - b.mean(axis=0)))
        spread = float(
            np.mean(
                [
                    np.linalg.norm(side - side.mean(axis=0), axis=1).mean()
                    for side in (a, b)
                ]
            )
        )
        ratios.append(centroid_gap / spread)
    ok = all(r >= 2.0 for r in ratios)
    assert verdict(
        ok,
        "barbell separation: clique centroid gap >= 2x intra-clique spread on "
        f"5/5 seeds (ratios {', '.join(f'{r:.1f}' for r in ratios)})",
    )


# ---------------------------------------------------------------------------
# 6. Byte-identical artifacts for identical (dataset, config, seed)


def test_artifacts_are_byte_identical_across_runs(lesmis):
    from gegraph.layout import layout_to_json

    def artifacts():
        arts = run_layout_pipeline(lesmis, default_config(3))
        return (
            arts.corpus.to_text(),
            arts.embedding.to_json(lesmis.names),
            layout_to_json(arts.layout, lesmis.names, lesmis.edges),
        )

    first = artifacts()
    second = artifacts()
    same = [a == b for a, b in zip(first, second)]
    assert verdict(
        all(same),
        "determinism: walk corpus, embedding export, and layout JSON are "
        f"byte-identical across two runs (corpus={same[0]}, "
        f"embedding={same[1]}, layout={same[2]})",
    )


# ---------------------------------------------------------------------------
# 7. Runtime budget on the bundled 77-node dataset


def test_lesmis_pipeline_fits_runtime_budget(lesmis):
    started = time.perf_counter()
    run_layout_pipeline(lesmis, default_config(0))
    elapsed = time.perf_counter() - started
    assert verdict(
        elapsed < 5.0,
        f"runtime: full 77-node pipeline in {elapsed:.2f}s (< 5s budget)",
    )


# ---------------------------------------------------------------------------
# 8. Service contract: schema-valid responses and brute-force-consistent search


def test_service_responses_are_schema_valid_and_search_is_exact(lesmis, lesmis_session):
    client = TestClient(create_app(lesmis_session), raise_server_exceptions=False)
    problems = []

    for path, schema in (
        ("/api/layout", LAYOUT_SCHEMA),
        ("/api/aggregation", AGGREGATION_SCHEMA),
        ("/api/metrics", METRICS_SCHEMA),
    ):
        response = client.get(path)
        if response.status_code != 200:
            problems.append(f"{path} -> {response.status_code}")
            continue
        validate(response.json(), schema)
    graph_doc = client.get("/api/graph").json()
    if {n["id"] for n in graph_doc["nodes"]} != set(lesmis.names):
        problems.append("/api/graph node ids")
    for node in lesmis_session.aggregation.nodes:
        response = client.get(f"/api/expand/{node.community}")
        if response.status_code != 200:
            problems.append(f"expand {node.community} -> {response.status_code}")
            continue
        validate(response.json(), EXPANSION_SCHEMA)

    rng = np.random.default_rng(42)
    mismatches = 0
    for strategy, sim in lesmis_session.strategy_similarities.items():
        for qi in rng.integers(0, lesmis.n, size=20):
            qi = int(qi)
            row = sim.values[qi]
            expected = min(
                (j for j in range(lesmis.n) if j != qi), key=lambda j: (-row[j], j)
            )
            doc = client.get(
                "/api/related",
                params={"node": lesmis.names[qi], "strategy": strategy, "k": 5},
            ).json()
            validate(doc, RELATED_SCHEMA)
            if doc["ranked"][0]["id"] != lesmis.names[expected]:
                mismatches += 1
    ok = not problems and mismatches == 0
    assert verdict(
        ok,
        "service contract: endpoints schema-valid and related-node top-1 equals "
        f"brute-force argmax for 20 queries x 3 strategies"
        + (f" (problems: {problems}, mismatches: {mismatches})" if not ok else ""),
    )
