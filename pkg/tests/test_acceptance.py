"""Acceptance gate: one test per numbered criterion, reported in the terminal summary."""

import itertools
import json
import os
import random
import subprocess
import sys
import time

import pytest

from chaingraph.checks import random_agreement, random_pipeline
from chaingraph.consensus import combined_model, consensus, consensus_from_dags, removable_edges
from chaingraph.decomposition import skeleton_lemma_violations, target_model, verify_theorem1
from chaingraph.enumeration import consistent_chains, same_skeleton_cgs
from chaingraph.models import GraphBacked, Triple, check_axioms, member, model_subset
from chaingraph.separation import elementary_model, separated, separated_oracle
from chaingraph.structure import markov_equivalent

FIX = os.path.join(os.path.dirname(__file__), "fixtures")
SLOW = os.environ.get("CG_SLOW") == "1"


@pytest.mark.acceptance("1 counterexample membership")
def test_counterexample(example_graph):
    t0 = time.perf_counter()
    target = target_model(example_graph)
    both = Triple("A", "D", {"B", "C"})
    empty = Triple("A", "D")
    for sem in ("lwf", "amp"):
        own = GraphBacked(example_graph, sem)
        assert member(target, both) and not member(own, both)
        assert member(target, empty) and member(own, empty)
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.acceptance("2 decomposition inclusion, all CGs n<=4")
def test_inclusion(cgs_upto4):
    assert len(cgs_upto4) == 1 + 1 + 4 + 50 + 1688
    for g in cgs_upto4:
        tm = target_model(g)
        for sem in ("lwf", "amp"):
            assert model_subset(GraphBacked(g, sem), tm), (g.edges(), sem)


@pytest.mark.acceptance("3 decomposition optimality, n=3 full and n=4 same-skeleton")
def test_optimality(cgs3, cgs4):
    for g in cgs3:
        for sem in ("lwf", "amp"):
            rep = verify_theorem1(g, sem, mode="full")
            assert rep.optimal and rep.candidates == 50, (g.edges(), sem, rep.to_json())
    for g in cgs4:
        for sem in ("lwf", "amp"):
            rep = verify_theorem1(g, sem, mode="skeleton")
            assert rep.optimal, (g.edges(), sem, rep.to_json())


def _all_queries(nodes):
    nodes = sorted(nodes)
    for labels in itertools.product(range(4), repeat=len(nodes)):
        x = frozenset(n for n, l in zip(nodes, labels) if l == 0)
        y = frozenset(n for n, l in zip(nodes, labels) if l == 1)
        z = frozenset(n for n, l in zip(nodes, labels) if l == 2)
        if x and y:
            yield x, y, z


@pytest.mark.acceptance("4 separation criteria agree, n<=4 exhaustive and 10^4 random at n=7")
def test_separation_agreement(cgs_upto4):
    count = 0
    for g in cgs_upto4:
        for x, y, z in _all_queries(g.nodes):
            for sem in ("lwf", "amp"):
                count += 1
                assert separated(g, x, y, z, sem) == separated_oracle(g, x, y, z, sem), \
                    (g.edges(), sorted(x), sorted(y), sorted(z), sem)
    assert count > 300_000
    mismatches, total = random_agreement(7, 20_000, seed=2024)
    assert total == 20_000 and mismatches == []


@pytest.mark.acceptance("5 compositional graphoid axioms, all CGs n<=4")
def test_axioms(cgs_upto4):
    for g in cgs_upto4:
        for sem in ("lwf", "amp"):
            assert check_axioms(elementary_model(g, sem), "compositional") == [], (g.edges(), sem)


def _round_trips(cgs_upto4):
    for g in cgs_upto4:
        for alpha in consistent_chains(g):
            yield g, alpha


@pytest.mark.acceptance("6 consensus round trip, all CGs n<=4 and consistent chains")
def test_round_trip(cgs_upto4):
    runs = 0
    for g, alpha in _round_trips(cgs_upto4):
        for sem in ("lwf", "amp"):
            h, _ = consensus(elementary_model(g, sem), alpha, sem)
            assert h == g, (g.edges(), alpha, sem, h.edges())
            runs += 1
    assert runs > 9000


@pytest.mark.acceptance("7 inclusion minimality of consensus outputs")
def test_minimality(cgs_upto4):
    # round-trip outputs equal their input, so each (g, semantics) is checked once
    for g in cgs_upto4:
        for sem in ("lwf", "amp"):
            m = elementary_model(g, sem)
            assert removable_edges(g, m, sem) == [], (g.edges(), sem)
    rng = random.Random(7)
    for _ in range(100):
        specs, alpha = random_pipeline(rng, max_nodes=5, max_dags=3)
        m = combined_model(specs)
        for sem in ("lwf", "amp"):
            g, _ = consensus_from_dags(specs, alpha, sem, verify=False)
            assert model_subset(GraphBacked(g, sem), m)
            assert removable_edges(g, m, sem) == [], ([s.to_json() for s in specs], sem)


def _equiv_agrees(g, h):
    for sem in ("lwf", "amp"):
        same = elementary_model(g, sem) == elementary_model(h, sem)
        assert markov_equivalent(g, h, sem) == same, (g.edges(), h.edges(), sem)


@pytest.mark.acceptance("8 Markov equivalence matches model equality")
def test_equivalence(cgs_upto4, cgs4):
    small = [g for g in cgs_upto4 if len(g.nodes) <= 3]
    for g, h in itertools.product(small, repeat=2):
        if g.node_set == h.node_set:
            _equiv_agrees(g, h)
    # half uniform pairs, half same-skeleton pairs so equivalent pairs actually occur
    rng = random.Random(88)
    equivalent = 0
    for i in range(10_000):
        g = rng.choice(cgs4)
        h = rng.choice(cgs4) if i % 2 else rng.choice(list(same_skeleton_cgs(g)))
        _equiv_agrees(g, h)
        equivalent += markov_equivalent(g, h, "lwf")
    assert equivalent > 100


def _fx(name):
    return os.path.join(FIX, name)


def _documented_runs(out):
    example = _fx("example.cg")
    return [
        (["validate", example], 0),
        (["validate", _fx("cyclic.cg")], 3),
        (["relatives", example, "--of", "B", "--rel", "bd"], 0),
        (["separate", example, "--semantics", "lwf", "--x", "A", "--y", "D", "--z", "B,C"], 1),
        (["separate", example, "--semantics", "amp", "--x", "A", "--y", "D"], 0),
        (["separate", example, "--semantics", "amp", "--x", "A", "--y", "D", "--z", "B,C", "--oracle"], 1),
        (["model", example, "--semantics", "lwf"], 0),
        (["decompose", example, "--out-dir", out], 0),
        (["verify-theorem1", example, "--semantics", "lwf"], 0),
        (["verify-theorem1", example, "--semantics", "amp"], 0),
        (["consensus", "--semantics", "lwf", "--chain", _fx("two-blocks.chain"), _fx("d1.json"), _fx("d2.json")], 0),
        (["consensus", "--semantics", "amp", "--chain", _fx("two-blocks.chain"), _fx("d1.json"), _fx("d2.json")], 0),
        (["axioms", _fx("no-intersection.json"), "--check", "graphoid"], 1),
        (["equivalent", example, example, "--semantics", "amp"], 0),
        (["equivalent", example, _fx("line.cg"), "--semantics", "lwf"], 3),
        (["agreement", "--nodes", "5", "--queries", "200", "--seed", "3"], 0),
        (["separate", example, "--semantics", "lwf", "--x", "A", "--y", "Q"], 3),
        (["separate", example], 2),
    ]


@pytest.mark.acceptance("9 CLI determinism and exit codes")
def test_cli_determinism(tmp_path):
    out = str(tmp_path / "parts")
    for argv, code in _documented_runs(out):
        outputs = []
        for seed in ("0", "1"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            p = subprocess.run([sys.executable, "-m", "chaingraph.cli", *argv],
                               capture_output=True, env=env, cwd=tmp_path)
            assert p.returncode == code, (argv, p.returncode, p.stdout, p.stderr)
            outputs.append(p.stdout)
        assert outputs[0] == outputs[1], argv
        if code != 2:
            assert json.loads(outputs[0])["exit_code"] == code


@pytest.mark.slow
@pytest.mark.skipif(not SLOW, reason="set CG_SLOW=1")
def test_full_optimality_and_skeleton_lemma_n4(cgs4):
    for g in cgs4:
        for sem in ("lwf", "amp"):
            assert verify_theorem1(g, sem, mode="full").optimal
            assert skeleton_lemma_violations(g, sem) == []
