import itertools

import pytest

from pcengel import collector as col, corpus
from pcengel.consistency import enumerate_elements, group_order
from pcengel.engel import (
    OrbitLimitError,
    conjugacy_orbit,
    engel3_verify,
    graph_check,
    graph_mismatches,
    is_pair_class_le2,
    sandwich_verify,
)
from pcengel.model import CommutativityGraph, generator_element, identity, validate
from pcengel.subgroups import contains, normal_closure
from pcengel.textio import evaluate

from conftest import SMALL

# orbit sizes pinned after the first run
ORBITS = {
    ("F_2_13", "x12"): 32, ("F_2_13", "x13"): 32, ("F_2_13", "x14"): 32,
    ("G_GAMMA", "e17"): 128, ("G_GAMMA", "e18"): 128, ("G_GAMMA", "e19"): 32, ("G_GAMMA", "e20"): 32,
    ("G_BETA", "b18"): 2048, ("G_BETA", "b26"): 256,
}

GRAPHS = {
    "G_BETA": (["x", "a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]),
    "G_GAMMA": (["x", "y", "a", "b"], [("x", "a"), ("y", "b"), ("a", "b")]),
    "COMPLETE_C2_4": (["x", "y", "a", "b"], list(itertools.combinations(["x", "y", "a", "b"], 2))),
    "FIVE_EDGE_32": (["x", "y", "a", "b"], [("x", "a"), ("x", "b"), ("y", "a"), ("y", "b"), ("a", "b")]),
    "FOUR_EDGE_64": (["x", "y", "a", "b"], [("x", "a"), ("x", "b"), ("y", "a"), ("y", "b")]),
    "FOUR_EDGE_256": (["a", "b", "c", "x"], [("a", "x"), ("c", "x"), ("a", "b"), ("b", "x")]),
}


def _graph(p, name):
    al = corpus.aliases_for(name)
    verts, edges = GRAPHS[name]
    idx = {v: p.index_of(al.get(v, v)) for v in verts}
    return CommutativityGraph.from_pairs([idx[v] for v in verts], [(idx[a], idx[b]) for a, b in edges])


@pytest.mark.parametrize("key", sorted(ORBITS))
def test_orbit_sizes(key):
    name, g = key
    p = corpus.load_named(name)
    orbit = conjugacy_orbit(p, generator_element(p, g))
    assert len(orbit) == ORBITS[key]
    assert group_order(p) % len(orbit) == 0


def test_orbit_identity_and_closure(F):
    assert conjugacy_orbit(F, identity(F)).elements == {identity(F)}
    x = generator_element(F, "x12")
    orbit = conjugacy_orbit(F, x)
    assert x in orbit and orbit.exhausted
    for m in orbit.elements:
        for j in range(1, F.n + 1):
            assert col.conjugate(F, m, generator_element(F, j)) in orbit


def test_orbit_against_all_conjugators(F):
    x = generator_element(F, "x12")
    brute = {col.conjugate(F, x, g) for g in enumerate_elements(F)}
    orbit = conjugacy_orbit(F, x)
    assert brute == set(orbit.elements)
    N = normal_closure(F, [x])
    assert all(contains(F, N, m) for m in orbit.elements)


def test_orbit_of_beta_x(GB):
    orbit = conjugacy_orbit(GB, generator_element(GB, "b18"))
    for i in range(19, 26):
        assert generator_element(GB, f"b{i}") in orbit


def test_orbit_limit(GB):
    with pytest.raises(OrbitLimitError, match="max-orbit"):
        conjugacy_orbit(GB, generator_element(GB, "b18"), size_limit=100)


def test_pair_class(F, small):
    x = generator_element(F, "x12")
    assert is_pair_class_le2(F, x, x)
    assert is_pair_class_le2(F, x, col.conjugate(F, x, generator_element(F, "x13")))
    p = small["FOUR_EDGE_64"]
    assert is_pair_class_le2(p, generator_element(p, "x"), generator_element(p, "y"))
    # <x, y z> with z = [x, y]^... fails in a class-3 group: D16-like pair in the 256 group
    q = small["FOUR_EDGE_256"]
    a, c = generator_element(q, "a"), generator_element(q, "c")
    assert is_pair_class_le2(q, a, c) == (
        col.commutator(q, col.commutator(q, a, c), a) == identity(q)
        and col.commutator(q, col.commutator(q, a, c), c) == identity(q)
    )


def test_sandwich_F(F):
    rep = sandwich_verify(F, ["x12", "x13", "x14"])
    assert rep.passed and rep.mode == "exhaustive-orbit"
    assert rep.checked == 3 * 3 * 32


def test_sandwich_gamma(GG):
    assert sandwich_verify(GG, ["e17", "e18", "e19", "e20"]).passed


def test_sampled_agrees_with_exhaustive(F, GG):
    s = sandwich_verify(F, ["x12", "x13", "x14"], "sampled", count=60, seed=5)
    assert s.passed and s.mode == "sampled(60, 5)" and s.checked == 3 * 60 * 3
    assert sandwich_verify(GG, ["e17", "e19"], "sampled", count=40, seed=1).passed
    with pytest.raises(ValueError):
        sandwich_verify(F, ["x12"], "bogus")


def test_abelian_is_sandwich(small):
    p = small["COMPLETE_C2_4"]
    assert sandwich_verify(p, ["x", "y", "a", "b"]).passed


def test_sandwich_counterexample_reported():
    # in S3 two distinct reflections generate a non-nilpotent group
    s3 = validate({"name": "S3", "generators": [("r", 3), ("s", 2)], "conj": {(1, 2): ((1, 2),)}})
    rep = sandwich_verify(s3, ["s"])
    assert not rep.passed
    assert rep.counterexamples == tuple(sorted(rep.counterexamples))
    s = generator_element(s3, "s")
    assert {z for _, _, z in rep.counterexamples} == set(conjugacy_orbit(s3, s).elements) - {s}
    assert not engel3_verify(s3, "s").passed


def test_engel3(F, GG, GB):
    assert engel3_verify(F, identity(F)).passed
    rep = engel3_verify(F, "x12")
    assert rep.passed and rep.checked == 32
    assert engel3_verify(GG, "e17").passed
    rep = engel3_verify(GB, "b18", "sampled", count=300, seed=42)
    assert rep.passed and rep.mode == "sampled(300, 42)"


def test_engel3_identity_relation(F):
    # [g, x] = (x^g)^-1 x
    x = generator_element(F, "x12")
    for g in list(enumerate_elements(F))[::257]:
        assert col.commutator(F, g, x) == col.multiply(F, col.inverse(F, col.conjugate(F, x, g)), x)


@pytest.mark.properties
@pytest.mark.parametrize("name", ["F_2_13", "G_GAMMA"] + list(SMALL))
def test_sandwich_implies_engel3(name):
    p = corpus.load_named(name)
    verts = GRAPHS.get(name, (["x", "y", "z"], []))[0]
    al = corpus.aliases_for(name)
    X = [evaluate(p, v, al) for v in verts]
    if sandwich_verify(p, X).passed:
        for x in X:
            assert engel3_verify(p, x).passed


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_graphs(name):
    p = corpus.load_named(name)
    G = _graph(p, name)
    assert graph_check(p, G)
    edges = sorted(G.edges, key=sorted)
    if edges:
        wrong = CommutativityGraph(G.vertices, G.edges - {edges[0]})
        assert not graph_check(p, wrong)
        assert len(graph_mismatches(p, wrong)) == 1
