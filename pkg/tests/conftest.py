"""Shared fixtures: the test corpus and random graph generators."""

from __future__ import annotations

import random

import pytest

from matchcover.generators import named_graph
from matchcover.matching import is_matching_covered
from matchcover.multigraph import MultiGraph
from matchcover.splicing import SpliceSpec, splice

NAMED = [
    "C4",
    "C6",
    "C8",
    "C10",
    "C12",
    "K4",
    "K6",
    "K3,3",
    "K4,4",
    "K5,5",
    "C6bar",
    "fig2b",
    "fig2c",
    "petersen",
    "prism3",
    "prism4",
    "prism5",
    "W5",
    "W7",
]


def _doubled(name: str, edge: int) -> MultiGraph:
    g = named_graph(name)
    u, v = g.endpoints(edge)
    return g.add_edge(u, v)[0]


def random_graph(rng: random.Random, n: int, extra: int) -> MultiGraph:
    """Connected graph on n vertices: a random spanning tree plus `extra`
    random edges. Not necessarily matchable."""
    g = MultiGraph(n)
    vertices = list(range(1, n + 1))
    rng.shuffle(vertices)
    for i in range(1, n):
        g = g.add_edge(vertices[i], rng.choice(vertices[:i]))[0]
    for _ in range(extra):
        u, v = rng.sample(range(1, n + 1), 2)
        g = g.add_edge(u, v)[0]
    return g


def random_mc_graph(rng: random.Random, n: int, extra: int) -> MultiGraph:
    """Random matching covered graph: an even cycle plus random chords,
    edges kept only while the graph stays matching covered."""
    assert n % 2 == 0 and n >= 4
    cycle = list(range(1, n + 1))
    rng.shuffle(cycle)
    g = MultiGraph(n)
    for i in range(n):
        g = g.add_edge(cycle[i], cycle[(i + 1) % n])[0]
    for _ in range(extra):
        u, v = rng.sample(range(1, n + 1), 2)
        candidate = g.add_edge(u, v)[0]
        if is_matching_covered(candidate):
            g = candidate
    return g


def random_splice(rng: random.Random, g1: MultiGraph, g2: MultiGraph) -> MultiGraph:
    v1 = rng.choice(g1.vertices)
    degree = len(g1.boundary({v1}))
    candidates = [v for v in g2.vertices if len(g2.boundary({v})) == degree]
    if not candidates:
        return None
    v2 = rng.choice(candidates)
    star1 = sorted(g1.boundary({v1}))
    star2 = sorted(g2.boundary({v2}))
    rng.shuffle(star2)
    return splice(SpliceSpec(g1, v1, g2, v2, dict(zip(star1, star2)))).graph


def build_corpus() -> list[tuple[str, MultiGraph]]:
    graphs: list[tuple[str, MultiGraph]] = [(name, named_graph(name)) for name in NAMED]
    graphs.append(("C4+parallel", _doubled("C4", 1)))
    graphs.append(("K4+parallel", _doubled("K4", 1)))
    graphs.append(("C6bar+parallel", _doubled("C6bar", 7)))
    rng = random.Random(20240601)
    seeds = ["K4", "C6bar", "C6", "prism3", "K3,3", "W5"]
    made = 0
    while made < 8:
        a = named_graph(rng.choice(seeds))
        b = named_graph(rng.choice(seeds))
        g = random_splice(rng, a, b)
        if g is None or g.n > 16:
            continue
        made += 1
        graphs.append((f"splice{made}", g))
    return graphs


_CORPUS = build_corpus()


@pytest.fixture(scope="session")
def corpus() -> list[tuple[str, MultiGraph]]:
    return _CORPUS


def corpus_params():
    return [pytest.param(g, id=name) for name, g in _CORPUS]
