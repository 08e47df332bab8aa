"""Splicing two graphs at a vertex pair, and the class-merging analysis
across a tight cut.

Side conventions everywhere: for a cut with shore X, side 1 is the
contraction keeping X (the complement shrinks) and side 2 keeps the
complement.  splice() returns a graph in which g1 keeps every vertex
and edge id; g2 is remapped into fresh ranges and each joined edge
keeps its g1-side id, so iterated splices leave earlier ids stable.
"""

from __future__ import annotations

import dataclasses
from itertools import permutations
from typing import Mapping, NamedTuple, Optional

from .cuts import contractions, is_separating_cut, is_tight_cut
from .dependence import is_equivalence_class
from .errors import CapabilityError, DomainError, VerificationError
from .matching import has_pm_containing, is_admissible
from .multigraph import CanonicalForm, Cut, MultiGraph, canonical_form

VARIANT_DEGREE_LIMIT = 8


@dataclasses.dataclass(frozen=True)
class SpliceSpec:
    """Inputs of one splice: graphs, splice vertices, and the boundary
    bijection pi mapping edge ids of g1's star at v1 to g2's star at v2.
    pi=None pairs the stars in sorted id order."""

    g1: MultiGraph
    v1: int
    g2: MultiGraph
    v2: int
    pi: Optional[Mapping[int, int]] = None


class SplicingCut(Cut):
    """Splicing cut that remembers, per cut edge id, the original
    (g1 edge, g2 edge) pair it joins, so pi is recoverable."""

    def __init__(
        self,
        graph: MultiGraph,
        shore: frozenset[int],
        provenance: Mapping[int, tuple[int, int]],
    ):
        super().__init__(graph, shore)
        self.provenance = dict(provenance)


class SpliceResult(NamedTuple):
    graph: MultiGraph
    cut: SplicingCut
    vertex_map: dict[int, int]  # g2 vertex id -> result id (v2 excluded)
    edge_map: dict[int, int]  # g2 edge id -> result id (star edges -> joined id)


def splice(spec: SpliceSpec) -> SpliceResult:
    """(g1 (.) g2)_{v1,v2,pi}: remove v1 and v2, then join the loose end
    of each e in the star of v1 to the loose end of pi(e).

    The result has |V(g1)| + |V(g2)| - 2 vertices; the returned cut is
    the boundary of V(g1) - v1 and has deg(v1) edges.
    """
    g1, v1, g2, v2 = spec.g1, spec.v1, spec.g2, spec.v2
    if not g1.has_vertex(v1):
        raise DomainError(f"vertex {v1} is not in the first graph")
    if not g2.has_vertex(v2):
        raise DomainError(f"vertex {v2} is not in the second graph")
    star1 = sorted(g1.incident(v1))
    star2 = sorted(g2.incident(v2))
    if len(star1) != len(star2):
        raise DomainError(
            f"degree mismatch: deg({v1}) = {len(star1)} vs deg({v2}) = {len(star2)}"
        )
    if spec.pi is None:
        pi = dict(zip(star1, star2))
    else:
        pi = dict(spec.pi)
        if sorted(pi) != star1 or sorted(pi.values()) != star2:
            raise DomainError(
                "pi must be a bijection between the stars of the splice vertices"
            )

    vertex_map: dict[int, int] = {}
    fresh_v = g1._next_vertex
    for w in g2.vertices:
        if w == v2:
            continue
        vertex_map[w] = fresh_v
        fresh_v += 1
    star2_set = set(star2)
    edge_map: dict[int, int] = {}
    fresh_e = g1._next_edge
    for e in g2.edge_ids:
        if e in star2_set:
            continue
        edge_map[e] = fresh_e
        fresh_e += 1

    endpoints: dict[int, tuple[int, int]] = {}
    edge_labels: dict[int, str] = {}
    for e in g1.edge_ids:
        u, w = g1.endpoints(e)
        if v1 in (u, w):
            continue
        endpoints[e] = (u, w)
        if e in g1.edge_labels:
            edge_labels[e] = g1.edge_labels[e]
    for e, new_id in edge_map.items():
        u, w = g2.endpoints(e)
        endpoints[new_id] = (vertex_map[u], vertex_map[w])
        if e in g2.edge_labels:
            edge_labels[new_id] = g2.edge_labels[e]
    provenance: dict[int, tuple[int, int]] = {}
    for e in star1:
        u = g1.other_end(e, v1)
        w = g2.other_end(pi[e], v2)
        endpoints[e] = (u, vertex_map[w])
        provenance[e] = (e, pi[e])
        if e in g1.edge_labels:
            edge_labels[e] = g1.edge_labels[e]
        edge_map[pi[e]] = e

    vertices = [w for w in g1.vertices if w != v1]
    vertices.extend(vertex_map.values())
    vertex_labels = {
        w: lab for w, lab in g1.vertex_labels.items() if w != v1
    }
    for w, lab in g2.vertex_labels.items():
        if w != v2:
            vertex_labels[vertex_map[w]] = lab
    graph = MultiGraph.with_ids(
        vertices,
        endpoints,
        next_vertex_id=fresh_v,
        next_edge_id=fresh_e,
        vertex_labels=vertex_labels,
        edge_labels=edge_labels,
    )
    shore = frozenset(w for w in g1.vertices if w != v1)
    cut = SplicingCut(graph, shore, provenance)
    return SpliceResult(graph, cut, vertex_map, edge_map)


def splice_variants(
    g1: MultiGraph, v1: int, g2: MultiGraph, v2: int
) -> dict[CanonicalForm, SpliceResult]:
    """All splice outcomes over the boundary bijections, keyed by
    canonical form (first witness kept).  Gated at degree 8: beyond
    that the factorial sweep is refused."""
    star1 = sorted(g1.incident(v1)) if g1.has_vertex(v1) else None
    star2 = sorted(g2.incident(v2)) if g2.has_vertex(v2) else None
    if star1 is None or star2 is None:
        raise DomainError("splice vertices must exist in their graphs")
    if len(star1) != len(star2):
        raise DomainError(
            f"degree mismatch: deg({v1}) = {len(star1)} vs deg({v2}) = {len(star2)}"
        )
    if len(star1) > VARIANT_DEGREE_LIMIT:
        raise CapabilityError(
            f"variant sweep over {len(star1)}! bijections refused "
            f"(degree limit {VARIANT_DEGREE_LIMIT})"
        )
    out: dict[CanonicalForm, SpliceResult] = {}
    for perm in permutations(star2):
        result = splice(SpliceSpec(g1, v1, g2, v2, dict(zip(star1, perm))))
        form = canonical_form(result.graph)
        if form not in out:
            out[form] = result
    return out


# -- class restriction and merging across a cut ------------------------------


@dataclasses.dataclass(frozen=True)
class CrossSupport:
    """For an edge set F inside one contraction side: the cut edges e
    whose forced set F + {e} still extends to a perfect matching of
    that contraction."""

    side: int
    edges: frozenset[int]
    support: frozenset[int]


def _side_graph(g: MultiGraph, cut: Cut, side: int) -> MultiGraph:
    if side not in (1, 2):
        raise DomainError("side must be 1 (shore kept) or 2 (complement kept)")
    g1, g2 = contractions(g, cut)
    return g1 if side == 1 else g2


def cross_support(
    g: MultiGraph, c: Cut | frozenset[int], side: int, F
) -> CrossSupport:
    """Support of F across a separating cut, computed on the side's
    contraction with one forced-matchability call per cut edge."""
    cut = c if isinstance(c, Cut) and c.graph is g else g.cut(
        c.shore if isinstance(c, Cut) else c
    )
    f_edges = frozenset(F)
    if f_edges & cut.edges:
        raise DomainError("F must be disjoint from the cut")
    if not is_separating_cut(g, cut):
        raise DomainError("cross support is defined over separating cuts")
    side_graph = _side_graph(g, cut, side)
    for e in f_edges:
        if not side_graph.has_edge_id(e):
            raise DomainError(f"edge {e} is not on side {side} of the cut")
    forced = tuple(sorted(f_edges))
    support = frozenset(
        e for e in cut.edges if has_pm_containing(side_graph, forced + (e,))
    )
    return CrossSupport(side, f_edges, support)


def check_merge(
    g: MultiGraph,
    c: Cut | frozenset[int],
    F1,
    F2,
    *,
    cross_check: bool = False,
) -> bool:
    """Do the contraction classes F1 (side 1) and F2 (side 2) merge into
    one class of the whole graph?

    True iff their supports on the cut coincide with cardinality >= 2
    and every support edge is inadmissible in each contraction minus its
    class.  cross_check=True additionally computes the class directly on
    g and raises a verification error on disagreement.
    """
    cut = c if isinstance(c, Cut) and c.graph is g else g.cut(
        c.shore if isinstance(c, Cut) else c
    )
    if not is_tight_cut(g, cut):
        raise DomainError("merge analysis needs a tight cut")
    f1 = frozenset(F1)
    f2 = frozenset(F2)
    s1 = cross_support(g, cut, 1, f1).support
    s2 = cross_support(g, cut, 2, f2).support
    merged = s1 == s2 and len(s1) >= 2
    if merged:
        g1, g2 = contractions(g, cut)
        h1 = g1.delete_edges(f1)
        h2 = g2.delete_edges(f2)
        merged = all(not is_admissible(h1, e) for e in sorted(s1)) and all(
            not is_admissible(h2, e) for e in sorted(s2)
        )
    if cross_check:
        direct = is_equivalence_class(g, f1 | f2)
        if direct != merged:
            raise VerificationError(
                "merge-vs-direct",
                f"support predicate says {merged}, direct class "
                f"computation says {direct} for F1={sorted(f1)}, F2={sorted(f2)}",
            )
    return merged


class ClassRestriction(NamedTuple):
    edges: frozenset[int]
    relation: str  # "equals_class" | "subset_of_class" | "empty"


def restrict_class(
    g: MultiGraph, c: Cut | frozenset[int], F, side: int
) -> ClassRestriction:
    """F intersected with one contraction's edge set.  Across a tight
    cut a nonempty restriction is itself a class of the contraction;
    across a merely separating cut only containment is guaranteed."""
    cut = c if isinstance(c, Cut) and c.graph is g else g.cut(
        c.shore if isinstance(c, Cut) else c
    )
    side_graph = _side_graph(g, cut, side)
    edges = frozenset(e for e in F if side_graph.has_edge_id(e))
    if not edges:
        return ClassRestriction(edges, "empty")
    relation = "equals_class" if is_tight_cut(g, cut) else "subset_of_class"
    return ClassRestriction(edges, relation)
