"""The dependence relation on edges, its equivalence classes, and
removable edges/classes.

An edge e depends on f when every perfect matching through e also uses
f; operationally, e is inadmissible once f is deleted.  Mutual
dependence partitions the edge set; epsilon is the largest class size.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable

from .errors import DomainError
from .matching import has_pm_containing, is_matching_covered
from .multigraph import MultiGraph


def depends_on(g: MultiGraph, e: int, f: int) -> bool:
    """Does every perfect matching containing e contain f?  Reflexive."""
    for edge in (e, f):
        if not g.has_edge_id(edge):
            raise DomainError(f"unknown edge id {edge}")
    if e == f:
        return True
    return not has_pm_containing(g.delete_edge(f), (e,))


def mutually_dependent(g: MultiGraph, e: int, f: int) -> bool:
    return depends_on(g, e, f) and depends_on(g, f, e)


@dataclasses.dataclass(frozen=True)
class EquivalencePartition:
    """Classes of mutual dependence; sorted by minimum edge id."""

    classes: tuple[frozenset[int], ...]

    @property
    def epsilon(self) -> int:
        return max((len(c) for c in self.classes), default=0)

    def class_of(self, e: int) -> frozenset[int]:
        for c in self.classes:
            if e in c:
                return c
        raise DomainError(f"unknown edge id {e}")

    def __iter__(self):
        return iter(self.classes)

    def __len__(self) -> int:
        return len(self.classes)


def equivalence_partition(g: MultiGraph) -> EquivalencePartition:
    """The partition of E(g) into mutual-dependence classes.

    O(m^2) pairwise tests joined by union-find; pairs already joined
    transitively are skipped.
    """
    if not is_matching_covered(g):
        raise DomainError("equivalence partition needs a matching covered graph")
    ids = g.edge_ids
    parent = {e: e for e in ids}

    def find(e: int) -> int:
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    # One deletion graph per edge, so all queries against g - f share
    # that instance's matchability cache.
    deleted: dict[int, MultiGraph] = {}

    def minus(f: int) -> MultiGraph:
        if f not in deleted:
            deleted[f] = g.delete_edge(f)
        return deleted[f]

    for i, e in enumerate(ids):
        for f in ids[i + 1:]:
            if (
                find(e) != find(f)
                and not has_pm_containing(minus(f), (e,))
                and not has_pm_containing(minus(e), (f,))
            ):
                parent[find(f)] = find(e)
    groups: dict[int, set[int]] = {}
    for e in ids:
        groups.setdefault(find(e), set()).add(e)
    return EquivalencePartition(
        tuple(sorted((frozenset(c) for c in groups.values()), key=min))
    )


def class_of(g: MultiGraph, e: int) -> frozenset[int]:
    """The mutual-dependence class containing e, without building the
    whole partition (m pair tests instead of m^2)."""
    if not g.has_edge_id(e):
        raise DomainError(f"unknown edge id {e}")
    minus_e = g.delete_edge(e)
    out = [e]
    for f in g.edge_ids:
        if f == e:
            continue
        # f -> e first: those tests share one deletion graph's cache.
        if has_pm_containing(minus_e, (f,)):
            continue
        if not has_pm_containing(g.delete_edge(f), (e,)):
            out.append(f)
    return frozenset(out)


def is_equivalence_class(g: MultiGraph, edges: Iterable[int]) -> bool:
    """Is the given edge set exactly one class of the partition?"""
    f_set = frozenset(edges)
    if not f_set:
        return False
    return class_of(g, min(f_set)) == f_set


def epsilon(g: MultiGraph) -> int:
    return equivalence_partition(g).epsilon


def _reject_k2(g: MultiGraph) -> None:
    if g.n == 2:
        raise DomainError("edge removability is undefined on a graph of order 2")


def is_removable_edge(g: MultiGraph, e: int) -> bool:
    """Is g - e still matching covered?"""
    _reject_k2(g)
    if not g.has_edge_id(e):
        raise DomainError(f"unknown edge id {e}")
    return is_matching_covered(g.delete_edge(e))


def removable_edges(g: MultiGraph) -> tuple[int, ...]:
    _reject_k2(g)
    return tuple(e for e in g.edge_ids if is_matching_covered(g.delete_edge(e)))


def removable_classes(g: MultiGraph) -> tuple[frozenset[int], ...]:
    """The classes R of the partition for which g - R is matching covered."""
    _reject_k2(g)
    return tuple(
        c
        for c in equivalence_partition(g).classes
        if is_matching_covered(g.delete_edges(c))
    )
