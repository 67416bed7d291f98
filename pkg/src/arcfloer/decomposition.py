"""Taxonomy of the dual graph: ruptures, trunks, ends and gcd invariants.

A rupture divisor meets at least three other components.  Walking away
from a rupture along valency-two exceptional divisors either reaches a
leaf (an *end*, kept with the rupture and the leaf included) or another
rupture / strict transform (a *trunk*, endpoints excluded).  Each part
carries a gcd invariant ``d`` which is the same for every adjacent pair
inside it; ``d(R)`` is the gcd of the rupture's multiplicity with all of
its neighbours'.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from .resolution import DualGraph


@dataclass(frozen=True)
class End:
    """Divisor path from a rupture to a leaf, both included."""

    rupture: int
    divisors: tuple[int, ...]  # starts at the rupture, ends at the leaf
    d: int


@dataclass(frozen=True)
class Trunk:
    """Valency-two chain between two anchors (ruptures or strict
    transforms), endpoints excluded; possibly empty."""

    anchors: tuple[int, int]
    divisors: tuple[int, ...]
    d: int


@dataclass
class GraphDecomposition:
    graph: DualGraph
    m: int
    ruptures: tuple[int, ...]
    in_r1: dict[int, bool]  # last Newton pair equal to (1, 1)?
    d_rupture: dict[int, int]
    ends: dict[int, tuple[End, ...]]  # per rupture, zero to two ends
    trunks: dict[tuple[int, int], Trunk]
    neighbors: dict[int, tuple[int, ...]]  # anchors reachable from a rupture
    shared_first_rupture: bool
    m_divisors: tuple[int, ...]  # exceptional ids with N dividing m
    e_dom: dict[int, Optional[int]]  # per rupture
    f_m: dict[int, tuple[int, ...]]  # per rupture: divisors from e_dom outward
    sides: dict[int, dict[str, object]]  # left/right/above branch split

    def trunk_of(self, divisor: int) -> Optional[Trunk]:
        for trunk in self.trunks.values():
            if divisor in trunk.divisors:
                return trunk
        return None

    def end_of(self, divisor: int) -> Optional[End]:
        for ends in self.ends.values():
            for end in ends:
                if divisor in end.divisors:
                    return end
        return None


def _gcd_along(graph: DualGraph, path: list[int]) -> int:
    values = {
        gcd(graph.nodes[path[i]].N, graph.nodes[path[i + 1]].N)
        for i in range(len(path) - 1)
    }
    assert len(values) == 1, "gcd not constant along a trunk/end"
    return values.pop()


def classify(graph: DualGraph, m: int) -> GraphDecomposition:
    """Identify ruptures, ends, trunks and all m-dependent distinguished
    divisors of an m-separating graph."""
    assert graph.is_m_separating(m), "graph is not m-separating"
    adj = graph.adjacency()
    val = {i: len(adj[i]) for i in graph.nodes}
    exceptional = set(graph.exceptional_ids())
    ruptures = tuple(sorted(i for i in exceptional if val[i] >= 3))
    stricts = set(graph.strict_nodes)
    anchors = set(ruptures) | stricts

    ends: dict[int, list[End]] = {r: [] for r in ruptures}
    trunks: dict[tuple[int, int], Trunk] = {}
    neighbors: dict[int, set[int]] = {r: set() for r in ruptures}

    def walk(a: int, first: int):
        """Follow the valency-two chain from anchor ``a`` through ``first``."""
        path = [a, first]
        while path[-1] not in anchors and val[path[-1]] == 2:
            nxt = [x for x in adj[path[-1]] if x != path[-2]]
            path.append(nxt[0])
        return path

    for a in sorted(anchors):
        for first in adj[a]:
            path = walk(a, first)
            tail = path[-1]
            if tail in anchors:
                key = (min(a, tail), max(a, tail))
                if key not in trunks:
                    interior = tuple(path[1:-1])
                    trunks[key] = Trunk(key, interior, _gcd_along(graph, path))
                if a in neighbors:
                    neighbors[a].add(tail)
                if tail in neighbors:
                    neighbors[tail].add(a)
            else:
                # leaf exceptional divisor: an end of the starting rupture
                assert val[tail] == 1 and tail in exceptional
                assert a in ruptures, "end reached from a non-rupture anchor"
                ends[a].append(
                    End(a, tuple(path), _gcd_along(graph, path))
                )

    for r in ruptures:
        assert len(ends[r]) <= 2, "a rupture can carry at most two ends"

    two_ended = [r for r in ruptures if len(ends[r]) == 2]
    assert len(two_ended) <= 1
    shared = bool(graph.r1_divisor) and len(set(graph.r1_divisor)) == 1 and (
        graph.r1_divisor[0] in ruptures
    )
    if two_ended:
        assert shared and two_ended[0] == graph.r1_divisor[0]

    d_rupture = {
        r: gcd(graph.nodes[r].N, *(graph.nodes[x].N for x in adj[r]))
        for r in ruptures
    }
    in_r1 = {r: graph.nodes[r].pairs[-1] == (1, 1) for r in ruptures}

    m_divisors = tuple(
        sorted(i for i in exceptional if m % graph.nodes[i].N == 0)
    )

    e_dom: dict[int, Optional[int]] = {}
    f_m: dict[int, tuple[int, ...]] = {}
    for r in ruptures:
        if m % graph.nodes[r].N == 0:
            e_dom[r] = r
            full = [r]
            for end in ends[r]:
                full.extend(end.divisors[1:])
            f_m[r] = tuple(full)
            continue
        hits = []
        for end in ends[r]:
            for pos, e in enumerate(end.divisors):
                if m % graph.nodes[e].N == 0:
                    hits.append((end, pos))
                    break
        assert len(hits) <= 1, "m-divisors in both ends of a shared rupture"
        if hits:
            end, pos = hits[0]
            e_dom[r] = end.divisors[pos]
            f_m[r] = end.divisors[pos:]
        else:
            e_dom[r] = None
            f_m[r] = ()

    # coverage: every exceptional divisor is a rupture, lies in an end, or
    # lies in a trunk, exclusively
    seen: dict[int, int] = {}
    for r in ruptures:
        seen[r] = seen.get(r, 0) + 1
    for r in ruptures:
        for end in ends[r]:
            for e in end.divisors[1:]:
                seen[e] = seen.get(e, 0) + 1
    for trunk in trunks.values():
        for e in trunk.divisors:
            seen[e] = seen.get(e, 0) + 1
    assert all(seen.get(i, 0) == 1 for i in exceptional), "taxonomy not a partition"

    sides = _branch_sides(graph, adj)

    return GraphDecomposition(
        graph=graph,
        m=m,
        ruptures=ruptures,
        in_r1=in_r1,
        d_rupture=d_rupture,
        ends={r: tuple(es) for r, es in ends.items()},
        trunks=trunks,
        neighbors={r: tuple(sorted(ns)) for r, ns in neighbors.items()},
        shared_first_rupture=shared,
        m_divisors=m_divisors,
        e_dom=e_dom,
        f_m=f_m,
        sides=sides,
    )


def _branch_sides(graph: DualGraph, adj) -> dict[int, dict[str, object]]:
    """Split the strict transforms around each exceptional divisor.

    The component of the root is the left side; the component continuing
    the divisor's own strip toward higher slope is the right side (only
    when the final pair is not (1, 1)); remaining components lie above.
    """
    from fractions import Fraction

    sides: dict[int, dict[str, object]] = {}
    strict_branch = {
        s: graph.nodes[s].branch for s in graph.strict_nodes
    }
    for e in graph.exceptional_ids():
        node = graph.nodes[e]
        left: set[int] = set()
        right: set[int] = set()
        above: dict[int, tuple[int, ...]] = {}
        for first in adj[e]:
            component = _component_without(graph, adj, e, first)
            branches = tuple(
                sorted(
                    strict_branch[s] for s in component if s in strict_branch
                )
            )
            if graph.root in component and e != graph.root:
                left.update(branches)
                continue
            fnode = graph.nodes[first]
            same_strip = (
                fnode.is_exceptional
                and fnode.chain == node.chain
                and len(fnode.pairs) == len(node.pairs)
            )
            if (
                node.pairs[-1] != (1, 1)
                and same_strip
                and Fraction(*fnode.pairs[-1]) > Fraction(*node.pairs[-1])
            ):
                right.update(branches)
            else:
                above[first] = branches
        sides[e] = {"left": tuple(sorted(left)), "right": tuple(sorted(right)),
                    "above": above}
    return sides


def _component_without(graph: DualGraph, adj, removed: int, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for nxt in adj[cur]:
            if nxt != removed and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen
