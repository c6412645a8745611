"""Connected multigraphs with 2- and 3-valent vertices, up to isomorphism.

These are the combinatorial types underlying quotient covers: vertices of
valence 3 (simple branch vertices) and valence 2 (images of 4-valent
vertices upstairs).  Enumeration is brute force — vertex counts at desk
scale are tiny — with isomorphism rejection via a minimal canonical form
over all degree-preserving vertex bijections.

Automorphism counts are multigraph automorphisms: vertex bijections fixing
the edge multiset, times permutations of parallel edges, times a factor 2
per loop (the two half-edges of a loop may be swapped).  This is the group
the cover-multiplicity formulas divide by.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial


@dataclass(frozen=True)
class FeynmanGraph:
    """Multigraph on vertices 0..vertex_count-1; edges are unordered pairs.

    ``edges`` is kept sorted with each pair (u, v) satisfying u <= v, so two
    equal graphs compare equal structurally.  A pair with u == v is a loop
    and contributes 2 to the valence of u.
    """

    vertex_count: int
    edges: tuple

    def __post_init__(self):
        norm = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        for u, v in norm:
            if not (0 <= u <= v < self.vertex_count):
                raise ValueError("edge (%r, %r) out of range" % (u, v))
        object.__setattr__(self, "edges", norm)

    def degrees(self) -> list:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def loop_count(self) -> int:
        return sum(1 for u, v in self.edges if u == v)

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return False
        seen = {0}
        frontier = [0]
        adj = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        while frontier:
            x = frontier.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return len(seen) == self.vertex_count


@dataclass(frozen=True)
class GraphClass:
    graph: FeynmanGraph
    automorphism_count: int


def genus(graph: FeynmanGraph) -> int:
    """First Betti number r - s + 1 of a connected graph."""
    if not graph.is_connected():
        raise ValueError("genus is defined here for connected graphs only")
    return len(graph.edges) - graph.vertex_count + 1


def vertex_orderings(graph: FeynmanGraph) -> list:
    """All total orders of the vertices, as tuples, lexicographic."""
    return list(permutations(range(graph.vertex_count)))


def relabel(graph: FeynmanGraph, mapping) -> FeynmanGraph:
    """Apply a vertex bijection (mapping[v] = new name)."""
    return FeynmanGraph(
        graph.vertex_count,
        tuple((mapping[u], mapping[v]) for u, v in graph.edges),
    )


def _edge_multiplicities(edges):
    mult = {}
    for e in edges:
        mult[e] = mult.get(e, 0) + 1
    return mult


def automorphism_count(graph: FeynmanGraph, degree_classes=None) -> int:
    """Order of the multigraph automorphism group.

    Counts vertex bijections preserving the edge multiset (optionally
    restricted to preserve the given degree classes — equivalent, since any
    automorphism preserves degrees, but cheaper), then multiplies by the
    permutations of parallel edges and the 2 half-edge swaps of each loop.
    """
    maps = degree_classes or _degree_preserving_maps(graph.degrees())
    edges = graph.edges
    vertex_maps = 0
    for phi in maps:
        if tuple(sorted(tuple(sorted((phi[u], phi[v]))) for u, v in edges)) == edges:
            vertex_maps += 1
    out = vertex_maps * 2 ** graph.loop_count()
    for m in _edge_multiplicities(edges).values():
        out *= factorial(m)
    return out


def _degree_preserving_maps(degrees):
    """All vertex bijections preserving the degree function."""
    by_degree = {}
    for v, dv in enumerate(degrees):
        by_degree.setdefault(dv, []).append(v)
    blocks = list(by_degree.values())
    maps = []

    def rec(i, current):
        if i == len(blocks):
            maps.append(tuple(current[v] for v in range(len(degrees))))
            return
        block = blocks[i]
        for perm in permutations(block):
            for v, w in zip(block, perm):
                current[v] = w
            rec(i + 1, current)

    rec(0, [None] * len(degrees))
    return maps


def canonical_form(graph: FeynmanGraph, maps=None) -> tuple:
    """Lexicographically minimal edge tuple over degree-preserving bijections."""
    maps = maps or _degree_preserving_maps(graph.degrees())
    best = None
    for phi in maps:
        cand = tuple(sorted(tuple(sorted((phi[u], phi[v]))) for u, v in graph.edges))
        if best is None or cand < best:
            best = cand
    return best


def enumerate_graphs(three_valent: int, two_valent: int, allow_loops: bool = False) -> list:
    """One GraphClass per isomorphism type of connected multigraph whose
    degree sequence has exactly `three_valent` vertices of valence 3 and
    `two_valent` of valence 2 (the 3-valent ones get the low labels)."""
    if three_valent < 0 or two_valent < 0 or three_valent + two_valent < 1:
        raise ValueError("need a positive number of vertices")
    total = 3 * three_valent + 2 * two_valent
    if total % 2:
        raise ValueError(
            "degree sum %d is odd; no graph has %d 3-valent and %d 2-valent "
            "vertices" % (total, three_valent, two_valent)
        )
    s = three_valent + two_valent
    target = [3] * three_valent + [2] * two_valent

    candidates = [
        (u, v)
        for u in range(s)
        for v in range(u if allow_loops else u + 1, s)
    ]
    # normalize loops to (u, u); candidate list is lex-sorted pairs
    candidates = sorted(tuple(sorted(p)) for p in candidates)

    found = {}
    maps = _degree_preserving_maps(target)

    def rec(start, remaining, chosen):
        if all(x == 0 for x in remaining):
            g = FeynmanGraph(s, tuple(chosen))
            if not g.is_connected():
                return
            canon = canonical_form(g, maps)
            if canon not in found:
                rep = FeynmanGraph(s, canon)
                found[canon] = GraphClass(rep, automorphism_count(rep, maps))
            return
        for i in range(start, len(candidates)):
            u, v = candidates[i]
            if u == v:
                if remaining[u] < 2:
                    continue
                remaining[u] -= 2
            else:
                if remaining[u] < 1 or remaining[v] < 1:
                    continue
                remaining[u] -= 1
                remaining[v] -= 1
            chosen.append((u, v))
            rec(i, remaining, chosen)
            chosen.pop()
            if u == v:
                remaining[u] += 2
            else:
                remaining[u] += 1
                remaining[v] += 1

    rec(0, list(target), [])
    return [found[c] for c in sorted(found)]


def to_dot(graph: FeynmanGraph, edge_labels=None, title="graph") -> str:
    """DOT rendering with vertex labels x1..xs and edge labels q1..qr.

    edge_labels, if given, maps edge index -> extra annotation appended to
    the q-label (used for weight/crossing decorations on covers).
    """
    lines = ["graph %s {" % title]
    for v in range(graph.vertex_count):
        lines.append('  v%d [label="x%d"];' % (v, v + 1))
    for idx, (u, v) in enumerate(graph.edges):
        label = "q%d" % (idx + 1)
        if edge_labels and idx in edge_labels:
            label += " " + edge_labels[idx]
        lines.append('  v%d -- v%d [label="%s"];' % (u, v, label))
    lines.append("}")
    return "\n".join(lines)
