"""Dual graphs of stable pointed curves and their subcurve combinatorics.

A dual graph has one vertex per irreducible component (weighted by its
geometric genus ``h``), one edge per node (loops and parallel edges allowed)
and an assignment of the markings ``{1..n}`` to vertices.  Vine curves are
the two-vertex dual graphs; they are the decisive test objects for the
Abel-Jacobi extension question.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import InvalidGraphError, InvalidSubcurveError


@dataclass(frozen=True)
class Vertex:
    id: int
    h: int
    markings: frozenset[int]


@dataclass(frozen=True)
class Edge:
    id: int
    ends: tuple[int, int]

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class Subcurve:
    """A nonempty proper subset of the vertex set of a dual graph."""

    vertex_set: frozenset[int]


@dataclass(frozen=True)
class _SubcurveData:
    """Precomputed incidence data for one subcurve (internal)."""

    vertex_set: frozenset[int]
    vertices: tuple[int, ...]
    crossing: frozenset[int]   # edge ids with exactly one endpoint inside
    internal: frozenset[int]   # edge ids with both endpoints inside (loops incl.)


class DualGraph:
    """Vertex-weighted multigraph with markings; immutable by convention.

    Equality and hashing are by identity: objects derived from a graph
    (phi vectors, sheaf data) must reference the same instance.
    """

    def __init__(self, vertices, edges, n, g=None):
        self.vertices: tuple[Vertex, ...] = tuple(
            v if isinstance(v, Vertex) else Vertex(v[0], v[1], frozenset(v[2]))
            for v in vertices
        )
        self.edges: tuple[Edge, ...] = tuple(
            e if isinstance(e, Edge) else Edge(e[0], (min(e[1]), max(e[1])))
            for e in edges
        )
        self.n = int(n)
        if g is None:
            g = sum(v.h for v in self.vertices) + len(self.edges) - len(self.vertices) + 1
        self.g = int(g)

    def __repr__(self):
        return "DualGraph(g=%d, n=%d, V=%d, E=%d)" % (
            self.g, self.n, len(self.vertices), len(self.edges))

    @classmethod
    def build(cls, vertices, edge_ends, n, g=None) -> "DualGraph":
        """Build from (id, h, markings) triples and a list of end pairs.

        Edge ids are assigned 0, 1, ... in input order.
        """
        edges = [Edge(i, (min(vw), max(vw))) for i, vw in enumerate(edge_ends)]
        return cls(vertices, edges, n, g)

    @cached_property
    def signature(self) -> tuple:
        """Structural identity: two graphs with equal signatures are the
        same dual graph (used to detect mixed-graph operations)."""
        return (self.g, self.n, self.vertices, self.edges)

    @cached_property
    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices)

    @cached_property
    def vertex_by_id(self) -> dict[int, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def edge_by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    def valence(self, vid: int) -> int:
        """Number of edge ends at the vertex; a loop counts twice."""
        return sum(
            (e.ends[0] == vid) + (e.ends[1] == vid) for e in self.edges
        )

    @cached_property
    def loops_at(self) -> dict[int, frozenset[int]]:
        out = {v.id: set() for v in self.vertices}
        for e in self.edges:
            if e.is_loop:
                out[e.ends[0]].add(e.id)
        return {vid: frozenset(s) for vid, s in out.items()}

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj = {v.id: set() for v in self.vertices}
        for e in self.edges:
            a, b = e.ends
            if a in adj and b in adj:
                adj[a].add(b)
                adj[b].add(a)
        seen = {self.vertices[0].id}
        stack = [self.vertices[0].id]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    @cached_property
    def subcurve_data(self) -> tuple[_SubcurveData, ...]:
        """Incidence data for all nonempty proper vertex subsets.

        Deterministic order: by subset size, then by sorted vertex tuple.
        """
        ids = sorted(self.vertex_ids)
        out = []
        for size in range(1, len(ids)):
            for combo in combinations(ids, size):
                vset = frozenset(combo)
                crossing, internal = set(), set()
                for e in self.edges:
                    a, b = e.ends
                    inside = (a in vset) + (b in vset)
                    if inside == 1:
                        crossing.add(e.id)
                    elif inside == 2:
                        internal.add(e.id)
                out.append(_SubcurveData(vset, combo, frozenset(crossing),
                                         frozenset(internal)))
        return tuple(out)

    @cached_property
    def _subcurve_index(self) -> dict[frozenset[int], _SubcurveData]:
        return {d.vertex_set: d for d in self.subcurve_data}

    def subcurve_info(self, c0: Subcurve) -> _SubcurveData:
        data = self._subcurve_index.get(c0.vertex_set)
        if data is None:
            raise InvalidSubcurveError("subcurve not proper/nonempty: %s" % set(c0.vertex_set))
        return data


def validate(graph: DualGraph) -> list[str]:
    """Check all DualGraph invariants; return one diagnostic per violation."""
    diags = []
    ids = [v.id for v in graph.vertices]
    if len(set(ids)) != len(ids):
        diags.append("duplicate vertex ids")
    eids = [e.id for e in graph.edges]
    if len(set(eids)) != len(eids):
        diags.append("duplicate edge ids")
    known = set(ids)
    for e in graph.edges:
        if e.ends[0] not in known or e.ends[1] not in known:
            diags.append("edge %d references unknown vertex" % e.id)
    if not graph.is_connected():
        diags.append("graph not connected")
    seen_marks = []
    for v in graph.vertices:
        seen_marks.extend(v.markings)
    if sorted(seen_marks) != list(range(1, graph.n + 1)):
        diags.append("marking partition violated")
    total_h = sum(v.h for v in graph.vertices)
    if graph.g != total_h + len(graph.edges) - len(graph.vertices) + 1:
        diags.append("genus formula violated")
    for v in graph.vertices:
        if 2 * v.h - 2 + graph.valence(v.id) + len(v.markings) <= 0:
            diags.append("vertex instability at vertex %d" % v.id)
        if v.h < 0:
            diags.append("negative genus at vertex %d" % v.id)
    if graph.g < 1:
        diags.append("total genus below 1")
    if graph.n < 1:
        diags.append("fewer than 1 marking")
    return diags


def subcurves(graph: DualGraph):
    """All 2^#V - 2 nonempty proper subcurves, in deterministic order."""
    for data in graph.subcurve_data:
        yield Subcurve(data.vertex_set)


def crossing_count(graph: DualGraph, c0: Subcurve) -> int:
    """Number of edges with exactly one endpoint in the subcurve."""
    return len(graph.subcurve_info(c0).crossing)


def complement(graph: DualGraph, c0: Subcurve) -> Subcurve:
    return Subcurve(frozenset(graph.vertex_ids) - c0.vertex_set)


@dataclass(frozen=True, order=True)
class VineCurve:
    """Two smooth components of genera g1, g2 meeting in e nodes.

    Stored in canonical orientation: (g1, sorted side-1 markings) is
    lexicographically <= (g2, sorted side-2 markings).  ``S`` holds the
    markings on side 1.
    """

    e: int
    g1: int
    S: tuple[int, ...] = field(default=())
    g2: int = 0
    n: int = 1
    g: int = 1

    @property
    def side2_markings(self) -> tuple[int, ...]:
        return tuple(sorted(set(range(1, self.n + 1)) - set(self.S)))

    def to_graph(self) -> DualGraph:
        """Two-vertex dual graph: vertex 0 is side 1, vertex 1 is side 2."""
        return DualGraph.build(
            [(0, self.g1, self.S), (1, self.g2, self.side2_markings)],
            [(0, 1)] * self.e,
            self.n,
            self.g,
        )

    def __str__(self):
        return "vine(g1=%d, g2=%d, e=%d, S={%s})" % (
            self.g1, self.g2, self.e, ",".join(map(str, self.S)))


def _side_stable(h: int, e: int, marks: int) -> bool:
    return 2 * h - 2 + e + marks > 0


def make_vine(g1: int, g2: int, e: int, S, n: int) -> VineCurve:
    """Construct a vine in canonical orientation (sides swapped if needed)."""
    g = g1 + g2 + e - 1
    s1 = tuple(sorted(S))
    s2 = tuple(sorted(set(range(1, n + 1)) - set(s1)))
    if (g1, s1) <= (g2, s2):
        return VineCurve(e, g1, s1, g2, n, g)
    return VineCurve(e, g2, s2, g1, n, g)


def enumerate_vines(g: int, n: int, min_edges: int) -> list[VineCurve]:
    """All canonical vines with e >= min_edges for fixed (g, n).

    Finite because g1 + g2 + e - 1 = g forces e <= g + 1.  Both sides must
    satisfy the vertex stability inequality; duplicates under side swap
    are removed.
    """
    if g < 1 or n < 1 or min_edges < 1:
        raise ValueError("require g >= 1, n >= 1, min_edges >= 1")
    found = set()
    all_marks = set(range(1, n + 1))
    for e in range(max(min_edges, 1), g + 2):
        for g1 in range(0, g - e + 2):
            g2 = g - e + 1 - g1
            for size in range(0, n + 1):
                for s in combinations(sorted(all_marks), size):
                    if not _side_stable(g1, e, len(s)):
                        continue
                    if not _side_stable(g2, e, n - len(s)):
                        continue
                    found.add(make_vine(g1, g2, e, s, n))
    return sorted(found, key=lambda v: (v.e, v.g1, v.S))


def spanning_tree_count(graph: DualGraph) -> int:
    """Number of spanning trees of the underlying multigraph, loops ignored.

    Matrix-tree theorem with exact integer arithmetic (sympy determinant).
    """
    if not graph.is_connected():
        raise InvalidGraphError("graph not connected")
    nv = len(graph.vertices)
    if nv == 1:
        return 1
    import sympy

    index = {vid: i for i, vid in enumerate(sorted(graph.vertex_ids))}
    lap = sympy.zeros(nv, nv)
    for e in graph.edges:
        if e.is_loop:
            continue
        a, b = index[e.ends[0]], index[e.ends[1]]
        lap[a, a] += 1
        lap[b, b] += 1
        lap[a, b] -= 1
        lap[b, a] -= 1
    minor = lap[1:, 1:]
    return int(minor.det())


# --- JSON schema -----------------------------------------------------------
#
# {"genus": g, "n": n,
#  "vertices": [{"id": .., "h": .., "markings": [..]}],
#  "edges": [{"id": .., "ends": [v, w]}]}

def graph_to_dict(graph: DualGraph) -> dict:
    return {
        "genus": graph.g,
        "n": graph.n,
        "vertices": [
            {"id": v.id, "h": v.h, "markings": sorted(v.markings)}
            for v in graph.vertices
        ],
        "edges": [{"id": e.id, "ends": list(e.ends)} for e in graph.edges],
    }


def graph_from_dict(data: dict) -> DualGraph:
    try:
        vertices = [Vertex(v["id"], v["h"], frozenset(v["markings"]))
                    for v in data["vertices"]]
        edges = [Edge(e["id"], (min(e["ends"]), max(e["ends"])))
                 for e in data["edges"]]
        return DualGraph(vertices, edges, data["n"], data["genus"])
    except (KeyError, TypeError) as exc:
        raise InvalidGraphError("malformed graph JSON: %s" % exc) from exc


def graph_to_json(graph: DualGraph) -> str:
    return json.dumps(graph_to_dict(graph), indent=2)


def graph_from_json(text: str) -> DualGraph:
    return graph_from_dict(json.loads(text))
