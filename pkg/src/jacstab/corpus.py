"""Graph corpora and randomized samplers for the property suites.

The exhaustive corpus enumerates every connected stable dual graph within
the given vertex/edge/genus/marking bounds, deduplicated under vertex
relabeling (brute force over the <= 4! permutations; no general
isomorphism machinery is needed at this size).
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product

from .graph import DualGraph
from .stability import PhiVector, is_nondegenerate, is_small_perturbation

_DENOMINATORS = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _connected(num_vertices: int, ends: tuple[tuple[int, int], ...]) -> bool:
    if num_vertices == 1:
        return True
    parent = list(range(num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in ends:
        parent[find(a)] = find(b)
    return len({find(v) for v in range(num_vertices)}) == 1


def _relabel(ends, perm):
    return tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in ends))


def _edge_multiset_classes(num_vertices: int, num_edges: int):
    """Connected edge multisets up to relabeling, with their automorphisms."""
    pair_types = [(i, j) for i in range(num_vertices)
                  for j in range(i, num_vertices)]
    perms = list(permutations(range(num_vertices)))
    seen = set()
    for combo in combinations_with_replacement(pair_types, num_edges):
        ends = tuple(sorted(combo))
        if not _connected(num_vertices, ends):
            continue
        canon = min(_relabel(ends, p) for p in perms)
        if canon in seen:
            continue
        seen.add(canon)
        auts = [p for p in perms if _relabel(canon, p) == canon]
        yield canon, auts


def stable_graph_corpus(max_vertices: int = 4, max_edges: int = 7,
                        max_genus: int = 3, max_markings: int = 2) -> list[DualGraph]:
    """All connected stable graphs within the bounds, up to relabeling."""
    graphs = []
    for nv in range(1, max_vertices + 1):
        min_e = nv - 1
        max_e = min(max_edges, nv + max_genus - 1)  # keeps b1 <= max_genus
        for ne in range(min_e, max_e + 1):
            for ends, auts in _edge_multiset_classes(nv, ne):
                b1 = ne - nv + 1
                h_budget = max_genus - b1
                if h_budget < 0:
                    continue
                inverses = [{p[v]: v for v in range(nv)} for p in auts]
                for n in range(1, max_markings + 1):
                    seen = set()
                    for hs in product(range(h_budget + 1), repeat=nv):
                        g = sum(hs) + b1
                        if not 1 <= g <= max_genus:
                            continue
                        for assign in product(range(nv), repeat=n):
                            marks = tuple(
                                tuple(sorted(i + 1 for i in range(n)
                                             if assign[i] == v))
                                for v in range(nv))
                            key = min(
                                tuple((hs[inv[v]], marks[inv[v]])
                                      for v in range(nv))
                                for inv in inverses)
                            if key in seen:
                                continue
                            seen.add(key)
                            graph = DualGraph.build(
                                [(v, hs[v], marks[v]) for v in range(nv)],
                                ends, n, g)
                            if any(2 * hs[v] - 2 + graph.valence(v)
                                   + len(marks[v]) <= 0 for v in range(nv)):
                                continue
                            graphs.append(graph)
    return graphs


def random_phi(graph: DualGraph, rng: random.Random, spread: int = 3) -> PhiVector:
    """Random exact rational phi summing to zero."""
    q = rng.choice(_DENOMINATORS)
    vids = sorted(graph.vertex_ids)
    vals = {vid: Fraction(rng.randint(-spread * q, spread * q), q)
            for vid in vids[:-1]}
    vals[vids[-1]] = -sum(vals.values(), Fraction(0))
    return PhiVector(graph, vals)


def random_nondegenerate_phi(graph: DualGraph, rng: random.Random,
                             spread: int = 3) -> PhiVector:
    for _ in range(1000):
        phi = random_phi(graph, rng, spread)
        if is_nondegenerate(graph, phi):
            return phi
    raise RuntimeError("failed to sample a nondegenerate phi")


def random_small_perturbation_phi(graph: DualGraph,
                                  rng: random.Random) -> PhiVector:
    """Random nondegenerate phi with |phi(C0)| < cr(C0)/2 everywhere."""
    nv = len(graph.vertices)
    if nv == 1:
        phi = PhiVector(graph, {graph.vertex_ids[0]: Fraction(0)})
        return phi
    min_cr = min(len(info.crossing) for info in graph.subcurve_data)
    vids = sorted(graph.vertex_ids)
    for _ in range(1000):
        q = rng.choice(_DENOMINATORS)
        # numerator box keeps every subcurve sum inside the bound
        bound = max(1, (min_cr * q) // (4 * nv))
        vals = {vid: Fraction(rng.randint(-bound, bound), q)
                for vid in vids[:-1]}
        vals[vids[-1]] = -sum(vals.values(), Fraction(0))
        phi = PhiVector(graph, vals)
        if is_small_perturbation(graph, phi) and is_nondegenerate(graph, phi):
            return phi
    raise RuntimeError("failed to sample a small-perturbation phi")


def random_wall_phi(graph: DualGraph, rng: random.Random) -> PhiVector | None:
    """Phi placed exactly on a wall of some subcurve, or None for 1 vertex."""
    if len(graph.vertices) < 2:
        return None
    info = rng.choice(graph.subcurve_data)
    cr = len(info.crossing)
    target = Fraction(rng.randint(-2, 2)) - Fraction(cr, 2)
    inside = sorted(info.vertex_set)
    outside = sorted(set(graph.vertex_ids) - info.vertex_set)
    vals = {vid: Fraction(0) for vid in graph.vertex_ids}
    vals[inside[0]] = target
    vals[outside[0]] = -target
    return PhiVector(graph, vals)


def random_stable_graph(rng: random.Random, max_vertices: int = 5) -> DualGraph:
    """A random connected stable dual graph (for sum-to-zero spot checks)."""
    nv = rng.randint(1, max_vertices)
    ends = []
    for v in range(1, nv):
        ends.append((rng.randint(0, v - 1), v))
    for _ in range(rng.randint(0, 3)):
        a = rng.randint(0, nv - 1)
        b = rng.randint(0, nv - 1)
        ends.append((min(a, b), max(a, b)))
    hs = [rng.randint(0, 2) for _ in range(nv)]
    n = rng.randint(1, 4)
    assign = [rng.randint(0, nv - 1) for _ in range(n)]
    marks = [tuple(sorted(i + 1 for i in range(n) if assign[i] == v))
             for v in range(nv)]
    graph = DualGraph.build([(v, hs[v], marks[v]) for v in range(nv)], ends, n)
    # repair stability / genus by bumping component genera
    changed = True
    while changed:
        changed = False
        for v in range(nv):
            if 2 * hs[v] - 2 + graph.valence(v) + len(marks[v]) <= 0:
                hs[v] += 1
                changed = True
        if sum(hs) + len(ends) - nv + 1 < 1:
            hs[0] += 1
            changed = True
        if changed:
            graph = DualGraph.build(
                [(v, hs[v], marks[v]) for v in range(nv)], ends, n)
    return graph
