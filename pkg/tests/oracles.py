"""Independent brute-force oracles used only by the tests."""

from itertools import combinations


def count_spanning_trees_exhaustive(graph):
    """Enumerate all (#V - 1)-subsets of non-loop edges, count the trees."""
    vids = list(graph.vertex_ids)
    if len(vids) == 1:
        return 1
    non_loops = [e for e in graph.edges if not e.is_loop]
    count = 0
    for subset in combinations(non_loops, len(vids) - 1):
        parent = {v: v for v in vids}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for e in subset:
            ra, rb = find(e.ends[0]), find(e.ends[1])
            if ra == rb:
                acyclic = False
                break
            parent[ra] = rb
        if acyclic:
            count += 1
    return count
