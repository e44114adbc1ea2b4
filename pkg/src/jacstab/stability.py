"""Stability parameters and the stability inequality for sheaf data.

A rank-1 torsion-free sheaf on a nodal curve is modeled combinatorially by a
pair ``F = (S, D)``: the set ``S`` of edges (nodes) where the stalk fails to
be locally free, and the integer multidegree ``D`` on the partial
normalization.  For a subcurve ``C0``::

    deg_C0(F)   = sum_{v in C0} D(v) + #{S-edges with both ends in C0}
    delta_C0(F) = #(S  intersect  crossing edges of C0)

and ``F`` is phi-stable when, for every nonempty proper subcurve,

    | deg_C0(F) - phi(C0) + delta_C0(F)/2 |  <  (cr(C0) - delta_C0(F)) / 2

(semistable with <=).  All arithmetic is exact (``fractions.Fraction``).

Wall criterion
--------------
Equality in the inequality above forces

    deg_C0 = phi(C0) - delta/2 +- (cr - delta)/2
           = phi(C0) + cr/2 - delta      or      phi(C0) - cr/2,

both solvable in integers (deg_C0, delta in [0, cr]) exactly when
phi(C0) + cr(C0)/2 is an integer.  Hence phi is degenerate iff some
subcurve satisfies phi(C0) + cr(C0)/2 in Z.  The closed form is
cross-checked against the brute-force equality search
(:func:`find_equality_witness`) in the test suite.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import chain, combinations
from math import ceil, floor

from .errors import (
    DegenerateParameterError,
    MismatchedGraphError,
    PhiConstructionError,
    PreconditionError,
    UnknownEdgeError,
)
from .graph import DualGraph, Subcurve, VineCurve, complement, subcurves


class PhiVector:
    """Exact rational vertex weights summing to zero on one graph."""

    def __init__(self, graph: DualGraph, values):
        self.graph = graph
        self.values = {vid: Fraction(x) for vid, x in values.items()}
        if set(self.values) != set(graph.vertex_ids):
            raise MismatchedGraphError("phi values must cover exactly the vertex set")
        if sum(self.values.values()) != 0:
            raise ValueError("phi values must sum to 0, got %s"
                             % sum(self.values.values()))

    def __repr__(self):
        return "PhiVector(%s)" % {k: str(v) for k, v in sorted(self.values.items())}


class SheafDatum:
    """Combinatorial rank-1 torsion-free sheaf: non-free edges S, degrees D."""

    def __init__(self, graph: DualGraph, S, D):
        self.graph = graph
        self.S = frozenset(S)
        self.D = {vid: int(d) for vid, d in D.items()}
        known_edges = set(graph.edge_by_id)
        if not self.S <= known_edges:
            raise UnknownEdgeError("unknown edge ids in S: %s"
                                   % sorted(self.S - known_edges))
        if set(self.D) != set(graph.vertex_ids):
            raise MismatchedGraphError("multidegree must cover exactly the vertex set")

    @property
    def key(self) -> tuple:
        """Canonical sort/identity key: (sorted S, D in vertex-id order)."""
        return (tuple(sorted(self.S)),
                tuple(self.D[vid] for vid in sorted(self.D)))

    @property
    def is_line_bundle(self) -> bool:
        return not self.S

    def __repr__(self):
        return "SheafDatum(S=%s, D=%s)" % (sorted(self.S), self.key[1])

    def __eq__(self, other):
        return (isinstance(other, SheafDatum)
                and self.graph is other.graph and self.key == other.key)

    def __hash__(self):
        return hash(self.key)


def total_degree(F: SheafDatum) -> int:
    return sum(F.D.values()) + len(F.S)


def degree_on(F: SheafDatum, c0: Subcurve) -> int:
    info = F.graph.subcurve_info(c0)
    return sum(F.D[v] for v in info.vertices) + len(F.S & info.internal)


def delta_on(F: SheafDatum, c0: Subcurve) -> int:
    return len(F.S & F.graph.subcurve_info(c0).crossing)


def phi_of(phi: PhiVector, c0: Subcurve) -> Fraction:
    """Exact rational sum of phi over the subcurve's vertices."""
    info = phi.graph.subcurve_info(c0)
    return sum((phi.values[v] for v in info.vertices), Fraction(0))


def _check_same_graph(graph, *objs):
    for obj in objs:
        if obj.graph is not graph and obj.graph.signature != graph.signature:
            raise MismatchedGraphError("object attached to a different graph")


def _phi_context(graph, phi):
    # Scaled to integers: with phi(C0) = p/q, the inequality
    # |deg - p/q + delta/2| < (cr - delta)/2 becomes
    # |2q*deg - 2p + q*delta| < q*(cr - delta).
    ctx = []
    for info in graph.subcurve_data:
        x = sum(phi.values[v] for v in info.vertices)
        ctx.append((info.vertices, info.internal, info.crossing,
                    len(info.crossing), 2 * x.numerator, x.denominator))
    return ctx


def _satisfies_ctx(ctx, F, strict: bool) -> bool:
    S, D = F.S, F.D
    for verts, internal, crossing, cr, twop, q in ctx:
        deg = sum(D[v] for v in verts)
        if S:
            deg += len(S & internal)
            delta = len(S & crossing)
        else:
            delta = 0
        lhs = abs(2 * q * deg - twop + q * delta)
        rhs = q * (cr - delta)
        if lhs > rhs or (strict and lhs == rhs):
            return False
    return True


def _satisfies(graph, phi, F, strict: bool) -> bool:
    return _satisfies_ctx(_phi_context(graph, phi), F, strict)


def is_stable(graph: DualGraph, phi: PhiVector, F: SheafDatum) -> bool:
    """Strict stability inequality over every nonempty proper subcurve.

    Single-vertex graphs have no proper subcurves and are vacuously stable.
    """
    _check_same_graph(graph, phi, F)
    return _satisfies(graph, phi, F, strict=True)


def is_semistable(graph: DualGraph, phi: PhiVector, F: SheafDatum) -> bool:
    _check_same_graph(graph, phi, F)
    return _satisfies(graph, phi, F, strict=False)


def is_nondegenerate(graph: DualGraph, phi: PhiVector) -> bool:
    """Closed-form wall test: degenerate iff some phi(C0) + cr(C0)/2 in Z."""
    _check_same_graph(graph, phi)
    for info in graph.subcurve_data:
        x = sum(phi.values[v] for v in info.vertices)
        if (x + Fraction(len(info.crossing), 2)).denominator == 1:
            return False
    return True


def find_equality_witness(graph: DualGraph, phi: PhiVector):
    """Brute-force search for an equality instance of the inequality.

    Independent oracle for :func:`is_nondegenerate`: scans every subcurve,
    every delta in [0, cr] and every integer degree in the window
    |deg - phi + delta/2| <= (cr + 1)/2.  Returns (C0, deg, delta) or None.
    """
    _check_same_graph(graph, phi)
    for info in graph.subcurve_data:
        cr = len(info.crossing)
        x = sum(phi.values[v] for v in info.vertices)
        for delta in range(cr + 1):
            center = x - Fraction(delta, 2)
            half = Fraction(cr + 1, 2)
            lo = ceil(center - half)
            hi = floor(center + half)
            for deg in range(lo, hi + 1):
                if abs(deg - x + Fraction(delta, 2)) == Fraction(cr - delta, 2):
                    return (Subcurve(info.vertex_set), deg, delta)
    return None


def is_small_perturbation(graph: DualGraph, phi: PhiVector) -> bool:
    """|phi(C0)| < cr(C0)/2 for every subcurve.

    Does not imply nondegeneracy; check that separately.
    """
    _check_same_graph(graph, phi)
    for info in graph.subcurve_data:
        x = sum(phi.values[v] for v in info.vertices)
        if not abs(2 * x) < len(info.crossing):
            return False
    return True


def equivalent_small_perturbation_check(graph: DualGraph, phi: PhiVector) -> bool:
    """Stability of the trivial line bundle (the bundle-side route).

    Must agree with :func:`is_small_perturbation` on every input; the test
    suite exercises the equivalence as an oracle.
    """
    trivial = SheafDatum(graph, frozenset(), {vid: 0 for vid in graph.vertex_ids})
    return is_stable(graph, phi, trivial)


def _integer_window(center: Fraction, half: Fraction) -> range:
    """Integers strictly inside (center - half, center + half)."""
    return range(floor(center - half) + 1, ceil(center + half))


def _edge_subsets(graph):
    eids = sorted(graph.edge_by_id)
    return chain.from_iterable(combinations(eids, k) for k in range(len(eids) + 1))


def stable_sheaf_data(graph: DualGraph, phi: PhiVector, d: int,
                      include_nonfree: bool = False) -> list[SheafDatum]:
    """The complete finite list of phi-stable sheaf data of total degree d.

    Requires phi nondegenerate (stable = semistable, so the list is
    unambiguous).  With ``include_nonfree=False`` only line bundles (S
    empty) are returned.  The search is bounded: the singleton-subcurve
    inequality pins each D(v) to a finite window; the last vertex is solved
    from the total-degree constraint.  Output is canonically ordered by
    (sorted S, D).
    """
    _check_same_graph(graph, phi)
    if not is_nondegenerate(graph, phi):
        raise DegenerateParameterError(
            "degenerate parameter: stable != semistable ambiguity")

    vids = sorted(graph.vertex_ids)
    results = []
    subsets = _edge_subsets(graph) if include_nonfree else [()]
    ctx = _phi_context(graph, phi)

    if len(vids) == 1:
        # No proper subcurves: D is pinned by the total degree and every
        # datum is vacuously stable.
        v = vids[0]
        for S in subsets:
            results.append(SheafDatum(graph, S, {v: d - len(S)}))
        results.sort(key=lambda F: F.key)
        return results

    singleton = {info.vertices[0]: info
                 for info in graph.subcurve_data if len(info.vertices) == 1}

    for S in subsets:
        Sset = frozenset(S)
        windows = []
        feasible = True
        for vid in vids:
            info = singleton[vid]
            cr = len(info.crossing)
            delta = len(Sset & info.crossing)
            loops_in_S = len(Sset & info.internal)
            center = phi.values[vid] - Fraction(delta, 2)
            half = Fraction(cr - delta, 2)
            window = [deg - loops_in_S for deg in _integer_window(center, half)]
            if not window:
                feasible = False
                break
            windows.append(window)
        if not feasible:
            continue
        target = d - len(Sset)
        last = windows[-1]
        last_set = set(last)

        def assign(i, partial, acc):
            if i == len(vids) - 1:
                rest = target - acc
                if rest in last_set:
                    D = dict(zip(vids, partial + [rest]))
                    F = SheafDatum(graph, Sset, D)
                    if _satisfies_ctx(ctx, F, strict=True):
                        results.append(F)
                return
            for dv in windows[i]:
                assign(i + 1, partial + [dv], acc + dv)

        assign(0, [], 0)

    results.sort(key=lambda F: F.key)
    return results


def verify_support_lemma(graph: DualGraph, phi: PhiVector):
    """Check the section-support incompatibility over stable degree-0 data.

    For every phi-stable degree-0 datum F and every subcurve C0 the strict
    bound deg_C0(F) < cr(C0) - delta_C0(F) must hold, so a nonzero section
    (which would force deg_C0(F) >= cr(C0)) cannot exist.  Returns True or
    the first violating (F, C0).
    """
    if not is_small_perturbation(graph, phi):
        raise PreconditionError("phi is not a small perturbation of 0")
    if not is_nondegenerate(graph, phi):
        raise PreconditionError("phi is degenerate")
    for F in stable_sheaf_data(graph, phi, 0, include_nonfree=True):
        for info in graph.subcurve_data:
            c0 = Subcurve(info.vertex_set)
            if not degree_on(F, c0) < len(info.crossing) - delta_on(F, c0):
                return (F, c0)
    return True


def epsilon_stream(seed: int):
    """Deterministic small rationals 1/(100*p) over successive primes p."""
    import sympy

    k = (int(seed) % 997) + 1
    while True:
        yield Fraction(1, 100 * sympy.prime(k))
        k += 1


def make_t_stable_phi(vine: VineCurve, t: int, seed: int = 0) -> PhiVector:
    """Nondegenerate phi on the vine making the line bundle (t, -t) stable.

    phi(side 1) = t + eps with eps a deterministic non-wall rational drawn
    from the seed; the stability postcondition is checked explicitly.
    """
    graph = vine.to_graph()
    target = SheafDatum(graph, frozenset(), {0: t, 1: -t})
    eps_iter = epsilon_stream(seed)
    for _ in range(50):
        x = t + next(eps_iter)
        phi = PhiVector(graph, {0: x, 1: -x})
        if not is_nondegenerate(graph, phi):
            continue
        if is_stable(graph, phi, target):
            return phi
    raise PhiConstructionError("no admissible perturbation found for %s, t=%d"
                               % (vine, t))


# --- JSON schemas ----------------------------------------------------------
#
# PhiVector:  {"values": {vertexId: "p/q"}}
# SheafDatum: {"S": [edgeIds], "D": {vertexId: int}}

def phi_to_dict(phi: PhiVector) -> dict:
    return {"values": {str(vid): str(phi.values[vid])
                       for vid in sorted(phi.values)}}


def phi_from_dict(graph: DualGraph, data: dict) -> PhiVector:
    return PhiVector(graph, {int(vid): Fraction(val)
                             for vid, val in data["values"].items()})


def datum_to_dict(F: SheafDatum) -> dict:
    return {"S": sorted(F.S), "D": {str(vid): F.D[vid] for vid in sorted(F.D)}}


def datum_from_dict(graph: DualGraph, data: dict) -> SheafDatum:
    return SheafDatum(graph, data["S"],
                      {int(vid): d for vid, d in data["D"].items()})
