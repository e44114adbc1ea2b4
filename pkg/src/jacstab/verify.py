"""Named property suites: each checks one theorem-shaped claim by brute force.

Every suite is deterministic given (bounds, trials, seed) and reports the
first counterexample it finds.  Per-graph randomness is seeded from the
graph's index so results do not depend on the job count.
"""

from __future__ import annotations

import random
from functools import partial
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from .abel_jacobi import (
    AJDatum,
    certify_unstable_on_vine,
    classify_extension,
    sigma_extends,
    vine_bidegree,
    vine_phi,
)
from .atlas import chambers
from .corpus import (
    random_nondegenerate_phi,
    random_phi,
    random_small_perturbation_phi,
    random_wall_phi,
    stable_graph_corpus,
)
from .errors import TrivialTwistError
from fractions import Fraction
from .graph import enumerate_vines, spanning_tree_count
from .stability import (
    equivalent_small_perturbation_check,
    find_equality_witness,
    is_nondegenerate,
    is_small_perturbation,
    is_stable,
    stable_sheaf_data,
    verify_support_lemma,
    SheafDatum,
)

SUITES = ("cor25", "support-lemma", "tree-count", "wall-criterion", "prop41")


@dataclass
class SuiteResult:
    suite: str
    passed: bool
    cases: int
    counterexample: str | None = None

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        line = "%s: %s (%d cases)" % (self.suite, status, self.cases)
        if self.counterexample:
            line += "\n  first counterexample: %s" % self.counterexample
        return line


def _per_graph_rng(seed: int, index: int) -> random.Random:
    return random.Random((seed, index))


def _map_graphs(fn, graphs, jobs):
    work = list(enumerate(graphs))
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, work, chunksize=32))
    return [fn(item) for item in work]


def _collect(suite, results):
    cases = sum(c for c, _ in results)
    for _, bad in results:
        if bad is not None:
            return SuiteResult(suite, False, cases, bad)
    return SuiteResult(suite, True, cases)


# --- cor25: small perturbation <=> trivial bundle stable -------------------

def _cor25_one(args, trials=50, seed=0):
    index, graph = args
    rng = _per_graph_rng(seed, index)
    cases = 0
    for t in range(trials):
        # alternate wild and near-zero samples to hit both truth values
        phi = (random_phi(graph, rng) if t % 2 == 0
               else random_small_perturbation_phi(graph, rng))
        lhs = is_small_perturbation(graph, phi)
        rhs = equivalent_small_perturbation_check(graph, phi)
        cases += 1
        if lhs != rhs:
            return cases, "%r phi=%r: inequality route %s, trivial-bundle route %s" % (
                graph, phi, lhs, rhs)
    return cases, None


def suite_cor25(max_vertices=4, max_edges=7, trials=50, seed=0, jobs=1):
    graphs = stable_graph_corpus(max_vertices, max_edges)
    fn = partial(_cor25_one, trials=trials, seed=seed)
    return _collect("cor25", _map_graphs(fn, graphs, jobs))


# --- Wall criterion: closed form vs brute-force equality search ------------

def _wall_one(args, trials=50, seed=0):
    index, graph = args
    rng = _per_graph_rng(seed, index)
    cases = 0
    for _ in range(trials):
        phi = random_phi(graph, rng)
        closed = is_nondegenerate(graph, phi)
        brute = find_equality_witness(graph, phi) is None
        cases += 1
        if closed != brute:
            return cases, "%r phi=%r: closed form %s, brute force %s" % (
                graph, phi, closed, brute)
    wall = random_wall_phi(graph, rng)
    if wall is not None:
        cases += 1
        if is_nondegenerate(graph, wall) or find_equality_witness(graph, wall) is None:
            return cases, "%r wall phi=%r not reported degenerate" % (graph, wall)
    return cases, None


def suite_wall_criterion(max_vertices=4, max_edges=7, trials=50, seed=0, jobs=1):
    graphs = stable_graph_corpus(max_vertices, max_edges)
    fn = partial(_wall_one, trials=trials, seed=seed)
    return _collect("wall-criterion", _map_graphs(fn, graphs, jobs))


# --- Support lemma shadow ---------------------------------------------------

def _support_one(args, trials=5, seed=0):
    index, graph = args
    rng = _per_graph_rng(seed, index)
    cases = 0
    for _ in range(trials):
        phi = random_small_perturbation_phi(graph, rng)
        outcome = verify_support_lemma(graph, phi)
        cases += 1
        if outcome is not True:
            F, c0 = outcome
            return cases, "%r phi=%r: %r violates on C0=%s" % (
                graph, phi, F, sorted(c0.vertex_set))
    return cases, None


def suite_support_lemma(max_vertices=4, max_edges=7, trials=5, seed=0, jobs=1):
    graphs = stable_graph_corpus(max_vertices, max_edges)
    fn = partial(_support_one, trials=trials, seed=seed)
    return _collect("support-lemma", _map_graphs(fn, graphs, jobs))


# --- Spanning-tree count of stable multidegrees ------------------------------

def _tree_one(args, trials=50, seed=0):
    index, graph = args
    rng = _per_graph_rng(seed, index)
    expected = spanning_tree_count(graph)
    cases = 0
    for _ in range(trials):
        phi = random_nondegenerate_phi(graph, rng)
        got = len(stable_sheaf_data(graph, phi, 0, include_nonfree=False))
        cases += 1
        if got != expected:
            return cases, "%r phi=%r: %d stable multidegrees, %d spanning trees" % (
                graph, phi, got, expected)
    return cases, None


def suite_tree_count(max_vertices=4, max_edges=7, trials=50, seed=0, jobs=1):
    graphs = stable_graph_corpus(max_vertices, max_edges)
    fn = partial(_tree_one, trials=trials, seed=seed)
    return _collect("tree-count", _map_graphs(fn, graphs, jobs))


# --- prop41: extension classification round trip ------------------------------

def _is_unit_difference(a) -> bool:
    return (sorted(a) == sorted([1, -1] + [0] * (len(a) - 2))
            if len(a) >= 2 else False)


def brute_force_extends(g: int, n: int, aj: AJDatum) -> bool:
    """Independent decision: every e >= 2 vine must admit a chamber of the
    small-perturbation interval whose stable table contains the AJ bidegree."""
    for vine in enumerate_vines(g, n, 2):
        m = vine_bidegree(vine, aj)
        half_e = Fraction(vine.e, 2)
        found = False
        for ch in chambers(vine, (-half_e, half_e)):
            if any(F.key[1][0] == m for F in ch.stable_table):
                found = True
                break
        if not found:
            return False
    return True


def _recheck_certificate(cert) -> bool:
    """Re-verify a negative certificate with direct stability evaluations
    at two interior points of every chamber."""
    vine = cert.vine
    graph = vine.to_graph()
    bundle = SheafDatum(graph, frozenset(),
                        {0: cert.bidegree, 1: -cert.bidegree})
    for lo, hi, _degs in cert.chambers:
        width = hi - lo
        for x in ((lo + hi) / 2, lo + width / 4):
            if is_stable(graph, vine_phi(vine, x), bundle):
                return False
    return True


def suite_prop41(max_genus=3, max_markings=3, seed=0, **_ignored):
    cases = 0
    for g in range(1, max_genus + 1):
        for n in range(1, max_markings + 1):
            for k in (-1, 0, 1):
                for a in product(range(-2, 3), repeat=n):
                    if k * (2 - 2 * g) + sum(a) != 0:
                        continue
                    aj = AJDatum(k, a, g, n)
                    expected = _is_unit_difference(a) and k * (2 - 2 * g) == 0
                    cases += 1
                    label = "g=%d n=%d k=%d a=%s" % (g, n, k, list(a))
                    if aj.is_trivial:
                        try:
                            classify_extension(g, n, aj, seed)
                        except TrivialTwistError:
                            continue
                        return SuiteResult("prop41", False, cases,
                                           label + ": trivial twist not rejected")
                    result = classify_extension(g, n, aj, seed)
                    if result.extends != expected:
                        return SuiteResult(
                            "prop41", False, cases,
                            label + ": classified %s, expected %s"
                            % (result.extends, expected))
                    if result.extends != brute_force_extends(g, n, aj):
                        return SuiteResult(
                            "prop41", False, cases,
                            label + ": disagrees with chamber brute force")
                    if result.extends:
                        check = sigma_extends(g, n, aj, result.phi_table)
                        if not check.extends:
                            return SuiteResult(
                                "prop41", False, cases,
                                label + ": yes-table fails sigma_extends at %s"
                                % check.witness)
                    else:
                        if not _recheck_certificate(result.certificate):
                            return SuiteResult(
                                "prop41", False, cases,
                                label + ": certificate failed re-check")
    return SuiteResult("prop41", True, cases)


def run_suite(name: str, max_vertices=4, max_edges=7, trials=50,
              seed=0, jobs=1) -> SuiteResult:
    if name == "cor25":
        return suite_cor25(max_vertices, max_edges, trials, seed, jobs)
    if name == "support-lemma":
        return suite_support_lemma(max_vertices, max_edges,
                                   min(trials, 5), seed, jobs)
    if name == "tree-count":
        return suite_tree_count(max_vertices, max_edges, trials, seed, jobs)
    if name == "wall-criterion":
        return suite_wall_criterion(max_vertices, max_edges, trials, seed, jobs)
    if name == "prop41":
        return suite_prop41(seed=seed)
    raise ValueError("unknown suite %r; expected one of %s" % (name, SUITES))
