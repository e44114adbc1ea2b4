"""Abel-Jacobi multidegrees and the extension classifier.

The twist data (k; a_1, ..., a_n) determines the line bundle
omega^{-k}(a_1 p_1 + ... + a_n p_n); its multidegree on a dual graph is

    D(v) = -k * (2 h_v - 2 + val(v)) + sum_{i in markings(v)} a_i,

which sums to zero by the degree constraint k(2-2g) + sum a_i = 0.  The
Abel-Jacobi section extends over a small-perturbation stability parameter
exactly when this multidegree is stable on every vine with e >= 2 nodes.

Scope note: stability parameters are handled per vine.  A table passing all
checks here is the vine shadow of a global parameter; whether it always
lifts to one is not decided by this package, and reports say so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .atlas import chambers, vine_phi
from .errors import (
    IncompleteTableError,
    JacstabError,
    PhiConstructionError,
    TrivialTwistError,
)
from .graph import DualGraph, VineCurve, enumerate_vines
from .stability import (
    SheafDatum,
    epsilon_stream,
    is_nondegenerate,
    is_small_perturbation,
    is_stable,
)

SCOPE_NOTE = ("phi table is per-vine; whether it lifts to a global "
              "stability parameter is not decided here")


@dataclass(frozen=True)
class AJDatum:
    """Twist data (k; a_1, ..., a_n) for fixed (g, n)."""

    k: int
    a: tuple[int, ...]
    g: int
    n: int

    def check(self) -> None:
        if len(self.a) != self.n:
            raise JacstabError("twist vector length %d != n=%d"
                               % (len(self.a), self.n))
        lhs = self.k * (2 - 2 * self.g) + sum(self.a)
        if lhs != 0:
            raise JacstabError(
                "degree constraint violated: k(2-2g) + sum(a) = %d" % lhs)

    @property
    def is_trivial(self) -> bool:
        return self.k * (2 - 2 * self.g) == 0 and all(x == 0 for x in self.a)


def aj_multidegree(graph: DualGraph, aj: AJDatum) -> dict[int, int]:
    """Multidegree of omega^{-k}(sum a_i p_i) on the dual graph."""
    aj.check()
    if aj.g != graph.g or aj.n != graph.n:
        raise JacstabError("twist data for (g=%d, n=%d) applied to %r"
                           % (aj.g, aj.n, graph))
    out = {}
    for v in graph.vertices:
        out[v.id] = (-aj.k * (2 * v.h - 2 + graph.valence(v.id))
                     + sum(aj.a[i - 1] for i in v.markings))
    return out


def vine_bidegree(vine: VineCurve, aj: AJDatum) -> int:
    """Side-1 degree of the Abel-Jacobi bundle on the vine."""
    return (-aj.k * (2 * vine.g1 - 2 + vine.e)
            + sum(aj.a[i - 1] for i in vine.S))


class VinePhiTable:
    """Map from canonical vines of one (g, n) to exact rational phi(side 1)."""

    def __init__(self, g: int, n: int, entries):
        self.g = int(g)
        self.n = int(n)
        self.entries = {vine: Fraction(x) for vine, x in entries.items()}

    def get(self, vine: VineCurve) -> Fraction:
        return self.entries[vine]

    def missing_for(self, vines) -> list[VineCurve]:
        return [v for v in vines if v not in self.entries]

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "n": self.n,
            "entries": [
                {"g1": v.g1, "g2": v.g2, "e": v.e, "S": list(v.S),
                 "phi": str(x)}
                for v, x in sorted(self.entries.items(),
                                   key=lambda kv: (kv[0].e, kv[0].g1, kv[0].S))
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VinePhiTable":
        g, n = data["g"], data["n"]
        entries = {}
        for row in data["entries"]:
            vine = VineCurve(row["e"], row["g1"], tuple(sorted(row["S"])),
                             row["g2"], n, g)
            entries[vine] = Fraction(row["phi"])
        return cls(g, n, entries)


@dataclass(frozen=True)
class ExtendsResult:
    extends: bool
    witness: VineCurve | None
    witness_bidegree: int | None = None


def sigma_extends(g: int, n: int, aj: AJDatum,
                  table: VinePhiTable) -> ExtendsResult:
    """Check stability of the Abel-Jacobi multidegree on all e >= 2 vines.

    The table must cover every such vine; the first failing vine (canonical
    order) is returned as witness.
    """
    aj.check()
    vines = enumerate_vines(g, n, 2)
    missing = table.missing_for(vines)
    if missing:
        raise IncompleteTableError(missing)
    for vine in vines:
        graph = vine.to_graph()
        D = aj_multidegree(graph, aj)
        phi = vine_phi(vine, table.get(vine))
        if not is_stable(graph, phi, SheafDatum(graph, frozenset(), D)):
            return ExtendsResult(False, vine, D[0])
    return ExtendsResult(True, None)


def construct_prop_phi(g: int, n: int, i: int, j: int,
                       seed: int = 0) -> VinePhiTable:
    """Per-vine stability table stabilizing the bundle O(p_i - p_j).

    Every e = 1 vine gets phi(side 1) = 0; an e >= 2 vine gets
    1/2*[i in S] - 1/2*[j in S] plus a deterministic small perturbation.
    Postconditions (checked per entry, with re-draws): nondegenerate,
    small perturbation, and O(p_i - p_j) stable on the vine.
    """
    if i == j:
        raise JacstabError("markings i and j must differ")
    if not (1 <= i <= n and 1 <= j <= n):
        raise JacstabError("markings out of range for n=%d" % n)
    target = AJDatum(0, tuple(1 if m == i else -1 if m == j else 0
                              for m in range(1, n + 1)), g, n)
    entries = {}
    for vine in enumerate_vines(g, n, 1):
        if vine.e == 1:
            entries[vine] = Fraction(0)
            continue
        base = (Fraction(1, 2) * (i in vine.S)
                - Fraction(1, 2) * (j in vine.S))
        graph = vine.to_graph()
        bundle = SheafDatum(graph, frozenset(),
                            aj_multidegree(graph, target))
        eps_iter = epsilon_stream(seed)
        for attempt in range(50):
            x = base + next(eps_iter)
            phi = vine_phi(vine, x)
            if (is_nondegenerate(graph, phi)
                    and is_small_perturbation(graph, phi)
                    and is_stable(graph, phi, bundle)):
                entries[vine] = x
                break
        else:
            raise PhiConstructionError(
                "no admissible perturbation for %s" % vine)
    return VinePhiTable(g, n, entries)


@dataclass(frozen=True)
class ChamberCertificate:
    """Exhaustive evidence that a bidegree is stable in no chamber."""

    vine: VineCurve
    bidegree: int
    # (lo, hi, line-bundle side-1 degrees) per small-perturbation chamber
    chambers: tuple[tuple[Fraction, Fraction, tuple[int, ...]], ...]


@dataclass(frozen=True)
class ClassificationResult:
    extends: bool
    witness: VineCurve | None
    witness_bidegree: int | None
    phi_table: VinePhiTable | None
    certificate: ChamberCertificate | None

    def to_report(self) -> dict:
        report = {
            "extends": self.extends,
            "witness_vine": None,
            "phi_table": self.phi_table.to_dict() if self.phi_table else None,
            "note": SCOPE_NOTE,
        }
        if self.witness is not None:
            report["witness_vine"] = {
                "g1": self.witness.g1, "g2": self.witness.g2,
                "e": self.witness.e, "S": list(self.witness.S),
                "bidegree": [self.witness_bidegree, -self.witness_bidegree],
            }
        if self.certificate is not None:
            report["certificate"] = {
                "chambers": [
                    {"lo": str(lo), "hi": str(hi),
                     "stable_bidegrees": list(degs)}
                    for lo, hi, degs in self.certificate.chambers
                ]
            }
        return report


def _unit_difference_markings(a: tuple[int, ...]):
    """Return (i, j) with a = e_i - e_j, or None."""
    pos = [m + 1 for m, x in enumerate(a) if x == 1]
    neg = [m + 1 for m, x in enumerate(a) if x == -1]
    rest = [x for x in a if x not in (0, 1, -1)]
    if len(pos) == 1 and len(neg) == 1 and not rest \
            and sum(1 for x in a if x != 0) == 2:
        return pos[0], neg[0]
    return None


def certify_unstable_on_vine(vine: VineCurve, m: int) -> ChamberCertificate | None:
    """Enumerate all chambers of the small-perturbation interval.

    Returns a certificate if the bidegree (m, -m) is stable in none of
    them, else None.  The stable-bidegree set is constant per chamber, so
    the check is finite and exact.
    """
    half_e = Fraction(vine.e, 2)
    rows = []
    for ch in chambers(vine, (-half_e, half_e)):
        degs = tuple(F.key[1][0] for F in ch.stable_table)
        if m in degs:
            return None
        rows.append((ch.lo, ch.hi, degs))
    return ChamberCertificate(vine, m, tuple(rows))


def classify_extension(g: int, n: int, aj: AJDatum,
                       seed: int = 0) -> ClassificationResult:
    """Decide whether the Abel-Jacobi section extends over some
    small-perturbation stability table, with constructive evidence.

    "yes" answers carry a table from :func:`construct_prop_phi` that passes
    :func:`sigma_extends`; "no" answers carry an obstructing vine together
    with an exhaustive chamber certificate.
    """
    if aj.is_trivial:
        raise TrivialTwistError("trivial twist")
    aj.check()
    if aj.g != g or aj.n != n:
        raise JacstabError("twist data context differs from (g, n)")

    ij = _unit_difference_markings(aj.a)
    if ij is not None and aj.k * (2 - 2 * g) == 0:
        table = construct_prop_phi(g, n, ij[0], ij[1], seed)
        result = sigma_extends(g, n, aj, table)
        if not result.extends:
            raise PhiConstructionError(
                "constructed table fails on %s" % result.witness)
        return ClassificationResult(True, None, None, table, None)

    for vine in enumerate_vines(g, n, 2):
        m = vine_bidegree(vine, aj)
        cert = certify_unstable_on_vine(vine, m)
        if cert is not None:
            return ClassificationResult(False, vine, m, None, cert)
    raise JacstabError(
        "no obstructing vine found for a non-unit twist; "
        "classification criterion violated")
