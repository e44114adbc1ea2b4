"""Wall-and-chamber decomposition of the one-parameter vine stability space.

For a two-vertex graph the stability parameter is determined by the single
value x = phi(side 1), so the decomposition is an arrangement of points on a
line: the walls are exactly {m - e/2 : m integer}.  Each chamber carries the
(constant) table of stable sheaf data computed at its midpoint.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .graph import VineCurve, enumerate_vines
from .stability import PhiVector, SheafDatum, datum_to_dict, stable_sheaf_data


@dataclass(frozen=True)
class WallSet:
    vine: VineCurve
    lo: Fraction
    hi: Fraction
    walls: tuple[Fraction, ...]


@dataclass(frozen=True)
class Chamber:
    lo: Fraction
    hi: Fraction
    representative: Fraction
    stable_table: tuple[SheafDatum, ...]
    is_small_perturbation: bool

    @property
    def table_keys(self) -> tuple[tuple, ...]:
        return tuple(F.key for F in self.stable_table)


@dataclass(frozen=True)
class AtlasRecord:
    g: int
    n: int
    vine: VineCurve
    wall_set: WallSet
    chambers: tuple[Chamber, ...]
    # one (added, removed) pair of datum keys per interior wall
    deltas: tuple[tuple[tuple, tuple], ...]


def walls(vine: VineCurve, window: tuple[Fraction, Fraction]) -> WallSet:
    """Wall positions x with x + e/2 integral, inside the closed window."""
    lo, hi = Fraction(window[0]), Fraction(window[1])
    if lo > hi:
        raise ValueError("window lo must be <= hi")
    half_e = Fraction(vine.e, 2)
    positions = [Fraction(m) - half_e
                 for m in range(ceil(lo + half_e), floor(hi + half_e) + 1)]
    return WallSet(vine, lo, hi, tuple(positions))


def vine_phi(vine: VineCurve, x: Fraction) -> PhiVector:
    graph = vine.to_graph()
    return PhiVector(graph, {0: Fraction(x), 1: -Fraction(x)})


def _is_wall(vine: VineCurve, x: Fraction) -> bool:
    return (x + Fraction(vine.e, 2)).denominator == 1


def chambers(vine: VineCurve, window: tuple[Fraction, Fraction],
             include_nonfree: bool = False) -> list[Chamber]:
    """Maximal open intervals between walls, each with its stable table."""
    wall_set = walls(vine, window)
    lo, hi = wall_set.lo, wall_set.hi
    cuts = sorted({lo, hi} | {w for w in wall_set.walls if lo < w < hi})
    graph = vine.to_graph()
    out = []
    for a, b in zip(cuts, cuts[1:]):
        rep = (a + b) / 2
        width = b - a
        while _is_wall(vine, rep):  # guard; cannot occur for this arrangement
            rep += width / 1000
        phi = PhiVector(graph, {0: rep, 1: -rep})
        table = tuple(stable_sheaf_data(graph, phi, 0, include_nonfree))
        half_e = Fraction(vine.e, 2)
        out.append(Chamber(a, b, rep, table,
                           a >= -half_e and b <= half_e))
    return out


def _record_for_vine(args) -> AtlasRecord:
    g, n, vine, window, include_nonfree = args
    wall_set = walls(vine, window)
    chs = tuple(chambers(vine, window, include_nonfree))
    deltas = []
    for left, right in zip(chs, chs[1:]):
        lk, rk = set(left.table_keys), set(right.table_keys)
        deltas.append((tuple(sorted(rk - lk)), tuple(sorted(lk - rk))))
    return AtlasRecord(g, n, vine, wall_set, chs, tuple(deltas))


def atlas(g: int, n: int, window: tuple[Fraction, Fraction],
          include_nonfree: bool = False, jobs: int = 1) -> list[AtlasRecord]:
    """Records for every vine of (g, n), in canonical vine order.

    Deterministic regardless of the job count: records are computed per
    vine and re-sorted canonically before returning.
    """
    if g < 1 or n < 1:
        raise ValueError("require g >= 1 and n >= 1")
    vines = enumerate_vines(g, n, 1)
    work = [(g, n, v, (Fraction(window[0]), Fraction(window[1])),
             include_nonfree) for v in vines]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_record_for_vine, work))
    else:
        records = [_record_for_vine(w) for w in work]
    records.sort(key=lambda r: (r.vine.e, r.vine.g1, r.vine.S))
    return records


# --- serialization ---------------------------------------------------------

def _frac(x: Fraction) -> str:
    return str(x)


def table_string(chamber: Chamber) -> str:
    """Canonical compact rendering of a stable table, e.g. ``(0,0) (1,-1)``.

    Non-free data carry their edge set: ``S{0,2}(0,-1)``.
    """
    parts = []
    for F in chamber.stable_table:
        s, degs = F.key
        deg_str = "(%s)" % ",".join(str(d) for d in degs)
        parts.append(deg_str if not s else
                     "S{%s}%s" % (",".join(map(str, s)), deg_str))
    return " ".join(parts)


def record_to_dict(record: AtlasRecord) -> dict:
    return {
        "g": record.g,
        "n": record.n,
        "vine": {"g1": record.vine.g1, "g2": record.vine.g2,
                 "e": record.vine.e, "S": list(record.vine.S)},
        "window": [_frac(record.wall_set.lo), _frac(record.wall_set.hi)],
        "walls": [_frac(w) for w in record.wall_set.walls],
        "chambers": [
            {
                "lo": _frac(c.lo),
                "hi": _frac(c.hi),
                "representative": _frac(c.representative),
                "is_small_perturbation": c.is_small_perturbation,
                "stable_table": [datum_to_dict(F) for F in c.stable_table],
            }
            for c in record.chambers
        ],
        "wall_crossing_deltas": [
            {"added": [list(map(list, k)) for k in added],
             "removed": [list(map(list, k)) for k in removed]}
            for added, removed in record.deltas
        ],
    }


def atlas_to_json(records: list[AtlasRecord]) -> str:
    if not records:
        return json.dumps({"records": []}, indent=2) + "\n"
    payload = {
        "g": records[0].g,
        "n": records[0].n,
        "records": [record_to_dict(r) for r in records],
    }
    return json.dumps(payload, indent=2) + "\n"


CSV_COLUMNS = ["g", "n", "g1", "g2", "e", "S", "chamber_lo", "chamber_hi",
               "is_small_perturbation", "table"]


def atlas_to_csv(records: list[AtlasRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        for c in r.chambers:
            writer.writerow([
                r.g, r.n, r.vine.g1, r.vine.g2, r.vine.e,
                ";".join(map(str, r.vine.S)),
                _frac(c.lo), _frac(c.hi),
                int(c.is_small_perturbation), table_string(c),
            ])
    return buf.getvalue()


def export(records: list[AtlasRecord], path, fmt: str = "json") -> None:
    if fmt == "json":
        text = atlas_to_json(records)
    elif fmt == "csv":
        text = atlas_to_csv(records)
    else:
        raise ValueError("unknown format: %s" % fmt)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
