"""Command-line surface: deterministic reports over the library operations.

Exit codes: 0 success, 1 domain error, 2 usage error.  Rationals are
accepted only as "p/q" strings (no decimals).  Set JACSTAB_LOG to a level
name (DEBUG, INFO, ...) for verbosity.
"""

from __future__ import annotations

import json
import logging
import os
import sys
from fractions import Fraction

import click

from . import abel_jacobi, stability, verify
from . import graph as graph_mod
from .atlas import atlas as build_atlas, atlas_to_csv, atlas_to_json, walls
from .errors import JacstabError

log = logging.getLogger("jacstab")


def _setup_logging():
    level = os.environ.get("JACSTAB_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def _fail(message: str) -> None:
    click.echo("error: %s" % message, err=True)
    sys.exit(1)


def _parse_fraction(text: str) -> Fraction:
    if "." in text:
        raise click.UsageError(
            "rationals must be given as p/q strings, not decimals: %r" % text)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError("bad rational %r: %s" % (text, exc))


def _parse_window(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split("..")
    if len(parts) != 2:
        raise click.UsageError("window must be lo..hi, e.g. -3..3")
    return _parse_fraction(parts[0]), _parse_fraction(parts[1])


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x != "")
    except ValueError:
        raise click.UsageError("expected comma-separated integers, got %r" % text)


def _load_graph(path: str) -> graph_mod.DualGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            g = graph_mod.graph_from_json(fh.read())
    except (OSError, json.JSONDecodeError) as exc:
        _fail("cannot read graph %s: %s" % (path, exc))
    diags = graph_mod.validate(g)
    if diags:
        _fail("invalid graph %s: %s" % (path, "; ".join(diags)))
    return g


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


@click.group()
def main():
    """Stability conditions for compactified Jacobians on dual graphs."""
    _setup_logging()


@main.command()
@click.option("--g", "g", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--min-edges", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@click.option("--out", type=click.Path(), default=None)
def vines(g, n, min_edges, fmt, out):
    """List canonical vine curves for (g, n)."""
    try:
        found = graph_mod.enumerate_vines(g, n, min_edges)
    except (JacstabError, ValueError) as exc:
        _fail(str(exc))
    if fmt == "json":
        payload = [{"g1": v.g1, "g2": v.g2, "e": v.e, "S": list(v.S)}
                   for v in found]
        _emit(json.dumps(payload, indent=2) + "\n", out)
    else:
        _emit("\n".join(str(v) for v in found) + "\n", out)


@main.command()
@click.option("--graph", "graph_path", type=click.Path(exists=True),
              required=True)
def check(graph_path):
    """Validate a graph JSON file; print diagnostics."""
    try:
        with open(graph_path, encoding="utf-8") as fh:
            g = graph_mod.graph_from_json(fh.read())
    except (OSError, json.JSONDecodeError, JacstabError) as exc:
        _fail("cannot read graph: %s" % exc)
    diags = graph_mod.validate(g)
    if diags:
        for d in diags:
            click.echo(d)
        sys.exit(1)
    click.echo("ok: %r" % g)


@main.command()
@click.option("--graph", "graph_path", type=click.Path(exists=True),
              required=True)
@click.option("--phi", "phi_path", type=click.Path(exists=True), required=True)
@click.option("--degree", type=int, default=0, show_default=True)
@click.option("--include-nonfree", is_flag=True, default=False)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@click.option("--out", type=click.Path(), default=None)
def stable(graph_path, phi_path, degree, include_nonfree, fmt, out):
    """List all phi-stable sheaf data of the given total degree."""
    g = _load_graph(graph_path)
    try:
        with open(phi_path, encoding="utf-8") as fh:
            phi = stability.phi_from_dict(g, json.load(fh))
        data = stability.stable_sheaf_data(g, phi, degree, include_nonfree)
    except (OSError, json.JSONDecodeError, KeyError, ValueError,
            JacstabError) as exc:
        _fail(str(exc))
    if fmt == "json":
        payload = [stability.datum_to_dict(F) for F in data]
        _emit(json.dumps(payload, indent=2) + "\n", out)
    else:
        _emit("\n".join(repr(F) for F in data) + "\n", out)


@main.command(name="walls")
@click.option("--g", "g", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--window", required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@click.option("--out", type=click.Path(), default=None)
def walls_cmd(g, n, window, fmt, out):
    """Wall positions for every vine of (g, n) inside the window."""
    lo, hi = _parse_window(window)
    try:
        vines = graph_mod.enumerate_vines(g, n, 1)
        sets = [walls(v, (lo, hi)) for v in vines]
    except (JacstabError, ValueError) as exc:
        _fail(str(exc))
    if fmt == "json":
        payload = [{"vine": {"g1": w.vine.g1, "g2": w.vine.g2,
                             "e": w.vine.e, "S": list(w.vine.S)},
                    "walls": [str(x) for x in w.walls]} for w in sets]
        _emit(json.dumps(payload, indent=2) + "\n", out)
    else:
        lines = ["%s: %s" % (w.vine, " ".join(str(x) for x in w.walls))
                 for w in sets]
        _emit("\n".join(lines) + "\n", out)


@main.command(name="atlas")
@click.option("--g", "g", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--window", required=True)
@click.option("--include-nonfree", is_flag=True, default=False)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
              default="json")
@click.option("--out", type=click.Path(), default=None)
@click.option("--jobs", type=int, default=1, show_default=True)
def atlas_cmd(g, n, window, include_nonfree, fmt, out, jobs):
    """Wall-and-chamber atlas over all vines of (g, n); deterministic."""
    lo, hi = _parse_window(window)
    try:
        records = build_atlas(g, n, (lo, hi), include_nonfree, jobs)
        text = (atlas_to_json(records) if fmt == "json"
                else atlas_to_csv(records))
    except (JacstabError, ValueError) as exc:
        _fail(str(exc))
    try:
        _emit(text, out)
    except OSError as exc:
        _fail("cannot write %s: %s" % (out, exc))


def _parse_twist(g, n, k, a_text):
    a = _parse_ints(a_text)
    return abel_jacobi.AJDatum(k, a, g, n)


@main.command(name="extends")
@click.option("--g", "g", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, default=0, show_default=True)
@click.option("--a", "a_text", required=True,
              help="comma-separated integers a_1,...,a_n")
@click.option("--phi", "phi_path", type=click.Path(exists=True), default=None,
              help="vine phi table JSON; default: constructed from the twist")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@click.option("--out", type=click.Path(), default=None)
def extends_cmd(g, n, k, a_text, phi_path, seed, fmt, out):
    """Check the Abel-Jacobi extension criterion against a phi table."""
    try:
        aj = _parse_twist(g, n, k, a_text)
        if phi_path:
            with open(phi_path, encoding="utf-8") as fh:
                table = abel_jacobi.VinePhiTable.from_dict(json.load(fh))
        else:
            ij = abel_jacobi._unit_difference_markings(aj.a)
            if ij is None:
                _fail("no --phi table given and the twist is not of the "
                      "form +-(e_i - e_j); provide a table explicitly")
            table = abel_jacobi.construct_prop_phi(g, n, ij[0], ij[1], seed)
        result = abel_jacobi.sigma_extends(g, n, aj, table)
    except (OSError, json.JSONDecodeError, KeyError, ValueError,
            JacstabError) as exc:
        _fail(str(exc))
    if fmt == "json":
        payload = {
            "extends": result.extends,
            "witness_vine": None if result.witness is None else {
                "g1": result.witness.g1, "g2": result.witness.g2,
                "e": result.witness.e, "S": list(result.witness.S),
                "bidegree": [result.witness_bidegree,
                             -result.witness_bidegree],
            },
            "phi_table": table.to_dict(),
            "note": abel_jacobi.SCOPE_NOTE,
        }
        _emit(json.dumps(payload, indent=2) + "\n", out)
    else:
        lines = ["extends: %s" % ("yes" if result.extends else "no")]
        if result.witness is not None:
            lines.append("witness: %s with bidegree (%d,%d)"
                         % (result.witness, result.witness_bidegree,
                            -result.witness_bidegree))
        _emit("\n".join(lines) + "\n", out)


@main.command()
@click.option("--g", "g", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, default=0, show_default=True)
@click.option("--a", "a_text", required=True,
              help="comma-separated integers a_1,...,a_n")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@click.option("--out", type=click.Path(), default=None)
def classify(g, n, k, a_text, seed, fmt, out):
    """Classify whether the Abel-Jacobi section extends for this twist."""
    try:
        aj = _parse_twist(g, n, k, a_text)
        result = abel_jacobi.classify_extension(g, n, aj, seed)
    except (ValueError, JacstabError) as exc:
        _fail(str(exc))
    if fmt == "json":
        _emit(json.dumps(result.to_report(), indent=2) + "\n", out)
        return
    lines = ["extends: %s" % ("yes" if result.extends else "no")]
    if result.extends:
        lines.append("phi table (%s):" % abel_jacobi.SCOPE_NOTE)
        for row in result.phi_table.to_dict()["entries"]:
            lines.append("  vine(g1=%(g1)d, g2=%(g2)d, e=%(e)d, S=%(S)s): "
                         "phi=%(phi)s" % row)
    else:
        lines.append("witness: %s with bidegree (%d,%d)"
                     % (result.witness, result.witness_bidegree,
                        -result.witness_bidegree))
        lines.append("certified over %d chambers of the small-perturbation "
                     "interval" % len(result.certificate.chambers))
    _emit("\n".join(lines) + "\n", out)


@main.command(name="verify")
@click.option("--suite", type=click.Choice(verify.SUITES), required=True)
@click.option("--max-vertices", type=int, default=4, show_default=True)
@click.option("--max-edges", type=int, default=7, show_default=True)
@click.option("--trials", type=int, default=50, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
def verify_cmd(suite, max_vertices, max_edges, trials, seed, jobs):
    """Run a named property suite; print pass/fail and any counterexample."""
    result = verify.run_suite(suite, max_vertices=max_vertices,
                              max_edges=max_edges, trials=trials,
                              seed=seed, jobs=jobs)
    click.echo(result.summary())
    if not result.passed:
        sys.exit(1)


if __name__ == "__main__":
    main()
