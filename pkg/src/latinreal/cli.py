"""Command-line front end.

Exit codes: 0 success or Exists, 1 verification failure, 2 usage or parse
error, 3 NotExists (or an exhausted search), 4 Unknown (or an exceeded budget).
"""

from __future__ import annotations

import json
import sys

import click

from .assets import AssetError, asset_names, asset_text, load_asset
from .core import DomainError, LatinError, NoSuchObject, Unresolved, parse_partition
from .grid import GridDocument, GridParseError, read_grid, serialize, write_grid
from .verify import (
    iter_realization_violations,
    iter_top_structure_violations,
    reduce as reduce_outline,
    validate_outline,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONE, EXIT_UNKNOWN = 0, 1, 2, 3, 4


class PartitionType(click.ParamType):
    name = "partition"

    def convert(self, value, param, ctx):
        try:
            return parse_partition(value)
        except LatinError as exc:
            self.fail(str(exc), param, ctx)


PARTITION = PartitionType()


def _emit(obj, as_json, text):
    if as_json:
        click.echo(json.dumps(obj, sort_keys=True))
    else:
        click.echo(text)


def _load(path):
    try:
        return read_grid(path)
    except (GridParseError, LatinError) as exc:
        raise click.UsageError(f"{path}: {exc}") from None
    except OSError as exc:
        raise click.UsageError(str(exc)) from None


@click.group()
def cli():
    """Build, check and classify latin hypercubes realizing integer partitions."""


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--top-structure", is_flag=True, help="Check the square shape used before lifting to a cube.")
@click.option("--all", "show_all", is_flag=True, help="Report every violation, not just the first.")
@click.option("--json", "as_json", is_flag=True)
def verify(path, top_structure, show_all, as_json):
    """Check that the grid in PATH realizes the partition in its header."""
    doc = _load(path)
    it = iter_top_structure_violations if top_structure else iter_realization_violations
    try:
        found = []
        for report in it(doc.hypercube, doc.partition):
            found.append(report)
            if not show_all:
                break
    except DomainError as exc:
        raise click.UsageError(str(exc)) from None
    ok = not found
    text = "ok" if ok else "\n".join(str(r) for r in found)
    _emit({"ok": ok, "violations": [r.to_dict() for r in found]}, as_json, text)
    sys.exit(EXIT_OK if ok else EXIT_FAIL)


def _grouping(text):
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise click.BadParameter(f"not a list of integers: {text!r}") from None


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--p", "p", required=True, help="Row grouping, e.g. '2 2 1'.")
@click.option("--q", "q", required=True, help="Column grouping.")
@click.option("--r", "r", required=True, help="File grouping for cubes, symbol grouping for squares.")
@click.option("--s", "s", default=None, help="Symbol grouping (cubes only).")
@click.option("--json", "as_json", is_flag=True)
def reduce(path, p, q, r, s, as_json):
    """Amalgamate the grid in PATH modulo the given groupings."""
    doc = _load(path)
    groups = [_grouping(x) for x in (p, q, r, s) if x is not None]
    try:
        o = reduce_outline(doc.hypercube, groups)
    except LatinError as exc:
        raise click.UsageError(str(exc)) from None
    report = validate_outline(o)
    cells = o.cells.tolist()
    if o.cells.ndim == 3:
        lines = [" | ".join(" ".join(map(str, c)) for c in row) for row in cells]
    else:
        lines = []
        for k, layer in enumerate(cells):
            if k:
                lines.append("")
            lines.extend(" | ".join(" ".join(map(str, c)) for c in row) for row in layer)
    _emit({"groupings": [list(g) for g in o.groupings], "cells": cells,
           "valid": report is None}, as_json, "\n".join(lines))


def _dimension(ctx, param, value):
    if value < 2:
        raise click.BadParameter("dimension must be at least 2")
    return value


@cli.command()
@click.option("--partition", "p", type=PARTITION, required=True)
@click.option("--dim", "m", type=int, default=3, show_default=True, callback=_dimension)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--json", "as_json", is_flag=True)
def construct(p, m, out, as_json):
    """Build an m-realization and print or save it as a grid."""
    from .construct import construct_mrp

    try:
        built = construct_mrp(p, m)
    except NoSuchObject as exc:
        _emit({"status": "NotExists", "reason": str(exc)}, as_json, f"NotExists: {exc}")
        sys.exit(EXIT_NONE)
    except Unresolved as exc:
        _emit({"status": "Unknown", "reason": str(exc)}, as_json, f"Unknown: {exc}")
        sys.exit(EXIT_UNKNOWN)
    if out:
        write_grid(out, built.hypercube, p)
    grid = serialize(GridDocument(built.hypercube, p))
    if as_json:
        _emit({"status": "Exists", "trace": built.trace.to_dict(),
               "grid": None if out else grid}, True, "")
    elif out:
        click.echo(f"Exists: wrote {out} via {' > '.join(built.trace.rules())}")
    else:
        click.echo(grid, nl=False)


def _verdict(p, m):
    from .classify import Citation, Status, Verdict, classify_cube, classify_square
    from .construct import construct_mrp

    if m == 2:
        return classify_square(p)
    if m == 3:
        return classify_cube(p)
    try:
        built = construct_mrp(p, m)
    except NoSuchObject as exc:
        return Verdict(Status.NOT_EXISTS, p, m, (Citation("parity", {"m": m}, "not-exists"),), str(exc))
    except Unresolved:
        return Verdict(Status.UNKNOWN, p, m, ())
    chain = tuple(Citation(s.rule, dict(s.params), "exists") for s in built.trace.steps)
    return Verdict(Status.EXISTS, p, m, chain, built)


@cli.command()
@click.option("--partition", "p", type=PARTITION, required=True)
@click.option("--dim", "m", type=int, default=3, show_default=True, callback=_dimension)
@click.option("--json", "as_json", is_flag=True)
def classify(p, m, as_json):
    """Decide existence of an m-realization, citing the rules used."""
    v = _verdict(p, m)
    lines = [f"{v.status.value}: {m}-realization of ({p})"]
    for c in v.chain:
        params = ", ".join(f"{k}={_fmt(x)}" for k, x in c.params.items())
        lines.append(f"  [{c.direction}] {c.rule}" + (f" ({params})" if params else "")
                     + f": {c.statement}")
    _emit(v.to_dict(), as_json, "\n".join(lines))
    sys.exit({"Exists": EXIT_OK, "NotExists": EXIT_NONE, "Unknown": EXIT_UNKNOWN}[v.status.value])


def _fmt(x):
    if hasattr(x, "parts"):
        return f"({x})"
    return str(x)


@cli.command()
@click.option("--partition", "p", type=PARTITION, required=True)
@click.option("--dim", "m", type=int, default=3, show_default=True, callback=_dimension)
@click.option("--budget", type=click.IntRange(min=0), default=None, help="Maximum search nodes.")
@click.option("--workers", type=click.IntRange(min=1), default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--json", "as_json", is_flag=True)
def search(p, m, budget, workers, out, as_json):
    """Run the exhaustive search."""
    from .oracle import DEFAULT_BUDGET, search_realization

    res = search_realization(p, m, DEFAULT_BUDGET if budget is None else budget, workers=workers)
    if res.witness is not None and out:
        write_grid(out, res.witness, p)
    text = f"{res.status.value} after {res.nodes} nodes"
    if res.witness is not None and not out:
        text += "\n" + serialize(GridDocument(res.witness, p)).rstrip("\n")
    _emit(res.to_dict(), as_json, text)
    sys.exit({"Found": EXIT_OK, "ExhaustedNone": EXIT_NONE,
              "BudgetExceeded": EXIT_UNKNOWN}[res.status.value])


@cli.group()
def assets():
    """Stored example hypercubes."""


@assets.command("list")
@click.option("--json", "as_json", is_flag=True)
def assets_list(as_json):
    recs = [load_asset(n) for n in asset_names()]
    rows = [{"name": r.name, "dimension": r.dimension, "order": r.order,
             "partition": list(r.partition.parts), "check": r.check,
             "description": r.provenance} for r in recs]
    text = "\n".join(f"{r.name}\tm={r.dimension}\tN={r.order}\t({r.partition})\t{r.provenance}"
                     for r in recs)
    _emit(rows, as_json, text)


@assets.command("dump")
@click.argument("name")
def assets_dump(name):
    try:
        click.echo(asset_text(name), nl=False)
    except AssetError as exc:
        raise click.UsageError(str(exc)) from None


def main():
    cli()


if __name__ == "__main__":
    main()
