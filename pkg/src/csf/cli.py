"""Command-line front end.

Exit codes: 0 success, 1 verification failures, 2 malformed input
(with a JSON error object on stdout), 3 cap exceeded.  The environment
variables CSF_MAX_DEGREE and CSF_MAX_EDGES tighten the library caps;
they cannot loosen them.
"""

import json
import os
import sys

import click
from pydantic import BaseModel, ValidationError, field_validator

from . import ncsym, ubcsym, verify
from .graphs import family as family_graph
from .serialization import element_to_json, graph_from_json, graph_to_json


def _fail(code: int, message: str, **extra):
    click.echo(json.dumps({"error": {"message": message, **extra}}))
    sys.exit(code)


class RunConfig(BaseModel):
    """Validated knobs shared by the commands."""

    command: str
    basis: str = "e"
    fmt: str = "text"
    vertex: int | str = "last"
    max_degree: int = ubcsym.DEGREE_CAP
    max_edges: int = ubcsym.EDGE_CAP
    threads: int = 1
    seed: int = 0

    @field_validator("basis")
    @classmethod
    def _basis_known(cls, v):
        if v not in ubcsym.BASES:
            raise ValueError(f"basis must be one of {ubcsym.BASES}, got {v!r}")
        return v

    @field_validator("fmt")
    @classmethod
    def _fmt_known(cls, v):
        if v not in ("json", "text"):
            raise ValueError(f"format must be json or text, got {v!r}")
        return v

    @field_validator("vertex", mode="before")
    @classmethod
    def _vertex_form(cls, v):
        if isinstance(v, str) and v != "last":
            try:
                v = int(v)
            except ValueError:
                raise ValueError(f"vertex must be an index or 'last', got {v!r}") from None
        if isinstance(v, int) and v < 1:
            raise ValueError(f"vertex index must be positive, got {v}")
        return v

    @field_validator("max_degree")
    @classmethod
    def _degree_within_library(cls, v):
        if not 1 <= v <= ubcsym.DEGREE_CAP:
            raise ValueError(f"CSF_MAX_DEGREE must be in [1, {ubcsym.DEGREE_CAP}], got {v}")
        return v

    @field_validator("max_edges")
    @classmethod
    def _edges_within_library(cls, v):
        if not 1 <= v <= ubcsym.EDGE_CAP:
            raise ValueError(f"CSF_MAX_EDGES must be in [1, {ubcsym.EDGE_CAP}], got {v}")
        return v

    @field_validator("threads")
    @classmethod
    def _threads_positive(cls, v):
        if v < 1:
            raise ValueError(f"threads must be at least 1, got {v}")
        return v


def _config(command: str, **kw) -> RunConfig:
    for name, field in (("CSF_MAX_DEGREE", "max_degree"), ("CSF_MAX_EDGES", "max_edges")):
        raw = os.environ.get(name)
        if raw is not None:
            try:
                kw[field] = int(raw)
            except ValueError:
                _fail(2, f"{name} must be an integer, got {raw!r}")
    try:
        return RunConfig(command=command, **kw)
    except ValidationError as exc:
        first = exc.errors()[0]
        _fail(2, str(first["msg"]))


def _merge_params(pairs, direct):
    params = {}
    for pair in pairs:
        if "=" not in pair:
            _fail(2, f"params take the form key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        params[key.strip()] = value.strip()
    for key, value in direct.items():
        if value is not None:
            params[key] = value
    return params


def _load_graph(graph_path, family_name, params):
    if (graph_path is None) == (family_name is None):
        _fail(2, "give exactly one graph source: --graph PATH or --family NAME")
    if graph_path is not None:
        if params:
            _fail(2, "family params make no sense with --graph")
        try:
            with open(graph_path) as handle:
                data = json.load(handle)
        except OSError as exc:
            _fail(2, f"cannot read {graph_path}: {exc}")
        except json.JSONDecodeError as exc:
            _fail(2, f"{graph_path} is not valid JSON: {exc}")
        try:
            return graph_from_json(data)
        except ValueError as exc:
            _fail(2, str(exc))
    try:
        return family_graph(family_name, **params)
    except ValueError as exc:
        _fail(2, str(exc))


def _pick_vertex(g, vertex):
    v = g.n if vertex == "last" else vertex
    if not 1 <= v <= g.n:
        _fail(2, f"vertex {v} not in [1, {g.n}]")
    return v


def _emit_element(x, fmt):
    if fmt == "json":
        click.echo(json.dumps(element_to_json(x)))
    else:
        click.echo(repr(x))


def _computation(fn):
    """Run a computation; cap overruns exit 3, other value errors 2."""
    try:
        return fn()
    except ValueError as exc:
        _fail(3 if "cap" in str(exc) else 2, str(exc))


_GRAPH_SOURCE = [
    click.option("--graph", "graph_path", type=str, default=None, help="Path to graph JSON."),
    click.option("--family", "family_name", type=str, default=None, help="Family name, e.g. path or wl."),
    click.option("--params", "-p", "param_pairs", multiple=True, help="Family parameter key=value."),
    click.option("--m", type=int, default=None),
    click.option("--n", type=int, default=None),
    click.option("--k", type=int, default=None),
    click.option("--l", type=int, default=None),
    click.option("--d", type=int, default=None),
    click.option("--pi", type=str, default=None),
]


def _with(options):
    def wrap(fn):
        for option in reversed(options):
            fn = option(fn)
        return fn

    return wrap


@click.group()
def cli():
    """Chromatic symmetric functions of labelled graphs, exactly."""


@cli.command("compute-y")
@_with(_GRAPH_SOURCE)
@click.option("--vertex", default="last", help="Distinguished vertex index, or 'last'.")
@click.option("--basis", default="e", help="Output basis: e, p, or m.")
@click.option("--format", "fmt", default="text", help="Output format: json or text.")
def compute_y(graph_path, family_name, param_pairs, m, n, k, l, d, pi, vertex, basis, fmt):
    """Chromatic element of a graph with one vertex distinguished."""
    cfg = _config("compute-y", basis=basis, fmt=fmt, vertex=vertex)
    params = _merge_params(param_pairs, {"m": m, "n": n, "k": k, "l": l, "d": d, "pi": pi})
    g = _load_graph(graph_path, family_name, params)
    if g.n > cfg.max_degree:
        _fail(3, f"{g.n} vertices exceeds degree cap {cfg.max_degree}")
    v = _pick_vertex(g, cfg.vertex)

    def work():
        y = ubcsym.y_centred(g, v, cap=cfg.max_edges)
        return ubcsym.change_basis(y, cfg.basis)

    _emit_element(_computation(work), cfg.fmt)


@cli.command("compute-x")
@_with(_GRAPH_SOURCE)
@click.option("--basis", default="e", help="Output basis: e or p.")
@click.option("--format", "fmt", default="text", help="Output format: json or text.")
def compute_x(graph_path, family_name, param_pairs, m, n, k, l, d, pi, basis, fmt):
    """Ordinary chromatic symmetric function of a graph."""
    cfg = _config("compute-x", basis=basis, fmt=fmt)
    if cfg.basis == "m":
        _fail(2, "the symmetric image is emitted in basis e or p only")
    params = _merge_params(param_pairs, {"m": m, "n": n, "k": k, "l": l, "d": d, "pi": pi})
    g = _load_graph(graph_path, family_name, params)
    if g.n > cfg.max_degree:
        _fail(3, f"{g.n} vertices exceeds degree cap {cfg.max_degree}")

    def work():
        x = ncsym.X_of(g, cap=min(cfg.max_edges, ncsym.Y_EDGE_CAP))
        return x.converted(cfg.basis)

    _emit_element(_computation(work), cfg.fmt)


@cli.command("family")
@click.argument("name")
@_with(_GRAPH_SOURCE[2:])
def family_cmd(name, param_pairs, m, n, k, l, d, pi):
    """Emit the graph JSON of a named family member."""
    params = _merge_params(param_pairs, {"m": m, "n": n, "k": k, "l": l, "d": d, "pi": pi})
    try:
        g = family_graph(name, **params)
    except ValueError as exc:
        _fail(2, str(exc))
    click.echo(json.dumps(graph_to_json(g)))


@cli.command("verify")
@click.argument("suite")
@click.option("--max-n", type=int, default=None, help="Largest vertex count to enumerate.")
@click.option("--threads", type=int, default=1, help="Worker processes.")
@click.option("--fail-fast", is_flag=True, help="Stop at the first counterexample.")
@click.option("--seed", type=int, default=0, help="Seed for the sampled sizes.")
@click.option("--format", "fmt", default="text", help="Output format: json or text.")
@click.option("--family", "family_name", default=None, help="Progression family for a single battery.")
@click.option("--params", "-p", "param_pairs", multiple=True, help="Progression parameter key=value.")
@click.option("--m", type=int, default=None)
@click.option("--n", type=int, default=None)
@click.option("--k", type=int, default=None)
def verify_cmd(suite, max_n, threads, fail_fast, seed, fmt, family_name, param_pairs, m, n, k):
    """Run a verification suite; exit 0 only if every instance passes."""
    cfg = _config("verify", fmt=fmt, threads=threads, seed=seed)
    params = _merge_params(param_pairs, {"m": m, "n": n, "k": k})
    if params and family_name is None and suite != "progression":
        _fail(2, f"suite {suite!r} takes no family params")

    try:
        stream = verify.run_suite(
            suite,
            max_n=max_n,
            threads=cfg.threads,
            fail_fast=fail_fast,
            seed=cfg.seed,
            family=family_name,
            params=params or None,
        )
        results = []
        for result in stream:
            results.append(result)
            if cfg.fmt == "text":
                if result["ok"]:
                    click.echo("ok   " + result["instance"])
                else:
                    click.echo("FAIL " + result["instance"] + " -- " + result["detail"])
    except ValueError as exc:
        _fail(3 if "caps max-n" in str(exc) else 2, str(exc))

    failed = sum(1 for r in results if not r["ok"])
    if cfg.fmt == "text":
        click.echo(f"suite={suite} checked={len(results)} failed={failed}")
    else:
        click.echo(
            json.dumps(
                {
                    "suite": suite,
                    "checked": len(results),
                    "failed": failed,
                    "failures": [r for r in results if not r["ok"]],
                }
            )
        )
    sys.exit(0 if failed == 0 else 1)


@cli.command("scan-e-positivity")
@click.option("--max-n", type=int, default=7, help="Largest vertex count to scan.")
@click.option("--format", "fmt", default="text", help="Output format: json or text.")
def scan_cmd(max_n, fmt):
    """Report the e-positivity verdict of every unit interval graph.

    Informational: always exits 0; negative findings are flagged in the
    rows rather than the exit code.
    """
    cfg = _config("scan-e-positivity", fmt=fmt)
    try:
        rows = list(verify.scan_e_positivity(max_n))
    except ValueError as exc:
        _fail(3 if "caps max-n" in str(exc) else 2, str(exc))
    negative = sum(1 for r in rows if not r["e_positive"])
    if cfg.fmt == "text":
        for r in rows:
            verdict = "e-positive" if r["e_positive"] else f"NEGATIVE worst={r['worst']}"
            click.echo(f"n={r['n']} m={r['m']} {verdict}")
        click.echo(f"scanned={len(rows)} negative={negative}")
    else:
        click.echo(json.dumps({"scanned": len(rows), "negative": negative, "rows": rows}))


def main():
    cli(prog_name="csf")


if __name__ == "__main__":
    main()
