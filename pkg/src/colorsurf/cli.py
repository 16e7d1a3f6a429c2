"""Command-line interface: one executable, machine-readable output.

Exit codes: 0 success, 1 domain error (diagnostic on stderr), 2 usage
error (unknown flags, bad values).
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from . import __version__
from .codemap import (
    MAP_FORMAT_VERSION,
    MapConventions,
    build_artifact,
    check_map_matches_colex,
    load_map_file,
    save_map_file,
    single_qubit_image_table,
    verify_all,
)
from .colex import (
    Color,
    build_hexagonal_torus,
    build_square_octagon_torus,
    colex_to_json,
    load_colex,
    validate_colex,
)
from .contraction import contract, save_surface
from .decode import ColorDecoder, DecodeOutcome, Syndrome
from .errors import ColorsurfError
from .simulate import NoiseModel, run_trials, stats_to_csv
from .stabilizers import code_params, color_code
from .symplectic import PauliOp, apply


def _domain_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ColorsurfError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        except (ValueError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _read_colex(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return load_colex(fh.read())


def _color_option(fn):
    return click.option(
        "--color",
        type=click.Choice(["r", "g", "b"]),
        default="r",
        show_default=True,
        help="contraction color",
    )(fn)


@click.group()
@click.version_option(
    __version__, message=f"colorsurf %(version)s (map-file format {MAP_FORMAT_VERSION})"
)
def main():
    """Color-code to surface-code mapping toolkit."""


# -- lattice ----------------------------------------------------------------

@main.group()
def lattice():
    """Generate and validate lattices."""


@lattice.command("gen")
@click.option("--family", type=click.Choice(["hex", "sqoct"]), required=True)
@click.option("--rows", type=int, required=True)
@click.option("--cols", type=int, default=None, help="defaults to --rows")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_domain_errors
def lattice_gen(family, rows, cols, out):
    """Write a lattice JSON document."""
    if cols is None:
        cols = rows
    if family == "hex":
        g = build_hexagonal_torus(rows, cols)
    else:
        if cols != rows:
            raise click.UsageError("sqoct lattices are square; omit --cols or set it to --rows")
        g = build_square_octagon_torus(rows)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(colex_to_json(g))
        fh.write("\n")
    click.echo(f"wrote {out}: V={g.n} E={g.n_edges} F={g.n_faces}")


@lattice.command("validate")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@_domain_errors
def lattice_validate(file, fmt):
    """Check every structural invariant of a lattice document."""
    with open(file, "r", encoding="utf-8") as fh:
        g = load_colex(fh.read(), validate=False)
    rep = validate_colex(g)
    if fmt == "json":
        click.echo(json.dumps(rep.to_jsonable(), indent=1, sort_keys=True))
    else:
        click.echo(str(rep))
    if not rep.ok:
        sys.exit(1)


# -- code -------------------------------------------------------------------

@main.group()
def code():
    """Stabilizer-code level information."""


@code.command("params")
@click.option("--in", "infile", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@_domain_errors
def code_params_cmd(infile, fmt):
    """n, k and (when small enough for exhaustive search) d of the color code."""
    g = _read_colex(infile)
    params = code_params(color_code(g))
    if fmt == "json":
        click.echo(json.dumps({"n": params.n, "k": params.k, "d": params.d}))
    else:
        d = "unknown" if params.d is None else str(params.d)
        click.echo(f"n={params.n} k={params.k} d={d}")


@code.command("stabilizers")
@click.option("--in", "infile", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@_domain_errors
def code_stabilizers(infile, fmt):
    """Dump the generator list in IXYZ string form."""
    g = _read_colex(infile)
    cc = color_code(g)
    rows = [
        {"kind": kind, "face": face, "pauli": p.to_string()}
        for (kind, face), p in zip(cc.provenance, cc.generators)
    ]
    if fmt == "json":
        click.echo(json.dumps(rows, indent=1))
    else:
        for r in rows:
            click.echo(f"B^{r['kind']} face {r['face']:>3}: {r['pauli']}")


# -- map --------------------------------------------------------------------

@main.group(name="map")
def map_group():
    """Contraction, map construction, verification."""


@map_group.command("contract")
@click.option("--in", "infile", type=click.Path(exists=True, dir_okay=False), required=True)
@_color_option
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_domain_errors
def map_contract(infile, color, out):
    """Contract one color's faces and write the surface graph JSON."""
    g = _read_colex(infile)
    sg = contract(g, Color.parse(color))
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(save_surface(sg), fh, indent=1, sort_keys=True)
        fh.write("\n")
    click.echo(f"wrote {out}: V={sg.n_vertices} E={sg.n_edges} F={sg.n_faces}")


@map_group.command("build")
@click.option("--in", "infile", type=click.Path(exists=True, dir_okay=False), required=True)
@_color_option
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option(
    "--conventions",
    type=click.Choice(["default", "random"]),
    default="default",
    show_default=True,
)
@click.option("--seed", type=int, default=0, show_default=True, help="seed for random conventions")
@_domain_errors
def map_build(infile, color, out, conventions, seed):
    """Build the symplectic map and write the binary artifact."""
    g = _read_colex(infile)
    c = Color.parse(color)
    conv = (
        MapConventions.default(g, c)
        if conventions == "default"
        else MapConventions.random(g, c, seed)
    )
    art = build_artifact(g, c, conv)
    save_map_file(art, out)
    click.echo(f"wrote {out}: n={art.n} copies of {art.n1}-edge surface graph")


@map_group.command("verify")
@click.option("--in", "infile", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--map", "mapfile", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--report", type=click.Choice(["text", "json"]), default="text", show_default=True)
@_domain_errors
def map_verify(infile, mapfile, report):
    """Run the full verification suite for a built map."""
    g = _read_colex(infile)
    art = load_map_file(mapfile)
    check_map_matches_colex(art, g)
    rep = verify_all(art)
    table = single_qubit_image_table(art)
    inexact = sum(1 for r in table if not r.exact)
    rep.add(
        "recursion-image-agreement",
        all(r.stabilizer_equiv for r in table),
        f"{inexact} of {len(table)} closed-form images differ (up-to-stabilizer check)",
    )
    if report == "json":
        click.echo(json.dumps(rep.to_jsonable(), indent=1, sort_keys=True))
    else:
        click.echo(str(rep))
    if not rep.ok:
        sys.exit(1)


@map_group.command("image")
@click.option("--map", "mapfile", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--pauli", required=True, help="IXYZ string on the color-code qubits")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@_domain_errors
def map_image(mapfile, pauli, fmt):
    """Print the image of a color-code Pauli on the two surface copies."""
    art = load_map_file(mapfile)
    p = PauliOp.from_string(art.color_code.space, pauli)
    img = apply(art.map, p)
    c1, c2 = art.split(img)
    if fmt == "json":
        click.echo(json.dumps({"copy1": c1.to_string(), "copy2": c2.to_string()}))
    else:
        click.echo(f"copy1: {c1.to_string()}")
        click.echo(f"copy2: {c2.to_string()}")


# -- decode -----------------------------------------------------------------

@main.command("decode")
@click.option("--map", "mapfile", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--syndrome", "synfile", type=click.Path(exists=True, dir_okay=False))
@click.option("--error", "error_str", help="IXYZ string of the true error")
@click.option("--matcher", type=click.Choice(["exact", "greedy"]), default="exact", show_default=True)
@_domain_errors
def decode_cmd(mapfile, synfile, error_str, matcher):
    """Decode a syndrome (or an error's syndrome) and print outcome JSON."""
    if (synfile is None) == (error_str is None):
        raise click.UsageError("provide exactly one of --syndrome or --error")
    art = load_map_file(mapfile)
    dec = ColorDecoder(art, method=matcher)
    if error_str is not None:
        err = PauliOp.from_string(art.color_code.space, error_str)
        outcome = dec.decode_error(err)
    else:
        with open(synfile, "r", encoding="utf-8") as fh:
            text = "".join(fh.read().split())
        if set(text) - {"0", "1"}:
            raise ColorsurfError("syndrome file must contain only 0/1 characters")
        import numpy as np

        bits = np.frombuffer(text.encode(), dtype=np.uint8) - ord("0")
        syn = Syndrome(art.color_code, bits)
        outcome = dec.decode_syndrome(syn)
    click.echo(_outcome_json(outcome))


def _outcome_json(outcome: DecodeOutcome) -> str:
    return json.dumps(
        {
            "correction": outcome.correction.to_string(),
            "success": outcome.success,
            "logicalClass": outcome.logical_class,
        }
    )


# -- simulate ---------------------------------------------------------------

@main.command("simulate")
@click.option("--in", "infile", type=click.Path(exists=True, dir_okay=False), required=True)
@_color_option
@click.option("--p", "p_list", required=True, help="comma-separated probabilities")
@click.option("--trials", type=int, default=10000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--threads", type=int, default=os.cpu_count() or 1, show_default="cpu count")
@click.option("--matcher", type=click.Choice(["exact", "greedy"]), default="exact", show_default=True)
@click.option(
    "--timing/--no-timing",
    default=True,
    help="--no-timing zeroes the seconds column for byte-stable output",
)
@_domain_errors
def simulate_cmd(infile, color, p_list, trials, seed, out, threads, matcher, timing):
    """Monte Carlo failure-rate sweep; writes one CSV row per p value."""
    g = _read_colex(infile)
    c = Color.parse(color)
    try:
        p_values = [float(tok) for tok in p_list.split(",") if tok.strip() != ""]
    except ValueError:
        raise click.UsageError(f"--p must be comma-separated numbers, got {p_list!r}")
    art = build_artifact(g, c)
    stats = [
        run_trials(
            g, c, art.conventions, NoiseModel(p), trials, seed, threads, matcher, _artifact=art
        )
        for p in p_values
    ]
    csv_text = stats_to_csv(g, c, stats, timing=timing)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(csv_text)
    click.echo(csv_text.rstrip("\n"))


if __name__ == "__main__":
    main()
