"""Command line front end: constructions, property suites, exports.

Exit codes: 0 all checks passed, 1 a check failed (a counterexample file
is written next to the report), 2 unusable input.  Reports are canonical
JSON (sorted keys, rationals as "p/q" strings), so a fixed seed yields
byte-identical bytes on every run.
"""

from __future__ import annotations

import json
import pathlib
import sys

import click

from . import serialization as ser
from .banach import dualball_pullback_check, is_internal_pushout_banach, \
    pushout_banach
from .boolalg import pushout
from .dot import square_to_dot, tower_to_dot
from .errors import AmalgamError
from .suites import SUITES, run_suite
from .tower import BOOLEAN, PointedStructure, back_and_forth, \
    pointed_back_and_forth


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo("cannot read %s: %s" % (path, exc), err=True)
        sys.exit(2)


def _emit(doc, out, name):
    text = ser.dumps_pretty(doc) + "\n"
    if out:
        path = pathlib.Path(out)
        path.mkdir(parents=True, exist_ok=True)
        (path / name).write_text(text)
        click.echo(str(path / name))
    else:
        click.echo(text, nl=False)


@click.group()
def main():
    """Exact push-out/pull-back amalgamation calculus at desk scale."""


@main.command("pushout-bool")
@click.argument("spec", type=click.Path(exists=True))
@click.option("--out", default=None, help="output directory")
def pushout_bool_cmd(spec, out):
    """Push-out of two dual surjections; SPEC holds {"u":..., "v":...}."""
    doc = _load_json(spec)
    try:
        u = ser.surjection_from_json(doc["u"])
        v = ser.surjection_from_json(doc["v"])
        sq = pushout(u, v)
    except (KeyError, AmalgamError) as exc:
        click.echo("bad input: %s" % exc, err=True)
        sys.exit(2)
    report = ser.square_to_json(sq)
    report["interpolants"] = ser.interpolant_table_to_json(
        sq.interpolant_table)
    _emit(report, out, "pushout-bool.json")
    sys.exit(0 if sq.verdict.ok and sq.commutes() else 1)


@main.command("pushout-banach")
@click.argument("spec", type=click.Path(exists=True))
@click.option("--out", default=None, help="output directory")
def pushout_banach_cmd(spec, out):
    """Push-out of two isometric embeddings; SPEC holds {"u":..., "v":...}."""
    doc = _load_json(spec)
    try:
        u = ser.embedding_from_json(doc["u"])
        v = ser.embedding_from_json(doc["v"])
        po = pushout_banach(u, v)
    except (KeyError, AmalgamError) as exc:
        click.echo("bad input: %s" % exc, err=True)
        sys.exit(2)
    verdict = is_internal_pushout_banach(po.space, po.s_to_y.image_basis(),
                                         po.x_to_y.image_basis())
    report = ser.banach_pushout_to_json(po)
    report["internal_pushout_ok"] = verdict.ok
    report["dualball_pullback_ok"] = dualball_pullback_check(po)
    _emit(report, out, "pushout-banach.json")
    ok = verdict.ok and report["dualball_pullback_ok"]
    sys.exit(0 if ok else 1)


@main.command("tower-build")
@click.argument("spec", type=click.Path(exists=True))
@click.option("--out", default=None, help="output directory")
def tower_build_cmd(spec, out):
    """Build a tower from a step-spec file and report its stages."""
    doc = _load_json(spec)
    try:
        tower = ser.tower_from_json(doc)
    except (KeyError, AmalgamError) as exc:
        click.echo("bad input: %s" % exc, err=True)
        sys.exit(2)
    report = ser.tower_summary_to_json(tower)
    _emit(report, out, "tower.json")
    if out:
        (pathlib.Path(out) / "tower.dot").write_text(tower_to_dot(tower))
    sys.exit(0)


@main.command("tower-iso")
@click.argument("spec1", type=click.Path(exists=True))
@click.argument("spec2", type=click.Path(exists=True))
@click.option("--point1", default=None, help="designated atom in tower 1")
@click.option("--point2", default=None, help="designated atom in tower 2")
@click.option("--out", default=None, help="output directory")
def tower_iso_cmd(spec1, spec2, point1, point2, out):
    """Search an isomorphism between two tower tops by back-and-forth."""
    try:
        t1 = ser.tower_from_json(_load_json(spec1))
        t2 = ser.tower_from_json(_load_json(spec2))
    except (KeyError, AmalgamError) as exc:
        click.echo("bad input: %s" % exc, err=True)
        sys.exit(2)
    if t1.kind != BOOLEAN or t2.kind != BOOLEAN:
        click.echo("tower-iso works on boolean towers", err=True)
        sys.exit(2)
    if point1 is not None or point2 is not None:
        if point1 is None or point2 is None:
            click.echo("need both points or neither", err=True)
            sys.exit(2)
        p1 = ser.atom_from_json(json.loads(point1))
        p2 = ser.atom_from_json(json.loads(point2))
        result = pointed_back_and_forth(PointedStructure(t1, p1),
                                        PointedStructure(t2, p2))
    else:
        result = back_and_forth(t1, t2)
    report = {"ok": result.ok, "stalled_round": result.stalled_round,
              "transcript": [[rnd, side, [[list(map(ser.atom_to_json, c)),
                                           list(map(ser.atom_to_json, p))]
                                          for c, p in entry]]
                             for rnd, side, entry in result.transcript]}
    if result.ok:
        report["atom_map"] = [[ser.atom_to_json(a), ser.atom_to_json(b)]
                              for a, b in result.atom_map]
    _emit(report, out, "tower-iso.json")
    sys.exit(0 if result.ok else 1)


@main.command("check-props")
@click.argument("suite")
@click.option("--seed", default=0, type=int)
@click.option("--instances", default=None, type=int,
              help="override the suite's default instance count")
@click.option("--max-atoms", default=8, type=int)
@click.option("--max-dim", default=3, type=int)
@click.option("--max-gens", default=12, type=int)
@click.option("--out", default=None, help="output directory")
def check_props_cmd(suite, seed, instances, max_atoms, max_dim, max_gens,
                    out):
    """Run a property suite ("all" runs every one) and report violations."""
    names = sorted(SUITES) if suite == "all" else [suite]
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        click.echo("unknown suite %s (have: %s)"
                   % (", ".join(unknown), ", ".join(sorted(SUITES))),
                   err=True)
        sys.exit(2)
    kwargs = {"seed": seed, "max_atoms": max_atoms, "max_dim": max_dim,
              "max_gens": max_gens}
    if instances is not None:
        kwargs["instances"] = instances
    all_ok = True
    for name in names:
        report = run_suite(name, **kwargs)
        _emit(report, out, "report-%s.json" % name)
        if not report["ok"]:
            all_ok = False
            if out:
                path = pathlib.Path(out) / ("counterexample-%s.json" % name)
                path.write_text(ser.dumps_pretty(report["violations"]) + "\n")
                click.echo(str(path))
        click.echo("%s: %s (%d violations / %d instances)"
                   % (name, "ok" if report["ok"] else "FAIL",
                      len(report["violations"]), report["instances"]),
                   err=True)
    sys.exit(0 if all_ok else 1)


@main.command("export")
@click.argument("spec", type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]),
              default="dot")
@click.option("--out", default=None, help="output directory")
def export_cmd(spec, fmt, out):
    """Export a square or tower spec as a DOT diagram or canonical JSON."""
    doc = _load_json(spec)
    try:
        if "steps" in doc:
            tower = ser.tower_from_json(doc)
            text = tower_to_dot(tower) if fmt == "dot" else \
                ser.dumps_pretty(ser.tower_summary_to_json(tower)) + "\n"
            name = "tower." + fmt
        elif "u" in doc and "atom_map" in doc["u"]:
            sq = pushout(ser.surjection_from_json(doc["u"]),
                         ser.surjection_from_json(doc["v"]))
            text = square_to_dot(sq) if fmt == "dot" else \
                ser.dumps_pretty(ser.square_to_json(sq)) + "\n"
            name = "square." + fmt
        elif "u" in doc:
            po = pushout_banach(ser.embedding_from_json(doc["u"]),
                                ser.embedding_from_json(doc["v"]))
            text = square_to_dot(po) if fmt == "dot" else \
                ser.dumps_pretty(ser.banach_pushout_to_json(po)) + "\n"
            name = "square." + fmt
        else:
            click.echo("unrecognized spec shape", err=True)
            sys.exit(2)
    except (KeyError, AmalgamError) as exc:
        click.echo("bad input: %s" % exc, err=True)
        sys.exit(2)
    if out:
        path = pathlib.Path(out)
        path.mkdir(parents=True, exist_ok=True)
        (path / name).write_text(text)
        click.echo(str(path / name))
    else:
        click.echo(text, nl=False)
    sys.exit(0)


if __name__ == "__main__":
    main()
