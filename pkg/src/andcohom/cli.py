"""Command line front end: ``andcohom size | cc | verify``.

Exit codes: 0 pass, 1 assertion failure, 2 input error.
"""
from __future__ import annotations

import json
import sys

import click

from . import io
from .boolfun import BoolFun, GroundSet
from .cohomology import (
    CohomModel,
    VerificationError,
    and_measure_from_model,
    base_cc,
    cc_closed_pathsum,
    cc_open,
)
from .freecat import CapExceeded, CubeCat, closed_complement, smallest_open
from .linalg import Field, format_scalar
from .measures import size_lower_bound
from .setcover import (
    AndInstance,
    build_program,
    demanders,
    exact_size,
    exactness_certificate,
    lp_bound,
)
from .sheaves import DimensionCapExceeded, superskyscraper
from .verify import SUITES, RunConfig, run_suite

EXIT_FAIL = 1
EXIT_INPUT = 2


def _emit(ctx, payload: dict, text_lines: list[str]) -> None:
    if ctx.obj["json"]:
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo("\n".join(text_lines))


def _input_error(msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(EXIT_INPUT)


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="JSON file with defaults for the flags below.")
@click.option("--seed", type=int, default=None, help="Seed for every random suite (default 0).")
@click.option("--field", "field_name", default=None, help="'rational' (default) or 'fp:<prime>'.")
@click.option("--trials", type=int, default=None, help="Override trial counts of randomized suites.")
@click.option("--size-limit", type=int, default=None, help="Largest |S| for cube constructions.")
@click.option("--dim-cap", type=int, default=None, help="Largest stalk dimension built explicitly.")
@click.option("--path-cap", type=int, default=None, help="Largest path list enumerated.")
@click.option("--json", "as_json", is_flag=True, default=False, help="Machine-readable output.")
@click.pass_context
def main(ctx, config_path, seed, field_name, trials, size_limit, dim_cap, path_cap, as_json):
    """AND-complexity lower bounds and their cohomological verification."""
    conf = {}
    if config_path:
        try:
            conf = io.load_json(config_path)
        except io.InputError as exc:
            _input_error(str(exc))
    flags = {"seed": seed, "field": field_name, "trials": trials, "size_limit": size_limit,
             "dim_cap": dim_cap, "path_cap": path_cap}
    merged = {k.replace("-", "_"): v for k, v in conf.items()}
    merged.update({k: v for k, v in flags.items() if v is not None})
    try:
        if "field" in merged:
            merged["field"] = Field.parse(str(merged["field"]))
        cfg = RunConfig(**{k: merged[k] for k in merged if k in RunConfig.__dataclass_fields__})
    except (TypeError, ValueError) as exc:
        _input_error(f"bad configuration: {exc}")
    ctx.obj = {"cfg": cfg, "json": as_json or bool(conf.get("json", False))}


@main.command("size")
@click.argument("instance_file", type=click.Path(dir_okay=False))
@click.pass_context
def cmd_size(ctx, instance_file):
    """Exact size, LP value, dual, demanders and exactness certificate."""
    cfg = ctx.obj["cfg"]
    try:
        inst = io.instance_from_json(io.load_json(instance_file))
        inst.ground.check_limit(cfg.size_limit)
    except (io.InputError, ValueError) as exc:
        _input_error(str(exc))
    prog = build_program(inst)
    size = exact_size(inst)
    lp = lp_bound(prog)
    dem = demanders(prog)
    cert = exactness_certificate(prog)
    payload = {
        "size": io.size_to_json(size),
        "lp": io.lp_to_json(lp),
        "admissible": list(prog.admissible),
        "demanders": {str(i): sorted(v, key=inst.ground.position) for i, v in dem.items()},
        "certificate": None if cert is None else {
            "value": cert.value, "demanders": {str(i): s for i, s in cert.demanders.items()},
            "alpha": cert.alpha},
    }
    lines = [
        f"size: {io.rational_or_infinite(size.value)}"
        + ("" if size.witness is None else f"  witness {list(size.witness)}"),
        f"lp: {io.rational_or_infinite(lp.value)}",
    ]
    if lp.finite:
        lines.append("dual alpha: " + ", ".join(f"{s}={format_scalar(v)}" for s, v in lp.dual.items()))
        lines.append("primal mu: " + ", ".join(f"{i}={format_scalar(v)}" for i, v in lp.primal.items()))
    else:
        lines.append(f"dual unbounded: alpha_{lp.dual_ray} can grow without limit")
    lines.append("demanders: " + ", ".join(
        f"{i}:{{{','.join(sorted(v, key=inst.ground.position))}}}" for i, v in dem.items()))
    lines.append("certificate: " + ("absent" if cert is None else f"present, value {cert.value}"))
    _emit(ctx, payload, lines)


def _load_model(data: dict, cfg: RunConfig):
    ground = GroundSet(data["ground"])
    ground.check_limit(cfg.size_limit)
    cube = CubeCat.build(ground, cfg.size_limit)
    base = BoolFun.from_bitstring(ground, data.get("base", "0" * len(ground)))
    dims = [0] * cube.dag.vertex_count
    for bits, d in data.get("dims", {}).items():
        if int(d) < 0:
            raise ValueError("dimensions must be non-negative")
        dims[BoolFun.from_bitstring(ground, bits).index] = int(d)
    F = superskyscraper(cube.dag, dims, cfg.field)
    target = BoolFun.from_bitstring(ground, data["target"])
    family = [BoolFun.from_bitstring(ground, b) for b in data.get("family", [])]
    return CohomModel(cube, F, base.index), target, family


@main.command("cc")
@click.argument("model_file", type=click.Path(dir_okay=False))
@click.option("--table", is_flag=True, help="Also print cc(g) for every g in B^S.")
@click.pass_context
def cmd_cc(ctx, model_file, table):
    """Cohomological complexity of a cube model with superskyscraper F."""
    cfg = ctx.obj["cfg"]
    try:
        model, target, family = _load_model(io.load_json(model_file), cfg)
    except (io.InputError, KeyError, TypeError, ValueError) as exc:
        _input_error(f"bad model: {exc}")
    cube, F, P = model.cube, model.F, model.P
    pathsum = cc_closed_pathsum(F, P, closed_complement(cube, target))
    notice = None
    try:
        ext = cc_open(F, P, smallest_open(cube, target), cfg.dim_cap).as_dict()
    except (DimensionCapExceeded, CapExceeded) as exc:
        ext, notice = None, f"Ext route skipped: {exc}"
    base = base_cc(model, cfg.dim_cap)
    payload = {"target": target.bitstring(), "cc_pathsum": pathsum, "cc_ext": ext, "cc_F_G": base}
    lines = [f"cc via path sum: {pathsum}",
             f"cc via Ext: {'n/a' if ext is None else ext['cc']}"
             + ("" if ext is None else f" (hom {ext['hom']}, ext1 {ext['ext1']})"),
             f"cc(F, k_P*): {base}"]
    if notice:
        payload["notice"] = notice
        lines.append(notice)
    if base == 0:
        h = and_measure_from_model(model, method="pathsum", cap=cfg.dim_cap)
        if family:
            b = size_lower_bound(h, AndInstance(target, family))
            payload["size_lower_bound"] = io.rational_or_infinite(b)
            lines.append(f"size lower bound: {io.rational_or_infinite(b)}")
        if table:
            vals = h.table(cfg.size_limit)
            payload["table"] = io.measure_table_to_json(vals)
            lines += [f"  h({g}) = {format_scalar(v)}" for g, v in zip(cube.ground.all_functions(), vals)]
    else:
        lines.append("cc(F, k_P*) != 0: no AND measure, size bound not reported")
    _emit(ctx, payload, lines)


@main.command("verify")
@click.argument("suite", type=click.Choice(SUITES))
@click.pass_context
def cmd_verify(ctx, suite):
    """Run one seeded property suite; exit 1 if any check fails."""
    cfg = ctx.obj["cfg"]
    try:
        res = run_suite(suite, cfg)
    except VerificationError as exc:
        click.echo(f"FAIL {suite}: {exc}\ninstance: {json.dumps(exc.instance)}")
        sys.exit(EXIT_FAIL)
    header = f"suite {suite} seed={cfg.seed} field={cfg.field}"
    payload = res.as_dict()
    payload.update({"seed": cfg.seed, "field": str(cfg.field)})
    _emit(ctx, payload, [header] + res.lines + [f"{'PASS' if res.passed else 'FAIL'} {suite}"])
    if suite != "reports" and not res.passed:
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":
    main()
