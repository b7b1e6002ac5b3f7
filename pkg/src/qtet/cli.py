"""Command-line interface.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 degenerate
parameters.  JSON output carries a "schema": "qtet/1" field and is
byte-identical for identical arguments.
"""

from __future__ import annotations

import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import click

from . import evalmodule as em
from . import leonard as lp
from .algebra import (VerifyReport, aw_relations, gen_name, kappa_pullback, parse_gen,
                      verify_boxtimes, verify_equitable, verify_upsilon)
from .qmatrix import SingularMatrixError, build
from .scalar import DegenerateError, SpecPoint

SCHEMA = "qtet/1"
DEFAULT_SEED = 20240611
GOLDEN_TAGS = ("Z", "K", "D", "CalD", "T", "E", "Einv", "F", "G", "L", "Linv", "S", "M")
MAX_D = 64


def max_symbolic_d(default: int = 5) -> int:
    raw = os.environ.get("QTET_MAX_SYMBOLIC_D")
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise click.UsageError(f"QTET_MAX_SYMBOLIC_D must be an integer, got {raw!r}")


# ---------------------------------------------------------------------------
# parameter parsing


def _value(text):
    """'sym' -> None, otherwise an exact rational."""
    if text is None or str(text).lower() in ("sym", "symbolic"):
        return None
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"expected 'sym' or a rational, got {text!r}")


def _text(v) -> str:
    return "sym" if v is None else str(v)


def parse_range(text: str) -> list:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(x) for x in text.split(",")]
    except ValueError:
        raise click.BadParameter(f"bad range {text!r}; use e.g. 1..4")
    if not out or min(out) < 1 or max(out) > MAX_D:
        raise click.BadParameter(f"diameters must lie in 1..{MAX_D}")
    return out


def _basis(text):
    try:
        return em.parse_basis(text)
    except ValueError as exc:
        raise click.BadParameter(str(exc))


def _gen(text):
    try:
        return parse_gen(text)
    except (ValueError, KeyError) as exc:
        raise click.BadParameter(str(exc))


def _free7(text):
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 7:
        raise click.BadParameter("need seven comma-separated values")
    vals = [_value(p) for p in parts]
    if any(v is None or v == 0 for v in vals):
        raise click.BadParameter("free pairings must be nonzero rationals")
    return tuple(vals)


def guard_point(d: int, q, t) -> None:
    """Raise DegenerateError when a specialized point hits a guard."""
    vals = {}
    if q is not None:
        vals["q"] = q
    if t is not None:
        vals["t"] = t
    if not vals:
        return
    point = SpecPoint(vals)
    if q is not None and t is not None:
        point.check_t(d)


def _module(d: int, q, t, free7=None) -> em.EvalModule:
    guard_point(d, q, t)
    return em.EvalModule(d, t=t, q=q, free7=free7)


def _emit(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _params(d, q, t, **extra) -> dict:
    out = {"d": d, "q": _text(q), "t": _text(t)}
    out.update(extra)
    return out


# ---------------------------------------------------------------------------
# suites


def _suite_boxtimes(m):
    return verify_boxtimes(m.full_representation((0, 1, 2, 3)))


def _suite_upsilon(m):
    return verify_upsilon(m.full_representation((0, 1, 2, 3)), m.d)


def _suite_equitable(m):
    g = m.full_representation((0, 1, 2, 3))
    r = VerifyReport(f"equitable pullbacks d={m.d}")
    for i in range(4):
        r.extend(verify_equitable(kappa_pullback(g, i), g.q_eff), prefix=f"kappa_{i}: ")
    return r


def _suite_aw(m):
    g = m.full_representation((0, 1, 2, 3))
    return aw_relations(g, m.t, m.q ** (m.d + 1) + m.q ** (-m.d - 1))


def _suite_shapes(m):
    r = VerifyReport(f"shapes d={m.d}")
    for b in em.ALL_BASES:
        r.extend(em.shape_check(m, b))
    return r


SUITES = {
    "boxtimes": _suite_boxtimes,
    "equitable": _suite_equitable,
    "aw": _suite_aw,
    "bases": em.verify_all_bases,
    "upsilon": _suite_upsilon,
    "pairing": lambda m: m.pairing.verify(),
    "transitions": em.verify_transition_consistency,
    "paths": em.verify_path_independence,
    "coherence": em.verify_basis_coherence,
    "eta": em.verify_eta,
    "exchanger": em.verify_exchanger,
    "shapes": _suite_shapes,
    "families": em.family_identities,
    "identities": em.verify_eval_identities,
    "twists": em.verify_twists,
}
FAST_SUITES = ("boxtimes", "equitable", "aw", "bases", "upsilon", "pairing", "transitions", "eta", "exchanger",
               "shapes", "families", "identities", "twists")


@dataclass
class RunConfig:
    suite: str
    diameters: list
    q: object = None
    t: object = None
    free7: tuple | None = None
    random_points: int = 0
    seed: int = DEFAULT_SEED
    jobs: int = 1
    timing: bool = False


@dataclass
class SuiteResult:
    suite: str
    cells: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.cells)

    def to_obj(self, timing: bool = False) -> dict:
        cells = []
        for c in self.cells:
            c = dict(c)
            if not timing:
                c.pop("seconds", None)
            cells.append(c)
        out = {"schema": SCHEMA, "kind": "suite", "suite": self.suite,
               "passed": self.passed, "cells": cells}
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def random_points(d: int, n: int, seed: int) -> list:
    """n rational (q, t) pairs passing all guards at diameter d."""
    rng = random.Random(f"{seed}:{d}")
    out = []
    while len(out) < n:
        q = Fraction(rng.randint(2, 9), rng.randint(1, 9))
        t = Fraction(rng.choice((-1, 1)) * rng.randint(1, 12), rng.randint(1, 12))
        if abs(q) == 1:
            continue
        try:
            SpecPoint({"q": q, "t": t}).check_t(d)
        except DegenerateError:
            continue
        out.append((q, t))
    return out


def run_cell(suite: str, d: int, q, t, free7) -> dict:
    t0 = time.perf_counter()
    names = FAST_SUITES if suite == "all" else (suite,)
    m = _module(d, q, t, free7)
    report = VerifyReport(f"{suite} d={d}")
    for nm in names:
        report.extend(SUITES[nm](m), prefix=f"{nm}: " if suite == "all" else "")
    return {"d": d, "q": _text(q), "t": _text(t), "passed": report.passed,
            "total": len(report.checks), "failed": len(report.failures()),
            "checks": [c.to_obj() for c in report.checks],
            "seconds": round(time.perf_counter() - t0, 3)}


def _run_cell_args(args):
    return run_cell(*args)


def run(config: RunConfig) -> SuiteResult:
    if config.suite != "all" and config.suite not in SUITES:
        raise click.UsageError(f"unknown suite {config.suite!r}")
    cap = max_symbolic_d()
    cells = []
    for d in config.diameters:
        if config.random_points:
            for q, t in random_points(d, config.random_points, config.seed):
                cells.append((config.suite, d, q, t, config.free7))
        else:
            if (config.q is None or config.t is None) and d > cap:
                raise click.UsageError(
                    f"symbolic verification is capped at d <= {cap} "
                    "(set QTET_MAX_SYMBOLIC_D to override)")
            guard_point(d, config.q, config.t)
            cells.append((config.suite, d, config.q, config.t, config.free7))
    t0 = time.perf_counter()
    if config.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_cell_args, cells))
    else:
        results = [run_cell(*c) for c in cells]
    return SuiteResult(config.suite, results, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# golden export


def matrix_doc(tag: str, d: int, q=None, t=None, qdir: int = 1) -> dict:
    m = build(tag, d, qdir=qdir, t=t, q=q)
    return {"schema": SCHEMA, "kind": "matrix", "name": tag, "qdir": qdir,
            "params": _params(d, q, t), "matrix": m.to_json_obj()}


def golden_export(d: int, outdir, q=None, t=None) -> list:
    """Write every named matrix at diameter d as canonical JSON."""
    if d > 8:
        raise click.UsageError("golden export supports d <= 8")
    guard_point(d, q, t)
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for tag in GOLDEN_TAGS:
        path = out / f"{tag}.json"
        path.write_text(_emit(matrix_doc(tag, d, q, t)))
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# click commands

d_opt = click.option("--d", "d", type=click.IntRange(1, MAX_D), default=3, show_default=True,
                     help="Diameter.")
q_opt = click.option("--q", "q", default="sym", show_default=True, help="'sym' or a rational.")
t_opt = click.option("--t", "t", default="sym", show_default=True, help="'sym' or a rational.")
free7_opt = click.option("--free7", default=None,
                         help="Seven free pairings p01,p02,p03,p12,p21,p30,p31.")
out_opt = click.option("--out", type=click.Path(dir_okay=False), default=None,
                       help="Write JSON here instead of stdout.")


def _write(obj: dict, out) -> None:
    text = _emit(obj)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


@click.group()
def cli():
    """Exact computations with the evaluation modules of the q-tetrahedron algebra."""


@cli.command("matrix")
@click.option("--name", required=True, type=click.Choice(sorted(GOLDEN_TAGS)))
@click.option("--qdir", type=click.Choice(["1", "-1"]), default="1", show_default=True,
              help="Use q (1) or q^-1 (-1).")
@d_opt
@q_opt
@t_opt
@out_opt
def matrix_cmd(name, qdir, d, q, t, out):
    """Emit one named matrix."""
    qv, tv = _value(q), _value(t)
    guard_point(d, qv, tv)
    _write(matrix_doc(name, d, qv, tv, int(qdir)), out)
    return 0


@cli.command("rep")
@d_opt
@q_opt
@t_opt
@click.option("--basis", default="0,1,2,3", show_default=True)
@click.option("--gen", "gen", required=True, help="Generator, e.g. 0,2 or x02.")
@free7_opt
@out_opt
def rep_cmd(d, q, t, basis, gen, free7, out):
    """Matrix of a generator in one of the 24 bases."""
    m = _module(d, _value(q), _value(t), _free7(free7))
    b, g = _basis(basis), _gen(gen)
    _write({"schema": SCHEMA, "kind": "rep", "params": _params(d, _value(q), _value(t)),
            "basis": em.basis_name(b), "generator": gen_name(g), "label": m.rep_name(b, g),
            "matrix": m.rep_matrix(b, g).to_json_obj(), "pairing": m.pairing.to_obj()}, out)
    return 0


@cli.command("transition")
@d_opt
@q_opt
@t_opt
@click.option("--from", "src", required=True)
@click.option("--to", "dst", required=True)
@free7_opt
@out_opt
def transition_cmd(d, q, t, src, dst, free7, out):
    """Transition matrix between two bases."""
    m = _module(d, _value(q), _value(t), _free7(free7))
    a, b = _basis(src), _basis(dst)
    _write({"schema": SCHEMA, "kind": "transition", "params": _params(d, _value(q), _value(t)),
            "from": em.basis_name(a), "to": em.basis_name(b),
            "path": [em.basis_name(x) for x in m.path(a, b)],
            "matrix": m.transition(a, b).to_json_obj(), "pairing": m.pairing.to_obj()}, out)
    return 0


@cli.command("exchanger")
@d_opt
@q_opt
@t_opt
@click.option("--basis", default="0,2,1,3", show_default=True)
@free7_opt
@out_opt
def exchanger_cmd(d, q, t, basis, free7, out):
    """The standard exchanger in a basis."""
    m = _module(d, _value(q), _value(t), _free7(free7))
    b = _basis(basis)
    _write({"schema": SCHEMA, "kind": "exchanger", "params": _params(d, _value(q), _value(t)),
            "basis": em.basis_name(b), "matrix": m.exchanger_matrix(b).to_json_obj(),
            "scalar": m.exchanger_scalar(b).canonical(), "pairing": m.pairing.to_obj()}, out)
    return 0


def _print_summary(result: SuiteResult) -> None:
    for c in result.cells:
        status = "PASS" if c["passed"] else "FAIL"
        click.echo(f"{result.suite:<12} d={c['d']:<3} q={c['q']:<6} t={c['t']:<8} {status}  "
                   f"{c['total'] - c['failed']}/{c['total']}  {c['seconds']:.2f}s")
        for chk in c["checks"]:
            if not chk["passed"]:
                click.echo(f"    failed: {chk['name']} [{chk['relation']}] {chk.get('witness') or ''}")


@cli.command("verify")
@click.option("--suite", default="all", show_default=True,
              type=click.Choice(["all"] + sorted(SUITES)))
@click.option("--d", "d", type=click.IntRange(1, MAX_D), default=None)
@click.option("--d-range", default=None, help="e.g. 1..4")
@q_opt
@t_opt
@free7_opt
@click.option("--random", "nrandom", type=click.IntRange(0), default=0,
              help="Check this many random rational (q, t) points per diameter.")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--jobs", type=click.IntRange(1), default=1, show_default=True)
@click.option("--timing", is_flag=True, help="Include wall times in the JSON report.")
@click.option("--json", "as_json", is_flag=True, help="Print the JSON report instead of a table.")
@out_opt
def verify_cmd(suite, d, d_range, q, t, free7, nrandom, seed, jobs, timing, as_json, out):
    """Run verification suites; exit 1 if any check fails."""
    if d is not None and d_range is not None:
        raise click.UsageError("give --d or --d-range, not both")
    ds = parse_range(d_range) if d_range else [d or 1]
    cfg = RunConfig(suite, ds, _value(q), _value(t), _free7(free7), nrandom, seed, jobs, timing)
    result = run(cfg)
    obj = result.to_obj(timing)
    if out:
        Path(out).write_text(_emit(obj))
    if as_json:
        click.echo(_emit(obj), nl=False)
    else:
        _print_summary(result)
    return 0 if result.passed else 1


@cli.command("export")
@click.option("--d", "d", type=click.IntRange(1, 8), default=3, show_default=True)
@q_opt
@t_opt
@click.option("--out", "outdir", required=True, type=click.Path(file_okay=False))
def export_cmd(d, q, t, outdir):
    """Write every named matrix at diameter d as canonical JSON files."""
    for path in golden_export(d, outdir, _value(q), _value(t)):
        click.echo(str(path))
    return 0


# ---------------------------------------------------------------------------
# Leonard pairs


def _seq(a, b, c, d, q) -> lp.FeasibleSeq:
    vals = {}
    for name, v in (("a", a), ("b", b), ("c", c), ("q", q)):
        x = _value(v)
        if x is not None:
            vals[name] = x
    if "q" in vals:
        SpecPoint({"q": vals["q"]})
    return lp.FeasibleSeq(d=d, **vals)


LEONARD_FORMS = ("compact", "aas", "aas2", "boxtimes")


@cli.group("leonard", invoke_without_command=True)
@click.option("--a", default="sym", show_default=True)
@click.option("--b", default="sym", show_default=True)
@click.option("--c", default="sym", show_default=True)
@click.option("--q", default="sym", show_default=True)
@click.option("--d", "d", type=click.IntRange(1, MAX_D), default=3, show_default=True)
@click.option("--form", type=click.Choice(LEONARD_FORMS), default="compact", show_default=True)
@click.option("--emit", type=click.Choice(["json", "text"]), default="json", show_default=True)
@out_opt
@click.pass_context
def leonard_cmd(ctx, a, b, c, q, d, form, emit, out):
    """Build the Leonard pair of a feasible sequence (a, b, c, d)."""
    ctx.obj = {"a": a, "b": b, "c": c, "q": q}
    if ctx.invoked_subcommand is not None:
        return 0
    s = _seq(a, b, c, d, q)
    if form == "compact":
        real = lp.compact_basis(s)
    elif form == "boxtimes":
        real = lp.boxtimes_realization(s)
    else:
        real = lp.build_leonard_on_Vd(s, form=form)
    if real.C is None or real.C_dual is None:
        cc, ccp = lp.z3_completions(real)
        real = lp.LeonardRealization(real.A, real.B, cc, ccp, real.basis_tag, s)
    obj = {"schema": SCHEMA, "kind": "leonard", "form": form,
           "params": {"a": _text(_value(a)), "b": _text(_value(b)), "c": _text(_value(c)),
                      "q": _text(_value(q)), "d": d},
           "parameter_array": lp.parameter_array(s).to_obj()}
    obj.update(real.to_obj())
    if emit == "json":
        _write(obj, out)
    else:
        for key in ("A", "B", "C", "C_dual"):
            click.echo(f"{key}:")
            for row in obj[key]["entries"]:
                click.echo("  " + "  |  ".join(row))
    return 0


LEONARD_SUITES = {
    "relatives": lambda s: lp.verify_relatives(s),
    "aw": lambda s: lp.verify_aw(s, lp.vd_triple(s.d, "y", s.q)),
    "split": lambda s: lp.verify_split(s),
    "split-dual": lambda s: lp.verify_split(s, dual=True),
    "completions": lambda s: lp.verify_completions(lp.build_leonard_on_Vd(s)),
    "realization": lambda s: lp.verify_boxtimes_realization(s),
    "compact": lambda s: lp.verify_compact(s),
}


def run_leonard_cell(d: int, a, b, c, q, dagger: bool) -> dict:
    t0 = time.perf_counter()
    s = _seq(a, b, c, d, q)
    report = VerifyReport(f"leonard d={d}")
    for nm, fn in LEONARD_SUITES.items():
        report.extend(fn(s), prefix=f"{nm}: ")
    if dagger:
        report.extend(lp.dagger_check(lp.build_leonard_on_Vd(s)), prefix="dagger: ")
    symbolic = any(_value(x) is None for x in (a, b, c, q))
    if not symbolic or d <= 2:
        pa = lp.parameter_array(s)
        real = lp.compact_basis(s)
        report.extend(lp.verify_leonard_shape(real.A, real.B, pa.theta, pa.theta_star),
                      prefix="shape: ")
    return {"d": d, "q": _text(_value(q)), "t": "ab/c", "passed": report.passed,
            "total": len(report.checks), "failed": len(report.failures()),
            "checks": [ch.to_obj() for ch in report.checks],
            "seconds": round(time.perf_counter() - t0, 3)}


@leonard_cmd.command("verify")
@click.option("--d-range", default="1..3", show_default=True)
@click.option("--symbolic", is_flag=True, help="Use indeterminate a, b, c, q.")
@click.option("--json", "as_json", is_flag=True)
@click.option("--timing", is_flag=True)
@out_opt
@click.pass_context
def leonard_verify_cmd(ctx, d_range, symbolic, as_json, timing, out):
    """Verify the Leonard-pair suites over a range of diameters."""
    opts = ctx.obj
    a, b, c, q = (("sym",) * 4) if symbolic else (opts["a"], opts["b"], opts["c"], opts["q"])
    cap = max_symbolic_d(3)
    result = SuiteResult("leonard")
    t0 = time.perf_counter()
    for d in parse_range(d_range):
        sym = any(_value(x) is None for x in (a, b, c, q))
        if sym and d > cap:
            raise click.UsageError(f"symbolic Leonard verification is capped at d <= {cap} "
                                   "(set QTET_MAX_SYMBOLIC_D to override)")
        result.cells.append(run_leonard_cell(d, a, b, c, q, dagger=(not sym) or d <= 2))
    result.wall_time = time.perf_counter() - t0
    obj = result.to_obj(timing)
    if out:
        Path(out).write_text(_emit(obj))
    if as_json:
        click.echo(_emit(obj), nl=False)
    else:
        _print_summary(result)
    return 0 if result.passed else 1


# ---------------------------------------------------------------------------


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="qtet", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except (DegenerateError, lp.InfeasibleError, SingularMatrixError, ZeroDivisionError) as exc:
        click.echo(f"degenerate parameters: {exc}", err=True)
        return 3
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())
