"""
Command-line interface for grossporo.

Usage:
    grossporo eval "(20/27)^(g-1)"                  # canonical form and class
    grossporo sponge --k 1 --n g                    # N, L, V of the Menger sponge
    grossporo carpet --k 1 --n g-1                  # N, L, A of the carpet
    grossporo porosity --model classical --n 2 --output json
    grossporo wrc-eval --model psf --theta-s 0.5 --a 0.45 --h-min 1 \\
        --h-grid 1:1000:50 --loglog --output csv
    grossporo wrc-fit --input soil.csv --mode bimodal --theta-s 0.501 --a 0.45 --h-min 0.01

Exit codes: 0 success, 1 domain or data error, 2 usage error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Sequence

import click

from . import geometry, porosity, wrc
from .errors import GrossporoError
from .geometry import FractalObject, IterationIndex, SpongeQuery
from .grossone import GrossValue, NumClass, gv_classify, render
from .parser import parse

__all__ = ["RunReport", "run", "main", "cli"]

OUTPUT = click.option(
    "--output", "-o", type=click.Choice(["table", "csv", "json"]), default="table",
    show_default=True, help="Output format.",
)
DIGITS = click.option(
    "--digits", type=click.IntRange(1, 200), default=17, show_default=True,
    help="Significant digits of decimal approximations.",
)


@dataclass(frozen=True)
class RunReport:
    exit_code: int
    output: str
    errors: str = ""


# ---------------------------------------------------------------------------
# formatting


def approx(q: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def _exact(v: GrossValue | Fraction) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return render(v)


def _approx_of(v: GrossValue | Fraction, digits: int) -> str:
    """Decimal of a rational value; gross values give their finite part
    (annotated when infinitesimal corrections are present)."""
    if isinstance(v, Fraction):
        return approx(v, digits)
    if v.is_rational:
        return approx(v.as_rational(), digits)
    cls = gv_classify(v)
    if cls is NumClass.FINITE:
        return approx(v.finite_part(), digits) + " (+ infinitesimal)"
    if cls in (NumClass.POLYNOMIALLY_INFINITESIMAL, NumClass.EXPONENTIALLY_INFINITESIMAL):
        return "infinitesimal" if v > 0 else "-infinitesimal"
    return "infinite" if v > 0 else "-infinite"


def _quantity(record: dict, key: str, v: GrossValue | Fraction, digits: int) -> None:
    record[key] = _exact(v)
    record[f"{key}_approx"] = _approx_of(v, digits)


def _emit(records: list[dict[str, Any]], fmt: str, json_obj: Any = None) -> None:
    if fmt == "json":
        obj = json_obj if json_obj is not None else (records[0] if len(records) == 1 else records)
        click.echo(json.dumps(obj, ensure_ascii=False, indent=2))
        return
    keys: list[str] = []
    for r in records:
        keys.extend(k for k in r if k not in keys)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow({k: _cell(r.get(k, "")) for k in keys})
        click.echo(buf.getvalue(), nl=False)
        return
    if len(records) == 1:
        width = max(len(k) for k in keys)
        for k in keys:
            click.echo(f"{k:<{width}}  {_cell(records[0][k])}")
        return
    rows = [[_cell(r.get(k, "")) for k in keys] for r in records]
    widths = [max(len(k), *(len(row[i]) for row in rows)) for i, k in enumerate(keys)]
    click.echo("  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip())
    for row in rows:
        click.echo("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return "" if v is None else str(v)


class IterationType(click.ParamType):
    name = "N|g-M"

    def convert(self, value, param, ctx):
        if isinstance(value, IterationIndex):
            return value
        try:
            return IterationIndex.parse(value)
        except GrossporoError as exc:
            self.fail(str(exc), param, ctx)


class GridType(click.ParamType):
    name = "lo:hi:steps"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            lo, hi, steps = value.split(":")
            return float(lo), float(hi), int(steps)
        except ValueError:
            self.fail(f"{value!r} is not lo:hi:steps", param, ctx)


# ---------------------------------------------------------------------------
# commands


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli() -> None:
    """Exact Menger-sponge porosity with grossone, and fractal water retention curves."""


@cli.command("eval")
@click.argument("expr")
@OUTPUT
@DIGITS
def eval_cmd(expr: str, output: str, digits: int) -> None:
    """Parse EXPR (use g for grossone) and print its canonical form."""
    v = parse(expr)
    cls = gv_classify(v)
    record: dict[str, Any] = {
        "canonical": render(v),
        "class": str(cls),
        "finite_part": str(v.finite_part()),
        "approx": approx(v.finite_part(), digits),
    }
    rest = v - v.finite_part()
    record["corrections"] = render(rest) if not rest.is_zero else ""
    _emit([record], output)


def _geometry_rows(obj: FractalObject, k: int, ns: Sequence[IterationIndex], digits: int,
                   dim_digits: int) -> list[dict]:
    rows = []
    for n in ns:
        q = SpongeQuery(k, n)
        row: dict[str, Any] = {"k": k, "n": str(n)}
        if obj is FractalObject.SPONGE:
            geo = geometry.menger_geometry(q)
            measure = ("volume", geo.volume)
        else:
            geo = geometry.carpet_geometry(q)
            measure = ("area", geo.area)
        _quantity(row, "count", geo.count, digits)
        _quantity(row, "side", geo.side, digits)
        _quantity(row, measure[0], measure[1], digits)
        row["class"] = str(gv_classify(measure[1]))
        row["dimension"] = str(geometry.fractal_dimension(obj, dim_digits))
        rows.append(row)
    return rows


def _geometry_command(name: str, obj: FractalObject, help_text: str):
    @cli.command(name, help=help_text)
    @click.option("--k", "k", type=click.IntRange(min=1), default=1, show_default=True,
                  help="Start level.")
    @click.option("--n", "ns", type=IterationType(), multiple=True, required=True,
                  help="Iteration: integer, g, or g-M (repeatable).")
    @click.option("--dim-digits", type=click.IntRange(1, 500), default=9, show_default=True,
                  help="Decimal places of the fractal dimension.")
    @OUTPUT
    @DIGITS
    def command(k, ns, dim_digits, output, digits):
        _emit(_geometry_rows(obj, k, ns, digits, dim_digits), output)

    return command


_geometry_command("sponge", FractalObject.SPONGE,
                  "Menger sponge count N, side L and volume V = (20/27)^(n+k-2).")
_geometry_command("carpet", FractalObject.CARPET,
                  "Sierpinski carpet count N, side L and area A = (8/9)^(n+k-2).")


@cli.command("porosity")
@click.option("--model", type=click.Choice(["classical", "grossone", "turcotte"]),
              required=True)
@click.option("--n", "ns", multiple=True,
              help="Iteration (classical/turcotte: integer >= 0; grossone: N or g-M).")
@click.option("--k", "k", type=click.IntRange(min=1), default=1, show_default=True,
              help="Start level (grossone).")
@click.option("--r0", type=str, default=None, help="Turcotte cube size r0.")
@click.option("--r", "r", type=str, default=None, help="Turcotte linear size r.")
@click.option("--d-f", "d_f", type=str, default=None,
              help="Fractal dimension for the power law (default ln20/ln3).")
@click.option("--precision", type=click.IntRange(5, 500), default=34, show_default=True,
              help="Working digits of the power law.")
@OUTPUT
@DIGITS
def porosity_cmd(model, ns, k, r0, r, d_f, precision, output, digits):
    """Porosity of the Menger sponge (classical, grossone or Turcotte)."""
    rows: list[dict] = []
    if model == "turcotte" and r is not None:
        phi, ratio = porosity.turcotte_scaling(r0 or "1", r, d_f, precision)
        rows.append({"r0": r0 or "1", "r": r, "phi": str(phi), "density_ratio": str(ratio)})
        _emit(rows, output)
        return
    if not ns:
        raise click.UsageError("--n is required (or --r for the Turcotte power law)")
    for text in ns:
        if model == "grossone":
            try:
                n = IterationIndex.parse(text)
            except GrossporoError as exc:
                raise click.BadParameter(str(exc), param_hint="--n") from None
            res = porosity.porosity_grossone(SpongeQuery(k, n))
            row: dict[str, Any] = {"k": k, "n": str(n)}
        else:
            try:
                n_int = int(text)
            except ValueError:
                raise click.BadParameter(f"{text!r} is not an integer", param_hint="--n") from None
            if model == "classical":
                res = porosity.porosity_classical(n_int)
                row = {"n": n_int}
            else:
                phi, ratio = porosity.turcotte_order(n_int)
                row = {"n": n_int}
                _quantity(row, "phi", phi, digits)
                _quantity(row, "density_ratio", ratio, digits)
                r0_val = Fraction(r0 or "1")
                p_law, _ = porosity.turcotte_scaling(r0_val, r0_val * 3**n_int, d_f, precision)
                row["phi_power_law"] = str(p_law)
                rows.append(row)
                continue
        _quantity(row, "phi", res.phi, digits)
        _quantity(row, "solid_volume", res.solid_volume, digits)
        _quantity(row, "void_volume", res.void_volume, digits)
        row["class"] = str(gv_classify(res.phi))
        rows.append(row)
    _emit(rows, output)


def _wrc_params(model, theta_s, a, p, s, h_min, h_max, d_f, alpha, strict) -> wrc.WrcParams:
    if theta_s is None:
        raise click.UsageError("Missing option '--theta-s'.")
    return wrc.WrcParams(
        model=model, theta_s=theta_s, a=a, p=p, s=s, h_min=h_min,
        h_max=h_max if h_max is not None else float("inf"),
        d_f=d_f if d_f is not None else wrc.SPONGE_DF, alpha=alpha, strict=strict,
    )


def _wrc_options(f):
    opts = [
        click.option("--model", type=click.Choice(["psf", "tw", "rs"]), default="psf",
                     show_default=True),
        click.option("--theta-s", "theta_s", type=float, default=None,
                     help="Saturated water content (= porosity).  [required]"),
        click.option("--a", "a", type=float, default=None, help="PSF parameter A."),
        click.option("--p", "p", type=float, default=None, help="Pore fraction per scale."),
        click.option("--s", "s", type=float, default=None, help="Solid fraction per scale."),
        click.option("--h-min", "h_min", type=float, default=1.0, show_default=True,
                     help="Air-entry head (cm)."),
        click.option("--h-max", "h_max", type=float, default=None, help="Largest head (cm)."),
        click.option("--d-f", "d_f", type=float, default=None,
                     help="Fractal dimension (default ln20/ln3)."),
        click.option("--alpha", type=float, default=1.0, show_default=True,
                     help="Capillary length (cm)."),
        click.option("--strict", is_flag=True, help="Enforce theta_s <= A <= 1."),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


@cli.command("wrc-eval")
@_wrc_options
@click.option("--h-grid", "grid", type=GridType(), required=True,
              help="Heads as lo:hi:steps.")
@click.option("--spacing", type=click.Choice(["log", "linear"]), default="log",
              show_default=True)
@click.option("--loglog", is_flag=True, help="Add log10(h_min/h) and log10((theta+A-theta_s)/A).")
@OUTPUT
def wrc_eval_cmd(model, theta_s, a, p, s, h_min, h_max, d_f, alpha, strict, grid, spacing,
                 loglog, output):
    """Evaluate a retention curve on a grid of heads."""
    params = _wrc_params(model, theta_s, a, p, s, h_min, h_max, d_f, alpha, strict)
    heads = wrc.head_grid(*grid, spacing=spacing)
    rows = []
    points = []
    for h in heads:
        value = wrc.theta_eval(params, h)
        points.append(wrc.RetentionPoint(h, value.theta))
        rows.append({"h": h, "theta": value.theta, "clamped": value.clamped})
    if loglog:
        for row, (x, y) in zip(rows, wrc.loglog_transform(params, points)):
            row["log_hmin_over_h"] = x
            row["log_scaled_theta"] = y
    _emit(rows, output)


@cli.command("wrc-fit")
@click.option("--input", "path", type=str, required=True, help="CSV with header h,theta.")
@click.option("--mode", type=click.Choice(["single", "bimodal"]), default="single",
              show_default=True)
@_wrc_options
@OUTPUT
def wrc_fit_cmd(path, mode, model, theta_s, a, p, s, h_min, h_max, d_f, alpha, strict, output):
    """Fit fractal dimension(s) to measured retention data."""
    points = wrc.read_retention_csv(path)
    params = _wrc_params(model, theta_s, a, p, s, h_min, h_max, d_f, alpha, strict)
    fit = wrc.fit_single(points, params) if mode == "single" else wrc.fit_bimodal(points, params)
    rows = []
    for i, reg in enumerate(fit.regimes, start=1):
        rows.append({
            "regime": i, "d_f": reg.d_f, "slope": reg.slope, "intercept": reg.intercept,
            "h_low": reg.h_low, "h_high": reg.h_high, "n_points": reg.n_points,
        })
    summary = {"mode": mode, "regimes": rows, "breakpoint_h": fit.breakpoint_h, "sse": fit.sse}
    if output == "json":
        _emit(rows, output, json_obj=summary)
        return
    _emit(rows, output)
    if output == "table":
        click.echo(f"breakpoint_h  {_cell(fit.breakpoint_h) or '-'}")
        click.echo(f"sse           {_cell(fit.sse)}")


# ---------------------------------------------------------------------------
# entry points


def run(argv: Sequence[str]) -> RunReport:
    """Run the CLI on ``argv`` and capture its output and exit code."""
    out, err = io.StringIO(), io.StringIO()
    code = 0
    with redirect_stdout(out), redirect_stderr(err):
        try:
            rv = cli.main(args=list(argv), prog_name="grossporo", standalone_mode=False)
            if isinstance(rv, int):
                code = rv
        except click.exceptions.Exit as exc:
            code = exc.exit_code
        except click.exceptions.Abort:
            code = 1
            err.write("aborted\n")
        except click.UsageError as exc:
            code = 2
            if exc.ctx is not None:
                err.write(exc.ctx.get_usage() + "\n")
            err.write(f"Error: {exc.format_message()}\n")
        except click.ClickException as exc:
            code = 1
            err.write(f"Error: {exc.format_message()}\n")
        except GrossporoError as exc:
            code = 1
            out.seek(0)
            out.truncate()
            err.write(f"error [{exc.code}]: {exc}\n")
    return RunReport(code, out.getvalue(), err.getvalue())


def main(argv: Sequence[str] | None = None) -> None:
    report = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(report.output)
    sys.stderr.write(report.errors)
    sys.exit(report.exit_code)
