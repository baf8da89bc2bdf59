"""
ncpoisson CLI - Command Line Interface
"""

from typing import Any, List, Optional

import typer
from pydantic import ValidationError

from ncpoisson.cli.commands import (
    EXIT_INPUT_ERROR,
    EXIT_OK,
    Command,
    run_batch,
    run_safely,
)
from ncpoisson.config import DEFAULT_ITERATIONS, get_config
from ncpoisson.exceptions import NCPoissonError
from ncpoisson.reports import ReportEnvelope
from ncpoisson.utils.logger import setup_logger

app = typer.Typer(help="ncpoisson - exact computations in non-commutative Poisson algebras")

ALGEBRA = typer.Option("weyl:1", "--algebra", "-a", help="weyl:n, sympoly:n, tensor(A,B) or A@loc=g")
DEG = typer.Option(None, "--deg", "-d", help="Degree bound N (default 6 or $NPA_DEFAULT_DEG)")
ITERATIONS = typer.Option(DEFAULT_ITERATIONS, "--iterations", "-m", help="Iteration cap M")
FORMAT = typer.Option("text", "--format", "-f", help="text or json")


@app.callback()
def main():
    """Exact classification of elements under their adjoint action"""
    config = get_config()
    setup_logger("ncpoisson", config["logging"]["level"], config["logging"]["file"])


def _echo_value(key: str, value: Any, indent: int) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        typer.echo(f"{pad}{key}:")
        for k in sorted(value):
            _echo_value(str(k), value[k], indent + 1)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        typer.echo(f"{pad}{key}:")
        for i, item in enumerate(value):
            _echo_value(str(i), item, indent + 1)
    elif isinstance(value, list):
        typer.echo(f"{pad}{key}: [{', '.join(str(v) for v in value)}]")
    else:
        typer.echo(f"{pad}{key}: {value}")


def render_text(verb: str, report: ReportEnvelope, exit_code: int) -> None:
    data = report.to_dict()
    if report.error:
        typer.echo(f"❌ {report.error}", err=True)
        return
    marker = "✅" if exit_code == EXIT_OK else "❌"
    typer.echo(f"{marker} {verb} on {report.query.get('algebra', '')}")
    key = report.payload_key()
    if key == "verdict" and "label" in data[key]:
        typer.echo(f"🏷️  {data[key]['label']} ({data[key]['grade']})")
    if key:
        for k in sorted(data[key]):
            _echo_value(k, data[key][k], 1)
    typer.echo(f"📏 Evidence: {report.evidence_grade}")
    for warning in report.warnings:
        typer.echo(f"⚠️  {warning}")


def _execute(**fields: Any) -> None:
    try:
        cmd = Command(**fields)
    except ValidationError as e:
        typer.echo(f"❌ {e.errors()[0]['msg']}", err=True)
        raise typer.Exit(EXIT_INPUT_ERROR)
    result = run_safely(cmd)
    if cmd.format == "json":
        typer.echo(result.report.to_json())
        if result.report.error:
            typer.echo(f"❌ {result.report.error}", err=True)
    else:
        render_text(cmd.verb, result.report, result.exit_code)
    if result.exit_code != EXIT_OK:
        raise typer.Exit(result.exit_code)


@app.command()
def classify(
    expr: str = typer.Option(..., "--expr", "-e", help="Element to classify"),
    algebra: str = ALGEBRA,
    deg: Optional[int] = DEG,
    iterations: int = ITERATIONS,
    format: str = FORMAT,
):
    """Classify an element into one of the eight types"""
    _execute(verb="classify", algebra=algebra, expr=expr, deg=deg, iterations=iterations, format=format)


@app.command()
def centralizer(
    expr: str = typer.Option(..., "--expr", "-e", help="Element z"),
    gens: List[str] = typer.Option([], "--gen", "-g", help="Compare with the subalgebra these generate"),
    algebra: str = ALGEBRA,
    deg: Optional[int] = DEG,
    format: str = FORMAT,
):
    """Basis of C(z) on the degree slice"""
    _execute(verb="centralizer", algebra=algebra, expr=expr, exprs=gens, deg=deg, format=format)


@app.command()
def eigen(
    expr: str = typer.Option(..., "--expr", "-e", help="Element z"),
    algebra: str = ALGEBRA,
    deg: Optional[int] = DEG,
    iterations: int = ITERATIONS,
    format: str = FORMAT,
):
    """Eigenvalues and the C, N, D, F bases of ad_z on the slice"""
    _execute(verb="eigen", algebra=algebra, expr=expr, deg=deg, iterations=iterations, format=format)


@app.command()
def orbit(
    expr: str = typer.Option(..., "--expr", "-e", help="Element z"),
    probe: str = typer.Option(..., "--probe", "-x", help="Element x whose orbit is followed"),
    algebra: str = ALGEBRA,
    iterations: int = ITERATIONS,
    format: str = FORMAT,
):
    """Degrees of ad_z^m(x) for m = 0..M"""
    _execute(verb="orbit", algebra=algebra, expr=expr, probe=probe, iterations=iterations, format=format)


@app.command("tensor-check")
def tensor_check(
    kind: str = typer.Option(..., "--kind", "-k", help="theta_F, theta_N, gamma_F, gamma_N, gamma_lambda or gamma_D"),
    left: str = typer.Option(..., "--left", "-l", help="z1 in the left factor"),
    right: str = typer.Option(..., "--right", "-r", help="z2 in the right factor"),
    lam: str = typer.Option("0", "--lam", help="Eigenvalue for gamma_lambda and gamma_D"),
    algebra: str = ALGEBRA,
    deg: Optional[int] = DEG,
    iterations: int = ITERATIONS,
    format: str = FORMAT,
):
    """Compare a subalgebra of z1 (x) z2 or z1 (x) 1 + 1 (x) z2 with the tensor of factor subalgebras"""
    _execute(verb="tensor-check", algebra=algebra, kind=kind, left=left, right=right, lam=lam,
             deg=deg, iterations=iterations, format=format)


@app.command()
def gk(
    gens: List[str] = typer.Option([], "--gen", "-g", help="Generators of V (default: 1 and all generators)"),
    n_max: int = typer.Option(10, "--n-max", "-n", help="Largest power of V"),
    csv: Optional[str] = typer.Option(None, "--csv", help="Write the profile as CSV"),
    algebra: str = ALGEBRA,
    format: str = FORMAT,
):
    """Growth profile dim V^n"""
    _execute(verb="gk", algebra=algebra, exprs=gens, n_max=n_max, csv=csv, format=format)


@app.command()
def indep(
    expr: str = typer.Option(..., "--expr", "-e", help="Element w"),
    basis: List[str] = typer.Option([], "--basis", "-b", help="Basis of the coefficient space B"),
    i_max: int = typer.Option(4, "--i-max", help="Largest power of w"),
    algebra: str = ALGEBRA,
    format: str = FORMAT,
):
    """Right algebraic independence of w over span(B)"""
    _execute(verb="indep", algebra=algebra, expr=expr, exprs=basis, i_max=i_max, format=format)


@app.command()
def locbracket(
    left: str = typer.Option(..., "--left", "-l", help="First fraction"),
    right: str = typer.Option(..., "--right", "-r", help="Second fraction"),
    algebra: str = typer.Option(..., "--algebra", "-a", help="Localized algebra, e.g. sympoly:1@loc=y"),
    format: str = FORMAT,
):
    """Poisson bracket in the localized algebra"""
    _execute(verb="locbracket", algebra=algebra, left=left, right=right, format=format)


@app.command("loc-torsion")
def loc_torsion(
    expr: str = typer.Option(..., "--expr", "-e", help="Strict element z of the base algebra"),
    probe: str = typer.Option(..., "--probe", "-x", help="Fraction to test"),
    algebra: str = typer.Option(..., "--algebra", "-a", help="Localized algebra, e.g. sympoly:1@loc=y"),
    iterations: int = ITERATIONS,
    format: str = FORMAT,
):
    """Whether a fraction has a finite ad_z-orbit"""
    _execute(verb="loc-torsion", algebra=algebra, expr=expr, probe=probe, iterations=iterations, format=format)


@app.command("gr-check")
def gr_check(
    algebra: str = ALGEBRA,
    deg: Optional[int] = DEG,
    format: str = FORMAT,
):
    """Whether gr P is commutative under the induced bracket"""
    _execute(verb="gr-check", algebra=algebra, deg=deg, format=format)


@app.command()
def partner(
    expr: str = typer.Option(..., "--expr", "-e", help="Element z"),
    algebra: str = ALGEBRA,
    deg: Optional[int] = DEG,
    format: str = FORMAT,
):
    """Search the slice for w with {z, w} = 1"""
    _execute(verb="partner", algebra=algebra, expr=expr, deg=deg, format=format)


@app.command("hom-classify")
def hom_classify(
    expr: str = typer.Option(..., "--expr", "-e", help="Element z"),
    images: List[str] = typer.Option(..., "--image", "-i", help="Generator images, p-block then q-block"),
    algebra: str = ALGEBRA,
    deg: Optional[int] = DEG,
    iterations: int = ITERATIONS,
    format: str = FORMAT,
):
    """Classify z and its image under an automorphism"""
    _execute(verb="hom-classify", algebra=algebra, expr=expr, exprs=images, deg=deg,
             iterations=iterations, format=format)


@app.command("normal-form")
def normal_form(
    expr: str = typer.Option(..., "--expr", "-e", help="Expression"),
    algebra: str = ALGEBRA,
    format: str = FORMAT,
):
    """Parse an expression and print its normal form"""
    _execute(verb="normal-form", algebra=algebra, expr=expr, format=format)


@app.command()
def batch(
    path: str = typer.Argument(..., help="JSON-lines file, one command object per line"),
    out: str = typer.Option("reports", "--out", "-o", help="Directory for report-NNN.json files"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", help="Worker processes"),
):
    """Run independent commands concurrently"""
    try:
        codes = run_batch(path, out, workers)
    except (NCPoissonError, OSError) as e:
        typer.echo(f"❌ {e}", err=True)
        raise typer.Exit(EXIT_INPUT_ERROR)
    failed = [i for i, code in enumerate(codes, start=1) if code != EXIT_OK]
    typer.echo(f"✅ {len(codes) - len(failed)}/{len(codes)} commands succeeded; reports in {out}")
    for i in failed:
        typer.echo(f"❌ report-{i:03d}.json: exit {codes[i - 1]}")
    if failed:
        raise typer.Exit(max(codes))


if __name__ == "__main__":
    app()
