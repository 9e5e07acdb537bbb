"""Command line front end.

Exit codes: 0 success, 1 verification failure or falsified scan property,
2 usage error (including invalid game parameters).
"""

from __future__ import annotations

import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import click

from .analysis import (
    MomentsReport,
    PayoffSpec,
    ScanReport,
    bump_logconcavity_scan,
    moments,
    nonvacuity_scan,
    payoff_ev,
)
from .distribution import GameParams, JointDistribution, joint_distribution
from .exactnum import to_decimal
from .oracle import compare, exhaustive_distribution, simulate

# Cells of exact probability below this see too few simulated hits for the
# binomial z-score to be meaningful, so the verify command leaves them
# unscored.
_MIN_SCORED_PROB = 1e-5


def _parse_params(m: int, s: int, l: int, u: int) -> GameParams:
    try:
        return GameParams(m, s, l, u)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def game_options(fn):
    fn = click.option("-u", type=int, required=True, help="Upper tally cap.")(fn)
    fn = click.option("-l", type=int, required=True, help="Lower tally quota.")(fn)
    fn = click.option("-s", type=int, required=True, help="Cards per rank.")(fn)
    fn = click.option("-m", type=int, required=True, help="Number of ranks.")(fn)
    return fn


@click.group()
def main() -> None:
    """Exact stopping-time and outcome distributions for band-or-bump deals."""


# ==================== dist ====================


@dataclass(frozen=True)
class OutputTable:
    """Fully rendered table: header, one row per draw, footer summary rows."""

    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    footer: tuple[tuple[str, ...], ...]


def _cell(x: Fraction, digits: int) -> str:
    return "" if x == 0 else to_decimal(x, digits)


def build_table(dist: JointDistribution, report: MomentsReport, digits: int) -> OutputTable:
    band_marg = dist.band_marginal
    bump_marg = dist.bump_marginal
    rows = []
    for n, band, bump in dist.rows:
        cond_band = band / band_marg if band_marg else Fraction(0)
        cond_bump = bump / bump_marg if bump_marg else Fraction(0)
        rows.append(
            (
                str(n),
                _cell(band, digits),
                _cell(bump, digits),
                _cell(band + bump, digits),
                _cell(cond_band, digits),
                _cell(cond_bump, digits),
            )
        )
    footer = (
        ("Outcome probabilities", _cell(band_marg, digits), _cell(bump_marg, digits), "", "", ""),
        (
            "Mean duration",
            "",
            "",
            _cell(report.mean, digits),
            _cell(report.band.mean, digits) if report.band.mean is not None else "",
            _cell(report.bump.mean, digits) if report.bump.mean is not None else "",
        ),
        (
            "Standard deviation",
            "",
            "",
            report.sd,
            report.band.sd or "",
            report.bump.sd or "",
        ),
    )
    header = ("n", "P[N=n, band]", "P[N=n, bump]", "P[N=n]", "P[N=n | band]", "P[N=n | bump]")
    return OutputTable(header, tuple(rows), footer)


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _json_value(x: Fraction, digits: int) -> dict:
    return {"exact": _rat(x), "decimal": to_decimal(x, digits)}


def dist_json(dist: JointDistribution, report: MomentsReport, digits: int) -> dict:
    p = dist.params
    band_marg = dist.band_marginal
    bump_marg = dist.bump_marginal
    rows = []
    for n, band, bump in dist.rows:
        rows.append(
            {
                "n": n,
                "band": _json_value(band, digits),
                "bump": _json_value(bump, digits),
                "total": _json_value(band + bump, digits),
                "band_conditional": _json_value(band / band_marg, digits) if band_marg else None,
                "bump_conditional": _json_value(bump / bump_marg, digits) if bump_marg else None,
            }
        )
    def outcome_block(oc):
        if oc.mean is None:
            return None
        return {
            "mean": _json_value(oc.mean, digits),
            "variance": _rat(oc.variance),
            "sd": oc.sd,
        }
    return {
        "params": {"m": p.m, "s": p.s, "l": p.l, "u": p.u, "t": p.t, "n_max": p.n_max},
        "digits": digits,
        "rows": rows,
        "band_marginal": _json_value(band_marg, digits),
        "bump_marginal": _json_value(bump_marg, digits),
        "mean_duration": {
            "overall": _json_value(report.mean, digits),
            "variance": _rat(report.variance),
            "sd": report.sd,
            "band": outcome_block(report.band),
            "bump": outcome_block(report.bump),
        },
    }


@main.command("dist")
@game_options
@click.option(
    "--digits", type=click.IntRange(min=1), default=6, show_default=True,
    help="Significant figures.",
)
@click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True
)
def cmd_dist(m: int, s: int, l: int, u: int, digits: int, fmt: str) -> None:
    """Print the joint stopping-draw/outcome table."""
    params = _parse_params(m, s, l, u)
    dist = joint_distribution(params)
    report = moments(dist, digits)
    if fmt == "json":
        click.echo(json.dumps(dist_json(dist, report, digits), indent=2))
        return
    table = build_table(dist, report, digits)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(table.header)
    writer.writerows(table.rows)
    writer.writerows(table.footer)


# ==================== verify ====================


@main.command("verify")
@game_options
@click.option("--mc-trials", type=int, default=None, help="Monte Carlo deal count.")
@click.option("--seed", type=int, default=0, show_default=True, help="Simulation seed.")
@click.option(
    "--oracle-cap",
    type=int,
    default=16,
    show_default=True,
    help="Largest deck the exhaustive check will accept.",
)
@click.option(
    "--z-threshold",
    type=float,
    default=4.0,
    show_default=True,
    help="Per-cell |z| limit for the Monte Carlo check.",
)
def cmd_verify(
    m: int, s: int, l: int, u: int, mc_trials: int | None, seed: int, oracle_cap: int, z_threshold: float
) -> None:
    """Check the closed forms against independent recomputation."""
    params = _parse_params(m, s, l, u)
    dist = joint_distribution(params)
    ran = False
    failed = False
    if params.t <= oracle_cap:
        ran = True
        reference = exhaustive_distribution(params, cap=oracle_cap)
        if dist.matches(reference):
            click.echo(f"exhaustive: exact match on {len(dist.rows)} rows")
        else:
            failed = True
            click.echo("exhaustive: MISMATCH")
            lo = min(dist.first_n, reference.first_n)
            hi = max(dist.last_n, reference.last_n)
            for n in range(lo, hi + 1):
                fb, ob = dist.band_mass(n), reference.band_mass(n)
                fp, op = dist.bump_mass(n), reference.bump_mass(n)
                if fb != ob or fp != op:
                    click.echo(f"  n={n}: formula ({fb}, {fp}) vs exhaustive ({ob}, {op})")
    else:
        click.echo(f"exhaustive: skipped (t={params.t} exceeds cap {oracle_cap})")
    if mc_trials is not None:
        ran = True
        empirical = simulate(params, mc_trials, seed)
        report = compare(dist, empirical, z_threshold=z_threshold, min_prob=_MIN_SCORED_PROB)
        scored = sum(1 for c in report.cells if c.scored)
        click.echo(
            f"monte carlo: max |z| = {report.max_abs_z:.3f} over {scored} scored cells "
            f"({mc_trials} trials, threshold {z_threshold})"
        )
        if report.impossible:
            click.echo(f"monte carlo: {report.impossible} hits on cells of exact probability 0")
        if not report.passed:
            failed = True
    if not ran:
        raise click.UsageError(
            f"deck size t={params.t} exceeds --oracle-cap {oracle_cap} and no --mc-trials "
            "were requested; nothing to verify"
        )
    sys.exit(1 if failed else 0)


# ==================== scan ====================


@main.command("scan")
@click.argument("kind", type=click.Choice(["nonvacuity", "bump-logconcavity"]))
@click.option("--m-max", type=int, default=8, show_default=True)
@click.option("--s-max", type=int, default=8, show_default=True)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Write the JSON report here instead of stdout.",
)
def cmd_scan(kind: str, m_max: int, s_max: int, out: str | None) -> None:
    """Sweep a parameter grid for structural properties of the bump sum.

    nonvacuity failures falsify a proved property and exit 1;
    bump-logconcavity hits concern a conjecture only and still exit 0.
    """
    m_range = (2, m_max)
    s_range = (2, s_max)
    report: ScanReport
    if kind == "nonvacuity":
        report = nonvacuity_scan(m_range, s_range)
    else:
        report = bump_logconcavity_scan(m_range, s_range)
    noun = "counterexamples" if kind == "nonvacuity" else "findings"
    click.echo(
        f"{kind}: {report.cells} parameter cells, {report.checks} checks, "
        f"{len(report.findings)} {noun}"
    )
    payload = json.dumps(report.to_json_dict(), indent=2)
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        click.echo(payload)
    if kind == "nonvacuity" and not report.ok:
        sys.exit(1)


# ==================== payoff ====================


@main.command("payoff")
@game_options
@click.option("--band", "band_pay", type=str, required=True, help="Payout on a band (exact decimal).")
@click.option("--bump", "bump_pay", type=str, required=True, help="Payout on a bump (exact decimal).")
@click.option(
    "--digits", type=click.IntRange(min=1), default=6, show_default=True,
    help="Significant figures.",
)
def cmd_payoff(m: int, s: int, l: int, u: int, band_pay: str, bump_pay: str, digits: int) -> None:
    """Expected payoff of one deal under per-outcome stakes."""
    params = _parse_params(m, s, l, u)
    try:
        payoff = PayoffSpec.parse(band_pay, bump_pay)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    ev = payoff_ev(joint_distribution(params), payoff)
    click.echo(f"expected payoff: {ev.numerator}/{ev.denominator} = {to_decimal(ev, digits)}")


if __name__ == "__main__":
    main(prog_name="bandorbump")
