"""Renderers shared by the `strata-morse` subcommands.

Every command first builds a plain summary dictionary, which is the JSON
report, and then renders it as JSON, as rich text tables or as CSV. All three
are deterministic for identical inputs.
"""

import csv
import io
import json
from fractions import Fraction
from math import isinf, isnan
from typing import Any, Iterable, Optional

from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from strata_morse.algebra import GradedPoly
from strata_morse.morse import MorseReport
from strata_morse.spectral import AgreementReport, SpectralModel, SweepReport
from strata_morse.topology import (
    SpaceExpr,
    describe,
    global_cohomology,
    is_self_dual_space,
    strata,
    witt_check,
)

REPORT_WIDTH = 100


def _clean(value: Any) -> Any:
    if isinstance(value, GradedPoly):
        return value.render()
    if isinstance(value, BaseModel):
        return {name: _clean(getattr(value, name)) for name in type(value).model_fields}
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        if isnan(value):
            return "nan"
        if isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _number(value: Optional[float]) -> str:
    if value is None:
        return "-"
    if isinf(value):
        return "inf"
    return f"{value:.6g}"


def _flag(value: Optional[bool]) -> str:
    if value is None:
        return "n/a"
    return "yes" if value else "no"


def render_json(summary: dict[str, Any]) -> str:
    return json.dumps(_clean(summary), indent=2, ensure_ascii=False) + "\n"


def render_csv(header: list[str], rows: Iterable[Iterable[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_clean(cell) for cell in row])
    return buffer.getvalue()


def _render_tables(title: str, lines: list[str], tables: list[Table]) -> str:
    console = Console(
        file=io.StringIO(),
        width=REPORT_WIDTH,
        record=True,
        color_system=None,
        force_terminal=False,
        emoji=False,
        highlight=False,
    )
    console.print(title, markup=False)
    for line in lines:
        console.print(line, markup=False)
    for table in tables:
        console.print()
        console.print(table)
    return console.export_text()


# cohomology


def cohomology_summary(space: SpaceExpr) -> dict[str, Any]:
    result = global_cohomology(space)
    return {
        "space": describe(space),
        "dim": space.dim,
        "poincare": result.poly,
        "betti": result.poly.to_list(space.dim + 1),
        "classes": [{"degree": k, "label": label} for k, label in result.classes],
        "witt": witt_check(space),
        "self_dual": is_self_dual_space(space),
        "strata": [info.model_dump() for info in strata(space)],
    }


def cohomology_text(summary: dict[str, Any]) -> str:
    classes = Table(title="Cohomology classes")
    classes.add_column("degree", justify="right")
    classes.add_column("class")
    for item in summary["classes"]:
        classes.add_row(str(item["degree"]), item["label"])
    tables = [classes]
    if summary["strata"]:
        layers = Table(title="Singular strata")
        for column in ("path", "kind", "depth", "link dim", "w dim", "middle dim"):
            layers.add_column(column)
        for info in summary["strata"]:
            layers.add_row(
                info["path"] or "(root)",
                info["kind"],
                str(info["depth"]),
                str(info["link_dim"]),
                str(info["w_dim"]),
                str(info["middle_dim"]),
            )
        tables.append(layers)
    lines = [
        f"dimension: {summary['dim']}",
        f"P(b) = {summary['poincare']}",
        f"Witt: {_flag(summary['witt'])}",
        f"self-dual: {_flag(summary['self_dual'])}",
    ]
    return _render_tables(f"Space {summary['space']}", lines, tables)


def cohomology_csv(summary: dict[str, Any]) -> str:
    return render_csv(
        ["degree", "label"],
        ([item["degree"], item["label"]] for item in summary["classes"]),
    )


# morse


def morse_summary(report: MorseReport) -> dict[str, Any]:
    summary = _clean(report)
    summary["all_passed"] = report.all_passed
    return summary


def morse_text(report: MorseReport) -> str:
    checks = Table(title="Checks")
    checks.add_column("check")
    checks.add_column("holds")
    checks.add_column("detail")
    checks.add_row("strong", _flag(report.strong.holds), report.strong.message)
    checks.add_row(
        "adjoint duality",
        _flag(report.adjoint.holds),
        report.adjoint.message
        or f"b^n M(1/b) = {report.adjoint.reversed_morse} = M_adj(-h)",
    )
    refined = report.refined
    checks.add_row(
        "refined",
        _flag(refined.holds) if refined.applicable else "n/a",
        f"M_re = {refined.refined}, Qbar = {refined.error}"
        if refined.applicable and refined.error is not None
        else refined.message,
    )
    checks.add_row(
        "Lefschetz",
        _flag(report.lefschetz.equal),
        f"M(-1) = {report.lefschetz.morse_at_minus_one}, "
        f"P(-1) = {report.lefschetz.poincare_at_minus_one}",
    )

    components = Table(title="Critical components")
    for column in ("name", "h", "base", "stable", "unstable", "index", "local"):
        components.add_column(column)
    for row in report.components:
        components.add_row(
            row.name,
            row.h_value,
            row.base,
            " × ".join(row.stable) or "-",
            " × ".join(row.unstable) or "-",
            str(row.index),
            str(row.local_poly),
        )

    perfect = [k for k, flag in report.perfect.items() if flag]
    quotient = report.strong.quotient
    lines = [
        f"dimension: {report.dim}, Witt: {_flag(report.witt)}, "
        f"self-dual: {_flag(report.self_dual)}",
        f"M(h)  = {report.morse}",
        f"M(-h) = {report.morse_flipped}",
        f"P     = {report.poincare}",
        f"Q     = {quotient if quotient is not None else '-'}",
        "perfect: "
        + ("yes" if len(perfect) == len(report.perfect) else f"in degrees {perfect}"),
        f"all checks passed: {_flag(report.all_passed)}",
    ]
    return _render_tables(f"Morse problem: {report.label}", lines, [checks, components])


def morse_csv(report: MorseReport) -> str:
    return render_csv(
        ["name", "h_value", "base", "stable", "unstable", "index", "local_poly"],
        (
            [
                row.name,
                row.h_value,
                row.base,
                ";".join(row.stable),
                ";".join(row.unstable),
                row.index,
                row.local_poly,
            ]
            for row in report.components
        ),
    )


# spectral


def spectral_summary(
    model: SpectralModel, sweep: SweepReport, agreement: AgreementReport
) -> dict[str, Any]:
    return {
        "model": model.model_dump(),
        "stable": sweep.stable,
        "stable_from": sweep.stable_from,
        "counts": sweep.counts,
        "agreement": agreement.model_dump(),
        "reports": [
            {
                "epsilon": report.epsilon,
                "threshold": report.threshold,
                "counts": report.counts,
                "gap_ratios": [d.gap_ratio for d in report.degrees],
                "min_gap_ratio": report.min_gap_ratio,
                "asymmetry": report.asymmetry,
                "min_eigenvalue": report.min_eigenvalue,
                "pairing_defect": report.pairing_defect,
                "modes": report.modes,
            }
            for report in sweep.reports
        ],
    }


def spectral_text(
    model: SpectralModel, sweep: SweepReport, agreement: AgreementReport
) -> str:
    degrees = model.link_dim + 2
    table = Table(title="Small eigenvalue counts")
    table.add_column("epsilon", justify="right")
    table.add_column("c", justify="right")
    for k in range(degrees):
        table.add_column(f"k={k}", justify="right")
    table.add_column("min gap", justify="right")
    table.add_column("pairing", justify="right")
    for report in sweep.reports:
        table.add_row(
            _number(report.epsilon),
            _number(report.threshold),
            *[str(count) for count in report.counts],
            _number(report.min_gap_ratio),
            _number(report.pairing_defect),
        )
    lines = [
        f"grid points: {model.grid_points}, mode cutoff: {model.mode_cutoff}, "
        f"w: {model.w or '-'}",
        f"stable: {_flag(sweep.stable)}"
        + (f" from epsilon {_number(sweep.stable_from)}" if sweep.stable else ""),
        f"counts: {sweep.counts if sweep.counts is not None else '-'}",
        f"symbolic M: {agreement.morse}, P: {agreement.poincare}",
        f"agreement: {_flag(agreement.agree)}"
        + (f" ({agreement.message})" if agreement.message else ""),
    ]
    return _render_tables(f"Spectral model {model.kind}", lines, [table])


def spectral_csv(sweep: SweepReport) -> str:
    return render_csv(
        ["epsilon", "degree", "index", "eigenvalue"],
        (
            [repr(report.epsilon), spectrum.degree, index, repr(value)]
            for report in sweep.reports
            for spectrum in report.degrees
            for index, value in enumerate(spectrum.eigenvalues)
        ),
    )
