import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from math import sqrt
from typing import Iterable, Optional, Union

import numpy as np
import scipy.linalg
from tqdm.auto import tqdm

from strata_morse.config import (
    AUTO_THRESHOLD_WINDOW,
    GAP_RATIO_TARGET,
    NEGATIVE_EIGENVALUE_TOL,
    ZERO_FLOOR,
)
from strata_morse.exceptions import SpectralAssemblyError
from strata_morse.morse import morse_polynomial, suspension_height_problem
from strata_morse.spectral.assembly import assemble_mode_operator
from strata_morse.spectral.base import BaseSuspensionModel
from strata_morse.spectral.models import build_model
from strata_morse.spectral.schemas import (
    AgreementReport,
    DegreeSpectrum,
    HeatSupertrace,
    RefinementReport,
    RefinementRow,
    SpectralModel,
    SpectrumReport,
    SweepReport,
)
from strata_morse.topology import global_cohomology

logger = logging.getLogger(__name__)

ModelLike = Union[SpectralModel, BaseSuspensionModel]

# per mode: (asymmetry, eigenvalues per degree)
ModeSpectra = tuple[float, list[np.ndarray]]


def _as_model(model: ModelLike) -> BaseSuspensionModel:
    return model if isinstance(model, BaseSuspensionModel) else build_model(model)


def mode_spectrum(
    model: ModelLike, mode: tuple[int, ...], epsilon: float
) -> ModeSpectra:
    """Full spectrum of the deformed Laplacian in one Fourier mode, per degree.

    Raises:
        SpectralAssemblyError: If the eigensolver fails, or an eigenvalue lies
            below `-NEGATIVE_EIGENVALUE_TOL`.
    """
    model = _as_model(model)
    operator = assemble_mode_operator(model, mode, float(epsilon))
    spectra = []
    for k, block in enumerate(operator.laplacians):
        if block.shape[0] == 0:
            spectra.append(np.zeros(0))
            continue
        try:
            values = scipy.linalg.eigh(block, eigvals_only=True)
        except (np.linalg.LinAlgError, ValueError) as error:
            raise SpectralAssemblyError(
                f"eigensolver failed at epsilon={epsilon}, mode={mode}, "
                f"degree {k}: {error}"
            ) from error
        if values[0] < -NEGATIVE_EIGENVALUE_TOL:
            raise SpectralAssemblyError(
                f"negative eigenvalue {values[0]:.3e} at epsilon={epsilon}, "
                f"mode={mode}, degree {k}"
            )
        spectra.append(values)
    return operator.asymmetry(), spectra


def solve_modes(
    model: ModelLike, epsilon: float, threads: int = 1, verbosity: int = 0
) -> list[ModeSpectra]:
    """Eigensolve every Fourier mode, in mode order regardless of scheduling."""
    model = _as_model(model)
    modes = model.modes()
    results: list[Optional[ModeSpectra]] = [None] * len(modes)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        futures = {
            executor.submit(mode_spectrum, model, mode, epsilon): idx
            for idx, mode in enumerate(modes)
        }
        for future in tqdm(
            as_completed(futures),
            desc=f"Solving modes at epsilon={float(epsilon):g}",
            total=len(modes),
            disable=verbosity == 0,
        ):
            results[futures[future]] = future.result()
    return results


def auto_threshold(
    pooled: Iterable[float], window: int = AUTO_THRESHOLD_WINDOW
) -> float:
    """Cutoff at the largest multiplicative gap among the lowest eigenvalues.

    Values are floored at `ZERO_FLOOR`; the cutoff is the geometric mean of the
    two eigenvalues across the gap.
    """
    values = np.sort(np.maximum(np.asarray(list(pooled), dtype=float), ZERO_FLOOR))
    values = values[:window]
    if len(values) < 2:
        return float(values[0]) * 2 if len(values) else ZERO_FLOOR
    ratios = values[1:] / values[:-1]
    gap = int(np.argmax(ratios))
    return float(sqrt(values[gap] * values[gap + 1]))


def pairing_defect(spectra: list[ModeSpectra], threshold: float) -> float:
    """Relative mismatch between nonzero even-degree and odd-degree eigenvalues.

    Eigenvalues above `threshold` pair up between adjacent degrees within each
    mode, so the two multisets agree for an exact discrete complex.
    """
    worst = 0.0
    for _, per_degree in spectra:
        even = _above(per_degree[0::2], threshold)
        odd = _above(per_degree[1::2], threshold)
        if len(even) != len(odd):
            return float("inf")
        if len(even):
            mismatch = np.abs(even - odd) / np.maximum(even, odd)
            worst = max(worst, float(mismatch.max()))
    return worst


def _above(blocks: list[np.ndarray], threshold: float) -> np.ndarray:
    values = [v[v > threshold] for v in blocks]
    return np.sort(np.concatenate(values)) if values else np.zeros(0)


def _degree_spectrum(degree: int, values: np.ndarray, threshold: float, keep: int):
    included = values[values <= threshold]
    excluded = values[values > threshold]
    first_excluded = float(excluded[0]) if len(excluded) else None
    if not len(included):
        gap_ratio = float("inf")
        small_max = None
    else:
        small_max = float(included[-1])
        gap_ratio = (
            first_excluded / max(small_max, ZERO_FLOOR)
            if first_excluded is not None
            else float("inf")
        )
    return DegreeSpectrum(
        degree=degree,
        eigenvalues=[float(v) for v in values[:keep]],
        small_count=len(included),
        gap_ratio=gap_ratio,
        first_excluded=first_excluded,
        small_max=small_max,
    )


def spectrum(
    model: ModelLike,
    epsilon: float,
    threshold: Union[str, float, None] = None,
    threads: int = 1,
    verbosity: int = 0,
) -> SpectrumReport:
    """Small-eigenvalue counts of the deformed Laplacian at one epsilon.

    Args:
        model (ModelLike): A configuration or a built model.
        epsilon (float): The deformation parameter.
        threshold (Union[str, float, None]): Cutoff `c`, `"auto"`, or `None` to use
            the configured one.
        threads (int): Worker threads for the per-mode eigensolves.
        verbosity (int): Show a progress bar when positive.

    Returns:
        SpectrumReport: Per-degree counts, low eigenvalues and gap ratios.
    """
    model = _as_model(model)
    threshold = model.config.threshold if threshold is None else threshold
    spectra = solve_modes(model, epsilon, threads, verbosity)
    degrees = len(spectra[0][1])
    merged = [
        np.sort(np.concatenate([per_degree[k] for _, per_degree in spectra]))
        for k in range(degrees)
    ]
    if threshold == "auto":
        pooled = np.concatenate([v[:AUTO_THRESHOLD_WINDOW] for v in merged])
        cutoff = auto_threshold(pooled)
    else:
        cutoff = float(threshold)
    keep = model.config.keep
    report = SpectrumReport(
        epsilon=float(epsilon),
        threshold=cutoff,
        degrees=[_degree_spectrum(k, merged[k], cutoff, keep) for k in range(degrees)],
        modes=len(spectra),
        asymmetry=max(asymmetry for asymmetry, _ in spectra),
        min_eigenvalue=float(min(v[0] for v in merged if len(v))),
        pairing_defect=pairing_defect(spectra, cutoff),
    )
    logger.info(
        "epsilon=%g: counts %s, threshold %.3e, min gap ratio %.3g",
        float(epsilon),
        report.counts,
        cutoff,
        report.min_gap_ratio,
    )
    return report


def sweep(
    model: ModelLike,
    threads: int = 1,
    verbosity: int = 0,
    gap_target: float = GAP_RATIO_TARGET,
) -> SweepReport:
    """Spectra over the configured epsilon list with a stability verdict.

    The verdict holds when the small counts are constant for every epsilon at
    or above the smallest one whose gap ratio reaches `gap_target` in every
    degree.

    Raises:
        ValueError: With fewer than two epsilon values.
    """
    model = _as_model(model)
    epsilons = sorted(set(model.config.epsilon_list))
    if len(epsilons) < 2:
        raise ValueError("a sweep needs at least two distinct epsilon values")
    reports = [
        spectrum(model, e, threads=threads, verbosity=verbosity) for e in epsilons
    ]
    start = next(
        (i for i, r in enumerate(reports) if r.min_gap_ratio >= gap_target), None
    )
    if start is None:
        return SweepReport(reports=reports, stable=False)
    tail = [r.counts for r in reports[start:]]
    stable = all(counts == tail[0] for counts in tail)
    return SweepReport(
        reports=reports,
        stable=stable,
        stable_from=reports[start].epsilon,
        counts=tail[0] if stable else None,
    )


def refine(
    model: ModelLike,
    epsilon: float,
    grids: Iterable[int],
    threads: int = 1,
    verbosity: int = 0,
) -> RefinementReport:
    """Compare small counts and low eigenvalues across radial grids.

    The discrete complex is exact at every resolution, so the small cluster sits
    at round-off on every grid. Refinement is judged by stable counts, a small
    cluster that never grows beyond round-off, and shrinking successive changes
    of the first excluded eigenvalue in each degree.
    """
    model = _as_model(model)
    rows = []
    for n in sorted(set(grids)):
        config = model.config.model_copy(update={"grid_points": n})
        report = spectrum(
            type(model)(config), epsilon, threads=threads, verbosity=verbosity
        )
        rows.append(
            RefinementRow(
                grid_points=n,
                counts=report.counts,
                small_max=[d.small_max for d in report.degrees],
                first_excluded=[d.first_excluded for d in report.degrees],
            )
        )
    counts_stable = all(row.counts == rows[0].counts for row in rows)
    small_bounded = all(
        (b or 0.0) <= max(a or 0.0, NEGATIVE_EIGENVALUE_TOL)
        for prev, cur in zip(rows, rows[1:])
        for a, b in zip(prev.small_max, cur.small_max)
    )
    excluded_converging = True
    for k in range(len(rows[0].counts)):
        values = [row.first_excluded[k] for row in rows]
        if any(v is None for v in values):
            continue
        changes = [abs(b - a) for a, b in zip(values, values[1:])]
        if any(later > earlier + 1e-12 for earlier, later in zip(changes, changes[1:])):
            excluded_converging = False
    return RefinementReport(
        epsilon=float(epsilon),
        rows=rows,
        counts_stable=counts_stable,
        small_bounded=small_bounded,
        excluded_converging=excluded_converging,
    )


def heat_supertrace(
    model: ModelLike,
    epsilon: float,
    t_values: Iterable[float],
    threads: int = 1,
) -> list[HeatSupertrace]:
    """Discrete polynomial heat supertrace `L(b, t)` and its `(1+b)` quotient.

    `L(-1, t)` equals `P(-1)` for every `t`, because nonzero eigenvalues cancel
    in pairs between adjacent degrees.
    """
    model = _as_model(model)
    spectra = solve_modes(model, epsilon, threads)
    degrees = len(spectra[0][1])
    merged = [
        np.concatenate([per_degree[k] for _, per_degree in spectra])
        for k in range(degrees)
    ]
    cutoff = auto_threshold(
        np.concatenate([np.sort(v)[:AUTO_THRESHOLD_WINDOW] for v in merged])
    )
    betti = [int(np.sum(v <= cutoff)) for v in merged]
    results = []
    for t in t_values:
        traces = [float(np.sum(np.exp(-t * np.maximum(v, 0.0)))) for v in merged]
        supertrace = sum((-1) ** k * trace for k, trace in enumerate(traces))
        # synthetic division of L(b, t) - P(b) by 1+b
        quotient, carry = [], 0.0
        for k in range(degrees - 1):
            carry = traces[k] - betti[k] - carry
            quotient.append(carry)
        remainder = traces[-1] - betti[-1] - carry
        results.append(
            HeatSupertrace(
                t=float(t),
                traces=traces,
                supertrace=supertrace,
                poincare_at_minus_one=sum((-1) ** k * b for k, b in enumerate(betti)),
                s_coefficients=quotient,
                remainder=remainder,
            )
        )
    return results


def symbolic_agreement(model: ModelLike, sweep_report: SweepReport) -> AgreementReport:
    """Small counts against the symbolic engine.

    At the largest epsilon the counts must equal the Morse polynomial of the
    height function, and at epsilon 0 (when run) the Poincaré polynomial.
    """
    model = _as_model(model)
    space = model.symbolic_space()
    length = space.dim + 1
    morse = morse_polynomial(suspension_height_problem(space)).to_list(length)
    poincare = global_cohomology(space).poly.to_list(length)
    largest = sweep_report.reports[-1].counts
    zero = next((r.counts for r in sweep_report.reports if r.epsilon == 0), None)
    problems = []
    if largest != morse:
        problems.append(
            f"counts {largest} at the largest epsilon differ from M = {morse}"
        )
    if zero is not None and zero != poincare:
        problems.append(f"counts {zero} at epsilon 0 differ from P = {poincare}")
    return AgreementReport(
        morse=morse,
        poincare=poincare,
        counts_large_epsilon=largest,
        counts_zero_epsilon=zero,
        agree=not problems,
        message="; ".join(problems),
    )
