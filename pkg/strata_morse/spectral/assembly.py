import logging
from math import pi

import numpy as np
import scipy.sparse

from strata_morse.exceptions import SpectralAssemblyError
from strata_morse.spectral.base import (
    BaseSuspensionModel,
    Channel,
    ModeOperator,
    fiber_differential,
)

logger = logging.getLogger(__name__)


class RadialGrid:
    """Staggered uniform grid on `[0, π]`.

    `N` cells of width `Δ = π/N` with centers `(i+½)Δ` and interior nodes `iΔ`,
    `i = 1..N-1`. Neither set touches the poles, where the wedge weights vanish
    or blow up.
    """

    def __init__(self, n: int):
        self.n = n
        self.delta = pi / n
        self.centers = (np.arange(n) + 0.5) * self.delta
        self.nodes = np.arange(1, n) * self.delta

    def positions(self, relative: bool) -> tuple[np.ndarray, np.ndarray]:
        """Positions of the function part and of the `dφ` part of a channel."""
        if relative:
            return self.nodes, self.centers
        return self.centers, self.nodes

    def difference(self, relative: bool) -> scipy.sparse.csr_matrix:
        """First-order radial difference `a ↦ a'`.

        Absolute: cell values to interior nodes, kernel the constants (no
        condition on `a`, `dφ`-parts vanish at the poles). Relative: node values
        with `a = 0` at the poles to cells, injective with a one-dimensional
        cokernel.
        """
        n, inv = self.n, 1.0 / self.delta
        if relative:
            main = np.full(n - 1, inv)
            return scipy.sparse.diags(
                [main, -main], [0, -1], shape=(n, n - 1), format="csr"
            )
        main = np.full(n - 1, inv)
        return scipy.sparse.diags([-main, main], [0, 1], shape=(n - 1, n), format="csr")


def height(phi: np.ndarray) -> np.ndarray:
    return np.cos(phi)


def radial_complex(
    grid: RadialGrid, relative: bool, epsilon: float
) -> scipy.sparse.csr_matrix:
    """Witten-conjugated radial difference `e^{-εh} D e^{εh}`.

    Conjugating the discrete operator keeps `d_ε ∘ d_ε = 0` exact.
    """
    x_in, x_out = grid.positions(relative)
    difference = grid.difference(relative).tocoo()
    scale = np.exp(
        epsilon * (height(x_in[difference.col]) - height(x_out[difference.row]))
    )
    return scipy.sparse.csr_matrix(
        (difference.data * scale, (difference.row, difference.col)),
        shape=difference.shape,
    )


def wedge_weight(phi: np.ndarray, link_dim: int, fiber_degree: int, delta: float):
    """Quadrature weight `Δ sin^{l-2j} φ` of a `j`-form fiber component."""
    return delta * np.sin(phi) ** (link_dim - 2 * fiber_degree)


class _BlockBuilder:
    def __init__(self, rows: int, cols: int):
        self.shape = (rows, cols)
        self.rows: list[np.ndarray] = []
        self.cols: list[np.ndarray] = []
        self.data: list[np.ndarray] = []

    def place(self, block, row_offset: int, col_offset: int, factor: float = 1.0):
        block = scipy.sparse.coo_matrix(block)
        self.rows.append(block.row + row_offset)
        self.cols.append(block.col + col_offset)
        self.data.append(block.data * factor)

    def build(self) -> scipy.sparse.csr_matrix:
        if not self.data:
            return scipy.sparse.csr_matrix(self.shape)
        return scipy.sparse.csr_matrix(
            (
                np.concatenate(self.data),
                (np.concatenate(self.rows), np.concatenate(self.cols)),
            ),
            shape=self.shape,
        )


def _coupling(channels: list[Channel], mode: tuple[int, ...]) -> dict:
    """Fiber differential between channels, `v_{c'}ᵀ d_θ v_c`."""
    couplings = {}
    for i, source in enumerate(channels):
        matrix = fiber_differential(mode, source.fiber_degree)
        if matrix.size == 0:
            continue
        image = matrix @ np.asarray(source.vector)
        for k, target in enumerate(channels):
            if target.fiber_degree != source.fiber_degree + 1:
                continue
            value = float(np.dot(target.vector, image))
            if abs(value) > 1e-14:
                couplings[(k, i)] = value
    return couplings


def assemble_mode_operator(
    model: BaseSuspensionModel, mode: tuple[int, ...], epsilon: float
) -> ModeOperator:
    """Assemble the deformed differential and Laplacian of one Fourier mode.

    Degree-`k` cochains are the function parts of fiber-degree-`k` channels and
    the `dφ` parts of fiber-degree-`(k-1)` channels. The differential is the
    conjugated radial difference on each channel plus the fiber coupling, with a
    minus sign on `dφ` parts. Everything is then written in orthonormal
    coordinates for the weights `Δ sin^{l-2j} φ`, and
    `Δ_k = d_kᵀ d_k + d_{k-1} d_{k-1}ᵀ`.

    Args:
        model (BaseSuspensionModel): The model.
        mode (tuple[int, ...]): Fourier mode, `|m_i| <= mode_cutoff`.
        epsilon (float): The deformation parameter.

    Raises:
        SpectralAssemblyError: On an out-of-range mode, or a fiber coupling
            between channels on different radial grids.
    """
    l = model.link_dim
    if len(mode) != l or any(abs(m) > model.config.mode_cutoff for m in mode):
        raise SpectralAssemblyError(
            f"mode {mode} is outside the cutoff {model.config.mode_cutoff}"
        )
    grid = RadialGrid(model.grid_points)
    channels = model.channels(mode)
    radial = {
        relative: radial_complex(grid, relative, epsilon) for relative in (False, True)
    }

    # layout of the degree-k cochain space: (channel index, part) -> offset
    layouts: list[dict[tuple[int, str], int]] = []
    weights: list[np.ndarray] = []
    for k in range(l + 2):
        layout: dict[tuple[int, str], int] = {}
        pieces: list[np.ndarray] = []
        offset = 0
        for i, channel in enumerate(channels):
            x_a, x_b = grid.positions(channel.relative)
            if channel.fiber_degree == k:
                layout[(i, "a")] = offset
                pieces.append(wedge_weight(x_a, l, channel.fiber_degree, grid.delta))
                offset += len(x_a)
            elif channel.fiber_degree == k - 1:
                layout[(i, "b")] = offset
                pieces.append(wedge_weight(x_b, l, channel.fiber_degree, grid.delta))
                offset += len(x_b)
        layouts.append(layout)
        weights.append(np.concatenate(pieces) if pieces else np.zeros(0))

    couplings = _coupling(channels, mode)
    for (target, source), value in couplings.items():
        if channels[target].relative != channels[source].relative:
            raise SpectralAssemblyError(
                f"mode {mode}: channels {channels[source].label} and "
                f"{channels[target].label} are coupled but live on different grids"
            )

    differentials = []
    for k in range(l + 1):
        builder = _BlockBuilder(len(weights[k + 1]), len(weights[k]))
        source_layout, target_layout = layouts[k], layouts[k + 1]
        for (i, part), col in source_layout.items():
            channel = channels[i]
            if part == "a":
                builder.place(radial[channel.relative], target_layout[(i, "b")], col)
            size = len(grid.positions(channel.relative)[0 if part == "a" else 1])
            for (target, source), value in couplings.items():
                if source != i:
                    continue
                factor = value if part == "a" else -value
                builder.place(
                    scipy.sparse.identity(size),
                    target_layout[(target, part)],
                    col,
                    factor,
                )
        raw = builder.build()
        left = scipy.sparse.diags(np.sqrt(weights[k + 1]))
        right = scipy.sparse.diags(1.0 / np.sqrt(weights[k]))
        differentials.append((left @ raw @ right).toarray())

    laplacians = []
    for k in range(l + 2):
        size = len(weights[k])
        block = np.zeros((size, size))
        if k <= l:
            block += differentials[k].T @ differentials[k]
        if k >= 1:
            block += differentials[k - 1] @ differentials[k - 1].T
        laplacians.append(block)

    logger.debug(
        "mode %s, epsilon %s: degree sizes %s",
        mode,
        epsilon,
        [block.shape[0] for block in laplacians],
    )
    return ModeOperator(
        mode=tuple(mode),
        epsilon=epsilon,
        differentials=differentials,
        laplacians=laplacians,
    )
