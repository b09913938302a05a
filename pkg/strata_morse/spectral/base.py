from abc import ABC, abstractmethod
from itertools import combinations, product
from math import comb

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict

from strata_morse.spectral.schemas import SpectralModel
from strata_morse.topology import SpaceExpr


class Channel(BaseModel):
    """One fiber component of the forms in a Fourier mode.

    A channel is a unit vector `v` in `Λ^j` of the link's flat cotangent space.
    It carries two radial cochains: `a(φ) v` in degree `j` and `dφ ∧ b(φ) v` in
    degree `j+1`, discretized on the absolute or the relative radial grid.

    Attributes:
        fiber_degree (int): The degree `j` of `v`.
        vector (tuple[float, ...]): Coordinates of `v` in the standard basis of `Λ^j`.
        relative (bool): Whether `a` vanishes at the poles (relative grid).
        label (str): A display label.
    """

    model_config = ConfigDict(frozen=True)

    fiber_degree: int
    vector: tuple[float, ...]
    relative: bool
    label: str


class ModeOperator(BaseModel):
    """The discretized deformed complex and its Laplacian in one Fourier mode.

    All matrices are written in orthonormal coordinates of the weighted inner
    product, so adjoints are plain transposes.

    Attributes:
        mode (tuple[int, ...]): Fourier mode `m`, one entry per circle factor.
        epsilon (float): The deformation parameter.
        differentials (list[np.ndarray]): `d_k` for `k = 0..l`, symmetrized.
        laplacians (list[np.ndarray]): `Δ_k` for `k = 0..l+1`.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    mode: tuple[int, ...]
    epsilon: float
    differentials: list[np.ndarray]
    laplacians: list[np.ndarray]

    def matrix(self) -> np.ndarray:
        """The full Laplacian, block diagonal in the form degree."""
        return scipy.linalg.block_diag(*self.laplacians)

    def degree_labels(self) -> np.ndarray:
        return np.concatenate(
            [np.full(block.shape[0], k) for k, block in enumerate(self.laplacians)]
        )

    def asymmetry(self) -> float:
        """Largest `|Δ - Δᵀ|` entry relative to the largest `|Δ|` entry."""
        worst = 0.0
        for block in self.laplacians:
            scale = np.abs(block).max(initial=0.0)
            if scale > 0:
                worst = max(worst, np.abs(block - block.T).max() / scale)
        return worst

    def complex_defect(self) -> float:
        """Largest entry of `d_{k+1} d_k`, relative to the operator scale."""
        worst = 0.0
        for first, second in zip(self.differentials, self.differentials[1:]):
            scale = max(np.abs(first).max(initial=0.0), np.abs(second).max(initial=0.0))
            if scale > 0:
                worst = max(worst, np.abs(second @ first).max(initial=0.0) / scale**2)
        return worst


def exterior_basis(l: int, j: int) -> list[tuple[int, ...]]:
    return list(combinations(range(l), j))


def fiber_differential(mode: tuple[int, ...], j: int) -> np.ndarray:
    """`d_θ` on `Λ^j → Λ^{j+1}` in mode `m`, in the basis `i^{|J|} dθ_J`.

    In that basis `d_θ` is the real Koszul matrix
    `e_J ↦ Σ_{k∉J} m_k (-1)^{#{i∈J : i<k}} e_{J∪k}`.
    """
    l = len(mode)
    source = exterior_basis(l, j)
    target = {J: row for row, J in enumerate(exterior_basis(l, j + 1))}
    matrix = np.zeros((len(target), len(source)))
    for col, J in enumerate(source):
        for k in range(l):
            if k in J or mode[k] == 0:
                continue
            sign = (-1) ** sum(1 for i in J if i < k)
            matrix[target[tuple(sorted(J + (k,)))], col] += mode[k] * sign
    return matrix


class BaseSuspensionModel(ABC):
    """A flat link `Z = T^l` suspended with the wedge metric `dφ² + sin²φ g_Z`.

    Subclasses fix the link and its perversity; this base enumerates Fourier
    modes and chooses radial boundary conditions per channel.

    Args:
        config (SpectralModel): The model configuration.
    """

    def __init__(self, config: SpectralModel):
        self.config = config

    @property
    @abstractmethod
    def link_dim(self) -> int:
        raise NotImplementedError(
            "Subclasses to `BaseSuspensionModel` must implement `link_dim`"
        )

    @abstractmethod
    def middle_split(self) -> tuple[np.ndarray, np.ndarray]:
        """Orthonormal columns spanning `W` and `W^⊥` inside `Λ^{l/2}`."""
        raise NotImplementedError(
            "Subclasses to `BaseSuspensionModel` must implement `middle_split`"
        )

    @abstractmethod
    def symbolic_space(self) -> SpaceExpr:
        """The same suspension as a space expression for the symbolic engine."""
        raise NotImplementedError(
            "Subclasses to `BaseSuspensionModel` must implement `symbolic_space`"
        )

    @property
    def grid_points(self) -> int:
        return self.config.grid_points

    def modes(self) -> list[tuple[int, ...]]:
        cutoff = self.config.mode_cutoff
        return list(product(range(-cutoff, cutoff + 1), repeat=self.link_dim))

    def channels(self, mode: tuple[int, ...]) -> list[Channel]:
        """Channels of `mode`, by fiber degree.

        Nonzero modes use the absolute grid everywhere, so the fiber coupling
        commutes with the radial difference. In mode zero, fiber degrees below
        the middle are absolute, those above relative, and the middle degree is
        split into `W` (absolute) and `W^⊥` (relative).
        """
        l = self.link_dim
        zero_mode = not any(mode)
        channels: list[Channel] = []
        for j in range(l + 1):
            identity = np.eye(comb(l, j))
            labels = [_form_label(J) for J in exterior_basis(l, j)]
            if not zero_mode or 2 * j != l:
                relative = zero_mode and 2 * j > l
                channels += [
                    _channel(j, row, relative, label)
                    for row, label in zip(identity, labels)
                ]
                continue
            w_basis, w_perp = self.middle_split()
            channels += [
                _channel(j, col, False, f"W{i + 1}") for i, col in enumerate(w_basis.T)
            ]
            channels += [
                _channel(j, col, True, f"W⊥{i + 1}") for i, col in enumerate(w_perp.T)
            ]
        return channels


def _channel(j: int, vector, relative: bool, label: str) -> Channel:
    return Channel(
        fiber_degree=j,
        vector=tuple(float(x) for x in vector),
        relative=relative,
        label=label,
    )


def _form_label(J: tuple[int, ...]) -> str:
    if not J:
        return "1"
    return "∧".join(f"dθ{i + 1}" for i in J)
