import numpy as np
import scipy.linalg

from strata_morse.spectral.base import BaseSuspensionModel
from strata_morse.spectral.schemas import SpectralModel
from strata_morse.topology import SpaceExpr, circle, suspension, torus


class SpindleCircleModel(BaseSuspensionModel):
    """The spindle `Σ(S¹)`, a round 2-sphere with two cone points; Witt."""

    @property
    def link_dim(self) -> int:
        return 1

    def middle_split(self) -> tuple[np.ndarray, np.ndarray]:
        return np.zeros((1, 0)), np.zeros((1, 0))

    def symbolic_space(self) -> SpaceExpr:
        return suspension(circle())


class SuspensionTorus2Model(BaseSuspensionModel):
    """`Σ(T²)` with perversity `W ⊂ H¹(T²)` at both poles."""

    @property
    def link_dim(self) -> int:
        return 2

    def middle_split(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.config.w:
            return np.zeros((2, 0)), np.eye(2)
        span = np.asarray(self.config.w, dtype=float)
        return scipy.linalg.orth(span.T), scipy.linalg.null_space(span)

    def symbolic_space(self) -> SpaceExpr:
        return suspension(torus(2), self.config.w)


def build_model(config: SpectralModel) -> BaseSuspensionModel:
    if config.kind == "spindle_circle":
        return SpindleCircleModel(config)
    return SuspensionTorus2Model(config)
