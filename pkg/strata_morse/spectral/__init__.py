from strata_morse.spectral.assembly import assemble_mode_operator
from strata_morse.spectral.base import BaseSuspensionModel, ModeOperator
from strata_morse.spectral.models import (
    SpindleCircleModel,
    SuspensionTorus2Model,
    build_model,
)
from strata_morse.spectral.schemas import (
    AgreementReport,
    DegreeSpectrum,
    HeatSupertrace,
    RefinementReport,
    SpectralModel,
    SpectrumReport,
    SweepReport,
)
from strata_morse.spectral.solver import (
    auto_threshold,
    heat_supertrace,
    mode_spectrum,
    pairing_defect,
    refine,
    spectrum,
    sweep,
    symbolic_agreement,
)

__all__ = [
    "AgreementReport",
    "BaseSuspensionModel",
    "DegreeSpectrum",
    "HeatSupertrace",
    "ModeOperator",
    "RefinementReport",
    "SpectralModel",
    "SpectrumReport",
    "SpindleCircleModel",
    "SuspensionTorus2Model",
    "SweepReport",
    "assemble_mode_operator",
    "auto_threshold",
    "build_model",
    "heat_supertrace",
    "mode_spectrum",
    "pairing_defect",
    "refine",
    "spectrum",
    "sweep",
    "symbolic_agreement",
]
