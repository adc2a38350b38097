"""Exact geometric entanglement of periodic transverse-field XY chains"""
from .output import VERSION as __version__
from .errors import (
    XYChainError,
    ValidationError,
    InvalidSizeError,
    SizeLimitError,
    AccuracyError,
    QuadratureAccuracyError,
    NearCriticalError,
    DegenerateOverlapError,
    DegenerateLineError,
    BracketError,
    AsymmetryError,
    FitError,
    BranchError,
    XYChainWarning,
    DegenerateAngleWarning,
    OutsideDomainWarning,
)
from .signedlog import SignedLogValue
from .spectrum import (
    Sector,
    ModelPoint,
    SectorSpectrum,
    LevelSet,
    momenta,
    bogoliubov_angle,
    quasiparticle_energy,
    sector_spectrum,
    ground_energy,
    gap,
    critical_gap,
    enumerate_levels,
)
from .overlap import (
    Superposition,
    SectorOverlap,
    SuperpositionOverlap,
    prefactor,
    overlap_value,
    superposition_overlap,
)
from .entangle import (
    GROUND,
    EntanglementRecord,
    FactorizedState,
    maximize_lambda,
    entanglement,
    ground_sector,
    select_ground,
    field_derivative,
    derivative_peak,
    disorder_factorized_state,
    product_state_energy,
)
from .thermo import (
    density_integrand,
    density_infinite,
    dE_dh_infinite,
    xx_geometry,
    xx_density,
    xx_density_derivative,
    catalan_constant,
    divergence_coefficient,
    density_maximum,
)
from .oracle import (
    DenseState,
    ProductAnsatzFull,
    build_hamiltonian,
    lowest_two,
    lambda_max_unrestricted,
)
from .scalefit import (
    SeriesPoint,
    FitResult,
    FitModel,
    fit_inverse_n,
    fit_log_n,
    fit_algebraic,
    extract_nu,
)

__all__ = [
    "__version__",
    # Errors
    "XYChainError", "ValidationError", "InvalidSizeError", "SizeLimitError",
    "AccuracyError", "QuadratureAccuracyError", "NearCriticalError",
    "DegenerateOverlapError", "DegenerateLineError", "BracketError",
    "AsymmetryError", "FitError", "BranchError",
    "XYChainWarning", "DegenerateAngleWarning", "OutsideDomainWarning",
    # Spectrum
    "SignedLogValue", "Sector", "ModelPoint", "SectorSpectrum", "LevelSet",
    "momenta", "bogoliubov_angle", "quasiparticle_energy", "sector_spectrum",
    "ground_energy", "gap", "critical_gap", "enumerate_levels",
    # Overlaps and entanglement
    "Superposition", "SectorOverlap", "SuperpositionOverlap", "prefactor",
    "overlap_value", "superposition_overlap",
    "GROUND", "EntanglementRecord", "FactorizedState", "maximize_lambda",
    "entanglement", "ground_sector", "select_ground", "field_derivative",
    "derivative_peak", "disorder_factorized_state", "product_state_energy",
    # Thermodynamic limit
    "density_integrand", "density_infinite", "dE_dh_infinite", "xx_geometry",
    "xx_density", "xx_density_derivative", "catalan_constant",
    "divergence_coefficient", "density_maximum",
    # Oracle
    "DenseState", "ProductAnsatzFull", "build_hamiltonian", "lowest_two",
    "lambda_max_unrestricted",
    # Scaling
    "SeriesPoint", "FitResult", "FitModel", "fit_inverse_n", "fit_log_n",
    "fit_algebraic", "extract_nu",
]
