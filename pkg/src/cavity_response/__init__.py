"""Linear response of materials collectively coupled to a cavity mode.

Dressed photon propagators, matter susceptibilities and conductivities in
the thermodynamic limit, with closed-form polaritons and independent
oracles to check them.
"""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    DEFAULT_DELTA,
    BareSusceptibility,
    ComplexFrequency,
    DressedResponse,
    InteractionChannel,
    dress_matter_multichannel,
    dress_matter_single_channel,
    dress_photon,
    dressed_response,
    free_photon_propagator,
    induced_interaction,
    photon_propagators_eom,
    static_interaction,
    symmetrized_free_propagator,
    verify_pi_eom_equivalence,
)
from .errors import (  # noqa: E402
    CavityResponseError,
    ConfigError,
    DegenerateSpinError,
    InstabilityError,
    OracleError,
    SingularValue,
    SolverError,
    is_singular,
)
from .meanfield import (  # noqa: E402
    MeanFieldState,
    ModelSpec,
    SpinFields,
    dressed_fields,
    free_spin_gap,
    free_spin_susceptibility,
    self_consistency_residual,
    solve_mean_field,
)
from .models import (  # noqa: E402
    dicke_polaritons,
    heisenberg_effective_response,
    lmg_longitudinal_polaritons,
    model_polaritons,
    spin_model_bare_susceptibility,
    spin_model_poles,
    spin_model_response,
)
from .qhe import (  # noqa: E402
    ConductivityTensor,
    QheSpec,
    landau_polaritons,
    qhe_bare_current_response,
    qhe_closed_form_current_response,
    qhe_conductivity,
    qhe_dc_conductivity,
    qhe_dressed_current_response,
)
from .bosonization import (  # noqa: E402
    Displacements,
    TwoModeQuadratic,
    bosonization_polaritons,
    build_quadratic,
    solve_displacements,
    symplectic_frequencies,
    two_mode_polaritons,
)
from .poles import find_poles  # noqa: E402
from .config import RunConfig, load_config, parse_config  # noqa: E402
from .sweep import SpectrumTable, run_sweep  # noqa: E402
from .export import export, read_table  # noqa: E402

__all__ = [
    "__version__",
    "DEFAULT_DELTA",
    "BareSusceptibility",
    "ComplexFrequency",
    "DressedResponse",
    "InteractionChannel",
    "dress_matter_multichannel",
    "dress_matter_single_channel",
    "dress_photon",
    "dressed_response",
    "free_photon_propagator",
    "induced_interaction",
    "photon_propagators_eom",
    "static_interaction",
    "symmetrized_free_propagator",
    "verify_pi_eom_equivalence",
    "CavityResponseError",
    "ConfigError",
    "DegenerateSpinError",
    "InstabilityError",
    "OracleError",
    "SingularValue",
    "SolverError",
    "is_singular",
    "MeanFieldState",
    "ModelSpec",
    "SpinFields",
    "dressed_fields",
    "free_spin_gap",
    "free_spin_susceptibility",
    "self_consistency_residual",
    "solve_mean_field",
    "dicke_polaritons",
    "heisenberg_effective_response",
    "lmg_longitudinal_polaritons",
    "model_polaritons",
    "spin_model_bare_susceptibility",
    "spin_model_poles",
    "spin_model_response",
    "ConductivityTensor",
    "QheSpec",
    "landau_polaritons",
    "qhe_bare_current_response",
    "qhe_closed_form_current_response",
    "qhe_conductivity",
    "qhe_dc_conductivity",
    "qhe_dressed_current_response",
    "Displacements",
    "TwoModeQuadratic",
    "bosonization_polaritons",
    "build_quadratic",
    "solve_displacements",
    "symplectic_frequencies",
    "two_mode_polaritons",
    "find_poles",
    "RunConfig",
    "load_config",
    "parse_config",
    "SpectrumTable",
    "run_sweep",
    "export",
    "read_table",
]
