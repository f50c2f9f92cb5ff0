"""Consistent-amplitude quantum mechanics on finite lattices.

Setups and their ``and``/``or`` algebra, amplitudes by transfer matrices,
weighted Hilbert geometry and the Born rule, replica fraction filters,
array and von Neumann entropy, and observables as detection bases.
"""

from .amplitudes import (
    HamiltonianConfig,
    Propagator,
    WaveFunction,
    amplitude_brute_force,
    amplitude_of_setup,
    apply_filter,
    build_propagator,
    evolve_step,
    identity_propagator,
    propagate_setup,
)
from .born import (
    FractionWindow,
    convergence_scan,
    filter_distance_brute,
    filter_distance_closed_form,
    gaussian_window_mass,
)
from .dsl import parse_setup_dsl, render_setup_dsl
from .entropy import (
    ArrayState,
    DensityOperator,
    LineArray,
    array_entropy,
    density_operator,
    distance_drift,
    eigen_array,
    evolve_array,
    line_array_entropy,
    measurement_entropy,
    sample_same_rho_ensemble,
    von_neumann_entropy,
)
from .geometry import (
    WeightedMeasure,
    born_probabilities,
    distance,
    inner_product,
    norm_squared,
    normalize,
)
from .observables import (
    NormalObservable,
    check_normal,
    design_detector_unitary,
    detection_probabilities,
    expand_in_basis,
    make_observable,
)
from .setups import (
    Filter,
    LatticeSpec,
    Setup,
    SpacetimePoint,
    compose_and,
    compose_or,
    insert_filter,
    make_elementary_setup,
    validate_setup,
)

__version__ = "0.1.0"
