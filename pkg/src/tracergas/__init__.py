"""Collisional decoherence of a 1D tracer particle in a dilute thermal gas.

The package models a tracer particle prepared in a superposition of two
Gaussian wave packets (a cat state) that collides with thermal gas
particles.  A single collision acts algebraically on the cat state:
classical-looking center kinematics, a coherence damping factor and a
random relative phase.  Averaging the post-collision Wigner function over
the thermal collision ensemble yields the decoherence per collision, for
which closed forms in terms of a Gaussian sine integral are also provided.
"""

from .phase_space import (
    Constants,
    DEFAULT_CONSTANTS,
    Tracer,
    GaussianPacket,
    CatState,
    CatDescriptors,
    single_packet,
    packet_wavefunction,
    cat_descriptors,
    free_evolve_cat,
)
from .collisions import (
    CollisionSample,
    elastic_collision,
    coherence_damping,
    collision_phase,
    collide_cat,
    phase_invariant,
)
from .wigner import (
    GridSpec,
    WignerGrid,
    QuadratureError,
    antinode,
    wigner_at,
    cat_evaluator,
    wigner_grid,
    free_evolve_wigner,
    mixture_wigner,
    wigner_from_wavefunction,
    interference_metric,
    write_grid_csv,
    read_grid_csv,
)
from .thermal import (
    GasEnvironment,
    RegimeReport,
    maxwell_pdf,
    effective_temperature,
    collision_rate,
    regime_report,
    colliding_momentum_pdf,
    colliding_position_pdf,
    worker_streams,
    sample_collision,
    sample_collisions,
)
from .engine import (
    McEstimate,
    DecoherenceCurve,
    MeasurementDecoherence,
    sine_gauss_integral,
    position_coherence_after,
    position_decoherence_per_collision,
    position_decoherence_rate,
    momentum_decoherence_per_collision,
    time_averaged_position_decoherence,
    measurement_decoherence,
    mc_decoherence,
    reference_momentum_decoherence_rate,
)

__version__ = "0.1.0"
