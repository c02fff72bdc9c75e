from .builders import (
    build_lindblad,
    build_redfield,
    build_short_time,
    interaction_potential,
    lindblad_operator,
)
from .generator import (
    DressedGenerator,
    KernelTable,
    LindbladGenerator,
    RedfieldGenerator,
    ShortTimeGenerator,
    kernel_grid,
)
from .guard import ValidityGuard
from .integrator import integrate

__all__ = [
    "build_lindblad",
    "build_redfield",
    "build_short_time",
    "interaction_potential",
    "lindblad_operator",
    "DressedGenerator",
    "KernelTable",
    "LindbladGenerator",
    "RedfieldGenerator",
    "ShortTimeGenerator",
    "kernel_grid",
    "ValidityGuard",
    "integrate",
]
