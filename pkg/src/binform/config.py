"""Runtime limits shared by the whole package."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    # Largest order allowed for a generic form (size of the a0..ad block).
    degree_cap: int = 12
    # Largest exponent accepted by MPoly.__pow__.
    pow_cap: int = 24
    # Default seed for the specialization-based checks (d >= 6 regimes).
    default_seed: int = 20240

LIMITS = Limits()
