"""Orbits of k-homogeneous permutation groups on (n-k)-partitions, closed
pairs under normalizers, and transformation-semigroup checks."""

from .permcore import (
    CycleType,
    PermGroup,
    Permutation,
    StabilizerChain,
    compose,
    cycle_type,
    identity,
    inverse,
)

__version__ = "0.1.0"
