"""Workbench for species of structures and constant-free cyclic operads."""

from cyclops.labels import (
    atom,
    atoms,
    fset,
    star_of,
    block_ref,
    bijection,
    identity_bijection,
    all_bijections,
    enumerate_binary_decompositions,
    enumerate_partitions,
)

__all__ = [
    "atom",
    "atoms",
    "fset",
    "star_of",
    "block_ref",
    "bijection",
    "identity_bijection",
    "all_bijections",
    "enumerate_binary_decompositions",
    "enumerate_partitions",
]
