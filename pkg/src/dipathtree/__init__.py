"""Dipaths in directed trees: minimum colouring, maximum packing with a
minimum multicut, and kernels of clique-acyclic orientations."""

from __future__ import annotations

from .coloring import ColoringResult, color_dipaths, max_arc_load
from .errors import InstanceError, InternalInvariantViolation, SizeLimit
from .kernel import KernelResult, PriorityRelation, kernel, validate_priorities
from .multicut import MulticutCertificate, multicut
from .tree import (
    DirectedTree,
    Dipath,
    PathIndex,
    RootedTree,
    build_tree,
    index_paths,
    make_dipath,
    make_paths,
    resolve_dipath,
    root_tree,
)

__all__ = [
    "ColoringResult",
    "DirectedTree",
    "Dipath",
    "InstanceError",
    "InternalInvariantViolation",
    "KernelResult",
    "MulticutCertificate",
    "PathIndex",
    "PriorityRelation",
    "RootedTree",
    "SizeLimit",
    "build_tree",
    "color_dipaths",
    "index_paths",
    "kernel",
    "make_dipath",
    "make_paths",
    "max_arc_load",
    "multicut",
    "resolve_dipath",
    "root_tree",
    "validate_priorities",
]
