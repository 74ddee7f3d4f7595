"""Compactly supported PL de Rham machinery.

The heavy lifting lives in the compiled extension `_plderham`; this package
re-exports its surface. Build the extension with CMake and put its directory
on PYTHONPATH (see the project README).
"""

from _plderham import (  # noqa: F401
    PolyForm,
    Space,
    betti,
    betti_compact,
    betti_forms,
    betti_full,
    bump,
    derham_check,
    extend,
    generate,
    generator_names,
    load,
    mv_v1,
    mv_v2,
    scenario_names,
)

__all__ = [
    "PolyForm",
    "Space",
    "betti",
    "betti_compact",
    "betti_forms",
    "betti_full",
    "bump",
    "derham_check",
    "extend",
    "generate",
    "generator_names",
    "load",
    "mv_v1",
    "mv_v2",
    "scenario_names",
]
