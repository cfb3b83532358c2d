"""Exact computer algebra for formal group laws over the Lazard ring, Weyl
actions on twisted group algebras, torsion indices of flag varieties, and
bounded-degree duality verification."""

from .fgl import (
    FormalGroupLaw,
    LazardBasis,
    LElement,
    fgl_additive,
    fgl_multiplicative,
    fgl_universal,
    lazard_basis,
)
from .lattices import IntMat, cokernel, hnf, kernel_basis, smith
from .schubert import (
    char_hom_schubert,
    demazure_word,
    divided_difference,
    torsion_index,
)
from .series import (
    CompositionError,
    ContextError,
    Generator,
    GradedPoly,
    PolyRing,
    ReversionError,
    series_reverse,
    substitute_series,
)
from .torus_module import (
    TorusClass,
    EquivariantModel,
    TorusModel,
    TruncationError,
    duality_check,
)
from .twisted import TwistedContext, averaged_rank, invariants_truncated
from .weyl import RootDatum, WeylGroup, preset, weyl_group

__version__ = "0.1.0"

__all__ = [
    "TorusClass",
    "CompositionError",
    "ContextError",
    "EquivariantModel",
    "FormalGroupLaw",
    "Generator",
    "GradedPoly",
    "IntMat",
    "LElement",
    "LazardBasis",
    "PolyRing",
    "ReversionError",
    "RootDatum",
    "TorusModel",
    "TruncationError",
    "TwistedContext",
    "WeylGroup",
    "averaged_rank",
    "char_hom_schubert",
    "cokernel",
    "demazure_word",
    "divided_difference",
    "duality_check",
    "fgl_additive",
    "fgl_multiplicative",
    "fgl_universal",
    "hnf",
    "invariants_truncated",
    "kernel_basis",
    "lazard_basis",
    "preset",
    "series_reverse",
    "smith",
    "substitute_series",
    "torsion_index",
    "weyl_group",
]
