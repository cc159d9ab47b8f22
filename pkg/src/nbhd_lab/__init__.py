"""Finite neighborhood spaces and an exact check of the R x Q product-of-quotients counterexample.

The finite side (``pstack``, ``space``, ``morphism``, ``constructions``,
``enumerate``) works on carriers of at most 16 points with subsets as
bitmasks. The ``continuum`` module decides membership in the specific sets
of the counterexample with exact rational arithmetic.
"""
from .constructions import (
    BOX,
    CYLINDER,
    final_lift,
    initial_lift,
    is_quotient_map,
    product_map,
    product_space,
    quotient_structure,
)
from .morphism import SpaceMap, is_continuous, is_continuous_at
from .pstack import (
    Carrier,
    DomainError,
    PStack,
    ResourceError,
    image_stack,
    is_nbd_stack,
    refines,
    satisfies_pip,
    upward_closure,
)
from .space import (
    NbdStructure,
    is_pretopological,
    pretop_modification,
    structure_join,
    structure_leq,
    structure_meet,
    validate_structure,
)

__all__ = [
    "BOX",
    "CYLINDER",
    "Carrier",
    "DomainError",
    "NbdStructure",
    "PStack",
    "ResourceError",
    "SpaceMap",
    "final_lift",
    "image_stack",
    "initial_lift",
    "is_continuous",
    "is_continuous_at",
    "is_nbd_stack",
    "is_pretopological",
    "is_quotient_map",
    "pretop_modification",
    "product_map",
    "product_space",
    "quotient_structure",
    "refines",
    "satisfies_pip",
    "structure_join",
    "structure_leq",
    "structure_meet",
    "upward_closure",
    "validate_structure",
]
