"""Finite V-groups over quantales: law checking, split extensions, VAut and Kan extensions."""

from .kernels import BACKEND
from .quantale import Quantale, builtin
from .grp import FiniteGroup, GroupAction
from .vstruct import StructureMatrix
from .vgrp import VGroup, VHom, vaut
from .points import SplitPoint
from .kan import EnrichedFunctor, NatTransform

__all__ = [
    "BACKEND", "Quantale", "builtin", "FiniteGroup", "GroupAction", "StructureMatrix",
    "VGroup", "VHom", "vaut", "SplitPoint", "EnrichedFunctor", "NatTransform",
]
