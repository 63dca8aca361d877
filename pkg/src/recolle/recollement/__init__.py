"""Recollement bundles, their checks, and the glued (MacPherson-Vilonen) construction."""

from recolle.recollement.bundle import Recollement
from recolle.recollement.mv import MVCategory, MVObject, from_retraction, mv_construct

__all__ = ["Recollement", "MVCategory", "MVObject", "from_retraction", "mv_construct"]
