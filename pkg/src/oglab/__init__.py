"""Mod-2 Chow rings of split quadrics and isotropic Grassmannians, with Steenrod operations."""

__version__ = "0.1.0"
