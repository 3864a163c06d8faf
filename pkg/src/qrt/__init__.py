"""Exact computations with representations of bound quivers: Hom, Ext, AR translates,
tubes of canonical algebras, determinantal semi-invariants and orbit geometry."""

from .exactfield import GF, QQ, FieldSpec
from .catalog import catalog
from .rep import Representation, decompose, ext, hom_dim, iso_check, tau, tau_minus

__all__ = ["GF", "QQ", "FieldSpec", "catalog", "Representation", "decompose", "ext", "hom_dim", "iso_check",
           "tau", "tau_minus"]
