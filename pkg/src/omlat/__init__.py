"""Glued orthomodular lattices from Boolean contexts, with finite audits."""

from .boolean import (
    BooleanAlgebra, LatticeHom, compose, coproduct, enumerate_boolean_homs,
    identity, is_boolean_hom, powerset, two,
)
from .errors import (
    BadBlock, BadBounds, BadSpec, BlockCount, BlockMismatch, CoconeMismatch,
    NotALattice, NotAnOrtholattice, NotAPoset, OmlatError, SizeLimit,
)
from .gluing import (
    BlockedLattice, CounterReport, GluedLattice, forget, glue, glue_hom, glue_n,
    mediate, universal_audit,
)
from .lattice import (
    FiniteLattice, FiniteOrthoLattice, Verdict, build_lattice, hasse_covers,
    is_distributive, is_modular, is_ortholattice, is_orthomodular,
)

__version__ = "0.1.0"
