"""Exact computations with affine semigroups, their fibered sums, Apéry sets and gluings."""
from .errors import (
    AffsemiError,
    BoundRequired,
    Cancelled,
    ContainmentError,
    DimensionMismatch,
    Inconclusive,
    NonIntegralImage,
    NotStabilized,
    ParseError,
    PreconditionError,
)
from .exactlat import IntegerLattice, QuotientStructure, hnf, lattice_from_rows, snf
from .semigroup import AffineSemigroup, MembershipDecision, member
from .fibsum import FibElement, FiberedSumContext, MonoidHom, ctx_new, tilde_presentation
from .apery import AperyReport, FlatnessVerdict, apery_set, flatness_verdict
from .algebra import Algebra, EmbeddedRing, EmbeddingChange, flat_base_change, tensor_vs_fibersum
from .gluing import GluingQuery, GluingReport, can_glue_with, search_gluing

__version__ = "0.1.0"
