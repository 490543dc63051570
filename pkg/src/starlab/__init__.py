"""Finite *-semigroup laboratory: annihilator ortholattices, subset
correspondences, *-equivalence and type decompositions, checked exhaustively."""

from .checks import FAIL, NOT_MET, PASS, CheckResult
from .decomposition import (
    DecompositionResult,
    finite_decomposition,
    type_I1_decomposition,
    type_I_decomposition,
    type_III_decomposition,
)
from .equivalence import Equivalence, EquivWitness, equivalence, sim, subequiv
from .errors import (
    ArithmeticOverflow,
    AxiomViolation,
    CapExceeded,
    ForeignElement,
    HypothesisNotMet,
    IndexOutOfRange,
    NoCertificateFound,
    OrtholatticeAxiomFailure,
    ParseError,
    StarlabError,
    UniquenessViolation,
)
from .formats import from_json, load, parse, serialize, to_json
from .gallery import from_spec, gallery
from .polarity import PolarLattice, Relation, build_relation, closed_lattice, polar, to_dot
from .report import analyze
from .semigroup import (
    RingExtension,
    StarSemigroup,
    classify_elements,
    direct_product,
    gen_boolean_matrices,
    gen_matrix_ring,
    gen_zn_mult,
    gen_zn_ring,
    is_proper,
    unitize,
    validate,
)
from .subsets import Predicate, holds

__version__ = "0.1.0"
