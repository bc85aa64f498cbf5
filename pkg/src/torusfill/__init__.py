"""Exact computations with genus-1 Lefschetz fibrations over the disk and torus open books."""

__version__ = "0.1.0"

from .lattice import (
    CLASS_A,
    CLASS_B,
    GeneratorWord,
    I,
    Mat2,
    PreconditionError,
    PrimitiveClass,
    TorusFillError,
    deg_mod12,
    evaluate_word,
    intersection,
    primitive_form,
    recognize_positive_twist,
    sl2z_word,
    twist_matrix,
)
from .real import (
    Involution,
    RealnessCertificate,
    eigen_lattice_basis,
    enumerate_involutions,
    pairing_and_type,
    realness_by_search,
    solve_structure_preserving,
    solve_structure_swapping,
)
from .cutting import (
    CuttingCycle,
    QuadraticSurd,
    canonical_cycle,
    cf_expansion,
    cutting_cycle,
    evaluate_rl,
    fixed_point_surd,
    hyperbolic_conjugate,
    is_odd_bipalindromic,
    is_real_hyperbolic,
)
from .factorizations import (
    TwistFactorization,
    enumerate_two_twist_factorizations,
    factorization_real_obstruction,
    hurwitz_classes_two,
    hurwitz_move,
    pairs_equivalent,
    total_monodromy,
    two_twist_diophantine,
)
from .fibration import (
    GenusOneFibration,
    OpenBookMonodromy,
    boundary_open_book,
    fillings,
    is_open_book_real,
    paper_scenario,
    real_filling_verdict,
)
