"""Generators, transformations and invariants of SU(3)-spacetime, with exact verification."""
from .invariants import (
    TrilinearForm, boost_defect_check, build_g, cubic_invariant, cubic_sym, interval, quad_space,
    rotation_scalar_products, time_component, trilinear,
)
from .ninerep import j9, k9, nine_rep, ten_rep
from .numerics import EXACT, FLOAT, AlgebraError, BackendError, ComplexMatrix, ExactScalar
from .report import Check, VerificationReport
from .sixrep import (
    MINUS, PLUS, MomentumSet, SixRepConfig, build_six, delta_mismatch, momentum_matrices,
    solve_branch_constraints, triplet_vk,
)
from .su3 import GeneratorSet, StructureConstants, antitriplet, gellmann, structure_constants
from .suites import run as verify
from .transforms import NineVector, TransformParams, apply, intertwine_residual, lorentz9, poincare10

__version__ = "0.1.0"
