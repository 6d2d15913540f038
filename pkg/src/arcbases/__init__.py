"""Arc matchings, even subsets over F_2 and their unitriangular bases.

Enumerates the matching families attached to E_N (even subsets of [1, N],
N odd), the bijections onto E_N, the induced partial orders, the 0/1
transition matrices and the exact symplectic Fourier transform in those
bases, with checkers that certify each structural property exhaustively.
"""

from .bases import F2Matrix, transition_matrix, unitriangular_check
from .correspondences import eps, eps_prime, phi, phi_inv
from .dyadic import Dyadic, DyadicMatrix, NonDyadicError
from .families import classify, embed, enumerate_family, sharp_family
from .fourier import (
    conjecture_report,
    filtration_check,
    fourier_apply,
    n5_certify,
    operator_matrix,
    triangularizable,
)
from .gf2 import EvenSubset, Orbit, StratumFilter, Subspace, enumerate_vectors, orbits, pairing, span
from .matchings import Arc, Matching, covered, enumerate_matchings, star_sequence
from .orders import OrderRelation, build_order
from .report import Report
from .suite import run_suite

__all__ = [
    "Arc", "Dyadic", "DyadicMatrix", "EvenSubset", "F2Matrix", "Matching", "NonDyadicError", "Orbit",
    "OrderRelation", "Report", "StratumFilter", "Subspace", "build_order", "classify", "conjecture_report",
    "covered", "embed", "enumerate_family", "enumerate_matchings", "enumerate_vectors", "eps", "eps_prime",
    "filtration_check", "fourier_apply", "n5_certify", "operator_matrix", "orbits", "pairing", "phi",
    "phi_inv", "run_suite", "sharp_family", "span", "star_sequence", "transition_matrix", "triangularizable",
    "unitriangular_check",
]

__version__ = "0.1.0"
