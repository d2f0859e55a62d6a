"""Combinatorial models for complements of complexified toric arrangements.

The pipeline: describe an arrangement by integer characters and rational
angles, lift it to a periodic affine hyperplane arrangement inside a
window box, enumerate the induced cells exactly, quotient by the
translation lattice to get the face category of the compact torus, build
the Salvetti category whose nerve models the complement, and read off
integral homology and a finite presentation of the fundamental group.
"""

from .errors import SpecError, WindowError, InternalError
from .exact import IntMatrix, hnf, snf, solve_affine
from .arrangement import (Character, AngleQ, ArrangementSpec, AffineHyperplane,
                          Window, parse_spec, is_essential, essentialize,
                          restrict, lift_to_window)
from .cells import (AffineFace, LiftedFacePoset, FaceCategory, LayerPoset,
                    enumerate_faces, quotient_faces, layers, project_pi_F,
                    opposite_chamber, chamber_fiber)
from .category import (AcyclicCategory, ChainComplex, check_acyclic,
                       nerve_chains, boundary_matrices, homology,
                       euler_characteristic)
from .salvetti import (SalvettiPoset, SalvettiCategory, salvetti_poset,
                       toric_salvetti, is_thick, cw_census)
from .pi1 import (GroupPresentation, Pi1Context, presentation, abelianize,
                  simplify_presentation, chamber_graph, positive_minimal_path,
                  omega_paths, sigma, delta_word, h_of_G, relations_for_G)

__version__ = "0.1.0"
