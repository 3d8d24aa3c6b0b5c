"""Exact tropical (min-plus) spectral theory of tensors."""

from .core import (INF, Tensor, canonicalize, check_support_hypothesis, is_fully_symmetric,
                   parse_value, tropical_apply, tropical_scale)
from .errors import (HypothesisViolation, LambdaMismatch, NoCycleFound, NoFiniteVertex,
                     NotConverged, NotSymmetric, PreconditionFailed, SizeCapExceeded,
                     StructureViolation, TropTensorError)
from .hypergraph import (build_hypergraph, is_h_cycle, karp_min_cycle_mean, min_h_cycle_mean,
                         tight_cycle)
from .lp import build_dual, build_primal, solve
from .polytope import (check_vertex_structure, cyclic_vertex, enumerate_vertices,
                       eigenvalue_via_vertices)
from .spectra import (Eigenpair, EEigenpair, Kind, e_eigenpairs, f_map, find_h_eigenvector,
                      h_eigenvalue, h_eigenvalue_symmetric, h_eigenvectors, iterate_f,
                      symmetric_structure_check, verify_h_eigenpair)

__version__ = "0.1.0"
