"""Configuration spaces of planar closed chains.

Given a cyclic vector of edge lengths, this package computes the
automorphism group of the linkage, regular cell complexes for the reduced
(rotation/translation quotient) and fully reduced (all isometries)
configuration spaces, exact integral and mod-2 homology, the symmetry-group
action with its fine cells and membranes, quotient (symmetric)
configuration spaces, fixed-point-set samplers, and known-answer reports
for triangles, quadrilaterals, the equilateral pentagon, and the
equilateral hexagon.
"""

__version__ = "1.0.0"

from .catalog import (DegenerateLinkage, HexagonReport, PentagonReport,
                      QuadCase, appendix_structure, classify_quadrilateral,
                      hexagon_report, pentagon_report, triangle_case)
from .cells import (CollinearVertex, CyclicPartition, EmptySpace, FacePoset,
                    RigidPoint, dihedral_reduce, enumerate_cells)
from .core import (AutGroup, DihedralElement, LengthVector,
                   VertexAngleVector, automorphism_group, format_rational,
                   parse_rational, reflectivity, relabel_normalize)
from .geometry import (AngleConfig, closure_residual, derive_cell,
                       solve_cell_representative)
from .simplicial import (HomologyProfile, SimplicialComplex,
                         barycentric_subdivision, graph_invariants, homology,
                         homology_mod2, order_complex)
from .symmetry import (GroupActionTable, dihedral_fixed_sampler,
                       dihedral_max_span, fine_cell_membranes, fine_cells,
                       quotient_complex, realized_stabilizers,
                       reflection_fixed_report, rotation_fixed_report,
                       stabilizer, star_polygon_types, verify_fixed)

__all__ = [name for name in dir() if not name.startswith("_")]
