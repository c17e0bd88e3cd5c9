"""Alexander invariants of colored welded tangles.

Exact Laurent-polynomial arithmetic, exterior-algebra valued invariant
tensors, circuit-algebra composition, and the classical specializations
(Alexander polynomial, Burau/Gassner matrices).
"""

from .ring import (LaurentPoly, PolyMatrix, parse_poly, RingError,
                   DimensionError, DivisibilityError, DomainError)
from .exterior import (BasisSpec, Tensor, Matching, contract_matched,
                       equal_up_to_unit, subset_signature, ExteriorError,
                       GradeError, DisjointnessError, WiringError)
from .diagram import (WeldedDiagram, Arc, Crossing, VirtualCrossing, Point,
                      parse_diagram, serialize_diagram, diagram_to_json,
                      diagram_from_json, apply_move, trivial_strand,
                      braid_diagram, close_braid_11, DiagramError,
                      DiagramSyntaxError, DiagramValidationError,
                      MovePatternError)
from .alexander import (ColoredTangle, alpha, alexander_function,
                        alexander_poly_11, build_matrix, SplitSpec,
                        GradedPiece, GradedMapFamily, split_hom,
                        family_to_tensor, burau_matrix, burau_check,
                        strand_permutation, BurauReport, AlexanderError,
                        ConsistencyError, ShapeError)
from .circuit import (CircuitDiagram, Disk, Curve, parse_circuit,
                      serialize_circuit, circuit_to_json, circuit_from_json,
                      identity_circuit, compose_circuits, canonical_form,
                      wiring, gamma, glue_tangles, CircuitError,
                      CircuitSyntaxError, CircuitValidationError,
                      CompositionError, GluingError)
from .textform import (format_tensor, parse_tensor, tensor_to_json,
                       tensor_from_json, format_matrix, matrix_to_json)

__version__ = "0.1.0"
