"""(1,1)-knots and meridional surfaces assembled from pieces."""
from .assembler import (Assembly, KnotReport, SurfaceReport, Violation, cell_complex_chi,
                        knot_check, surface_invariants, validate_assembly)
from .enumeration import NotFound, SearchSpec, classify_genus1, find_construction, slope_sequences
from .morse import LevelState, MorseEvent, MorseTrace, recognize, replay, trace
from .pieces import (Crossing, PieceA, PieceB, PieceC, PieceD, PieceE, PieceF, fragment_report,
                     validate_piece)
from .torus import ManifoldSpec, Slope, TwoBridgeFraction, canonicalize, delta

__version__ = "0.1.0"
