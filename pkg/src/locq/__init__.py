"""locq: decoders for optimal geometrically local quantum codes.

Builders for generalized repetition/surface codes and subdivided codes,
the full decoder stack (peeling, Union-Find, tree MWPM, three-stage
subdivided decoding) and a Monte-Carlo harness for thresholds and
scaling.
"""

from .errors import (
    CodeFormatError,
    DecoderMismatchError,
    OpCounter,
    UnsatisfiableClusterError,
)
from .gen_erasure import decode_gen_erasure, satisfying_configuration
from .gen_union_find import (
    GenClusterData,
    crosses_patch,
    decode_gen_uf_fast,
    decode_gen_uf_naive,
    is_satisfiable,
    merge_cluster_data,
)
from .gf2 import Gf2Matrix, gf2_rank, gf2_solve
from .genrep import GenRepCode, build_gen_rep
from .hypergraph import TannerHypergraph, syndrome_of
from .logical import is_logical_failure
from .peeling import SpanningForest, decode_erasure, peel, spanning_forest
from .rep_mwpm import decode_rep
from .square_complex import SquareComplex, single_square_complex, toric_square_complex
from .subdivide import PatchView, SubdividedCode, TRegionView, subdivide
from .subdivided import (
    BruteForceOuter,
    OuterDecoder,
    StageDiagnostics,
    decode_subdivided,
    lift_outer_correction,
    syndrome_after_patch_stage,
)
from .uf_surface import ClusterForest, decode_uf_fast, decode_uf_naive
from .surface import (
    GenSurfacePatch,
    PatchStructure,
    PlanarSurfaceCode,
    build_gen_surface,
    build_planar_surface,
)

__version__ = "0.1.0"
