"""colorsurf: map 2D color codes onto pairs of surface codes.

Builds three-colored trivalent lattices, contracts one color to obtain the
induced surface-code graph, constructs the invertible GF(2)-linear map
between the two codes' Pauli groups, machine-verifies its structural
properties, and decodes color-code syndromes with per-copy matching.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .codemap import (
    ChargeAssignment,
    MapArtifact,
    MapConventions,
    build_artifact,
    build_map,
    hopping_operator,
    load_map_file,
    save_map_file,
    single_qubit_image_table,
    verify_all,
    verify_commutation,
    verify_counting,
    verify_equivalence,
    verify_hopper_independence,
    verify_invertibility,
    verify_stabilizer_images,
)
from .colex import (
    Colex,
    Color,
    build_hexagonal_torus,
    build_square_octagon_torus,
    load_colex,
    save_colex,
    validate_colex,
)
from .contraction import SurfaceGraph, contract, surface_dual_check
from .decode import (
    ColorDecoder,
    DecodeOutcome,
    Syndrome,
    decode_color,
    extract_syndrome,
    mwpm_decode,
    push_syndrome,
)
from .errors import ColorsurfError
from .report import ValidationReport
from .simulate import NoiseModel, TrialStats, run_trials, sweep
from .stabilizers import (
    CodeParams,
    StabilizerCode,
    code_params,
    color_code,
    surface_code,
)
from .symplectic import (
    Gf2Matrix,
    PauliOp,
    Space,
    SymplecticMap,
    apply,
    invert,
    is_symplectic,
    preimage,
    rank,
    solve,
    symplectic_product,
)

__all__ = [
    "__version__",
    "KERNEL_BACKEND",
    "ChargeAssignment",
    "Colex",
    "Color",
    "ColorDecoder",
    "ColorsurfError",
    "CodeParams",
    "DecodeOutcome",
    "Gf2Matrix",
    "MapArtifact",
    "MapConventions",
    "NoiseModel",
    "PauliOp",
    "Space",
    "StabilizerCode",
    "SurfaceGraph",
    "SymplecticMap",
    "Syndrome",
    "TrialStats",
    "ValidationReport",
    "apply",
    "build_artifact",
    "build_hexagonal_torus",
    "build_map",
    "build_square_octagon_torus",
    "code_params",
    "color_code",
    "contract",
    "decode_color",
    "extract_syndrome",
    "hopping_operator",
    "invert",
    "is_symplectic",
    "load_colex",
    "load_map_file",
    "mwpm_decode",
    "preimage",
    "push_syndrome",
    "rank",
    "run_trials",
    "save_colex",
    "save_map_file",
    "single_qubit_image_table",
    "solve",
    "surface_code",
    "surface_dual_check",
    "sweep",
    "symplectic_product",
    "validate_colex",
    "verify_all",
    "verify_commutation",
    "verify_counting",
    "verify_equivalence",
    "verify_hopper_independence",
    "verify_invertibility",
    "verify_stabilizer_images",
]
