"""Exact-arithmetic abelian diagram calculator.

Finite-dimensional vector spaces over Q or GF(p), morphisms as matrices,
and on top of them: kernels, cokernels, biproducts, epi-mono factorization,
pullbacks and pushouts, semi-cartesian square analysis, and the snake lemma
with an explicitly constructed connecting morphism.  All arithmetic is
exact; every universal construction is canonical so equal inputs give
byte-equal outputs.
"""

from .category import (
    Biproduct,
    CokernelData,
    KernelData,
    Mor,
    Obj,
    biproduct,
    cokernel,
    cokernel_colift,
    compose,
    epi_colift,
    identity,
    kernel,
    kernel_lift,
    mono_lift,
    zero_mor,
)
from .constructions import (
    Factorization,
    PullbackData,
    PushoutData,
    epi_mono_factorize,
    image,
    is_cokernel_of,
    is_exact_pair,
    is_kernel_of,
    pullback,
    pullback_lift,
    pushout,
    pushout_colift,
    same_subobject,
)
from .diagram_io import (
    DiagramFile,
    Report,
    diagram_for_morphism,
    diagram_for_pair,
    diagram_for_snake,
    diagram_for_square,
    parse_path,
    parse_text,
    serialize,
    snake_from,
    square_from,
)
from .diagrams import (
    GenConfig,
    SplitMix64,
    gen_exact_pair,
    gen_morphism,
    gen_semicartesian,
    gen_snake_input,
)
from .errors import (
    AbcatError,
    DiagramFormatError,
    GenerationError,
    InternalCheckError,
    PreconditionError,
    ShapeError,
)
from .fields import RATIONALS, GFElement, Scalar, ScalarField, prime_field
from .linalg import Matrix
from .properties import SuiteResult, run_selftest, worked_example_input
from .snake import (
    SnakeInput,
    SnakeInputError,
    SnakeOutput,
    SnakeTrace,
    chase_delta,
    connecting_morphism,
    reduce_input,
    snake_sequence,
    validate,
    violations,
)
from .squares import (
    Square,
    SquareAnalysis,
    analyze,
    cokernel_square,
    compose_h,
    decompose_semicartesian,
    kernel_square,
)

__version__ = "0.1.0"

__all__ = [
    "AbcatError",
    "Biproduct",
    "CokernelData",
    "DiagramFile",
    "DiagramFormatError",
    "Factorization",
    "GFElement",
    "GenConfig",
    "GenerationError",
    "InternalCheckError",
    "KernelData",
    "Matrix",
    "Mor",
    "Obj",
    "PreconditionError",
    "PullbackData",
    "PushoutData",
    "RATIONALS",
    "Report",
    "Scalar",
    "ScalarField",
    "ShapeError",
    "SnakeInput",
    "SnakeInputError",
    "SnakeOutput",
    "SnakeTrace",
    "SplitMix64",
    "Square",
    "SquareAnalysis",
    "SuiteResult",
    "analyze",
    "biproduct",
    "chase_delta",
    "cokernel",
    "cokernel_colift",
    "cokernel_square",
    "compose",
    "compose_h",
    "connecting_morphism",
    "decompose_semicartesian",
    "diagram_for_morphism",
    "diagram_for_pair",
    "diagram_for_snake",
    "diagram_for_square",
    "epi_colift",
    "epi_mono_factorize",
    "gen_exact_pair",
    "gen_morphism",
    "gen_semicartesian",
    "gen_snake_input",
    "identity",
    "image",
    "is_cokernel_of",
    "is_exact_pair",
    "is_kernel_of",
    "kernel",
    "kernel_lift",
    "kernel_square",
    "mono_lift",
    "parse_path",
    "parse_text",
    "prime_field",
    "pullback",
    "pullback_lift",
    "pushout",
    "pushout_colift",
    "reduce_input",
    "run_selftest",
    "same_subobject",
    "serialize",
    "snake_from",
    "snake_sequence",
    "square_from",
    "validate",
    "violations",
    "worked_example_input",
    "zero_mor",
]
