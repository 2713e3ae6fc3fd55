"""sexakit: exact base-60 arithmetic and Susa tablet excavation replays.

The package computes only exactly: every number is an arbitrary-precision
rational, every comparison is equality, nothing is ever rounded.  On top
of the number core sit Babylonian units, the scribal solution procedures
(completing the square, sum-difference, division by recognition), canal
geometry, and a corpus of tablet problems that replay and verify every
intermediate "you see N" value of SMT No. 24 and No. 25.
"""

from . import errors
from .corpus import (
    CheckRow,
    ExpectedStep,
    Procedure,
    ReplayReport,
    TabletProblem,
    bundled_corpus_path,
    find_problem,
    load_corpus,
    replay,
    replay_smt24_p2,
)
from .geometry import (
    SMALL_CANAL_CONSTANT,
    CanalConstant,
    RectCanal,
    TrapezoidCanal,
    breadths_from_constraints,
    depth_from_labor,
    length_from_volume,
    prism_volume,
    reserved_water_volume,
    trapezoid_cross_section,
)
from .procedures import (
    QuadraticProblem,
    Step,
    StepTrace,
    SumDifferenceProblem,
    apply_identity_sum_of_squares,
    divide_by_recognition,
    solve_quadratic_scribal,
    solve_sum_difference,
)
from .sexa import (
    Sexa,
    SexaDigits,
    add,
    decompose,
    halve,
    is_regular,
    mul,
    parse,
    reciprocal,
    render,
    sqrt_exact,
    square,
    sub,
)
from .units import (
    KUS_PER_NINDAN,
    Dimension,
    Quantity,
    kus_to_nindan,
    nindan_to_kus,
    parse_quantity,
    qdiv,
    qmul,
    sar_to_volume_sar,
)

__version__ = "0.1.0"

__all__ = [
    "errors",
    # numbers
    "Sexa", "SexaDigits", "parse", "render", "decompose",
    "add", "sub", "mul", "halve", "square",
    "sqrt_exact", "reciprocal", "is_regular",
    # units
    "Dimension", "Quantity", "KUS_PER_NINDAN",
    "qmul", "qdiv", "nindan_to_kus", "kus_to_nindan",
    "sar_to_volume_sar", "parse_quantity",
    # procedures
    "Step", "StepTrace", "QuadraticProblem", "SumDifferenceProblem",
    "solve_quadratic_scribal", "solve_sum_difference",
    "divide_by_recognition", "apply_identity_sum_of_squares",
    # geometry
    "CanalConstant", "SMALL_CANAL_CONSTANT", "TrapezoidCanal", "RectCanal",
    "trapezoid_cross_section", "prism_volume", "reserved_water_volume",
    "breadths_from_constraints", "length_from_volume", "depth_from_labor",
    # corpus
    "Procedure", "ExpectedStep", "TabletProblem", "CheckRow", "ReplayReport",
    "bundled_corpus_path", "load_corpus", "find_problem",
    "replay", "replay_smt24_p2",
]
