"""Latin hypercubes realizing integer partitions.

Build, verify and classify m-dimensional latin hypercubes whose main diagonal
carries pairwise disjoint subhypercubes of prescribed orders.
"""

from .amalgam import (
    OutlineTemplateParams,
    build_outline_ab2,
    build_outline_abn,
    build_outline_diagonal,
    realize_outline_rectangle,
)
from .assets import AssetRecord, load_asset
from .classify import (
    Status,
    Verdict,
    check_a2b_bound,
    check_condition1,
    check_condition2,
    check_square_conditions,
    classify_cube,
    classify_square,
    halving_reduce,
)
from .construct import (
    Built,
    ConstructionTrace,
    combine,
    construct_cube,
    construct_mrp,
    construct_square,
    cyclic_hypercube,
    diagonal_square,
    inflate,
    replace_block,
    replay,
    square_to_cube,
)
from .core import (
    BlockStructure,
    DomainError,
    LatinError,
    LatinHypercube,
    NoSuchObject,
    OutlineBox,
    OutlineRectangle,
    Partition,
    Unresolved,
    block_intervals,
    parse_partition,
)
from .grid import GridDocument, parse as parse_grid, read_grid, serialize, write_grid
from .oracle import SearchOutcome, search_realization
from .verify import (
    ViolationReport,
    is_latin,
    reduce,
    validate_outline,
    verify_realization,
    verify_top_structure,
)

__version__ = "0.1.0"
