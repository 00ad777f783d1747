"""Locally invariant orderings of concrete torsion-free groups.

The package builds, transforms, and certifies strict partial and total
orderings that satisfy the locally-invariant condition, working with exact
arithmetic and verifying every construction exhaustively on finite symmetric
windows.
"""

from .cones import (
    AxiomReport,
    ConeField,
    LeftOrderCone,
    act,
    cone_axiom_report,
    embed_left_order,
    field_from_order,
    finite_table_field,
    iota,
    left_order_oracle,
    order_from_field,
    reversed_cone,
    standard_cone,
    subbasic_member,
    validate_left_order_cone,
)
from .constructions import (
    CofinalScheme,
    DistinctnessWitness,
    ExtendedValue,
    LexScheme,
    PhiFunction,
    QuadraticIrrational,
    affine_phi,
    alpha_distinctness_witness,
    alpha_order,
    cofinal_index,
    compare_alpha,
    compare_quadratic,
    default_cofinal_scheme,
    f_alpha_value,
    f_phi,
    klein_lex_scheme,
    lex_compare,
    lex_order,
    parse_phi,
    parse_quadratic,
    rf_field,
)
from .diffuse import ExtremeReport, ScanReport, diffuse_scan, extreme_points, is_extreme
from .errors import (
    BudgetError,
    CycleError,
    GroupMismatchError,
    OrdoError,
    OutOfWindowError,
    ParseError,
    SolveError,
    WindowError,
)
from .extend import (
    ExtensionProblem,
    RSet,
    TowerReport,
    UnsatCertificate,
    backtrack_solve,
    canonical_rset,
    peel_solve,
    random_rset,
    tower_solve,
    validate_solution,
)
from .groups import (
    FreeGroup,
    Group,
    IntegerLattice,
    KleinBottleGroup,
    RationalSubgroup,
    Window,
    generate_ball,
    parse_element,
    parse_group,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .orders import (
    Comparison,
    OrderOracle,
    OrderTable,
    check_li_condition,
    check_li_condition_literature,
    convert_convention,
    find_disagreement,
    is_total,
    oracle_table,
    transitive_closure,
    validate_strict_partial_order,
)

__version__ = "0.1.0"
