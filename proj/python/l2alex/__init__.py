"""Mahler measures, L2-Alexander determinant functions and torsion closed forms."""

from ._l2alex import (
    V3,
    BudgetError,
    CohomClass,
    DegeneracyError,
    DetFunction,
    Error,
    InputError,
    LaurentPoly,
    TorsionFunction,
    asymptote,
    convexity_check,
    det_function,
    determinant,
    exponent_bound,
    fibered_torsion,
    geometric_grid,
    graph_torsion,
    mahler_1v,
    mahler_mv,
    parse_input,
    roots,
    run_cli,
    scaled_mahler_1v,
    section9,
    torsion,
    torsion_degree,
)


def poly(terms, num_vars=None):
    """LaurentPoly from a {exponent tuple: coefficient} mapping."""
    items = list(terms.items())
    if num_vars is None:
        if not items:
            raise ValueError("num_vars is required for the zero polynomial")
        num_vars = len(items[0][0])
    return LaurentPoly(num_vars, [(list(e), complex(c)) for e, c in items])
