"""Finite search tools for partition patterns over the rationals.

The package answers questions of the form: color a finite window of
rationals with r colors; must some instantiation of a pattern family
(Schur triples, arithmetic progressions, product-shifted tuples, ...)
land inside a single color class?  It provides witness detection,
exhaustive avoidance search with certificates, CNF export, a regularity
test for single linear equations, and finite analogues of the largeness
notions (thick, syndetic, IP_r) that drive the infinite theory.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .arith import (
    DegenerateRationalError,
    PolynomialQ,
    PolynomialSyntaxError,
    Rational,
    difference_degree_check,
    format_polynomial,
    format_rational,
    parse_polynomial,
    parse_rational,
    rational_make,
)
from .certificates import (
    certificate_for_result,
    dumps_certificate,
    load_certificate,
    lower_bound_certificate,
    upper_bound_certificate,
    verify_certificate,
    write_certificate,
)
from .cnf import CnfInstance, export_cnf, import_assignment, parse_assignment, to_dimacs
from .colorings import (
    Coloring,
    enumerate_colorings,
    count_colorings,
    parse_coloring,
    random_coloring,
    serialize_coloring,
)
from .detector import CandidateTable, build_candidates, find_witness, all_witnesses
from .patterns import (
    Family,
    InvalidInstantiationError,
    Witness,
    builtin_family,
    default_catalog,
    instantiate,
    parse_family,
)
from .rado import (
    LinearSystem,
    columns_condition,
    cross_validate,
    parse_equation,
    system_to_family,
)
from .search import (
    AVOIDING,
    BUDGET_EXCEEDED,
    EXHAUSTED,
    SearchBudget,
    SearchResult,
    search_avoiding,
    threshold_sweep,
    window_for_template,
)
from .windows import (
    FareyWindow,
    IntegerInterval,
    MultiplicativeGrid,
    Window,
    WindowError,
    parse_window,
)

__all__ = [
    "__version__",
    "AVOIDING",
    "BUDGET_EXCEEDED",
    "CandidateTable",
    "CnfInstance",
    "Coloring",
    "DegenerateRationalError",
    "EXHAUSTED",
    "Family",
    "FareyWindow",
    "IntegerInterval",
    "InvalidInstantiationError",
    "LinearSystem",
    "MultiplicativeGrid",
    "PolynomialQ",
    "PolynomialSyntaxError",
    "Rational",
    "SearchBudget",
    "SearchResult",
    "Window",
    "WindowError",
    "Witness",
    "all_witnesses",
    "build_candidates",
    "builtin_family",
    "certificate_for_result",
    "columns_condition",
    "count_colorings",
    "cross_validate",
    "default_catalog",
    "difference_degree_check",
    "dumps_certificate",
    "enumerate_colorings",
    "export_cnf",
    "find_witness",
    "format_polynomial",
    "format_rational",
    "import_assignment",
    "instantiate",
    "load_certificate",
    "lower_bound_certificate",
    "parse_assignment",
    "parse_coloring",
    "parse_equation",
    "parse_family",
    "parse_polynomial",
    "parse_rational",
    "parse_window",
    "random_coloring",
    "rational_make",
    "search_avoiding",
    "serialize_coloring",
    "system_to_family",
    "threshold_sweep",
    "to_dimacs",
    "upper_bound_certificate",
    "verify_certificate",
    "window_for_template",
    "write_certificate",
]
