"""Numerical certification of distance candidates on the real line."""

from ._metricline import (  # noqa: F401
    CatalogLookupError,
    DslParseError,
    EvalDomainError,
    __version__,
    canonical_form,
    catalog_names,
    certify,
    classify_generator,
    cross_partial,
    evaluate,
    find_counterexample,
    one_sided_partial,
    triangle_margins,
)
