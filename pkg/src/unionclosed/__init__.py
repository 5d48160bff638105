"""Exact combinatorics for set families over a small ground set.

Families are collections of subsets of {1..n} held as bitmasks. The
package checks union-closure, filterhood, the half-element property, and
the average-size bound; verifies and searches interval certificates (a
filter image per member with pairwise disjoint cube intervals); and
enumerates the structured counterexample families where the certificate
condition holds while no element reaches half the members.
"""

from .certificates import (
    DECISION_CAP,
    Certificate,
    CertificateVerdict,
    difference_disjoint,
    find_certificate,
    intervals_disjoint,
    reduce_ground_set,
    verify_certificate,
)
from .family import (
    MAX_GROUND,
    Family,
    FamilyFormatError,
    FilterVerdict,
    FranklVerdict,
    ReimerVerdict,
    ResourceLimitError,
    UnionClosureVerdict,
    elements_of,
    format_set,
    frankl_check,
    frequency_vector,
    full_mask,
    is_filter,
    is_union_closed,
    iter_supersets,
    mask_from_elements,
    reimer_bound_holds,
    up_closure,
)
from .search import (
    CANONICAL_CAP,
    ENUMERATION_CAP,
    SEARCH_CAP,
    CounterexampleReport,
    Digraph,
    SearchShape,
    SweepSummary,
    conjecture_sweep,
    contains_tournament,
    degree_budget_feasible,
    digraph_from_family,
    enumerate_conjecture,
    max_outdegree,
    min_even_ground_size,
    minimal_counterexample,
    search_counterexamples,
)

__all__ = [
    "MAX_GROUND",
    "DECISION_CAP",
    "SEARCH_CAP",
    "CANONICAL_CAP",
    "ENUMERATION_CAP",
    "Family",
    "FamilyFormatError",
    "ResourceLimitError",
    "UnionClosureVerdict",
    "FilterVerdict",
    "FranklVerdict",
    "ReimerVerdict",
    "Certificate",
    "CertificateVerdict",
    "Digraph",
    "SearchShape",
    "SweepSummary",
    "CounterexampleReport",
    "full_mask",
    "mask_from_elements",
    "elements_of",
    "format_set",
    "iter_supersets",
    "is_union_closed",
    "is_filter",
    "up_closure",
    "frequency_vector",
    "frankl_check",
    "reimer_bound_holds",
    "difference_disjoint",
    "intervals_disjoint",
    "verify_certificate",
    "find_certificate",
    "reduce_ground_set",
    "digraph_from_family",
    "contains_tournament",
    "max_outdegree",
    "degree_budget_feasible",
    "min_even_ground_size",
    "search_counterexamples",
    "minimal_counterexample",
    "conjecture_sweep",
    "enumerate_conjecture",
]
