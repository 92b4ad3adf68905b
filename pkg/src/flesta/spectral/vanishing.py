"""Acyclicity from the first page."""

import logging
from fractions import Fraction
from typing import Optional

from ..complexes.homology import is_acyclic, residue_homology_ranks
from ..complexes.models import FilteredComplex, differential_map
from ..complexes.operations import check_complex, complex_gap, split_by_threshold
from ..exceptions import CertificationError, NonGapped, NotAComplex
from ..novikov import format_fraction

logger = logging.getLogger(__name__)


def thin_part(c: FilteredComplex, threshold: Fraction) -> FilteredComplex:
    """The complex with only the differential terms of order below ``threshold``."""
    low, _ = split_by_threshold(differential_map(c), threshold)
    return c.with_differential(low.matrix)


def vanishing_criterion(c: FilteredComplex, threshold: Optional[Fraction] = None) -> bool:
    """Decide H(C, δ) = 0 from the first page.

    Without a threshold the residue complex (C̄, δ̄) must be acyclic. With a
    threshold ε the terms of order < ε must form an acyclic complex by
    themselves. A positive answer is confirmed by direct elimination.

    Raises:
        NonGapped: If δ lowers the filtration.
        NotAComplex: If the thin part does not square to zero.
        CertificationError: If elimination disagrees with a positive answer.
    """
    negative = sorted(o for o in complex_gap(c) if o < 0)
    if negative:
        raise NonGapped(f"differential has a term of negative order {format_fraction(negative[0])}")

    if threshold is None:
        ranks = residue_homology_ranks(c)
        vanishes = all(r == 0 for r in ranks.values())
        logger.debug(f"Residue homology ranks {ranks}")
    else:
        thin = thin_part(c, threshold)
        report = check_complex(thin)
        if not report.passed:
            first = report.first_violation
            raise NotAComplex(f"terms of order < {format_fraction(threshold)} do not form a complex: {first.detail}")
        vanishes = is_acyclic(thin)

    if vanishes and not is_acyclic(c):
        raise CertificationError("first page vanishes but elimination finds nonzero cohomology")
    return vanishes
