"""
Cohomology of filtered complexes.

Over the Novikov field the degree-zero part Λ^{(0)} is a field, so ranks
and bases are computed by truncated Gauss-Jordan elimination. The residue
complex (C̄, δ̄) is handled with exact rational linear algebra.
"""

import logging
from typing import Dict, List, Optional, Sequence

from ..exceptions import UnsupportedGrading
from ..linalg import NovikovMatrix, novikov_span_rank, rank
from ..novikov import NovikovScalar
from .models import FilteredComplex, FilteredMap
from .operations import residue_matrix

logger = logging.getLogger(__name__)

NovikovVector = List[NovikovScalar]


def require_degree_zero(entries, what: str = "differential") -> None:
    """Elimination works in Λ^{(0)}; every term must be free of e.

    Raises:
        UnsupportedGrading: If a term carries a nonzero e-exponent.
    """
    for src, dst, scalar in entries:
        if any(mu2 != 0 for _, _, mu2 in scalar.terms):
            raise UnsupportedGrading(
                f"{what} entry ({src}, {dst}) carries an e-exponent; elimination needs degree-zero coefficients"
            )


def block(f: FilteredMap, p: int) -> NovikovMatrix:
    """Matrix of f from degree p to degree p + deg(f); columns are sources."""
    rows = f.target.in_degree(p + f.degree)
    cols = f.source.in_degree(p)
    entries = [[f.entry(s.name, t.name) for s in cols] for t in rows]
    return NovikovMatrix(entries, f.cap, [t.name for t in rows], [s.name for s in cols])


def differential_block(c: FilteredComplex, p: int) -> NovikovMatrix:
    """δ: C^p → C^{p+1}; columns are degree-p generators."""
    rows = c.in_degree(p + 1)
    cols = c.in_degree(p)
    entries = [[c.entry(s.name, t.name) for s in cols] for t in rows]
    return NovikovMatrix(entries, c.cap, [t.name for t in rows], [s.name for s in cols])


def columns(m: NovikovMatrix) -> List[NovikovVector]:
    return [[m.entries[i][j] for i in range(m.nrows)] for j in range(m.ncols)]


class NovikovHomology:
    """H^p of a complex over the truncated Novikov field.

    Holds cycle and boundary spanning sets in the coordinates of C^p
    (generators in name order) and a basis of representatives for the
    quotient.
    """

    def __init__(self, c: FilteredComplex, p: int):
        require_degree_zero(c.nonzero_entries())
        self.complex = c
        self.degree = p
        self.cap = c.cap
        self.dim = len(c.in_degree(p))
        outgoing = differential_block(c, p)
        if outgoing.nrows == 0:
            self.cycles = [[NovikovScalar.one(self.cap) if i == j else NovikovScalar.zero(self.cap)
                            for i in range(self.dim)] for j in range(self.dim)]
        else:
            self.cycles = outgoing.nullspace()
        incoming = differential_block(c, p - 1)
        self.boundaries = [v for v in columns(incoming) if any(not x.is_zero for x in v)] if self.dim else []
        self.boundary_rank = novikov_span_rank(self.boundaries, self.dim, self.cap)
        self.basis = self._complement()
        self.rank = len(self.basis)

    def _complement(self) -> List[NovikovVector]:
        chosen: List[NovikovVector] = []
        current = self.boundary_rank
        for z in self.cycles:
            r = novikov_span_rank(self.boundaries + chosen + [z], self.dim, self.cap)
            if r > current:
                chosen.append(z)
                current = r
        return chosen

    def coordinates(self, cycle: Sequence[NovikovScalar]) -> Optional[NovikovVector]:
        """Coefficients of a cycle's class in :attr:`basis`, or None if it is not a combination."""
        if self.rank == 0:
            return []
        spanning = self.basis + self.boundaries
        m = NovikovMatrix([[v[i] for v in spanning] for i in range(self.dim)], self.cap)
        solution = m.solve(list(cycle))
        return None if solution is None else solution[: self.rank]


def novikov_homology_ranks(c: FilteredComplex) -> Dict[int, int]:
    """rank H^p(C, δ) over the truncated Novikov field for every degree present."""
    ranks = {p: NovikovHomology(c, p).rank for p in c.degrees()}
    logger.debug(f"Novikov homology ranks: {ranks}")
    return ranks


def is_acyclic(c: FilteredComplex) -> bool:
    return all(r == 0 for r in novikov_homology_ranks(c).values())


def residue_homology_ranks(c: FilteredComplex) -> Dict[int, int]:
    """rank H^p(C̄, δ̄) over ℚ, where δ̄ keeps the effective-order-zero coefficients."""
    ranks = {}
    for p in c.degrees():
        dim = len(c.in_degree(p))
        out_rows = residue_matrix(c, p)
        in_rows = residue_matrix(c, p - 1)
        rank_out = rank(out_rows, dim) if out_rows else 0
        rank_in = rank(in_rows, len(c.in_degree(p - 1))) if in_rows else 0
        ranks[p] = dim - rank_out - rank_in
    return ranks

