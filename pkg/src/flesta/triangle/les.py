"""Long exact sequence of an exact triangle, with exactness verified node by node."""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..complexes.homology import NovikovHomology, block, differential_block
from ..complexes.models import FilteredComplex, FilteredMap
from ..exceptions import ExactnessFailure
from ..novikov import NovikovScalar, format_fraction
from .cone import DOUBLE_PRIME, PRIME, assemble_cone
from .models import LESMap, LESNode, LongExactSequence, TriangleData, matrix_rank

logger = logging.getLogger(__name__)

NovikovMatrixRows = List[List[NovikovScalar]]


def _zero_matrix(rows: int, cols: int, cap: Fraction) -> NovikovMatrixRows:
    return [[NovikovScalar.zero(cap) for _ in range(cols)] for _ in range(rows)]


def induced_map(f: FilteredMap, k: int, source: NovikovHomology, target: NovikovHomology) -> Tuple[NovikovMatrixRows, bool]:
    """f_*: H^k(source) → H^k(target) in the chosen homology bases."""
    matrix = _zero_matrix(target.rank, source.rank, f.cap)
    defined = True
    if source.rank == 0 or target.rank == 0:
        return matrix, defined
    m = block(f, k)
    for col, z in enumerate(source.basis):
        coords = target.coordinates(m.apply(z))
        if coords is None:
            logger.warning(f"image of a degree-{k} cycle is not a cycle; f is not a chain map below the cap")
            defined = False
            continue
        for row, x in enumerate(coords):
            matrix[row][col] = x
    return matrix, defined


def connecting_map(t: TriangleData, cone: FilteredComplex, k: int, source: NovikovHomology,
                   target: NovikovHomology) -> Tuple[NovikovMatrixRows, bool]:
    """∂: H^k(C'') → H^{k+1}(C') read off from the cone.

    For a cycle z'' solve d_D(y', y, y'') = (0, 0, z''); then ∂[z''] = [y'].
    A solution exists whenever the cone is acyclic.
    """
    matrix = _zero_matrix(target.rank, source.rank, t.cap)
    defined = True
    if source.rank == 0 or target.rank == 0:
        return matrix, defined
    d = differential_block(cone, k - 1)
    double_prime_names = [g.name for g in t.c_double_prime.in_degree(k)]
    prime_names = [g.name for g in t.c_prime.in_degree(k + 1)]
    col_index = {name: j for j, name in enumerate(d.col_labels)}
    for col, z in enumerate(source.basis):
        values = dict(zip(double_prime_names, z))
        rhs = [
            values.get(label[len(DOUBLE_PRIME):], NovikovScalar.zero(t.cap)) if label.startswith(DOUBLE_PRIME)
            else NovikovScalar.zero(t.cap)
            for label in d.row_labels
        ]
        solution = d.solve(rhs)
        if solution is None:
            logger.warning(f"cone class of a degree-{k} cycle of C'' is nonzero; ∂ is undefined there")
            defined = False
            continue
        y_prime = [solution[col_index[PRIME + name]] for name in prime_names]
        coords = target.coordinates(y_prime)
        if coords is None:
            defined = False
            continue
        for row, x in enumerate(coords):
            matrix[row][col] = x
    return matrix, defined


def _product(left: NovikovMatrixRows, right: NovikovMatrixRows, cap: Fraction) -> NovikovMatrixRows:
    inner = len(right)
    cols = len(right[0]) if right else 0
    out = _zero_matrix(len(left), cols, cap)
    for i in range(len(left)):
        for j in range(cols):
            acc = NovikovScalar.zero(cap)
            for m in range(inner):
                acc = acc + left[i][m] * right[m][j]
            out[i][j] = acc.truncate(cap)
    return out


def extract_les(t: TriangleData, strict: bool = True) -> LongExactSequence:
    """Cohomology of C', C and C'' with b_*, c_* and ∂, checked for exactness at every node.

    Raises:
        ExactnessFailure: In strict mode, at the first node that is not exact.
    """
    cap = t.cap
    degrees = t.degree_range()
    cone = assemble_cone(t)
    complexes = [("C'", t.c_prime), ("C", t.middle), ("C''", t.c_double_prime)]

    homologies: Dict[Tuple[int, int], NovikovHomology] = {}
    nodes: List[LESNode] = []
    for i, k in enumerate(degrees):
        for j, (label, c) in enumerate(complexes):
            h = NovikovHomology(c, k)
            homologies[(k, j)] = h
            nodes.append(LESNode(index=3 * i + j, label=f"H^{k}({label})", degree=k, rank=h.rank))

    maps: List[LESMap] = []
    for i, k in enumerate(degrees):
        base = 3 * i
        b_star, b_ok = induced_map(t.b, k, homologies[(k, 0)], homologies[(k, 1)])
        maps.append(LESMap(name="b*", source=base, target=base + 1, matrix=b_star, defined=b_ok))
        c_star, c_ok = induced_map(t.c, k, homologies[(k, 1)], homologies[(k, 2)])
        maps.append(LESMap(name="c*", source=base + 1, target=base + 2, matrix=c_star, defined=c_ok))
        if (k + 1, 0) in homologies:
            delta, d_ok = connecting_map(t, cone, k, homologies[(k, 2)], homologies[(k + 1, 0)])
            maps.append(LESMap(name="∂", source=base + 2, target=base + 3, matrix=delta, defined=d_ok))
    for m in maps:
        m.rank = matrix_rank(m.matrix, cap)

    incoming: Dict[int, LESMap] = {m.target: m for m in maps}
    outgoing: Dict[int, LESMap] = {m.source: m for m in maps}
    for node in nodes:
        m_in: Optional[LESMap] = incoming.get(node.index)
        m_out: Optional[LESMap] = outgoing.get(node.index)
        node.incoming_rank = m_in.rank if m_in else 0
        node.outgoing_rank = m_out.rank if m_out else 0
        if m_in and m_out and m_in.matrix and m_out.matrix:
            product = _product(m_out.matrix, m_in.matrix, cap)
            node.composition_zero = all(x.is_zero for row in product for x in row)
        logger.debug(
            f"{node.label}: rank {node.rank}, in {node.incoming_rank}, out {node.outgoing_rank}"
        )
        if strict and not node.exact:
            raise ExactnessFailure(
                f"sequence is not exact at {node.label} (node {node.index}) below cap {format_fraction(cap)}; "
                "the triangle hypotheses fail or the cap is too small",
                node=node.index,
                ranks={"rank": node.rank, "incoming": node.incoming_rank, "outgoing": node.outgoing_rank},
            )

    return LongExactSequence(nodes=nodes, maps=maps, cap=cap)
