"""
The cone D = C' ⊕ C ⊕ C'' of triangle data.

D^n = C'^{n+2} ⊕ C^{n+1} ⊕ C''^n, with generators renamed ``Cp.x``, ``C.x``
and ``Cpp.x``. The differential is

    d_D(x', x, x'') = (d'x', b x' - d x, -h x' + c x + d'' x''),

so d_D² = 0 is equivalent to b and c being chain maps together with
c∘b = d''∘h + h∘d'.
"""

import logging
from typing import Dict, Tuple

from ..complexes.models import FilteredComplex, FilteredMap, Generator, Matrix, compose, differential_map
from ..complexes.operations import check_complex
from ..exceptions import NotAComplex
from ..novikov import NovikovScalar
from .models import TriangleData

logger = logging.getLogger(__name__)

PRIME, MIDDLE, DOUBLE_PRIME = "Cp.", "C.", "Cpp."

# (source slot, target slot) -> (map name, sign)
SIGN_TABLE: Dict[Tuple[str, str], Tuple[str, int]] = {
    (PRIME, PRIME): ("d'", 1),
    (PRIME, MIDDLE): ("b", 1),
    (MIDDLE, MIDDLE): ("d", -1),
    (PRIME, DOUBLE_PRIME): ("h", -1),
    (MIDDLE, DOUBLE_PRIME): ("c", 1),
    (DOUBLE_PRIME, DOUBLE_PRIME): ("d''", 1),
}

_SQUARE_BLOCKS = {
    (PRIME, PRIME): "d'∘d'",
    (PRIME, MIDDLE): "d∘b - b∘d' (b is not a chain map)",
    (MIDDLE, MIDDLE): "d∘d",
    (PRIME, DOUBLE_PRIME): "c∘b - d''∘h - h∘d' (h is not a homotopy)",
    (MIDDLE, DOUBLE_PRIME): "d''∘c - c∘d (c is not a chain map)",
    (DOUBLE_PRIME, DOUBLE_PRIME): "d''∘d''",
}


def slot(name: str) -> str:
    """The summand a cone generator lives in."""
    for prefix in (DOUBLE_PRIME, PRIME, MIDDLE):
        if name.startswith(prefix):
            return prefix
    raise KeyError(name)


def _shifted(c: FilteredComplex, prefix: str, shift: int):
    return [Generator(name=prefix + g.name, degree=g.degree - shift, level=g.level) for g in c.generators]


def _signed(scalar: NovikovScalar, sign: int) -> NovikovScalar:
    return scalar if sign > 0 else -scalar


def assemble_cone(t: TriangleData) -> FilteredComplex:
    """Build D with the differential above.

    Raises:
        NotAComplex: If d_D² ≠ 0; the message names the failing block.
    """
    generators = (
        _shifted(t.c_prime, PRIME, 2) + _shifted(t.middle, MIDDLE, 1) + _shifted(t.c_double_prime, DOUBLE_PRIME, 0)
    )
    pieces = {
        (PRIME, PRIME): t.c_prime.differential,
        (PRIME, MIDDLE): t.b.matrix,
        (MIDDLE, MIDDLE): t.middle.differential,
        (PRIME, DOUBLE_PRIME): t.h.matrix,
        (MIDDLE, DOUBLE_PRIME): t.c.matrix,
        (DOUBLE_PRIME, DOUBLE_PRIME): t.c_double_prime.differential,
    }
    differential: Matrix = {}
    for (src_slot, dst_slot), entries in pieces.items():
        _, sign = SIGN_TABLE[(src_slot, dst_slot)]
        for (src, dst), scalar in entries.items():
            differential[(src_slot + src, dst_slot + dst)] = _signed(scalar, sign).truncate(t.cap)

    cone = FilteredComplex(generators=tuple(generators), differential={k: v for k, v in differential.items() if v},
                           cap=t.cap)
    report = check_complex(cone)
    if not report.passed:
        first = report.first_violation
        if first.kind == "square":
            block = _SQUARE_BLOCKS.get((slot(first.src), slot(first.dst)), "d_D∘d_D")
            raise NotAComplex(f"cone differential does not square to zero in block {block}: {first.detail}")
        raise NotAComplex(f"cone has a {first.kind} violation at ({first.src}, {first.dst}): {first.detail}")
    logger.debug(f"Assembled cone with {len(generators)} generators over degrees {cone.degrees()}")
    return cone


def homotopy_defect(t: TriangleData) -> FilteredMap:
    """c∘b - d''∘h - h∘d' below the cap; zero exactly when h is a homotopy."""
    minus = NovikovScalar.constant(-1, t.cap)
    total = (
        compose(t.c, t.b)
        + compose(differential_map(t.c_double_prime), t.h).scale(minus)
        + compose(t.h, differential_map(t.c_prime)).scale(minus)
    )
    return total.with_matrix({k: v.truncate(t.cap) for k, v in total.matrix.items()})


def chain_map_defect(f: FilteredMap) -> FilteredMap:
    """d∘f - f∘d for a degree-zero map."""
    minus = NovikovScalar.constant(-1, f.cap)
    total = compose(differential_map(f.target), f) + compose(f, differential_map(f.source)).scale(minus)
    return total.with_matrix({k: v.truncate(f.cap) for k, v in total.matrix.items()})
