"""
Pages of the spectral sequence of a gapped filtered complex.

The complex is replaced by a finite rational model: the Λ₀-lattice spanned by
the energy-zero generators ⟨g⟩ = T^{-level(g)}·g, taken modulo F^{cap}. The
basis element T^{j·h}⟨g⟩ sits at filtration position j·h, where h is the
rational gcd of the realized orders, the step λ₀ and the cap. Layer n holds
the positions in [nλ₀, (n+1)λ₀).

E_1 is the associated graded module, δ_1 is the layer-preserving part of δ
(which is δ̄ for a gapped complex) and δ_r moves r - 1 layers up.

Pages are read off a barcode. One column reduction per degree, taking
sources from the deepest layer up, gives a filtered basis in which δ sends
each basis vector to zero or to another basis vector. A summand x → δx with
x in layer a and δx in layer b lives on E_1 … E_{b-a+1} at (p, a) and
(p+1, b), and δ_{b-a+1} is the identity between them. A cycle that is never
hit lives on every page.
"""

import logging
import math
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from ..complexes.homology import novikov_homology_ranks, require_degree_zero
from ..complexes.models import FilteredComplex, effective_order
from ..complexes.operations import check_complex, complex_gap
from ..exceptions import CapTooSmall, CertificationError, NonGapped, NotAComplex, NotStabilized
from ..linalg import rank
from ..novikov import INFINITY, format_fraction
from .models import Cell, FiltrationScheme, GapValue, PageCell, RationalVector, SpectralPage, StabilizationResult

logger = logging.getLogger(__name__)

SparseVector = Dict[int, Fraction]


def rational_gcd(values: Iterable[Fraction]) -> Fraction:
    """Largest h > 0 with every value an integer multiple of h (1 if all vanish)."""
    values = [Fraction(v) for v in values if v != 0]
    if not values:
        return Fraction(1)
    denominator = reduce(math.lcm, (v.denominator for v in values), 1)
    numerator = reduce(math.gcd, (abs(v.numerator) * (denominator // v.denominator) for v in values), 0)
    return Fraction(numerator, denominator)


def detect_gap(c: FilteredComplex) -> GapValue:
    """λ'': the smallest positive order among the terms of δ - δ₀ (+∞ when δ = δ₀)."""
    positive = [o for o in complex_gap(c) if o > 0]
    gap = min(positive) if positive else INFINITY
    logger.debug(f"Detected gap λ'' = {gap if gap == INFINITY else format_fraction(gap)}")
    return gap


def default_scheme(c: FilteredComplex) -> FiltrationScheme:
    """λ₀ = λ''/2, or 1 when δ = δ₀."""
    gap = detect_gap(c)
    if gap == INFINITY:
        return FiltrationScheme(lambda0=Fraction(1), gap=None)
    return FiltrationScheme(lambda0=gap / 2, gap=gap)


def _require_gapped(c: FilteredComplex, scheme: FiltrationScheme) -> None:
    report = check_complex(c)
    if not report.passed:
        first = report.violations[0]
        if first.kind == "filtration":
            raise NonGapped(f"differential lowers the filtration at ({first.src}, {first.dst}): {first.detail}")
        raise NotAComplex(f"{first.kind} violation at ({first.src}, {first.dst}): {first.detail}")
    gap = detect_gap(c)
    if gap != INFINITY and scheme.lambda0 >= gap:
        raise NonGapped(
            f"step λ₀ = {format_fraction(scheme.lambda0)} is not below the gap λ'' = {format_fraction(gap)}"
        )


def _axpy(target: SparseVector, scale: Fraction, other: SparseVector) -> None:
    """target += scale·other, dropping entries that cancel."""
    for k, v in other.items():
        value = target.get(k, Fraction(0)) + scale * v
        if value:
            target[k] = value
        else:
            target.pop(k, None)


def _prefix_ranks(vectors: List[SparseVector]) -> List[int]:
    """rank(vectors[:k]) for k = 0 … len(vectors), by incremental elimination."""
    pivots: Dict[int, SparseVector] = {}
    ranks = [0]
    for vector in vectors:
        v = dict(vector)
        while v:
            lead = max(v)
            basis = pivots.get(lead)
            if basis is None:
                pivots[lead] = v
                break
            _axpy(v, -v[lead] / basis[lead], basis)
        ranks.append(len(pivots))
    return ranks


class Bar(NamedTuple):
    """A summand of the filtered basis: ``source`` in (p, birth), ``target`` = δ(source) in (p+1, death)."""

    p: int
    birth: int
    death: Optional[int]
    source: RationalVector
    target: Optional[RationalVector]

    @property
    def length(self) -> Optional[int]:
        return None if self.death is None else self.death - self.birth

    def alive(self, r: int) -> bool:
        return self.death is None or r <= self.death - self.birth + 1


class _Reduction(NamedTuple):
    pivot_of: Dict[int, int]
    images: Dict[int, SparseVector]
    sources: Dict[int, SparseVector]
    cycles: Dict[int, SparseVector]


class TruncatedModel:
    """The finite rational model V = lattice / F^{cap} with its filtration layers."""

    def __init__(self, c: FilteredComplex, scheme: FiltrationScheme):
        require_degree_zero(c.nonzero_entries())
        self.complex = c
        self.scheme = scheme
        self.step = rational_gcd(list(complex_gap(c)) + [scheme.lambda0, c.cap])
        self.size = int(c.cap / self.step)
        self.layer_count = math.ceil(c.cap / scheme.lambda0)
        self.degrees = c.degrees()

        self.basis: Dict[int, List[Tuple[str, int]]] = {}
        self.index: Dict[int, Dict[Tuple[str, int], int]] = {}
        self.layers: Dict[int, List[int]] = {}
        self.order: Dict[int, List[int]] = {}
        self.position: Dict[int, Dict[int, int]] = {}
        for p in self.degrees:
            names = [g.name for g in c.in_degree(p)]
            self.basis[p] = [(name, j) for j in range(self.size) for name in names]
            self.index[p] = {key: i for i, key in enumerate(self.basis[p])}
            self.layers[p] = [scheme.layer(j * self.step) for _, j in self.basis[p]]
            # deepest layer first
            self.order[p] = sorted(range(self.dim(p)), key=lambda i, p=p: (-self.layers[p][i], i))
            self.position[p] = {i: k for k, i in enumerate(self.order[p])}

        # columns[p][j] is δ of basis vector j of V^p as {row in V^{p+1}: coefficient}
        self.columns: Dict[int, List[SparseVector]] = {p: [{} for _ in range(self.dim(p))] for p in self.degrees}
        gens = c.by_name
        for src, dst, scalar in c.nonzero_entries():
            p = gens[src].degree
            for coeff, lam, _ in scalar.terms:
                shift = int(effective_order(gens[src], gens[dst], lam) / self.step)
                for j in range(self.size - shift):
                    row = self.index[p + 1][(dst, j + shift)]
                    column = self.columns[p][self.index[p][(src, j)]]
                    _axpy(column, coeff, {row: Fraction(1)})

        self._bars: Optional[List[Bar]] = None
        logger.debug(
            f"Truncated model: step {format_fraction(self.step)}, {self.size} positions, "
            f"{self.layer_count} layers, dims {{{', '.join(f'{p}: {self.dim(p)}' for p in self.degrees)}}}"
        )

    def dim(self, p: int) -> int:
        return len(self.basis.get(p, ()))

    def _dense(self, p: int, vector: SparseVector) -> RationalVector:
        out = [Fraction(0)] * self.dim(p)
        for i, v in vector.items():
            out[i] = v
        return out

    def _reduce(self, p: int) -> _Reduction:
        """Column reduction of δ: V^p → V^{p+1}; the pivot of a column is its entry in the lowest layer."""
        position = self.position.get(p + 1, {})
        pivot_of: Dict[int, int] = {}
        images: Dict[int, SparseVector] = {}
        sources: Dict[int, SparseVector] = {}
        cycles: Dict[int, SparseVector] = {}
        for j in self.order[p]:
            image = dict(self.columns[p][j])
            source: SparseVector = {j: Fraction(1)}
            low = -1
            while image:
                low = max(image, key=position.__getitem__)
                other = pivot_of.get(low)
                if other is None:
                    break
                factor = image[low] / images[other][low]
                _axpy(image, -factor, images[other])
                _axpy(source, -factor, sources[other])
            if image:
                pivot_of[low] = j
                images[j] = image
                sources[j] = source
            else:
                cycles[j] = source
        return _Reduction(pivot_of, images, sources, cycles)

    def barcode(self) -> List[Bar]:
        """The summands of a filtered basis in which δ is a partial matching."""
        if self._bars is not None:
            return self._bars
        reductions = {p: self._reduce(p) for p in self.degrees}
        bars: List[Bar] = []
        hit: Dict[int, set] = {p: set() for p in self.degrees}
        for p in self.degrees:
            red = reductions[p]
            for low, j in red.pivot_of.items():
                bars.append(Bar(p=p, birth=self.layers[p][j], death=self.layers[p + 1][low],
                                source=self._dense(p, red.sources[j]), target=self._dense(p + 1, red.images[j])))
                hit[p + 1].add(low)
        for p in self.degrees:
            cycles = reductions[p].cycles
            for j in self.order[p]:
                if j in cycles and j not in hit[p]:
                    bars.append(Bar(p=p, birth=self.layers[p][j], death=None,
                                    source=self._dense(p, cycles[j]), target=None))
        logger.debug(f"Barcode: {sum(b.death is not None for b in bars)} pairs, "
                     f"{sum(b.death is None for b in bars)} essential classes")
        self._bars = bars
        return bars

    def page(self, r: int) -> SpectralPage:
        """E_r with δ_r: (p, q) → (p+1, q+r-1)."""
        bars = self.barcode()
        slots: Dict[Cell, List[Tuple[int, bool]]] = {
            (p, q): [] for p in self.degrees for q in range(self.layer_count)
        }
        for k, bar in enumerate(bars):
            if not bar.alive(r):
                continue
            slots[(bar.p, bar.birth)].append((k, True))
            if bar.death is not None:
                slots[(bar.p + 1, bar.death)].append((k, False))

        cells: Dict[Cell, PageCell] = {}
        for (p, q), entries in slots.items():
            reps = [bars[k].source if is_source else bars[k].target for k, is_source in entries]
            cells[(p, q)] = PageCell.model_construct(p=p, q=q, representatives=reps)

        differentials: Dict[Cell, List[RationalVector]] = {}
        for (p, q), entries in slots.items():
            if not entries or not self.dim(p + 1):
                continue
            target = slots.get((p + 1, q + r - 1), [])
            rows = {k: i for i, (k, is_source) in enumerate(target) if not is_source}
            matrix = [[Fraction(0)] * len(entries) for _ in target]
            for col, (k, is_source) in enumerate(entries):
                if is_source and bars[k].length == r - 1:
                    matrix[rows[k]][col] = Fraction(1)
            differentials[(p, q)] = matrix
        return SpectralPage(r=r, cells=cells, differentials=differentials, model=self)

    def graded_homology_ranks(self) -> Dict[Cell, int]:
        """dim F^qH^p/F^{q+1}H^p of the truncated complex, computed without pages.

        dim F^qH^p = dim(Z^p ∩ F^q) - dim(B^p ∩ F^q), where both terms come from
        ranks of the columns of δ in F^q and of the rows of δ below layer q.
        """
        ranks: Dict[Cell, int] = {}
        for p in self.degrees:
            deep_first = self.order[p]
            column_ranks = _prefix_ranks([self.columns[p][j] for j in deep_first])
            depth = [self.layers[p][j] for j in deep_first]

            incoming: List[SparseVector] = [{} for _ in range(self.dim(p))]
            for j, column in enumerate(self.columns.get(p - 1, [])):
                for i, v in column.items():
                    incoming[i][j] = v
            shallow_first = list(reversed(deep_first))
            row_ranks = _prefix_ranks([incoming[i] for i in shallow_first])
            boundary_rank = row_ranks[-1]

            def filtered(q: int) -> int:
                inside = sum(1 for n in depth if n >= q)
                below = self.dim(p) - inside
                cycles = inside - column_ranks[inside]
                boundaries = boundary_rank - row_ranks[below]
                return cycles - boundaries

            values = [filtered(q) for q in range(self.layer_count)] + [0]
            for q in range(self.layer_count):
                ranks[(p, q)] = values[q] - values[q + 1]
        return ranks


def _matrix_rank(matrix: List[RationalVector]) -> int:
    if not matrix or not matrix[0] or not any(any(row) for row in matrix):
        return 0
    return rank(matrix, len(matrix[0]))


def _compose(left: List[RationalVector], right: List[RationalVector]) -> List[RationalVector]:
    inner = len(right)
    cols = len(right[0]) if right else 0
    return [[sum((left[i][k] * right[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)]
            for i in range(len(left))]


def next_ranks(page: SpectralPage) -> Dict[Cell, int]:
    """Ranks of E_{r+1} from ker δ_r / im δ_r."""
    out: Dict[Cell, int] = {}
    for (p, q), cell in page.cells.items():
        outgoing = page.differentials.get((p, q), [])
        kernel = cell.rank - _matrix_rank(outgoing)
        incoming = page.differentials.get((p - 1, q - page.r + 1), [])
        out[(p, q)] = kernel - _matrix_rank(incoming)
    return out


def _check_page(page: SpectralPage) -> None:
    for (p, q), matrix in page.differentials.items():
        following = page.differentials.get(page.target(p, q))
        if not matrix or not following:
            continue
        product = _compose(following, matrix)
        if any(any(x != 0 for x in row) for row in product):
            raise CertificationError(f"δ_{page.r}∘δ_{page.r} ≠ 0 starting at ({p}, {q})")


def compute_pages(c: FilteredComplex, scheme: Optional[FiltrationScheme] = None,
                  r_max: Optional[int] = None) -> List[SpectralPage]:
    """Pages E_1 … E_{r_max} with their differentials.

    Raises:
        NonGapped: If the complex lowers the filtration or λ₀ is not below the gap.
        CapTooSmall: If r_max·λ₀ exceeds the cap.
    """
    scheme = scheme or default_scheme(c)
    _require_gapped(c, scheme)
    if r_max is None:
        r_max = math.floor(c.cap / scheme.lambda0)
    if r_max < 1 or r_max * scheme.lambda0 > c.cap:
        raise CapTooSmall(
            f"cap {format_fraction(c.cap)} does not cover {r_max} page(s) of step {format_fraction(scheme.lambda0)}"
        )
    model = TruncatedModel(c, scheme)
    pages: List[SpectralPage] = []
    for r in range(1, r_max + 1):
        page = model.page(r)
        _check_page(page)
        if pages:
            expected = next_ranks(pages[-1])
            if expected != page.ranks():
                raise CertificationError(f"E_{r} does not match the cohomology of δ_{r - 1}")
        logger.debug(f"E_{r}: total rank {sum(page.ranks().values())}")
        pages.append(page)
    return pages


def stabilization(pages: List[SpectralPage]) -> StabilizationResult:
    """Smallest r₀ with E_{r₀} equal to the graded cohomology of the truncated complex.

    Raises:
        NotStabilized: If the page after the last computed one is still not the limit.
    """
    if not pages:
        raise NotStabilized("no pages were computed")
    model: TruncatedModel = pages[0].model
    sequence = [page.ranks() for page in pages] + [next_ranks(pages[-1])]
    direct = model.graded_homology_ranks()
    if sequence[-1] != direct:
        raise NotStabilized(f"pages up to E_{len(pages) + 1} have not reached the limit; raise r_max or the cap")
    r0 = next(i + 1 for i, ranks in enumerate(sequence) if ranks == direct)
    logger.debug(f"Pages stabilize at r₀ = {r0}")
    return StabilizationResult(
        r0=r0,
        limit_ranks=direct,
        graded_homology_ranks=direct,
        novikov_ranks=novikov_homology_ranks(model.complex),
        lambda0=model.scheme.lambda0,
    )


def injection_check(pages: List[SpectralPage], p: int, q: int, r: int) -> bool:
    """Whether E_{r+1}^{p,q} → E_r^{p,q} is an injection (guaranteed when q - r + 2 ≤ 0)."""
    page = pages[r - 1]
    incoming = page.differentials.get((p - 1, q - r + 1), [])
    following = next_ranks(page).get((p, q), 0)
    injective = _matrix_rank(incoming) == 0 and following <= page.rank(p, q)
    if q - r + 2 <= 0 and not injective:
        logger.warning(f"E_{r + 1}^{{{p},{q}}} does not inject into E_{r}^{{{p},{q}}}")
    return injective


def euler_characteristic(page: SpectralPage) -> int:
    return sum((-1) ** (p % 2) * rank for (p, _), rank in page.ranks().items())


def shift_page(page: SpectralPage, k: int) -> SpectralPage:
    """Multiplication by e^k: the cell (p, q) moves to (p + 2k, q)."""
    cells = {
        (p + 2 * k, q): cell.model_copy(update={"p": p + 2 * k}) for (p, q), cell in page.cells.items()
    }
    differentials = {(p + 2 * k, q): matrix for (p, q), matrix in page.differentials.items()}
    return SpectralPage(r=page.r, cells=cells, differentials=differentials, model=page.model)


def periodic_ranks(page: SpectralPage) -> Dict[Cell, int]:
    """Ranks of the e-periodic page, keyed by (p mod 2, q)."""
    out: Dict[Cell, int] = {}
    for (p, q), r in page.ranks().items():
        out[(p % 2, q)] = out.get((p % 2, q), 0) + r
    return out
