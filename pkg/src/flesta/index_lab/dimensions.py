"""Index formulas for moduli spaces: SFT buildings in T*Sⁿ and holomorphic discs."""

import logging
from fractions import Fraction
from typing import Literal, Optional, Sequence

from ..novikov import format_fraction
from .models import DiscDimension, IndexFormulaInput, SftDimension

logger = logging.getLogger(__name__)


def cz_from_morse(morse: int, dim_r_sim: int) -> Fraction:
    """μ_CZ = -Morse + dim ℛ_sim / 2 for a Morse-Bott family of Reeb orbits.

    Substituting this into the CZ form of the index does not give the
    Morse-Bott form; both formulas are kept as stated.
    """
    return Fraction(-morse) + Fraction(dim_r_sim, 2)


def sft_dimension(inp: IndexFormulaInput, mode: Literal["CZ", "MorseBott"] = "MorseBott") -> SftDimension:
    """Virtual dimension of the SFT moduli space.

    CZ:        (-μ_CZ + n/2) + (n - 3) + 2c₁
    MorseBott: -Morse(γ) + (n - 3) + 2c₁
    """
    n = inp.n
    if mode == "CZ":
        mu = inp.mu_cz
        if mu is None:
            if inp.morse is None:
                raise ValueError("CZ mode needs mu_cz or a Morse index to convert")
            mu = cz_from_morse(inp.morse, inp.dim_r_sim if inp.dim_r_sim is not None else n)
        dimension = (-mu + Fraction(n, 2)) + (n - 3) + 2 * inp.c1
    elif mode == "MorseBott":
        if inp.morse is None:
            raise ValueError("MorseBott mode needs a Morse index")
        dimension = Fraction(-inp.morse + (n - 3) + 2 * inp.c1)
    else:
        raise ValueError(f"unknown mode '{mode}'")
    verdict = "empty-for-generic-J" if dimension < 0 else "nonnegative"
    logger.debug(f"SFT dimension ({mode}, n={n}) = {format_fraction(dimension)}: {verdict}")
    return SftDimension(mode=mode, dimension=dimension, verdict=verdict)


def disc_moduli_dimension(n: int, mu: int, k: int, output_degree: Optional[int] = None,
                          input_degrees: Optional[Sequence[int]] = None) -> DiscDimension:
    """dim = n + μ(β) - 3 + (k + 1) = n + μ(β) + k - 2.

    When the dimension is zero and degrees of the corners are given, also
    checks μ(out) - 1 = 1 + Σ(μ(in_i) - 1).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    dimension = n + mu + k - 2
    identity = None
    if dimension == 0 and output_degree is not None and input_degrees is not None:
        identity = output_degree - 1 == 1 + sum(d - 1 for d in input_degrees)
    return DiscDimension(n=n, mu=mu, k=k, dimension=dimension, degree_identity=identity)
