from __future__ import annotations

import hashlib
import random
from fractions import Fraction
from typing import Sequence

from riesz_lab.lattice.element import LatticeElement
from riesz_lab.pwl.function import PwlFunc
from riesz_lab.spaces.tags import Element, ProductElement, SpaceTag

# {k/8 : -16 <= k <= 16}
DEFAULT_GRID: tuple[Fraction, ...] = tuple(Fraction(k, 8) for k in range(-16, 17))
PWL_T_GRID: tuple[Fraction, ...] = tuple(Fraction(j, 64) for j in range(1, 64))


def derive_seed(seed: int, *labels: object) -> int:
    """A 64-bit seed derived from ``seed`` and ``labels``, stable across platforms and runs."""
    digest = hashlib.sha256(":".join([str(seed), *map(str, labels)]).encode()).digest()
    return int.from_bytes(digest[:8], "big")


class RationalSampler:
    """Seeded sampler of exact rational scalars, vectors and PWL functions.

    Args:
        seed: 64-bit seed; two samplers with the same seed draw the same sequence
        grid: scalars are drawn from this finite set
    """

    def __init__(self, seed: int, grid: Sequence[Fraction] = DEFAULT_GRID):
        self.seed = seed
        self.grid = tuple(grid)
        self.positive_grid = tuple(q for q in self.grid if q >= 0)
        self._rng = random.Random(seed)

    def scalar(self, positive: bool = False) -> Fraction:
        return self._rng.choice(self.positive_grid if positive else self.grid)

    def unit_scalar(self) -> Fraction:
        """A rational in [-1, 1]."""
        return Fraction(self._rng.randint(-16, 16), 16)

    def integer(self, low: int, high: int) -> int:
        return self._rng.randint(low, high)

    def element(self, dim: int, positive: bool = False) -> LatticeElement:
        return LatticeElement(self.scalar(positive) for _ in range(dim))

    def pwl(self, max_pieces: int = 4, positive: bool = False) -> PwlFunc:
        inner = sorted(self._rng.sample(PWL_T_GRID, self._rng.randint(0, max_pieces - 1)))
        ts = [Fraction(0), *inner, Fraction(1)]
        return PwlFunc((t, self.scalar(positive)) for t in ts)

    def sample(self, tag: SpaceTag, positive: bool = False) -> Element:
        if tag.is_product:
            return ProductElement(self.sample(f, positive) for f in tag.factors)
        if tag.is_pwl:
            return self.pwl(positive=positive)
        return self.element(tag.dim, positive)
