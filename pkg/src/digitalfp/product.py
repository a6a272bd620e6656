"""Cartesian products of digital images under NP_u adjacency."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import NPU, DigitalImage, Point
from .errors import InputError
from .maps import DigitalMap


@dataclass(frozen=True)
class ProductImage:
    """A product of ``factors`` carried by an ordinary DigitalImage.

    Carrier points are the concatenated factor coordinates; ``arity`` records
    how to split them back.
    """

    factors: tuple[DigitalImage, ...]
    u: int
    carrier: DigitalImage

    @property
    def arity(self) -> tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    def split(self, p: Point) -> list[Point]:
        return self.carrier.adjacency.split(p)

    def join(self, parts: Sequence[Point]) -> Point:
        return tuple(itertools.chain.from_iterable(parts))


def build_product(factors: Sequence[DigitalImage], u: int) -> ProductImage:
    factors = tuple(factors)
    if not factors:
        raise InputError("product needs at least one factor")
    if not 1 <= u <= len(factors):
        raise InputError(f"need 1 <= u <= {len(factors)}, got u={u}")
    rel = NPU(u, tuple(f.adjacency for f in factors))
    pts = [tuple(itertools.chain.from_iterable(combo))
           for combo in itertools.product(*(f.points for f in factors))]
    return ProductImage(factors, u, DigitalImage(pts, rel))


def product_map(maps: Sequence[DigitalMap], prod_dom: ProductImage,
                prod_cod: ProductImage) -> DigitalMap:
    """(x_1, ..., x_v) -> (f_1(x_1), ..., f_v(x_v))."""
    v = len(prod_dom.factors)
    if len(maps) != v or len(prod_cod.factors) != v:
        raise InputError(f"arity mismatch: {len(maps)} maps, {v} domain factors, "
                         f"{len(prod_cod.factors)} codomain factors")
    for i, (f, a, b) in enumerate(zip(maps, prod_dom.factors, prod_cod.factors)):
        if f.domain != a or f.codomain != b:
            raise InputError(f"map {i} does not go from domain factor {i} to codomain factor {i}")

    def fn(p: Point) -> Point:
        return prod_cod.join([f(x) for f, x in zip(maps, prod_dom.split(p))])

    return DigitalMap.from_function(prod_dom.carrier, prod_cod.carrier, fn)


def projection(prod: ProductImage, j: int) -> DigitalMap:
    """The projection onto factor ``j`` (1-based)."""
    v = len(prod.factors)
    if not 1 <= j <= v:
        raise InputError(f"projection index must be in 1..{v}, got {j}")
    return DigitalMap.from_function(prod.carrier, prod.factors[j - 1],
                                    lambda p: prod.split(p)[j - 1])
