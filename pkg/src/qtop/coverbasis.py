"""Neighbourhoods generated by pointwise open covers along a quotient map.

For a quotient map q: Y -> Z, a point z and a cover assigning an open
U^y to every y in Y, the generated neighbourhood is the fixpoint of

    O^0 = {z},   O^k = q( union of U^y over y in q^-1(O^(k-1)) ).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BaseMismatch, NotQuotient
from .finspace import FinMap, FinSpace, bits, is_quotient_map, open_masks, to_mask


@dataclass(frozen=True)
class PointwiseCover:
    base: FinSpace
    member: tuple[int, ...]

    def __post_init__(self):
        if len(self.member) != self.base.n:
            raise ValueError("a cover needs one open set per point")
        for y, m in enumerate(self.member):
            if not m >> y & 1:
                raise ValueError(f"cover member of point {y} does not contain it")
            if not self.base.is_open(m):
                raise ValueError(f"cover member of point {y} is not open")

    def of(self, mask: int) -> int:
        """Union of the members over the points of ``mask``."""
        out = 0
        for y in bits(mask):
            out |= self.member[y]
        return out


def make_cover(base: FinSpace, members: Sequence) -> PointwiseCover:
    """Members may be bitmasks or iterables of point indices."""
    masks = tuple(m if isinstance(m, int) else to_mask(m) for m in members)
    return PointwiseCover(base, masks)


def minimal_cover(s: FinSpace) -> PointwiseCover:
    return PointwiseCover(s, s.ups)


def maximal_cover(s: FinSpace) -> PointwiseCover:
    return PointwiseCover(s, (s.full,) * s.n)


def meet(u: PointwiseCover, v: PointwiseCover) -> PointwiseCover:
    if u.base != v.base:
        raise BaseMismatch("covers live on different spaces")
    return PointwiseCover(u.base, tuple(a & b for a, b in zip(u.member, v.member)))


def refine(u: PointwiseCover, v: PointwiseCover) -> bool:
    """True iff v is pointwise finer than u."""
    if u.base != v.base:
        raise BaseMismatch("covers live on different spaces")
    return all(b & ~a == 0 for a, b in zip(u.member, v.member))


def basis_cover(q: FinMap, target: int) -> PointwiseCover:
    """Cover whose generated neighbourhood lies inside the open set ``target``."""
    pre = q.preimage(target)
    full = q.domain.full
    return PointwiseCover(
        q.domain,
        tuple(pre if target >> q.table[y] & 1 else full for y in range(q.domain.n)),
    )


def neighborhood_chain(q: FinMap, z: int, u: PointwiseCover) -> list[int]:
    """The iterates O^0, O^1, ... up to and including the fixpoint."""
    if u.base != q.domain:
        raise BaseMismatch("cover does not live on the domain of the map")
    chain = [1 << z]
    cap = q.codomain.n
    for _ in range(cap):
        nxt = q.image(u.of(q.preimage(chain[-1])))
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)
    # each step before the fixpoint adds a point, so |Z| steps always suffice
    assert chain[-1] == q.image(u.of(q.preimage(chain[-1]))), "iteration cap hit"
    return chain


def _require_quotient(q: FinMap) -> None:
    if not is_quotient_map(q):
        raise NotQuotient("map does not carry the final topology")


def generate_neighborhood(
    q: FinMap, z: int, u: PointwiseCover, check: bool = True
) -> frozenset[int]:
    if check:
        _require_quotient(q)
    return frozenset(bits(neighborhood_chain(q, z, u)[-1]))


def separated_by_cover(
    q: FinMap, z1: int, z2: int, u: PointwiseCover, check: bool = True
) -> bool:
    if z1 == z2:
        raise ValueError("separation needs two distinct points")
    if check:
        _require_quotient(q)
    a = neighborhood_chain(q, z1, u)[-1]
    b = neighborhood_chain(q, z2, u)[-1]
    return not a & b


def all_covers(s: FinSpace) -> Iterator[PointwiseCover]:
    """Every pointwise cover built from the open-set family."""
    opens = open_masks(s)
    choices = [[m for m in opens if m >> y & 1] for y in range(s.n)]
    for members in itertools.product(*choices):
        yield PointwiseCover(s, members)


def exists_separating_cover(q: FinMap, z1: int, z2: int) -> bool:
    """Exhaustive search over :func:`all_covers` of the domain."""
    _require_quotient(q)
    return any(
        separated_by_cover(q, z1, z2, u, check=False) for u in all_covers(q.domain)
    )
