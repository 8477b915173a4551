"""Finite topological spaces stored through their specialization preorder.

A finite space is determined by the minimal open set of each point.  We keep
those as Python ints used as bitsets: bit ``y`` of ``ups[x]`` is set iff ``y``
lies in the smallest open set containing ``x``.  A subset is open iff it
contains the minimal open set of each of its points.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    InvalidPartition,
    NotATopology,
    NotContinuous,
    NotSurjective,
    SizeLimit,
)

DEFAULT_SIZE_LIMIT = 5000
HOMEO_LIMIT = 6


def size_limit(limit: int | None = None) -> int:
    """Carrier bound: explicit argument, else $QTOP_SIZE_LIMIT, else 5000."""
    if limit is not None:
        return limit
    env = os.environ.get("QTOP_SIZE_LIMIT")
    return int(env) if env else DEFAULT_SIZE_LIMIT


def check_size(count: int, limit: int | None = None, what: str = "carrier") -> None:
    bound = size_limit(limit)
    if count > bound:
        raise SizeLimit(f"{what} of {count} points exceeds the bound {bound}")


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


@dataclass(frozen=True)
class FinSpace:
    labels: tuple[str, ...]
    ups: tuple[int, ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(self.ups) != n:
            raise NotATopology("one minimal open set per point is required")
        full = (1 << n) - 1
        for x, u in enumerate(self.ups):
            if u & ~full:
                raise NotATopology(f"minimal open set of point {x} leaves the carrier")
            if not u >> x & 1:
                raise NotATopology(f"specialization relation is not reflexive at {x}")
        for x, u in enumerate(self.ups):
            for y in bits(u):
                if self.ups[y] & ~u:
                    raise NotATopology(
                        f"specialization relation is not transitive at ({x}, {y})"
                    )

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @property
    def upset(self) -> list[list[bool]]:
        return [[bool(u >> y & 1) for y in range(self.n)] for u in self.ups]

    def minimal_open(self, x: int) -> frozenset[int]:
        return frozenset(bits(self.ups[x]))

    def is_open(self, mask: int) -> bool:
        return all(self.ups[x] & ~mask == 0 for x in bits(mask))

    def is_closed(self, mask: int) -> bool:
        return self.is_open(self.full & ~mask)

    def open_hull(self, mask: int) -> int:
        """Smallest open set containing ``mask``."""
        out = 0
        for x in bits(mask):
            out |= self.ups[x]
        return out

    def closure(self, mask: int) -> int:
        """x is in the closure of S iff the minimal open set of x meets S."""
        return to_mask(x for x, u in enumerate(self.ups) if u & mask)

    def relabel(self, labels: Sequence[str]) -> FinSpace:
        return FinSpace(tuple(str(l) for l in labels), self.ups)

    def __repr__(self):
        return f"FinSpace(n={self.n}, labels={list(self.labels)})"


def make_space(labels: Sequence, ups: Sequence[int]) -> FinSpace:
    return FinSpace(tuple(str(l) for l in labels), tuple(ups))


def space_from_opens(labels: Sequence, opens: Iterable[Iterable[int]]) -> FinSpace:
    n = len(labels)
    full = (1 << n) - 1
    family = set()
    for o in opens:
        m = 0
        for p in o:
            if not 0 <= p < n:
                raise NotATopology(f"open set mentions point {p} outside the carrier")
            m |= 1 << p
        family.add(m)
    if 0 not in family:
        raise NotATopology("the empty set is not listed as open")
    if full not in family:
        raise NotATopology("the full carrier is not listed as open")
    # finite family: closure under pairwise union and intersection suffices
    ordered = sorted(family)
    for a, b in itertools.combinations(ordered, 2):
        for combined, op in ((a | b, "union"), (a & b, "intersection")):
            if combined not in family:
                raise NotATopology(
                    f"{op} of {sorted(bits(a))} and {sorted(bits(b))} is not open"
                )
    ups = []
    for x in range(n):
        u = full
        for m in ordered:
            if m >> x & 1:
                u &= m
        ups.append(u)
    return make_space(labels, ups)


def space_from_upset(labels: Sequence, upset: Sequence[Sequence[bool]]) -> FinSpace:
    n = len(labels)
    if len(upset) != n or any(len(row) != n for row in upset):
        raise NotATopology("upset must be a square matrix matching the labels")
    return make_space(labels, [to_mask(y for y in range(n) if row[y]) for row in upset])


def discrete(n: int) -> FinSpace:
    return make_space(range(n), [1 << x for x in range(n)])


def indiscrete(n: int) -> FinSpace:
    full = (1 << n) - 1
    return make_space(range(n), [full] * n)


def point() -> FinSpace:
    return discrete(1)


def open_masks(s: FinSpace) -> list[int]:
    """All open sets as bitmasks, sorted.

    Backtracking over points: taking x forces its minimal open set in,
    dropping x forces out every point whose minimal open set contains x.
    """
    n = s.n
    downs = [to_mask(y for y in range(n) if s.ups[y] >> x & 1) for x in range(n)]
    out = []

    def walk(x, inside, outside):
        while x < n and (inside | outside) >> x & 1:
            x += 1
        if x == n:
            out.append(inside)
            return
        u = s.ups[x]
        if not u & outside:
            walk(x + 1, inside | u, outside)
        d = downs[x]
        if not d & inside:
            walk(x + 1, inside, outside | d)

    walk(0, 0, 0)
    return sorted(out)


def open_sets(s: FinSpace) -> set[frozenset[int]]:
    return {frozenset(bits(m)) for m in open_masks(s)}


@dataclass(frozen=True)
class FinMap:
    domain: FinSpace
    codomain: FinSpace
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.domain.n:
            raise ValueError("map table must have one entry per domain point")
        m = self.codomain.n
        if any(not 0 <= v < m for v in self.table):
            raise ValueError("map table points outside the codomain")

    def image(self, mask: int) -> int:
        return to_mask(self.table[x] for x in bits(mask))

    def preimage(self, mask: int) -> int:
        return to_mask(x for x, v in enumerate(self.table) if mask >> v & 1)

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.codomain.n

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def fibers(self) -> list[int]:
        out = [0] * self.codomain.n
        for x, v in enumerate(self.table):
            out[v] |= 1 << x
        return out


def make_map(domain: FinSpace, codomain: FinSpace, table: Sequence[int]) -> FinMap:
    return FinMap(domain, codomain, tuple(table))


def identity_map(s: FinSpace, target: FinSpace | None = None) -> FinMap:
    """Identity on carriers; ``target`` may carry a different topology."""
    target = s if target is None else target
    if target.n != s.n:
        raise ValueError("identity carrier map needs equal point counts")
    return FinMap(s, target, tuple(range(s.n)))


def is_continuous(f: FinMap) -> bool:
    # preorder preservation: f maps U_x into U_f(x)
    cu = f.codomain.ups
    for x, u in enumerate(f.domain.ups):
        if f.image(u) & ~cu[f.table[x]]:
            return False
    return True


def is_homeomorphism(f: FinMap) -> bool:
    if not (f.is_injective() and f.is_surjective()):
        return False
    return all(
        f.image(u) == f.codomain.ups[f.table[x]] for x, u in enumerate(f.domain.ups)
    )


def _closure_ups(rel: list[int]) -> list[int]:
    """Reflexive-transitive closure of a relation given as bitset rows."""
    out = list(rel)
    m = len(out)
    for i in range(m):
        out[i] |= 1 << i
    for k in range(m):
        bit = 1 << k
        row = out[k]
        for i in range(m):
            if out[i] & bit:
                out[i] |= row
    return out


def final_ups(domain: FinSpace, table: Sequence[int], m: int) -> list[int]:
    """Minimal open sets of the final topology on ``m`` points along ``table``.

    V is open in the final topology iff its preimage is up-closed, so the
    minimal open set of a point is everything reachable from its fiber
    through the pushed-forward specialization relation.
    """
    rel = [0] * m
    for x, u in enumerate(domain.ups):
        t = table[x]
        for y in bits(u):
            rel[t] |= 1 << table[y]
    return _closure_ups(rel)


@dataclass(frozen=True)
class Partition:
    blocks: tuple[tuple[int, ...], ...]

    def validate(self, n: int) -> None:
        seen = set()
        for b in self.blocks:
            if not b:
                raise InvalidPartition("empty block")
            for p in b:
                if not 0 <= p < n:
                    raise InvalidPartition(f"point {p} outside the carrier")
                if p in seen:
                    raise InvalidPartition(f"point {p} lies in two blocks")
                seen.add(p)
        if len(seen) != n:
            missing = sorted(set(range(n)) - seen)
            raise InvalidPartition(f"blocks miss points {missing}")

    def table(self, n: int) -> list[int]:
        out = [0] * n
        for i, b in enumerate(self.blocks):
            for p in b:
                out[p] = i
        return out

    @classmethod
    def from_table(cls, table: Sequence[int], m: int | None = None) -> Partition:
        m = max(table, default=-1) + 1 if m is None else m
        blocks = [[] for _ in range(m)]
        for x, v in enumerate(table):
            blocks[v].append(x)
        return cls(tuple(tuple(b) for b in blocks))

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> Partition:
        return cls(tuple(tuple(sorted(b)) for b in blocks))


def _block_label(s: FinSpace, block: Sequence[int]) -> str:
    if len(block) == 1:
        return s.labels[block[0]]
    return "{" + ",".join(s.labels[p] for p in block) + "}"


def quotient_space(
    s: FinSpace, p: Partition, labels: Sequence[str] | None = None
) -> tuple[FinSpace, FinMap]:
    """Block space with the final topology, plus the projection."""
    p.validate(s.n)
    table = p.table(s.n)
    m = len(p.blocks)
    if labels is None:
        labels = [_block_label(s, b) for b in p.blocks]
    q = make_space(labels, final_ups(s, table, m))
    return q, FinMap(s, q, tuple(table))


def is_quotient_map(f: FinMap) -> bool:
    if not f.is_surjective():
        raise NotSurjective("map misses codomain points")
    if not is_continuous(f):
        raise NotContinuous("map is not continuous")
    return tuple(final_ups(f.domain, f.table, f.codomain.n)) == f.codomain.ups


def product(a: FinSpace, b: FinSpace, limit: int | None = None) -> FinSpace:
    """Product topology; minimal open of (x, y) is U_x x U_y."""
    na, nb = a.n, b.n
    check_size(na * nb, limit, "product")
    ups = []
    for i in range(na):
        for j in range(nb):
            m = 0
            row = b.ups[j]
            for k in bits(a.ups[i]):
                m |= row << (k * nb)
            ups.append(m)
    labels = [f"({la},{lb})" for la in a.labels for lb in b.labels]
    return make_space(labels, ups)


def power(a: FinSpace, n: int, limit: int | None = None) -> FinSpace:
    """n-fold product; points ordered lexicographically, labels are tuples.

    ``n = 0`` yields the one-point space (the empty tuple).
    """
    if n < 0:
        raise ValueError("power exponent must be nonnegative")
    check_size(a.n**n, limit, "power")
    ups = [1]
    coords: list[tuple[int, ...]] = [()]
    for _ in range(n):
        ups = [
            _shift_or(ups[i], a.ups[j], a.n)
            for i in range(len(coords))
            for j in range(a.n)
        ]
        coords = [c + (j,) for c in coords for j in range(a.n)]
    labels = ["(" + ",".join(a.labels[j] for j in c) + ")" for c in coords]
    return make_space(labels, ups)


def _shift_or(left: int, right: int, nb: int) -> int:
    m = 0
    for k in bits(left):
        m |= right << (k * nb)
    return m


def coproduct(a: FinSpace, b: FinSpace) -> FinSpace:
    shift = a.n
    ups = list(a.ups) + [u << shift for u in b.ups]
    if set(a.labels) & set(b.labels):
        labels = [f"{l}@0" for l in a.labels] + [f"{l}@1" for l in b.labels]
    else:
        labels = list(a.labels) + list(b.labels)
    return make_space(labels, ups)


def coproduct_many(spaces: Sequence[FinSpace], limit: int | None = None) -> FinSpace:
    check_size(sum(s.n for s in spaces), limit, "coproduct")
    ups = []
    labels = []
    shift = 0
    for i, s in enumerate(spaces):
        ups.extend(u << shift for u in s.ups)
        labels.extend(s.labels)
        shift += s.n
    if len(set(labels)) != len(labels):
        labels = [f"{l}@{i}" for i, s in enumerate(spaces) for l in s.labels]
    return make_space(labels, ups)


def product_map(f: FinMap, g: FinMap, limit: int | None = None) -> FinMap:
    dom = product(f.domain, g.domain, limit)
    cod = product(f.codomain, g.codomain, limit)
    m = g.codomain.n
    table = [f.table[i] * m + g.table[j] for i in range(f.domain.n) for j in range(g.domain.n)]
    return FinMap(dom, cod, tuple(table))


def power_map(f: FinMap, n: int, limit: int | None = None) -> FinMap:
    dom = power(f.domain, n, limit)
    cod = power(f.codomain, n, limit)
    m = f.codomain.n
    table = []
    for c in itertools.product(f.table, repeat=n):
        v = 0
        for t in c:
            v = v * m + t
        table.append(v)
    return FinMap(dom, cod, tuple(table))


def coproduct_map(f: FinMap, g: FinMap) -> FinMap:
    dom = coproduct(f.domain, g.domain)
    cod = coproduct(f.codomain, g.codomain)
    shift = f.codomain.n
    return FinMap(dom, cod, f.table + tuple(t + shift for t in g.table))


def path_components(s: FinSpace) -> Partition:
    """Components of the comparability graph of the specialization preorder.

    If y is in the minimal open set of x then t -> (x if t < 1 else y) is a
    path from y to x, so order-connected points are path-connected; a union
    of comparability components is clopen, so the converse also holds.
    """
    parent = list(range(s.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, u in enumerate(s.ups):
        for y in bits(u):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, list[int]] = {}
    for x in range(s.n):
        groups.setdefault(find(x), []).append(x)
    return Partition(tuple(tuple(groups[r]) for r in sorted(groups)))


def pi0_top(s: FinSpace) -> tuple[FinSpace, FinMap]:
    """Path-component space and the projection P_X onto it."""
    return quotient_space(s, path_components(s))


def induced_on_components(f: FinMap) -> FinMap:
    """pi0(f): components of the domain to components of the codomain."""
    _, px = pi0_top(f.domain)
    py_space, py = pi0_top(f.codomain)
    table = [None] * px.codomain.n
    for x, c in enumerate(px.table):
        target = py.table[f.table[x]]
        if table[c] is None:
            table[c] = target
        elif table[c] != target:
            raise NotContinuous("map splits a path component")
    return FinMap(px.codomain, py_space, tuple(table))


@dataclass(frozen=True)
class Separation:
    t0: bool
    t1: bool
    hausdorff: bool
    discrete: bool
    indiscrete: bool
    h_prime: bool


def h_prime_violations(s: FinSpace) -> list[tuple[int, int]]:
    """Ordered pairs (a, b), a != b, failing property (H').

    Shrinking U, V or W only helps, so it is enough to test the minimal open
    sets: (a, b) fails iff some y has U_y meeting both U_a and U_b.
    """
    out = []
    for a, b in itertools.permutations(range(s.n), 2):
        ua, ub = s.ups[a], s.ups[b]
        if any(u & ua and u & ub for u in s.ups):
            out.append((a, b))
    return out


def separation(s: FinSpace) -> Separation:
    n = s.n
    t0 = all(
        not (s.ups[x] >> y & 1 and s.ups[y] >> x & 1)
        for x, y in itertools.combinations(range(n), 2)
    )
    t1 = all(u == 1 << x for x, u in enumerate(s.ups))
    # minimal open sets are the smallest neighbourhoods, so testing them is exhaustive
    hausdorff = all(
        not s.ups[x] & s.ups[y] for x, y in itertools.combinations(range(n), 2)
    )
    assert hausdorff == t1, "finite Hausdorff space must be T1"
    return Separation(
        t0=t0,
        t1=t1,
        hausdorff=hausdorff,
        discrete=t1,
        indiscrete=all(u == s.full for u in s.ups),
        h_prime=not h_prime_violations(s),
    )


def are_homeomorphic(
    a: FinSpace, b: FinSpace, limit: int = HOMEO_LIMIT
) -> tuple[int, ...] | None:
    """A homeomorphism a -> b as a point table, or None."""
    if max(a.n, b.n) > limit:
        raise SizeLimit(f"homeomorphism search is capped at {limit} points")
    n = a.n
    if n != b.n:
        return None
    deg_a = [bin(u).count("1") for u in a.ups]
    deg_b = [bin(u).count("1") for u in b.ups]
    if sorted(deg_a) != sorted(deg_b):
        return None
    table = [-1] * n
    used = [False] * n

    def extend(x):
        if x == n:
            return True
        for y in range(n):
            if used[y] or deg_b[y] != deg_a[x]:
                continue
            ok = True
            for z in range(x):
                w = table[z]
                if (a.ups[x] >> z & 1) != (b.ups[y] >> w & 1) or (
                    a.ups[z] >> x & 1
                ) != (b.ups[w] >> y & 1):
                    ok = False
                    break
            if ok:
                table[x] = y
                used[y] = True
                if extend(x + 1):
                    return True
                used[y] = False
        table[x] = -1
        return False

    return tuple(table) if extend(0) else None
