"""Named example spaces, enumeration of small topologies, classification."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import SizeLimit, UnknownName
from .finspace import (
    FinSpace,
    bits,
    discrete,
    indiscrete,
    make_space,
    point,
    separation,
)
from . import freetop

BUILTIN_NAMES = (
    "point",
    "discrete(n)",
    "indiscrete(n)",
    "sierpinski",
    "chain(n)",
    "fence(n)",
    "pseudocircle",
    "nonhausdorff_grid(m)",
)

RAW_LIMIT = 4
PRUNED_LIMIT = 5


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    space: FinSpace
    notes: str = ""


def chain(n: int) -> FinSpace:
    """Linear order; the minimal open set of i is {i, ..., n-1}."""
    full = (1 << n) - 1
    return make_space(range(n), [full & ~((1 << i) - 1) for i in range(n)])


def sierpinski() -> FinSpace:
    return chain(2)


def fence(n: int) -> FinSpace:
    """Zigzag: even points are open, odd point i has minimal open {i-1, i, i+1}."""
    ups = []
    for i in range(n):
        if i % 2 == 0:
            ups.append(1 << i)
        else:
            ups.append(sum(1 << j for j in (i - 1, i, i + 1) if 0 <= j < n))
    return make_space(range(n), ups)


def pseudocircle() -> FinSpace:
    # a, b open; c and d each see both
    return make_space(["a", "b", "c", "d"], [0b0001, 0b0010, 0b0111, 0b1011])


def nonhausdorff_grid(m: int) -> FinSpace:
    """Finite model of a space whose column points meet both tails.

    Points: a, b, (r_i, 0) and (r_i, +-s_j) for 1 <= i, j <= m.
    """
    labels = ["a", "b"]
    col = {}
    tail = {}
    for i in range(1, m + 1):
        col[i] = len(labels)
        labels.append(f"r{i}:0")
        for j in range(1, m + 1):
            for sign, tag in ((1, "+"), (-1, "-")):
                tail[i, j, sign] = len(labels)
                labels.append(f"r{i}:{tag}s{j}")
    ups = [0] * len(labels)
    for idx in tail.values():
        ups[idx] = 1 << idx
    for i in range(1, m + 1):
        u = 1 << col[i]
        for j in range(1, m + 1):
            u |= 1 << tail[i, j, 1] | 1 << tail[i, j, -1]
        ups[col[i]] = u
    ups[0] = 1 | sum(1 << idx for (i, j, s), idx in tail.items() if s > 0)
    ups[1] = 2 | sum(1 << idx for (i, j, s), idx in tail.items() if s < 0)
    return make_space(labels, ups)


_PARAM = {
    "discrete": discrete,
    "indiscrete": indiscrete,
    "chain": chain,
    "fence": fence,
    "nonhausdorff_grid": nonhausdorff_grid,
}
_PLAIN = {"point": point, "sierpinski": sierpinski, "pseudocircle": pseudocircle}


def builtin(name: str) -> FinSpace:
    """Look up ``point``, ``sierpinski``, ``discrete(3)``, ``chain(4)``, ..."""
    name = name.strip()
    if name in _PLAIN:
        return _PLAIN[name]()
    m = re.fullmatch(r"(\w+)\((\d+)\)", name)
    if m and m.group(1) in _PARAM:
        arg = int(m.group(2))
        if arg < 1:
            raise UnknownName(f"{name}: parameter must be positive")
        return _PARAM[m.group(1)](arg)
    raise UnknownName(f"unknown builtin space {name!r}; known: {', '.join(BUILTIN_NAMES)}")


def standard_catalog() -> list[CatalogEntry]:
    names = [
        ("point", "one point"),
        ("discrete(2)", "two isolated points"),
        ("discrete(3)", ""),
        ("indiscrete(2)", ""),
        ("indiscrete(3)", ""),
        ("sierpinski", "open point 1, closed point 0"),
        ("chain(3)", ""),
        ("fence(3)", ""),
        ("fence(4)", ""),
        ("pseudocircle", "finite model of the circle"),
        ("nonhausdorff_grid(1)", "fails (H')"),
        ("nonhausdorff_grid(2)", "fails (H')"),
    ]
    return [CatalogEntry(n, builtin(n), notes) for n, notes in names]


def _preorder_ups(n: int) -> list[tuple[int, ...]]:
    """All reflexive transitive relations, as minimal-open bitsets.

    Points are assigned one at a time; a partial assignment is kept only if
    it is transitive on the points assigned so far and does not contradict
    what those points already force on later ones.
    """
    out = []
    ups = [0] * n
    cands = [
        [m for m in range(1 << n) if m >> x & 1] for x in range(n)
    ]

    def consistent(x):
        ux = ups[x]
        for z in range(x):
            uz = ups[z]
            if uz >> x & 1 and ux & ~uz:
                return False
            if ux >> z & 1 and uz & ~ux:
                return False
        return True

    def walk(x):
        if x == n:
            # transitivity through points not yet checked pairwise
            if all(ups[y] & ~u == 0 for u in ups for y in bits(u)):
                out.append(tuple(ups))
            return
        for m in cands[x]:
            ups[x] = m
            if consistent(x):
                walk(x + 1)
        ups[x] = 0

    walk(0)
    return out


def _permute(ups: tuple[int, ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    """Relation carried along the point bijection x -> perm[x]."""
    out = [0] * len(ups)
    for x, u in enumerate(ups):
        out[perm[x]] = sum(1 << perm[y] for y in bits(u))
    return tuple(out)


def _matrix_key(ups: tuple[int, ...]) -> tuple[int, ...]:
    n = len(ups)
    return tuple(u >> y & 1 for u in ups for y in range(n))


def canonical_form(ups: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least relation matrix over all relabellings."""
    n = len(ups)
    return min(
        (_permute(ups, p) for p in itertools.permutations(range(n))), key=_matrix_key
    )


def orbit_size(ups: tuple[int, ...]) -> int:
    n = len(ups)
    return len({_permute(ups, p) for p in itertools.permutations(range(n))})


def enumerate_topologies(n: int, up_to_homeo: bool = False) -> list[FinSpace]:
    bound = PRUNED_LIMIT if up_to_homeo else RAW_LIMIT
    if n > bound or n < 0:
        raise SizeLimit(f"enumeration supports n <= {bound} here")
    raw = _preorder_ups(n)
    if not up_to_homeo:
        return [make_space(range(n), u) for u in raw]
    seen = set()
    classes = []
    orbit_total = 0
    for u in raw:
        if u in seen:
            continue
        orbit = {_permute(u, p) for p in itertools.permutations(range(n))}
        seen |= orbit
        orbit_total += len(orbit)
        classes.append(min(orbit, key=_matrix_key))
    # orbit-sum identity: the classes partition the labelled topologies
    assert orbit_total == len(raw) == len(seen), "orbit-sum mismatch"
    classes.sort(key=_matrix_key)
    return [make_space(range(n), c) for c in classes]


def count_topologies(n: int, up_to_homeo: bool = False) -> int:
    return len(enumerate_topologies(n, up_to_homeo))


def classify_row(s: FinSpace, level: int = 2, limit: int | None = None) -> dict:
    sep = separation(s)
    g = freetop.build_reduced_group(s, level, limit)
    k = s.n
    e = freetop.identity(k)
    e_sep = all(
        freetop.separable(g, e, freetop.Word(((a, 1), (b, -1)), k))
        for a, b in itertools.permutations(range(k), 2)
    )
    coh = freetop.coherence_check(s, 1, 2, limit)
    return {
        "points": s.n,
        "t0": sep.t0,
        "t1": sep.t1,
        "discrete": sep.discrete,
        "h_prime": sep.h_prime,
        f"f{level}_t1": freetop.t1_at_level(g),
        f"f{level}_e_ab_separable": e_sep,
        "mult_1_1": freetop.multiplication_continuous(s, 1, 1, limit),
        "coherence_1_2_closed": coh.closed,
        "coherence_1_2_subspace": coh.subspace_equal,
    }


def classify(spaces, level: int = 2, limit: int | None = None) -> list[dict]:
    """One row of separation and free-group verdicts per space.

    ``spaces`` is a sequence of FinSpace or (name, FinSpace) pairs.
    """
    rows = []
    for i, item in enumerate(spaces):
        name, s = item if isinstance(item, tuple) else (f"#{i}", item)
        row = {"name": name}
        row.update(classify_row(s, level, limit))
        rows.append(row)
    return rows
