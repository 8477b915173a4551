"""Truncated free monoids and free groups with quotient topologies.

Level ``n`` of a construction is the finite space of (reduced) words of
length at most ``n``.  The infinite objects are never built; every verdict
here is a statement about a named level.

* ``M_n(Y)``: coproduct over i <= n of the i-th power of Y + Y^-1.
* ``F_n(Y)``: reduced words of length <= n, final topology of reduction.
* refined level: reduced words over the codomain of a quotient map q,
  final topology of (apply q letterwise, then reduce) from ``M_n(X)``.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import CarrierMismatch, NotContinuous, NotQuotient, NotSurjective, QtopError
from .finspace import (
    FinMap,
    FinSpace,
    bits,
    check_size,
    coproduct,
    coproduct_many,
    coproduct_map,
    final_ups,
    is_continuous,
    is_quotient_map,
    make_space,
    pi0_top,
    power,
    power_map,
    product,
    to_mask,
)
from .words import (
    Word,
    concat,
    count_words,
    encode,
    from_codes,
    identity,
    invert,
    iter_codes,
    letter,
    reduce_letters,
)

REDUCTION = "reduction"
REFINED = "refined"


@dataclass(frozen=True)
class TruncatedGroup:
    alphabet_space: FinSpace
    level: int
    words: tuple[Word, ...]
    topology: FinSpace
    provenance: str = REDUCTION
    source: FinMap | None = None
    index: dict = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.words) != self.topology.n:
            raise ValueError("topology must have one point per word")
        object.__setattr__(self, "index", {w: i for i, w in enumerate(self.words)})

    @property
    def k(self) -> int:
        return self.alphabet_space.n

    def word_text(self, w: Word) -> str:
        return encode(w, self.alphabet_space.labels)

    def mask(self, words) -> int:
        return to_mask(self.index[w] for w in words)

    def words_of(self, mask: int) -> list[Word]:
        return [self.words[i] for i in bits(mask)]

    def minimal_open(self, w: Word) -> list[Word]:
        return self.words_of(self.topology.ups[self.index[w]])


class Comparison(enum.Enum):
    EQUAL = "Equal"
    STRICTLY_FINER = "StrictlyFiner"
    STRICTLY_COARSER = "StrictlyCoarser"
    INCOMPARABLE = "Incomparable"


class MapVerdict(NamedTuple):
    map: FinMap
    continuous: bool


@dataclass(frozen=True)
class Coherence:
    closed: bool
    subspace_equal: bool


@dataclass(frozen=True)
class SigmaReport:
    closed: bool
    embedding: bool
    witness: Word | None  # a word in the closure of the image but outside it


@dataclass(frozen=True)
class PsiCheck:
    powers_quotient: bool
    psi_iso: bool


def doubled(y: FinSpace) -> FinSpace:
    """Y + Y^-1: point y is the letter y, point k + y is y^-1."""
    z = coproduct(y, y)
    return z.relabel(list(y.labels) + [l + "'" for l in y.labels])


def build_unreduced_space(
    y: FinSpace, n: int, limit: int | None = None
) -> tuple[FinSpace, list[Word]]:
    k = y.n
    check_size(count_words(k, n, False), limit, f"M_{n}")
    z = doubled(y)
    m = coproduct_many([power(z, i, limit) for i in range(n + 1)], limit)
    words = [from_codes(c, k) for c in iter_codes(k, n, False)]
    return m.relabel([encode(w, y.labels) for w in words]), words


def reduced_words(k: int, n: int) -> list[Word]:
    return [from_codes(c, k) for c in iter_codes(k, n, True)]


def _quotient_onto(
    domain: FinSpace, images: Sequence[Word], carrier: Sequence[Word], labels
) -> tuple[FinSpace, tuple[int, ...]]:
    index = {w: i for i, w in enumerate(carrier)}
    table = tuple(index[w] for w in images)
    if len(set(table)) != len(carrier):
        raise NotSurjective("word map misses part of the carrier")
    return make_space(labels, final_ups(domain, table, len(carrier))), table


@functools.lru_cache(maxsize=512)
def _reduced_group(y: FinSpace, n: int, limit: int | None) -> TruncatedGroup:
    k = y.n
    m, words = build_unreduced_space(y, n, limit)
    carrier = reduced_words(k, n)
    images = [Word(reduce_letters(w.letters), k) for w in words]
    labels = [encode(w, y.labels) for w in carrier]
    top, _ = _quotient_onto(m, images, carrier, labels)
    return TruncatedGroup(y, n, tuple(carrier), top, REDUCTION)


def build_reduced_group(y: FinSpace, n: int, limit: int | None = None) -> TruncatedGroup:
    return _reduced_group(y, n, limit)


def letterwise(q: FinMap, w: Word) -> Word:
    return Word(tuple((q.table[a], s) for a, s in w.letters), q.codomain.n)


def reduction_projection(y: FinSpace, n: int, limit: int | None = None) -> FinMap:
    """R_n as a map M_n(Y) -> F_n(Y)."""
    m, words = build_unreduced_space(y, n, limit)
    g = build_reduced_group(y, n, limit)
    table = [g.index[Word(reduce_letters(w.letters), y.n)] for w in words]
    return FinMap(m, g.topology, tuple(table))


def _require_quotient(q: FinMap) -> None:
    try:
        ok = is_quotient_map(q)
    except QtopError as exc:
        raise NotQuotient(str(exc)) from exc
    if not ok:
        raise NotQuotient("map does not carry the final topology")


@functools.lru_cache(maxsize=512)
def _refined_group(q: FinMap, n: int, limit: int | None) -> TruncatedGroup:
    _require_quotient(q)
    y = q.codomain
    m, words = build_unreduced_space(q.domain, n, limit)
    carrier = reduced_words(y.n, n)
    images = [Word(reduce_letters(letterwise(q, w).letters), y.n) for w in words]
    labels = [encode(w, y.labels) for w in carrier]
    top, _ = _quotient_onto(m, images, carrier, labels)
    return TruncatedGroup(y, n, tuple(carrier), top, REFINED, q)


def build_refined_group(
    x: FinSpace, q: FinMap, n: int, limit: int | None = None
) -> TruncatedGroup:
    if q.domain != x:
        raise ValueError("q must be defined on x")
    return _refined_group(q, n, limit)


def level_group(g: TruncatedGroup, n: int, limit: int | None = None) -> TruncatedGroup:
    """Same construction as ``g`` at another level."""
    if g.provenance == REFINED:
        return build_refined_group(g.source.domain, g.source, n, limit)
    return build_reduced_group(g.alphabet_space, n, limit)


def compare_topologies(g1: TruncatedGroup, g2: TruncatedGroup) -> Comparison:
    """How the topology of g1 relates to that of g2 on the common carrier."""
    if g1.words != g2.words:
        raise CarrierMismatch("groups have different carriers")
    u1, u2 = g1.topology.ups, g2.topology.ups
    # g1 finer iff every minimal open of g1 sits inside the one of g2
    finer = all(a & ~b == 0 for a, b in zip(u1, u2))
    coarser = all(b & ~a == 0 for a, b in zip(u1, u2))
    if finer and coarser:
        return Comparison.EQUAL
    if finer:
        return Comparison.STRICTLY_FINER
    if coarser:
        return Comparison.STRICTLY_COARSER
    return Comparison.INCOMPARABLE


def translation_map(
    g: TruncatedGroup, w: Word, side: str = "left", limit: int | None = None
) -> MapVerdict:
    """v -> reduce(w v) (left) or reduce(v w) (right), into level n + |w|."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    target = level_group(g, g.level + len(w), limit)
    table = []
    for v in g.words:
        prod = concat(w, v) if side == "left" else concat(v, w)
        table.append(target.index[Word(reduce_letters(prod.letters), g.k)])
    f = FinMap(g.topology, target.topology, tuple(table))
    return MapVerdict(f, is_continuous(f))


def inversion_map(g: TruncatedGroup) -> MapVerdict:
    f = FinMap(g.topology, g.topology, tuple(g.index[invert(v)] for v in g.words))
    return MapVerdict(f, is_continuous(f))


def multiplication_map(
    y: FinSpace, n: int, m: int, limit: int | None = None
) -> FinMap:
    fn = build_reduced_group(y, n, limit)
    fm = build_reduced_group(y, m, limit)
    target = build_reduced_group(y, n + m, limit)
    dom = product(fn.topology, fm.topology, limit)
    table = [
        target.index[Word(reduce_letters(u.letters + v.letters), y.n)]
        for u in fn.words
        for v in fm.words
    ]
    return FinMap(dom, target.topology, tuple(table))


def multiplication_continuous(
    y: FinSpace, n: int, m: int, limit: int | None = None
) -> bool:
    """Joint continuity of F_n x F_m -> F_(n+m)."""
    return is_continuous(multiplication_map(y, n, m, limit))


def t1_at_level(g: TruncatedGroup) -> bool:
    return all(u == 1 << i for i, u in enumerate(g.topology.ups))


def closure_of(g: TruncatedGroup, words) -> set[Word]:
    return set(g.words_of(g.topology.closure(g.mask(words))))


def t1_witness(g: TruncatedGroup) -> tuple[Word, Word] | None:
    """A pair (u, v), u != v, with u in the closure of {v}; prefers v = e."""
    e = identity(g.k)
    ups = g.topology.ups
    order = [g.index[e]] + [i for i in range(len(g.words)) if g.words[i] != e]
    for v in order:
        for u, m in enumerate(ups):
            if u != v and m >> v & 1:
                return g.words[u], g.words[v]
    return None


def separable(g: TruncatedGroup, u: Word, v: Word) -> bool:
    """Do u and v have disjoint open neighbourhoods?"""
    ups = g.topology.ups
    return not ups[g.index[u]] & ups[g.index[v]]


def sigma_words(k: int, n: int) -> list[Word]:
    """Image of Y^n under (y_1, ..., y_n) -> y_1 ... y_n, in product order."""
    return [from_codes(c, k) for c in itertools.product(range(k), repeat=n)]


def sigma_report(
    y: FinSpace, n: int, big_n: int, limit: int | None = None
) -> SigmaReport:
    if big_n < n:
        raise ValueError("need N >= n")
    g = build_reduced_group(y, big_n, limit)
    image = sigma_words(y.n, n)
    mask = g.mask(image)
    top = g.topology
    cl = top.closure(mask)
    outside = cl & ~mask
    witness = g.words[next(bits(outside))] if outside else None
    # subspace topology on the image, pulled back along the bijection
    pos = {g.index[w]: i for i, w in enumerate(image)}
    sub = tuple(
        to_mask(pos[j] for j in bits(top.ups[g.index[w]] & mask)) for w in image
    )
    yn = power(y, n, limit)
    return SigmaReport(closed=not outside, embedding=sub == yn.ups, witness=witness)


def sigma_closed_embedding(
    y: FinSpace, n: int, big_n: int, limit: int | None = None
) -> bool:
    r = sigma_report(y, n, big_n, limit)
    return r.closed and r.embedding


def coherence_check(
    y: FinSpace, n: int, big_n: int, limit: int | None = None
) -> Coherence:
    if big_n <= n:
        raise ValueError("need N > n")
    small = build_reduced_group(y, n, limit)
    big = build_reduced_group(y, big_n, limit)
    mask = big.mask(small.words)
    closed = big.topology.is_closed(mask)
    sub = tuple(
        small.mask(big.words_of(big.topology.ups[big.index[w]] & mask))
        for w in small.words
    )
    return Coherence(closed=closed, subspace_equal=sub == small.topology.ups)


def induced_map(q: FinMap, n: int, limit: int | None = None) -> FinMap:
    """F_n(q): F_n(X) -> F_n(Y), letterwise application then reduction."""
    fx = build_reduced_group(q.domain, n, limit)
    fy = build_reduced_group(q.codomain, n, limit)
    k = q.codomain.n
    table = [fy.index[Word(reduce_letters(letterwise(q, w).letters), k)] for w in fx.words]
    return FinMap(fx.topology, fy.topology, tuple(table))


def induced_map_quotient(q: FinMap, n: int, limit: int | None = None) -> bool:
    if not q.is_surjective():
        raise NotSurjective("q misses codomain points")
    if not is_continuous(q):
        raise NotContinuous("q is not continuous")
    return is_quotient_map(induced_map(q, n, limit))


def psi_level_check(
    x: FinSpace, n: int, q: FinMap | None = None, limit: int | None = None
) -> PsiCheck:
    """Powers of q + q versus the comparison bijection at level n.

    ``q`` defaults to the path-component projection of ``x``.  The bijection
    compared is the identity on words from M_n(X) / J(q) (final topology of
    letterwise q) to M_n(Y).
    """
    if q is None:
        _, q = pi0_top(x)
    if q.domain != x:
        raise ValueError("q must be defined on x")
    if not q.is_surjective():
        raise NotSurjective("q misses codomain points")
    qq = coproduct_map(q, q)
    powers_quotient = all(is_quotient_map(power_map(qq, i, limit)) for i in range(1, n + 1))

    mx, wx = build_unreduced_space(x, n, limit)
    my, wy = build_unreduced_space(q.codomain, n, limit)
    index = {w: i for i, w in enumerate(wy)}
    table = [index[letterwise(q, w)] for w in wx]
    psi_iso = tuple(final_ups(mx, table, my.n)) == my.ups
    return PsiCheck(powers_quotient=powers_quotient, psi_iso=psi_iso)


def powers_quotient(q: FinMap, n: int, limit: int | None = None) -> bool:
    """Are q^i quotient maps for 1 <= i <= n?"""
    return all(is_quotient_map(power_map(q, i, limit)) for i in range(1, n + 1))


def h_prime_pair_separable(y: FinSpace, a: int, b: int, limit: int | None = None) -> bool:
    """Are e and a b^-1 separable in F_2(Y)?"""
    g = build_reduced_group(y, 2, limit)
    k = y.n
    ab = Word(((a, 1), (b, -1)), k)
    return separable(g, identity(k), ab)


def one_letter_words(k: int) -> list[Word]:
    return [letter(y, k, s) for s in (1, -1) for y in range(k)]


def group_to_dict(g: TruncatedGroup) -> dict:
    out = {
        "alphabet": list(g.alphabet_space.labels),
        "level": g.level,
        "words": [g.word_text(w) for w in g.words],
        "minimal_opens": [list(bits(u)) for u in g.topology.ups],
        "provenance": g.provenance,
    }
    if g.source is not None:
        out["source_map"] = {
            "domain": list(g.source.domain.labels),
            "table": list(g.source.table),
        }
    return out
