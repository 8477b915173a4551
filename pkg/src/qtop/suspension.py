"""Fundamental group of the suspension of X with a disjoint base point.

For a space X the topologized fundamental group of that suspension is,
as a topological group, the refined free group on the path-component
space of X.  We report its truncations level by level.  For finite X the
path-component space is always discrete, so every level is discrete: the
group is discrete free of rank equal to the number of path components.
:func:`analyze_direct` is the route to non-trivial topology: it treats the
input itself as the path-component space and reports on the reduction
topology.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import freetop
from .finspace import FinSpace, path_components, pi0_top, separation
from .freetop import Comparison, TruncatedGroup
from .words import encode

CONDITION_2_3_STATUS = "undecidable at truncation (requires the Markov free topological group)"
FINITE_COLLAPSE_NOTE = (
    "finite input: the path-component space of a finite space is discrete, "
    "and the fundamental group is discrete exactly when the path-component "
    "space is, so every level is a discrete free group of rank = number of "
    "path components"
)


@dataclass(frozen=True)
class LevelVerdict:
    level: int
    points: int
    discrete: bool
    t1: bool
    t1_witness: tuple[str, str] | None
    inversion_continuous: bool
    translations_continuous: bool
    multiplication_continuous: bool
    coherence_closed: bool | None
    coherence_subspace_equal: bool | None
    routes_equal: bool | None = None


@dataclass(frozen=True)
class SuspensionReport:
    route: str  # "refined" (analyze) or "direct" (analyze_direct)
    input_space: FinSpace
    pi0: FinSpace
    components: int
    rank: int
    discrete: bool
    levels: tuple[TruncatedGroup, ...]
    verdicts: tuple[LevelVerdict, ...]
    condition1_powers_quotient: bool | None
    condition2_3_status: str = CONDITION_2_3_STATUS
    notes: tuple[str, ...] = field(default=())

    @property
    def max_level(self) -> int:
        return len(self.levels) - 1

    @property
    def topological_group_up_to_level(self) -> bool:
        return all(
            v.inversion_continuous and v.multiplication_continuous for v in self.verdicts
        )


def _verdict(
    g: TruncatedGroup, y: FinSpace, limit: int | None, other: TruncatedGroup | None = None
) -> LevelVerdict:
    n = g.level
    labels = y.labels
    wit = freetop.t1_witness(g)
    # one-letter translations from level n - 1 land in level n
    translations = n == 0 or all(
        freetop.translation_map(freetop.level_group(g, n - 1, limit), w, side, limit).continuous
        for w in freetop.one_letter_words(y.n)
        for side in ("left", "right")
    )
    # every split n = i + j with i, j >= 1; level 0 and 1 have nothing to check
    mult = all(freetop.multiplication_continuous(y, i, n - i, limit) for i in range(1, n))
    coh = freetop.coherence_check(y, n - 1, n, limit) if n >= 1 else None
    return LevelVerdict(
        level=n,
        points=len(g.words),
        discrete=freetop.t1_at_level(g),
        t1=freetop.t1_at_level(g),
        t1_witness=(encode(wit[0], labels), encode(wit[1], labels)) if wit else None,
        inversion_continuous=freetop.inversion_map(g).continuous,
        translations_continuous=translations,
        multiplication_continuous=mult,
        coherence_closed=coh.closed if coh else None,
        coherence_subspace_equal=coh.subspace_equal if coh else None,
        routes_equal=(
            freetop.compare_topologies(other, g) is Comparison.EQUAL if other else None
        ),
    )


def analyze(x: FinSpace, max_level: int = 3, limit: int | None = None) -> SuspensionReport:
    pi0, px = pi0_top(x)
    comps = len(path_components(x).blocks)
    levels = tuple(freetop.build_refined_group(x, px, n, limit) for n in range(max_level + 1))
    verdicts = tuple(
        _verdict(freetop.build_reduced_group(pi0, n, limit), pi0, limit, levels[n])
        for n in range(max_level + 1)
    )
    cond1 = freetop.powers_quotient(px, max_level, limit) if max_level >= 1 else True
    return SuspensionReport(
        route="refined",
        input_space=x,
        pi0=pi0,
        components=comps,
        rank=pi0.n,
        discrete=separation(pi0).discrete,
        levels=levels,
        verdicts=verdicts,
        condition1_powers_quotient=cond1,
        notes=(FINITE_COLLAPSE_NOTE,),
    )


def analyze_direct(y: FinSpace, max_level: int = 3, limit: int | None = None) -> SuspensionReport:
    levels = tuple(freetop.build_reduced_group(y, n, limit) for n in range(max_level + 1))
    verdicts = tuple(_verdict(g, y, limit) for g in levels)
    sep = separation(y)
    notes = [
        "input read as the path-component space of an unspecified space; "
        f"verdicts hold up to level {max_level} only"
    ]
    return SuspensionReport(
        route="direct",
        input_space=y,
        pi0=y,
        components=y.n,
        rank=y.n,
        discrete=sep.discrete,
        levels=levels,
        verdicts=verdicts,
        condition1_powers_quotient=None,
        notes=tuple(notes),
    )
