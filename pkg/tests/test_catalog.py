import pytest

from qtop import catalog
from qtop.errors import SizeLimit, UnknownName
from qtop.finspace import are_homeomorphic, discrete, open_masks, separation

import oracles


def test_builtins():
    assert catalog.builtin("sierpinski").ups == (0b11, 0b10)
    assert catalog.builtin("chain(3)").n == 3
    assert len(open_masks(catalog.builtin("chain(3)"))) == 4
    assert catalog.builtin(" discrete(4) ") == discrete(4)
    for name in ("circle", "chain(x)", "discrete(0)", "fence"):
        with pytest.raises(UnknownName):
            catalog.builtin(name)


def test_grid():
    g = catalog.builtin("nonhausdorff_grid(2)")
    assert g.n == 12
    sep = separation(g)
    assert not sep.t1 and not sep.h_prime
    assert oracles.h_prime_by_quantifiers(g) is False
    # each column point meets both tails
    a, b = g.labels.index("a"), g.labels.index("b")
    for i in (1, 2):
        c = g.labels.index(f"r{i}:0")
        assert g.ups[c] & g.ups[a] and g.ups[c] & g.ups[b]


def test_standard_catalog_entries_are_valid():
    entries = catalog.standard_catalog()
    assert len({e.name for e in entries}) == len(entries)
    for e in entries:
        assert catalog.builtin(e.name) == e.space
        assert oracles.is_topology(e.space.n, oracles.open_family(e.space))


@pytest.mark.parametrize(
    "n,raw,classes", [(0, 1, 1), (1, 1, 1), (2, 4, 3), (3, 29, 9), (4, 355, 33)]
)
def test_counts_agree_with_open_family_generator(n, raw, classes):
    spaces = catalog.enumerate_topologies(n)
    assert len(spaces) == raw
    families = oracles.topologies_by_open_families(n)
    assert len(families) == raw
    assert {frozenset(oracles.open_family(s)) for s in spaces} == set(families)
    assert len(catalog.enumerate_topologies(n, True)) == classes
    assert oracles.homeomorphism_classes(n, families) == classes


def test_five_points_up_to_homeo():
    reps = catalog.enumerate_topologies(5, True)
    assert len(reps) == 139
    assert sum(catalog.orbit_size(s.ups) for s in reps) == 6942


def test_classes_are_pairwise_non_homeomorphic():
    reps = catalog.enumerate_topologies(4, True)
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            assert are_homeomorphic(a, b) is None


def test_enumeration_bounds():
    with pytest.raises(SizeLimit):
        catalog.enumerate_topologies(5)
    with pytest.raises(SizeLimit):
        catalog.enumerate_topologies(6, True)


def test_classify_examples():
    (row,) = catalog.classify([("d2", discrete(2))])
    assert all(v is True for k, v in row.items() if k not in ("name", "points"))
    (row,) = catalog.classify([catalog.builtin("sierpinski")])
    assert row["name"] == "#0"
    assert row["t1"] is False and row["f2_t1"] is False
    assert row["mult_1_1"] is True
    assert (row["coherence_1_2_closed"], row["coherence_1_2_subspace"]) == (False, True)


def test_classify_three_points():
    rows = catalog.classify(catalog.enumerate_topologies(3, True))
    assert len(rows) == 9
    for r in rows:
        assert r["h_prime"] == r["discrete"] == r["t1"] == r["f2_t1"]
        assert r["f2_e_ab_separable"] == r["discrete"]


def test_h_prime_iff_discrete_up_to_four_points():
    for n in range(5):
        for s in catalog.enumerate_topologies(n):
            assert separation(s).h_prime == separation(s).discrete
