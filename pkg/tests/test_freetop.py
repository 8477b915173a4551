import itertools

import pytest

from qtop import catalog
from qtop.errors import CarrierMismatch, NotQuotient, NotSurjective, SizeLimit
from qtop.finspace import (
    FinMap,
    discrete,
    identity_map,
    indiscrete,
    is_continuous,
    is_quotient_map,
    pi0_top,
    point,
    separation,
)
from qtop.freetop import (
    Comparison,
    build_reduced_group,
    build_refined_group,
    build_unreduced_space,
    closure_of,
    coherence_check,
    compare_topologies,
    group_to_dict,
    h_prime_pair_separable,
    induced_map_quotient,
    inversion_map,
    multiplication_continuous,
    one_letter_words,
    powers_quotient,
    psi_level_check,
    separable,
    sigma_closed_embedding,
    sigma_report,
    t1_at_level,
    t1_witness,
    translation_map,
)
from qtop.words import Word, count_words, decode, identity

import oracles

SIERPINSKI = catalog.sierpinski()
SMALL = [point(), discrete(2), indiscrete(2), SIERPINSKI, catalog.chain(3), catalog.fence(3)]


def text(g, w):
    return g.word_text(w)


def oracle_reduction_ups(y, n):
    """Final topology of R_n, using the naive reducer and set saturation."""
    m, words = build_unreduced_space(y, n)
    g = build_reduced_group(y, n)
    table = [g.index[Word(oracles.naive_reduce(w.letters), y.n)] for w in words]
    return m, table, oracles.final_ups_by_saturation(m, table, len(g.words))


def test_unreduced_sizes():
    assert build_unreduced_space(discrete(2), 1)[0].n == 5
    assert build_unreduced_space(point(), 2)[0].n == 7
    assert build_unreduced_space(discrete(2), 2)[0].n == 21


def test_unreduced_minimal_open_is_letterwise_product():
    m, words = build_unreduced_space(SIERPINSKI, 2)
    idx = {w: i for i, w in enumerate(words)}
    w00 = decode("0 0", SIERPINSKI.labels)
    got = {m.labels[i] for i in range(m.n) if m.ups[idx[w00]] >> i & 1}
    assert got == {"0 0", "0 1", "1 0", "1 1"}
    # every word: same length, each letter inside the minimal open of its letter
    ups2 = [0b0011, 0b0010, 0b1100, 0b1000]  # Y + Y^-1 for Sierpinski
    for w, u in zip(words, m.ups):
        expected = {
            v for v in words
            if len(v) == len(w)
            and all(ups2[b] >> a & 1 for a, b in zip(v.codes(), w.codes()))
        }
        assert {words[i] for i in range(m.n) if u >> i & 1} == expected


def test_reduced_group_examples():
    g = build_reduced_group(discrete(2), 2)
    assert len(g.words) == 17 and separation(g.topology).discrete
    for n in range(4):
        g = build_reduced_group(point(), n)
        assert len(g.words) == 2 * n + 1 and separation(g.topology).discrete
    g = build_reduced_group(discrete(3), 3)
    assert len(g.words) == count_words(3, 3, True) == 1 + 6 + 30 + 150


@pytest.mark.parametrize("y", SMALL + [catalog.pseudocircle(), discrete(3), indiscrete(3)])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_reduced_group_is_final_topology_of_reduction(y, n):
    if count_words(y.n, n, False) > 5000:
        pytest.skip("beyond default size bound")
    g = build_reduced_group(y, n)
    m, table, ups = oracle_reduction_ups(y, n)
    assert g.topology.ups == ups
    if m.n <= 16:
        fam = oracles.final_family_by_subsets(m, table, len(g.words))
        assert oracles.open_family(g.topology) == fam


def test_indiscrete_level_one_blocks():
    g = build_reduced_group(indiscrete(2), 1)
    m, table, ups = oracle_reduction_ups(indiscrete(2), 1)
    assert g.topology.ups == ups
    opens = {frozenset(text(g, w) for w in g.words_of(u)) for u in g.topology.ups}
    # letters and inverse letters sit in separate summands
    assert opens == {frozenset({"e"}), frozenset({"0", "1"}), frozenset({"0'", "1'"})}


def test_refined_identity_equals_reduction():
    for y in SMALL:
        for n in range(3):
            r = build_refined_group(y, identity_map(y), n)
            assert compare_topologies(r, build_reduced_group(y, n)) is Comparison.EQUAL


def test_refined_along_components_is_discrete():
    for x in catalog.enumerate_topologies(3, up_to_homeo=True) + [catalog.pseudocircle()]:
        _, px = pi0_top(x)
        for n in range(3):
            g = build_refined_group(x, px, n)
            assert separation(g.topology).discrete


def test_refined_sierpinski_collapse_matches_oracle():
    q = FinMap(SIERPINSKI, point(), (0, 0))
    g = build_refined_group(SIERPINSKI, q, 2)
    assert [g.word_text(w) for w in g.words] == ["1", "0", "0'", "0 0", "0' 0'"]
    m, words = build_unreduced_space(SIERPINSKI, 2)
    table = [
        g.index[Word(oracles.naive_reduce(tuple((0, s) for _, s in w.letters)), 1)]
        for w in words
    ]
    assert g.topology.ups == oracles.final_ups_by_saturation(m, table, 5)
    assert separation(g.topology).discrete


def test_refined_requires_quotient():
    with pytest.raises(NotQuotient):
        build_refined_group(discrete(2), identity_map(discrete(2), indiscrete(2)), 1)


def test_refined_finer_than_reduction():
    census = [s for n in (1, 2, 3) for s in catalog.enumerate_topologies(n, True)]
    for x in census:
        for y in census:
            if y.n > x.n:
                continue
            for q in oracles.continuous_surjections(x, y):
                if not is_quotient_map(q):
                    continue
                for n in (1, 2):
                    c = compare_topologies(build_refined_group(x, q, n), build_reduced_group(y, n))
                    assert c in (Comparison.EQUAL, Comparison.STRICTLY_FINER)


def test_compare_examples():
    from qtop.freetop import TruncatedGroup

    words = tuple(build_reduced_group(point(), 1).words)
    d = TruncatedGroup(point(), 1, words, discrete(3))
    i = TruncatedGroup(point(), 1, words, indiscrete(3))
    assert compare_topologies(d, i) is Comparison.STRICTLY_FINER
    assert compare_topologies(i, d) is Comparison.STRICTLY_COARSER
    with pytest.raises(CarrierMismatch):
        compare_topologies(d, build_reduced_group(point(), 2))


@pytest.mark.parametrize("y", SMALL + [catalog.pseudocircle()])
def test_quasitopological_axioms(y):
    for n in (0, 1, 2):
        g = build_reduced_group(y, n)
        inv = inversion_map(g)
        assert inv.continuous
        assert all(inv.map.table[inv.map.table[i]] == i for i in range(len(g.words)))
        assert inv.map.table[g.index[identity(y.n)]] == g.index[identity(y.n)]
        assert translation_map(g, identity(y.n)).map.table == tuple(range(len(g.words)))
        if n < 2:
            for w in one_letter_words(y.n):
                for side in ("left", "right"):
                    v = translation_map(g, w, side)
                    assert v.continuous == oracles.continuous(v.map)
                    assert v.continuous


def test_multiplication_examples():
    for n, m in [(0, 1), (1, 0), (1, 1), (0, 2), (2, 1)]:
        assert multiplication_continuous(discrete(2), n, m)
    for n, m in [(0, 1), (1, 0), (0, 2), (2, 0)]:
        assert multiplication_continuous(SIERPINSKI, n, m)
    # golden value from the exhaustive preimage check
    from qtop.freetop import multiplication_map

    f = multiplication_map(SIERPINSKI, 1, 1)
    assert oracles.continuous(f) is True
    assert multiplication_continuous(SIERPINSKI, 1, 1) is True


def test_sierpinski_not_t1_with_witness():
    g = build_reduced_group(SIERPINSKI, 2)
    assert not t1_at_level(g)
    e, w = identity(2), decode("0 1'", SIERPINSKI.labels)
    assert e in closure_of(g, [w]) or w in closure_of(g, [e])
    # every open set containing 0 1' contains e
    for o in oracles.open_family(g.topology):
        if o >> g.index[w] & 1:
            assert o >> g.index[e] & 1
    u, v = t1_witness(g)
    assert (text(g, u), text(g, v)) == ("0 1'", "e")
    assert {text(g, x) for x in g.minimal_open(e)} == {"e", "0 1'", "1 0'", "0' 1", "1' 0"}


def test_t1_examples():
    for n in range(4):
        g = build_reduced_group(discrete(2), n)
        assert t1_at_level(g) and t1_witness(g) is None
    g = build_reduced_group(SIERPINSKI, 2)
    assert closure_of(g, g.words) == set(g.words)


def test_nonhausdorff_pairs_give_e_in_every_neighbourhood():
    for y in catalog.enumerate_topologies(3, up_to_homeo=True):
        g = build_reduced_group(y, 2)
        fam = oracles.open_family(y)
        e = g.index[identity(y.n)]
        for a, b in itertools.permutations(range(y.n), 2):
            if any(u >> a & 1 and v >> b & 1 and not u & v for u in fam for v in fam):
                continue
            ab = g.index[Word(((a, 1), (b, -1)), y.n)]
            assert g.topology.ups[ab] >> e & 1


def test_sigma_examples():
    assert sigma_closed_embedding(discrete(2), 1, 3)
    assert sigma_closed_embedding(discrete(2), 2, 2)
    r = sigma_report(SIERPINSKI, 1, 3)
    assert not r.closed
    g = build_reduced_group(SIERPINSKI, 3)
    image = [Word(((y, 1),), 2) for y in range(2)]
    cl = closure_of(g, image)
    assert r.witness in cl and r.witness not in image
    assert decode("1 0 1'", SIERPINSKI.labels) in cl
    assert not sigma_closed_embedding(SIERPINSKI, 1, 3)
    r = sigma_report(indiscrete(2), 1, 2)
    g = build_reduced_group(indiscrete(2), 2)
    expected_closed = set(closure_of(g, image)) == set(image)
    assert r.closed == expected_closed


def test_coherence_golden_values():
    for y in (discrete(2), discrete(3)):
        c = coherence_check(y, 1, 2)
        assert c.closed and c.subspace_equal
    c = coherence_check(SIERPINSKI, 0, 2)
    assert not c.closed
    c = coherence_check(SIERPINSKI, 1, 2)
    assert (c.closed, c.subspace_equal) == (False, True)
    c = coherence_check(SIERPINSKI, 2, 3)
    assert (c.closed, c.subspace_equal) == (False, False)


def test_h_prime_pairs_not_separable():
    for n in (2, 3, 4):
        for y in catalog.enumerate_topologies(n, up_to_homeo=True):
            fam = oracles.open_family(y)
            for a, b in itertools.permutations(range(n), 2):
                violates = not any(
                    u >> a & 1 and v >> b & 1
                    and all(any(w >> p & 1 and not (w & u and w & v) for w in fam) for p in range(n))
                    for u in fam for v in fam
                )
                if violates:
                    assert not h_prime_pair_separable(y, a, b)


SURJECTIONS = [
    q
    for x in [s for n in (1, 2, 3) for s in catalog.enumerate_topologies(n, True)]
    for y in [s for n in (1, 2, 3) for s in catalog.enumerate_topologies(n, True)]
    if y.n <= x.n
    for q in oracles.continuous_surjections(x, y)
]


def test_psi_agrees_with_powers():
    for q in SURJECTIONS:
        r = psi_level_check(q.domain, 2, q)
        assert r.powers_quotient == r.psi_iso


def test_psi_default_projection_and_discrete():
    for x in catalog.enumerate_topologies(3, True):
        r = psi_level_check(x, 2)
        assert r.powers_quotient and r.psi_iso
    r = psi_level_check(discrete(2), 3)
    assert r.powers_quotient and r.psi_iso
    bad = identity_map(discrete(2), indiscrete(2))
    r = psi_level_check(discrete(2), 2, bad)
    assert not r.powers_quotient and not r.psi_iso


def test_induced_map_quotient_easy_direction():
    checked = 0
    for q in SURJECTIONS:
        if powers_quotient(q, 3):
            assert induced_map_quotient(q, 3)
            checked += 1
    assert checked > 50


def test_induced_map_examples():
    for y in SMALL:
        assert induced_map_quotient(identity_map(y), 2)
    assert not induced_map_quotient(identity_map(discrete(2), indiscrete(2)), 1)
    with pytest.raises(NotSurjective):
        induced_map_quotient(FinMap(discrete(2), discrete(2), (0, 0)), 1)


def test_size_limit():
    with pytest.raises(SizeLimit):
        build_reduced_group(catalog.nonhausdorff_grid(2), 3)


def test_group_report_shape():
    d = group_to_dict(build_reduced_group(SIERPINSKI, 1))
    assert list(d) == ["alphabet", "level", "words", "minimal_opens", "provenance"]
    assert d["words"] == ["e", "0", "1", "0'", "1'"]
    r = group_to_dict(build_refined_group(SIERPINSKI, identity_map(SIERPINSKI), 1))
    assert r["provenance"] == "refined" and r["source_map"]["table"] == [0, 1]


def test_separable_discrete():
    g = build_reduced_group(discrete(2), 2)
    assert all(separable(g, u, v) for u, v in itertools.combinations(g.words, 2))
