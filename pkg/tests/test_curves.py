"""Enumeration, homology pairing, and crossing counts."""

import numpy as np
import pytest

from hypint.curves import (
    EnumerationConfig,
    Marking,
    algebraic_int,
    build_ball,
    enumerate_classes,
    pairing_matrix,
    self_int_count,
    signed_crossings,
)
from hypint.errors import BudgetExceeded, SharedGeodesic
from hypint.surface import FNCoordinates, build_holonomy
from hypint.words import canonical, inverse, is_proper_power, primitive_root
from hypint import words


def test_word_algebra():
    assert words.free_reduce((1, -1, 2)) == (2,)
    assert words.cyclic_reduce((3, 1, 2, -3)) == (1, 2)
    assert canonical((2, 1)) == (1, 2)
    assert inverse((1, -2, 3)) == (-3, 2, -1)
    assert primitive_root((1, 2, 1, 2)) == ((1, 2), 2)
    assert is_proper_power((1, 2, 1, 2))
    assert not is_proper_power((1, 2, 1, -2))
    assert words.power((1,), -2) == (-1, -1)


def test_pairing_matrix_genus2(g2_marking):
    p = pairing_matrix(g2_marking.homology)
    assert p.shape == (4, 4)
    assert np.array_equal(p, -p.T)
    assert abs(round(float(np.linalg.det(p.astype(float))))) == 1


def test_pairing_matrix_genus3(fig5_marking):
    p = pairing_matrix(fig5_marking.homology)
    assert p.shape == (6, 6)
    assert np.array_equal(p, -p.T)
    assert abs(round(float(np.linalg.det(p.astype(float))))) == 1


def test_abelianize_basics(g2_marking):
    hom = g2_marking.homology
    # commutators die in homology
    assert hom.coords((1, 4, -1, -4)) == (0,) * 4
    w = (4, 2)
    assert tuple(-c for c in hom.coords(w)) == hom.coords(inverse(w))
    # additivity under concatenation
    a, b = (1,), (4,)
    ca = np.array(hom.coords(a))
    cb = np.array(hom.coords(b))
    assert tuple(ca + cb) == hom.coords((1, 4))


def test_algebraic_int_bilinear(g2_marking):
    p = pairing_matrix(g2_marking.homology)
    rng = np.random.default_rng(0)
    for _ in range(50):
        a, b, c = rng.integers(-4, 5, size=(3, 4))
        assert algebraic_int(a, a, p) == 0
        assert algebraic_int(a, b, p) == -algebraic_int(b, a, p)
        assert algebraic_int(a + b, c, p) == algebraic_int(a, c, p) + algebraic_int(b, c, p)


def test_enumerate_cuffs_only(g2_graph, g2_marking):
    h = build_holonomy(g2_graph, FNCoordinates(np.full(3, 2.0), np.zeros(3)))
    table = enumerate_classes(h, g2_marking, 2.1, EnumerationConfig(max_word_len=3))
    assert len(table) == 6  # three pants curves, both orientations
    for e in table.entries:
        assert e.length == pytest.approx(2.0, rel=1e-9)
        assert e.simple
    # empty below the systole
    empty = enumerate_classes(h, g2_marking, 1.5, EnumerationConfig(max_word_len=3))
    assert len(empty) == 0


def test_enumerate_monotone(g2_graph, g2_marking):
    h = build_holonomy(g2_graph, FNCoordinates(np.full(3, 2.0), np.zeros(3)))
    small = enumerate_classes(h, g2_marking, 3.5, EnumerationConfig(max_word_len=4))
    large = enumerate_classes(h, g2_marking, 4.6, EnumerationConfig(max_word_len=4))
    small_words = {e.word for e in small.entries}
    large_words = {e.word for e in large.entries}
    assert small_words <= large_words
    assert len(large_words) > len(small_words)


def test_enumerate_budget(g2_graph, g2_marking):
    h = build_holonomy(g2_graph, FNCoordinates(np.full(3, 2.0), np.zeros(3)))
    with pytest.raises(BudgetExceeded):
        enumerate_classes(h, g2_marking, 8.0,
                          EnumerationConfig(max_word_len=6, node_limit=500))


def test_dedup_no_conjugate_entries(g2_graph, g2_marking):
    rng = np.random.default_rng(1)
    h = build_holonomy(g2_graph, FNCoordinates(rng.uniform(1.0, 2.5, 3), rng.uniform(-0.5, 0.5, 3)))
    table = enumerate_classes(h, g2_marking, 6.0, EnumerationConfig(max_word_len=5))
    buckets = {}
    for e in table.entries:
        key = (round(e.length, 7), e.coords)
        buckets.setdefault(key, []).append(e.word)
    for key, ws in buckets.items():
        for i in range(len(ws)):
            for j in range(i + 1, len(ws)):
                assert not g2_marking.conjugate_classes(ws[i], ws[j])


def test_both_orientations_present(g2_graph, g2_marking):
    h = build_holonomy(g2_graph, FNCoordinates(np.full(3, 2.0), np.zeros(3)))
    table = enumerate_classes(h, g2_marking, 3.5, EnumerationConfig(max_word_len=4))
    words_set = {e.word for e in table.entries}
    for e in table.entries:
        assert canonical(inverse(e.word)) in words_set


def test_disjoint_pants_curves(g2_marking):
    recs = signed_crossings(g2_marking.h, g2_marking.ball(12.5), (1,), (2,))
    assert recs == []


def test_dual_crosses_once(g2_marking):
    info = g2_marking.topology((4,))
    assert info.cuff_cross[0] == 1 and info.cuff_cross[1] == 1 and info.cuff_cross[2] == 0
    assert abs(info.cuff_int[0]) == 1 and abs(info.cuff_int[1]) == 1


def test_signed_counts_match_homology(g2_graph, g2_marking):
    rng = np.random.default_rng(3)
    h = build_holonomy(g2_graph, FNCoordinates(rng.uniform(1.2, 2.4, 3), rng.uniform(-0.5, 0.5, 3)))
    table = enumerate_classes(h, g2_marking, 6.0, EnumerationConfig(max_word_len=5))
    hom = g2_marking.homology
    checked = 0
    for i in range(len(table.entries)):
        for j in range(i + 1, min(i + 5, len(table.entries))):
            u, v = table.entries[i], table.entries[j]
            try:
                recs = signed_crossings(g2_marking.h, g2_marking.ball(12.5), u.word, v.word)
            except SharedGeodesic:
                continue
            assert sum(r.sign for r in recs) == hom.pairing_of_words(u.word, v.word)
            assert abs(sum(r.sign for r in recs)) <= len(recs)
            checked += 1
    assert checked >= 100


def test_orientation_reversal_negates(g2_marking):
    u, v = (4,), (1,)
    r1 = signed_crossings(g2_marking.h, g2_marking.ball(12.5), u, v)
    r2 = signed_crossings(g2_marking.h, g2_marking.ball(12.5), u, inverse(v))
    assert sum(r.sign for r in r1) == -sum(r.sign for r in r2)
    assert len(r1) == len(r2)


def test_shared_geodesic_raises(g2_marking):
    with pytest.raises(SharedGeodesic):
        signed_crossings(g2_marking.h, g2_marking.ball(12.5), (1,), (1, 1))


def test_self_int_values(g2_marking):
    ball = g2_marking.ball(12.5)
    assert self_int_count(g2_marking.h, ball, (1,)) == 0  # pants curve
    assert self_int_count(g2_marking.h, ball, (4,)) == 0  # dual
    # x0 * x1^-1 crosses itself once (verified on two reference metrics)
    assert self_int_count(g2_marking.h, ball, (1, -2)) == 1
    # proper powers are never simple
    assert self_int_count(g2_marking.h, ball, (1, 1)) >= 1


def test_self_int_reference_independent(g2_graph):
    h_alt = build_holonomy(
        g2_graph, FNCoordinates(np.array([1.6, 1.9, 2.2]), np.array([1e-4, 2e-4, 3e-4])))
    ball = build_ball(h_alt, 12.0)
    assert self_int_count(h_alt, ball, (1, -2)) == 1
    assert self_int_count(h_alt, ball, (1, 1, 4)) == 0


def test_nonseparating_flags(g2_marking, fig5p_marking):
    assert not g2_marking.homology.is_trivial((4,))  # dual
    assert g2_marking.homology.is_trivial((1, 4, -1, -4))  # commutator
    # the reglued genus-3 graph makes curve 1 separating
    assert fig5p_marking.homology.is_trivial(fig5p_marking.h.edge_word(1))
    assert not fig5p_marking.homology.is_trivial(fig5p_marking.h.edge_word(0))


def test_power_multiplicity_in_signed_counts(g2_marking):
    hom = g2_marking.homology
    u, v = (4,), (1, 1)
    recs = signed_crossings(g2_marking.h, g2_marking.ball(12.5), u, v)
    assert sum(r.sign for r in recs) == hom.pairing_of_words(u, v)
    assert len(recs) == 2  # the double cuff meets the dual twice


def test_certification_flag(g2_graph, g2_marking):
    h = build_holonomy(g2_graph, FNCoordinates(np.full(3, 2.0), np.zeros(3)))
    t1 = enumerate_classes(h, g2_marking, 2.1, EnumerationConfig(max_word_len=3))
    assert t1.certified  # budget 3 >= ceil(2.1 / 2.0)
    t2 = enumerate_classes(h, g2_marking, 8.0, EnumerationConfig(max_word_len=3))
    assert not t2.certified
