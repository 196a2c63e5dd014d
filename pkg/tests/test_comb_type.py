"""Tests for combinatorial types: involutions, labelings, boundary words.

Counts of interior types are checked against an independent brute-force
enumeration of fixed-point-free non-crossing involutions built from
itertools, not against the Catalan recursion used by the library.
"""

import itertools
import time

import pytest
from hypothesis import given, settings, strategies as st

from nodalkit.comb_type import (BoundaryType, InteriorType, Word, boundary_words,
                                canonical_word, catalan, compare_patterns,
                                enumerate_boundary, enumerate_interior,
                                first_repeat, format_tau_text,
                                labeling_from_type, parse_tau_text, rotate_type,
                                rotating_limit_check, shift_invariant_types,
                                type_from_labeling, validate_boundary,
                                validate_interior, validate_labeling)
from nodalkit.errors import CapExceeded, InconsistentLabeling, InvalidType, NoRepeat


# the worked 2p=16 example: three blocks (nested, nested, mixed)
TAU16 = (3, 2, 1, 0, 9, 8, 7, 6, 5, 4, 15, 12, 11, 14, 13, 10)
DELTA16 = (1, 2, 1, 3, 4, 5, 6, 5, 4, 3, 7, 8, 7, 9, 7, 3)


def brute_force_interior(p):
    """All fixed-point-free non-crossing odd-difference involutions on
    {0..2p-1}, via raw search over perfect matchings."""
    items = list(range(2 * p))

    def matchings(rest):
        if not rest:
            yield []
            return
        a = rest[0]
        for i in range(1, len(rest)):
            b = rest[i]
            remainder = rest[1:i] + rest[i + 1:]
            for m in matchings(remainder):
                yield [(a, b)] + m

    out = []
    for m in matchings(items):
        if any((b - a) % 2 == 0 for a, b in m):
            continue
        crossing = False
        for (a, b), (c, d) in itertools.combinations(m, 2):
            if a < c < b < d or c < a < d < b:
                crossing = True
                break
        if not crossing:
            tau = [0] * (2 * p)
            for a, b in m:
                tau[a], tau[b] = b, a
            out.append(tuple(tau))
    return sorted(out)


def test_interior_counts_match_brute_force():
    start = time.perf_counter()
    for p in range(1, 9):
        enum = enumerate_interior(p)
        assert len(enum) == catalan(p)
        if p <= 5:  # brute force is exponential; compare sets where feasible
            assert sorted(t.tau for t in enum) == brute_force_interior(p)
    assert [catalan(p) for p in range(1, 9)] == [1, 2, 5, 14, 42, 132, 429, 1430]
    assert time.perf_counter() - start < 10


def test_enumeration_sorted_and_capped():
    for p in (3, 4):
        taus = [t.tau for t in enumerate_interior(p)]
        assert taus == sorted(taus)
    with pytest.raises(CapExceeded):
        enumerate_interior(11)


def test_validate_interior_rejections():
    assert validate_interior(InteriorType(2, (1, 0, 3, 2))) == []
    # fixed point
    assert validate_interior(InteriorType(2, (0, 1, 3, 2))) != []
    # even difference
    assert validate_interior(InteriorType(2, (2, 3, 0, 1))) != []
    # crossing
    assert validate_interior(InteriorType(2, (2, 3, 0, 1))) != []
    assert validate_interior(InteriorType(2, (1, 0, 3))) != []


def test_worked_example_round_trip():
    t = InteriorType(8, TAU16)
    assert validate_interior(t) == []
    start = time.perf_counter()
    lab = labeling_from_type(t)
    back = type_from_labeling(lab)
    elapsed = time.perf_counter() - start
    assert lab.delta == DELTA16
    assert back.tau == TAU16
    assert elapsed < 0.010


def test_labeling_invariants():
    lab = labeling_from_type(InteriorType(8, TAU16))
    assert validate_labeling(lab) == []
    assert set(lab.delta) == set(range(1, 10))  # labels 1..p+1
    n = len(lab.delta)
    for j in range(n):
        assert lab.delta[j] != lab.delta[(j + 1) % n]


@given(st.integers(min_value=1, max_value=6), st.randoms())
@settings(max_examples=60, deadline=None)
def test_round_trip_random(p, rnd):
    ts = enumerate_interior(p)
    t = rnd.choice(ts)
    assert type_from_labeling(labeling_from_type(t)).tau == t.tau


@given(st.integers(min_value=1, max_value=6), st.integers(), st.integers(),
       st.randoms())
@settings(max_examples=60, deadline=None)
def test_rotation_group_action(p, r1, r2, rnd):
    t = rnd.choice(enumerate_interior(p))
    a = rotate_type(rotate_type(t, r1), r2)
    b = rotate_type(t, r1 + r2)
    assert a.tau == b.tau
    assert rotate_type(t, 0).tau == t.tau
    assert validate_interior(a) == []


def test_shift_invariant_types():
    start = time.perf_counter()
    only = shift_invariant_types(1)
    assert len(only) == 1 and only[0].tau == (1, 0)
    for p in range(2, 9):
        assert shift_invariant_types(p) == []
    assert time.perf_counter() - start < 10


def test_boundary_enumeration_and_validation():
    # k=3: a in {1, 3}; each side has a unique matching -> 2 types
    ts = enumerate_boundary(3)
    assert len(ts) == 2
    for t in ts:
        assert validate_boundary(t) == []
    # k=4: a=1 -> C2=2 on minus side, a=3 -> 1*1? plus has 2 rays, minus 2 rays
    ts4 = enumerate_boundary(4)
    assert all(validate_boundary(t) == [] for t in ts4)
    counts = {}
    for t in ts4:
        counts[t.a] = counts.get(t.a, 0) + 1
    assert counts == {1: 2, 3: 1, 5: 2}
    # arrow at an even position is invalid
    assert validate_boundary(BoundaryType(3, (2, 3, 1, 0))) != []


def test_boundary_word_shapes():
    for k in range(3, 8):
        for t in enumerate_boundary(k):
            m_theta, m_zero, m_pi = boundary_words(t)
            a = t.a
            c = (a - 1) // 2 + 2
            assert len(m_theta.letters) == 2 * k - 2
            assert m_theta.letters[0] == 1
            assert m_theta.letters[a - 1] == 1  # p_+ block ends back at 1
            assert m_zero.letters == (c,) + m_theta.letters
            assert m_pi.letters == m_theta.letters + (1,)
            # no two equal adjacent letters
            for w in (m_theta, m_zero, m_pi):
                for x, y in zip(w.letters, w.letters[1:]):
                    assert x != y


def test_known_words():
    t69 = BoundaryType(4, (3, 2, 1, 0, 5, 4))
    mt, m0, mpi = boundary_words(t69)
    assert mt.letters == (1, 2, 1, 3, 4, 3)
    assert m0.letters == (3, 1, 2, 1, 3, 4, 3)
    assert mpi.letters == (1, 2, 1, 3, 4, 3, 1)
    # the distinguished pair with identical word lengths
    left = BoundaryType(4, (5, 2, 1, 4, 3, 0))
    right = BoundaryType(4, (1, 0, 3, 2, 5, 4))
    assert boundary_words(left)[0].letters == (1, 2, 1, 3, 1, 4)
    assert boundary_words(right)[0].letters == (1, 2, 3, 2, 4, 2)
    assert boundary_words(BoundaryType(3, (1, 0, 3, 2)))[0].letters == (1, 2, 3, 2)


def test_first_repeat():
    assert first_repeat(Word((1, 2, 1, 3))) == 3
    assert first_repeat(Word((2, 1, 2, 3))) == 3
    assert first_repeat(Word((1, 2, 1, 3, 1, 4, 1))) == 3
    with pytest.raises(NoRepeat):
        first_repeat(Word((1, 2, 3, 4)))


def test_rotating_limit_all_small_k():
    start = time.perf_counter()
    for k in range(3, 8):
        for t in enumerate_boundary(k):
            rep = rotating_limit_check(t)
            assert rep.passed
            assert rep.pos_zero - rep.pos_pi == 2
            assert rep.scan_zero == rep.pos_zero  # structural position is exact
            assert rep.scan_zero != rep.scan_pi
    assert time.perf_counter() - start < 1


def test_compare_patterns():
    a = Word((1, 2, 1, 3, 1, 4))
    b = Word((1, 2, 3, 2, 4, 2))
    verdict, witness = compare_patterns(a, b)
    assert verdict == "distinct" and witness is not None
    # label bijection: same pattern under renaming
    c = Word((2, 3, 2, 1, 2, 4))
    verdict, witness = compare_patterns(a, c)
    assert verdict == "equal" and witness is None
    assert canonical_word(c).letters == a.letters
    # different lengths
    assert compare_patterns(a, Word((1, 2)))[0] == "distinct"


def test_tau_text_round_trip():
    t = InteriorType(8, TAU16)
    text = format_tau_text(t)
    assert parse_tau_text(text).tau == TAU16
    bt = BoundaryType(4, (3, 2, 1, 0, 5, 4))
    text = format_tau_text(bt)
    parsed = parse_tau_text(text)
    assert isinstance(parsed, BoundaryType)
    assert parsed.tau == bt.tau and parsed.k == 4


def test_type_from_labeling_rejects_garbage():
    with pytest.raises(InconsistentLabeling):
        type_from_labeling(labeling_from_type(InteriorType(2, (1, 0, 3, 2)))
                           .__class__((1, 1, 2, 1)))
