from fractions import Fraction

import pytest

from alcove_adlv.errors import ConfigError
from alcove_adlv.root_data import (
    RootSystemKind,
    build_root_system,
    dominant_coroots,
    enumerate_finite_weyl,
    is_full_support,
    pair,
    reduced_words,
)


@pytest.mark.parametrize("kind, order, delta", [("a1", 2, 1), ("a2", 6, 3), ("c2", 8, 4)])
def test_weyl_group_order_and_longest_length(kind, order, delta):
    rs = build_root_system(kind)
    elements = enumerate_finite_weyl(rs)
    assert len(elements) == order
    assert rs.delta == delta
    assert elements[0] == rs.identity
    assert rs.longest.length == delta


def test_positive_roots_are_ordered_by_height():
    assert build_root_system("a2").positive_roots == ((1, 0), (0, 1), (1, 1))
    c2 = build_root_system("c2")
    assert c2.positive_roots == ((1, 0), (0, 1), (1, 1), (2, 1))
    assert c2.highest_root == (2, 1)


def test_coroot_chart_vectors():
    assert build_root_system("a2").coroot_vectors == ((2, -1), (-1, 2), (1, 1))
    assert build_root_system("c2").coroot_vectors == ((2, -2), (-1, 2), (0, 2), (1, 0))


def test_parse_rejects_unknown_group():
    assert RootSystemKind.parse("A2") is RootSystemKind.A2
    with pytest.raises(ConfigError):
        RootSystemKind.parse("g2")


def test_words_and_braid_relation():
    rs = build_root_system("a2")
    assert rs.element_from_word("s1s2s1") == rs.element_from_word("s2s1s2")
    assert rs.element_from_word("s1s2s1") == rs.longest
    assert rs.longest.word_string == "s1s2s1"
    assert rs.element_from_word("e") == rs.identity
    with pytest.raises(ValueError):
        rs.element_from_word("s3")


def test_c2_longest_element_word():
    rs = build_root_system("c2")
    assert rs.longest.word_string == "s1s2s1s2"
    assert rs.element_from_word("s2s1s2s1") == rs.longest


def test_multiply_and_inverse():
    rs = build_root_system("c2")
    for w in rs.weyl:
        assert rs.multiply(w, rs.inverse(w)) == rs.identity
        assert rs.inversion_count(w) == w.length


def test_full_support():
    rs = build_root_system("a2")
    assert is_full_support(rs.longest)
    assert is_full_support(rs.element_from_word("s1s2"))
    assert not is_full_support(rs.element_from_word("s1"))
    assert not is_full_support(rs.identity)


def test_reduced_words_of_longest():
    rs = build_root_system("a2")
    assert reduced_words(rs, rs.longest) == [(0, 1, 0), (1, 0, 1)]


def test_pairing_with_rho():
    assert pair(build_root_system("a1"), (3,)) == 3
    assert pair(build_root_system("a2"), (1, 1)) == 2
    assert pair(build_root_system("c2"), (2, 3)) == 5
    assert isinstance(pair(build_root_system("c2"), (1, 1)), Fraction)


def test_dominant_coroots():
    assert list(dominant_coroots(build_root_system("a2"), 5)) == [
        (0, 0), (1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2)
    ]
    assert list(dominant_coroots(build_root_system("c2"), 5)) == [
        (0, 0), (1, 1), (1, 2), (2, 2), (2, 3)
    ]
    assert list(dominant_coroots(build_root_system("a1"), 3)) == [(0,), (1,), (2,), (3,)]


def test_chart_round_trip():
    rs = build_root_system("c2")
    assert rs.to_chart((1, 1)) == (Fraction(1), Fraction(0))
    assert rs.from_chart(rs.to_chart((2, -3))) == (2, -3)
    assert rs.from_chart((Fraction(1), Fraction(1))) is None
