import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from morphrec.core import (
    DegenerateSequence,
    MorphismError,
    SequenceGen,
    apply,
    compose,
    erasable_letters,
    expand,
    incidence_matrix,
    is_primitive,
    is_suffix_code,
    iterate_prefix,
    morphism_profile,
    one_sided_seeds,
    parse_morphism,
    power,
    seed_generators,
)

FIB = "a:ab,b:a"
ANTI = "a:ba,b:a"
ERAS = "a:ab,b:ac,c:"
DURAND = "a:abac,b:ab,c:c"
CORPUS = [FIB, ANTI, "a:ab,b:aa", "a:ba,b:aa", "a:ab,b:ba", ERAS, "a:aa", DURAND, "a:a"]


@pytest.mark.parametrize("text,rules", [
    (FIB, {"a": "ab", "b": "a"}),
    ("a:a", {"a": "a"}),
    (ERAS, {"a": "ab", "b": "ac", "c": ""}),
    ("a -> ab\nb -> a", {"a": "ab", "b": "a"}),
    (" a : ab , b : a ", {"a": "ab", "b": "a"}),
])
def test_parse(text, rules):
    m = parse_morphism(text)
    assert m.as_dict() == rules
    assert m.is_endomorphism


@pytest.mark.parametrize("bad", ["", "   ", "ab", "a:ab,a:b", "aa:b", ":ab"])
def test_parse_rejects(bad):
    with pytest.raises(MorphismError):
        parse_morphism(bad)


def test_parse_roundtrip():
    for text in CORPUS:
        m = parse_morphism(text)
        assert parse_morphism(str(m)) == m


def test_non_endomorphism():
    m = parse_morphism("a:xy,b:x")
    assert not m.is_endomorphism
    assert apply(m, "ab") == "xyx"
    assert is_primitive(m) is None
    with pytest.raises(MorphismError):
        power(m, 2)
    with pytest.raises(MorphismError):
        incidence_matrix(m)


@pytest.mark.parametrize("text,word,expected", [
    (FIB, "ab", "aba"),
    (FIB, "", ""),
    (ERAS, "abc", "abac"),
])
def test_apply(text, word, expected):
    assert apply(parse_morphism(text), word) == expected


def test_apply_unknown_letter():
    with pytest.raises(MorphismError):
        apply(parse_morphism(FIB), "abz")


@pytest.mark.parametrize("text,n,expected", [
    (FIB, 2, {"a": "aba", "b": "ab"}),
    (ANTI, 2, {"a": "aba", "b": "ba"}),
    (FIB, 1, {"a": "ab", "b": "a"}),
])
def test_power(text, n, expected):
    assert power(parse_morphism(text), n).as_dict() == expected


def test_compose_order():
    f, g = parse_morphism("a:ab,b:b"), parse_morphism("a:b,b:a")
    # (f ∘ g)(a) = f(g(a)) = f(b)
    assert compose(f, g)["a"] == "b"
    assert compose(g, f)["a"] == "ba"


@pytest.mark.parametrize("text,matrix", [
    (FIB, [[1, 1], [1, 0]]),
    ("a:a", [[1]]),
    (DURAND, [[2, 1, 1], [1, 1, 0], [0, 0, 1]]),
])
def test_incidence(text, matrix):
    assert incidence_matrix(parse_morphism(text)).tolist() == matrix


@pytest.mark.parametrize("text", CORPUS)
def test_incidence_of_power_is_matrix_power(text):
    m = parse_morphism(text)
    M = incidence_matrix(m)
    for n in range(1, 6):
        assert np.array_equal(incidence_matrix(power(m, n)), np.linalg.matrix_power(M, n))


@pytest.mark.parametrize("text,primitive,erasable,right_marked,suffix_code", [
    (FIB, True, set(), True, True),
    (ERAS, False, {"c"}, False, False),
    # "a" is a suffix of "ba", so these images are not a suffix code
    (ANTI, True, set(), False, False),
    ("a:ab,b:aa", True, set(), True, True),
    ("a:ba,b:aa", True, set(), False, True),
    (DURAND, False, set(), False, False),
    ("a:a", True, set(), True, True),
])
def test_profile(text, primitive, erasable, right_marked, suffix_code):
    p = morphism_profile(parse_morphism(text))
    assert p.primitive is primitive
    assert set(p.erasable_letters) == erasable
    assert p.non_erasing == (not erasable)
    assert p.right_marked is right_marked
    assert p.suffix_code is suffix_code
    json.dumps(p.to_json())


def test_erasable_closure_chain():
    # c erases, b only produces c, so both erase; a keeps growing
    m = parse_morphism("a:abc,b:c,c:")
    assert erasable_letters(m) == {"b", "c"}


def test_primitive_slow_mixing():
    # a 3-cycle with a chord needs several powers before all entries are positive
    assert is_primitive(parse_morphism("a:b,b:c,c:ab")) is True
    assert is_primitive(parse_morphism("a:b,b:a")) is False


@pytest.mark.parametrize("words,expected", [
    (["ab", "a"], True),
    (["ba", "a"], False),
    (["ba", "aa"], True),
    (["ab", "ab"], False),
    (["ab", ""], False),
])
def test_suffix_code(words, expected):
    assert is_suffix_code(words) is expected


@pytest.mark.parametrize("text,expected", [
    (FIB, {("a", 1): True}),
    ("a:ba,b:aa", {("a", 2): True, ("b", 2): True}),
    ("a:a", {("a", 1): False}),
    (DURAND, {("a", 1): True, ("c", 1): False}),
])
def test_one_sided_seeds(text, expected):
    assert one_sided_seeds(parse_morphism(text)) == expected


def test_seed_generators_identity_is_periodic():
    (g,) = seed_generators(parse_morphism("a:a"))
    assert g.kind == "periodic" and g.period == "a"


@pytest.mark.parametrize("gen,n,expected", [
    (lambda: SequenceGen.fixed_point(parse_morphism(FIB), "a"), 8, "abaababa"),
    (lambda: SequenceGen.periodic(parse_morphism(FIB), "ab"), 5, "ababa"),
    (lambda: SequenceGen.fixed_point(parse_morphism(DURAND), "a").with_prefix("c"), 5, "cabac"),
    (lambda: SequenceGen.self_similar(parse_morphism("a:ba,b:aa"), "a"), 8, "abaaabab"),
    (lambda: SequenceGen.fixed_point(parse_morphism(ERAS), "a"), 6, "abacab"),
])
def test_expand(gen, n, expected):
    assert expand(gen(), n) == expected


def test_self_similar_solves_its_equation():
    m = parse_morphism("a:ba,b:aa")
    y = expand(SequenceGen.self_similar(m, "a"), 500)
    assert ("a" + apply(m, y))[:500] == y


@pytest.mark.parametrize("gen", [
    lambda: SequenceGen.fixed_point(parse_morphism("a:a"), "a"),
    lambda: SequenceGen.fixed_point(parse_morphism(ANTI), "a"),
    lambda: SequenceGen.periodic(parse_morphism(FIB), ""),
])
def test_expand_degenerate(gen):
    with pytest.raises(DegenerateSequence):
        expand(gen(), 10)


def test_generator_json():
    m = parse_morphism(FIB)
    assert SequenceGen.fixed_point(m, "a").to_json() == {"prefix": "", "fixed_point": {"letter": "a", "power": 1}}
    assert SequenceGen.periodic(m, "ab", prefix="b").to_json() == {"prefix": "b", "periodic": {"word": "ab"}}


def test_iterate_prefix_matches_power():
    m = parse_morphism(DURAND)
    assert iterate_prefix(m, "a", 6, 50) == power(m, 6)["a"][:50]


words = st.text(alphabet="abc", max_size=12)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(CORPUS), words, words)
def test_morphism_law(text, u, v):
    m = parse_morphism(text)
    u = "".join(c for c in u if c in m.domain)
    v = "".join(c for c in v if c in m.domain)
    assert apply(m, u + v) == apply(m, u) + apply(m, v)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(CORPUS), words)
def test_length_is_row_sum(text, w):
    m = parse_morphism(text)
    w = "".join(c for c in w if c in m.domain)
    counts = np.array([w.count(a) for a in m.domain])
    assert len(apply(m, w)) == int(counts @ incidence_matrix(m).sum(axis=1))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([FIB, "a:ab,b:ba", DURAND, ERAS]), st.integers(0, 300))
def test_expand_prefix_monotone(text, n):
    g = SequenceGen.fixed_point(parse_morphism(text), "a")
    assert expand(g, n + 1).startswith(expand(g, n))
    assert len(expand(g, n)) == n


@pytest.mark.parametrize("text", CORPUS)
def test_right_marked_images_form_suffix_code(text):
    m = parse_morphism(text)
    p = morphism_profile(m)
    if p.right_marked:
        assert p.non_erasing
        assert is_suffix_code(m.images)
