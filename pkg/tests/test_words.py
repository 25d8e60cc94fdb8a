import itertools

import pytest
from hypothesis import given, strategies as st

from psi_monoid.errors import AlphabetError, ParseError
from psi_monoid.words import (
    UNIT,
    Generator,
    Kind,
    Letter,
    MonoidHom,
    MonoidKind,
    Word,
    check_unitarity,
    direct_product,
    eval_hom,
    factorize_free_product,
    free_product,
    is_invertible,
    normalize,
    parse_word,
    word_dagger,
    word_mul,
)

FREE = MonoidKind.free("a", "b", "e", self_dual=["e"])
COMM = MonoidKind.free_commutative("a", "b", "e", self_dual=["e"])


def words_in(m, max_size=8):
    return st.lists(st.sampled_from(m.letters()), max_size=max_size).map(lambda ls: Word(tuple(ls)))


# --- parsing -------------------------------------------------------------


def test_parse_and_render():
    w = parse_word("a b'")
    assert [(l.name, l.daggered) for l in w] == [("a", False), ("b", True)]
    assert str(w) == "a b'"
    assert parse_word("") == UNIT == parse_word("ε")
    assert str(UNIT) == "ε"


def test_parse_self_dual_is_canonical():
    w = FREE.parse("e'")
    assert w == FREE.parse("e")
    assert not w.letters[0].daggered


def test_parse_dagger_without_space():
    assert parse_word("a'b") == parse_word("a' b")


@pytest.mark.parametrize(
    "text, line, column",
    [("a $b", 1, 3), ("a\n  b !", 2, 5), ("''", 1, 1)],
)
def test_parse_error_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_word(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_parse_unknown_generator():
    with pytest.raises(ParseError, match="'z' is not in the alphabet"):
        FREE.parse("a z")


def test_generator_names_are_identifiers():
    with pytest.raises(AlphabetError):
        Generator("1x")


# --- mul and dagger ------------------------------------------------------


def test_mul_does_not_cancel():
    assert word_mul(parse_word("a b"), parse_word("b'")) == parse_word("a b b'")


def test_mul_unit():
    a = parse_word("a")
    assert word_mul(UNIT, a) == a == word_mul(a, UNIT)


def test_mul_not_commutative():
    a, b = parse_word("a"), parse_word("b")
    assert a * b == parse_word("a b")
    assert a * b != b * a


def test_mul_alphabet_mismatch_names_generator():
    m = MonoidKind.free("a")
    with pytest.raises(AlphabetError, match="'b'"):
        word_mul(m.parse("a"), parse_word("b"), m)
    with pytest.raises(AlphabetError, match="'e'"):
        word_mul(FREE.parse("e"), parse_word("e"))


def test_dagger_examples():
    assert word_dagger(parse_word("a b")) == parse_word("b' a'")
    assert word_dagger(UNIT) == UNIT
    e = FREE.parse("e")
    assert word_dagger(e) == e


@given(words_in(FREE), words_in(FREE))
def test_dagger_is_involutive_anti_homomorphism(u, v):
    assert word_dagger(word_dagger(u)) == u
    assert word_dagger(u * v) == word_dagger(v) * word_dagger(u)


@given(words_in(FREE), words_in(FREE), words_in(FREE))
def test_free_monoid_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


# --- normal forms --------------------------------------------------------


def test_normalize_examples():
    m = MonoidKind.free_commutative("a", "b")
    assert normalize(m.parse("b a' a"), m) == m.parse("a a' b")
    f = MonoidKind.free("a", "b")
    assert normalize(f.parse("b a"), f) == f.parse("b a")
    assert normalize(m.parse("a b"), m) == normalize(m.parse("b a"), m)


def test_normalize_alphabet_mismatch():
    with pytest.raises(AlphabetError):
        normalize(parse_word("z"), COMM)


@given(words_in(COMM), words_in(COMM), words_in(COMM))
def test_commutative_normal_form_is_a_congruence(u, v, w):
    # u and a shuffle of it are equal; the product must not notice the difference
    u2 = Word(tuple(reversed(u.letters)))
    assert COMM.normalize(u) == COMM.normalize(u2)
    assert COMM.mul(u, v) == COMM.mul(u2, v)
    assert COMM.mul(COMM.mul(u, v), w) == COMM.mul(u, COMM.mul(v, w))
    assert COMM.dagger(COMM.dagger(u)) == COMM.normalize(u)
    assert COMM.dagger(COMM.mul(u, v)) == COMM.mul(COMM.dagger(v), COMM.dagger(u))


def test_commutative_words_counts():
    # multisets of size n from 4 letters: C(n + 3, 3)
    m = MonoidKind.free_commutative("a", "b")
    counts = [0] * 5
    for w in m.words(4):
        counts[len(w)] += 1
    assert counts == [1, 4, 10, 20, 35]


# --- invertibility and unitarity ------------------------------------------


def _brute_inverses(m, w, bound):
    letters = m.letters()
    found = []
    for n in range(bound + 1):
        for combo in itertools.product(letters, repeat=n):
            v = Word(combo)
            if m.normalize(w * v) == UNIT and m.normalize(v * w) == UNIT:
                found.append(v)
    return found


@pytest.mark.parametrize("m", [FREE, COMM], ids=["free", "commutative"])
@pytest.mark.parametrize("text", ["", "a", "a a'", "e", "b' a"])
def test_is_invertible_matches_brute_force(m, text):
    w = m.parse(text)
    assert is_invertible(w, m) == bool(_brute_inverses(m, w, 2))


def test_is_invertible_examples():
    m = MonoidKind.free_commutative("a")
    assert is_invertible(UNIT, m)
    assert not is_invertible(m.parse("a"), m)
    assert not is_invertible(m.parse("a a'"), m)


def _brute_unitarity(m, max_len):
    letters = m.letters()
    seqs = [Word(c) for n in range(max_len + 1) for c in itertools.product(letters, repeat=n)]
    bad = 0
    for a in seqs:
        for b in seqs:
            if len(a) + len(b) > max_len:
                continue
            if not m.normalize(a * b) and m.normalize(b) != m.normalize(word_dagger(a)):
                bad += 1
    return bad


@pytest.mark.parametrize(
    "m",
    [MonoidKind.free("a"), MonoidKind.free_commutative("a", "b"), MonoidKind.free("a", "e", self_dual=["e"])],
    ids=str,
)
def test_unitarity_agrees_with_brute_force(m):
    assert check_unitarity(m, 4).passed
    assert _brute_unitarity(m, 4) == 0


def test_unitarity_bound_zero():
    rep = check_unitarity(MonoidKind.free("a"), 0)
    assert rep.passed and rep.checked == 1


def test_unitarity_detects_a_counterexample():
    class Broken(MonoidKind):
        # every product is the unit, so e.g. 1 * a = 1 although a != 1
        def mul(self, u, v):
            return UNIT

    rep = check_unitarity(Broken(Kind.FREE_DAGGER, (Generator("a"),)), 2)
    assert not rep.passed
    assert rep.counterexamples[0] == "a=ε, b=a"


# --- free and direct products --------------------------------------------


def test_free_product():
    a, b = MonoidKind.free("a"), MonoidKind.free("b")
    assert free_product(a, b) == MonoidKind.free("a", "b")
    assert free_product(a, MonoidKind(Kind.FREE_DAGGER)) == a


def test_free_product_collision():
    with pytest.raises(AlphabetError, match="a, b"):
        free_product(MonoidKind.free("a", "b"), MonoidKind.free("b", "a"))


def test_free_product_factorization():
    a, b = MonoidKind.free("a"), MonoidKind.free("b")
    m = free_product(a, b)
    blocks = factorize_free_product(m.parse("a b b a'"), a, b)
    assert [(s, str(w)) for s, w in blocks] == [(0, "a"), (1, "b b"), (0, "a'")]


@given(words_in(MonoidKind.free("a", "b", "c"), 12))
def test_free_product_factorization_alternates_and_rejoins(w):
    left, right = MonoidKind.free("a", "b"), MonoidKind.free("c")
    blocks = factorize_free_product(w, left, right)
    sides = [s for s, _ in blocks]
    assert all(x != y for x, y in zip(sides, sides[1:]))
    assert Word(tuple(l for _, blk in blocks for l in blk)) == w


def test_direct_product():
    d = direct_product(MonoidKind.free("a"), MonoidKind.free("b"))
    x, y = d.element("a", ""), d.element("", "b")
    assert d.mul(x, y) == d.element("a", "b") == d.mul(y, x)
    assert d.dagger(d.element("a", "b")) == d.element("a'", "b'")
    # the free product on the same generators is not commutative
    m = MonoidKind.free("a", "b")
    assert m.mul(m.parse("a"), m.parse("b")) != m.mul(m.parse("b"), m.parse("a"))


# --- homomorphisms -------------------------------------------------------


def test_eval_hom_examples():
    src, tgt = MonoidKind.free("a"), MonoidKind.free("x", "y")
    h = MonoidHom(src, tgt, {"a": tgt.parse("x y")})
    assert eval_hom(h, src.parse("a'")) == tgt.parse("y' x'")
    zero = MonoidHom(src, tgt, {"a": UNIT})
    assert eval_hom(zero, src.parse("a a")) == UNIT
    ab = MonoidKind.free_commutative("a")
    h = MonoidHom(src, ab, {"a": ab.parse("a")})
    assert eval_hom(h, src.parse("a a' a")) == ab.parse("a a a'")


def test_eval_hom_missing_generator():
    src, tgt = MonoidKind.free("a", "b"), MonoidKind.free("x")
    h = MonoidHom(src, tgt, {"a": tgt.parse("x")})
    with pytest.raises(AlphabetError, match="'b' missing"):
        eval_hom(h, src.parse("a b"))


def test_hom_self_dual_image_must_be_fixed():
    src, tgt = MonoidKind.free("e", self_dual=["e"]), MonoidKind.free("x")
    with pytest.raises(AlphabetError, match="dagger-fixed"):
        MonoidHom(src, tgt, {"e": tgt.parse("x")})
    MonoidHom(src, tgt, {"e": tgt.parse("x x'")})


HOM_SRC = MonoidKind.free("a", "b", "e", self_dual=["e"])
HOM_TGT = MonoidKind.free("x", "y", "z", self_dual=["z"])
HOM = MonoidHom(HOM_SRC, HOM_TGT, {"a": HOM_TGT.parse("x y'"), "b": UNIT, "e": HOM_TGT.parse("y z y'")})


@given(words_in(HOM_SRC), words_in(HOM_SRC))
def test_eval_hom_preserves_operations(u, v):
    assert HOM(word_dagger(u)) == word_dagger(HOM(u))
    assert HOM(u * v) == HOM(u) * HOM(v)
    assert HOM(UNIT) == UNIT


def test_letter_dagger_roundtrip():
    g = Generator("a")
    assert Letter(g).dagger().dagger() == Letter(g)
    assert Letter(Generator("e", True), True) == Letter(Generator("e", True))
