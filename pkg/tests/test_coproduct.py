import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from cyclokappa.coproduct import (
    ONE,
    ZERO,
    IIWord,
    WordParseError,
    canonical_shape,
    coassociativity_defect,
    depth_leading_coproduct,
    goncharov_coproduct,
    mono_depth,
    mono_weight,
    normalize,
    parse_word,
    render_tensor,
    word_from_shape,
)
from cyclokappa.depthgraded import BiSeq, D_raw_terms
from cyclokappa.exactlinalg import add_into


def letters(N):
    return [ZERO] + list(range(N))


def random_word(rng, N, kmax):
    L = letters(N)
    k = rng.randint(0, kmax)
    return IIWord(rng.choice(L), tuple(rng.choice(L) for _ in range(k)), rng.choice(L))


def test_four_term_example():
    t = goncharov_coproduct(parse_word("I(e1; e2, e3; e4)", 5))
    assert render_tensor(t).split("\n") == [
        "1 ⊗ I(e1; e2, e3; e4)",
        "+ I(e1; e2; e3) ⊗ I(e1; e3; e4)",
        "+ I(e2; e3; e4) ⊗ I(e1; e2; e4)",
        "+ I(e1; e2, e3; e4) ⊗ 1",
    ]


def test_rendering_edge_cases():
    assert render_tensor(goncharov_coproduct(parse_word("I(0; 0; 1)", 4))) == "0"
    assert render_tensor(goncharov_coproduct(parse_word("I(0; ; 1)", 4))).replace(" ", "") == "1⊗1"


def test_normalize_examples():
    assert normalize(parse_word("I(0; ; 1)", 4)) == {ONE: 1}
    assert normalize(parse_word("I(0; 0, 0; 1)", 4)) == {}
    w = parse_word("I(0; e1, 0; 1)", 4)
    assert normalize(w) == {(w,): 1}


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_coassociativity_exhaustive_mu4(k):
    L = letters(4)
    for a0, a_end in product(L, L):
        for mid in product(L, repeat=k):
            w = IIWord(a0, mid, a_end)
            assert coassociativity_defect(w) == {}, w


def test_coassociativity_random_mu8():
    rng = random.Random(8)
    for _ in range(100):
        w = random_word(rng, 8, 5)
        assert coassociativity_defect(w) == {}, w


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 4, 6, 8]), st.integers(0, 10**6))
def test_counit_grading_depth(N, seed):
    w = random_word(random.Random(seed), N, 5)
    t = goncharov_coproduct(w)
    nw = normalize(w)
    if not nw:
        # every term has w's letters in one slot, so a vanishing w gives nothing
        # on the sides of the counit; the middle terms may still survive
        assert not any(l == ONE or r == ONE for l, r in t)
        return
    (m,) = nw
    assert {r: c for (l, r), c in t.items() if l == ONE} == {m: 1}
    assert {l: c for (l, r), c in t.items() if r == ONE} == {m: 1}
    for l, r in t:
        assert mono_weight(l) + mono_weight(r) == w.weight
        assert mono_depth(l) + mono_depth(r) == w.depth


def test_depth_leading_d1_matches_goncharov_up_to_homothety():
    # I(0; x; y) = I(0; x/y; 1) on the left factor
    N = 7
    for x in range(N):
        for y in range(N):
            w = IIWord(ZERO, (x,), y)
            g = goncharov_coproduct(w)
            hom = {}
            for (l, r), c in g.items():
                if l == (w,):
                    l = (IIWord(ZERO, ((x - y) % N,), 0),)
                add_into(hom, {(l, r): 1}, c)
            assert depth_leading_coproduct(w, N) == hom


def test_depth_leading_zero_word():
    assert depth_leading_coproduct(parse_word("I(0; 0, 0; 1)", 4), 4) == {}
    with pytest.raises(ValueError):
        depth_leading_coproduct(parse_word("I(e1; e2; 1)", 4), 4)


def test_canonical_shape_roundtrip():
    w = parse_word("I(0; 0, e1, 0, 0, e3; e2)", 4)
    eps, ls = canonical_shape(w, 4)
    assert (eps, ls) == ((1, 3, 2), (1, 2, 0))
    assert word_from_shape(eps[:-1], ls, eps[-1]) == w


def _raw_as_tensor(u, N):
    out = {}
    for c, (x, r), rest in D_raw_terms(u):
        left = (IIWord(ZERO, (x % N,) + (ZERO,) * r, 0),)
        if rest is None:
            right = ONE
        else:
            right = (word_from_shape(tuple(e % N for e in rest.eps), (0,) + rest.ls, 0),)
        add_into(out, {(left, right): 1}, c)
    return out


def test_depth_leading_is_D_raw():
    # [[eps; l]] <-> I(0; eps_1, 0^l_1, ..., eps_d, 0^l_d; 1)
    rng = random.Random(3000)
    for _ in range(3000):
        N = rng.choice([3, 4, 5, 8, 9, 12])
        d = rng.randint(1, 4)
        u = BiSeq(tuple(rng.randrange(N) for _ in range(d)), tuple(rng.randint(0, 3) for _ in range(d)))
        w = word_from_shape(u.eps, (0,) + u.ls, 0)
        t = depth_leading_coproduct(w, N)
        assert t.pop((ONE, (w,))) == 1
        assert t == _raw_as_tensor(u, N), u


@pytest.mark.parametrize(
    "text,pos",
    [
        ("I(0; e5; 1)", 5),
        ("I(0; e1; 1", 10),
        ("J(0; e1; 1)", 0),
        ("I(0; 2; 1)", 5),
        ("I(0, e1; 1)", 3),
        ("I(0; e1; 1) x", 12),
        ("I(0; e1,; 1)", 8),
    ],
)
def test_parse_errors(text, pos):
    with pytest.raises(WordParseError) as err:
        parse_word(text, 4)
    assert err.value.pos == pos
    assert f"position {pos}" in str(err.value)


def test_parse_letters():
    w = parse_word("I(0;e3,1 ,0;e0)", 4)
    assert w == IIWord(ZERO, (3, 0, ZERO), 0)
    assert w.weight == 3 and w.depth == 2
