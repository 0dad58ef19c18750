import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hlgalleries.affine_weyl import DOWN, OMEGA, UP

from conftest import RANK3_TYPES, SMALL_TYPES, aff, datum


def random_elem(A, rng, n):
    word = [rng.randrange(A.n_letters) for _ in range(n)]
    return A.from_word(word)


def test_a1_steps():
    A = aff("A1")
    s1, s0 = 0, 1
    st_ = A.alcove_step(((0,), 0), s0)
    assert st_.alcove == ((2,), 1) and st_.orientation == UP and st_.wall == (0, 1)
    st_ = A.alcove_step(((0,), 1), s0)
    assert st_.alcove == ((-2,), 0) and st_.orientation == DOWN and st_.wall == (0, -1)
    st_ = A.alcove_step(((0,), 0), s1)
    assert st_.alcove == ((0,), 1) and st_.orientation == DOWN and st_.wall == (0, 0)


def test_lengths_and_minimal_coset_elements():
    A1, A2 = aff("A1"), aff("A2")
    assert A1.length(A1.translation((2,))) == 2  # tau_{alpha^vee}
    assert A2.length(A2.translation((1, 1))) == 4  # tau_theta
    assert A1.length(A1.n_lambda((2,))) == 1
    assert A2.length(A2.n_lambda((1, 1))) == 1
    assert A2.n_lambda((1, 1)) == A2.letter_elems[2]  # n^theta = s0
    with pytest.raises(ValueError):
        A2.n_lambda((-1, 0))


@pytest.mark.parametrize("t,lattice", SMALL_TYPES + RANK3_TYPES)
def test_n_lambda_is_minimal_in_coset(t, lattice):
    A = aff(t, lattice)
    W = A.W
    for lam in A.datum.dominant_weights(3):
        n = A.n_lambda(lam)
        lengths = [A.length((lam, w)) for w in range(W.order)]
        assert A.length(n) == min(lengths) and lengths.count(min(lengths)) == 1
        # l(tau_lam) = 2 <rho, lam>
        assert A.length(A.translation(lam)) == 2 * A.datum.rho_pair(lam)


def test_simply_connected_omega():
    A = aff("A1", "simply_connected")
    assert len(A.omega) == 1 and A.n_letters == 3
    g = A.letter_elems[2]
    assert A.length(g) == 0 and A.mul(g, g) == A.identity
    assert A.alcove_step(A.identity, 2).orientation == OMEGA
    # conjugation by g swaps s1 and s0, so they share a parameter class
    assert A.letter_classes == [(0, 1)]
    assert aff("A1").letter_classes == [(0,), (1,)]
    assert aff("C2").letter_classes == [(0,), (1,), (2,)]
    assert aff("C2", "simply_connected").letter_classes == [(0,), (1, 2)]


def test_letter_names_roundtrip():
    for t, lattice in SMALL_TYPES + RANK3_TYPES + [("A1xA1", "adjoint")]:
        A = aff(t, lattice)
        for letter in range(A.n_letters):
            assert A.parse_letter(A.letter_name(letter)) == letter
    with pytest.raises(ValueError):
        aff("A2").parse_letter("s9")


@pytest.mark.parametrize("t,lattice", SMALL_TYPES + RANK3_TYPES)
def test_step_properties(t, lattice):
    A = aff(t, lattice)
    rng = random.Random(11)
    for _ in range(150):
        v = random_elem(A, rng, rng.randrange(10))
        s = rng.randrange(A.n_reflections)
        step = A.alcove_step(v, s)
        vs = A.mul(v, A.letter_elems[s])
        assert step.alcove == vs
        assert abs(A.length(vs) - A.length(v)) == 1
        # (As)s = A
        assert A.alcove_step(vs, s).alcove == v
        back = A.alcove_step(vs, s)
        assert back.wall == step.wall and back.orientation != step.orientation


@pytest.mark.parametrize("t,lattice", SMALL_TYPES + RANK3_TYPES)
def test_finite_step_orientation(t, lattice):
    # A_w precedes A_{ws} exactly when w > ws
    A = aff(t, lattice)
    W = A.W
    for w in range(W.order):
        for i in range(W.rank):
            step = A.alcove_step(A.finite(w), i)
            ws = W.rmul[w][i]
            assert step.alcove == A.finite(ws)
            assert step.wall[1] == 0
            assert (step.orientation == UP) == (W.length[w] > W.length[ws])


def test_orientation_translation_invariant():
    rng = random.Random(2024)
    n = 0
    types = SMALL_TYPES + RANK3_TYPES
    while n < 10_000:
        A = aff(*types[n % len(types)])
        v = random_elem(A, rng, rng.randrange(10))
        s = rng.randrange(A.n_letters)
        lam = tuple(rng.randrange(-4, 5) for _ in range(A.datum.rank))
        if not A.datum.in_lattice(lam):
            continue
        assert A.orientation_invariance_check(v, s, lam)
        n += 1


@pytest.mark.parametrize("t,lattice", SMALL_TYPES + RANK3_TYPES)
def test_minimal_type_replay(t, lattice):
    A = aff(t, lattice)
    rng = random.Random(5)
    for _ in range(60):
        v = random_elem(A, rng, rng.randrange(12))
        word = A.minimal_gallery_type(v)
        reflections = [x for x in word if not A.is_omega_letter(x)]
        assert len(reflections) == A.length(v)
        cur = A.identity
        dominant = A.is_dominant_alcove(v)
        for x in word:
            step = A.alcove_step(cur, x)
            if step.orientation != OMEGA:
                # every crossing moves away from the fundamental alcove
                assert A.length(step.alcove) == A.length(cur) + 1
                if dominant:
                    assert step.orientation == UP
            cur = step.alcove
        assert cur == v
        assert A.from_word(word) == v


def test_all_reduced_words():
    A = aff("A2")
    words = A.all_reduced_words(A.translation((1, 1)))
    assert len(words) == len(set(words)) and words == sorted(words)
    for wd in words:
        assert len(wd) == 4 and A.from_word(wd) == A.translation((1, 1))
    W = A.W
    # finite longest element of A2 has 2 reduced words
    assert len(A.all_reduced_words(A.finite(W.longest))) == 2


@pytest.mark.parametrize("t,lattice", SMALL_TYPES + RANK3_TYPES)
def test_dominant_alcove_agrees_with_barycenter(t, lattice):
    A = aff(t, lattice)
    rng = random.Random(3)
    for _ in range(300):
        v = random_elem(A, rng, rng.randrange(10))
        assert A.is_dominant_alcove(v) == A.is_dominant_alcove_exact(v)
    assert A.is_dominant_alcove(A.identity)


@given(st.data())
def test_group_law(data):
    t, lattice = data.draw(st.sampled_from(SMALL_TYPES))
    A = aff(t, lattice)
    words = st.lists(st.integers(0, A.n_letters - 1), max_size=8)
    a, b, c = (A.from_word(data.draw(words)) for _ in range(3))
    assert A.mul(A.mul(a, b), c) == A.mul(a, A.mul(b, c))
    assert A.mul(a, A.inverse(a)) == A.identity
    assert A.length(a) == A.length(A.inverse(a))
    assert A.length(A.mul(a, b)) <= A.length(a) + A.length(b)


@given(st.data())
def test_omega_preserves_length(data):
    t = data.draw(st.sampled_from(["A1", "A2", "C2", "A3", "B3", "C3"]))
    A = aff(t, "simply_connected")
    word = data.draw(st.lists(st.integers(0, A.n_letters - 1), max_size=8))
    v = A.from_word(word)
    for g in A.omega:
        assert A.length(A.mul(v, g)) == A.length(v)
        assert A.length(A.mul(g, v)) == A.length(v)


def test_format_elem():
    A = aff("A1")
    assert A.format_elem(((2,), 0)).startswith("tau_(2)")
