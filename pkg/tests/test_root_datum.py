import itertools
from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form
from hypothesis import given
from hypothesis import strategies as st

from hlgalleries import LaurentQ, RootDatum, RootDatumError, build_root_datum, parse_cartan_type

from conftest import RANK3_TYPES, SMALL_TYPES, datum

ALL_TYPES = SMALL_TYPES + RANK3_TYPES + [("A1xA1", "adjoint"), ("A1xA2", "simply_connected"),
                                         ("D4", "simply_connected"), ("F4", "adjoint"), ("B4", "adjoint")]


def test_a1_adjoint():
    D = build_root_datum([("A", 1)], "adjoint")
    assert D.positive_roots == ((1,),)
    assert D.rho == (Fraction(1, 2),)
    assert D.omega_order == 1
    assert D.coweight_lattice_basis == ((2,),)  # alpha^vee = 2 omega^vee


def test_a2_adjoint():
    D = datum("A2")
    assert len(D.positive_roots) == 3
    assert D.highest_roots == ((1, 1),)
    theta_v = D.highest_coroots[0]
    assert theta_v == (1, 1)
    assert D.rho_pair(theta_v) == 2


def test_a1_simply_connected_smith():
    D = datum("A1", "simply_connected")
    assert D.omega_order == 2
    assert D.simple_coroots[0] == (2,)


@pytest.mark.parametrize("t,lattice", ALL_TYPES)
def test_omega_order_matches_smith_normal_form(t, lattice):
    D = datum(t, lattice)
    if lattice == "adjoint":
        assert D.omega_order == 1
        return
    # Q^vee inside the coweight lattice: columns are the simple coroots in fundamental coordinates
    M = sympy.Matrix(D.simple_coroots).T
    snf = smith_normal_form(M, domain=sympy.ZZ)
    index = abs(sympy.prod([snf[i, i] for i in range(D.rank)]))
    assert D.omega_order == index


@pytest.mark.parametrize("t,lattice", ALL_TYPES)
def test_axioms(t, lattice):
    D = datum(t, lattice)
    for i, row in enumerate(D.cartan):
        for j, x in enumerate(row):
            assert x == 2 if i == j else x <= 0
    roots = set(D.positive_roots)
    for r in roots:
        assert tuple(2 * x for x in r) not in roots
    for cor in D.simple_coroots:
        assert D.rho_pair(cor) == 1
    W = D.W
    assert len(D.positive_roots) == W.length[W.longest]
    for cor in D.simple_coroots:
        assert D.in_lattice(cor)


@pytest.mark.parametrize("t,lattice", ALL_TYPES)
def test_root_strings_closed(t, lattice):
    D = datum(t, lattice)
    roots = set(D.positive_roots)
    for alpha in roots:
        for i in range(D.rank):
            pair = sum(alpha[j] * D.cartan[j][i] for j in range(D.rank))
            beta = tuple(a - pair * int(j == i) for j, a in enumerate(alpha))
            assert beta in roots or tuple(-b for b in beta) in roots


def test_simple_roots_first():
    for t, lattice in ALL_TYPES:
        D = datum(t, lattice)
        for i in range(D.rank):
            assert D.positive_roots[i] == D.simple_roots[i]


def test_bad_types_rejected():
    for bad in ["X3", "A0", "B1", "D3", "E5", "G3", ""]:
        with pytest.raises((RootDatumError, ValueError)):
            RootDatum(bad)
    with pytest.raises(RootDatumError):
        RootDatum("A2", "weird")


def test_exceptional_simply_connected_accepted():
    assert RootDatum("G2", "simply_connected").omega_order == 1
    assert RootDatum("F4", "simply_connected").omega_order == 1


def test_parse_cartan_type_forms():
    assert parse_cartan_type("A2") == (("A", 2),)
    assert parse_cartan_type([["C", 2]]) == (("C", 2),)
    assert parse_cartan_type("A1xB2") == (("A", 1), ("B", 2))


def test_weyl_act_examples():
    A1, A2 = datum("A1"), datum("A2")
    W = A1.W
    assert A1.weyl_act(0, (2,)) == (2,)
    assert A1.weyl_act(W.simple[0], (2,)) == (-2,)
    W2 = A2.W
    s1s2 = W2.from_word((0, 1))
    assert A2.weyl_act(s1s2, (1, 1)) == (-2, 1)  # -alpha_1^vee in fundamental coordinates
    assert A2.from_coroot_coords((-1, 0)) == (-2, 1)


def test_dominant_rep_examples():
    A1, A2 = datum("A1"), datum("A2")
    assert A1.dominant_rep((2,)) == ((2,), A1.W.elem(0))
    mu, w = A1.dominant_rep((-2,))
    assert mu == (2,) and w.word == (0,)
    # brute force orbit scan for -alpha_1^vee in A2
    target = (-2, 1)
    W = A2.W
    dom = [(W.length[w], w) for w in range(W.order) if A2.is_dominant(W.act(w, target))]
    mu, w = A2.dominant_rep(target)
    assert mu == (1, 1)
    shortest = min(W.length[u] for u in range(W.order) if W.act(u, mu) == target)
    assert len(w.word) == shortest and W.act(w.index, mu) == target
    assert dom


@pytest.mark.parametrize("t,lattice", SMALL_TYPES + RANK3_TYPES)
def test_dominant_rep_minimal(t, lattice):
    D = datum(t, lattice)
    W = D.W
    for c in itertools.product(range(-2, 3), repeat=D.rank):
        if not D.in_lattice(c):
            continue
        mu, w = D.dominant_rep(c)
        assert D.is_dominant(mu) and W.act(w.index, mu) == c
        assert len(w.word) == min(W.length[u] for u in range(W.order) if W.act(u, mu) == c)


def test_stabilizer_examples():
    D = datum("A2")
    W = D.W
    gens, w_mu, reps, poin, poin_inv = D.stabilizer_data((1, 1))
    assert gens == () and w_mu.index == 0 and len(reps) == 6 and poin == LaurentQ(1)
    gens, w_mu, reps, poin, poin_inv = D.stabilizer_data((0, 0))
    assert w_mu.index == W.longest and [r.index for r in reps] == [0]
    assert poin == LaurentQ({0: 1, 2: 2, 4: 2, 6: 1})  # 1 + 2q + 2q^2 + q^3
    assert poin_inv == poin.bar()
    with pytest.raises(ValueError):
        D.stabilizer_data((-1, 2))


@pytest.mark.parametrize("t,lattice", SMALL_TYPES + RANK3_TYPES)
def test_stabilizer_poincare_factorization(t, lattice):
    D = datum(t, lattice)
    W = D.W
    full = sum((LaurentQ.monomial(2 * W.length[w]) for w in range(W.order)), LaurentQ())
    for mu in D.dominant_weights(3):
        gens, w_mu, reps, poin, _ = D.stabilizer_data(mu)
        assert len(reps) * len(W.parabolic(gens)) == W.order
        reps_poly = sum((LaurentQ.monomial(2 * len(u.word)) for u in reps), LaurentQ())
        assert reps_poly * poin == full


@pytest.mark.parametrize("t,lattice", SMALL_TYPES + RANK3_TYPES)
def test_canonical_words_reduced_and_unique(t, lattice):
    W = datum(t, lattice).W
    seen = set()
    for w in range(W.order):
        word = W.words[w]
        assert len(word) == W.inversion_count(w) == W.length[w]
        assert W.from_word(word) == w
        assert word not in seen
        seen.add(word)


@given(st.data())
def test_length_is_inversion_count_random(data):
    t, lattice = data.draw(st.sampled_from(SMALL_TYPES + RANK3_TYPES))
    W = datum(t, lattice).W
    word = data.draw(st.lists(st.integers(0, W.rank - 1), max_size=12))
    w = W.from_word(word)
    assert W.length[w] == W.inversion_count(w)
    assert len(W.words[w]) <= len(word) and (len(word) - len(W.words[w])) % 2 == 0


@given(st.data())
def test_action_preserves_pairing(data):
    t, lattice = data.draw(st.sampled_from(SMALL_TYPES + RANK3_TYPES))
    D = datum(t, lattice)
    W = D.W
    w = data.draw(st.integers(0, W.order - 1))
    mu = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=D.rank, max_size=D.rank)))
    wmu = W.act(w, mu)
    for r, alpha in enumerate(D.positive_roots):
        sign, k = W.act_root(w, r)
        assert sign * D.pair(D.positive_roots[k], wmu) == D.pair(alpha, mu)
    # the lattice is preserved
    if D.in_lattice(mu):
        assert D.in_lattice(wmu)


def test_config_roundtrip_and_pickle():
    import pickle
    D = datum("C2", "simply_connected")
    assert D.config() == {"type": [["C", 2]], "lattice": "simply_connected"}
    E = pickle.loads(pickle.dumps(D))
    assert E == D and E.positive_roots == D.positive_roots


def test_weyl_group_size_guard(monkeypatch):
    from hlgalleries import root_datum

    monkeypatch.setattr(root_datum, "MAX_WEYL_ORDER", 1000)
    assert RootDatum("D4").W.order == 192
    with pytest.raises(RootDatumError, match="more than 1000"):
        RootDatum("F4").W
