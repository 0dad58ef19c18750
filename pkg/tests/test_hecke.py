import itertools
import random

import pytest

from hlgalleries import LaurentQ

from conftest import SMALL_TYPES, aff, hecke

q = LaurentQ.q()

UNEQUAL = [("C2", "adjoint", (("s2", 2), ("s0", 3))), ("C2", "simply_connected", (("s2", 2),)),
           ("G2", "adjoint", (("s1", 2),)), ("A1", "adjoint", (("s0", 2),))]


def test_quadratic_relation_and_inverse():
    H = hecke("A1")
    A = H.aff
    for s in range(A.n_reflections):
        Ts = H.T(A.letter_elems[s])
        assert H.mul(Ts, Ts) == H.one().scale(q) + Ts.scale(q - 1)
        assert H.mul(Ts, H.inv_T(A.letter_elems[s])) == H.one()
    H = hecke("C2", "adjoint", (("s2", 2),))
    Ts = H.T(H.aff.letter_elems[1])
    assert H.mul(Ts, Ts) == H.one().scale(q ** 2) + Ts.scale(q ** 2 - 1)


def test_length_additive_products():
    H = hecke("A2")
    A = H.aff
    s1, s2 = A.letter_elems[0], A.letter_elems[1]
    assert H.mul(H.T(s1), H.T(s2)) == H.T(A.mul(s1, s2))
    H1 = hecke("A1")
    word = (0, 1, 0, 1, 0)
    prod = H1.one()
    for t in word:
        prod = H1.right_mul_letter(prod, t)
    assert prod == H1.T(H1.aff.from_word(word))


@pytest.mark.parametrize("t,lattice", SMALL_TYPES)
def test_associativity_and_bar(t, lattice):
    H = hecke(t, lattice)
    A = H.aff
    rng = random.Random(0)

    def rand():
        out = H.zero()
        for _ in range(2):
            v = A.from_word([rng.randrange(A.n_letters) for _ in range(rng.randrange(4))])
            out = out + H.T(v, LaurentQ.monomial(rng.randrange(-2, 3), rng.randrange(1, 3)))
        return out

    for _ in range(5):
        a, b, c = rand(), rand(), rand()
        assert H.mul(H.mul(a, b), c) == H.mul(a, H.mul(b, c))
        assert H.bar(H.bar(a)) == a
        assert H.bar(H.mul(a, b)) == H.mul(H.bar(a), H.bar(b))
    assert H.bar(H.one()) == H.one()


@pytest.mark.parametrize("t,lattice", SMALL_TYPES)
def test_spherical_idempotent(t, lattice):
    H = hecke(t, lattice)
    W = H.W
    p = H.params
    one0 = H.one_0()
    assert H.mul(one0, one0) == one0.scale(H.poincare())
    assert H.bar(one0) == one0.scale(p.q_w(W.longest) ** -1)
    for w in range(W.order):
        assert H.mul(H.T_finite(w), one0) == one0.scale(p.q_w(w))
    assert H.theta((1,) * H.datum.rank) == H.one()


def test_a1_one0():
    H = hecke("A1")
    one0 = H.one_0()
    assert one0 == H.one() + H.T_finite(1)
    assert H.mul(one0, one0) == one0.scale(1 + q)
    assert H.mul(H.T_finite(1), one0) == one0.scale(q)


def test_bernstein_elements_a1():
    H = hecke("A1")
    A = H.aff
    s1, s0 = 0, 1
    assert H.x_mu((0,)) == H.one()
    assert H.x_mu((2,)) == H.T(A.from_word((s0, s1))).scale(q ** -1)
    expect = H.mul(H.inv_T(A.letter_elems[s1]), H.inv_T(A.letter_elems[s0])).scale(q)
    assert H.x_mu((-2,)) == expect


@pytest.mark.parametrize("t,lattice", SMALL_TYPES)
def test_x_mu_homomorphism(t, lattice):
    H = hecke(t, lattice)
    D = H.datum
    rng = random.Random(1)
    weights = [c for c in itertools.product(range(-1, 2), repeat=D.rank) if D.in_lattice(c)]
    for _ in range(6):
        mu, nu = rng.choice(weights), rng.choice(weights)
        total = tuple(a + b for a, b in zip(mu, nu))
        assert H.mul(H.x_mu(mu), H.x_mu(nu)) == H.x_mu(total)
    for lam in D.dominant_weights(2):
        assert H.x_mu(lam) == H.T(H.aff.translation(lam)).scale(H.params.q_mu(lam) ** -1)


def test_x_a_examples():
    H = hecke("A1")
    A = H.aff
    assert H.x_A(A.identity) == H.one()
    assert H.x_A(((2,), 1)).scale(q) == H.T(A.letter_elems[1])
    # translation rule X_lam X_A = q_lam X_{lam + A}
    for B in [((0,), 1), ((-2,), 0), ((4,), 1)]:
        lhs = H.mul(H.x_mu((2,)), H.x_A(B))
        assert lhs == H.x_A(A.translate((2,), B)).scale(q)


def test_mul_t_step_examples():
    H = hecke("A1")
    s0 = 1
    assert H.mul_T_step({((0,), 0): LaurentQ(1)}, s0) == {((2,), 1): q}
    assert H.mul_T_step({((0,), 1): LaurentQ(1)}, s0) == {((-2,), 0): LaurentQ(1), ((0,), 1): q - 1}
    Hs = hecke("A1", "simply_connected")
    g = 2
    A = Hs.aff
    assert Hs.mul_T_step({A.identity: LaurentQ(1)}, g) == {A.letter_elems[g]: LaurentQ(1)}
    assert Hs.mul(Hs.x_A(A.identity), Hs.T(A.letter_elems[g])) == Hs.x_A(A.letter_elems[g])


def test_standard_to_alcove_examples():
    H = hecke("A1")
    A = H.aff
    assert H.standard_to_alcove(A.identity) == {A.identity: LaurentQ(1)}
    assert H.standard_to_alcove(A.letter_elems[1]) == {((2,), 1): q}
    assert H.standard_to_alcove(A.letter_elems[0]) == {((0,), 1): LaurentQ(1), ((0,), 0): q - 1}


@pytest.mark.parametrize("t,lattice,d", [(t, l, None) for t, l in SMALL_TYPES] + UNEQUAL)
def test_standard_to_alcove_routes_agree(t, lattice, d):
    H = hecke(t, lattice, d)
    A = H.aff
    rng = random.Random(3)
    for _ in range(8):
        v = A.from_word([rng.randrange(A.n_letters) for _ in range(rng.randrange(5))])
        gal = H.standard_to_alcove(v)
        assert H.alcove_to_standard(H.T(v)) == gal
        assert H.alcove_sum(gal) == H.T(v)


@pytest.mark.parametrize("t,lattice,d", [(t, l, None) for t, l in SMALL_TYPES] + UNEQUAL)
def test_x_a_times_t(t, lattice, d):
    H = hecke(t, lattice, d)
    A = H.aff
    rng = random.Random(8)
    for _ in range(6):
        X = A.from_word([rng.randrange(A.n_letters) for _ in range(rng.randrange(6))])
        v = A.from_word([rng.randrange(A.n_letters) for _ in range(rng.randrange(5))])
        assert H.check_x_A_times_T(X, v)


@pytest.mark.parametrize("t,lattice", SMALL_TYPES)
def test_centrality_of_orbit_sums(t, lattice):
    H = hecke(t, lattice)
    for nu in H.datum.dominant_weights(2):
        assert H.is_central(H.orbit_sum_x(nu))
    # a single non-invariant X_mu is not central
    nu = H.datum.dominant_weights(2)[-1]
    if any(nu):
        assert not H.is_central(H.x_mu(nu))


@pytest.mark.parametrize("t,lattice,d", [(t, l, None) for t, l in SMALL_TYPES] + UNEQUAL)
def test_wall_commutation(t, lattice, d):
    H = hecke(t, lattice, d)
    A = H.aff
    rng = random.Random(6)
    hits = 0
    for _ in range(60):
        X = A.from_word([rng.randrange(A.n_letters) for _ in range(rng.randrange(6))])
        for s in range(A.n_reflections):
            res = H.wall_commutation_check(X, s)
            if res is not None:
                assert res
                hits += 1
    assert hits > 0


@pytest.mark.parametrize("t,lattice,d", [("A1", "adjoint", None), ("A2", "adjoint", None),
                                         ("A1", "simply_connected", None)] + UNEQUAL[:2])
def test_walls_and_stabilizer_lemmas(t, lattice, d):
    H = hecke(t, lattice, d)
    A, D, W = H.aff, H.datum, H.W
    rng = random.Random(2)
    hits = 0
    for lam in D.dominant_weights(2):
        for w in range(W.order):
            X = (lam, w)
            for s in range(A.n_reflections):
                word = tuple(rng.randrange(A.n_letters) for _ in range(2))
                res = H.walls_lemma_check(X, s, word)
                if res is not None:
                    assert res
                    hits += 1
        gens = tuple(i for i, x in enumerate(lam) if x == 0)
        reps = W.min_coset_reps(gens)
        for w in range(W.order):
            if W.inverse[w] not in reps:
                continue
            for v in W.parabolic(gens):
                word = tuple(rng.randrange(A.n_letters) for _ in range(2))
                assert H.stabilizer_lemma_check(lam, w, v, word)
    assert hits > 0
    # lambda regular: only v = id is allowed
    with pytest.raises(ValueError):
        H.stabilizer_lemma_check((2,) * D.rank, 0, W.longest, ())


@pytest.mark.parametrize("t,lattice,d", [("A1", "adjoint", None), ("A2", "adjoint", None),
                                         ("G2", "adjoint", None), ("A1", "simply_connected", None)]
                         + UNEQUAL[:2])
def test_reduction_to_dominant_galleries(t, lattice, d):
    H = hecke(t, lattice, d)
    D = H.datum
    weights = D.dominant_weights(2)
    for lam in weights:
        for mu in weights:
            assert H.reducing_to_dominant_check(lam, mu)


@pytest.mark.parametrize("t,lattice,d", [(t, l, None) for t, l in SMALL_TYPES[:4]] + UNEQUAL[:1])
def test_pittie_ram(t, lattice, d):
    H = hecke(t, lattice, d)
    D, W = H.datum, H.W
    for lam in D.dominant_weights(2):
        gens = tuple(i for i, x in enumerate(lam) if x == 0)
        for w in W.min_coset_reps(gens):
            lhs = H.pittie_ram_lhs(lam, w)
            assert lhs == H.pittie_ram_middle(lam, w) == H.pittie_ram(lam, w)
    with pytest.raises(ValueError):
        H.pittie_ram(D.zero, W.longest)


def test_pittie_ram_trivial_and_a1():
    H = hecke("A1")
    W = H.W
    assert H.pittie_ram((0,), 0) == H.T_finite(W.longest)
    A = H.aff
    assert H.pittie_ram_middle((2,), 0) == H.T(A.from_word((1, 0))).scale(q ** -1)


def test_macdonald_scaled():
    H = hecke("A1")
    A = H.aff
    assert H.macdonald_scaled((0,)) == H.one_0().scale(1 + q)
    m = H.macdonald_scaled((2,))
    one0 = H.one_0()
    assert m == H.mul(H.mul(one0, H.T(A.letter_elems[1])), one0)
    # support lies in the double coset W tau_lam W
    W = H.W
    coset = {A.mul(A.mul(A.finite(u), A.translation((2,))), A.finite(w))
             for u in range(W.order) for w in range(W.order)}
    assert set(m.terms) <= coset


def test_dump_format():
    H = hecke("A1")
    lines = H.one_0().dump().splitlines()
    assert lines == ["v = tau_(0)·id | 1", "v = tau_(0)·s1 | 1"]
