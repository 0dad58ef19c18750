import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hlgalleries import LaurentQ, ParamSpec, ParamSpecError, qinv_zero_limit, specialize

from conftest import SMALL_TYPES, aff

q = LaurentQ.q()

laurent = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=6).map(LaurentQ)


def test_basic_arithmetic():
    assert (q - 1) * (2 * q + 1) == LaurentQ({4: 2, 2: -1, 0: -1})
    assert str((q - 1) * (2 * q + 1)) == "2*q^2 - q - 1"
    assert q ** -1 == LaurentQ.monomial(-2)
    assert (q ** 2 - 1).exact_div(q - 1) == q + 1
    assert LaurentQ.monomial(1).format() == "q^(1/2)"
    assert LaurentQ.monomial(-3, 2).format("latex") == "2q^{-3/2}"
    with pytest.raises(ArithmeticError):
        (q ** 2 + 1).exact_div(q - 1)
    with pytest.raises(ArithmeticError):
        (q + 1) ** -1
    with pytest.raises(ZeroDivisionError):
        q.exact_div(LaurentQ())


def test_degree_and_bar():
    f = q ** 2 - q ** -1 + 3
    assert f.degree == 4 and f.low_degree == -2 and f.leading_coefficient == 1
    assert f.bar() == q ** -2 - q + 3
    assert LaurentQ() == 0 and not LaurentQ()


def test_specialize():
    f = (q - 1) * (2 * q + 1)
    assert specialize(f, 3) == 14
    assert specialize(q ** -1, 2) == Fraction(1, 2)
    assert specialize(LaurentQ.monomial(1), 4) == 2
    with pytest.raises(ValueError):
        specialize(LaurentQ.monomial(1), 3)


def test_qinv_zero_limit():
    f = q ** 2 + q - 1
    assert qinv_zero_limit(f, 2) == 1
    assert qinv_zero_limit(f, 3) == 0
    assert qinv_zero_limit(LaurentQ.monomial(3, 5), Fraction(3, 2)) == 5
    with pytest.raises(AssertionError):
        qinv_zero_limit(f, 1)


def test_json_roundtrip():
    f = LaurentQ({-3: 2, 4: -1})
    assert LaurentQ.from_json(f.to_json()) == f


@given(laurent, laurent, laurent)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert (a * b).bar() == a.bar() * b.bar()


@given(laurent, laurent)
def test_divide_then_multiply(a, b):
    if not b:
        return
    assert (a * b).exact_div(b) == a
    quo, rem = a.divmod(b)
    assert quo * b + rem == a


def test_exact_division_round_trip_sweep():
    rng = random.Random(11)

    def rand():
        return LaurentQ({rng.randrange(-8, 9): rng.randrange(-5, 6) for _ in range(rng.randrange(1, 6))})

    done = 0
    while done < 10 ** 4:
        a, b = rand(), rand()
        if not b:
            continue
        assert (a * b).exact_div(b) == a
        done += 1


@given(laurent, st.integers(1, 5))
def test_specialize_is_a_homomorphism(a, x):
    b = a * (q + 2)
    assert specialize(b, x * x) == specialize(a, x * x) * (x * x + 2)


def test_q_mu_examples():
    A = aff("A1")
    p = ParamSpec.equal(A)
    assert p.q_mu((2,)) == q and p.q_mu((-2,)) == q ** -1
    assert p.q_w(A.translation((2,))) == q ** 2
    p = ParamSpec(A, {"s1": 1, "s0": 3})
    assert p.q_w(A.translation((2,))) == q ** 4
    assert p.q_mu((2,)) == q ** 2  # (d_1 + d_0) / 2


def test_param_spec_conjugacy():
    C2 = aff("C2")
    p = ParamSpec(C2, {"s1": 1, "s2": 2, "s0": 3})
    assert p.class_d == (1, 2, 3)
    C2sc = aff("C2", "simply_connected")
    with pytest.raises(ParamSpecError):
        ParamSpec(C2sc, {"s2": 1, "s0": 2})
    p = ParamSpec(C2sc, {"s2": 2})
    assert p.d == (1, 2, 2)
    with pytest.raises(ParamSpecError):
        ParamSpec(aff("A2"), {"s1": 1, "s2": 2})
    with pytest.raises(ParamSpecError):
        ParamSpec(C2, {"s1": 0})
    with pytest.raises(ValueError):
        ParamSpec(C2, {"s7": 1})
    with pytest.raises(ParamSpecError):
        ParamSpec(aff("A1", "simply_connected"), {"s1": 1, "s0": 2})


def test_poincare():
    A = aff("A2")
    p = ParamSpec.equal(A)
    W = A.W
    assert p.poincare(range(W.order)) == 1 + 2 * q + 2 * q ** 2 + q ** 3
    assert p.poincare(range(W.order), inverse=True) == 1 + 2 * q ** -1 + 2 * q ** -2 + q ** -3
    B = aff("C2")
    p = ParamSpec(B, {"s1": 1, "s2": 2})
    # W(q) = (1 + q_1)(1 + q_2)(1 + q_1 q_2) with q_1 = q, q_2 = q^2
    assert p.poincare(range(B.W.order)) == (1 + q) * (1 + q ** 2) * (1 + q ** 3)


@given(st.data())
def test_q_multiplicative_on_reduced_products(data):
    t, lattice = data.draw(st.sampled_from(SMALL_TYPES))
    A = aff(t, lattice)
    classes = A.letter_classes
    vals = data.draw(st.lists(st.integers(1, 3), min_size=len(classes), max_size=len(classes)))
    d = {cls[0]: x for cls, x in zip(classes, vals)}
    p = ParamSpec(A, d)
    word = data.draw(st.lists(st.integers(0, A.n_letters - 1), max_size=10))
    split = data.draw(st.integers(0, len(word)))
    v, w = A.from_word(word[:split]), A.from_word(word[split:])
    vw = A.mul(v, w)
    if A.length(vw) == A.length(v) + A.length(w):
        assert p.q_w(vw) == p.q_w(v) * p.q_w(w)
    # q_mu is a homomorphism and q_lambda = q_{tau_lambda}^(1/2) for dominant lambda
    lam = data.draw(st.sampled_from(A.datum.dominant_weights(3)))
    assert p.q_mu(lam) * p.q_mu(lam) == p.q_w(A.translation(lam))
    mu = tuple(-x for x in lam)
    assert p.q_mu(mu) * p.q_mu(lam) == 1
