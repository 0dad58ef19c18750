"""Brute-force symmetric function computations in the group algebra of X^vee.

Everything here is independent of galleries and of the Hecke algebra: the
Hall-Littlewood polynomials are obtained by literally symmetrizing the
defining rational function, Schur polynomials by the Weyl character formula,
and weight multiplicities / tensor product multiplicities by the classical
Freudenthal and Klimyk procedures.  Coefficients are LaurentQ (or int).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .qpoly import LaurentQ
from .root_datum import RootDatum

_ZERO = LaurentQ()
_ONE = LaurentQ(1)
_QINV = LaurentQ.monomial(-2)


class SymmetryError(ValueError):
    """Input to an m- or P-expansion is not W-invariant."""


class GroupAlgebraElem:
    """Finitely supported map coweight -> coefficient, read as sum c_mu x^mu."""

    __slots__ = ("datum", "terms")

    def __init__(self, datum: RootDatum, terms: dict | None = None):
        self.datum = datum
        self.terms = {tuple(k): v for k, v in (terms or {}).items() if v}

    @classmethod
    def x(cls, datum, mu, coeff=_ONE):
        return cls(datum, {tuple(mu): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return GroupAlgebraElem(self.datum, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return GroupAlgebraElem(self.datum, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GroupAlgebraElem):
            return self.scale(other)
        out = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                k = tuple(i + j for i, j in zip(a, b))
                out[k] = out.get(k, 0) + x * y
        return GroupAlgebraElem(self.datum, out)

    __rmul__ = scale

    def act(self, w: int):
        """w(sum c x^mu) = sum c x^{w mu}."""
        W = self.datum.W
        return GroupAlgebraElem(self.datum, {W.act(w, k): v for k, v in self.terms.items()})

    def map_coeffs(self, fn):
        return GroupAlgebraElem(self.datum, {k: fn(v) for k, v in self.terms.items()})

    def is_invariant(self) -> bool:
        W = self.datum.W
        return all(self.act(W.simple[i]) == self for i in range(self.datum.rank))

    def coeff(self, mu):
        return self.terms.get(tuple(mu), 0)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElem):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda kv: self.datum.sort_key(kv[0]), reverse=True)
        return " + ".join(f"({v})x^{k}" for k, v in items) or "0"


def _check_dominant(datum, lam):
    lam = tuple(lam)
    if not datum.is_dominant(lam) or not datum.in_lattice(lam):
        raise ValueError(f"{lam} is not a dominant element of X^vee")
    return lam


def monomial(datum: RootDatum, lam) -> GroupAlgebraElem:
    """m_lam = sum over the W-orbit of lam of x^mu."""
    lam = _check_dominant(datum, lam)
    W = datum.W
    orbit = {W.act(w, lam) for w in range(W.order)}
    return GroupAlgebraElem(datum, {mu: _ONE for mu in orbit})


def divide_by_denominator(datum: RootDatum, num: dict) -> dict:
    """Exactly divide by prod_{alpha>0} (1 - x^{-alpha^vee}); raises ArithmeticError if not exact."""
    res = dict(num)
    for gamma in datum.positive_coroots:
        res = _div_binomial(datum, res, gamma)
    return res


def _div_binomial(datum, f: dict, gamma) -> dict:
    # g (1 - x^-gamma) = f, peeled from the top in the 2rho-height (gamma has positive height)
    f = {k: v for k, v in f.items() if v}
    if not f:
        return {}
    height = datum.two_rho_pair
    floor = min(height(k) for k in f)
    g = {}
    while f:
        top = max(f, key=lambda k: (height(k), k))
        if height(top) < floor:
            raise ArithmeticError("inexact division in the group algebra")
        c = f.pop(top)
        g[top] = c
        low = tuple(a - b for a, b in zip(top, gamma))
        val = f.get(low, 0) + c
        if val:
            f[low] = val
        else:
            f.pop(low, None)
    return g


def _inversion_shift(datum, w):
    """c_w with w(prod(1 - x^{-a^v})) = (-1)^{l(w)} x^{c_w} prod(1 - x^{-a^v})."""
    shift = [0] * datum.rank
    for x in datum.W.root_perm[w]:
        if x < 0:
            for j, c in enumerate(datum.positive_coroots[-x - 1]):
                shift[j] += c
    return tuple(shift)


def _symmetrize_over_denominator(datum, numerator: dict) -> dict:
    """sum_w w(numerator / prod(1 - x^{-a^v})) as an exact Laurent polynomial."""
    W = datum.W
    total = {}
    for w in range(W.order):
        sign = -1 if W.length[w] % 2 else 1
        shift = _inversion_shift(datum, w)
        for mu, c in numerator.items():
            k = tuple(a - b for a, b in zip(W.act(w, mu), shift))
            total[k] = total.get(k, 0) + (c if sign > 0 else -c)
    return divide_by_denominator(datum, total)


@lru_cache(maxsize=None)
def _hall_littlewood_cached(datum: RootDatum, lam: tuple) -> GroupAlgebraElem:
    num = {lam: _ONE}
    for gamma in datum.positive_coroots:
        nxt = {}
        for mu, c in num.items():
            nxt[mu] = nxt.get(mu, _ZERO) + c
            low = tuple(a - b for a, b in zip(mu, gamma))
            nxt[low] = nxt.get(low, _ZERO) - c * _QINV
        num = {k: v for k, v in nxt.items() if v}
    sym = _symmetrize_over_denominator(datum, num)
    _, _, _, _, poin_inv = datum.stabilizer_data(lam)
    terms = {mu: c.exact_div(poin_inv) for mu, c in sym.items()}
    P = GroupAlgebraElem(datum, terms)
    # sanity: P(1) = m_lam and P at q^{-1} = 0 is s_lam
    at_one = {k: v.evaluate(1) for k, v in P.terms.items()}
    m = monomial(datum, lam)
    assert {k: v for k, v in at_one.items() if v} == {k: 1 for k in m.terms}, "P_lam(1) != m_lam"
    s = schur(datum, lam)
    at_zero = {}
    for k, v in P.terms.items():
        if v.degree > 0:
            raise AssertionError("Hall-Littlewood coefficient is not a polynomial in q^-1")
        if v.coeff(0):
            at_zero[k] = v.coeff(0)
    assert at_zero == s.terms, "P_lam(0) != s_lam"
    return P


def hall_littlewood_direct(datum: RootDatum, lam) -> GroupAlgebraElem:
    """P_lam(q^{-1}) by symmetrizing x^lam prod (1 - q^{-1} x^{-a^v}) / (1 - x^{-a^v}).

    Coefficients are LaurentQ in Z[q^{-1}].
    """
    lam = _check_dominant(datum, lam)
    return _hall_littlewood_cached(datum, lam)


@lru_cache(maxsize=None)
def _schur_cached(datum, lam):
    # sum_w (-1)^l(w) x^{w(lam+rho)-rho} over the Weyl denominator x^{-rho} prod(1 - x^{-a^v})
    rho = (1,) * datum.rank
    W = datum.W
    total = {}
    for w in range(W.order):
        sign = -1 if W.length[w] % 2 else 1
        k = tuple(a - b for a, b in zip(W.act(w, tuple(x + 1 for x in lam)), rho))
        total[k] = total.get(k, 0) + sign
    res = divide_by_denominator(datum, total)
    return GroupAlgebraElem(datum, res)


def schur(datum: RootDatum, lam) -> GroupAlgebraElem:
    """Character of V(lam) by the Weyl character formula (integer coefficients)."""
    lam = _check_dominant(datum, lam)
    return _schur_cached(datum, lam)


def weyl_dimension(datum: RootDatum, lam) -> int:
    lam = _check_dominant(datum, lam)
    num = den = 1
    for r in datum.positive_roots:
        num *= datum.pair(r, lam) + sum(r)
        den *= sum(r)
    assert num % den == 0
    return num // den


def _form(datum, x, y) -> Fraction:
    bx, by = datum.to_coroot_coords(x), datum.to_coroot_coords(y)
    F = datum.coroot_form
    return sum(bx[i] * F[i][j] * by[j] for i in range(datum.rank) for j in range(datum.rank))


@lru_cache(maxsize=None)
def _freudenthal_table(datum: RootDatum, lam: tuple) -> dict:
    """Multiplicities of all dominant weights of V(lam)."""
    rho = (1,) * datum.rank
    shifted = tuple(a + b for a, b in zip(lam, rho))
    top = _form(datum, shifted, shifted)
    mult = {lam: 1}

    def m(nu):
        nu_plus, _ = datum.dominant_rep(nu)
        return mult.get(nu_plus, 0)

    for mu in reversed(datum.dominant_weights_below(lam)):
        if mu == lam:
            continue
        total = Fraction(0)
        for cor in datum.positive_coroots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, cor))
                nu_plus, _ = datum.dominant_rep(nu)
                if not datum.leq(nu_plus, lam):
                    break
                total += m(nu) * _form(datum, nu, cor)
                k += 1
        ms = tuple(a + b for a, b in zip(mu, rho))
        val = 2 * total / (top - _form(datum, ms, ms))
        assert val.denominator == 1, "non-integral Freudenthal multiplicity"
        mult[mu] = int(val)
    return mult


def freudenthal(datum: RootDatum, lam, mu) -> int:
    """dim V(lam)_mu by Freudenthal's recursion (mu arbitrary)."""
    lam = _check_dominant(datum, lam)
    mu_plus, _ = datum.dominant_rep(tuple(mu))
    return _freudenthal_table(datum, lam).get(mu_plus, 0)


def character(datum: RootDatum, lam) -> dict:
    """{weight: multiplicity} of V(lam) from the Freudenthal table."""
    lam = _check_dominant(datum, lam)
    W = datum.W
    out = {}
    for mu, k in _freudenthal_table(datum, lam).items():
        for w in range(W.order):
            out[W.act(w, mu)] = k
    return out


def klimyk(datum: RootDatum, lam, mu) -> dict:
    """Tensor product multiplicities {nu: c_{lam mu}^nu} by Klimyk's formula."""
    lam = _check_dominant(datum, lam)
    mu = _check_dominant(datum, mu)
    W = datum.W
    rho = (1,) * datum.rank
    out = {}
    for gamma, k in character(datum, mu).items():
        x = tuple(a + b + c for a, b, c in zip(lam, gamma, rho))
        if any(datum.pair(r, x) == 0 for r in datum.positive_roots):
            continue
        dom, w = datum.dominant_rep(x)
        sign = -1 if len(w.word) % 2 else 1
        nu = tuple(a - b for a, b in zip(dom, rho))
        out[nu] = out.get(nu, 0) + sign * k
    return {nu: c for nu, c in sorted(out.items(), key=lambda kv: datum.sort_key(kv[0])) if c}


def expand_m(f: GroupAlgebraElem) -> dict:
    """{dominant mu: coefficient of m_mu} for a W-invariant f."""
    if not f.is_invariant():
        raise SymmetryError("element is not W-invariant")
    datum = f.datum
    return {mu: c for mu, c in sorted(f.terms.items(), key=lambda kv: datum.sort_key(kv[0]))
            if datum.is_dominant(mu)}


def expand_P(f: GroupAlgebraElem) -> dict:
    """{dominant lam: coefficient of P_lam} by the unitriangular solve."""
    datum = f.datum
    rest = expand_m(f)
    out = {}
    while rest:
        lam = max(rest, key=datum.sort_key)
        c = rest.pop(lam)
        out[lam] = c
        P = expand_m(hall_littlewood_direct(datum, lam))
        if P.get(lam) != _ONE:
            raise AssertionError("P_lam is not unitriangular in the monomial basis")
        for mu, d in P.items():
            if mu == lam:
                continue
            if not datum.leq(mu, lam):
                raise AssertionError("P_lam has support outside mu <= lam")
            val = rest.get(mu, _ZERO) - c * d
            if val:
                rest[mu] = val
            else:
                rest.pop(mu, None)
    return {mu: c for mu, c in sorted(out.items(), key=lambda kv: datum.sort_key(kv[0]))}
