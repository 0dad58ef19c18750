"""Extended affine Hecke algebra with parameters, in the standard basis T_v.

Elements of the extended affine Weyl group are pairs ``(mu, w)`` (see
:mod:`hlgalleries.affine_weyl`).  All coefficients are :class:`LaurentQ`.
This module is the arithmetic side against which the gallery formulas are
checked, so it never uses galleries except in the explicitly named
``*_via_galleries`` helpers.
"""

from __future__ import annotations

import itertools

from .affine_weyl import DOWN, OMEGA, UP, AffineWeyl
from .galleries import StatPolys, _dfs, l_t_AB_table
from .qpoly import LaurentQ, ParamSpec

_ZERO = LaurentQ()
_ONE = LaurentQ(1)


class HeckeElem:
    """Finitely supported map from extended affine Weyl group elements to LaurentQ."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "HeckeAlgebra", terms: dict | None = None):
        self.alg = alg
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, _ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return HeckeElem(self.alg, out)

    def __neg__(self):
        return HeckeElem(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HeckeElem":
        if isinstance(c, int):
            c = LaurentQ(c)
        if not c:
            return HeckeElem(self.alg)
        return HeckeElem(self.alg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElem):
            return self.alg.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, v) -> LaurentQ:
        return self.terms.get(v, _ZERO)

    def exact_div(self, c: LaurentQ) -> "HeckeElem":
        return HeckeElem(self.alg, {k: v.exact_div(c) for k, v in self.terms.items()})

    def bar(self) -> "HeckeElem":
        return self.alg.bar(self)

    def dump(self) -> str:
        """One term per line: ``v = tau_mu·w | coeff``, sorted by length then key."""
        aff = self.alg.aff
        lines = []
        for v in sorted(self.terms, key=lambda v: (aff.length(v), v)):
            lines.append(f"v = {aff.format_elem(v)} | {self.terms[v]}")
        return "\n".join(lines)

    def __repr__(self):
        return f"HeckeElem({len(self.terms)} terms)"


class HeckeAlgebra:
    """The extended affine Hecke algebra for a root datum and parameters d."""

    def __init__(self, params: ParamSpec):
        self.params = params
        self.aff: AffineWeyl = params.aff
        self.datum = self.aff.datum
        self.W = self.aff.W
        self._inv_cache = {}
        self._x_mu_cache = {}
        self._x_A_cache = {}
        self._qs = [LaurentQ.monomial(2 * d) for d in params.d]
        self._qs_minus_1 = [LaurentQ({2 * d: 1, 0: -1}) for d in params.d]
        self._qs_inv = [LaurentQ.monomial(-2 * d) for d in params.d]
        self._qs_inv_minus_1 = [LaurentQ({-2 * d: 1, 0: -1}) for d in params.d]

    # ----------------------------------------------------------- elements
    def zero(self) -> HeckeElem:
        return HeckeElem(self)

    def one(self) -> HeckeElem:
        return HeckeElem(self, {self.aff.identity: _ONE})

    def T(self, v, coeff: LaurentQ | int = 1) -> HeckeElem:
        if isinstance(coeff, int):
            coeff = LaurentQ(coeff)
        return HeckeElem(self, {(tuple(v[0]), v[1]): coeff})

    def T_finite(self, w: int) -> HeckeElem:
        return self.T(self.aff.finite(w))

    def elem(self, terms: dict) -> HeckeElem:
        return HeckeElem(self, terms)

    # ------------------------------------------------------ multiplication
    def right_mul_letter(self, a: HeckeElem, t: int) -> HeckeElem:
        """a * T_t."""
        aff = self.aff
        letter = aff.letter_elems[t]
        out = {}
        if aff.is_omega_letter(t):
            for x, c in a.terms.items():
                out[aff.mul(x, letter)] = c
            return HeckeElem(self, out)
        qs, qs1 = self._qs[t], self._qs_minus_1[t]
        for x, c in a.terms.items():
            xs = aff.mul(x, letter)
            if aff.length(xs) > aff.length(x):
                _acc(out, xs, c)
            else:
                _acc(out, xs, c * qs)
                _acc(out, x, c * qs1)
        return HeckeElem(self, out)

    def left_mul_letter(self, t: int, a: HeckeElem) -> HeckeElem:
        """T_t * a."""
        aff = self.aff
        letter = aff.letter_elems[t]
        out = {}
        if aff.is_omega_letter(t):
            for x, c in a.terms.items():
                out[aff.mul(letter, x)] = c
            return HeckeElem(self, out)
        qs, qs1 = self._qs[t], self._qs_minus_1[t]
        for x, c in a.terms.items():
            sx = aff.mul(letter, x)
            if aff.length(sx) > aff.length(x):
                _acc(out, sx, c)
            else:
                _acc(out, sx, c * qs)
                _acc(out, x, c * qs1)
        return HeckeElem(self, out)

    def right_mul_letter_inv(self, a: HeckeElem, t: int) -> HeckeElem:
        """a * T_t^{-1}."""
        aff = self.aff
        if aff.is_omega_letter(t):
            ginv = aff.inverse(aff.letter_elems[t])
            return HeckeElem(self, {aff.mul(x, ginv): c for x, c in a.terms.items()})
        prod = self.right_mul_letter(a, t)
        return prod.scale(self._qs_inv[t]) + a.scale(self._qs_inv_minus_1[t])

    def word(self, v) -> tuple:
        """Reduced word of v as letters, Omega letter last."""
        return self.aff.minimal_gallery_type(v)

    def right_mul_T(self, a: HeckeElem, v) -> HeckeElem:
        """a * T_v, multiplying along a reduced word of v."""
        for t in self.word(v):
            a = self.right_mul_letter(a, t)
        return a

    def mul(self, a: HeckeElem, b: HeckeElem) -> HeckeElem:
        out = HeckeElem(self)
        for y, c in sorted(b.terms.items(), key=lambda kv: self.aff.length(kv[0])):
            out = out + self.right_mul_T(a, y).scale(c)
        return out

    def right_mul_inv_T(self, a: HeckeElem, v) -> HeckeElem:
        """a * T_v^{-1}, applying inverse letters of a reduced word of v from the right."""
        for t in reversed(self.word(v)):
            a = self.right_mul_letter_inv(a, t)
        return a

    def inv_T(self, v) -> HeckeElem:
        """T_v^{-1}."""
        v = (tuple(v[0]), v[1])
        res = self._inv_cache.get(v)
        if res is None:
            word = self.word(v)
            res = self.one()
            for t in reversed(word):
                res = self.right_mul_letter_inv(res, t)
            self._inv_cache[v] = res
        return res

    def tbar(self, v) -> HeckeElem:
        """bar(T_v) = T_{v^-1}^{-1}."""
        return self.inv_T(self.aff.inverse(v))

    def bar(self, a: HeckeElem) -> HeckeElem:
        out = HeckeElem(self)
        for x, c in a.terms.items():
            out = out + self.tbar(x).scale(c.bar())
        return out

    # ------------------------------------------------- Bernstein elements
    def x_mu(self, mu) -> HeckeElem:
        """X_mu = q_mu^{-1} T_{tau_lam} T_{tau_lam'}^{-1} with mu = lam - lam', both dominant."""
        mu = tuple(mu)
        res = self._x_mu_cache.get(mu)
        if res is None:
            aff = self.aff
            lam_p = self._dominant_shift(mu)
            lam = tuple(a + b for a, b in zip(mu, lam_p))
            res = self.right_mul_inv_T(self.T(aff.translation(lam)), aff.translation(lam_p))
            res = res.scale(LaurentQ.monomial(-self.params.v_exp_mu(mu)))
            self._x_mu_cache[mu] = res
        return res

    def _dominant_shift(self, mu) -> tuple:
        """A small dominant lam' in X^vee with mu + lam' dominant."""
        datum = self.datum
        base = tuple(max(0, -x) for x in mu)
        for total in itertools.count():
            for extra in _compositions(total, datum.rank):
                cand = tuple(a + b for a, b in zip(base, extra))
                if datum.in_lattice(cand):
                    return cand

    def x_A(self, A) -> HeckeElem:
        """X_A = q_{-wt} q_dir X_wt bar(T_dir)."""
        A = (tuple(A[0]), A[1])
        res = self._x_A_cache.get(A)
        if res is None:
            mu, w = A
            p = self.params
            coeff = LaurentQ.monomial(-p.v_exp_mu(mu) + p.v_exp_finite(w))
            winv = self.aff.finite(self.W.inverse[w])
            res = self.right_mul_inv_T(self.x_mu(mu), winv).scale(coeff)
            self._x_A_cache[A] = res
        return res

    def alcove_sum(self, alc: dict) -> HeckeElem:
        """Sum of c_A X_A for an alcove-basis expansion {A: c_A}."""
        out = HeckeElem(self)
        for A, c in alc.items():
            out = out + self.x_A(A).scale(c)
        return out

    def mul_T_step(self, alc: dict, t: int) -> dict:
        """Alcove-basis expansion times T_t, by the alcove order rule."""
        aff = self.aff
        out = {}
        for A, c in alc.items():
            step = aff.alcove_step(A, t)
            if step.orientation == OMEGA:
                _acc(out, step.alcove, c)
            elif step.orientation == UP:
                _acc(out, step.alcove, c * self._qs[t])
            else:
                _acc(out, step.alcove, c)
                _acc(out, A, c * self._qs_minus_1[t])
        return {k: v for k, v in out.items() if v}

    # -------------------------------------------------- spherical pieces
    def symmetrizer(self, subgroup) -> HeckeElem:
        """sum of T_w over a list of finite Weyl group elements."""
        aff = self.aff
        return HeckeElem(self, {aff.finite(w): _ONE for w in subgroup})

    def one_0(self) -> HeckeElem:
        return self.symmetrizer(range(self.W.order))

    def theta(self, nu) -> HeckeElem:
        """Symmetrizer of the stabilizer of a dominant nu."""
        gens = tuple(i for i, x in enumerate(nu) if x == 0)
        return self.symmetrizer(self.W.parabolic(gens))

    def poincare(self, subgroup=None, inverse: bool = False) -> LaurentQ:
        sub = range(self.W.order) if subgroup is None else subgroup
        return self.params.poincare(sub, inverse)

    def macdonald_scaled(self, lam) -> HeckeElem:
        """1_0 T_{n^lam} 1_0, i.e. W(q) W_lam(q) M_lam."""
        one0 = self.one_0()
        n_lam = self.aff.n_lambda(tuple(lam))
        return self.mul(self.right_mul_T(one0, n_lam), one0)

    # ------------------------------------------- standard <-> alcove basis
    def standard_to_alcove(self, v) -> dict:
        """T_v as {A: c_A} in the alcove basis, summing L_sigma over galleries with iota = id."""
        t = self.aff.minimal_gallery_type(v)
        return l_t_AB_table(self.aff, t, self.aff.identity, self.params)

    def alcove_to_standard(self, h: HeckeElem) -> dict:
        """Expand h in the alcove basis by back-substitution on length.

        X_A has a unit monomial coefficient at T_{v_A} (v_A the element with
        alcove A) and every other term of strictly smaller length; this is
        checked for each alcove used.
        """
        aff = self.aff
        rest = dict(h.terms)
        out = {}
        while rest:
            top = max(rest, key=lambda v: (aff.length(v), v))
            xa = self.x_A(top)
            lead = xa.coeff(top)
            if not lead.is_monomial() or abs(lead.leading_coefficient) != 1:
                raise AssertionError(f"X_A for {top} has non-unit leading coefficient {lead}")
            ltop = aff.length(top)
            if any(aff.length(u) >= ltop for u in xa.terms if u != top):
                raise AssertionError(f"X_A for {top} is not triangular")
            c = rest[top].exact_div(lead)
            out[top] = c
            for u, cu in xa.terms.items():
                val = rest.get(u, _ZERO) - cu * c
                if val:
                    rest[u] = val
                else:
                    rest.pop(u, None)
        return out

    # -------------------------------------------------------------- checks
    def x_A_times_T_via_galleries(self, A, v) -> dict:
        """{B: L_t(A, B)} for t a minimal type of v."""
        t = self.aff.minimal_gallery_type(v)
        return l_t_AB_table(self.aff, t, A, self.params)

    def check_x_A_times_T(self, A, v) -> bool:
        """X_A T_v computed directly equals sum_B L_t(A,B) X_B."""
        direct = self.right_mul_T(self.x_A(A), v)
        via = self.alcove_sum(self.x_A_times_T_via_galleries(A, v))
        return direct == via

    def pittie_ram(self, lam, w: int) -> HeckeElem:
        """Gallery side of T_{w w_lam} X_lam:
        sum over sigma from A_f of type t(w n^lam) of q_{wt+lam}^{-1} q_eps L_sigma X_wt T_{eps w_0}."""
        aff, W, p = self.aff, self.W, self.params
        lam = tuple(lam)
        gens = tuple(i for i, x in enumerate(lam) if x == 0)
        if w not in W.min_coset_reps(gens):
            raise ValueError("w must be a minimal coset representative for the stabilizer of lambda")
        v = aff.mul(aff.finite(w), aff.n_lambda(lam))
        t = aff.minimal_gallery_type(v)
        polys = StatPolys(p)
        acc = {}
        for end, stats in _dfs(aff, t, aff.identity, True, False, False):
            acc[(end, stats)] = acc.get((end, stats), 0) + 1
        out = HeckeElem(self)
        for ((mu, eps), stats), cnt in acc.items():
            wt_lam = tuple(a + b for a, b in zip(mu, lam))
            coeff = polys.poly(stats, "L").shift(-p.v_exp_mu(wt_lam) + p.v_exp_finite(eps)) * cnt
            term = self.right_mul_T(self.x_mu(mu), aff.finite(W.mul(eps, W.longest)))
            out = out + term.scale(coeff)
        return out

    def pittie_ram_lhs(self, lam, w: int) -> HeckeElem:
        """T_{w w_lam} X_lam by direct arithmetic."""
        W = self.W
        gens = tuple(i for i, x in enumerate(lam) if x == 0)
        w_lam = max(W.parabolic(gens), key=lambda u: W.length[u])
        return self.mul(self.T_finite(W.mul(w, w_lam)), self.x_mu(tuple(lam)))

    def pittie_ram_middle(self, lam, w: int) -> HeckeElem:
        """q_lam^{-1} T_{w n^lam} T_{w_0}."""
        aff = self.aff
        v = aff.mul(aff.finite(w), aff.n_lambda(tuple(lam)))
        h = self.right_mul_T(self.T(v), aff.finite(self.W.longest))
        return h.scale(LaurentQ.monomial(-self.params.v_exp_mu(tuple(lam))))

    def is_central(self, h: HeckeElem) -> bool:
        """Whether h commutes with every T_s, s a finite simple reflection or affine letter."""
        for t in range(self.aff.n_letters):
            if self.right_mul_letter(h, t) != self.left_mul_letter(t, h):
                return False
        return True

    def orbit_sum_x(self, nu) -> HeckeElem:
        """sum of X_mu over the W-orbit of nu."""
        orbit = sorted({self.W.act(w, tuple(nu)) for w in range(self.W.order)})
        out = HeckeElem(self)
        for mu in orbit:
            out = out + self.x_mu(mu)
        return out

    def wall_commutation_check(self, A, t: int):
        """For a dominant A with At non-dominant across H_{alpha_i,0}: X_A T_t == T_{s_i} X_A.

        Returns None when the hypothesis does not hold.
        """
        aff = self.aff
        if not aff.is_dominant_alcove(A) or aff.is_omega_letter(t):
            return None
        step = aff.alcove_step(A, t)
        if aff.is_dominant_alcove(step.alcove):
            return None
        beta, m = step.wall
        root = self.datum.positive_roots[beta]
        if m != 0 or sum(root) != 1:
            return None
        i = root.index(1)
        lhs = self.right_mul_letter(self.x_A(A), t)
        rhs = self.left_mul_letter(i, self.x_A(A))
        return lhs == rhs


    # ------------------------------------------- reduction to dominant alcoves
    def one0_gallery_sum(self, t, A) -> HeckeElem:
        """sum over positively folded sigma of type t from A of L_sigma 1_0 X_{e(sigma)}."""
        alc = l_t_AB_table(self.aff, tuple(t), (tuple(A[0]), A[1]), self.params)
        return self.mul(self.one_0(), self.alcove_sum(alc))

    def walls_lemma_check(self, A, s: int, t) -> bool | None:
        """A dominant, As not dominant: q_s * sum_{t, A} == sum_{(s, t), A}."""
        aff = self.aff
        if aff.is_omega_letter(s) or not aff.is_dominant_alcove(A):
            return None
        if aff.is_dominant_alcove(aff.alcove_step(A, s).alcove):
            return None
        lhs = self.one0_gallery_sum(t, A).scale(self._qs[s])
        return lhs == self.one0_gallery_sum((s,) + tuple(t), A)

    def stabilizer_lemma_check(self, lam, w: int, v: int, t) -> bool:
        """A = lam + A_w with w^-1 in W^lam and v in W_lam: sums from A and from vA agree."""
        W = self.W
        gens = tuple(i for i, x in enumerate(lam) if x == 0)
        if W.inverse[w] not in W.min_coset_reps(gens) or v not in W.parabolic(gens):
            raise ValueError("need w^-1 in W^lam and v in W_lam")
        lam = tuple(lam)
        return self.one0_gallery_sum(t, (lam, w)) == self.one0_gallery_sum(t, (lam, W.mul(v, w)))

    def reducing_to_dominant_check(self, lam, mu) -> bool:
        """1_0 X_lam 1_0 T_{n^mu} == q_lam W_lam(q^-1) sum over dominant galleries of q_{w_0 iota} C_sigma 1_0 X_e."""
        aff, W, p = self.aff, self.W, self.params
        lam, mu = tuple(lam), tuple(mu)
        one0 = self.one_0()
        lhs = self.right_mul_T(self.mul(self.mul(one0, self.x_mu(lam)), one0), aff.n_lambda(mu))
        t = aff.minimal_gallery_type(aff.n_lambda(mu))
        polys = StatPolys(p)
        alc = {}
        for w in range(W.order):
            if not aff.is_dominant_alcove((lam, w)):
                continue
            pre = p.v_exp_finite(W.mul(W.longest, w))
            for end, stats in _dfs(aff, t, (lam, w), True, True, False):
                _acc(alc, end, polys.poly(stats, "C").shift(pre))
        gens = tuple(i for i, x in enumerate(lam) if x == 0)
        factor = p.poincare(W.parabolic(gens), inverse=True).shift(p.v_exp_mu(lam))
        rhs = self.mul(one0, self.alcove_sum(alc)).scale(factor)
        return lhs == rhs

def _compositions(total: int, parts: int):
    """Nonnegative integer vectors of the given length and sum, in lexicographic order."""
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cut + (total + parts - 1,):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


def _acc(d: dict, k, v):
    s = d.get(k)
    s = v if s is None else s + v
    if s:
        d[k] = s
    else:
        d.pop(k, None)


__all__ = ["HeckeAlgebra", "HeckeElem", "UP", "DOWN", "OMEGA"]
