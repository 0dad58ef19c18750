"""Extended affine Weyl group, generalized alcoves and the right action by letters.

An element ``tau_mu w`` of the extended affine Weyl group and the generalized
alcove ``mu + A_w`` are the same pair ``(mu, w)``: ``mu`` a coweight in
fundamental coordinates, ``w`` an index into the finite Weyl group table.
The alcove attached to ``v`` is ``v A_f``, so the right action of a letter on
alcoves is right multiplication.

Letters are integers.  For a datum of rank l with c irreducible components:
``0..l-1`` are the finite reflections s_1..s_l, ``l..l+c-1`` the affine
reflections s_0k, and the remaining letters are the nontrivial elements of
Omega (the stabilizer of the fundamental alcove).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import NamedTuple

from .root_datum import RootDatum

UP = "up"  # A < As: A lies on the negative side of the separating wall
DOWN = "down"  # A > As
OMEGA = "omega"


class Alcove(NamedTuple):
    """The generalized alcove ``wt + A_dir`` (equivalently the element tau_wt * dir)."""

    wt: tuple
    dir: int


class Step(NamedTuple):
    alcove: tuple
    orientation: str
    wall: tuple | None  # (index of the positive root beta, level m) or None for Omega


class AffineWeyl:
    """The extended affine Weyl group W |x X^vee of a root datum."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        W = self.W = datum.W
        l = datum.rank
        c = len(datum.components)
        self.n_finite = l
        self.n_reflections = l + c
        self.identity = (datum.zero, 0)
        self.theta_reflections = tuple(W.reflection(k) for k in datum.highest_root_indices)
        self._step_cache = {}
        self._length_cache = {}
        self._word_cache = {}

        # Omega: n^gamma for dominant gamma with <theta_k, gamma> <= 1 for all k
        self.omega = []
        for gamma in self._omega_weights():
            g = self.n_lambda(gamma)
            if self.length(g) != 0:
                raise AssertionError(f"Omega element {g} has nonzero length")
            self.omega.append(g)
        self.n_letters = self.n_reflections + len(self.omega)
        self.letter_elems = tuple(
            [(datum.zero, W.simple[i]) for i in range(l)]
            + [(datum.highest_coroots[k], self.theta_reflections[k]) for k in range(c)]
            + list(self.omega)
        )
        self.letter_index = {e: t for t, e in enumerate(self.letter_elems)}
        self.letter_classes = self._letter_classes()
        self.letter_class_of = tuple(next(k for k, cls in enumerate(self.letter_classes) if t in cls)
                                     for t in range(self.n_reflections))

    def _omega_weights(self):
        datum = self.datum
        if datum.lattice == "adjoint":
            return []
        out = []
        for c in itertools.product(range(2), repeat=datum.rank):
            if not any(c):
                continue
            if all(datum.pair(theta, c) <= 1 for theta in datum.highest_roots):
                out.append(tuple(c))
        out.sort(key=datum.sort_key)
        if len(out) + 1 != datum.omega_order:
            raise AssertionError("Omega does not match X^vee / Q^vee")
        return out

    # ------------------------------------------------------------- letters
    def is_omega_letter(self, t: int) -> bool:
        return t >= self.n_reflections

    def letter_name(self, t: int) -> str:
        l, c = self.n_finite, self.n_reflections - self.n_finite
        if t < l:
            return f"s{t + 1}"
        if t < self.n_reflections:
            return "s0" if c == 1 else f"s0_{t - l + 1}"
        return f"g{t - self.n_reflections + 1}"

    def parse_letter(self, name: str) -> int:
        name = name.strip()
        for t in range(self.n_letters):
            if self.letter_name(t) == name:
                return t
        if name.startswith("s0") and name[2:].isdigit():  # s01, s02, ...
            k = int(name[2:]) - 1
            if 0 <= k < self.n_reflections - self.n_finite:
                return self.n_finite + k
        raise ValueError(f"unknown letter {name!r}")

    def word_names(self, word) -> str:
        return " ".join(self.letter_name(t) for t in word) or "()"

    def _letter_classes(self):
        """Conjugacy classes of S^a in the extended group (union-find)."""
        datum = self.datum
        l = self.n_finite
        parent = list(range(self.n_reflections))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        A = datum.cartan
        for i in range(l):
            for j in range(i + 1, l):
                if A[i][j] * A[j][i] == 1:
                    union(i, j)
        for k, comp in enumerate(datum.components):
            theta, theta_v = datum.highest_roots[k], datum.highest_coroots[k]
            for i in comp:
                if datum.pair(theta, datum.simple_coroots[i]) * theta_v[i] == 1:
                    union(l + k, i)
        for g in self.omega:
            ginv = self.inverse(g)
            for t in range(self.n_reflections):
                conj = self.mul(self.mul(g, self.letter_elems[t]), ginv)
                union(t, self.letter_index[conj])
        classes = {}
        for t in range(self.n_reflections):
            classes.setdefault(find(t), []).append(t)
        return [tuple(v) for _, v in sorted(classes.items())]

    # ------------------------------------------------------------ group law
    def mul(self, a, b):
        (mu, w), (nu, u) = a, b
        wnu = self.W.act(w, nu)
        return (tuple(x + y for x, y in zip(mu, wnu)), self.W.mul(w, u))

    def inverse(self, a):
        mu, w = a
        winv = self.W.inverse[w]
        return (tuple(-x for x in self.W.act(winv, mu)), winv)

    def translation(self, mu):
        return (tuple(mu), 0)

    def finite(self, w: int):
        return (self.datum.zero, w)

    def from_word(self, word, start=None):
        v = self.identity if start is None else start
        for t in word:
            v = self.mul(v, self.letter_elems[t])
        return v

    def translate(self, lam, A):
        """lambda + A."""
        mu, w = A
        return (tuple(x + y for x, y in zip(lam, mu)), w)

    # -------------------------------------------------------------- length
    def length(self, v) -> int:
        """Number of affine hyperplanes separating A_f from A_v."""
        res = self._length_cache.get(v)
        if res is None:
            mu, w = v
            datum = self.datum
            perm = self.W.root_perm[self.W.inverse[w]]
            res = 0
            for r, alpha in enumerate(datum.positive_roots):
                p = sum(a * c for a, c in zip(alpha, mu))
                res += abs(p) if perm[r] > 0 else abs(p - 1)
            self._length_cache[v] = res
        return res

    def n_lambda(self, lam):
        """The minimal element of the coset tau_lam W, i.e. tau_lam w_lam w_0."""
        datum = self.datum
        if not datum.is_dominant(lam):
            raise ValueError(f"{lam} is not dominant")
        W = self.W
        gens = tuple(i for i, x in enumerate(lam) if x == 0)
        stab = W.parabolic(gens)
        w_lam = max(stab, key=lambda w: W.length[w])
        return (tuple(lam), W.mul(w_lam, W.longest))

    def omega_part(self, v):
        """The g in Omega with v = v' g, v' in the non-extended affine Weyl group."""
        mu = v[0]
        datum = self.datum
        for g in [self.identity] + self.omega:
            diff = tuple(a - b for a, b in zip(mu, g[0]))
            if all(x.denominator == 1 for x in datum.to_coroot_coords(diff)):
                return g
        raise AssertionError("no Omega component found")

    def reduced_word(self, v):
        """Greedy reduced word: (tuple of reflection letters, Omega letter or None).

        Peels the smallest letter s with l(vs) < l(v) from the right.
        """
        res = self._word_cache.get(v)
        if res is not None:
            return res
        g = self.omega_part(v)
        cur = self.mul(v, self.inverse(g)) if g != self.identity else v
        letters = []
        n = self.length(cur)
        while n:
            for t in range(self.n_reflections):
                nxt = self.mul(cur, self.letter_elems[t])
                if self.length(nxt) < n:
                    letters.append(t)
                    cur = nxt
                    n -= 1
                    break
            else:
                raise AssertionError("no descent found")
        if cur != self.identity:
            raise AssertionError("greedy descent did not reach the identity")
        omega_letter = None if g == self.identity else self.letter_index[g]
        res = (tuple(reversed(letters)), omega_letter)
        self._word_cache[v] = res
        return res

    def minimal_gallery_type(self, v) -> tuple:
        """Type of a minimal gallery from A_f to A_v, Omega letter last."""
        word, g = self.reduced_word(tuple(v))
        return word + ((g,) if g is not None else ())

    def all_reduced_words(self, v, limit: int | None = None) -> list:
        """Every reduced word of v (Omega letter appended last), in lexicographic order."""
        g = self.omega_part(v)
        cur = self.mul(v, self.inverse(g))
        tail = () if g == self.identity else (self.letter_index[g],)
        memo = {}

        def words(x):
            if x in memo:
                return memo[x]
            n = self.length(x)
            if n == 0:
                return [()]
            out = []
            for t in range(self.n_reflections):
                y = self.mul(x, self.letter_elems[t])
                if self.length(y) < n:
                    out.extend(wd + (t,) for wd in words(y))
                    if limit is not None and len(out) >= limit:
                        break
            memo[x] = out
            return out

        res = sorted(wd + tail for wd in words(cur))
        return res[:limit] if limit is not None else res

    # --------------------------------------------------------- alcove step
    def step_data(self, w: int, t: int):
        """Letter action data depending only on the direction w.

        Returns ``(shift, new_dir, up, beta, offset)``: ``A t = (mu + shift, new_dir)``,
        the wall is ``H_{beta, <beta, mu> + offset}``.  For Omega letters ``up`` and
        ``beta`` are None.
        """
        key = (w, t)
        res = self._step_cache.get(key)
        if res is None:
            W = self.W
            datum = self.datum
            l = self.n_finite
            if t < l:
                sign, k = W.act_root(w, t)
                res = (datum.zero, W.rmul[w][t], sign < 0, k, 0)
            elif t < self.n_reflections:
                comp = t - l
                sign, k = W.act_root(w, datum.highest_root_indices[comp])
                shift = W.act(w, datum.highest_coroots[comp])
                new_dir = W.mul(w, self.theta_reflections[comp])
                res = (shift, new_dir, sign > 0, k, 1 if sign > 0 else -1)
            else:
                gamma, u = self.letter_elems[t]
                res = (W.act(w, gamma), W.mul(w, u), None, None, None)
            self._step_cache[key] = res
        return res

    def alcove_step(self, A, t: int) -> Step:
        mu, w = A
        shift, new_dir, up, beta, offset = self.step_data(w, t)
        At = (tuple(x + y for x, y in zip(mu, shift)), new_dir)
        if up is None:
            return Step(At, OMEGA, None)
        m = self.datum.pair(self.datum.positive_roots[beta], mu) + offset
        return Step(At, UP if up else DOWN, (beta, m))

    def is_chamber_wall(self, wall) -> bool:
        """Whether H_{beta,m} is a wall of the dominant chamber C."""
        beta, m = wall
        return m == 0 and sum(self.datum.positive_roots[beta]) == 1

    def orientation_invariance_check(self, A, t: int, lam) -> bool:
        o1 = self.alcove_step(A, t).orientation
        o2 = self.alcove_step(self.translate(lam, A), t).orientation
        return o1 == o2

    # ----------------------------------------------------------- dominance
    def is_dominant_alcove(self, A) -> bool:
        """Whether the open alcove of A lies in the dominant chamber."""
        mu, w = A
        perm = self.W.root_perm[self.W.inverse[w]]
        for i, c in enumerate(mu):
            if c < 0 or (c == 0 and perm[i] < 0):
                return False
        return True

    def barycenter_pairings(self, A) -> tuple:
        """<alpha_i, b> for an interior point b of A (exact rationals)."""
        datum = self.datum
        mu, w = A
        W = self.W
        winv = W.inverse[w]
        heights = [sum(theta) for theta in datum.highest_roots]
        out = []
        for i in range(datum.rank):
            sign, k = W.act_root(winv, i)
            root = datum.positive_roots[k]
            val = sum(Fraction(root[j], heights[datum.component_of[j]] + 1) for j in range(datum.rank))
            out.append(mu[i] + sign * val)
        return tuple(out)

    def is_dominant_alcove_exact(self, A) -> bool:
        return all(x > 0 for x in self.barycenter_pairings(A))

    # ----------------------------------------------------------- printing
    def format_elem(self, v) -> str:
        mu, w = v
        return f"tau_({','.join(map(str, mu))})·{self.W.elem(w)!r}"
