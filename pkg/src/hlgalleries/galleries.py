"""Positively and negatively folded galleries of generalized alcoves.

A gallery of type ``t = (t_1, ..., t_k)`` starts at an alcove and at each step
either crosses the face of type ``t_i`` (``C``), folds back onto itself
(``F``), or applies an Omega letter (``O``).  Statistics are kept per
conjugacy class of reflection letters as the triple (m, n, p): crossings in
the counted direction, folds, and folds on walls of the dominant chamber.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .affine_weyl import DOWN, OMEGA, UP, AffineWeyl
from .qpoly import LaurentQ, ParamSpec

CROSS, FOLD, ACT = "C", "F", "O"


class DegreeBoundViolation(AssertionError):
    """A gallery exceeded the degree bound that the theory guarantees."""


@dataclass(frozen=True)
class Gallery:
    aff: AffineWeyl = field(repr=False, compare=False)
    start: tuple
    letters: tuple
    actions: tuple
    alcoves: tuple  # A_0, ..., A_k
    walls: tuple  # (beta index, level) per step, None for Omega letters
    orientations: tuple
    positive: bool = True

    @property
    def end(self):
        return self.alcoves[-1]

    @property
    def weight(self):
        return self.alcoves[-1][0]

    @property
    def initial_direction(self) -> int:
        return self.start[1]

    @property
    def final_direction(self) -> int:
        return self.alcoves[-1][1]

    def stats(self) -> tuple:
        """Flat per-class statistics (m_0, n_0, p_0, m_1, ...)."""
        aff = self.aff
        counts = [0] * (3 * len(aff.letter_classes))
        counted = UP if self.positive else DOWN
        for t, act, orient, wall in zip(self.letters, self.actions, self.orientations, self.walls):
            if act == ACT:
                continue
            c = 3 * aff.letter_class_of[t]
            if act == CROSS:
                if orient == counted:
                    counts[c] += 1
            else:
                counts[c + 1] += 1
                if aff.is_chamber_wall(wall):
                    counts[c + 2] += 1
        return tuple(counts)

    def per_letter_stats(self) -> dict:
        """{letter name: (m, n, r, p)} as in the definitions (letters of one class pooled)."""
        s = self.stats()
        out = {}
        for k, cls in enumerate(self.aff.letter_classes):
            m, n, p = s[3 * k: 3 * k + 3]
            out["/".join(self.aff.letter_name(t) for t in cls)] = (m, n, n - p, p)
        return out

    def is_valid(self) -> bool:
        """Replay the recorded actions and check the folding condition."""
        aff = self.aff
        cur = self.start
        bad = UP if self.positive else DOWN  # orientation on which a fold is forbidden
        for i, (t, act) in enumerate(zip(self.letters, self.actions)):
            step = aff.alcove_step(cur, t)
            if step.orientation == OMEGA:
                if act != ACT:
                    return False
                cur = step.alcove
            elif act == CROSS:
                cur = step.alcove
            elif act == FOLD:
                if step.orientation == bad:
                    return False
            else:
                return False
            if cur != self.alcoves[i + 1]:
                return False
        return True

    def action_string(self) -> str:
        return " ".join(self.actions)


def _dfs(aff: AffineWeyl, t, start, positive: bool, stay_dominant: bool, record: bool):
    """Depth-first enumeration, crossing before folding.

    Yields ``(end, stats)`` or, with ``record``, ``(end, stats, trail)`` where the
    trail lists (action, orientation, wall, alcove after the step).
    """
    k = len(t)
    nclass = len(aff.letter_classes)
    class_of = aff.letter_class_of
    n_refl = aff.n_reflections
    roots = aff.datum.positive_roots
    simple_height = [sum(r) == 1 for r in roots]
    counted = UP if positive else DOWN
    if stay_dominant and not aff.is_dominant_alcove(start):
        return
    counts = [0] * (3 * nclass)
    trail = []

    def rec(i, mu, w):
        if i == k:
            if record:
                yield (mu, w), tuple(counts), tuple(trail)
            else:
                yield (mu, w), tuple(counts)
            return
        letter = t[i]
        shift, new_dir, up, beta, offset = aff.step_data(w, letter)
        nmu = tuple(x + y for x, y in zip(mu, shift))
        if letter >= n_refl:
            if record:
                trail.append((ACT, OMEGA, None, (nmu, new_dir)))
            yield from rec(i + 1, nmu, new_dir)
            if record:
                trail.pop()
            return
        c = 3 * class_of[letter]
        orient = UP if up else DOWN
        need_wall = record or up != positive
        wall = None
        if need_wall:
            m = sum(a * b for a, b in zip(roots[beta], mu)) + offset
            wall = (beta, m)
        # cross
        if not stay_dominant or aff.is_dominant_alcove((nmu, new_dir)):
            bump = orient == counted
            if bump:
                counts[c] += 1
            if record:
                trail.append((CROSS, orient, wall, (nmu, new_dir)))
            yield from rec(i + 1, nmu, new_dir)
            if record:
                trail.pop()
            if bump:
                counts[c] -= 1
        # fold: positive galleries fold only when A > As, negative ones when A < As
        if up != positive:
            on_wall = wall[1] == 0 and simple_height[beta]
            counts[c + 1] += 1
            if on_wall:
                counts[c + 2] += 1
            if record:
                trail.append((FOLD, orient, wall, (mu, w)))
            yield from rec(i + 1, mu, w)
            if record:
                trail.pop()
            counts[c + 1] -= 1
            if on_wall:
                counts[c + 2] -= 1

    yield from rec(0, tuple(start[0]), start[1])


def enumerate_pf(aff: AffineWeyl, t, start, constraint: str | None = None) -> Iterator[Gallery]:
    """All positively folded galleries of type t from start.

    ``constraint="stay_dominant"`` keeps only galleries contained in the dominant chamber.
    """
    yield from _enumerate(aff, t, start, True, constraint)


def enumerate_nf(aff: AffineWeyl, t, start, constraint: str | None = None) -> Iterator[Gallery]:
    """All negatively folded galleries of type t from start."""
    yield from _enumerate(aff, t, start, False, constraint)


def _enumerate(aff, t, start, positive, constraint):
    if constraint not in (None, "none", "stay_dominant"):
        raise ValueError(f"unknown constraint {constraint!r}")
    stay = constraint == "stay_dominant"
    t = tuple(t)
    start = (tuple(start[0]), start[1])
    for end, _, trail in _dfs(aff, t, start, positive, stay, True):
        yield Gallery(
            aff=aff,
            start=start,
            letters=t,
            actions=tuple(x[0] for x in trail),
            alcoves=(start,) + tuple(x[3] for x in trail),
            walls=tuple(x[2] for x in trail),
            orientations=tuple(x[1] for x in trail),
            positive=positive,
        )


# ------------------------------------------------------------- polynomials
class StatPolys:
    """Memoized L_sigma / C_sigma from flat statistics for a fixed parameter choice."""

    def __init__(self, params: ParamSpec):
        self.params = params
        self.class_d = params.class_d
        self._cache = {}

    def poly(self, stats: tuple, kind: str = "L") -> LaurentQ:
        key = (stats, kind)
        res = self._cache.get(key)
        if res is None:
            res = LaurentQ(1)
            shift = 0
            for k, d in enumerate(self.class_d):
                m, n, p = stats[3 * k: 3 * k + 3]
                if kind == "L":
                    shift += 2 * d * m
                    folds = n
                else:
                    shift += 2 * d * (m + p)
                    folds = n - p
                if folds:
                    res = res * (LaurentQ({2 * d: 1, 0: -1}) ** folds)
            res = res.shift(shift)
            self._cache[key] = res
        return res

    def degree(self, stats: tuple, kind: str = "L") -> int:
        """Degree in v (exact: these polynomials are monic)."""
        total = 0
        for k, d in enumerate(self.class_d):
            m, n, p = stats[3 * k: 3 * k + 3]
            total += 2 * d * (m + n)
        return total


def l_sigma(sigma: Gallery, p: ParamSpec) -> LaurentQ:
    if not sigma.positive:
        raise ValueError("L_sigma is defined for positively folded galleries; use l_minus_sigma")
    if not sigma.is_valid():
        raise ValueError("not a positively folded gallery")
    return StatPolys(p).poly(sigma.stats(), "L")


def c_sigma(sigma: Gallery, p: ParamSpec) -> LaurentQ:
    if not sigma.positive or not sigma.is_valid():
        raise ValueError("C_sigma is defined for positively folded galleries")
    return StatPolys(p).poly(sigma.stats(), "C")


def l_minus_sigma(sigma: Gallery, p: ParamSpec) -> LaurentQ:
    if sigma.positive or not sigma.is_valid():
        raise ValueError("expected a negatively folded gallery")
    return StatPolys(p).poly(sigma.stats(), "L")


# -------------------------------------------------------------- aggregates
def initial_directions(aff: AffineWeyl, lam, initial_filter="all", v: int = 0) -> list:
    """Starting directions: all of W, W^lam, or the coset W^lam v (v in W_lam)."""
    W = aff.W
    if initial_filter == "all":
        return list(range(W.order))
    gens = tuple(i for i, x in enumerate(lam) if x == 0)
    reps = W.min_coset_reps(gens)
    if initial_filter == "min_reps":
        return reps
    if initial_filter == "coset":
        if v not in W.parabolic(gens):
            raise ValueError("v must lie in the stabilizer of lambda")
        return [W.mul(u, v) for u in reps]
    raise ValueError(f"unknown initial filter {initial_filter!r}")


def l_t_table(aff: AffineWeyl, t, p: ParamSpec, starts=None, positive: bool = True,
              bound=None) -> dict:
    """{weight mu: sum q_{w_0 iota} L_sigma} over galleries of type t from A_w, w in starts.

    For negative galleries the weight is q_iota instead.  ``bound(w, stats, end)``
    is called on every gallery (used for the degree assertions).
    """
    W = aff.W
    polys = StatPolys(p)
    starts = range(W.order) if starts is None else starts
    acc = {}
    zero = aff.datum.zero
    for w in starts:
        iw = W.mul(W.longest, w) if positive else w
        pre = p.v_exp_finite(iw)
        for end, stats in _dfs(aff, tuple(t), (zero, w), positive, False, False):
            if bound is not None:
                bound(w, stats, end)
            key = (end[0], stats, pre)
            acc[key] = acc.get(key, 0) + 1
    table = {}
    for (mu, stats, pre), cnt in acc.items():
        term = polys.poly(stats, "L").shift(pre) * cnt
        table[mu] = table.get(mu, LaurentQ()) + term
    return {mu: f for mu, f in table.items() if f}


def l_t_mu(aff: AffineWeyl, t, mu, p: ParamSpec, initial_filter="all", lam=None, v: int = 0) -> LaurentQ:
    """L_t(mu) = sum over Gamma^+_t(mu) of q_{w_0 iota} L_sigma, restricted by the filter."""
    if initial_filter != "all" and lam is None:
        raise ValueError("filters need lambda")
    starts = initial_directions(aff, lam, initial_filter, v)
    return l_t_table(aff, t, p, starts).get(tuple(mu), LaurentQ())


def l_minus_t_mu(aff: AffineWeyl, t, mu, p: ParamSpec) -> LaurentQ:
    """L^-_t(mu) = sum over negatively folded galleries of q_iota L^-_sigma."""
    return l_t_table(aff, t, p, positive=False).get(tuple(mu), LaurentQ())


def l_t_mu_from_negative_alcove(aff: AffineWeyl, t, mu, p: ParamSpec) -> LaurentQ:
    """L_t(mu) as the unweighted sum over galleries of type (t_w, t) from -A_f, all w in W.

    t_w is the type of a minimal gallery from -A_f = A_{w_0} to A_w.
    """
    W = aff.W
    polys = StatPolys(p)
    mu = tuple(mu)
    start = (aff.datum.zero, W.longest)
    total = LaurentQ()
    for w in range(W.order):
        prefix = W.words[W.mul(W.longest, w)]
        for end, stats in _dfs(aff, tuple(prefix) + tuple(t), start, True, False, False):
            if end[0] == mu:
                total = total + polys.poly(stats, "L")
    return total

def l_t_AB_table(aff: AffineWeyl, t, A, p: ParamSpec, positive: bool = True) -> dict:
    """{B: L_t(A, B)} (or L^-_t(A, B))."""
    polys = StatPolys(p)
    acc = {}
    for end, stats in _dfs(aff, tuple(t), (tuple(A[0]), A[1]), positive, False, False):
        acc[(end, stats)] = acc.get((end, stats), 0) + 1
    out = {}
    for (end, stats), cnt in acc.items():
        out[end] = out.get(end, LaurentQ()) + polys.poly(stats, "L") * cnt
    return {B: f for B, f in out.items() if f}


def l_t_AB(aff: AffineWeyl, t, A, B, p: ParamSpec) -> LaurentQ:
    return l_t_AB_table(aff, t, A, p).get((tuple(B[0]), B[1]), LaurentQ())


def is_ls_gallery(sigma: Gallery, lam, p: ParamSpec) -> bool:
    """deg L_sigma + l(w_0 iota) == <rho, wt + lam> + l(w_lam) (equal parameters only)."""
    if not p.is_equal:
        raise ValueError("LS-galleries are defined for equal parameters")
    aff = sigma.aff
    return ls_excess(aff, sigma.stats(), sigma.initial_direction, sigma.weight, lam) == 0


def ls_excess(aff: AffineWeyl, stats, iota: int, wt, lam) -> Fraction:
    """(<rho, wt + lam> + l(w_lam)) - (deg_q L_sigma + l(w_0 iota)); never negative."""
    W = aff.W
    datum = aff.datum
    deg = sum(stats[3 * k] + stats[3 * k + 1] for k in range(len(aff.letter_classes)))
    lhs = deg + W.length[W.mul(W.longest, iota)]
    gens = tuple(i for i, x in enumerate(lam) if x == 0)
    l_wlam = max(W.length[u] for u in W.parabolic(gens))
    rhs = datum.rho_pair(tuple(a + b for a, b in zip(wt, lam))) + l_wlam
    return rhs - lhs


def format_gallery(sigma: Gallery, p: ParamSpec | None = None) -> str:
    """One line: start, actions, walls, weight, per-class (m, n, r, p)."""
    aff = sigma.aff
    datum = aff.datum
    W = aff.W

    def alc(A):
        return f"({','.join(map(str, A[0]))};{W.elem(A[1])!r})"

    walls = []
    for wall in sigma.walls:
        if wall is None:
            walls.append("-")
        else:
            beta, m = wall
            walls.append(f"H({''.join(map(str, datum.positive_roots[beta]))},{m})")
    stats = sigma.stats()
    vec = []
    for k in range(len(aff.letter_classes)):
        m, n, pp = stats[3 * k: 3 * k + 3]
        vec.append(f"{m}/{n}/{n - pp}/{pp}")
    line = (f"start={alc(sigma.start)} actions=[{sigma.action_string()}] "
            f"walls=[{' '.join(walls)}] weight=({','.join(map(str, sigma.weight))}) "
            f"end_dir={W.elem(sigma.final_direction)!r} m/n/r/p={'|'.join(vec)}")
    if p is not None:
        line += f" L={StatPolys(p).poly(stats, 'L')}"
    return line
