"""Reduced root data of finite type and their Weyl groups.

A coweight ``mu`` is stored as the integer vector ``c_i = <alpha_i, mu>`` of
its pairings with the simple roots ("fundamental coordinates").  This vector
is integral for every element of X^vee, whichever lattice is chosen, so the
lattice choice only enters through :meth:`RootDatum.in_lattice`.  Roots are
stored in simple-root coordinates, so ``<alpha, mu> = sum_j a_j c_j``.

Weyl group elements are indices into the element table of
:class:`WeylGroup`; index 0 is the identity.  :class:`WeylElem` pairs an index
with its canonical (lexicographically least) reduced word.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import NamedTuple, Sequence

from .qpoly import LaurentQ

Coweight = tuple  # tuple[int, ...] in fundamental coordinates

LATTICES = ("adjoint", "simply_connected")

# element tables beyond this size (E7, E8) are out of reach for full enumeration
MAX_WEYL_ORDER = 100_000


class RootDatumError(ValueError):
    """Invalid Cartan type, rank or lattice."""


def _component_gram(family: str, n: int):
    """Squared lengths and nonzero off-diagonal inner products (Bourbaki numbering)."""
    if family == "A" and n >= 1:
        lengths = [2] * n
        edges = {(i, i + 1): -1 for i in range(n - 1)}
    elif family == "B" and n >= 2:
        lengths = [2] * (n - 1) + [1]
        edges = {(i, i + 1): -1 for i in range(n - 1)}
    elif family == "C" and n >= 2:
        lengths = [2] * (n - 1) + [4]
        edges = {(i, i + 1): -1 for i in range(n - 2)}
        edges[(n - 2, n - 1)] = -2
    elif family == "D" and n >= 4:
        lengths = [2] * n
        edges = {(i, i + 1): -1 for i in range(n - 2)}
        edges[(n - 3, n - 1)] = -1
    elif family == "E" and n in (6, 7, 8):
        lengths = [2] * n
        edges = {(0, 2): -1, (1, 3): -1}
        for i in range(2, n - 1):
            edges[(i, i + 1)] = -1
    elif family == "F" and n == 4:
        lengths = [4, 4, 2, 2]
        edges = {(0, 1): -2, (1, 2): -2, (2, 3): -1}
    elif family == "G" and n == 2:
        lengths = [2, 6]
        edges = {(0, 1): -3}
    else:
        raise RootDatumError(f"invalid Cartan type {family}{n}")
    return lengths, edges


def parse_cartan_type(spec) -> tuple[tuple[str, int], ...]:
    """Accept ``"A2"``, ``"A1xB2"``, ``[["A", 2]]`` or ``[("A", 2), ("G", 2)]``."""
    if isinstance(spec, str):
        parts = [p for p in spec.replace("*", "x").split("x") if p]
        out = []
        for part in parts:
            part = part.strip()
            family, rank = part[:1].upper(), part[1:]
            if not rank.isdigit():
                raise RootDatumError(f"cannot parse Cartan type {spec!r}")
            out.append((family, int(rank)))
        if not out:
            raise RootDatumError(f"cannot parse Cartan type {spec!r}")
        return tuple(out)
    out = []
    for item in spec:
        family, rank = item
        out.append((str(family).upper(), int(rank)))
    if not out:
        raise RootDatumError("empty Cartan type")
    return tuple(out)


def _inverse_matrix(a):
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def _det(a) -> int:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return int(det)


class WeylElem(NamedTuple):
    index: int
    word: tuple

    def __repr__(self):
        if not self.word:
            return "id"
        return "s" + "s".join(str(i + 1) for i in self.word)


class RootDatum:
    """A reduced root datum of finite type with a chosen coweight lattice X^vee.

    ``lattice="adjoint"`` takes X^vee = Q^vee, ``"simply_connected"`` takes the
    full coweight lattice.
    """

    def __init__(self, cartan_type, lattice: str = "adjoint"):
        self.cartan_type = parse_cartan_type(cartan_type)
        if lattice not in LATTICES:
            raise RootDatumError(f"lattice must be one of {LATTICES}, got {lattice!r}")
        self.lattice = lattice

        lengths, edges, components = [], {}, []
        offset = 0
        for family, n in self.cartan_type:
            ln, ed = _component_gram(family, n)
            lengths += ln
            for (i, j), val in ed.items():
                edges[(offset + i, offset + j)] = val
                edges[(offset + j, offset + i)] = val
            components.append(tuple(range(offset, offset + n)))
            offset += n
        self.rank = l = offset
        self.components = tuple(components)
        self.root_lengths = tuple(lengths)
        gram = [[lengths[i] if i == j else edges.get((i, j), 0) for j in range(l)] for i in range(l)]
        # cartan[i][j] = <alpha_i, alpha_j^vee>
        self.cartan = tuple(tuple(2 * gram[i][j] // gram[j][j] for j in range(l)) for i in range(l))
        self.cartan_inv = _inverse_matrix(self.cartan)
        self.simple_coroots = tuple(tuple(self.cartan[i][j] for i in range(l)) for j in range(l))
        self.simple_roots = tuple(tuple(int(i == j) for i in range(l)) for j in range(l))
        # W-invariant form on V^*, integral on Q^vee: (a_i^v, a_j^v) = 4 (a_i, a_j) / (|a_i|^2 |a_j|^2)
        raw = [[Fraction(4 * gram[i][j], lengths[i] * lengths[j]) for j in range(l)] for i in range(l)]
        scale = 1
        for row in raw:
            for x in row:
                scale = scale * x.denominator // _gcd(scale, x.denominator)
        self.coroot_form = tuple(tuple(int(x * scale) for x in row) for row in raw)

        self._build_roots()
        self.rho = tuple(Fraction(x, 2) for x in self.two_rho)
        if lattice == "adjoint":
            self.omega_order = 1
            self.coweight_lattice_basis = self.simple_coroots
        else:
            self.omega_order = abs(_det(self.cartan))
            self.coweight_lattice_basis = self.simple_roots  # unit vectors e_j = omega_j^vee
        self._W = None

    # ---------------------------------------------------------------- roots
    def _build_roots(self):
        l = self.rank
        roots = [tuple(r) for r in self.simple_roots]
        coroots = [tuple(c) for c in self.simple_coroots]
        index = {r: k for k, r in enumerate(roots)}
        k = 0
        while k < len(roots):
            alpha, cor = roots[k], coroots[k]
            for i in range(l):
                pair = sum(alpha[j] * self.cartan[j][i] for j in range(l))  # <alpha, alpha_i^v>
                if pair == 0:
                    continue
                beta = tuple(a - pair * int(j == i) for j, a in enumerate(alpha))
                if min(beta) < 0 or beta in index:
                    continue
                ci = cor[i]  # <alpha_i, alpha^v>
                bcor = tuple(x - ci * y for x, y in zip(cor, self.simple_coroots[i]))
                index[beta] = len(roots)
                roots.append(beta)
                coroots.append(bcor)
            k += 1
        # by height; within a height reverse-lexicographic, so alpha_i has index i
        order = sorted(range(len(roots)), key=lambda r: (sum(roots[r]), tuple(-x for x in roots[r])))
        self.positive_roots = tuple(roots[r] for r in order)
        self.positive_coroots = tuple(coroots[r] for r in order)
        self.root_index = {r: k for k, r in enumerate(self.positive_roots)}
        self.two_rho = tuple(sum(col) for col in zip(*self.positive_roots))
        highest = []
        for comp in self.components:
            cands = [k for k, r in enumerate(self.positive_roots)
                     if all(r[j] == 0 for j in range(self.rank) if j not in comp)]
            highest.append(max(cands, key=lambda k: sum(self.positive_roots[k])))
        self.highest_root_indices = tuple(highest)
        self.highest_roots = tuple(self.positive_roots[k] for k in highest)
        self.highest_coroots = tuple(self.positive_coroots[k] for k in highest)
        self.component_of = tuple(next(k for k, c in enumerate(self.components) if i in c)
                                  for i in range(self.rank))

    # ------------------------------------------------------------ coweights
    def pair(self, root, mu) -> int:
        """<alpha, mu> for a root in simple-root coordinates."""
        return sum(a * c for a, c in zip(root, mu))

    def two_rho_pair(self, mu) -> int:
        """2<rho, mu>, always an integer."""
        return sum(a * c for a, c in zip(self.two_rho, mu))

    def rho_pair(self, mu) -> Fraction:
        return Fraction(self.two_rho_pair(mu), 2)

    def to_coroot_coords(self, mu) -> tuple:
        """Coordinates of mu in the basis of simple coroots (rational in general)."""
        return tuple(sum(self.cartan_inv[i][j] * mu[j] for j in range(self.rank))
                     for i in range(self.rank))

    def from_coroot_coords(self, b) -> Coweight:
        return tuple(sum(self.cartan[i][j] * b[j] for j in range(self.rank)) for i in range(self.rank))

    def in_lattice(self, mu) -> bool:
        if len(mu) != self.rank or any(int(x) != x for x in mu):
            return False
        if self.lattice == "simply_connected":
            return True
        return all(x.denominator == 1 for x in self.to_coroot_coords(mu))

    def coweight(self, coords, basis: str = "fundamental") -> Coweight:
        """Build a coweight from fundamental (``<alpha_i, .>``) or simple-coroot coordinates."""
        coords = tuple(int(x) for x in coords)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        if basis == "coroot":
            mu = self.from_coroot_coords(coords)
        elif basis == "fundamental":
            mu = coords
        else:
            raise ValueError(f"unknown basis {basis!r}")
        if not self.in_lattice(mu):
            raise ValueError(f"{coords} is not in X^vee for the {self.lattice} lattice")
        return mu

    @property
    def zero(self) -> Coweight:
        return (0,) * self.rank

    def is_dominant(self, mu) -> bool:
        return all(x >= 0 for x in mu)

    def is_regular(self, mu) -> bool:
        return all(self.pair(r, mu) != 0 for r in self.positive_roots)

    def leq(self, mu, lam) -> bool:
        """Dominance order: mu <= lam iff lam - mu is a nonnegative integral sum of simple coroots."""
        diff = tuple(a - b for a, b in zip(lam, mu))
        b = self.to_coroot_coords(diff)
        return all(x.denominator == 1 and x >= 0 for x in b)

    def dominant_weights(self, max_rho: int | Fraction) -> list:
        """All dominant mu in X^vee with <rho, mu> <= max_rho, sorted by (<rho,.>, coords)."""
        per = [sum(self.cartan_inv[i][j] for i in range(self.rank)) for j in range(self.rank)]
        bounds = [int(Fraction(max_rho) / p) for p in per]
        out = []
        for c in itertools.product(*(range(b + 1) for b in bounds)):
            if self.rho_pair(c) <= max_rho and self.in_lattice(c):
                out.append(tuple(c))
        return sorted(out, key=self.sort_key)

    def dominant_weights_below(self, lam) -> list:
        """Dominant mu with mu <= lam (the dominant weights of V(lam))."""
        b = self.to_coroot_coords(lam)
        out = []
        for n in itertools.product(*(range(int(x) + 1) for x in b)):
            mu = tuple(a - c for a, c in zip(lam, self.from_coroot_coords(n)))
            if self.is_dominant(mu):
                out.append(mu)
        return sorted(out, key=self.sort_key)

    def sort_key(self, mu):
        """Linear extension of dominance order: <rho, .> first, then lexicographic."""
        return (self.two_rho_pair(mu), tuple(mu))

    def describe(self) -> str:
        return "x".join(f"{f}{n}" for f, n in self.cartan_type)

    def config(self) -> dict:
        return {"type": [[f, n] for f, n in self.cartan_type], "lattice": self.lattice}

    def __repr__(self):
        return f"RootDatum({self.describe()!r}, lattice={self.lattice!r})"

    def __eq__(self, other):
        return (isinstance(other, RootDatum) and self.cartan_type == other.cartan_type
                and self.lattice == other.lattice)

    def __hash__(self):
        return hash((self.cartan_type, self.lattice))

    def __getstate__(self):
        return {"cartan_type": self.cartan_type, "lattice": self.lattice}

    def __setstate__(self, state):
        self.__init__(state["cartan_type"], state["lattice"])

    # ----------------------------------------------------------- Weyl group
    @property
    def W(self) -> "WeylGroup":
        if self._W is None:
            self._W = WeylGroup(self)
        return self._W

    def weyl_act(self, w, mu) -> Coweight:
        return self.W.act(_index(w), mu)

    def dominant_rep(self, mu):
        """Return (mu_plus, w) with mu_plus dominant, w(mu_plus) = mu and w of minimal length."""
        W = self.W
        mu = tuple(mu)
        w = 0
        cur = mu
        # descend: cur = w^{-1} mu; apply s_i whenever <alpha_i, cur> < 0
        while True:
            i = next((i for i, x in enumerate(cur) if x < 0), None)
            if i is None:
                break
            cur = W.act(W.simple[i], cur)
            w = W.rmul[w][i]
        return cur, W.elem(w)

    def stabilizer_data(self, mu, d_finite: Sequence[int] | None = None):
        """Stabilizer data of a dominant coweight.

        Returns ``(generators, w_mu, W^mu, W_mu(q), W_mu(q^-1))``; generators are
        simple reflection indices, ``W^mu`` the minimal left coset representatives
        of W/W_mu.  ``d_finite`` gives the parameters d(s_i) (default all 1).
        """
        if not self.is_dominant(mu):
            raise ValueError(f"{mu} is not dominant")
        W = self.W
        gens = tuple(i for i, x in enumerate(mu) if x == 0)
        stab = W.parabolic(gens)
        w_mu = max(stab, key=lambda w: W.length[w])
        reps = W.min_coset_reps(gens)
        weights = W.weighted_lengths(d_finite)
        poin = LaurentQ({})
        poin_inv = LaurentQ({})
        for w in stab:
            poin = poin + LaurentQ.monomial(2 * weights[w])
            poin_inv = poin_inv + LaurentQ.monomial(-2 * weights[w])
        return gens, W.elem(w_mu), [W.elem(u) for u in reps], poin, poin_inv


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _index(w) -> int:
    return w.index if isinstance(w, WeylElem) else int(w)


def build_root_datum(type_spec, lattice: str = "adjoint") -> RootDatum:
    return RootDatum(type_spec, lattice)


class WeylGroup:
    """Finite Weyl group of a root datum, fully enumerated.

    Elements are integers ``0..order-1`` ordered by length (BFS from the
    identity).  Each element is keyed by the image of rho^vee = (1,...,1),
    which is a regular dominant vector, so the key is faithful.
    """

    def __init__(self, datum: RootDatum):
        self.datum = datum
        l = self.rank = datum.rank
        A = datum.cartan
        ident = tuple(tuple(int(i == j) for j in range(l)) for i in range(l))
        # s_i(c) = c - c_i * alpha_i^v
        smats = []
        for i in range(l):
            col = datum.simple_coroots[i]
            smats.append(tuple(tuple(int(r == c) - (col[r] if c == i else 0) for c in range(l))
                               for r in range(l)))
        self._smats = smats
        rho_v = (1,) * l
        mats = [ident]
        keys = {rho_v: 0}
        lengths = [0]
        rmul = []
        k = 0
        while k < len(mats):
            row = []
            for i in range(l):
                m = _matmul(mats[k], smats[i])
                key = _matvec(m, rho_v)
                if key not in keys:
                    if len(mats) >= MAX_WEYL_ORDER:
                        raise RootDatumError(f"Weyl group of {datum.cartan_type} has more than "
                                             f"{MAX_WEYL_ORDER} elements; not enumerable here")
                    keys[key] = len(mats)
                    mats.append(m)
                    lengths.append(lengths[k] + 1)
                row.append(keys[key])
            rmul.append(tuple(row))
            k += 1
        self.mats = mats
        self.keys = keys
        self.length = lengths
        self.rmul = rmul
        self.order = n = len(mats)
        self.lmul = [[keys[_matvec(smats[i], _matvec(mats[w], rho_v))] for w in range(n)]
                     for i in range(l)]
        self.simple = tuple(rmul[0][i] for i in range(l))
        words = [()] * n
        for w in sorted(range(n), key=lambda w: lengths[w]):
            if w == 0:
                continue
            i = next(i for i in range(l) if lengths[self.lmul[i][w]] < lengths[w])
            words[w] = (i,) + words[self.lmul[i][w]]
        self.words = words
        inv = [0] * n
        for w in range(n):
            u = 0
            for i in reversed(words[w]):
                u = rmul[u][i]
            inv[w] = u
        self.inverse = inv
        self.longest = max(range(n), key=lambda w: lengths[w])
        # signed action on positive roots: root_perm[w][r] = +(k+1) or -(k+1) for w(alpha_r) = +-alpha_k
        roots = datum.positive_roots
        sperm = []
        for i in range(l):
            perm = []
            for alpha in roots:
                pair = sum(alpha[j] * A[j][i] for j in range(l))
                beta = tuple(a - pair * int(j == i) for j, a in enumerate(alpha))
                if min(beta) >= 0:
                    perm.append(datum.root_index[beta] + 1)
                else:
                    perm.append(-(datum.root_index[tuple(-b for b in beta)] + 1))
            sperm.append(perm)
        root_perm = [None] * n
        root_perm[0] = tuple(range(1, len(roots) + 1))
        for w in sorted(range(1, n), key=lambda w: lengths[w]):
            i = words[w][0]
            u = self.lmul[i][w]
            root_perm[w] = tuple((1 if x > 0 else -1) * sperm[i][abs(x) - 1] for x in root_perm[u])
        self.root_perm = root_perm
        self._mul_cache = {}
        self._weights_cache = {}

    def elem(self, w: int) -> WeylElem:
        return WeylElem(w, self.words[w])

    def from_word(self, word) -> int:
        w = 0
        for i in word:
            w = self.rmul[w][i]
        return w

    def mul(self, a: int, b: int) -> int:
        key = (a, b)
        res = self._mul_cache.get(key)
        if res is None:
            res = a
            for i in self.words[b]:
                res = self.rmul[res][i]
            self._mul_cache[key] = res
        return res

    def act(self, w: int, mu) -> Coweight:
        return _matvec(self.mats[w], mu)

    def act_root(self, w: int, r: int):
        """Signed index of w(alpha_r): returns (sign, k)."""
        x = self.root_perm[w][r]
        return (1 if x > 0 else -1), abs(x) - 1

    def inversion_count(self, w: int) -> int:
        return sum(1 for x in self.root_perm[w] if x < 0)

    def reflection(self, r: int) -> int:
        """The reflection s_alpha for positive root index r."""
        datum = self.datum
        alpha, cor = datum.positive_roots[r], datum.positive_coroots[r]
        image = tuple(1 - datum.pair(alpha, (1,) * self.rank) * c for c in cor)
        return self.keys[image]

    def stabilizer(self, mu) -> list:
        mu = tuple(mu)
        return [w for w in range(self.order) if self.act(w, mu) == mu]

    def parabolic(self, gens) -> list:
        gens = tuple(gens)
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                for i in gens:
                    u = self.rmul[w][i]
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return sorted(seen)

    def min_coset_reps(self, gens) -> list:
        """Minimal length representatives of W / W_J for the parabolic subgroup W_J."""
        return [w for w in range(self.order)
                if all(self.length[self.rmul[w][i]] > self.length[w] for i in gens)]

    def min_coset_reps_of(self, subgroup) -> list:
        """Minimal representatives of W/H for an arbitrary subgroup H (brute force)."""
        sub = list(subgroup)
        return [w for w in range(self.order)
                if all(self.length[self.mul(w, h)] >= self.length[w] for h in sub)]

    def weighted_lengths(self, d_finite=None) -> list:
        """sum of d(s_i) over a reduced word, for every element."""
        key = tuple(d_finite) if d_finite is not None else None
        res = self._weights_cache.get(key)
        if res is None:
            d = d_finite if d_finite is not None else (1,) * self.rank
            res = [sum(d[i] for i in self.words[w]) for w in range(self.order)]
            self._weights_cache[key] = res
        return res


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _matvec(m, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)
