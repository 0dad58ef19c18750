"""Satake coefficients, structure constants, Kostka and Littlewood-Richardson numbers.

The gallery routes enumerate positively (or negatively) folded galleries of
the minimal type t^lam and aggregate them by (end alcove, statistics, initial
direction); every formula below is a reweighting of that census.  The oracle
routes go through :mod:`hlgalleries.sym_oracle` (equal parameters) or through
direct arithmetic in :mod:`hlgalleries.hecke` (any parameters).
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .affine_weyl import AffineWeyl
from .galleries import DegreeBoundViolation, StatPolys, _dfs
from .qpoly import LaurentQ, ParamSpec
from .root_datum import RootDatum
from . import sym_oracle

SATAKE_ROUTES = ("div", "min_reps", "final_dir", "negative")
STRUCTURE_ROUTES = ("div", "final_dir")

_ZERO = LaurentQ()
_ONE = LaurentQ(1)


def coords_key(mu) -> str:
    return ",".join(str(x) for x in mu)


@dataclass
class CoeffTable:
    """Coefficients indexed by dominant coweights, with where they came from."""

    kind: str  # "satake" or "structure"
    datum: RootDatum
    params: ParamSpec
    lam: tuple
    mu: tuple | None
    coefficients: dict
    provenance: str = "gallery"
    route: str | None = None
    census: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    def __post_init__(self):
        datum = self.datum
        self.coefficients = {k: v for k, v in sorted(self.coefficients.items(),
                                                     key=lambda kv: datum.sort_key(kv[0]), reverse=True)
                             if v}

    def __getitem__(self, nu):
        return self.coefficients.get(tuple(nu), _ZERO)

    def __eq__(self, other):
        if not isinstance(other, CoeffTable):
            return NotImplemented
        return self.coefficients == other.coefficients

    def query(self, mu) -> LaurentQ:
        """L_{lam mu} for arbitrary mu: q_{mu - mu^+} L_{lam mu^+}."""
        if self.kind != "satake":
            raise ValueError("query is defined for Satake tables")
        mu = tuple(mu)
        mu_plus, _ = self.datum.dominant_rep(mu)
        diff = tuple(a - b for a, b in zip(mu, mu_plus))
        return self[mu_plus].shift(self.params.v_exp_mu(diff))

    def context(self) -> dict:
        ctx = {
            "kind": self.kind,
            "type": self.datum.describe(),
            "lattice": self.datum.lattice,
            "coordinates": "fundamental (<alpha_i, .>)",
            "params": self.params.describe(),
            "lambda": list(self.lam),
        }
        if self.mu is not None:
            ctx["mu"] = list(self.mu)
        ctx["route"] = self.route
        ctx["provenance"] = self.provenance
        return ctx

    def to_json(self) -> dict:
        return {
            "context": self.context(),
            "coefficients": {coords_key(k): v.to_json() for k, v in self.coefficients.items()},
            "gallery_census": self.census,
            "checks": self.checks,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def diff(self, other: "CoeffTable") -> list:
        """Lines describing every disagreement with another table."""
        out = []
        keys = sorted(set(self.coefficients) | set(other.coefficients), key=self.datum.sort_key)
        for k in keys:
            a, b = self[k], other[k]
            if a != b:
                out.append(f"{coords_key(k)}: {a} ({self.route or self.provenance}) "
                           f"!= {b} ({other.route or other.provenance})")
        return out


# ------------------------------------------------------------ enumeration
def _census_worker(args):
    datum, t, starts, positive, stay = args
    aff = AffineWeyl(datum)
    acc = {}
    for w_start in starts:
        for end, stats in _dfs(aff, t, w_start, positive, stay, False):
            key = (end, stats, w_start[1])
            acc[key] = acc.get(key, 0) + 1
    return acc


def gallery_census(aff: AffineWeyl, t, starts, positive=True, stay_dominant=False, jobs: int = 1) -> dict:
    """{(end alcove, stats, initial direction): count} over galleries of type t from each start."""
    t = tuple(t)
    starts = [(tuple(A[0]), A[1]) for A in starts]
    if jobs <= 1 or len(starts) < 2:
        return _census_worker((aff.datum, t, starts, positive, stay_dominant))
    chunks = [starts[i::jobs] for i in range(jobs)]
    total = {}
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for part in ex.map(_census_worker, [(aff.datum, t, c, positive, stay_dominant) for c in chunks if c]):
            for k, v in part.items():
                total[k] = total.get(k, 0) + v
    return total


def _stab(W, lam):
    gens = tuple(i for i, x in enumerate(lam) if x == 0)
    stab = W.parabolic(gens)
    w_lam = max(stab, key=lambda u: W.length[u])
    return gens, stab, w_lam


def _check_dominant(datum, lam):
    lam = tuple(int(x) for x in lam)
    if len(lam) != datum.rank or not datum.is_dominant(lam) or not datum.in_lattice(lam):
        raise ValueError(f"{lam} is not a dominant element of X^vee")
    return lam


def _deg_q_stats(aff, stats, p):
    # deg_q of L_sigma = C_sigma degree for equal parameters: number of counted crossings + folds
    return sum(stats[3 * k] + stats[3 * k + 1] for k in range(len(aff.letter_classes)))


# ---------------------------------------------------------------- Satake
def _gallery_type(aff: AffineWeyl, lam, word):
    """t^lam: the canonical minimal type of n^lam, or a caller supplied reduced word of it."""
    n_lam = aff.n_lambda(lam)
    if word is None:
        return aff.minimal_gallery_type(n_lam)
    word = tuple(word)
    if aff.from_word(word) != n_lam or sum(not aff.is_omega_letter(t) for t in word) != aff.length(n_lam):
        raise ValueError(f"{aff.word_names(word)} is not a reduced word of n^{lam}")
    return word


def satake(datum: RootDatum, lam, p: ParamSpec | None = None, route: str = "div",
           v: int | None = None, jobs: int = 1, aff: AffineWeyl | None = None,
           word=None) -> CoeffTable:
    """L_{lam mu} for all dominant mu by one of the gallery formulas.

    ``route="min_reps"`` with ``v`` in W_lam uses the initial directions W^lam v
    and the prefactor q_{w_lam v}^{-1}.  ``word`` overrides the reduced word of
    n^lam used as gallery type.
    """
    aff = aff or AffineWeyl(datum)
    p = p or ParamSpec(aff)
    lam = _check_dominant(datum, lam)
    W = aff.W
    gens, stab, w_lam = _stab(W, lam)
    t = _gallery_type(aff, lam, word)
    polys = StatPolys(p)
    zero = datum.zero
    positive = route != "negative"
    if route in ("div", "final_dir", "negative"):
        dirs = list(range(W.order))
    elif route == "min_reps":
        v = 0 if v is None else v
        if v not in stab:
            raise ValueError("v must lie in the stabilizer of lambda")
        dirs = [W.mul(u, v) for u in W.min_coset_reps(gens)]
    else:
        raise ValueError(f"unknown Satake route {route!r}; expected one of {SATAKE_ROUTES}")
    census = gallery_census(aff, t, [(zero, w) for w in dirs], positive, False, jobs)

    if p.is_equal:
        l_wlam = W.length[w_lam]
        for (end, stats, iota), _ in census.items():
            iw = W.mul(W.longest, iota) if positive else iota
            lhs = _deg_q_stats(aff, stats, p) + W.length[iw]
            wt = end[0] if positive else W.act(W.longest, end[0])
            rhs = datum.rho_pair(tuple(a + b for a, b in zip(wt, lam))) + l_wlam
            if lhs > rhs:
                raise DegreeBoundViolation(f"gallery from direction {iota} to {end} breaks the degree bound")

    final_ok = None
    if route == "final_dir":
        lam_low = W.act(W.longest, lam)
        final_ok = set(W.min_coset_reps(tuple(i for i, x in enumerate(lam_low) if x == 0)))

    sums = {}
    counts = {}
    ls_counts = {}
    for (end, stats, iota), cnt in census.items():
        mu = end[0]
        counts[mu] = counts.get(mu, 0) + cnt
        if final_ok is not None and end[1] not in final_ok:
            continue
        if not datum.is_dominant(mu):
            continue
        pre = p.v_exp_finite(W.mul(W.longest, iota)) if positive else p.v_exp_finite(iota)
        term = polys.poly(stats, "L").shift(pre) * cnt
        sums[mu] = sums.get(mu, _ZERO) + term

    if route == "div":
        denom = p.poincare(stab)
        coeffs = {mu: f.exact_div(denom) for mu, f in sums.items()}
    elif route == "min_reps":
        shift = -p.v_exp_finite(W.mul(w_lam, v))
        coeffs = {mu: f.shift(shift) for mu, f in sums.items()}
    elif route == "final_dir":
        shift = -p.v_exp_finite(w_lam)
        coeffs = {mu: f.shift(shift) for mu, f in sums.items()}
    else:
        denom = p.poincare(stab)
        coeffs = {mu: f.exact_div(denom).shift(2 * p.v_exp_mu(mu)) for mu, f in sums.items()}

    if p.is_equal and positive:
        for (end, stats, iota), cnt in census.items():
            if ls_excess_equal(aff, stats, iota, end[0], lam) == 0:
                key = end[0]
                ls_counts[key] = ls_counts.get(key, 0) + cnt
    cen = {
        "type": aff.word_names(t),
        "galleries": sum(counts.values()),
        "by_weight": {coords_key(k): c for k, c in sorted(counts.items(), key=lambda kv: datum.sort_key(kv[0]))},
    }
    if ls_counts:
        cen["ls_by_weight"] = {coords_key(k): c for k, c in
                               sorted(ls_counts.items(), key=lambda kv: datum.sort_key(kv[0]))}
    name = route if v in (None, 0) else f"{route}[v={W.elem(v)!r}]"
    return CoeffTable("satake", datum, p, lam, None, coeffs, "gallery", name, cen)


def ls_excess_equal(aff, stats, iota, wt, lam):
    """(<rho, wt + lam> + l(w_lam)) - (deg L_sigma + l(w_0 iota)), equal parameters."""
    W = aff.W
    _, _, w_lam = _stab(W, lam)
    lhs = _deg_q_stats(aff, stats, None) + W.length[W.mul(W.longest, iota)]
    return aff.datum.rho_pair(tuple(a + b for a, b in zip(wt, lam))) + W.length[w_lam] - lhs


def satake_oracle(datum: RootDatum, lam, aff: AffineWeyl | None = None) -> CoeffTable:
    """L_{lam mu} = q^{<rho, lam + mu>} [m_mu] P_lam(q^{-1}) (equal parameters)."""
    aff = aff or AffineWeyl(datum)
    lam = _check_dominant(datum, lam)
    P = sym_oracle.expand_m(sym_oracle.hall_littlewood_direct(datum, lam))
    coeffs = {mu: c.shift(datum.two_rho_pair(tuple(a + b for a, b in zip(lam, mu))))
              for mu, c in P.items()}
    return CoeffTable("satake", datum, ParamSpec(aff), lam, None, coeffs, "oracle", "hall_littlewood")


def hecke_satake_identity(alg, table: CoeffTable) -> bool:
    """W_lam(q) sum_mu q_mu^{-1} L_{lam mu} sum_{nu in W mu} X_nu 1_0 == 1_0 T_{n^lam} 1_0."""
    p = alg.params
    W = alg.W
    lam = table.lam
    _, stab, _ = _stab(W, lam)
    one0 = alg.one_0()
    lhs = alg.zero()
    for mu, L in table.coefficients.items():
        coeff = L.shift(-p.v_exp_mu(mu))
        lhs = lhs + alg.orbit_sum_x(mu).scale(coeff)
    lhs = alg.mul(lhs, one0).scale(p.poincare(stab))
    return lhs == alg.macdonald_scaled(lam)


# ----------------------------------------------------------------- Kostka
def kostka_ls(datum: RootDatum, lam, mu, aff: AffineWeyl | None = None) -> int:
    """Number of LS-galleries of type t^lam from 0 with weight mu (any coweight mu)."""
    aff = aff or AffineWeyl(datum)
    lam = _check_dominant(datum, lam)
    mu = tuple(mu)
    t = aff.minimal_gallery_type(aff.n_lambda(lam))
    census = gallery_census(aff, t, [(datum.zero, w) for w in range(aff.W.order)])
    return sum(cnt for (end, stats, iota), cnt in census.items()
               if end[0] == mu and ls_excess_equal(aff, stats, iota, mu, lam) == 0)


# ------------------------------------------------------ correction factor
def f_factor(p: ParamSpec, mu, nu, w: int) -> LaurentQ:
    """F_{mu nu}^w = q_w sum over v in W^{w_0 mu} cap W_nu w of q_v^{-1}."""
    W = p.datum.W
    mu, nu = tuple(mu), tuple(nu)
    mu_low = W.act(W.longest, mu)
    reps = set(W.min_coset_reps(tuple(i for i, x in enumerate(mu_low) if x == 0)))
    _, stab_nu, _ = _stab(W, nu)
    total = _ZERO
    for u in stab_nu:
        x = W.mul(u, w)
        if x in reps:
            total = total + LaurentQ.monomial(-p.v_exp_finite(x))
    return total.shift(p.v_exp_finite(w))


# ---------------------------------------------------- structure constants
def structure(datum: RootDatum, lam, mu, p: ParamSpec | None = None, route: str = "div",
              jobs: int = 1, aff: AffineWeyl | None = None, word=None) -> CoeffTable:
    """C_{lam mu}^nu for all dominant nu from galleries of type t^mu starting in lam, inside C."""
    aff = aff or AffineWeyl(datum)
    p = p or ParamSpec(aff)
    lam = _check_dominant(datum, lam)
    mu = _check_dominant(datum, mu)
    if route not in STRUCTURE_ROUTES:
        raise ValueError(f"unknown structure route {route!r}; expected one of {STRUCTURE_ROUTES}")
    W = aff.W
    _, stab_mu, w_mu = _stab(W, mu)
    t = _gallery_type(aff, mu, word)
    starts = [(lam, w) for w in range(W.order) if aff.is_dominant_alcove((lam, w))]
    census = gallery_census(aff, t, starts, True, True, jobs)
    polys = StatPolys(p)

    if p.is_equal:
        l_wmu = W.length[w_mu]
        for (end, stats, iota), _ in census.items():
            nu = end[0]
            lhs = _deg_q_stats(aff, stats, p) + W.length[W.mul(W.longest, iota)]
            rhs = datum.rho_pair(tuple(b - a + c for a, b, c in zip(lam, mu, nu))) + l_wmu
            if lhs > rhs:
                raise DegreeBoundViolation(f"dominant gallery from {lam}+A_{iota} to {end} breaks the degree bound")

    f_cache = {}
    sums = {}
    counts = {}
    ls_counts = {}
    for (end, stats, iota), cnt in census.items():
        nu, eps = end
        counts[nu] = counts.get(nu, 0) + cnt
        term = polys.poly(stats, "C").shift(p.v_exp_finite(W.mul(W.longest, iota))) * cnt
        if route == "final_dir":
            key = (nu, eps)
            if key not in f_cache:
                f_cache[key] = f_factor(p, mu, nu, eps)
            if not f_cache[key]:
                continue
            term = term * f_cache[key]
        sums[nu] = sums.get(nu, _ZERO) + term
        if p.is_equal and _lr_excess(aff, stats, iota, lam, mu, nu) == 0:
            ls_counts[nu] = ls_counts.get(nu, 0) + cnt

    if route == "div":
        denom = p.poincare(stab_mu)
        coeffs = {}
        for nu, f in sums.items():
            _, stab_nu, _ = _stab(W, nu)
            coeffs[nu] = (f * p.poincare(stab_nu, inverse=True)).exact_div(denom)
    else:
        shift = -p.v_exp_finite(w_mu)
        coeffs = {nu: f.shift(shift) for nu, f in sums.items()}
    cen = {
        "type": aff.word_names(t),
        "starts": len(starts),
        "galleries": sum(counts.values()),
        "by_weight": {coords_key(k): c for k, c in sorted(counts.items(), key=lambda kv: datum.sort_key(kv[0]))},
    }
    if ls_counts:
        cen["ls_by_weight"] = {coords_key(k): c for k, c in
                               sorted(ls_counts.items(), key=lambda kv: datum.sort_key(kv[0]))}
    return CoeffTable("structure", datum, p, lam, mu, coeffs, "gallery", route, cen)


def _lr_excess(aff, stats, iota, lam, mu, nu):
    W = aff.W
    _, _, w_mu = _stab(W, mu)
    lhs = _deg_q_stats(aff, stats, None) + W.length[W.mul(W.longest, iota)]
    return aff.datum.rho_pair(tuple(b - a + c for a, b, c in zip(lam, mu, nu))) + W.length[w_mu] - lhs


def structure_oracle(datum: RootDatum, lam, mu, aff: AffineWeyl | None = None) -> CoeffTable:
    """C = q^{<rho, mu - lam + nu>} [P_nu](P_lam P_mu) (equal parameters)."""
    aff = aff or AffineWeyl(datum)
    lam = _check_dominant(datum, lam)
    mu = _check_dominant(datum, mu)
    prod = sym_oracle.hall_littlewood_direct(datum, lam) * sym_oracle.hall_littlewood_direct(datum, mu)
    coeffs = {}
    for nu, c in sym_oracle.expand_P(prod).items():
        coeffs[nu] = c.shift(datum.two_rho_pair(tuple(b - a + n for a, b, n in zip(lam, mu, nu))))
    return CoeffTable("structure", datum, ParamSpec(aff), lam, mu, coeffs, "oracle", "hall_littlewood")


def structure_hecke(alg, lam, mu) -> CoeffTable:
    """C_{lam mu}^nu from M_lam M_mu computed in the affine Hecke algebra (any parameters).

    M_lam M_mu = sum q_{lam-nu}^2 C M_nu and M_nu has coefficient 1/W(q) at T_{tau_nu}.
    """
    p = alg.params
    W = alg.W
    datum = alg.datum
    lam, mu = tuple(lam), tuple(mu)
    aff = alg.aff
    one0 = alg.one_0()
    _, stab_l, _ = _stab(W, lam)
    _, stab_m, _ = _stab(W, mu)
    a = alg.right_mul_T(one0, aff.n_lambda(lam))
    a = alg.mul(a, one0)
    a = alg.right_mul_T(a, aff.n_lambda(mu))
    a = alg.mul(a, one0)
    # a = W(q) W_lam(q) W_mu(q) M_lam M_mu and the T_{tau_nu} coefficient of M_nu is 1/W(q)
    denom = p.poincare(stab_l) * p.poincare(stab_m)
    coeffs = {}
    for (wt, w), c in a.terms.items():
        if w != 0 or not datum.is_dominant(wt):
            continue
        diff = tuple(x - y for x, y in zip(lam, wt))
        coeffs[wt] = c.exact_div(denom).shift(-2 * p.v_exp_mu(diff))
    return CoeffTable("structure", datum, p, lam, mu, coeffs, "oracle", "hecke")


def littlewood_richardson(datum: RootDatum, lam, mu, nu, aff: AffineWeyl | None = None) -> int:
    """LS-galleries of type t^mu with weight nu - lam such that lam + sigma stays in C."""
    aff = aff or AffineWeyl(datum)
    lam = _check_dominant(datum, lam)
    mu = _check_dominant(datum, mu)
    nu = _check_dominant(datum, nu)
    W = aff.W
    t = aff.minimal_gallery_type(aff.n_lambda(mu))
    starts = [(lam, w) for w in range(W.order) if aff.is_dominant_alcove((lam, w))]
    census = gallery_census(aff, t, starts, True, True)
    return sum(cnt for (end, stats, iota), cnt in census.items()
               if end[0] == nu and _lr_excess(aff, stats, iota, lam, mu, nu) == 0)


def compare(tables) -> list:
    """Pairwise disagreements between a list of CoeffTables (empty when they all agree)."""
    out = []
    for a, b in zip(tables, tables[1:]):
        out += a.diff(b)
    return out
