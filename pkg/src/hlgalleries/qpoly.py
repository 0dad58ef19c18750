"""Exact Laurent polynomials in v = q^(1/2) and Hecke algebra parameters.

Everything is kept in the single variable ``v`` so that the half powers
q_lambda = q^(1/2 sum d) are exact monomials.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import TYPE_CHECKING, Mapping

if TYPE_CHECKING:
    from .affine_weyl import AffineWeyl


class LaurentQ:
    """Sparse Laurent polynomial with integer coefficients in ``v = q^(1/2)``.

    >>> q = LaurentQ.q()
    >>> (q - 1) * (2 * q + 1)
    LaurentQ('2*q^2 - q - 1')
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | int | None = None):
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, int):
            coeffs = {0: coeffs} if coeffs else {}
        self._c = {int(e): int(c) for e, c in coeffs.items() if c}
        self._hash = None

    # -------------------------------------------------------- constructors
    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentQ":
        """``coeff * v^exp``."""
        return cls({exp: coeff})

    @classmethod
    def q(cls, k: int = 1) -> "LaurentQ":
        """``q^k = v^(2k)``."""
        return cls({2 * k: 1})

    @classmethod
    def _raw(cls, d: dict) -> "LaurentQ":
        obj = cls.__new__(cls)
        obj._c = d
        obj._hash = None
        return obj

    # ----------------------------------------------------------- accessors
    def coeffs(self) -> dict:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    @property
    def degree(self) -> int:
        """Highest exponent of v (raises on zero)."""
        if not self._c:
            raise ValueError("degree of zero polynomial")
        return max(self._c)

    @property
    def low_degree(self) -> int:
        if not self._c:
            raise ValueError("degree of zero polynomial")
        return min(self._c)

    @property
    def leading_coefficient(self) -> int:
        return self._c[self.degree]

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    # ---------------------------------------------------------- arithmetic
    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentQ):
            return other
        if isinstance(other, int):
            return LaurentQ(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self._c)
        for e, c in other._c.items():
            s = d.get(e, 0) + c
            if s:
                d[e] = s
            else:
                d.pop(e, None)
        return LaurentQ._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentQ._raw({e: -c for e, c in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentQ._raw({e: c for e, c in d.items() if c})

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentQ":
        """Multiply by v^k."""
        if not k:
            return self
        return LaurentQ._raw({e + k: c for e, c in self._c.items()})

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial() or abs(self.leading_coefficient) != 1:
                raise ArithmeticError("only unit monomials can be inverted")
            (e, c), = self._c.items()
            return LaurentQ({e * n: c ** n})
        result = LaurentQ(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "LaurentQ"):
        """Division with remainder, peeling leading terms; quotient has integer coefficients."""
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        rem = dict(self._c)
        quo = {}
        gd = other.degree
        glow = other.low_degree
        glc = other._c[gd]
        stop = (min(rem) - glow) if rem else 0
        while rem:
            d = max(rem)
            e = d - gd
            if e < stop:
                break
            c, r = divmod(rem[d], glc)
            if r:
                break
            quo[e] = quo.get(e, 0) + c
            for ge, gc in other._c.items():
                k = ge + e
                val = rem.get(k, 0) - c * gc
                if val:
                    rem[k] = val
                else:
                    rem.pop(k, None)
        return LaurentQ(quo), LaurentQ(rem)

    def exact_div(self, other) -> "LaurentQ":
        """Exact quotient; raises ArithmeticError if the remainder is nonzero."""
        other = self._coerce(other)
        quo, rem = self.divmod(other)
        if rem:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return quo

    def __floordiv__(self, other):
        return self.exact_div(other)

    def bar(self) -> "LaurentQ":
        """The involution v -> v^-1."""
        return LaurentQ._raw({-e: c for e, c in self._c.items()})

    # ---------------------------------------------------------- comparison
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentQ(other)
        if not isinstance(other, LaurentQ):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # ------------------------------------------------------- evaluation
    def evaluate(self, q) -> Fraction:
        """Value at a rational q.  Odd powers of v need q to be a rational square."""
        q = Fraction(q)
        root = None
        if any(e % 2 for e in self._c):
            num, den = isqrt(q.numerator), isqrt(q.denominator)
            if q < 0 or num * num != q.numerator or den * den != q.denominator:
                raise ValueError(f"half-integral powers of q cannot be evaluated exactly at q={q}")
            root = Fraction(num, den)
        total = Fraction(0)
        for e, c in self._c.items():
            if e % 2:
                total += c * root ** e
            else:
                total += c * q ** (e // 2)
        return total

    # ---------------------------------------------------------- formatting
    def to_json(self) -> dict:
        return {"coeffs": {str(e): c for e, c in sorted(self._c.items())}}

    @classmethod
    def from_json(cls, obj) -> "LaurentQ":
        if "coeffs" in obj:
            obj = obj["coeffs"]
        return cls({int(e): int(c) for e, c in obj.items()})

    def format(self, style: str = "text") -> str:
        """Render in q, highest power first; half powers as q^(k/2)."""
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            c = self._c[e]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                if style == "latex":
                    power = "q" if e == 2 else (f"q^{{{e // 2}}}" if e % 2 == 0 else f"q^{{{e}/2}}")
                    body = power if a == 1 else f"{a}{power}"
                else:
                    power = "q" if e == 2 else (f"q^{e // 2}" if e % 2 == 0 else f"q^({e}/2)")
                    body = power if a == 1 else f"{a}*{power}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LaurentQ({self.format()!r})"


ZERO = LaurentQ()
ONE = LaurentQ(1)
Q = LaurentQ.q()


def specialize(f: LaurentQ, at) -> Fraction:
    """Evaluate f at a rational (e.g. prime power) value of q."""
    return f.evaluate(at)


def qinv_zero_limit(f: LaurentQ, expected_degree) -> int:
    """Coefficient of q^expected_degree, after checking deg_q f <= expected_degree.

    This is the value of q^(-expected_degree) f at q^-1 = 0.
    """
    target = Fraction(expected_degree) * 2
    if target.denominator != 1:
        raise ValueError("expected_degree must be a multiple of 1/2")
    target = int(target)
    if f and f.degree > target:
        raise AssertionError(f"degree bound violated: deg {f} exceeds q^{Fraction(target, 2)}")
    return f.coeff(target)


class ParamSpecError(ValueError):
    """Parameters that are not invariant under conjugation."""


class ParamSpec:
    """Parameters d : S^a -> N, constant on conjugacy classes of the extended affine Weyl group.

    Reflection letters are the integers used by :class:`~hlgalleries.affine_weyl.AffineWeyl`
    (finite s_1..s_l first, then one s_0 per component).
    """

    def __init__(self, aff: "AffineWeyl", d: Mapping | None = None):
        self.aff = aff
        self.datum = aff.datum
        nref = aff.n_reflections
        if d is None:
            values = [1] * nref
        else:
            values = [None] * nref
            for key, val in d.items():
                letter = aff.parse_letter(key) if isinstance(key, str) else int(key)
                if letter >= nref:
                    raise ParamSpecError(f"{key!r} is not a reflection letter")
                if int(val) < 1:
                    raise ParamSpecError("parameters must be positive integers")
                values[letter] = int(val)
            # fill unspecified letters from their class
            for cls in aff.letter_classes:
                given = {values[t] for t in cls if values[t] is not None}
                if len(given) > 1:
                    names = ", ".join(aff.letter_name(t) for t in cls)
                    raise ParamSpecError(f"letters {names} are conjugate but got parameters {sorted(given)}")
                fill = given.pop() if given else 1
                for t in cls:
                    values[t] = fill
        for cls in aff.letter_classes:
            if len({values[t] for t in cls}) > 1:
                raise ParamSpecError("parameters are not constant on conjugacy classes")
        self.d = tuple(values)
        self.class_d = tuple(values[cls[0]] for cls in aff.letter_classes)
        self.d_finite = self.d[: self.datum.rank]
        self._wlen_finite = self.datum.W.weighted_lengths(self.d_finite)
        self._dlen_cache = {}
        self._mu_functional = None

    @classmethod
    def equal(cls, aff: "AffineWeyl") -> "ParamSpec":
        return cls(aff)

    @property
    def is_equal(self) -> bool:
        return all(x == 1 for x in self.d)

    def describe(self) -> dict:
        return {self.aff.letter_name(t): self.d[t] for t in range(self.aff.n_reflections)}

    def __eq__(self, other):
        return isinstance(other, ParamSpec) and self.datum == other.datum and self.d == other.d

    def __hash__(self):
        return hash((self.datum, self.d))

    def __getstate__(self):
        return {"datum": self.datum, "d": self.d}

    def __setstate__(self, state):
        from .affine_weyl import AffineWeyl
        self.__init__(AffineWeyl(state["datum"]), dict(enumerate(state["d"])))

    # ----------------------------------------------------- exponents in v
    def v_exp_s(self, s: int) -> int:
        return 2 * self.d[s]

    def dlen(self, v) -> int:
        """sum of d over a reduced word of the affine element v (Omega part ignored)."""
        res = self._dlen_cache.get(v)
        if res is None:
            mu, w = v
            if not any(mu):
                res = self._wlen_finite[w]
            else:
                res = sum(self.d[t] for t in self.aff.reduced_word(v)[0])
            self._dlen_cache[v] = res
        return res

    def v_exp_w(self, v) -> int:
        """Exponent of v in q_v."""
        return 2 * self.dlen(v)

    def v_exp_finite(self, w: int) -> int:
        return 2 * self._wlen_finite[w]

    def v_exp_mu(self, mu) -> int:
        """Exponent of v in q_mu; q_mu is a group homomorphism X^vee -> v^Z."""
        if self._mu_functional is None:
            datum = self.datum
            # a multiple of 2 rho^vee, deep enough that big + alpha_j^vee stays dominant
            depth = max(abs(x) for row in datum.cartan for x in row)
            big = tuple(2 * depth for _ in range(datum.rank))
            base = self.dlen(self.aff.translation(big))
            vals = []
            for j in range(datum.rank):
                lam = tuple(a + b for a, b in zip(big, datum.simple_coroots[j]))
                vals.append(self.dlen(self.aff.translation(lam)) - base)
            self._mu_functional = tuple(vals)  # value on alpha_j^vee
        b = self.datum.to_coroot_coords(mu)
        val = sum(x * y for x, y in zip(b, self._mu_functional))
        if Fraction(val).denominator != 1:
            raise ArithmeticError(f"q_mu is not an integral power of v for mu={mu}")
        return int(val)

    # ------------------------------------------------------ LaurentQ API
    def q_s(self, s: int) -> LaurentQ:
        return LaurentQ.monomial(self.v_exp_s(s))

    def q_w(self, v) -> LaurentQ:
        if isinstance(v, int):
            return LaurentQ.monomial(self.v_exp_finite(v))
        return LaurentQ.monomial(self.v_exp_w(tuple(v)))

    def q_mu(self, mu) -> LaurentQ:
        return LaurentQ.monomial(self.v_exp_mu(mu))

    def poincare(self, elements, inverse: bool = False) -> LaurentQ:
        """H(q) = sum q_w over finite Weyl group elements (or H(q^-1))."""
        sign = -1 if inverse else 1
        d = {}
        for w in elements:
            e = sign * self.v_exp_finite(w)
            d[e] = d.get(e, 0) + 1
        return LaurentQ(d)
