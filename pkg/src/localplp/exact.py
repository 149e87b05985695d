"""Exact rationals, univariate polynomials, rational functions and Sturm root isolation.

Everything here is immutable. Rationals are ``gmpy2.mpq`` values, which are
always kept in lowest terms with a positive denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

Rat = type(gmpy2.mpq())

#: Degree of the zero polynomial. Total under ``+`` and ``max``.
NEG_INF = float("-inf")

ZERO = gmpy2.mpq(0)
ONE = gmpy2.mpq(1)


def rat(value) -> Rat:
    """Coerce an int, str ("num/den"), Fraction or mpq to an exact rational."""
    if isinstance(value, Rat):
        return value
    if isinstance(value, Fraction):
        return gmpy2.mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/")
            if int(den) == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return gmpy2.mpq(int(num), int(den))
        return gmpy2.mpq(int(text))
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    return gmpy2.mpq(value)


def rat_str(value: Rat) -> str:
    value = rat(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Poly:
    """Univariate polynomial in ``delta``; ``coeffs[k]`` multiplies ``delta**k``."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Rat, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "Poly":
        return cls(rat(s) for s in items)

    def to_strings(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Rat:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> Rat:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def low_order(self) -> int:
        """Index of the first nonzero coefficient (multiplicity of the root at 0)."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        raise ValueError("zero polynomial has no low-order term")

    def __call__(self, x) -> Rat:
        x = rat(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rat, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __add__(self, other):
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rat, Fraction)):
            s = rat(other)
            return Poly([c * s for c in self.coeffs])
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "Poly":
        """Multiply by ``delta**k``."""
        if not self.coeffs:
            return self
        return Poly([ZERO] * k + list(self.coeffs))

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def substitute_scale(self, c) -> "Poly":
        """Return ``p(c * delta)``; ``c = -1`` reflects the parameter."""
        c = rat(c)
        out, power = [], ONE
        for a in self.coeffs:
            out.append(a * power)
            power *= c
        return Poly(out)

    def reflect(self) -> "Poly":
        return self.substitute_scale(-1)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [ZERO] * (len(rem) - dq)
        lead = other.coeffs[-1]
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            quot[k - dq] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def deflate_at(self, x) -> "Poly":
        """Divide out every factor ``(delta - x)``."""
        x = rat(x)
        root = Poly([-x, 1])
        p = self
        while not p.is_zero() and p(x) == 0:
            p = p // root
        return p

    def __repr__(self):
        return f"Poly({self.to_strings()})"

    def __str__(self):
        return format_poly(self)


def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly.const(value)


def format_poly(p: Poly, var: str = "d") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            term = rat_str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            term = mono if mag == 1 else f"{rat_str(mag)}*{mono}"
        parts.append(("-" if c < 0 else "+", term))
    sign, first = parts[0]
    out = ("-" if sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(p: Poly, q: Poly) -> Poly:
    """Monic least common multiple of two nonzero polynomials."""
    return ((p * q) // poly_gcd(p, q)).monic()


def common_denominator(dens: Iterable[Poly]) -> Poly:
    """The lcm of ``dens``, scaled so that it is positive just right of 0.

    Monic normalisation can leave a denominator such as ``d^2 - 1`` that is
    negative near 0; the sign of a common denominator is a free choice.
    """
    q = Poly.const(1)
    for den in dens:
        q = poly_lcm(q, den)
    return q if q.coeffs[q.low_order()] > 0 else -q


@dataclass(frozen=True)
class RatFunc:
    """Reduced rational function ``num / den`` with monic denominator."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(self.num, self.den)
        num, den = self.num, self.den
        if g.degree > 0:
            num, den = num // g, den // g
        scale = 1 / den.lead
        object.__setattr__(self, "num", num * scale)
        object.__setattr__(self, "den", den * scale)

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly.const(1))

    def __call__(self, x) -> Rat:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {x}")
        return self.num(x) / d

    def __add__(self, other):
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_ratfunc(other))

    def __mul__(self, other):
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def reflect(self) -> "RatFunc":
        return RatFunc(self.num.reflect(), self.den.reflect())

    def __str__(self):
        if self.den == 1:
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"


def _as_ratfunc(value) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    return RatFunc.from_poly(_as_poly(value))


# --- Sturm sequences -------------------------------------------------------

def sturm_sequence(p: Poly) -> list[Poly]:
    if p.is_zero():
        raise ValueError("zero-polynomial has no root structure")
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _variations(signs) -> int:
    count, last = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations_at(seq: list[Poly], x) -> int:
    return _variations(_sign(q(x)) for q in seq)


def _variations_at_inf(seq: list[Poly]) -> int:
    return _variations(_sign(q.lead) for q in seq)


def sturm_count(p: Poly, a, b) -> int:
    """Number of distinct real roots of ``p`` in the open interval ``(a, b)``."""
    if p.is_zero():
        raise ValueError("zero-polynomial has no root structure")
    a, b = rat(a), rat(b)
    if not a < b:
        raise ValueError("sturm_count needs a < b")
    # roots sitting on an endpoint are divided out; the open interval is unaffected
    p = p.deflate_at(a).deflate_at(b)
    if p.degree <= 0:
        return 0
    seq = sturm_sequence(p)
    return _variations_at(seq, a) - _variations_at(seq, b)


def count_positive_roots(p: Poly, upto=None) -> int:
    """Distinct roots of ``p`` in ``(0, upto]`` (``upto=None`` means ``(0, inf)``)."""
    if p.is_zero():
        raise ValueError("zero-polynomial has no root structure")
    p = p.deflate_at(0)
    if p.degree <= 0:
        return 0
    seq = sturm_sequence(p)
    if upto is None:
        return _variations_at(seq, ZERO) - _variations_at_inf(seq)
    upto = rat(upto)
    extra = 1 if p(upto) == 0 else 0
    q = p.deflate_at(upto)
    if q.degree <= 0:
        return extra
    seq = sturm_sequence(q)
    return _variations_at(seq, ZERO) - _variations_at(seq, upto) + extra


def cauchy_bound(p: Poly) -> Rat:
    """Every complex root of ``p`` has modulus strictly below this value."""
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=ZERO)


NO_POSITIVE_ROOT = "no-positive-root"
ISOLATED_BELOW_ROOT = "isolated-below-root"


@dataclass(frozen=True)
class RootBound:
    """A radius ``value`` such that every certifying polynomial is positive on (0, value].

    With ``witness_kind == "no-positive-root"`` the polynomials are positive on
    all of (0, inf) and ``value`` is only a convenient finite representative.
    """

    value: Rat
    witness_kind: str
    certifying_polys: tuple[Poly, ...]

    def covers_everything(self) -> bool:
        return self.witness_kind == NO_POSITIVE_ROOT


def positive_near_zero(p: Poly) -> bool:
    return not p.is_zero() and p.coeffs[p.low_order()] > 0


def smallest_positive_root_bound(ps: Sequence[Poly], refine_steps: int = 20) -> RootBound:
    """Certified root-free radius for a family of polynomials positive right of 0."""
    ps = tuple(ps)
    for p in ps:
        if not positive_near_zero(p):
            raise ValueError(f"not positive near zero: {p}")
    reduced = [p.deflate_at(0) for p in ps]
    reduced = [p for p in reduced if p.degree > 0]

    def root_free(r) -> bool:
        return all(count_positive_roots(p, r) == 0 for p in reduced)

    if all(count_positive_roots(p) == 0 for p in reduced):
        return RootBound(ONE, NO_POSITIVE_ROOT, ps)

    hi = max(cauchy_bound(p) for p in reduced)
    lo = hi / 2
    while not root_free(lo):
        hi, lo = lo, lo / 2
    for _ in range(refine_steps):
        mid = (lo + hi) / 2
        if root_free(mid):
            lo = mid
        else:
            hi = mid
    return RootBound(lo, ISOLATED_BELOW_ROOT, ps)


def verify_root_bound(bound: RootBound) -> bool:
    """Re-derive the root-free claim of ``bound`` from scratch."""
    for p in bound.certifying_polys:
        if not positive_near_zero(p):
            return False
        if bound.covers_everything():
            if count_positive_roots(p) != 0:
                return False
        elif count_positive_roots(p, bound.value) != 0:
            return False
        if p(bound.value) <= 0 or p(bound.value / 2) <= 0:
            return False
    return True
