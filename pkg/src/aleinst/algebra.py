"""Exact coefficient fields and truncated graded series.

Scalars are plain ``fractions.Fraction`` values, univariate rational
functions (``UniRatFunc``), cyclotomic field elements (``Cyclotomic``) or
nilpotent jets over one of those (``Jet``).  Every type is immutable and
every operation is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

Number = Union[int, Fraction]


class AlgebraError(ArithmeticError):
    """Base class for errors raised by the coefficient layer."""


class MixedFieldError(AlgebraError):
    """Operands live in incompatible coefficient fields."""


class CutoffMismatch(AlgebraError):
    """Two series with different truncation orders were combined."""


class NonUnitConstantTerm(AlgebraError):
    """A logarithm was requested for a series whose constant term is not 1."""


class PoleAtOrigin(AlgebraError):
    """A rational function has a genuine pole at x = 0."""


def as_fraction(value: Number | str) -> Fraction:
    """Parse an int, Fraction or "p/q" string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


def is_zero(value) -> bool:
    return not value


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, stored low degree first

Poly = tuple  # tuple[Fraction, ...]


def _ptrim(coeffs: Sequence[Fraction]) -> Poly:
    end = len(coeffs)
    while end and not coeffs[end - 1]:
        end -= 1
    return tuple(coeffs[:end])


def _padd(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _ptrim(out)


def _pneg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def _psub(p: Poly, q: Poly) -> Poly:
    return _padd(p, _pneg(q))


def _pscale(p: Poly, c: Fraction) -> Poly:
    if not c:
        return ()
    return tuple(x * c for x in p)


def _pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _ptrim(out)


def _pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    if len(rem) <= dq:
        return (), _ptrim(rem)
    quot = [Fraction(0)] * (len(rem) - dq)
    for shift in range(len(rem) - 1 - dq, -1, -1):
        c = rem[shift + dq] / lead
        if c:
            quot[shift] = c
            for j, b in enumerate(q):
                rem[shift + j] -= c * b
    return _ptrim(quot), _ptrim(rem[:dq])


def _pexact(p: Poly, g: Poly) -> Poly:
    """p / g for a monic divisor g of p."""
    if len(g) == 1:
        return p
    return _pdivmod(p, g)[0]


def _pmonic(p: Poly) -> Poly:
    lead = p[-1]
    if lead == 1:
        return p
    return tuple(c / lead for c in p)


def _primitive(p: Poly) -> list:
    """Integer coefficients of p up to a rational factor, with content 1."""
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


def _int_prem_primitive(a: list, b: list) -> list:
    """Primitive part of the pseudo-remainder of integer polynomials a by b."""
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(rem) - 1 >= db and rem:
        c = rem[-1]
        shift = len(rem) - 1 - db
        # rem ← lead·rem − c·x^shift·b, killing the top coefficient
        rem = [lead * r for r in rem]
        for j, bj in enumerate(b):
            rem[shift + j] -= c * bj
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
        g = 0
        for r in rem:
            g = math.gcd(g, r)
            if g == 1:
                break
        if g > 1:
            rem = [r // g for r in rem]
    return rem


def _pgcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm on primitive integer remainders."""
    if not p or not q:
        r = p or q
        return _pmonic(r) if r else ()
    a, b = _primitive(p), _primitive(q)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _int_prem_primitive(a, b)
    lead = a[-1]
    return tuple(Fraction(c, lead) for c in a)


def _peval(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------


class UniRatFunc:
    """Reduced quotient of two polynomials over Q in one variable x."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Iterable[Number] = (), den: Iterable[Number] = (1,), *, _reduced: bool = False):
        n = _ptrim([as_fraction(c) for c in num])
        d = _ptrim([as_fraction(c) for c in den])
        if not d:
            raise ZeroDivisionError("UniRatFunc with zero denominator")
        if not _reduced:
            n, d = self._normalize(n, d)
        self.num: Poly = n
        self.den: Poly = d
        self._hash = None

    @staticmethod
    def _normalize(n: Poly, d: Poly) -> tuple[Poly, Poly]:
        if not n:
            return (), (Fraction(1),)
        if len(d) > 1:
            g = _pgcd(n, d)
            if len(g) > 1:
                n = _pdivmod(n, g)[0]
                d = _pdivmod(d, g)[0]
        lead = d[-1]
        if lead != 1:
            n = tuple(c / lead for c in n)
            d = tuple(c / lead for c in d)
        return n, d

    @classmethod
    def x(cls) -> "UniRatFunc":
        return cls((0, 1), _reduced=False)

    @classmethod
    def const(cls, c: Number) -> "UniRatFunc":
        c = as_fraction(c)
        return cls((c,) if c else (), (1,), _reduced=True)

    @classmethod
    def poly(cls, coeffs: Iterable[Number]) -> "UniRatFunc":
        return cls(coeffs, (1,), _reduced=True)

    def _coerce(self, other) -> "UniRatFunc":
        if isinstance(other, UniRatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return UniRatFunc.const(other)
        if isinstance(other, Cyclotomic):
            raise MixedFieldError(f"cannot combine UniRatFunc with {type(other).__name__}")
        # jets with rational-function coefficients handle the mixed product
        return NotImplemented

    @property
    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_polynomial and o.is_polynomial:
            return UniRatFunc(_padd(self.num, o.num), (1,), _reduced=True)
        if self.den == o.den:
            return UniRatFunc(_padd(self.num, o.num), self.den)
        # Henrici: only the gcd of the denominators can cancel against the new numerator
        g = _pgcd(self.den, o.den)
        d1, d2 = _pexact(self.den, g), _pexact(o.den, g)
        num = _padd(_pmul(self.num, d2), _pmul(o.num, d1))
        if not num:
            return UniRatFunc()
        h = _pgcd(num, g)
        return UniRatFunc(_pexact(num, h), _pmul(_pmul(d1, d2), _pexact(g, h)), _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return UniRatFunc(_pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return UniRatFunc.const(0)
            return UniRatFunc(_pscale(self.num, Fraction(other)), self.den, _reduced=True)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_polynomial and o.is_polynomial:
            return UniRatFunc(_pmul(self.num, o.num), (1,), _reduced=True)
        if not self.num or not o.num:
            return UniRatFunc()
        # cross cancellation keeps both factors small
        g1 = _pgcd(self.num, o.den)
        g2 = _pgcd(o.num, self.den)
        num = _pmul(_pexact(self.num, g1), _pexact(o.num, g2))
        den = _pmul(_pexact(self.den, g2), _pexact(o.den, g1))
        return UniRatFunc(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "UniRatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return UniRatFunc(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return UniRatFunc(_pscale(self.num, 1 / Fraction(other)), self.den, _reduced=True)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = UniRatFunc.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniRatFunc.const(other)
        if not isinstance(other, UniRatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_polynomial and len(self.num) <= 1:
                self._hash = hash(self.num[0] if self.num else Fraction(0))
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __call__(self, x: Number) -> Fraction:
        d = _peval(self.den, as_fraction(x))
        if not d:
            raise ZeroDivisionError(f"denominator vanishes at x = {x}")
        return _peval(self.num, as_fraction(x)) / d

    def __repr__(self) -> str:
        return f"UniRatFunc({[str(c) for c in self.num]}, {[str(c) for c in self.den]})"


def limit_at_origin(f) -> Fraction:
    """Value at x = 0 of a rational function with a removable singularity.

    Plain rationals are returned unchanged.  Raises PoleAtOrigin when the
    reduced denominator vanishes at 0.
    """
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    if isinstance(f, Jet):
        return f.map(limit_at_origin)
    if not isinstance(f, UniRatFunc):
        raise TypeError(f"limit_at_origin expects a UniRatFunc, got {type(f).__name__}")
    d0 = f.den[0] if f.den else Fraction(0)
    if not d0:
        raise PoleAtOrigin(f"pole at the origin: {f!r}")
    n0 = f.num[0] if f.num else Fraction(0)
    return n0 / d0


# ---------------------------------------------------------------------------


def cyclotomic_polynomial(k: int) -> Poly:
    """Integer coefficients of the k-th cyclotomic polynomial, low degree first."""
    if k < 1:
        raise ValueError("cyclotomic order must be positive")
    if k not in _CYCLO_CACHE:
        _CYCLO_CACHE[k] = _cyclotomic_polynomial(k)
    return _CYCLO_CACHE[k]


def _cyclotomic_polynomial(k: int) -> Poly:
    p: Poly = (Fraction(-1),) + (Fraction(0),) * (k - 1) + (Fraction(1),)
    for d in range(1, k):
        if k % d == 0:
            p = _pdivmod(p, cyclotomic_polynomial(d))[0]
    return p


_CYCLO_CACHE: dict[int, Poly] = {}


class Cyclotomic:
    """Element of Q(ω) with ω a primitive k-th root of unity."""

    __slots__ = ("order", "rep")

    def __init__(self, order: int, rep: Iterable[Number] = ()):
        self.order = order
        phi = cyclotomic_polynomial(order)
        r = _ptrim([as_fraction(c) for c in rep])
        if len(r) >= len(phi):
            r = _pdivmod(r, phi)[1]
        self.rep: Poly = r

    @classmethod
    def omega(cls, order: int, power: int = 1) -> "Cyclotomic":
        """ω**power, reducing the exponent modulo the order first."""
        power %= order
        return cls(order, (0,) * power + (1,))

    @classmethod
    def const(cls, order: int, c: Number) -> "Cyclotomic":
        return cls(order, (c,))

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise MixedFieldError(f"cyclotomic orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.const(self.order, other)
        if isinstance(other, (UniRatFunc, Jet)):
            raise MixedFieldError(f"cannot combine Cyclotomic with {type(other).__name__}")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.order, _padd(self.rep, o.rep))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, _pneg(self.rep))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.order, _psub(self.rep, o.rep))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.order, _pmul(self.rep, o.rep))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Inverse via the extended Euclidean algorithm modulo Φ_k."""
        if not self.rep:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        r0, r1 = cyclotomic_polynomial(self.order), self.rep
        s0, s1 = (), (Fraction(1),)
        while len(r1) > 1:
            quot, rem = _pdivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(s0, _pmul(quot, s1))
        if not r1:
            raise ZeroDivisionError("non-invertible cyclotomic element")
        return Cyclotomic(self.order, _pscale(s1, 1 / r1[0]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclotomic.const(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.rep)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.const(self.order, other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.order == other.order and self.rep == other.rep

    def __hash__(self) -> int:
        return hash((self.order, self.rep))

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, {[str(c) for c in self.rep]})"


# ---------------------------------------------------------------------------


class Jet:
    """Truncated polynomial in nilpotent symbols with scalar coefficients.

    Monomials of total degree above ``degree`` are dropped, so the jet ring is
    the quotient of the polynomial ring by all monomials of that size.
    """

    __slots__ = ("symbols", "degree", "terms")

    def __init__(self, symbols: Sequence[str], degree: int, terms: Mapping[tuple, object] | None = None):
        self.symbols = tuple(symbols)
        self.degree = degree
        clean = {}
        if terms:
            for exps, c in terms.items():
                if c and sum(exps) <= degree:
                    clean[exps] = c
        self.terms: dict[tuple, object] = clean

    @classmethod
    def const(cls, symbols: Sequence[str], degree: int, c) -> "Jet":
        return cls(symbols, degree, {(0,) * len(symbols): c})

    @classmethod
    def symbol(cls, symbols: Sequence[str], degree: int, name: str, coeff=1) -> "Jet":
        idx = list(symbols).index(name)
        exps = tuple(1 if i == idx else 0 for i in range(len(symbols)))
        return cls(symbols, degree, {exps: coeff})

    def _like(self, terms: dict) -> "Jet":
        return Jet(self.symbols, self.degree, terms)

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.symbols != self.symbols or other.degree != self.degree:
                raise MixedFieldError("jets over different symbol sets or degrees")
            return other
        if isinstance(other, (int, Fraction, UniRatFunc, Cyclotomic)):
            return Jet.const(self.symbols, self.degree, other)
        return NotImplemented

    @property
    def constant(self):
        return self.terms.get((0,) * len(self.symbols), 0)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, UniRatFunc, Cyclotomic)):
            if not other:
                return self._like({})
            return self._like({e: c * other for e, c in self.terms.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out: dict = {}
        deg = self.degree
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in o.terms.items():
                if d1 + sum(e2) > deg:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return self._like(out)

    __rmul__ = __mul__

    def nilpotent_part(self) -> "Jet":
        zero = (0,) * len(self.symbols)
        return self._like({e: c for e, c in self.terms.items() if e != zero})

    def inverse(self) -> "Jet":
        c0 = self.constant
        if not c0:
            raise ZeroDivisionError("jet with vanishing constant term is not invertible")
        inv0 = Fraction(1, c0) if isinstance(c0, int) else 1 / c0
        y = self.nilpotent_part() * inv0
        # 1/(1+y) = sum (-y)^n, finite because y is nilpotent
        result = Jet.const(self.symbols, self.degree, 1)
        power = Jet.const(self.symbols, self.degree, 1)
        for _ in range(self.degree):
            power = power * (-y)
            if not power.terms:
                break
            result = result + power
        return result * inv0

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, UniRatFunc, Cyclotomic)):
            return self * (1 / other if not isinstance(other, int) else Fraction(1, other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Jet.const(self.symbols, self.degree, 1)
        for _ in range(n):
            result = result * self
        return result

    def exp(self) -> "Jet":
        """exp of a jet whose constant term vanishes."""
        if self.constant:
            raise NonUnitConstantTerm("exp of a jet requires zero constant term")
        result = Jet.const(self.symbols, self.degree, 1)
        power = Jet.const(self.symbols, self.degree, 1)
        for n in range(1, self.degree + 1):
            power = power * self * Fraction(1, n)
            if not power.terms:
                break
            result = result + power
        return result

    def coefficient(self, exps: tuple):
        return self.terms.get(tuple(exps), 0)

    def map(self, fn: Callable) -> "Jet":
        return self._like({e: fn(c) for e, c in self.terms.items()})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, UniRatFunc, Cyclotomic)):
            other = Jet.const(self.symbols, self.degree, other)
        if not isinstance(other, Jet):
            return NotImplemented
        return self.symbols == other.symbols and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.symbols, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{c!s}*{e}" for e, c in sorted(self.terms.items()))
        return f"Jet({self.symbols}, {body or '0'})"


def scalar_arith(lhs, rhs, op: str):
    """Exact field operation on two scalars of the same instantiation."""
    kinds = {type(lhs), type(rhs)} - {int, Fraction}
    if len(kinds) > 1:
        raise MixedFieldError(f"mixed coefficient fields: {sorted(k.__name__ for k in kinds)}")
    if op == "add":
        result = lhs + rhs
    elif op == "sub":
        result = lhs - rhs
    elif op == "mul":
        result = lhs * rhs
    elif op == "div":
        if not rhs:
            raise ZeroDivisionError("division by zero scalar")
        result = Fraction(lhs) / rhs if isinstance(lhs, int) else lhs / rhs
    else:
        raise ValueError(f"unknown scalar operation {op!r}")
    if isinstance(result, int):
        result = Fraction(result)
    return result


# ---------------------------------------------------------------------------

Exponent = tuple  # (e_q, e_u), both Fractions

ZERO_EXP: Exponent = (Fraction(0), Fraction(0))


class GradedSeries:
    """Finite sum of c * q^e_q * u^e_u truncated above a q-cutoff.

    Terms with e_q > cutoff are discarded on construction, which makes
    truncation a ring congruence for the product below.
    """

    __slots__ = ("terms", "cutoff")

    def __init__(self, terms: Mapping[Exponent, object] | None = None, cutoff: Number = 0):
        self.cutoff = as_fraction(cutoff)
        clean: dict[Exponent, object] = {}
        if terms:
            for (eq, eu), c in terms.items():
                eq = as_fraction(eq)
                if eq <= self.cutoff and c:
                    clean[(eq, as_fraction(eu))] = c
        self.terms = clean

    @classmethod
    def zero(cls, cutoff: Number) -> "GradedSeries":
        return cls({}, cutoff)

    @classmethod
    def one(cls, cutoff: Number, one=Fraction(1)) -> "GradedSeries":
        return cls({ZERO_EXP: one}, cutoff)

    @classmethod
    def monomial(cls, coeff, e_q: Number, cutoff: Number, e_u: Number = 0) -> "GradedSeries":
        return cls({(as_fraction(e_q), as_fraction(e_u)): coeff}, cutoff)

    def _check(self, other: "GradedSeries") -> None:
        if not isinstance(other, GradedSeries):
            raise TypeError(f"expected GradedSeries, got {type(other).__name__}")
        if other.cutoff != self.cutoff:
            raise CutoffMismatch(f"cutoffs differ: {self.cutoff} vs {other.cutoff}")

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return GradedSeries(out, self.cutoff)

    def __neg__(self) -> "GradedSeries":
        return GradedSeries({e: -c for e, c in self.terms.items()}, self.cutoff)

    def __sub__(self, other: "GradedSeries") -> "GradedSeries":
        return self + (-other)

    def __mul__(self, other) -> "GradedSeries":
        if not isinstance(other, GradedSeries):
            return self.scale(other)
        return series_mul(self, other)

    __rmul__ = __mul__

    def scale(self, c) -> "GradedSeries":
        if not c:
            return GradedSeries.zero(self.cutoff)
        return GradedSeries({e: v * c for e, v in self.terms.items()}, self.cutoff)

    def shift(self, d_q: Number, d_u: Number = 0) -> "GradedSeries":
        """Multiply by q^d_q u^d_u, keeping the same cutoff."""
        dq, du = as_fraction(d_q), as_fraction(d_u)
        return GradedSeries({(eq + dq, eu + du): c for (eq, eu), c in self.terms.items()}, self.cutoff)

    def truncate(self, cutoff: Number) -> "GradedSeries":
        return GradedSeries(self.terms, cutoff)

    def with_cutoff(self, cutoff: Number) -> "GradedSeries":
        """Same terms under another cutoff; only valid when lowering it."""
        return GradedSeries(self.terms, cutoff)

    def map_coeffs(self, fn: Callable) -> "GradedSeries":
        return GradedSeries({e: fn(c) for e, c in self.terms.items()}, self.cutoff)

    def collapse_u(self) -> "GradedSeries":
        """Set u = 1 by merging terms that differ only in their u-exponent."""
        out: dict = {}
        for (eq, _eu), c in self.terms.items():
            key = (eq, Fraction(0))
            out[key] = out[key] + c if key in out else c
        return GradedSeries(out, self.cutoff)

    def coefficient(self, e_q: Number, e_u: Number = 0):
        return self.terms.get((as_fraction(e_q), as_fraction(e_u)), 0)

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        return sorted(self.terms.items(), key=lambda item: item[0])

    def min_exponent(self) -> Fraction | None:
        if not self.terms:
            return None
        return min(eq for eq, _ in self.terms)

    def constant_term(self):
        return self.terms.get(ZERO_EXP, 0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.cutoff == other.cutoff and self.terms == other.terms

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*q^{eq}*u^{eu}" for (eq, eu), c in self.sorted_terms())
        return f"GradedSeries[{body or '0'}; cutoff {self.cutoff}]"


def series_mul(lhs: GradedSeries, rhs: GradedSeries) -> GradedSeries:
    """Truncated product; the result does not depend on term iteration order."""
    lhs._check(rhs)
    cutoff = lhs.cutoff
    out: dict = {}
    right = rhs.sorted_terms()
    for (eq1, eu1), c1 in lhs.sorted_terms():
        for (eq2, eu2), c2 in right:
            eq = eq1 + eq2
            if eq > cutoff:
                break
            key = (eq, eu1 + eu2)
            v = c1 * c2
            out[key] = out[key] + v if key in out else v
    return GradedSeries(out, cutoff)


def _nilpotent_powers(s: GradedSeries) -> Iterator[tuple[int, GradedSeries]]:
    """Yield (n, s^n) for n >= 1 until the power truncates to zero."""
    power = s
    n = 1
    while power.terms:
        yield n, power
        power = series_mul(power, s)
        n += 1


def _require_positive(s: GradedSeries) -> None:
    for eq, _ in s.terms:
        if eq <= 0:
            raise NonUnitConstantTerm(f"term with non-positive q-exponent {eq} in nilpotent argument")


def series_log(s: GradedSeries) -> GradedSeries:
    """log(s) for a series with constant term exactly 1."""
    c0 = s.constant_term()
    if c0 != 1:
        raise NonUnitConstantTerm(f"constant term is {c0!r}, not 1")
    y = GradedSeries({e: c for e, c in s.terms.items() if e != ZERO_EXP}, s.cutoff)
    _require_positive(y)
    result = GradedSeries.zero(s.cutoff)
    for n, power in _nilpotent_powers(y):
        sign = 1 if n % 2 else -1
        result = result + power.scale(Fraction(sign, n))
    return result


def series_exp(s: GradedSeries, one=Fraction(1)) -> GradedSeries:
    """exp(s) for a series whose terms all have positive q-exponent."""
    _require_positive(s)
    result = GradedSeries.one(s.cutoff, one)
    factorial = 1
    for n, power in _nilpotent_powers(s):
        factorial *= n
        result = result + power.scale(Fraction(1, factorial))
    return result


def series_inverse(s: GradedSeries) -> GradedSeries:
    """1/s for a series with invertible constant term and positive remainder."""
    c0 = s.constant_term()
    if not c0:
        raise NonUnitConstantTerm("series with vanishing constant term is not invertible")
    inv0 = Fraction(1, c0) if isinstance(c0, int) else 1 / c0
    y = GradedSeries({e: c * inv0 for e, c in s.terms.items() if e != ZERO_EXP}, s.cutoff)
    _require_positive(y)
    result = GradedSeries.one(s.cutoff, c0 * inv0)
    for n, power in _nilpotent_powers(y):
        result = result + (power if n % 2 == 0 else -power)
    return result.scale(inv0)


# ---------------------------------------------------------------------------


class DeformationJet:
    """Map from multi-exponents over deformation symbols to graded series.

    Monomials whose total degree exceeds ``degree`` are dropped.
    """

    __slots__ = ("symbols", "degree", "cutoff", "terms")

    def __init__(self, symbols: Sequence[str], degree: int, cutoff: Number,
                 terms: Mapping[tuple, GradedSeries] | None = None):
        self.symbols = tuple(symbols)
        self.degree = degree
        self.cutoff = as_fraction(cutoff)
        clean: dict[tuple, GradedSeries] = {}
        if terms:
            for exps, series in terms.items():
                if sum(exps) <= degree and series:
                    if series.cutoff != self.cutoff:
                        raise CutoffMismatch("jet component with a foreign cutoff")
                    clean[tuple(exps)] = series
        self.terms = clean

    @classmethod
    def from_series(cls, series: GradedSeries, symbols: Sequence[str], degree: int) -> "DeformationJet":
        """Split a series with Jet (or plain) coefficients by jet monomial."""
        buckets: dict[tuple, dict] = {}
        zero = (0,) * len(symbols)
        for exp, c in series.terms.items():
            if isinstance(c, Jet):
                for mono, v in c.terms.items():
                    buckets.setdefault(mono, {})[exp] = v
            else:
                buckets.setdefault(zero, {})[exp] = c
        return cls(symbols, degree, series.cutoff,
                   {m: GradedSeries(t, series.cutoff) for m, t in buckets.items()})

    def component(self, exps: Sequence[int]) -> GradedSeries:
        return self.terms.get(tuple(exps), GradedSeries.zero(self.cutoff))

    def __add__(self, other: "DeformationJet") -> "DeformationJet":
        self._check(other)
        out = dict(self.terms)
        for m, s in other.terms.items():
            out[m] = out[m] + s if m in out else s
        return DeformationJet(self.symbols, self.degree, self.cutoff, out)

    def __mul__(self, other: "DeformationJet") -> "DeformationJet":
        self._check(other)
        out: dict = {}
        for m1, s1 in self.terms.items():
            for m2, s2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if sum(m) > self.degree:
                    continue
                prod_ = series_mul(s1, s2)
                out[m] = out[m] + prod_ if m in out else prod_
        return DeformationJet(self.symbols, self.degree, self.cutoff, out)

    def _check(self, other: "DeformationJet") -> None:
        if self.symbols != other.symbols or self.degree != other.degree:
            raise MixedFieldError("deformation jets over different symbols")
        if self.cutoff != other.cutoff:
            raise CutoffMismatch("deformation jets with different cutoffs")

    def exp(self) -> "DeformationJet":
        """exp of a jet with vanishing degree-zero component."""
        zero = (0,) * len(self.symbols)
        if zero in self.terms:
            raise NonUnitConstantTerm("exp needs a vanishing degree-zero component")
        one = DeformationJet(self.symbols, self.degree, self.cutoff, {zero: GradedSeries.one(self.cutoff)})
        result, power = one, one
        for n in range(1, self.degree + 1):
            power = power * self
            if not power.terms:
                break
            result = result + DeformationJet(self.symbols, self.degree, self.cutoff,
                                             {m: s.scale(Fraction(1, math.factorial(n)))
                                              for m, s in power.terms.items()})
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeformationJet):
            return NotImplemented
        return (self.symbols, self.degree, self.cutoff, self.terms) == (
            other.symbols, other.degree, other.cutoff, other.terms)

    def __repr__(self) -> str:
        return f"DeformationJet({self.symbols}, degree {self.degree}, {len(self.terms)} components)"


def monomials(n_symbols: int, degree: int) -> list[tuple]:
    """All exponent tuples of total degree at most ``degree``."""
    return [e for e in product(range(degree + 1), repeat=n_symbols) if sum(e) <= degree]
