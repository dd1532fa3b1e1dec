"""Vertex and edge factors and the equivariant Euler classes at fixed points.

Euler classes are kept as ``FactoredClass`` multisets of linear forms so that
degrees can be counted before anything is multiplied out.  The numeric fast
paths (``vertex_value``, ``edge_value``) evaluate the same products directly
on scalars and are what the partition-function code uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from aleinst import kernels
from aleinst.lattice import cartan, component, eval_weights, toric_weights, vector_class


class VanishingFactor(ZeroDivisionError):
    """A linear form in an Euler class vanished."""

    def __init__(self, form, message: str = "") -> None:
        super().__init__(message or f"vanishing factor {form}")
        self.form = form


class InconsistentContext(ValueError):
    pass


# ---------------------------------------------------------------------------


class LinearForm:
    """Σ coeff·variable + const with exact coefficients.

    Variables are named: ``e1``, ``e2``, ``a1``.. ``ar``, ``m`` or ``m1``...
    The constant may be any scalar, which lets plain values ride along.
    """

    __slots__ = ("terms", "const", "_hash")

    def __init__(self, terms: Mapping[str, object] | Iterable = (), const=Fraction(0)):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[str, Fraction] = {}
        for name, c in items:
            acc[name] = acc.get(name, Fraction(0)) + Fraction(c)
        self.terms = tuple(sorted((n, c) for n, c in acc.items() if c))
        self.const = Fraction(const) if isinstance(const, int) else const
        self._hash = None

    @classmethod
    def var(cls, name: str, coeff=1) -> "LinearForm":
        return cls({name: coeff})

    @classmethod
    def constant(cls, value) -> "LinearForm":
        return cls((), value)

    @staticmethod
    def _lift(other) -> "LinearForm":
        return other if isinstance(other, LinearForm) else LinearForm.constant(other)

    def __add__(self, other) -> "LinearForm":
        o = self._lift(other)
        return LinearForm(self.terms + o.terms, self.const + o.const)

    __radd__ = __add__

    def __neg__(self) -> "LinearForm":
        return LinearForm(((n, -c) for n, c in self.terms), -self.const)

    def __sub__(self, other) -> "LinearForm":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "LinearForm":
        return self._lift(other) - self

    def __mul__(self, scalar) -> "LinearForm":
        if isinstance(scalar, LinearForm):
            raise TypeError("product of two linear forms is not linear")
        s = Fraction(scalar)
        return LinearForm(((n, c * s) for n, c in self.terms), self.const * s)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms and not self.const

    def coefficient(self, name: str) -> Fraction:
        return dict(self.terms).get(name, Fraction(0))

    def evaluate(self, point: Mapping[str, object]):
        acc = self.const
        for name, c in self.terms:
            if name not in point:
                raise KeyError(f"sample point lacks a value for {name}")
            acc = acc + point[name] * c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.terms == other.terms and self.const == other.const

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.terms, self.const))
        return self._hash

    def __repr__(self) -> str:
        parts = [f"{c}*{n}" for n, c in self.terms]
        if self.const or not parts:
            parts.append(str(self.const))
        return "(" + " + ".join(parts) + ")"


def eps_forms(k: int, i: int) -> tuple:
    """Toric weights at patch i as LinearForms in e1, e2."""
    (p1, q1), (p2, q2) = toric_weights(k, i)
    return (LinearForm({"e1": p1, "e2": q1}), LinearForm({"e1": p2, "e2": q2}))


class FactoredClass:
    """Multiset of linear forms with signed multiplicities."""

    __slots__ = ("factors",)

    def __init__(self, factors: Mapping | Iterable = ()):
        items = factors.items() if isinstance(factors, Mapping) else factors
        acc: dict = {}
        for form, mult in items:
            if not isinstance(form, LinearForm):
                form = LinearForm.constant(form)
            if form.is_zero():
                raise VanishingFactor(form, "identically zero form in an Euler class")
            acc[form] = acc.get(form, 0) + mult
        self.factors = {f: m for f, m in acc.items() if m}

    @classmethod
    def one(cls) -> "FactoredClass":
        return cls()

    def __mul__(self, other: "FactoredClass") -> "FactoredClass":
        return FactoredClass(list(self.factors.items()) + list(other.factors.items()))

    def inverse(self) -> "FactoredClass":
        return FactoredClass((f, -m) for f, m in self.factors.items())

    def __truediv__(self, other: "FactoredClass") -> "FactoredClass":
        return self * other.inverse()

    @property
    def net_degree(self) -> int:
        return sum(self.factors.values())

    def forms(self) -> list:
        return list(self.factors)

    def evaluate(self, point: Mapping[str, object]):
        """∏ form(point)^mult; a vanishing denominator form raises VanishingFactor."""
        num = Fraction(1)
        den = Fraction(1)
        for form, mult in sorted(self.factors.items(), key=lambda fm: repr(fm[0])):
            val = form.evaluate(point)
            if not val:
                if mult < 0:
                    raise VanishingFactor(form)
                return Fraction(0)
            if mult > 0:
                num = num * val ** mult
            else:
                den = den * val ** (-mult)
        return num / den if den != 1 else num

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactoredClass):
            return NotImplemented
        return self.factors == other.factors

    def __repr__(self) -> str:
        return "FactoredClass(" + " ".join(f"{f}^{m}" for f, m in self.factors.items()) + ")"


# ---------------------------------------------------------------------------
# vertex factors


def _cols(y) -> tuple:
    return y.cols if hasattr(y, "cols") else tuple(y)


def vertex_factor(y, y_other, e1, e2, x) -> FactoredClass:
    """m_{Y,Y'}(e1, e2, x) with one factor per box of Y and of Y'."""
    return FactoredClass((x + e1 * p + e2 * s, 1) for p, s in kernels.vertex_pairs(_cols(y), _cols(y_other)))


def vertex_fund(y, e1, e2, x) -> FactoredClass:
    """m_Y(e1, e2, x) = ∏_{s∈Y} (x − L'(s)e1 − A'(s)e2)."""
    return FactoredClass((x + e1 * p + e2 * s, 1) for p, s in kernels.fund_pairs(_cols(y)))


def vertex_value(y: tuple, y_other: tuple, e1, e2, x):
    """Numeric m_{Y,Y'}(e1, e2, x) for column tuples."""
    acc = 1
    for p, s in kernels.vertex_pairs(y, y_other):
        acc = acc * (x + e1 * p + e2 * s)
    return acc


def vertex_fund_value(y: tuple, e1, e2, x):
    acc = 1
    for p, s in kernels.fund_pairs(y):
        acc = acc * (x + e1 * p + e2 * s)
    return acc


# ---------------------------------------------------------------------------
# edge factors


@dataclass(frozen=True)
class EdgeContext:
    """Integer data fixing ℓ^(n)_v for one direction n."""

    n: int
    v_diff: tuple
    c_diff: int
    shift: int  # (v)_n − (C^{-1})^{n,c}
    tail: int  # δ_{n,c} − (v)_{n+1} + (C^{-1})^{n+1,c}
    d_plus: int | None
    d_minus: int | None
    m_cutoff: int
    solutions: tuple  # sorted members of S^±_n


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def _quadratic_integer_roots(linear: Fraction, const: Fraction) -> list[int]:
    """Integer roots of i² + linear·i + const = 0."""
    disc = linear * linear - 4 * const
    root = _rational_sqrt(disc)
    if root is None:
        return []
    out = set()
    for cand in ((-linear + root) / 2, (-linear - root) / 2):
        if cand.denominator == 1:
            out.add(int(cand))
    return sorted(out)


@lru_cache(maxsize=None)
def _edge_table(k: int, v: tuple) -> tuple:
    """Per-direction (shift, tail, solutions) plus the class and the cutoff m."""
    cd = cartan(k)
    c = vector_class(v, k)
    if c is None:
        raise InconsistentContext(f"vector {tuple(map(str, v))} is not in any holonomy class")
    shifts = []
    for n in range(1, k):
        x = v[n - 1] - cd.cinv(n, c)
        if x.denominator != 1:
            raise InconsistentContext("shift is not an integer")
        shifts.append(int(x))
    shifts.append(0)  # direction k, by the boundary convention
    rows = []
    first_nonempty = None
    for n in range(1, k):
        x = shifts[n - 1]
        tail = (1 if n == c else 0) - shifts[n]
        reduced = list(v)
        for p in range(1, n):
            reduced[p - 1] -= shifts[p - 1]
        reduced = tuple(reduced)
        lin = cd.apply(reduced)[n - 1]
        const = (cd.pair(reduced, reduced) - cd.cinv(c, c)) / 2
        sols: tuple = ()
        if x > 0:
            sols = tuple(i for i in _quadratic_integer_roots(-lin, const) if 0 <= i <= x)
        elif x < 0:
            sols = tuple(i for i in _quadratic_integer_roots(lin, const) if 0 <= i <= -x)
        if sols and first_nonempty is None:
            first_nonempty = n
        rows.append((x, tail, sols))
    m = first_nonempty if first_nonempty is not None else k - 1
    return c, m, tuple(rows)


def edge_context(k: int, v: Sequence, n: int) -> EdgeContext:
    v = tuple(Fraction(x) for x in v)
    if not 1 <= n <= k - 1:
        raise InconsistentContext(f"direction {n} outside 1..{k - 1}")
    c, m, rows = _edge_table(k, v)
    x, tail, sols = rows[n - 1]
    d_plus = (sols[0] if sols else x) if x > 0 else None
    d_minus = (sols[0] if sols else -x) if x < 0 else None
    return EdgeContext(n=n, v_diff=v, c_diff=c, shift=x, tail=tail, d_plus=d_plus,
                       d_minus=d_minus, m_cutoff=m, solutions=sols)


def _block(i_lo: int, i_hi: int, j_lo: Callable[[int], int], j_hi: Callable[[int], int],
           form: Callable[[int, int], tuple], mult: int, out: list) -> None:
    for i in range(i_lo, i_hi + 1):
        for j in range(j_lo(i), j_hi(i) + 1):
            ci, cj = form(i, j)
            out.append((ci, cj, mult))


class EdgeConvention:
    """One realization of the edge-factor case listing.

    Terms are triples (ci, cj, mult) standing for (a + ci·ε1^(n) + cj·ε2^(n))^mult.
    """

    name = "abstract"

    def terms(self, ctx: EdgeContext) -> list:
        raise NotImplementedError


class PrintedConvention(EdgeConvention):
    """The case listing exactly as printed, including the sign −j·ε2 in the
    second positive sub-case's last product."""

    name = "printed"
    second_case_sign = -1

    def terms(self, ctx: EdgeContext) -> list:
        x, D = ctx.shift, ctx.tail
        out: list = []
        if ctx.n > ctx.m_cutoff or x == 0:
            return out
        half_down = D // 2  # ⌊D/2⌋
        neg_half_down = (-D) // 2  # ⌊−D/2⌋
        if x > 0:
            d = ctx.d_plus
            if D + 2 * (x - d) >= 0:
                _block(x - d, x - 1, lambda i: 0, lambda i: 2 * i + D,
                       lambda i, j: (i + half_down, j), 1, out)
            elif 2 <= D + 2 * x < 2 * d:
                _block(x - d, -half_down - 1, lambda i: 1, lambda i: 2 * i - D - 1,
                       lambda i, j: (i - neg_half_down, -j), -1, out)
                sign = self.second_case_sign
                _block(-half_down, 2 * x + D - 2, lambda i: 0, lambda i: 2 * i + D,
                       lambda i, j: (i + half_down, sign * j), 1, out)
            else:
                _block(x - d, x - 1, lambda i: 1, lambda i: -2 * i - D - 1,
                       lambda i, j: (i - neg_half_down, -j), -1, out)
        else:
            d = ctx.d_minus
            y = -x
            if D + 2 * x < 2 - 2 * d:
                _block(1 + y - d, y, lambda i: 1, lambda i: 2 * i - D - 1,
                       lambda i, j: (-(i + neg_half_down), -j), 1, out)
            elif D + 2 * x < 0:
                _block(half_down + 1, y, lambda i: 1, lambda i: 2 * i - D - 1,
                       lambda i, j: (-(i + neg_half_down), -j), 1, out)
                _block(1 + y - d, half_down, lambda i: 0, lambda i: -2 * i + D,
                       lambda i, j: (-i + half_down, j), -1, out)
            else:
                _block(1 + y - d, y, lambda i: 0, lambda i: -2 * i + D,
                       lambda i, j: (-i + half_down, j), -1, out)
        return out


EDGE_CONVENTIONS: dict[str, EdgeConvention] = {"printed": PrintedConvention()}
DEFAULT_CONVENTION = "printed"


@lru_cache(maxsize=None)
def edge_terms(k: int, v: tuple, n: int, convention: str = DEFAULT_CONVENTION) -> tuple:
    """Factor data of ℓ^(n)_v as (ci, cj, mult) triples."""
    return tuple(EDGE_CONVENTIONS[convention].terms(edge_context(k, v, n)))


def edge_factor(ctx: EdgeContext, k: int, eps: tuple, a_diff,
                convention: str = DEFAULT_CONVENTION) -> FactoredClass:
    """ℓ^(n)_v(ε1^(n), ε2^(n), a) as a factored class."""
    e1, e2 = eps
    terms = EDGE_CONVENTIONS[convention].terms(ctx)
    return FactoredClass((a_diff + e1 * ci + e2 * cj, mult) for ci, cj, mult in terms)


def edge_total_degree(k: int, v: Sequence, convention: str = DEFAULT_CONVENTION) -> int:
    v = tuple(Fraction(x) for x in v)
    return sum(m for n in range(1, k) for _, _, m in edge_terms(k, v, n, convention))


def edge_value(k: int, v: tuple, e1, e2, a, convention: str = DEFAULT_CONVENTION):
    """Numeric ∏_{n=1}^{k−1} ℓ^(n)_v(ε^(n), a) on concrete ε = (e1, e2)."""
    num = 1
    den = 1
    for n in range(1, k):
        terms = edge_terms(k, v, n, convention)
        if not terms:
            continue
        w1, w2 = eval_weights(k, n, e1, e2)
        for ci, cj, mult in terms:
            f = a + w1 * ci + w2 * cj
            if mult > 0:
                num = num * f
            else:
                den = den * f
    if isinstance(den, int):
        return num
    if not den:
        raise VanishingFactor(den, "vanishing edge factor denominator")
    return num / den


# ---------------------------------------------------------------------------
# closed-form oracles


def edge_factor_closed_k2(v, e1, e2, a) -> FactoredClass:
    """ℓ_v(e1, e2, a) from the k = 2 three-case closed form."""
    v = Fraction(v)
    fl = math.floor(v)
    twice_frac = int(2 * (v - fl))
    out = []
    if fl > 0:
        for i in range(0, fl):
            for j in range(0, 2 * i + twice_frac + 1):
                out.append((a + e1 * i + e2 * j, 1))
    elif fl < 0:
        for i in range(1, -fl + 1):
            for j in range(1, 2 * i - twice_frac - 1 + 1):
                out.append((a + e1 * (twice_frac - i) - e2 * j, 1))
    return FactoredClass(out)


def _scan_solutions(k: int, reduced: tuple, n: int, c: int, bound: int, sign: int) -> list:
    # direct scan of i = 0..bound; independent of the root extraction above
    cd = cartan(k)
    lin = cd.apply(reduced)[n - 1]
    const = (cd.pair(reduced, reduced) - cd.cinv(c, c)) / 2
    return [i for i in range(0, bound + 1) if i * i - sign * i * lin + const == 0]


def edge_factor_closed_k3(v: Sequence, e1_1, e2_1, e1_2, e2_2, a) -> FactoredClass:
    """ℓ^(1)·ℓ^(2) for k = 3 from the floor-based closed forms.

    ``e1_n, e2_n`` are the toric weights at direction n.
    """
    v = tuple(Fraction(x) for x in v)
    c = vector_class(v, 3)
    f1, f2 = math.floor(v[0]), math.floor(v[1])
    delta1 = 1 if c == 1 else 0
    delta2 = 1 if c == 2 else 0
    D = delta1 - f2
    out: list = []

    # direction 1
    s1: list = []
    if f1 > 0:
        s1 = _scan_solutions(3, v, 1, c, f1, +1)
        d = s1[0] if s1 else f1
        if D + 2 * (f1 - d) >= 0:
            for i in range(f1 - d, f1):
                for j in range(0, 2 * i + D + 1):
                    out.append((a + e1_1 * (i + math.floor(Fraction(D, 2))) + e2_1 * j, 1))
        elif 2 <= D + 2 * f1 < 2 * d:
            for i in range(f1 - d, -math.floor(Fraction(D, 2)) - 1 + 1):
                for j in range(1, 2 * i - D - 1 + 1):
                    out.append((a + e1_1 * (i - math.floor(Fraction(-D, 2))) - e2_1 * j, -1))
            for i in range(-math.floor(Fraction(D, 2)), 2 * f1 + D - 2 + 1):
                for j in range(0, 2 * i + D + 1):
                    out.append((a + e1_1 * (i + math.floor(Fraction(D, 2))) - e2_1 * j, 1))
        else:
            for i in range(f1 - d, f1):
                for j in range(1, -2 * i - D - 1 + 1):
                    out.append((a + e1_1 * (i - math.floor(Fraction(-D, 2))) - e2_1 * j, -1))
    elif f1 < 0:
        s1 = _scan_solutions(3, v, 1, c, -f1, -1)
        d = s1[0] if s1 else -f1
        if D + 2 * f1 < 2 - 2 * d:
            for i in range(1 - f1 - d, -f1 + 1):
                for j in range(1, 2 * i - D - 1 + 1):
                    out.append((a - e1_1 * (i + math.floor(Fraction(-D, 2))) - e2_1 * j, 1))
        elif D + 2 * f1 < 0:
            for i in range(math.floor(Fraction(D, 2)) + 1, -f1 + 1):
                for j in range(1, 2 * i - D - 1 + 1):
                    out.append((a - e1_1 * (i + math.floor(Fraction(-D, 2))) - e2_1 * j, 1))
            for i in range(1 - f1 - d, math.floor(Fraction(D, 2)) + 1):
                for j in range(0, -2 * i + D + 1):
                    out.append((a + e1_1 * (-i + math.floor(Fraction(D, 2))) + e2_1 * j, -1))
        else:
            for i in range(1 - f1 - d, -f1 + 1):
                for j in range(0, -2 * i + D + 1):
                    out.append((a + e1_1 * (-i + math.floor(Fraction(D, 2))) + e2_1 * j, -1))

    # direction 2, trivial when direction 1 already had solutions
    if not s1:
        reduced = (v[0] - f1, v[1])
        if f2 > 0:
            s2 = _scan_solutions(3, reduced, 2, c, f2, +1)
            d = s2[0] if s2 else f2
            for i in range(f2 - d, f2):
                for j in range(0, 2 * i + delta2 + 1):
                    out.append((a + e1_2 * i + e2_2 * j, 1))
        elif f2 < 0:
            s2 = _scan_solutions(3, reduced, 2, c, -f2, -1)
            d = s2[0] if s2 else -f2
            for i in range(1 - f2 - d, -f2 + 1):
                for j in range(1, 2 * i - delta2 - 1 + 1):
                    out.append((a - e1_2 * math.floor(Fraction(-delta2, 2)) - (e1_2 * i + e2_2 * j), 1))
    return FactoredClass(out)


# ---------------------------------------------------------------------------
# restriction characters


def restriction_character(l: int, a: int) -> dict:
    """χ(O_{D_l}(a)) as {(power of χ1, power of χ2): multiplicity}."""
    out: dict = {}
    if a >= 0:
        p1 = a // 2
        for j in range(0, a + 1):
            out[(p1, j)] = out.get((p1, j), 0) + 1
    else:
        p1 = -(abs(a) // 2)
        for j in range(1, abs(a)):
            out[(p1, -j)] = out.get((p1, -j), 0) - 1
    return {key: m for key, m in out.items() if m}


# ---------------------------------------------------------------------------
# assembled Euler classes


def coulomb_forms(r: int, prefix: str = "a") -> list:
    return [LinearForm.var(f"{prefix}{alpha}") for alpha in range(1, r + 1)]


def _shifted(a_form, v: tuple, i: int, k: int):
    e1i, e2i = eps_forms(k, i)
    return a_form - e1i * component(v, i, k) - e2i * component(v, i - 1, k)


def euler_class(kind: str, datum, other=None, a=None, a_other=None,
                convention: str = DEFAULT_CONVENTION) -> FactoredClass:
    """Euler class at a fixed point.

    ``kind`` is ``tangent`` (datum against itself), ``natural`` or
    ``bifundamental`` (datum against ``other``, Coulomb forms ``a`` and
    ``a_other``).  Coulomb parameters default to symbolic a1..ar.
    """
    k = datum.k
    if a is None:
        a = coulomb_forms(datum.r)
    if kind == "natural":
        out = FactoredClass.one()
        for alpha in range(datum.r):
            v = datum.vs[alpha]
            for i in range(1, k + 1):
                e1i, e2i = eps_forms(k, i)
                out = out * vertex_fund(datum.tuples[alpha][i - 1], e1i, e2i, _shifted(a[alpha], v, i, k))
            for n in range(1, k):
                out = out * edge_factor(edge_context(k, v, n), k, eps_forms(k, n), a[alpha], convention)
        return out
    if kind == "tangent":
        other, a_other = datum, a
    elif kind == "bifundamental":
        if other is None:
            raise ValueError("bifundamental class needs a second datum")
        if a_other is None:
            a_other = coulomb_forms(other.r, "b")
    else:
        raise ValueError(f"unknown Euler class kind {kind!r}")
    out = FactoredClass.one()
    for alpha in range(datum.r):
        for beta in range(other.r):
            v_ba = tuple(x - y for x, y in zip(other.vs[beta], datum.vs[alpha]))
            a_ba = a_other[beta] - a[alpha]
            for i in range(1, k + 1):
                e1i, e2i = eps_forms(k, i)
                out = out * vertex_factor(datum.tuples[alpha][i - 1], other.tuples[beta][i - 1],
                                          e1i, e2i, _shifted(a_ba, v_ba, i, k))
            for n in range(1, k):
                out = out * edge_factor(edge_context(k, v_ba, n), k, eps_forms(k, n), a_ba, convention)
    return out
