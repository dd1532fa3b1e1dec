"""Flat-space instanton partition functions, the building block of every X_k sum."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from aleinst import kernels
from aleinst.algebra import DeformationJet, GradedSeries, Jet
from aleinst.localization import VanishingFactor
from aleinst.young import _young_tuples

PURE = "pure"
ADJOINT = "adjoint"
FUNDAMENTAL = "fundamental"
MATTERS = (PURE, ADJOINT, FUNDAMENTAL)


@dataclass(frozen=True)
class C2Params:
    e1: object
    e2: object
    a: tuple
    matter: str = PURE
    mu: object = None  # scalar for adjoint, tuple of scalars for fundamental
    cutoff: int = 0

    def __post_init__(self) -> None:
        if self.matter not in MATTERS:
            raise ValueError(f"unknown matter {self.matter!r}")
        if not self.a:
            raise ValueError("need at least one Coulomb parameter")
        if self.matter == FUNDAMENTAL and len(self.mu) > 2 * len(self.a):
            raise ValueError("at most 2r fundamental flavours")


def fixed_point_weight(ys: tuple, e1, e2, a: Sequence, matter: str = PURE, mu=None):
    """Contribution of one r-tuple of diagrams, without the q power."""
    r = len(a)
    num = 1
    den = 1
    for alpha in range(r):
        for beta in range(r):
            pairs = kernels.vertex_pairs(ys[alpha], ys[beta])
            if not pairs:
                continue
            x = a[beta] - a[alpha]
            for p, s in pairs:
                base = x + e1 * p + e2 * s
                den = den * base
                if matter == ADJOINT:
                    num = num * (base + mu)
    if matter == FUNDAMENTAL:
        for alpha in range(r):
            pairs = kernels.fund_pairs(ys[alpha])
            for m in mu:
                x = a[alpha] + m
                for p, s in pairs:
                    num = num * (x + e1 * p + e2 * s)
    if isinstance(den, int):
        return num
    if not den:
        raise VanishingFactor(den, "vanishing vertex factor")
    return num / den


def _tuples_of_weight(r: int, n: int) -> tuple:
    return _young_tuples(r, n)


@lru_cache(maxsize=4096)
def z_c2_terms(e1, e2, a: tuple, cutoff: int, matter: str = PURE, mu=None) -> tuple:
    """Coefficients (c_0, …, c_cutoff) of the flat-space series."""
    r = len(a)
    coeffs = []
    for n in range(cutoff + 1):
        acc = 0
        for ys in _tuples_of_weight(r, n):
            acc = acc + fixed_point_weight(ys, e1, e2, a, matter, mu)
        coeffs.append(acc)
    return tuple(coeffs)


def z_c2(params: C2Params | None = None, *, e1=None, e2=None, a=None, cutoff=None,
         matter: str = PURE, mu=None) -> GradedSeries:
    """Z^inst_{C²} as a q-series truncated at ``cutoff``."""
    if params is None:
        params = C2Params(e1, e2, tuple(a), matter, mu, int(cutoff))
    mu = params.mu if params.matter != FUNDAMENTAL else tuple(params.mu)
    coeffs = z_c2_terms(params.e1, params.e2, tuple(params.a), params.cutoff, params.matter, mu)
    return GradedSeries({(Fraction(n), Fraction(0)): c for n, c in enumerate(coeffs)}, params.cutoff)


# ---------------------------------------------------------------------------
# observables


def ch_part(ys: tuple, s: int, e1, e2, a: Sequence):
    """[ch_{Y⃗}(e1, e2, a⃗)]_s for s ≥ −1 via the four-term box sum."""
    if s < -1:
        raise ValueError("degree must be at least -1")
    p = s + 2
    total = 0
    for alpha, cols in enumerate(ys):
        total = total + a[alpha] ** p
        for pl, pa in kernels.fund_pairs(cols):
            x = a[alpha] + e1 * pl + e2 * pa
            total = total - (x ** p - (x - e1) ** p - (x - e2) ** p + (x - e1 - e2) ** p)
    return total / (e1 * e2 * math.factorial(p))


def ch_parts(ys: tuple, s: int, e1, e2, a: Sequence):
    """Alias of ``ch_part`` kept for the public API."""
    return ch_part(ys, s, e1, e2, a)


def z_c2_weighted(e1, e2, a: Sequence, cutoff: int, insertion: Callable[[tuple], object],
                  matter: str = PURE, mu=None) -> GradedSeries:
    """Σ_Y q^{|Y|} weight(Y)·insertion(Y), the insertion applied per fixed point."""
    a = tuple(a)
    r = len(a)
    terms = {}
    for n in range(cutoff + 1):
        acc = 0
        for ys in _tuples_of_weight(r, n):
            acc = acc + insertion(ys) * fixed_point_weight(ys, e1, e2, a, matter, mu)
        terms[(Fraction(n), Fraction(0))] = acc
    return GradedSeries(terms, cutoff)


def observable_exponent(ys: tuple, e1, e2, a: Sequence, taus: Mapping[int, Jet],
                        extra: Mapping[int, Jet] | None = None):
    """Σ_s τ_s [ch]_{s−1} (+ Σ_s extra_s [ch]_s) as a jet."""
    acc = None
    for s, tau in taus.items():
        term = tau * ch_part(ys, s - 1, e1, e2, a)
        acc = term if acc is None else acc + term
    for s, coeff in (extra or {}).items():
        term = coeff * ch_part(ys, s, e1, e2, a)
        acc = term if acc is None else acc + term
    return acc


def z_c2_deformed(e1, e2, a: Sequence, cutoff: int, taus: Mapping[int, Jet],
                  matter: str = PURE, mu=None) -> DeformationJet:
    """Deformed partition function exp(Σ τ_s [ch]_{s−1}) expanded per fixed point."""
    template = next(iter(taus.values()))
    series = z_c2_weighted(e1, e2, a, cutoff,
                           lambda ys: observable_exponent(ys, e1, e2, a, taus).exp(), matter, mu)
    return DeformationJet.from_series(series, template.symbols, template.degree)


def rescale_coupling(series: GradedSeries, log_factor: Jet) -> GradedSeries:
    """Substitute q → q·exp(log_factor) in a series with integer-spaced exponents."""
    out = {}
    for (eq, eu), c in series.terms.items():
        out[(eq, eu)] = (log_factor * eq).exp() * c
    return GradedSeries(out, series.cutoff)
