"""Level-one affine su(k) characters and the Vafa–Witten factorization check."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from aleinst.algebra import GradedSeries, as_fraction
from aleinst.lattice import cartan
from aleinst.reports import CheckReport


def eta_inverse_power(m: int, cutoff) -> GradedSeries:
    """η(q)^{−m} = q^{−m/24} ∏(1 − q^n)^{−m}, exponents absolute and at most ``cutoff``."""
    if m < 0:
        raise ValueError("power must be nonnegative")
    cutoff = as_fraction(cutoff)
    offset = Fraction(-m, 24)
    top = math.floor(cutoff - offset)
    coeffs = [0] * (max(top, -1) + 1)
    if coeffs:
        coeffs[0] = 1
    # multiply by 1/(1 − q^n) m times for each n
    for n in range(1, top + 1):
        for _ in range(m):
            for j in range(n, top + 1):
                coeffs[j] += coeffs[j - n]
    return GradedSeries({(offset + j, Fraction(0)): c for j, c in enumerate(coeffs)}, cutoff)


def _weight_key(k: int, m: Sequence[int], d: int) -> tuple:
    cd = cartan(k)
    col = cd.column(d)
    return tuple(Fraction(x) + y for x, y in zip(m, col))


@dataclass
class AffineCharacter:
    """χ^{ω̂_d} resolved by the weight γ + ω_d (coordinates in the simple-root basis)."""

    k: int
    d: int
    cutoff: Fraction
    theta: dict = field(default_factory=dict)  # weight key → q-exponent ½|γ+ω_d|²

    def series(self, key: tuple) -> GradedSeries:
        """η^{−(k−1)} q^{½|γ+ω_d|²} for one weight."""
        e = self.theta[key]
        eta = eta_inverse_power(self.k - 1, self.cutoff - e)
        return GradedSeries({(eq + e, eu): c for (eq, eu), c in eta.terms.items()}, self.cutoff)


def affine_char(k: int, d: int, cutoff) -> AffineCharacter:
    """Theta part of the level-one character with every weight whose exponent is ≤ cutoff + (k−1)/24."""
    if not 0 <= d < k:
        raise ValueError(f"fundamental weight index {d} outside 0..{k - 1}")
    cutoff = as_fraction(cutoff)
    cd = cartan(k)
    limit = cutoff + Fraction(k - 1, 24)
    # v·Cv ≥ λ_min |v|² with λ_min = 4 sin²(π/2k) the smallest Cartan eigenvalue
    smallest = 4 * math.sin(math.pi / (2 * k)) ** 2
    radius = math.floor(math.sqrt(2 * float(max(limit, Fraction(0))) / smallest)) + 2
    theta = {}
    for m in product(range(-radius, radius + 1), repeat=k - 1):
        key = _weight_key(k, m, d)
        e = cd.pair(key, key) / 2
        if e <= limit:
            theta[key] = e
    return AffineCharacter(k, d, cutoff, theta)


def _add_keys(x: tuple, y: tuple) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def vw_from_characters(k: int, w: Sequence[int], cutoff) -> dict:
    """q^{rk/24} ∏_j (χ^{ω̂_j}/η)^{w_j}, sector-resolved by total weight."""
    cutoff = as_fraction(cutoff)
    r = sum(w)
    shift = Fraction(r * k, 24)
    # theta sums first; the η dressing is a single power at the end
    theta_budget = cutoff
    acc = {tuple([Fraction(0)] * (k - 1)): {Fraction(0): 1}}
    for d, mult in enumerate(w):
        ch = affine_char(k, d, theta_budget)
        for _ in range(mult):
            nxt: dict = {}
            for key, powers in acc.items():
                for wkey, e in ch.theta.items():
                    new_key = _add_keys(key, wkey)
                    bucket = nxt.setdefault(new_key, {})
                    for e0, c in powers.items():
                        if e0 + e <= theta_budget:
                            bucket[e0 + e] = bucket.get(e0 + e, 0) + c
            acc = {key: b for key, b in nxt.items() if b}
    eta = eta_inverse_power(r * k, cutoff - shift)
    out = {}
    for key, powers in acc.items():
        terms: dict = {}
        for e0, c in powers.items():
            for (eq, _), ce in eta.terms.items():
                total = e0 + eq + shift
                if total <= cutoff:
                    terms[(total, Fraction(0))] = terms.get((total, Fraction(0)), 0) + c * ce
        series = GradedSeries(terms, cutoff)
        if series:
            out[key] = series
    return out


def vw_character_check(k: int, r: int, w: Sequence[int], cutoff) -> CheckReport:
    """Compare the fixed-point count of each sector with the character product."""
    from aleinst.ale import z_vw

    w = tuple(w)
    if sum(w) != r:
        raise ValueError(f"w sums to {sum(w)}, expected {r}")
    counted = z_vw(k, r, w, cutoff)
    from_chars = vw_from_characters(k, w, cutoff)
    details = []
    for key in sorted(set(counted) | set(from_chars)):
        lhs = counted.get(key)
        rhs = from_chars.get(key)
        if lhs != rhs:
            details.append(f"sector {','.join(map(str, key))}: counting and characters disagree")
    return CheckReport("vw-characters", "fail" if details else "pass", details)
