"""Partition functions on the ALE space X_k assembled from sectors, edge factors and C² blocks."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from aleinst.algebra import DeformationJet, GradedSeries, Jet, as_fraction
from aleinst.lattice import (
    LatticeError,
    cartan,
    check_sector,
    class_vectors,
    component,
    eval_weights,
    fundamental_gate,
    holonomy_class,
    sector_decompositions,
    shifted_coulomb,
)
from aleinst.localization import DEFAULT_CONVENTION, VanishingFactor, edge_terms
from aleinst.nekrasov import (
    ADJOINT,
    FUNDAMENTAL,
    MATTERS,
    PURE,
    ch_part,
    rescale_coupling,
    z_c2,
    z_c2_weighted,
)
from aleinst.parallel import ordered_map
from aleinst.young import _young_tuples


class SectorExcluded(LatticeError):
    """The fundamental-matter gate removes this sector."""


class KNotTwo(ValueError):
    """An operation defined only on X_2 was called with another k."""


@dataclass(frozen=True)
class AleParams:
    k: int
    w: tuple
    e1: object
    e2: object
    a: tuple
    matter: str = PURE
    mu: object = None
    cutoff: Fraction = Fraction(1)
    sector_bound: Fraction | None = None
    convention: str = DEFAULT_CONVENTION

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "cutoff", as_fraction(self.cutoff))
        if self.sector_bound is not None:
            object.__setattr__(self, "sector_bound", as_fraction(self.sector_bound))
        cartan(self.k)
        if len(self.w) != self.k:
            raise LatticeError(f"holonomy vector needs {self.k} entries, got {len(self.w)}")
        if any(x < 0 for x in self.w) or self.r < 1:
            raise LatticeError("holonomy multiplicities must be nonnegative with positive rank")
        if len(self.a) != self.r:
            raise LatticeError(f"need {self.r} Coulomb parameters, got {len(self.a)}")
        if self.matter not in MATTERS:
            raise ValueError(f"unknown matter {self.matter!r}")
        if self.matter == ADJOINT and self.mu is None:
            raise ValueError("adjoint matter needs a mass")
        if self.matter == FUNDAMENTAL:
            object.__setattr__(self, "mu", tuple(self.mu or ()))
            fundamental_gate(self.k, self.r, self.w, (Fraction(0),) * (self.k - 1), len(self.mu))
        if self.cutoff < 0:
            raise ValueError("cutoff must be nonnegative")

    @property
    def r(self) -> int:
        return sum(self.w)

    @property
    def bound(self) -> Fraction:
        return self.cutoff if self.sector_bound is None else self.sector_bound


class SectorSeries(dict):
    """Sector vector → series, plus minimal exponents of sectors cut by the sector bound."""

    def __init__(self, *args, dropped: Mapping | None = None, excluded: Iterable = (), **kw):
        super().__init__(*args, **kw)
        self.dropped = dict(dropped or {})
        self.excluded = list(excluded)

    def sorted_items(self) -> list:
        return sorted(self.items())


# ---------------------------------------------------------------------------
# edge prefactors


def _edge_factor_values(k: int, v: tuple, e1, e2, a_diff, convention: str) -> Iterator[tuple]:
    for n in range(1, k):
        terms = edge_terms(k, v, n, convention)
        if not terms:
            continue
        w1, w2 = eval_weights(k, n, e1, e2)
        for ci, cj, mult in terms:
            yield a_diff + w1 * ci + w2 * cj, mult


def _evaluate_factors(counts: Counter):
    num = 1
    den = 1
    for value, mult in counts.items():
        if mult == 0:
            continue
        if not value:
            if mult > 0:
                return 0
            raise VanishingFactor(value, "vanishing edge factor")
        if mult > 0:
            num = num * value ** mult
        else:
            den = den * value ** (-mult)
    return num if isinstance(den, int) and den == 1 else num / den


def edge_prefactor(p: AleParams, vs: Sequence) -> object:
    """Matter-dependent product of edge factors for one decomposition v⃗."""
    counts: Counter = Counter()
    r = p.r
    for alpha in range(r):
        for beta in range(r):
            if alpha == beta:
                continue
            v_ba = tuple(x - y for x, y in zip(vs[beta], vs[alpha]))
            a_ba = p.a[beta] - p.a[alpha]
            for value, mult in _edge_factor_values(p.k, v_ba, p.e1, p.e2, a_ba, p.convention):
                counts[value] -= mult
            if p.matter == ADJOINT:
                for value, mult in _edge_factor_values(p.k, v_ba, p.e1, p.e2, a_ba + p.mu, p.convention):
                    counts[value] += mult
    if p.matter == FUNDAMENTAL:
        for m in p.mu:
            for alpha in range(r):
                for value, mult in _edge_factor_values(p.k, tuple(vs[alpha]), p.e1, p.e2,
                                                       p.a[alpha] + m, p.convention):
                    counts[value] += mult
    return _evaluate_factors(counts)


# ---------------------------------------------------------------------------
# sector assembly


def _block_budget(p: AleParams, half: Fraction) -> int:
    return math.floor(p.cutoff - half)


def _patch_args(p: AleParams, vs: Sequence, i: int) -> tuple:
    e1i, e2i = eval_weights(p.k, i, p.e1, p.e2)
    return e1i, e2i, tuple(shifted_coulomb(p.a, vs, i, p.k, p.e1, p.e2))


def _gate(p: AleParams, v: tuple) -> None:
    if p.matter == FUNDAMENTAL and fundamental_gate(p.k, p.r, p.w, v, len(p.mu)) == "excluded":
        raise SectorExcluded(f"sector {tuple(map(str, v))} is excluded for {len(p.mu)} flavours")


def decomposition_series(p: AleParams, half: Fraction, vs: tuple) -> GradedSeries:
    """q^{½Σv·Cv}·(edge ratio)·∏_i Z_C²(ε^(i), a^(i)) for one decomposition."""
    budget = _block_budget(p, half)
    prefactor = edge_prefactor(p, vs)
    product = GradedSeries.one(budget)
    for i in range(1, p.k + 1):
        e1i, e2i, ai = _patch_args(p, vs, i)
        product = product * z_c2(e1=e1i, e2=e2i, a=ai, cutoff=budget, matter=p.matter, mu=p.mu)
    return GradedSeries({(half + eq, eu): c * prefactor for (eq, eu), c in product.terms.items()}, p.cutoff)


def sector_terms(p: AleParams, v: Sequence) -> Iterator[tuple]:
    """(half, v⃗, series) for every decomposition of sector v within the cutoff."""
    v = tuple(as_fraction(x) for x in v)
    check_sector(p.k, p.w, v)
    _gate(p, v)
    for half, vs in sector_decompositions(p.k, p.w, v, p.cutoff):
        yield half, vs, decomposition_series(p, half, vs)


def z_ale_sector(p: AleParams, v: Sequence) -> GradedSeries:
    """Instanton series of sector v, truncated at the cutoff."""
    total = GradedSeries.zero(p.cutoff)
    for _half, _vs, series in sector_terms(p, v):
        total = total + series
    return total


def _candidate_sectors(p: AleParams) -> list:
    """Sectors with (1/2r)·v·Cv ≤ cutoff, the only ones that can reach the cutoff."""
    c = holonomy_class(p.w)
    return [v for _, v in class_vectors(p.k, c, p.cutoff * p.r)]


def _minimal_half(p: AleParams, v: tuple) -> Fraction | None:
    """Smallest ½Σv_α·Cv_α over decompositions of v, searched up to the cutoff."""
    halves = [h for h, _ in sector_decompositions(p.k, p.w, v, p.cutoff)]
    return min(halves) if halves else None


def _sector_job(args: tuple):
    p, v, kind = args
    if kind == "ale":
        return z_ale_sector(p, v)
    if kind == "circ_cross":
        return z_circ_sector(p, v, cross_term=True)
    if kind == "circ_plain":
        return z_circ_sector(p, v, cross_term=False)
    raise ValueError(kind)


def _collect(p: AleParams, kind: str, workers: int | None) -> SectorSeries:
    cd = cartan(p.k)
    keep, dropped, excluded = [], {}, []
    for v in _candidate_sectors(p):
        low = _minimal_half(p, v)
        if low is None:
            continue
        if p.matter == FUNDAMENTAL and fundamental_gate(p.k, p.r, p.w, v, len(p.mu)) == "excluded":
            excluded.append(v)
            continue
        if cd.pair(v, v) / (2 * p.r) > p.bound:
            dropped[v] = low
            continue
        keep.append(v)
    results = ordered_map(_sector_job, [(p, v, kind) for v in keep], workers)
    return SectorSeries(zip(keep, results), dropped=dropped, excluded=excluded)


def z_ale(p: AleParams, workers: int | None = None) -> SectorSeries:
    """All sectors with a term at or below the cutoff, keyed by sector vector."""
    return _collect(p, "ale", workers)


# ---------------------------------------------------------------------------
# Vafa–Witten counting


def z_vw_sector(k: int, w: Sequence[int], v: Sequence, cutoff) -> GradedSeries:
    """Σ q^{Σn + ½Σv_α·Cv_α} over fixed points of sector v, by direct enumeration."""
    cutoff = as_fraction(cutoff)
    r = sum(w)
    terms: dict = {}
    for half, _vs in sector_decompositions(k, tuple(w), tuple(v), cutoff):
        for n in range(math.floor(cutoff - half) + 1):
            key = (half + n, Fraction(0))
            terms[key] = terms.get(key, 0) + len(_young_tuples(r * k, n))
    return GradedSeries(terms, cutoff)


def z_vw(k: int, r: int, w: Sequence[int], cutoff) -> SectorSeries:
    """Counting series per sector; coefficients are nonnegative integers."""
    w = tuple(w)
    if sum(w) != r:
        raise LatticeError(f"w sums to {sum(w)}, expected rank {r}")
    cutoff = as_fraction(cutoff)
    c = holonomy_class(w)
    out = SectorSeries()
    for _, v in class_vectors(k, c, cutoff * r):
        series = z_vw_sector(k, w, v, cutoff)
        if series:
            out[v] = series
    return out


def partition_power_coefficients(m: int, order: int) -> list:
    """Coefficients of ∏_{n≥1}(1 − q^n)^{−m} up to q^order by the product expansion."""
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for n in range(1, order + 1):
        for _ in range(m):
            for j in range(n, order + 1):
                coeffs[j] += coeffs[j - n]
    return coeffs


def z_vw_factored(k: int, r: int, w: Sequence[int], cutoff) -> SectorSeries:
    """Same series as ``z_vw`` via q^{rk/24}η^{−rk} times the lattice theta sum."""
    w = tuple(w)
    cutoff = as_fraction(cutoff)
    c = holonomy_class(w)
    eta = partition_power_coefficients(r * k, math.floor(cutoff))
    out = SectorSeries()
    for _, v in class_vectors(k, c, cutoff * r):
        theta: dict = {}
        for half, _vs in sector_decompositions(k, w, v, cutoff):
            theta[half] = theta.get(half, 0) + 1
        terms: dict = {}
        for half, mult in theta.items():
            for n in range(math.floor(cutoff - half) + 1):
                key = (half + n, Fraction(0))
                terms[key] = terms.get(key, 0) + mult * eta[n]
        series = GradedSeries(terms, cutoff)
        if series:
            out[v] = series
    return out


# ---------------------------------------------------------------------------
# Z° with τ1 as a second grading


def cross_exponent(k: int, vs: Sequence) -> Fraction:
    """½ Σ_{α≠β} v_α·Cv_β."""
    cd = cartan(k)
    total = Fraction(0)
    for alpha, va in enumerate(vs):
        for beta, vb in enumerate(vs):
            if alpha != beta:
                total += cd.pair(va, vb)
    return total / 2


def z_circ_sector(p: AleParams, v: Sequence, cross_term: bool = True) -> GradedSeries:
    """Instanton part of Z° with u = e^{τ1}.

    Every q_eff power carries the same u power; ``cross_term`` adds the extra
    u^{½Σ_{α≠β}v_α·Cv_β}, which the direct observable expansion does not produce.
    """
    terms: dict = {}
    for _half, vs, series in sector_terms(p, v):
        extra = cross_exponent(p.k, vs) if cross_term else Fraction(0)
        for (eq, _eu), c in series.terms.items():
            key = (eq, eq + extra)
            terms[key] = terms[key] + c if key in terms else c
    return GradedSeries(terms, p.cutoff)


def z_circ(p: AleParams, cross_term: bool = True, workers: int | None = None) -> SectorSeries:
    return _collect(p, "circ_cross" if cross_term else "circ_plain", workers)


def classical_tau_coefficient(p: AleParams):
    """Coefficient of τ1 in log (Z^cl)^{1/k}, namely −Σa²/(2kε1ε2)."""
    total = 0
    for x in p.a:
        total = total + x * x
    return -total / (2 * p.k * p.e1 * p.e2)


# ---------------------------------------------------------------------------
# deformed generating functions


def _jet_const(template: Jet, c) -> Jet:
    return Jet.const(template.symbols, template.degree, c)


def bullet_decomposition_series(p: AleParams, half: Fraction, vs: tuple, t: Jet) -> GradedSeries:
    """One decomposition of the k = 2 blowup generating function, e^{x·t} expanded in the jet t."""
    if p.k != 2:
        raise KNotTwo("the blowup generating function is defined for k = 2 only")
    e1, e2 = p.e1, p.e2
    budget = _block_budget(p, half)
    scalars = [x[0] for x in vs]
    sum_sq = sum((x * x for x in scalars), Fraction(0))
    lin = 0
    for x, ax in zip(scalars, p.a):
        lin = lin + x * ax
    weight = (t * (2 * (e1 + e2) * sum_sq) - t * (2 * lin)).exp() * edge_prefactor(p, vs)
    a1 = tuple(ax - 2 * e1 * x for ax, x in zip(p.a, scalars))
    a2 = tuple(ax - 2 * e2 * x for ax, x in zip(p.a, scalars))
    block1 = rescale_coupling(z_c2(e1=2 * e1, e2=e2 - e1, a=a1, cutoff=budget, matter=p.matter, mu=p.mu),
                              t * (2 * e1))
    block2 = rescale_coupling(z_c2(e1=e1 - e2, e2=2 * e2, a=a2, cutoff=budget, matter=p.matter, mu=p.mu),
                              t * (2 * e2))
    product = block1 * block2
    return GradedSeries({(half + eq, eu): c * weight for (eq, eu), c in product.terms.items()}, p.cutoff)


def z_bullet_k2_sector(p: AleParams, v: Sequence, t: Jet) -> GradedSeries:
    """k = 2 blowup generating function of one sector."""
    if p.k != 2:
        raise KNotTwo("the blowup generating function is defined for k = 2 only")
    total = GradedSeries.zero(p.cutoff)
    for half, vs, _ in _decompositions_only(p, v):
        total = total + bullet_decomposition_series(p, half, vs, t)
    return total


def _decompositions_only(p: AleParams, v: Sequence) -> Iterator[tuple]:
    v = tuple(as_fraction(x) for x in v)
    check_sector(p.k, p.w, v)
    _gate(p, v)
    for half, vs in sector_decompositions(p.k, p.w, v, p.cutoff):
        yield half, vs, None


def z_bullet_k2(p: AleParams, degree: int = 2) -> SectorSeries:
    """Sector → DeformationJet in the single symbol t."""
    if p.k != 2:
        raise KNotTwo("the blowup generating function is defined for k = 2 only")
    t = Jet.symbol(("t",), degree, "t")
    out = SectorSeries()
    for v in _candidate_sectors(p):
        if _minimal_half(p, v) is None:
            continue
        if p.matter == FUNDAMENTAL and fundamental_gate(p.k, p.r, p.w, v, len(p.mu)) == "excluded":
            out.excluded.append(v)
            continue
        out[v] = DeformationJet.from_series(z_bullet_k2_sector(p, v, t), t.symbols, degree)
    return out


def _patch_exponent(p: AleParams, vs: Sequence, l: int, ys: tuple,
                    taus: Mapping[int, Jet], ts: Mapping[tuple, Jet], template: Jet):
    """Jet exponent contributed by patch l for the diagrams ``ys`` on that patch."""
    k = p.k
    e1l, e2l, al = _patch_args(p, vs, l)
    indices = sorted(set(taus) | {s for (_i, s) in ts})
    zero = _jet_const(template, 0)

    def t_(i: int, s: int) -> Jet:
        if i <= 0 or i >= k:
            return zero
        return ts.get((i, s), zero)

    acc = zero
    for s in indices:
        coeff = t_(l, s) * e1l + t_(l - 1, s) * e2l + taus.get(s, zero)
        if coeff:
            acc = acc + coeff * ch_part(ys, s - 1, e1l, e2l, al)
        outer = zero
        for i in list(range(1, l - 1)) + list(range(l + 1, k)):
            outer = outer + t_(i, s)
        if outer:
            acc = acc + outer * ch_part(ys, s, e1l, e2l, al)
        if 2 <= l <= k - 1:
            shift_two = tuple(x - component(v, l - 1, k) * e2l for x, v in zip(al, vs))
            shift_one = tuple(x - component(v, l, k) * e1l for x, v in zip(al, vs))
            for i in range(1, k):
                ti = t_(i, s)
                if not ti:
                    continue
                if l == i:
                    part = e1l * ch_part(ys, s - 1, e1l, e2l, shift_two)
                else:
                    part = ch_part(ys, s, e1l, e2l, shift_two)
                if l - 1 == i:
                    part = part + e2l * ch_part(ys, s - 1, e1l, e2l, shift_one)
                else:
                    part = part + ch_part(ys, s, e1l, e2l, shift_one)
                acc = acc + ti * part
    return acc


def z_deformed_sector(p: AleParams, v: Sequence, taus: Mapping[int, Jet] | None = None,
                      ts: Mapping[tuple, Jet] | None = None) -> DeformationJet:
    """General-k deformed generating function of sector v.

    ``taus`` maps s ≥ 0 to τ_s and ``ts`` maps (i, s) to t_s^(i) for 1 ≤ i ≤ k−1.
    All jets must share symbols and degree.  Each exponential is expanded per
    fixed point before summation.
    """
    taus = dict(taus or {})
    ts = dict(ts or {})
    jets = list(taus.values()) + list(ts.values())
    if not jets:
        raise ValueError("need at least one deformation jet")
    template = jets[0]
    total = GradedSeries.zero(p.cutoff)
    for half, vs, _ in _decompositions_only(p, v):
        budget = _block_budget(p, half)
        prefactor = edge_prefactor(p, vs)
        product = GradedSeries.one(budget, _jet_const(template, 1))
        for l in range(1, p.k + 1):
            e1l, e2l, al = _patch_args(p, vs, l)
            block = z_c2_weighted(
                e1l, e2l, al, budget,
                lambda ys, l=l, vs=vs: _patch_exponent(p, vs, l, ys, taus, ts, template).exp(),
                p.matter, p.mu)
            product = product * block
        total = total + GradedSeries({(half + eq, eu): c * prefactor for (eq, eu), c in product.terms.items()},
                                     p.cutoff)
    return DeformationJet.from_series(total, template.symbols, template.degree)
