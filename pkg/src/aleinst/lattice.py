"""Cartan data of A_{k-1}, toric weights, holonomy congruences and fixed points.

Vectors in (1/k)Z^{k-1} are tuples of Fractions indexed 1..k-1 in the maths
and 0..k-2 in Python.  ``component(v, i)`` applies the boundary convention
(v)_0 = (v)_k = 0 and is the only place that convention lives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from aleinst.young import _young_tuples

Vector = tuple  # tuple[Fraction, ...]


class LatticeError(ValueError):
    pass


class KTooSmall(LatticeError):
    pass


class IndexOutOfRange(LatticeError):
    pass


class CongruenceViolation(LatticeError):
    pass


class TooManyFlavours(LatticeError):
    pass


@dataclass(frozen=True)
class CartanData:
    k: int
    C: tuple
    Cinv: tuple
    ktilde: int

    def cinv(self, i: int, j: int) -> Fraction:
        """(C^{-1})^{ij} with 1-based indices, zero when either index is 0 or k."""
        if i in (0, self.k) or j in (0, self.k):
            return Fraction(0)
        return self.Cinv[i - 1][j - 1]

    def column(self, c: int) -> Vector:
        """C^{-1} e_c, the zero vector for c = 0."""
        return tuple(self.cinv(i, c) for i in range(1, self.k))

    def apply(self, v: Sequence) -> Vector:
        """C·v."""
        n = self.k - 1
        out = []
        for i in range(n):
            acc = 2 * v[i]
            if i > 0:
                acc -= v[i - 1]
            if i < n - 1:
                acc -= v[i + 1]
            out.append(acc)
        return tuple(out)

    def apply_inverse(self, u: Sequence) -> Vector:
        """C^{-1}·u."""
        return tuple(sum((self.Cinv[i][j] * u[j] for j in range(self.k - 1)), Fraction(0))
                     for i in range(self.k - 1))

    def pair(self, v: Sequence, w: Sequence) -> Fraction:
        """v·Cw."""
        return sum((a * b for a, b in zip(v, self.apply(w))), Fraction(0))


@lru_cache(maxsize=None)
def cartan(k: int) -> CartanData:
    if k < 2:
        raise KTooSmall(f"k must be at least 2, got {k}")
    n = k - 1
    C = tuple(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)) for i in range(n))
    Cinv = tuple(tuple(Fraction(min(i, j)) - Fraction(i * j, k) for j in range(1, k)) for i in range(1, k))
    return CartanData(k=k, C=C, Cinv=Cinv, ktilde=k // 2 if k % 2 == 0 else k)


def toric_weights(k: int, i: int) -> tuple:
    """(ε1^(i), ε2^(i)) as integer coefficient pairs over (ε1, ε2)."""
    if not 1 <= i <= k:
        raise IndexOutOfRange(f"fixed point index {i} outside 1..{k}")
    return ((k - i + 1, -(i - 1)), (-(k - i), i))


def eval_weights(k: int, i: int, e1, e2) -> tuple:
    """Toric weights at patch i evaluated on concrete ε values."""
    (p1, q1), (p2, q2) = toric_weights(k, i)
    return (e1 * p1 + e2 * q1, e1 * p2 + e2 * q2)


def slope_is_valid(k: int, slope: Fraction) -> bool:
    """True when ε1 = x, ε2 = slope·x keeps every toric weight nonzero and ε1 ≠ ±ε2."""
    slope = Fraction(slope)
    if slope in (0, 1, -1):
        return False
    for i in range(1, k + 1):
        for p, q in toric_weights(k, i):
            if p + q * slope == 0:
                return False
    return True


def component(v: Sequence, i: int, k: int):
    """(v)_i with the boundary convention (v)_0 = (v)_k = 0."""
    if i <= 0 or i >= k:
        return Fraction(0)
    return v[i - 1]


def shifted_coulomb(a: Sequence, vs: Sequence[Sequence], i: int, k: int, e1, e2) -> list:
    """a_α^(i) = a_α − (v_α)_i ε1^(i) − (v_α)_{i−1} ε2^(i) for every α."""
    w1, w2 = eval_weights(k, i, e1, e2)
    return [a_al - w1 * component(v, i, k) - w2 * component(v, i - 1, k) for a_al, v in zip(a, vs)]


# ---------------------------------------------------------------------------


def block_classes(w: Sequence[int]) -> tuple:
    """Class c_α of each Coulomb parameter, in the block order 0..0,1..1,..."""
    if any(x < 0 for x in w):
        raise LatticeError(f"holonomy multiplicities must be nonnegative: {w}")
    return tuple(i for i, m in enumerate(w) for _ in range(m))


def holonomy_class(w: Sequence[int]) -> int:
    """Σ i·w_i mod k."""
    k = len(w)
    return sum(i * m for i, m in enumerate(w)) % k


def vector_class(v: Sequence, k: int) -> int | None:
    """The c with v ≡ C^{-1} e_c mod Z^{k-1}, or None if there is none."""
    cd = cartan(k)
    for c in range(k):
        if all((x - y).denominator == 1 for x, y in zip(v, cd.column(c))):
            return c
    return None


def check_sector(k: int, w: Sequence[int], v: Sequence) -> None:
    """Raise CongruenceViolation unless k·v_j ≡ −j·c mod k for every j."""
    if len(w) != k:
        raise CongruenceViolation(f"holonomy vector needs {k} entries, got {len(w)}")
    if len(v) != k - 1:
        raise CongruenceViolation(f"sector vector needs {k - 1} entries, got {len(v)}")
    c = holonomy_class(w)
    if vector_class(tuple(Fraction(x) for x in v), k) != c:
        raise CongruenceViolation(f"sector {tuple(map(str, v))} violates the congruence for w={tuple(w)}")


def _box_radius(bound: Fraction) -> int:
    # ¼|u|² ≤ u·C^{-1}u ≤ 2·bound bounds every coordinate
    bound = max(Fraction(bound), Fraction(0))
    return math.isqrt(math.floor(8 * bound)) + 1


@lru_cache(maxsize=None)
def class_vectors(k: int, c: int, bound: Fraction, radius: int | None = None) -> tuple:
    """All v ≡ C^{-1}e_c mod Z^{k-1} with ½ v·Cv ≤ bound, sorted, with their ½ v·Cv."""
    cd = cartan(k)
    rad = _box_radius(bound) if radius is None else radius
    out = []
    for u in product(range(-rad, rad + 1), repeat=k - 1):
        v = cd.apply_inverse(u)
        if vector_class(v, k) != c:
            continue
        half = sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0)) / 2
        if half <= bound:
            out.append((half, v))
    out.sort()
    return tuple(out)


def list_sectors(k: int, w: Sequence[int], bound, radius: int | None = None) -> list:
    """Sector vectors v with (1/2r)·v·Cv ≤ bound satisfying the holonomy congruence."""
    r = sum(w)
    if r < 1:
        raise LatticeError("rank must be positive")
    c = holonomy_class(w)
    bound = Fraction(bound)
    return [v for _, v in class_vectors(k, c, bound * r, radius)]


def sector_decompositions(k: int, w: Sequence[int], v: Sequence, bound,
                          radius: int | None = None) -> Iterator[tuple]:
    """Tuples (v_1..v_r) with Σ v_α = v, v_α in class c_α and ½Σ v_α·Cv_α ≤ bound.

    Yields ``(half_sum, vs)`` in a deterministic order.
    """
    check_sector(k, w, v)
    v = tuple(Fraction(x) for x in v)
    bound = Fraction(bound)
    classes = block_classes(w)
    r = len(classes)
    cd = cartan(k)
    cands = [class_vectors(k, c, bound, radius) for c in classes]

    def rec(alpha: int, acc: tuple, used: Fraction, chosen: tuple):
        if alpha == r - 1:
            last = tuple(x - y for x, y in zip(v, acc))
            if radius is not None and any(abs(x) > radius for x in cd.apply(last)):
                return
            total = used + cd.pair(last, last) / 2
            if total <= bound:
                yield total, chosen + (last,)
            return
        for half, va in cands[alpha]:
            if used + half > bound:
                continue
            yield from rec(alpha + 1, tuple(x + y for x, y in zip(acc, va)), used + half, chosen + (va,))

    yield from rec(0, (Fraction(0),) * (k - 1), Fraction(0), ())


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FixedPointDatum:
    """Torus-fixed point: r tuples of k diagrams plus r fractional vectors."""

    k: int
    w: tuple
    tuples: tuple
    vs: tuple
    classes: tuple = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", block_classes(self.w))
        if len(self.tuples) != self.r or len(self.vs) != self.r:
            raise CongruenceViolation("datum needs one tableau tuple and one vector per colour")
        for c, v in zip(self.classes, self.vs):
            if vector_class(v, self.k) != c:
                raise CongruenceViolation(f"block vector {tuple(map(str, v))} not in class {c}")
        for t in self.tuples:
            if len(t) != self.k:
                raise CongruenceViolation("each colour needs exactly k diagrams")

    @property
    def r(self) -> int:
        return sum(self.w)

    @property
    def sizes(self) -> tuple:
        return tuple(sum(sum(cols) for cols in t) for t in self.tuples)

    @property
    def sector(self) -> Vector:
        return tuple(sum(col, Fraction(0)) for col in zip(*self.vs))

    @property
    def lattice_exponent(self) -> Fraction:
        cd = cartan(self.k)
        return sum((cd.pair(v, v) for v in self.vs), Fraction(0)) / 2

    @property
    def q_exponent(self) -> Fraction:
        return sum(self.sizes) + self.lattice_exponent

    @property
    def us(self) -> tuple:
        cd = cartan(self.k)
        return tuple(cd.apply(v) for v in self.vs)


def discriminant(d: FixedPointDatum, r: int | None = None) -> Fraction:
    """Δ = Σn_α + ½Σ v_α·Cv_α − (1/2r) v·Cv with v = Σ v_α."""
    r = d.r if r is None else r
    cd = cartan(d.k)
    v = d.sector
    return d.q_exponent - cd.pair(v, v) / (2 * r)


def enumerate_sector_data(k: int, w: Sequence[int], v: Sequence, max_q_exponent,
                          brute_force: bool | int = False) -> Iterator[FixedPointDatum]:
    """Every fixed point in sector v with q-exponent at most ``max_q_exponent``.

    ``brute_force`` widens the lattice box to |u_j| ≤ 6 (or the given radius).
    """
    bound = Fraction(max_q_exponent)
    radius = None
    if brute_force:
        radius = 6 if brute_force is True else int(brute_force)
    w = tuple(w)
    r = sum(w)
    for half, vs in sector_decompositions(k, w, v, bound, radius):
        budget = math.floor(bound - half)
        for n in range(budget + 1):
            for flat in _young_tuples(r * k, n):
                tuples = tuple(flat[a * k:(a + 1) * k] for a in range(r))
                yield FixedPointDatum(k, w, tuples, vs)


def cyclic_shift(w: Sequence[int], j: int) -> tuple:
    """w(j) = (w_j, …, w_{k−1}, w_0, …, w_{j−1})."""
    return tuple(w[j:]) + tuple(w[:j])


def _diag_weighted(k: int, values) -> Fraction:
    cd = cartan(k)
    return sum((cd.cinv(j, j) * values(j) for j in range(1, k)), Fraction(0))


def dimension_formula(k: int, r: int, w: Sequence[int], delta) -> Fraction:
    """2rΔ − ½ Σ_j (C^{-1})^{jj} w·w(j)."""
    w = tuple(w)
    dots = _diag_weighted(k, lambda j: sum(a * b for a, b in zip(w, cyclic_shift(w, j))))
    return 2 * r * Fraction(delta) - dots / 2


def rank_formula(k: int, r: int, w: Sequence[int], v: Sequence, delta) -> Fraction:
    """Δ + (1/2r) v·Cv − ½ Σ_j (C^{-1})^{jj} w_j."""
    cd = cartan(k)
    v = tuple(Fraction(x) for x in v)
    return Fraction(delta) + cd.pair(v, v) / (2 * r) - _diag_weighted(k, lambda j: w[j]) / 2


def fundamental_defect(k: int, r: int, w: Sequence[int], v: Sequence) -> Fraction:
    """d_w(v) = r Σ (C^{-1})^{jj} w_j − ½ Σ (C^{-1})^{jj} w·w(j) − v·Cv."""
    cd = cartan(k)
    w = tuple(w)
    v = tuple(Fraction(x) for x in v)
    first = _diag_weighted(k, lambda j: w[j])
    second = _diag_weighted(k, lambda j: sum(a * b for a, b in zip(w, cyclic_shift(w, j))))
    return r * first - second / 2 - cd.pair(v, v)


def fundamental_gate(k: int, r: int, w: Sequence[int], v: Sequence, n_flavours: int) -> str:
    """'allowed', 'conformal' or 'excluded' for N fundamental hypermultiplets."""
    if n_flavours > 2 * r:
        raise TooManyFlavours(f"N = {n_flavours} exceeds 2r = {2 * r}")
    if n_flavours < 1:
        raise LatticeError("need at least one flavour")
    d = fundamental_defect(k, r, w, v)
    if d < 0:
        return "excluded"
    if d == 0 and n_flavours == 2 * r:
        return "conformal"
    return "allowed"
