"""Finite laws on count vectors, Poisson references and total variation.

Probabilities are plain numbers of whatever arithmetic the caller
wants: floats for Monte Carlo work, Fractions for exact laws coming
out of exhaustive enumeration, mpmath floats when extra digits are
needed.  Mixing is allowed wherever Python arithmetic allows it.

Product-Poisson references are truncated to a finite grid; the mass
left outside is recorded and treated worst-case by the distance, so a
reported distance is an upper estimate of the true one.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import mpmath

TAIL_TOLERANCE = 1e-10
_GRID_LIMIT = 2_000_000


@dataclass(frozen=True)
class FiniteDistribution:
    """Probability mass on finitely many integer vectors.

    tail_mass is mass known to exist outside the listed atoms (from
    truncation); sample_count is set for empirical laws and feeds the
    standard-error formulas.
    """

    dimension: int
    atoms: Mapping[tuple[int, ...], object]
    tail_mass: object = 0
    sample_count: int | None = None

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        total = self.tail_mass
        for vec, prob in self.atoms.items():
            if len(vec) != self.dimension or any(k < 0 for k in vec):
                raise ValueError(f"bad support vector {vec}")
            if prob < 0:
                raise ValueError(f"negative probability at {vec}")
            total = total + prob
        if isinstance(total, (int, Fraction)):
            if total != 1:
                raise ValueError(f"probabilities sum to {total}, expected 1")
        elif abs(total - 1) > 1e-9:
            raise ValueError(f"probabilities sum to {total}, expected 1")

    def probability(self, vec: tuple[int, ...]):
        return self.atoms.get(tuple(vec), 0)

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.atoms)

    def marginal(self, axis: int) -> "FiniteDistribution":
        if not 0 <= axis < self.dimension:
            raise ValueError(f"axis out of range: {axis}")
        out: dict[tuple[int, ...], object] = {}
        for vec, prob in self.atoms.items():
            key = (vec[axis],)
            out[key] = out.get(key, 0) + prob
        return FiniteDistribution(
            dimension=1,
            atoms=out,
            tail_mass=self.tail_mass,
            sample_count=self.sample_count,
        )


def poisson_pmf(lam, k: int) -> float:
    """P[Poisson(lam) = k], evaluated in log space."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    lam = float(lam)
    if lam <= 0:
        raise ValueError("rate must be positive")
    return math.exp(k * math.log(lam) - lam - math.lgamma(k + 1))


def _poisson_pmf_mp(lam, k: int):
    lam = mpmath.mpf(lam.numerator) / lam.denominator if isinstance(lam, Fraction) else mpmath.mpf(lam)
    return mpmath.exp(k * mpmath.log(lam) - lam - mpmath.loggamma(k + 1))


def product_poisson(
    lambdas: Sequence, truncation: int, precision: int | None = None
) -> FiniteDistribution:
    """Independent Poissons on the grid {0..truncation}^d.

    precision, when given, is a number of mpmath decimal digits; the
    default computes in double precision.  The truncation must leave
    less than TAIL_TOLERANCE of the product mass outside the grid.
    """
    d = len(lambdas)
    if d < 1:
        raise ValueError("need at least one rate")
    if truncation < 0:
        raise ValueError("truncation must be nonnegative")
    if (truncation + 1) ** d > _GRID_LIMIT:
        raise ValueError("truncation grid too large")

    if precision is None:
        tables = [[poisson_pmf(lam, k) for k in range(truncation + 1)] for lam in lambdas]
        one = 1.0
    else:
        with mpmath.workdps(precision):
            tables = [
                [_poisson_pmf_mp(lam, k) for k in range(truncation + 1)]
                for lam in lambdas
            ]
            one = mpmath.mpf(1)

    covered = one
    for table in tables:
        covered = covered * math.fsum(table) if precision is None else covered * mpmath.fsum(table)
    tail = one - covered
    if tail > TAIL_TOLERANCE:
        raise ValueError(
            f"truncation {truncation} leaves tail mass {tail}, above {TAIL_TOLERANCE}"
        )

    atoms: dict[tuple[int, ...], object] = {}
    grid = [()]
    for table in tables:
        grid = [vec + (k,) for vec in grid for k in range(truncation + 1)]
    for vec in grid:
        prob = one
        for axis, k in enumerate(vec):
            prob = prob * tables[axis][k]
        atoms[vec] = prob
    return FiniteDistribution(dimension=d, atoms=atoms, tail_mass=tail)


def product_poisson_on(
    lambdas: Sequence, support: Iterable[tuple[int, ...]], precision: int | None = None
) -> FiniteDistribution:
    """Product Poisson evaluated on a prescribed support set.

    Mass outside the support goes to tail_mass.  Against a law that
    lives entirely on the support, tv_distance then gives the exact
    total variation rather than an upper estimate, whatever the
    dimension.
    """
    d = len(lambdas)
    if d < 1:
        raise ValueError("need at least one rate")

    def pmf(lam, k):
        if precision is None:
            return poisson_pmf(lam, k)
        return _poisson_pmf_mp(lam, k)

    if precision is None:
        one = 1.0
        atoms: dict[tuple[int, ...], object] = {}
        for vec in support:
            vec = tuple(vec)
            if len(vec) != d:
                raise ValueError(f"support vector {vec} has wrong dimension")
            prob = one
            for lam, k in zip(lambdas, vec):
                prob = prob * pmf(lam, k)
            atoms[vec] = prob
        tail = one - math.fsum(atoms.values())
    else:
        with mpmath.workdps(precision):
            one = mpmath.mpf(1)
            atoms = {}
            for vec in support:
                vec = tuple(vec)
                if len(vec) != d:
                    raise ValueError(f"support vector {vec} has wrong dimension")
                prob = one
                for lam, k in zip(lambdas, vec):
                    prob = prob * pmf(lam, k)
                atoms[vec] = prob
            tail = one - mpmath.fsum(atoms.values())
    if tail < 0:
        tail = 0 * one  # roundoff guard
    return FiniteDistribution(dimension=d, atoms=atoms, tail_mass=tail)


def empirical_distribution(
    samples: Iterable[tuple[int, ...]] | Mapping[tuple[int, ...], int],
    dimension: int | None = None,
) -> FiniteDistribution:
    """Relative frequencies as exact fractions, with the sample count."""
    counts = Counter(dict(samples)) if isinstance(samples, Mapping) else Counter(samples)
    if not counts:
        raise ValueError("no samples")
    total = sum(counts.values())
    dims = {len(vec) for vec in counts}
    if len(dims) != 1:
        raise ValueError("samples have mixed dimensions")
    if dimension is not None and dims != {dimension}:
        raise ValueError("samples do not match the declared dimension")
    atoms = {tuple(vec): Fraction(c, total) for vec, c in counts.items()}
    return FiniteDistribution(dimension=dims.pop(), atoms=atoms, sample_count=total)


def _gap(a, b):
    # Fractions and mpmath floats do not subtract directly
    try:
        return abs(a - b)
    except TypeError:
        if isinstance(a, Fraction):
            a = mpmath.mpf(a.numerator) / a.denominator
        if isinstance(b, Fraction):
            b = mpmath.mpf(b.numerator) / b.denominator
        return abs(a - b)


def tv_distance(p: FiniteDistribution, q: FiniteDistribution):
    """Total variation: half the L1 gap, plus worst-case tail overlap."""
    if p.dimension != q.dimension:
        raise ValueError("dimension mismatch")
    gap = 0
    for vec in set(p.atoms) | set(q.atoms):
        gap = gap + _gap(p.probability(vec), q.probability(vec))
    return (gap + p.tail_mass + q.tail_mass) / 2


def tv_standard_error(p: FiniteDistribution, q: FiniteDistribution) -> float:
    """Delta-method standard error of the plug-in distance.

    Treats the sign pattern of p - q as fixed; the estimate is the
    sample mean of a +-1/2 valued function of the draw, so its spread
    is at most 1/(2 sqrt(M)).
    """
    if p.sample_count is None:
        raise ValueError("p must be an empirical distribution")
    mean = 0.0
    mean_sq = 0.0
    for vec, prob in p.atoms.items():
        diff = float(prob - q.probability(vec))
        c = 0.5 if diff > 0 else (-0.5 if diff < 0 else 0.0)
        w = float(prob)
        mean += w * c
        mean_sq += w * c * c
    return math.sqrt(max(0.0, mean_sq - mean * mean) / p.sample_count)


def individual_probability_bound(
    tv, vec: tuple[int, ...], lambdas: Sequence
) -> tuple[float, float]:
    """Interval for P[counts = vec] implied by a distance bound tv."""
    prob = 1.0
    for lam, k in zip(lambdas, vec, strict=True):
        prob *= poisson_pmf(lam, k)
    tv = float(tv)
    return max(0.0, prob - 2 * tv), min(1.0, prob + 2 * tv)
