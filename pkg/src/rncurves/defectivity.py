"""Secant-defectivity bookkeeping for a family of quartic ideals.

In ``P^(2m+1)`` consider the scheme ``W``: one double point together with two
triple (m-1)-dimensional subspaces in general position, and add ``s`` further
generic double points ``Z``.  The quartic piece of ``I_W`` has dimension
``N = 3 (m+1)^2``; each double point is expected to drop it by ``2m + 2``.
When the actual dimension exceeds the expected value the corresponding
secant variety is defective, which happens here for every
``m + 2 <= s <= 2m + 1``.

Two disjoint (m-1)-spaces form a single dense orbit under projectivities,
and the ideal dimension is a projective invariant, so the pair is pinned to
coordinate subspaces; only the points are sampled.  This keeps the condition
matrix nearly monomial and the exact rank cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangements import Configuration, hilbert_function, stable_seed
from .errors import BoundViolated, GenericityExhausted
from .exactgeom import RESAMPLE_BUDGET, LinearSubspace, ProjPoint, Rng, sample_point
from . import linalg

DEGREE = 4


def ambient_dim(m: int) -> int:
    return 2 * m + 1


def base_ideal_dim(m: int) -> int:
    """dim (I_W)_4 for the double point + two triple (m-1)-spaces."""
    return 3 * (m + 1) ** 2


def point_drop(m: int) -> int:
    """Conditions a generic double point is expected to impose."""
    return 2 * m + 2


@dataclass(frozen=True)
class DefectQuery:
    m: int
    s: int

    def __post_init__(self):
        if self.m < 1:
            raise BoundViolated("m must be at least 1")
        if self.s < 0:
            raise BoundViolated("s must be nonnegative")

    @property
    def n(self) -> int:
        return ambient_dim(self.m)

    @property
    def expected_raw(self) -> int:
        return base_ideal_dim(self.m) - self.s * point_drop(self.m)

    @property
    def expected(self) -> int:
        return max(0, self.expected_raw)


@dataclass(frozen=True)
class DefectReport:
    query: DefectQuery
    actual: int
    seeds: tuple[int, ...]
    agreed: bool

    @property
    def expected(self) -> int:
        return self.query.expected

    @property
    def defective(self) -> bool:
        return self.actual > self.query.expected


def canonical_spaces(m: int) -> tuple[LinearSubspace, LinearSubspace]:
    """The coordinate models of the two disjoint (m-1)-spaces."""
    n = ambient_dim(m)

    def coord(lo, hi):
        rows = []
        for i in range(lo, hi):
            row = [Fraction(0)] * (n + 1)
            row[i] = Fraction(1)
            rows.append(tuple(row))
        return LinearSubspace.from_rows(n, rows)

    return coord(0, m), coord(m, 2 * m)


def _sample_points(m: int, count: int, rng: Rng) -> list[ProjPoint]:
    """Points of P^(2m+1) off both canonical spaces, pairwise distinct."""
    a, b = canonical_spaces(m)
    n = ambient_dim(m)
    for attempt in range(RESAMPLE_BUDGET):
        sub = rng.derive("defect-points", attempt)
        pts = [sample_point(n, sub.derive(i)) for i in range(count)]
        if len(set(pts)) != count:
            continue
        if any(a.contains(p) or b.contains(p) for p in pts):
            continue
        return pts
    raise GenericityExhausted("could not sample generic double points")


def _instance(m: int, s: int, seed: int) -> Configuration:
    a, b = canonical_spaces(m)
    pts = _sample_points(m, s + 1, Rng(seed))
    comps = [(LinearSubspace.from_points([pts[0]]), 2), (a, 3), (b, 3)]
    comps.extend((LinearSubspace.from_points([p]), 2) for p in pts[1:])
    return Configuration(ambient_dim(m), tuple(comps))


def defect_check(query: DefectQuery, seed: int = 0, backend: str = "exact") -> DefectReport:
    """Triple-seeded exact dimension of the quartic ideal piece."""
    n = query.n
    prime = None
    if backend == "modular":
        prime = linalg.random_prime_31(Rng(seed).derive("prime"))
    seeds = tuple(stable_seed(seed, ("defect", query.m, query.s, t)) for t in range(3))
    values = []
    from math import comb

    total = comb(n + DEGREE, DEGREE)
    for s_ in seeds:
        cfg = _instance(query.m, query.s, s_)
        values.append(total - hilbert_function(cfg, DEGREE, backend=backend, prime=prime))
    agreed = len(set(values)) == 1
    return DefectReport(query, max(values), seeds, agreed)


def defect_sweep(m: int, seed: int = 0, backend: str = "exact") -> list[DefectReport]:
    """Reports for s = 1 .. 2m+2 (one past the last defective value)."""
    return [defect_check(DefectQuery(m, s), seed=seed, backend=backend) for s in range(1, 2 * m + 3)]
