"""Multiprojective coordinates for curves through points and linear spaces.

The birational model: for block sizes ``(n_1, ..., n_r)`` with sum n, the map
``phi`` sends a tuple of points ``(Q_1, ..., Q_r)`` to the point of P^n whose
0-th coordinate is ``prod_i x_0^(i)`` and whose i-th block holds
``x_k^(i) * prod_(j != i) x_0^(j)``.  It is an isomorphism off the
hyperplanes ``x_0^(i) = 0``; the i-th such hyperplane contracts onto the
coordinate subspace spanned by the i-th block, and those subspaces are the
canonical models of the linear-space components a witness curve must meet.

Building a curve through r spaces and s extra points then reduces to
interpolation inside each factor: pull the points back through ``phi``,
interpolate every factor with shared parameter values, and push the product
curve forward.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .binforms import BinaryForm, ParamPoint, distinct_parameters, gcd, product
from .errors import (
    BaseLocus,
    BoundViolated,
    CommonRootOfLeadForms,
    DegenerateImage,
    OnContractedLocus,
    VerificationFailed,
)
from .exactgeom import LinearSubspace, Projectivity, ProjPoint, Rng, adapted_alignment
from .rnc import (
    ParamCurve,
    RationalCurve,
    apply_projectivity,
    intersection_degree,
    is_rnc,
    rnc_through_points,
    rnc_with_assigned_preimages,
)


@dataclass(frozen=True)
class SegreContext:
    """Fixed block layout for a product of projective lines/planes/etc."""

    factor_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.factor_dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError("factor dimensions must be positive")
        if list(dims) != sorted(dims):
            raise ValueError("factor dimensions must be sorted ascending")
        object.__setattr__(self, "factor_dims", dims)

    @property
    def r(self) -> int:
        return len(self.factor_dims)

    @property
    def n(self) -> int:
        return sum(self.factor_dims)

    def offsets(self) -> list[int]:
        """Starting coordinate index of each block (coordinate 0 is shared)."""
        out = []
        pos = 1
        for d in self.factor_dims:
            out.append(pos)
            pos += d
        return out

    def point_bound(self) -> int:
        """Maximum number of extra general points a product curve can hit."""
        n1 = self.factor_dims[0]
        n2 = self.factor_dims[1] if self.r > 1 else None
        if n2 is None:
            return n1 + 3
        if n1 == 1 or n1 == n2:
            return n2 + 2
        return n1 + 3


MultiPoint = tuple[ProjPoint, ...]


@dataclass(frozen=True)
class MultiCurve:
    """One rational-normal parametrization per factor, degrees (n_1..n_r)."""

    context: SegreContext
    factors: tuple[ParamCurve, ...]

    def __post_init__(self):
        if len(self.factors) != self.context.r:
            raise ValueError("one factor curve per block")
        for crv, d in zip(self.factors, self.context.factor_dims):
            if crv.ambient != d or crv.degree != d:
                raise DegenerateImage(f"factor must be a degree-{d} curve in P^{d}")


def phi(ctx: SegreContext, q: MultiPoint) -> ProjPoint:
    """Push a tuple of factor points into P^n.

    Raises BaseLocus when two or more factor points lie on their
    ``x_0 = 0`` hyperplane (the map is undefined there).
    """
    if len(q) != ctx.r:
        raise ValueError("one point per factor")
    for p, d in zip(q, ctx.factor_dims):
        if p.n != d:
            raise ValueError("factor point has wrong ambient dimension")
    zeroes = sum(1 for p in q if not p.coords[0])
    if zeroes >= 2:
        raise BaseLocus("two or more factor points lie on the contracted hyperplanes")
    lead = [p.coords[0] for p in q]
    coords = [Fraction(0)] * (ctx.n + 1)
    full = Fraction(1)
    for x in lead:
        full *= x
    coords[0] = full
    for i, (p, off) in enumerate(zip(q, ctx.offsets())):
        others = Fraction(1)
        for j, x in enumerate(lead):
            if j != i:
                others *= x
        for k in range(1, ctx.factor_dims[i] + 1):
            coords[off + k - 1] = p.coords[k] * others
    return ProjPoint(ctx.n, tuple(coords))


def phi_inverse(ctx: SegreContext, y: ProjPoint) -> MultiPoint:
    """Invert the block map at a point off the contracted hyperplane."""
    if y.n != ctx.n:
        raise ValueError("ambient mismatch")
    y0 = y.coords[0]
    if not y0:
        raise OnContractedLocus("inverse undefined where the 0-th coordinate vanishes")
    out = []
    for d, off in zip(ctx.factor_dims, ctx.offsets()):
        out.append(ProjPoint(d, (y0,) + tuple(y.coords[off : off + d])))
    return tuple(out)


def canonical_contracted_spaces(ctx: SegreContext) -> list[LinearSubspace]:
    """The coordinate subspace each factor's hyperplane contracts onto."""
    out = []
    for d, off in zip(ctx.factor_dims, ctx.offsets()):
        rows = []
        for k in range(d):
            row = [Fraction(0)] * (ctx.n + 1)
            row[off + k] = Fraction(1)
            rows.append(tuple(row))
        out.append(LinearSubspace.from_rows(ctx.n, rows))
    return out


def product_curve(
    ctx: SegreContext,
    points: Sequence[MultiPoint],
    params: Sequence[ParamPoint] | None = None,
) -> tuple[MultiCurve, list[ParamPoint]]:
    """Interpolate every factor through the given multi-points.

    All factors share the parameter values, so the product map hits
    ``points[i]`` at the i-th value.  The number of points must not exceed
    the interpolation bound of the block profile; with exactly ``n_1 + 3``
    points the first factor determines the parameters, otherwise stock
    values are assigned.
    """
    s = len(points)
    bound = ctx.point_bound()
    if s > bound:
        raise BoundViolated(f"{s} points exceed the bound {bound} for blocks {ctx.factor_dims}")
    for q in points:
        if len(q) != ctx.r:
            raise ValueError("each multipoint needs one factor per block")
    n1 = ctx.factor_dims[0]
    factor_points = [[q[i] for q in points] for i in range(ctx.r)]
    if params is not None:
        params = list(params)
        if len(params) != s:
            raise ValueError("need one parameter per point")
    rest_start = 0
    factors: list[ParamCurve] = []
    if params is None:
        if n1 == 1:
            # Identity on a line block: take the parameter values to *be* the
            # first-factor coordinates, so the block is matched for free and
            # only the higher blocks constrain anything.
            params = [ParamPoint(q.coords[0], q.coords[1]) for q in factor_points[0]]
            distinct_parameters(params)
            factors = [_identity_line()]
            rest_start = 1
        elif s == n1 + 3:
            first, params = rnc_through_points(factor_points[0])
            factors = [first]
            rest_start = 1
        else:
            params = [ParamPoint(Fraction(1), Fraction(i)) for i in range(s)]
    for i in range(rest_start, ctx.r):
        d = ctx.factor_dims[i]
        factors.append(rnc_with_assigned_preimages(params, factor_points[i], degree=d))
    return MultiCurve(ctx, tuple(factors)), list(params)


def _identity_line() -> RationalCurve:
    """The identity parametrization (s, t) of P^1."""
    return RationalCurve(1, (BinaryForm(1, (Fraction(1), Fraction(0))), BinaryForm(1, (Fraction(0), Fraction(1)))))


def compose_phi(mc: MultiCurve) -> RationalCurve:
    """Push a multi-curve forward to a rational normal curve in P^n.

    Requires the leading forms of distinct factors to share no root (else a
    parameter would land on the base locus) and the image to be
    non-degenerate.
    """
    ctx = mc.context
    leads = [f.forms[0] for f in mc.factors]
    for i in range(ctx.r):
        for j in range(i + 1, ctx.r):
            if gcd(leads[i], leads[j]).degree > 0:
                raise CommonRootOfLeadForms(f"factors {i} and {j} share a root of the 0-th form")
    forms = [product(leads)]
    for i, (crv, off) in enumerate(zip(mc.factors, ctx.offsets())):
        others = [leads[j] for j in range(ctx.r) if j != i]
        base = product(others) if others else BinaryForm.constant(1)
        for k in range(1, ctx.factor_dims[i] + 1):
            forms.append(crv.forms[k].mul(base))
    candidate = ParamCurve(ctx.n, tuple(forms))
    if not is_rnc(candidate):
        raise DegenerateImage("composed curve is not a rational normal curve")
    return RationalCurve(ctx.n, tuple(forms))


def witness_curve(
    spaces: Sequence[LinearSubspace],
    points: Sequence[ProjPoint],
    rng: Rng | None = None,
) -> RationalCurve:
    """A rational normal curve meeting each space maximally and hitting points.

    The spaces (independent, dimensions summing to n-1... i.e. filling a
    hyperplane) are aligned onto coordinate blocks, the points are pulled
    back through the block map, every factor is interpolated, and the
    composition is pushed back through the alignment.  The result is checked
    exactly: degree ``dim+1`` against every space, membership of every point.
    """
    if not spaces:
        raise ValueError("need at least one space")
    order = sorted(range(len(spaces)), key=lambda i: spaces[i].dim)
    spaces_sorted = [spaces[i] for i in order]
    ctx = SegreContext(tuple(s.dim + 1 for s in spaces_sorted))
    g = adapted_alignment(spaces_sorted)
    aligned = []
    for p in points:
        y = g.apply(p)
        if not y.coords[0]:
            raise OnContractedLocus("a point lies on the hyperplane spanned by the spaces")
        aligned.append(y)
    multi = [phi_inverse(ctx, y) for y in aligned]
    mc, _ = product_curve(ctx, multi)
    model = compose_phi(mc)
    curve = apply_projectivity(model, g.inverse())
    for s in spaces:
        got = intersection_degree(curve, s)
        if got != s.dim + 1:
            raise VerificationFailed(f"intersection degree {got} != {s.dim + 1} on a {s.dim}-space")
    from .rnc import passes_through

    for p in points:
        if not passes_through(curve, p):
            raise VerificationFailed("constructed curve misses a required point")
    return curve
