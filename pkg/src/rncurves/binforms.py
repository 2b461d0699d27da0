"""Binary forms: homogeneous polynomials in (s, t) with rational coefficients.

Coefficients are stored from ``s^d`` down to ``t^d``, so ``coeffs[i]`` is the
coefficient of ``s^(d-i) t^i``.  Dehomogenizing at ``s = 1`` therefore turns
``coeffs`` directly into an ascending-power univariate list, which the gcd
routine exploits: common ``s``-power is tracked separately and the rest is a
monic Euclid over Q[u].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DuplicateParameters


@dataclass(frozen=True)
class ParamPoint:
    """Point [u : v] of the parameter line P^1; equality is projective."""

    u: Fraction
    v: Fraction

    def __post_init__(self):
        u, v = Fraction(self.u), Fraction(self.v)
        if not u and not v:
            raise ValueError("the zero vector is not a parameter point")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    def normalized(self) -> tuple[Fraction, Fraction]:
        if self.u:
            return (Fraction(1), self.v / self.u)
        return (Fraction(0), Fraction(1))

    def __eq__(self, other):
        if not isinstance(other, ParamPoint):
            return NotImplemented
        return self.normalized() == other.normalized()

    def __hash__(self):
        return hash(self.normalized())


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form of fixed degree in (s, t)."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.degree + 1:
            raise ValueError("need degree+1 coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, (Fraction(0),) * (degree + 1))

    @classmethod
    def constant(cls, value) -> "BinaryForm":
        return cls(0, (Fraction(value),))

    @classmethod
    def vanishing_at(cls, p: ParamPoint) -> "BinaryForm":
        """The linear form v*s - u*t, zero exactly at [u : v]."""
        return cls(1, (p.v, -p.u))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def evaluate(self, u, v) -> Fraction:
        u, v = Fraction(u), Fraction(v)
        acc = Fraction(0)
        for i, c in enumerate(self.coeffs):
            if c:
                acc += c * u ** (self.degree - i) * v**i
        return acc

    def evaluate_at(self, p: ParamPoint) -> Fraction:
        return self.evaluate(p.u, p.v)

    def add(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "BinaryForm":
        c = Fraction(c)
        return BinaryForm(self.degree, tuple(c * x for x in self.coeffs))

    def mul(self, other: "BinaryForm") -> "BinaryForm":
        d = self.degree + other.degree
        out = [Fraction(0)] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return BinaryForm(d, tuple(out))

    def effective_degree(self) -> int:
        """Formal degree minus the number of leading zero coefficients.

        The amount by which the form fails to vanish at [0 : 1]; -1 for 0.
        """
        for i, c in enumerate(self.coeffs):
            if c:
                return self.degree - i
        return -1

    def monic(self) -> "BinaryForm":
        for c in self.coeffs:
            if c:
                return self.scale(1 / c)
        return self


def product(forms: Sequence[BinaryForm]) -> BinaryForm:
    acc = BinaryForm.constant(1)
    for f in forms:
        acc = acc.mul(f)
    return acc


def _univariate_gcd(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    """Monic gcd of two ascending-coefficient polynomials over Q."""

    def strip(a):
        while a and not a[-1]:
            a.pop()
        return a

    a, b = strip(list(p)), strip(list(q))
    while b:
        # a mod b
        inv = 1 / b[-1]
        r = list(a)
        while len(r) >= len(b) and strip(r):
            f = r[-1] * inv
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] -= f * c
            strip(r)
        a, b = b, r
    if not a:
        return []
    inv = 1 / a[-1]
    return [c * inv for c in a]


def gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Greatest common divisor, normalized so its first nonzero coeff is 1.

    The common power of ``s`` is read off from trailing-coefficient support;
    the remainder is a univariate gcd in u = t/s.
    """
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()

    def split(h: BinaryForm):
        top = max(i for i, c in enumerate(h.coeffs) if c)
        return h.degree - top, list(h.coeffs[: top + 1])

    sf, pf = split(f)
    sg, pg = split(g)
    s_pow = min(sf, sg)
    core = _univariate_gcd(pf, pg)
    deg_core = len(core) - 1
    coeffs = list(core) + [Fraction(0)] * s_pow
    return BinaryForm(deg_core + s_pow, tuple(coeffs)).monic()


def gcd_many(forms: Sequence[BinaryForm]) -> BinaryForm:
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        raise ValueError("gcd of all-zero family")
    acc = nonzero[0]
    for f in nonzero[1:]:
        acc = gcd(acc, f)
        if acc.degree == 0:
            break
    return acc.monic()


def divide_exact(f: BinaryForm, d: BinaryForm) -> BinaryForm:
    """Quotient f / d, assuming d divides f exactly."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if f.is_zero():
        return BinaryForm.zero(f.degree - d.degree)
    lead = next(i for i, c in enumerate(d.coeffs) if c)
    inv = 1 / d.coeffs[lead]
    out = [Fraction(0)] * (f.degree - d.degree + 1)
    rem = list(f.coeffs)
    for pos in range(len(out)):
        c = rem[pos + lead] * inv
        out[pos] = c
        if c:
            for i in range(d.degree + 1 - lead):
                rem[pos + lead + i] -= c * d.coeffs[lead + i]
    if any(rem):
        raise ValueError("division was not exact")
    return BinaryForm(f.degree - d.degree, tuple(out))


def distinct_parameters(points: Sequence[ParamPoint]) -> None:
    """Raise DuplicateParameters unless all parameter points differ."""
    seen = set()
    for p in points:
        key = p.normalized()
        if key in seen:
            raise DuplicateParameters(f"parameter {key} repeats")
        seen.add(key)
