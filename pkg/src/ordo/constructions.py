"""Explicit families of locally invariant orderings.

Four constructions live here:

* the total orderings of a subgroup A of the rationals parametrized by a
  positive irrational: nonnegative values compare as themselves, negative
  values are first stretched by the parameter (``compare_alpha``); distinct
  parameters give distinct orderings, witnessed by any group element lying
  strictly between them (``alpha_distinctness_witness``);
* superadditive self-maps of a positive cone built from a cofinal sequence
  and a strictly increasing integer function (``cofinal_index``, ``f_phi``);
* the threshold cone fields built from such a map (``rf_field``): the cone
  side keeps its usual membership plus everything below the negated image,
  which is lawful for conditions (1) and (2) but never total;
* lexicographic extension across a surjection onto an abelian group
  (``LexScheme``, ``lex_compare``): off-kernel pairs compare through the
  quotient ordering, same-coset pairs through the kernel ordering after
  shifting by the coset representative.

All number comparisons are exact; parameters are quadratic irrationals
a + b*sqrt(d) over the rationals and signs are decided by case analysis and
squaring, never by floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Callable

from .cones import ConeField, LeftOrderCone, standard_cone
from .errors import BudgetError, ParseError, SolveError
from .groups import Group, IntegerLattice, KleinBottleGroup, RationalSubgroup, Window
from .orders import Comparison, GREATER, INCOMPARABLE, LESS, OrderOracle


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def sign_root_combo(a: Fraction, b: Fraction, d: int) -> int:
    """Exact sign of a + b*sqrt(d) for squarefree d > 1."""
    if b == 0:
        return _sign(a)
    if a == 0:
        return _sign(b)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    t = _sign(a * a - b * b * d)
    if t == 0:
        # would force sqrt(d) rational
        raise ArithmeticError(f"a^2 = b^2*{d} with a, b nonzero contradicts squarefreeness")
    return t if a > 0 else -t


def _sign_two_roots(a: Fraction, b1: Fraction, d1: int, b2: Fraction, d2: int) -> int:
    """Exact sign of a + b1*sqrt(d1) + b2*sqrt(d2), d1 != d2 squarefree."""
    if b1 == 0:
        return sign_root_combo(a, b2, d2)
    if b2 == 0:
        return sign_root_combo(a, b1, d1)
    if d1 == d2:
        return sign_root_combo(a, b1 + b2, d1)
    s_left = sign_root_combo(a, b1, d1)  # nonzero: a + b1*sqrt(d1) is irrational
    s_right = _sign(b2)
    if s_left == s_right:
        return s_left
    # opposite signs: the larger magnitude wins; square the left side
    s2 = sign_root_combo(a * a + b1 * b1 * d1 - b2 * b2 * d2, 2 * a * b1, d1)
    if s2 == 0:
        raise ArithmeticError("sqrt(d1) and sqrt(d2) are rationally independent")
    return s_left if s2 > 0 else s_right


@dataclass(frozen=True)
class QuadraticIrrational:
    """Exact number a + b*sqrt(d) with d squarefree and b nonzero."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.b == 0:
            raise ValueError("b = 0 would make the value rational")
        if not _is_squarefree(self.d):
            raise ValueError(f"d = {self.d} must be a squarefree integer > 1")

    def sign(self) -> int:
        return sign_root_combo(self.a, self.b, self.d)

    def scale(self, q: Fraction) -> "QuadraticIrrational":
        q = Fraction(q)
        if q == 0:
            raise ValueError("scaling by zero")
        return QuadraticIrrational(self.a * q, self.b * q, self.d)

    def compare_rational(self, q: Fraction) -> int:
        """Sign of self - q."""
        return sign_root_combo(self.a - q, self.b, self.d)

    def floor(self) -> int:
        """Exact integer floor, computed from isqrt bounds then verified."""
        scaled = self.b * self.b * self.d  # (b*sqrt(d))^2 as a fraction
        root_floor = isqrt(scaled.numerator * scaled.denominator) // scaled.denominator
        approx = self.a + (root_floor if self.b > 0 else -root_floor - 1)
        n = approx.numerator // approx.denominator
        while self.compare_rational(n + 1) >= 0:
            n += 1
        while self.compare_rational(n) < 0:
            n -= 1
        return n

    def __str__(self):
        sep = "+" if self.b >= 0 else ""
        return f"{self.a}{sep}{self.b}√{self.d}"


def compare_quadratic(x: QuadraticIrrational, y: QuadraticIrrational) -> int:
    """Exact sign of x - y; the radicands may differ."""
    return _sign_two_roots(x.a - y.a, x.b, x.d, -y.b, y.d)


_QUAD_RE = re.compile(r"(-?\d+(?:/\d+)?)([+-]\d+(?:/\d+)?)√(\d+)")


def parse_quadratic(text: str) -> QuadraticIrrational:
    """Parse the literal form a+b√d, e.g. ``0+1√2`` or ``3/2-1/2√5``."""
    m = _QUAD_RE.fullmatch(text)
    if not m:
        raise ParseError("expected a+b√d with a, b rational", text, 0)
    try:
        return QuadraticIrrational(Fraction(m.group(1)), Fraction(m.group(2)), int(m.group(3)))
    except ValueError as exc:
        raise ParseError(str(exc), text, 0) from None


@dataclass(frozen=True)
class ExtendedValue:
    """Image value q + c*sqrt(d); c may be zero."""

    q: Fraction
    c: Fraction
    d: int


def compare_extended(u: ExtendedValue, v: ExtendedValue) -> int:
    if u.d != v.d:
        raise ValueError("extended values over different radicands")
    return sign_root_combo(u.q - v.q, u.c - v.c, u.d)


def f_alpha_value(r: Fraction, alpha: QuadraticIrrational) -> ExtendedValue:
    """Stretch map: r itself when r >= 0, else -alpha*r."""
    if alpha.sign() <= 0:
        raise ValueError("parameter must be positive")
    r = Fraction(r)
    if r >= 0:
        return ExtendedValue(r, Fraction(0), alpha.d)
    return ExtendedValue(-alpha.a * r, -alpha.b * r, alpha.d)


def compare_alpha(a: Fraction, b: Fraction, alpha: QuadraticIrrational) -> Comparison:
    """Exact comparison of a and b under the stretched ordering."""
    s = compare_extended(f_alpha_value(a, alpha), f_alpha_value(b, alpha))
    if s < 0:
        return LESS
    if s > 0:
        return GREATER
    return INCOMPARABLE


def alpha_order(group: Group, alpha: QuadraticIrrational) -> OrderOracle:
    """The stretched total ordering on a group of rationals (rank-one lattice
    or rational subgroup); it satisfies the locally-invariant condition."""
    if alpha.sign() <= 0:
        raise ValueError("parameter must be positive")
    probe = group.as_rational(group.identity())  # raises for unsupported kinds
    assert probe == 0

    def compare(g, h):
        return compare_alpha(group.as_rational(g), group.as_rational(h), alpha)

    return OrderOracle(group, compare, name=f"alpha({alpha})")


@dataclass(frozen=True)
class DistinctnessWitness:
    """A group element strictly between two parameters, with both rescaled
    comparisons verified: -a precedes a under alpha/a, a precedes -a under
    beta/a."""

    a: Fraction
    alpha_scaled: QuadraticIrrational
    beta_scaled: QuadraticIrrational


def _denominator_levels(group: Group, level: int) -> list:
    """Denominators available at a search level, in increasing order."""
    if isinstance(group, IntegerLattice):
        return [1]
    assert isinstance(group, RationalSubgroup)
    primes = sorted(group.primes)
    denoms = {1}
    for _ in range(level):
        denoms = {d * p for d in denoms for p in primes} | denoms
    return sorted(denoms)


def alpha_distinctness_witness(
    alpha: QuadraticIrrational,
    beta: QuadraticIrrational,
    group: Group,
    search_bound: int,
) -> DistinctnessWitness | None:
    """Search the open interval (alpha, beta) for a group element.

    Denominators grow level by level up to ``search_bound`` prime factors;
    the least admissible element is returned, rescaled statements verified.
    Absence within the bound is reported as None.
    """
    if alpha.sign() <= 0 or compare_quadratic(alpha, beta) >= 0:
        raise ValueError("need 0 < alpha < beta")
    group.as_rational(group.identity())
    seen = set()
    for level in range(search_bound + 1):
        for q in _denominator_levels(group, level):
            if q in seen:
                continue
            seen.add(q)
            m = alpha.scale(q).floor() + 1  # least integer strictly above alpha*q
            cand = Fraction(m, q)
            if beta.scale(q).compare_rational(m) <= 0:
                continue  # interval contains no multiple of 1/q
            a = cand
            alpha_scaled = alpha.scale(Fraction(1, a))
            beta_scaled = beta.scale(Fraction(1, a))
            if compare_alpha(-a, a, alpha_scaled) is not LESS:
                raise ArithmeticError("rescaled lower comparison failed to verify")
            if compare_alpha(a, -a, beta_scaled) is not LESS:
                raise ArithmeticError("rescaled upper comparison failed to verify")
            return DistinctnessWitness(a, alpha_scaled, beta_scaled)
    return None


# ---------------------------------------------------------------------------
# Cofinal schemes and superadditive maps.


@dataclass(frozen=True)
class CofinalScheme:
    """A computable sequence inside a bi-order cone that eventually dominates
    every element (checked lazily, bounded by ``bound``)."""

    group: Group
    cone: LeftOrderCone
    seq: Callable  # positive int -> group element
    bound: int = 10_000

    def le(self, a, b) -> bool:
        return a == b or self.cone.positive(self.group.compose(b, self.group.invert(a)))


def default_cofinal_scheme(group: Group) -> CofinalScheme:
    """Integers as the cofinal sequence: i itself in rank one and in rational
    subgroups, i times the dominant basis vector in higher-rank lattices."""
    cone = standard_cone(group)
    if isinstance(group, IntegerLattice):
        if group.rank == 1:
            seq = lambda i: (i,)
        else:
            tail = (0,) * (group.rank - 1)
            seq = lambda i: tail + (i,)
        return CofinalScheme(group, cone, seq)
    if isinstance(group, RationalSubgroup):
        return CofinalScheme(group, cone, lambda i: Fraction(i))
    raise ValueError(f"no default cofinal scheme for {group.spec_string()}")


@dataclass(frozen=True)
class PhiFunction:
    """Strictly increasing integer function with values at least 2."""

    fn: Callable
    label: str = dc_field(default="phi", compare=False)

    def __call__(self, n: int) -> int:
        value = self.fn(n)
        if not isinstance(value, int) or value < 2:
            raise ValueError(f"{self.label}({n}) = {value!r} must be an integer >= 2")
        return value


def affine_phi(k: int) -> PhiFunction:
    if k < 1:
        raise ValueError("offset must be at least 1")
    return PhiFunction(lambda n: n + k, label=f"affine:{k}")


def parse_phi(text: str) -> PhiFunction:
    m = re.fullmatch(r"affine:(\d+)", text)
    if not m:
        raise ParseError("expected affine:k with k >= 1", text, 0)
    try:
        return affine_phi(int(m.group(1)))
    except ValueError as exc:
        raise ParseError(str(exc), text, 0) from None


def cofinal_index(a, scheme: CofinalScheme) -> int:
    """Least index i with a <= x_i in the scheme's ordering."""
    for i in range(1, scheme.bound + 1):
        if scheme.le(a, scheme.seq(i)):
            return i
    raise BudgetError(
        f"element {scheme.group.encode(a)} not dominated within {scheme.bound} sequence terms"
    )


def f_phi(a, scheme: CofinalScheme, phi: PhiFunction):
    """The superadditive map: a positive element raised to phi of its cofinal
    index.  Satisfies a < f(a) and f(a) + f(b) <= f(a + b) on positives."""
    if not scheme.cone.positive(a):
        raise ValueError(f"{scheme.group.encode(a)} is not positive in the scheme's cone")
    return scheme.group.power(a, phi(cofinal_index(a, scheme)))


def check_strict_superadditivity(
    scheme: CofinalScheme, phi: PhiFunction, window: Window
) -> tuple | None:
    """First positive pair in the window with f(a) + f(b) >= f(a*b), or None.

    The threshold construction needs the strict inequality; the cofinal-index
    map only guarantees the weak one in general, so this is checked eagerly
    on the working window before a field is built.
    """
    grp = scheme.group
    positives = [g for g in window if scheme.cone.positive(g)]
    values = {a: f_phi(a, scheme, phi) for a in positives}
    for a in positives:
        for b in positives:
            lhs = grp.compose(values[a], values[b])
            ab = grp.compose(a, b)
            rhs = f_phi(ab, scheme, phi)
            diff = grp.compose(rhs, grp.invert(lhs))
            if not scheme.cone.positive(diff):
                return (a, b)
    return None


def rf_field(
    cone: LeftOrderCone,
    scheme: CofinalScheme,
    phi: PhiFunction,
    validate_window: Window | None = None,
) -> ConeField:
    """Threshold field on a torsion-free abelian group.

    P_id covers everything but the identity; negative base points carry the
    negative cone; a positive base point a carries the positive cone plus
    every element strictly below the inverse of f(a).  Lawful for (1) and
    (2); never total, with (a, a*f(a)^-1) witnessing the failure of (3).

    When ``validate_window`` is given, strict superadditivity of f is checked
    over that window's positive pairs first and a violation raises.
    """
    grp = cone.group
    if not grp.is_abelian:
        raise ValueError("threshold fields need an abelian group")
    if validate_window is not None:
        bad = check_strict_superadditivity(scheme, phi, validate_window)
        if bad is not None:
            a, b = bad
            raise SolveError(
                "strict superadditivity fails on the window at "
                f"({grp.encode(a)}, {grp.encode(b)})"
            )
    identity = grp.identity()

    @lru_cache(maxsize=None)
    def threshold(a):
        # inverse of f(a); membership below it is decided by cone positivity
        return grp.invert(f_phi(a, scheme, phi))

    def member(a, b):
        if a == identity:
            return b != identity
        if cone.positive(grp.invert(a)):
            return cone.positive(grp.invert(b))
        if cone.positive(b):
            return True
        return cone.positive(grp.compose(threshold(a), grp.invert(b)))

    return ConeField(grp, member, provenance="rf")


# ---------------------------------------------------------------------------
# Lexicographic extension across a surjection onto an abelian group.


@dataclass(frozen=True)
class LexScheme:
    """Data for ordering a group through an abelian quotient.

    ``project`` must be a surjective homomorphism onto ``quotient_group``
    with kernel recognized by ``in_kernel``; ``rep`` picks the coset
    representative (the identity for the identity coset).  ``kernel_order``
    must be a locally invariant total ordering of the kernel and
    ``quotient_order`` a locally invariant ordering of the quotient.
    """

    group: Group
    quotient_group: Group
    project: Callable
    in_kernel: Callable
    rep: Callable
    kernel_order: OrderOracle
    quotient_order: OrderOracle


def lex_compare(g1, g2, scheme: LexScheme) -> Comparison:
    """Compare through the quotient off the kernel, inside the coset otherwise."""
    grp = scheme.group
    if not scheme.in_kernel(grp.compose(grp.invert(g1), g2)):
        return scheme.quotient_order.compare(scheme.project(g1), scheme.project(g2))
    s_inv = grp.invert(scheme.rep(g1))
    x1 = grp.compose(s_inv, g1)
    x2 = grp.compose(s_inv, g2)
    if not scheme.in_kernel(x1) or not scheme.in_kernel(x2):
        raise SolveError(
            f"coset representative of {grp.encode(g1)} does not shift its coset into the kernel"
        )
    return scheme.kernel_order.compare(x1, x2)


def lex_order(scheme: LexScheme) -> OrderOracle:
    return OrderOracle(scheme.group, lambda g, h: lex_compare(g, h, scheme), name="lex")


def klein_lex_scheme(
    quotient_order: OrderOracle | None = None,
    kernel_order: OrderOracle | None = None,
) -> LexScheme:
    """The concrete scheme on the Klein-bottle group.

    Projection is the x-exponent onto the integers, the kernel is the
    subgroup generated by y, and the representative of (a, b) is x^b.  The
    kernel carries the standard integer ordering by default; the quotient
    ordering defaults to the stretched ordering with parameter sqrt(2).
    """
    grp = KleinBottleGroup()
    quotient = IntegerLattice(1)
    if quotient_order is None:
        quotient_order = alpha_order(quotient, QuadraticIrrational(Fraction(0), Fraction(1), 2))
    if kernel_order is None:
        def compare(u, v):
            if u[0] == v[0]:
                return INCOMPARABLE
            return LESS if u[0] < v[0] else GREATER

        kernel_order = OrderOracle(grp, compare, name="kernel-standard")
    return LexScheme(
        group=grp,
        quotient_group=quotient,
        project=lambda g: (g[1],),
        in_kernel=lambda g: g[1] == 0,
        rep=lambda g: (0, g[1]),
        kernel_order=kernel_order,
        quotient_order=quotient_order,
    )
