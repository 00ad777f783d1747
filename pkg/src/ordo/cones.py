"""Equivariant fields of cones as membership oracles.

A ``ConeField`` assigns to every base point f a set P_f via the pure
predicate ``member(f, g)``.  The lawful fields satisfy, on every window:

(1) for every f and every g != id, g or g^-1 lies in P_f, and id never does;
(2) if g lies in P_f and h lies in P_{g*f}, then h*g lies in P_f;
(3) (totality) for distinct g, h: g*h^-1 lies in P_h or h*g^-1 lies in P_g.

Fields correspond to order oracles through ``order_from_field`` and
``field_from_order``: f comes before g exactly when g*f^-1 lies in P_f.
``embed_left_order`` turns a left-order positive cone into the constant
field; ``iota`` turns it into a field that is lawful for (1) and (2) but
never for (3) on a window meeting both sides of the cone.  ``act`` applies
the two-sided group action (g, h): the new field membership at (f, x) is the
old membership at (h*f*g^-1, h*x*h^-1).
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Callable

from . import kernels
from .errors import OutOfWindowError
from .groups import (
    FreeGroup,
    Group,
    IntegerLattice,
    KleinBottleGroup,
    RationalSubgroup,
    Window,
)
from .orders import GREATER, INCOMPARABLE, LESS, OrderOracle, OrderTable


@dataclass(frozen=True)
class LeftOrderCone:
    """Positive cone of a left-ordering: a semigroup disjoint from its inverses
    that together with them covers everything but the identity."""

    group: Group
    positive: Callable  # element -> bool
    name: str = dc_field(default="", compare=False)


@dataclass(frozen=True)
class ConeField:
    group: Group
    member: Callable  # (f, g) -> bool, "g in P_f"
    provenance: str = dc_field(default="", compare=False)


@dataclass
class AxiomReport:
    """Violation lists from a window scan of conditions (1), (2) and, when
    requested, (3).  ``condition3`` is None when totality was not checked."""

    window: Window
    condition1: list  # (f, g) pairs
    condition2: list  # (f, g, h) triples
    condition3: list | None  # (g, h) unordered pairs, canonical first

    @property
    def passes_12(self) -> bool:
        return not self.condition1 and not self.condition2

    @property
    def passes_3(self) -> bool:
        return self.condition3 is not None and not self.condition3

    @property
    def has_violations(self) -> bool:
        return bool(self.condition1 or self.condition2 or self.condition3)

    def to_json(self) -> dict:
        enc = self.window.group.encode
        return {
            "window": self.window.encoded(),
            "c1": [[enc(f), enc(g)] for f, g in self.condition1],
            "c2": [[enc(f), enc(g), enc(h)] for f, g, h in self.condition2],
            "c3": None
            if self.condition3 is None
            else [[enc(g), enc(h)] for g, h in self.condition3],
        }


def cone_axiom_report(field: ConeField, window: Window, check_total: bool = False) -> AxiomReport:
    """Exhaustively check (1) over f,g in W, (2) over f,g,h in W, and
    optionally (3) over distinct pairs.  Products may leave the window; the
    field oracle is global, so membership is still well-defined."""
    grp = field.group
    window.group.check_same(grp)
    els = window.elements
    n = len(els)
    member = field.member

    universe = {}
    for g in els:
        universe[g] = len(universe)
    identity = grp.identity()
    if identity not in universe:
        universe[identity] = len(universe)
    prod = array("i", [0]) * (n * n)
    for a in range(n):
        for b in range(n):
            p = grp.compose(els[a], els[b])
            if p not in universe:
                universe[p] = len(universe)
            prod[a * n + b] = universe[p]
    ulist = list(universe)
    m = len(ulist)

    memb_wu = bytearray(n * m)
    for i, f in enumerate(els):
        base = i * m
        for c, u in enumerate(ulist):
            if member(f, u):
                memb_wu[base + c] = 1
    memb_uw = bytearray(m * n)
    for r, u in enumerate(ulist):
        base = r * n
        for j, g in enumerate(els):
            if member(u, g):
                memb_uw[base + j] = 1

    uw = array("i", (universe[g] for g in els))
    invw = array("i", (window.index[grp.invert(g)] for g in els))
    idw = window.index.get(identity, -1)
    c1, c2, c3 = kernels.cone_scan(
        n, m, memb_wu, memb_uw, uw, invw, idw, universe[identity], prod, check_total
    )

    def el(i):
        return identity if i < 0 else els[i]

    return AxiomReport(
        window,
        [(el(i), el(j)) for i, j in c1],
        [(els[i], els[j], els[k]) for i, j, k in c2],
        None if c3 is None else [(els[i], els[j]) for i, j in c3],
    )


def order_from_field(field: ConeField) -> OrderOracle:
    """The comparison induced by a field: f before g when g*f^-1 lies in P_f."""
    grp = field.group

    def compare(f, g):
        if field.member(f, grp.compose(g, grp.invert(f))):
            return LESS
        if field.member(g, grp.compose(f, grp.invert(g))):
            return GREATER
        return INCOMPARABLE

    return OrderOracle(grp, compare, name=f"order({field.provenance})")


def field_from_order(oracle: OrderOracle) -> ConeField:
    """The field induced by a comparison: g lies in P_f when f comes before g*f."""
    grp = oracle.group

    def member(f, g):
        return oracle.compare(f, grp.compose(g, f)) is LESS

    return ConeField(grp, member, provenance=f"field({oracle.name})")


def embed_left_order(cone: LeftOrderCone) -> ConeField:
    """Constant field P_f = P; lawful for (1), (2) and (3)."""

    def member(f, g):
        return cone.positive(g)

    return ConeField(cone.group, member, provenance="embedded-left-order")


def iota(cone: LeftOrderCone) -> ConeField:
    """Field with P_id the whole nonidentity set, P_f the cone side of f.

    Inverting the cone gives the same field, and the result always breaks
    condition (3) on windows meeting both sides of the cone.
    """
    grp = cone.group
    identity = grp.identity()

    def member(f, g):
        if f == identity:
            return g != identity
        if cone.positive(f):
            return cone.positive(g)
        return cone.positive(grp.invert(g))

    return ConeField(grp, member, provenance="iota")


def act(g, h, field: ConeField) -> ConeField:
    """Two-sided action on fields: membership at (f, x) becomes membership at
    (h*f*g^-1, h*x*h^-1).  Composing actions composes parameters on the left:
    acting by (g, h) after (g2, h2) equals acting by (g2*g, h2*h)."""
    grp = field.group
    grp.validate(g)
    grp.validate(h)
    g_inv = grp.invert(g)
    h_inv = grp.invert(h)
    base_member = field.member

    @lru_cache(maxsize=None)
    def move_base(f):
        return grp.compose(grp.compose(h, f), g_inv)

    @lru_cache(maxsize=None)
    def conj(x):
        return grp.compose(grp.compose(h, x), h_inv)

    def member(f, x):
        return base_member(move_base(f), conj(x))

    return ConeField(grp, member, provenance="acted-on")


def subbasic_member(field: ConeField, g, h) -> bool:
    """Whether the field lies in the subbasic set determined by (g, h),
    i.e. whether h belongs to P_g."""
    return field.member(g, h)


def finite_table_field(table: OrderTable) -> ConeField:
    """Field wrapping a solved order table; queries leaving the window raise."""
    grp = table.window.group
    oracle = table.as_oracle()

    def member(f, g):
        if f not in table.window:
            raise OutOfWindowError(f"base point {grp.encode(f)} outside the table window")
        return oracle.compare(f, grp.compose(g, f)) is LESS

    return ConeField(grp, member, provenance="finite-table")


def validate_left_order_cone(cone: LeftOrderCone, window: Window) -> list:
    """Window check of the three positive-cone properties; empty when lawful."""
    grp = cone.group
    identity = grp.identity()
    violations = []
    for g in window:
        if g == identity:
            if cone.positive(g):
                violations.append({"property": "identity", "witness": [grp.encode(g)]})
            continue
        pos_g = cone.positive(g)
        pos_inv = cone.positive(grp.invert(g))
        if pos_g and pos_inv:
            violations.append({"property": "disjointness", "witness": [grp.encode(g)]})
        if not pos_g and not pos_inv:
            violations.append({"property": "totality", "witness": [grp.encode(g)]})
    for g in window:
        if not cone.positive(g):
            continue
        for h in window:
            if cone.positive(h) and not cone.positive(grp.compose(g, h)):
                violations.append(
                    {"property": "semigroup", "witness": [grp.encode(g), grp.encode(h)]}
                )
    return violations


def left_order_oracle(cone: LeftOrderCone) -> OrderOracle:
    """The left-ordering determined by a cone: g before h when g^-1*h is positive."""
    grp = cone.group

    def compare(g, h):
        d = grp.compose(grp.invert(g), h)
        if d == grp.identity():
            return INCOMPARABLE
        return LESS if cone.positive(d) else GREATER

    return OrderOracle(grp, compare, name=f"left-order({cone.name})")


def reversed_cone(cone: LeftOrderCone) -> LeftOrderCone:
    grp = cone.group

    def positive(g):
        return cone.positive(grp.invert(g))

    return LeftOrderCone(grp, positive, name=f"reversed({cone.name})")


# ---------------------------------------------------------------------------
# Standard cones for the four group kinds.

def _lattice_positive(v) -> bool:
    # last nonzero coordinate decides; matches {(a, b): b > 0 or (b = 0, a > 0)}
    for c in reversed(v):
        if c:
            return c > 0
    return False


def _magnus_series(word: str, letters: str, degree: int) -> dict:
    """Truncated noncommutative series of a reduced word under a |-> 1 + x_a.

    Monomials are tuples of letter indices; inverse letters expand to the
    truncated geometric series 1 - x + x^2 - ...
    """
    series = {(): 1}
    for ch in word:
        v = letters.index(ch.lower())
        lower = ch.islower()
        new = {}
        for mono, coeff in series.items():
            room = degree - len(mono)
            top = 1 if lower else room
            sign = 1
            ext = mono
            for e in range(0, min(top, room) + 1):
                key = ext
                new[key] = new.get(key, 0) + coeff * sign
                ext = ext + (v,)
                if not lower:
                    sign = -sign
        series = new
    return series


def _magnus_sign(word: str, letters: str, cap: int = 16) -> int:
    """Sign of a free-group word in the graded-lexicographic series order."""
    if not word:
        return 0
    degree = 1
    while degree <= cap:
        series = _magnus_series(word, letters, degree)
        terms = {m: c for m, c in series.items() if m and c}
        if terms:
            dmin = min(len(m) for m in terms)
            lead = min(m for m in terms if len(m) == dmin)
            return 1 if terms[lead] > 0 else -1
        degree *= 2
    raise RuntimeError(f"series truncation cap {cap} exhausted for {word!r}")


def standard_cone(group: Group) -> LeftOrderCone:
    """A concrete positive cone for each supported group kind.

    Lattices and the Klein-bottle group use the last-coordinate-major cone;
    subgroups of the rationals use the usual sign; free groups use the
    bi-invariant ordering by leading series term.
    """
    if isinstance(group, IntegerLattice):
        return LeftOrderCone(group, _lattice_positive, name="lex")
    if isinstance(group, RationalSubgroup):
        return LeftOrderCone(group, lambda q: q > 0, name="sign")
    if isinstance(group, KleinBottleGroup):
        def positive(g):
            a, b = g
            return b > 0 or (b == 0 and a > 0)

        return LeftOrderCone(group, positive, name="lex")
    if isinstance(group, FreeGroup):
        letters = group.letters

        @lru_cache(maxsize=None)
        def positive(w):
            return _magnus_sign(w, letters) > 0

        return LeftOrderCone(group, positive, name="series")
    raise ValueError(f"no standard cone for {group.spec_string()}")
