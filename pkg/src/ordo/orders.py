"""Strict partial orders on windows and as global comparison oracles.

An ``OrderTable`` is an explicit relation on a window (the solver output
form); an ``OrderOracle`` is a pure comparison function defined on the whole
group.  The locally-invariant condition used throughout is the "left" form:
for every g and every h != id, g precedes h*g or g precedes h^-1*g.
``convert_convention`` translates an oracle to the form found elsewhere in
the ordered-groups literature (g before g*h or g before g*h^-1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

from . import kernels
from .errors import CycleError, OutOfWindowError, WindowError
from .groups import Group, Window


class Comparison(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


LESS = Comparison.LESS
GREATER = Comparison.GREATER
INCOMPARABLE = Comparison.INCOMPARABLE


@dataclass(frozen=True)
class OrderOracle:
    """A pure comparison function on a whole group."""

    group: Group
    compare: Callable  # (g, h) -> Comparison
    name: str = field(default="", compare=False)

    def __call__(self, g, h) -> Comparison:
        return self.compare(g, h)


class OrderTable:
    """An explicit strict-partial-order relation on a window.

    ``pairs`` holds ordered element pairs (g, h) meaning g comes before h.
    Construction validates that the pairs stay inside the window; the order
    axioms themselves are checked by ``validate_strict_partial_order``.
    """

    __slots__ = ("window", "pairs")

    def __init__(self, window: Window, pairs):
        pairs = frozenset(pairs)
        for g, h in pairs:
            if g not in window or h not in window:
                bad = g if g not in window else h
                raise WindowError(f"pair references element outside window: {window.group.encode(bad)}")
        self.window = window
        self.pairs = pairs

    def __eq__(self, other):
        return isinstance(other, OrderTable) and self.window == other.window and self.pairs == other.pairs

    def __hash__(self):
        return hash((self.window, self.pairs))

    def __repr__(self):
        return f"OrderTable({self.window!r}, {len(self.pairs)} pairs)"

    def sorted_pairs(self) -> list:
        idx = self.window.index
        return sorted(self.pairs, key=lambda p: (idx[p[0]], idx[p[1]]))

    def matrix(self) -> bytearray:
        n = len(self.window)
        rel = bytearray(n * n)
        idx = self.window.index
        for g, h in self.pairs:
            rel[idx[g] * n + idx[h]] = 1
        return rel

    @classmethod
    def from_matrix(cls, window: Window, rel) -> "OrderTable":
        n = len(window)
        els = window.elements
        return cls(window, ((els[i], els[j]) for i in range(n) for j in range(n) if rel[i * n + j]))

    def restrict(self, smaller: Window) -> "OrderTable":
        return OrderTable(smaller, ((g, h) for g, h in self.pairs if g in smaller and h in smaller))

    def as_oracle(self) -> OrderOracle:
        """Comparison oracle backed by this table; out-of-window queries raise."""

        def compare(g, h):
            if g not in self.window or h not in self.window:
                bad = g if g not in self.window else h
                raise OutOfWindowError(
                    f"element {self.window.group.encode(bad)} outside the table window"
                )
            if (g, h) in self.pairs:
                return LESS
            if (h, g) in self.pairs:
                return GREATER
            return INCOMPARABLE

        return OrderOracle(self.window.group, compare, name="finite-table")

    def to_json(self) -> dict:
        enc = self.window.group.encode
        return {
            "window": self.window.encoded(),
            "pairs": [[enc(g), enc(h)] for g, h in self.sorted_pairs()],
        }

    @classmethod
    def from_json(cls, group: Group, payload: dict) -> "OrderTable":
        window = Window(group, (group.decode(e) for e in payload["window"]))
        pairs = [(group.decode(g), group.decode(h)) for g, h in payload["pairs"]]
        return cls(window, pairs)


def validate_strict_partial_order(table: OrderTable) -> list:
    """Axiom report: one record per violation, empty exactly when valid."""
    n = len(table.window)
    els = table.window.elements
    enc = table.window.group.encode
    refl, asym, trans = kernels.order_scan(n, table.matrix())
    report = []
    for i in refl:
        report.append({"axiom": "irreflexivity", "witness": [enc(els[i])]})
    for i, j in asym:
        report.append({"axiom": "asymmetry", "witness": [enc(els[i]), enc(els[j])]})
    for i, j, k in trans:
        report.append({"axiom": "transitivity", "witness": [enc(els[i]), enc(els[j]), enc(els[k])]})
    return report


def transitive_closure(table: OrderTable) -> OrderTable:
    """Smallest transitive superset; raises ``CycleError`` if that breaks asymmetry."""
    n = len(table.window)
    els = table.window.elements
    rel = table.matrix()
    original = bytes(rel)
    kernels.closure_scan(n, rel)
    for i in range(n):
        if rel[i * n + i]:
            raise CycleError(
                f"cycle through {table.window.group.encode(els[i])}",
                _find_cycle(n, original, i, els),
            )
    return OrderTable.from_matrix(table.window, rel)


def _find_cycle(n, rel, start, els):
    # BFS from start back to itself over the original relation
    parents = {start: None}
    queue = [start]
    while queue:
        node = queue.pop(0)
        for nxt in range(n):
            if rel[node * n + nxt]:
                if nxt == start:
                    path = [start]
                    cur = node
                    while cur is not None:
                        path.append(cur)
                        cur = parents[cur]
                    path.reverse()
                    path.append(start)
                    return [els[i] for i in path[1:]]
                if nxt not in parents:
                    parents[nxt] = node
                    queue.append(nxt)
    return [els[start], els[start]]


def is_total(table: OrderTable):
    """(True, None) if every distinct pair is comparable, else (False, witness)."""
    n = len(table.window)
    els = table.window.elements
    rel = table.matrix()
    for i in range(n):
        for j in range(i + 1, n):
            if not rel[i * n + j] and not rel[j * n + i]:
                return False, (els[i], els[j])
    return True, None


def check_li_condition(oracle: OrderOracle, window: Window) -> list:
    """Violations of the locally-invariant condition with h drawn from the window.

    For g in W and h in W minus the identity, requires g < h*g or g < h^-1*g.
    The products are taken in the ambient group and may leave the window; the
    oracle is global so this is well-defined.
    """
    grp = oracle.group
    window.group.check_same(grp)
    identity = grp.identity()
    violations = []
    for g in window:
        for h in window:
            if h == identity:
                continue
            if oracle.compare(g, grp.compose(h, g)) is LESS:
                continue
            if oracle.compare(g, grp.compose(grp.invert(h), g)) is LESS:
                continue
            violations.append((g, h))
    return violations


def check_li_condition_literature(oracle: OrderOracle, window: Window) -> list:
    """Same check in the literature convention: g < g*h or g < g*h^-1."""
    grp = oracle.group
    identity = grp.identity()
    violations = []
    for g in window:
        for h in window:
            if h == identity:
                continue
            if oracle.compare(g, grp.compose(g, h)) is LESS:
                continue
            if oracle.compare(g, grp.compose(g, grp.invert(h))) is LESS:
                continue
            violations.append((g, h))
    return violations


def convert_convention(oracle: OrderOracle) -> OrderOracle:
    """Translate between the two locally-invariant conventions.

    The output compares g with h exactly as the input compares g^-1 with
    h^-1.  Applying the conversion twice gives back an oracle that agrees
    with the original on every element pair.
    """
    grp = oracle.group

    def compare(g, h):
        return oracle.compare(grp.invert(g), grp.invert(h))

    return OrderOracle(grp, compare, name=f"converted({oracle.name})")


def find_disagreement(o1: OrderOracle, o2: OrderOracle, window: Window):
    """First element pair, in canonical order, where the oracles differ."""
    o1.group.check_same(o2.group)
    for g in window:
        for h in window:
            if o1.compare(g, h) is not o2.compare(g, h):
                return (g, h)
    return None


def oracle_table(oracle: OrderOracle, window: Window) -> OrderTable:
    """Restriction of a global oracle to a window, as an explicit table."""
    pairs = []
    for g in window:
        for h in window:
            if oracle.compare(g, h) is LESS:
                pairs.append((g, h))
    return OrderTable(window, pairs)
