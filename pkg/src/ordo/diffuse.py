"""Extreme points of finite subsets and window-level diffuseness scanning.

An element a of a finite set S is extreme when no h other than the identity
has both h*a and h^-1*a inside S.  Writing s = h*a reduces the quantifier to
s ranging over S: a is extreme exactly when a*s^-1*a stays outside S for
every s in S other than a.  This reduction is exact, so the scan over a
subset is a finite table lookup.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass

from . import kernels
from .groups import Group, Window


def product_table(elements, group: Group) -> array:
    """Flat n*n table: entry (a, s) is the index of a*s^-1*a in the element
    list, or -1 when that product falls outside it."""
    els = list(elements)
    n = len(els)
    index = {g: i for i, g in enumerate(els)}
    tbl = array("i", [-1]) * (n * n)
    for a in range(n):
        ga = els[a]
        for s in range(n):
            p = group.compose(group.compose(ga, group.invert(els[s])), ga)
            tbl[a * n + s] = index.get(p, -1)
    return tbl


def is_extreme(a, elements, group: Group):
    """(True, None) when a is an extreme point of the set, else (False, h)
    with h*a and h^-1*a both inside; elements are scanned canonically so the
    witness is deterministic."""
    els = sorted(set(elements), key=group.key)
    if a not in els:
        raise ValueError(f"{group.encode(a)} is not in the subset")
    a_inv = group.invert(a)
    members = set(els)
    for s in els:
        if s == a:
            continue
        if group.compose(group.compose(a, group.invert(s)), a) in members:
            return False, group.compose(s, a_inv)
    return True, None


@dataclass
class ExtremeReport:
    """Classification of a subset: the extreme elements and, for each
    non-extreme one, a witnessing h."""

    subset: tuple
    extreme: tuple
    failures: tuple  # pairs (a, h)
    group: Group

    def to_json(self) -> dict:
        enc = self.group.encode
        return {
            "subset": [enc(g) for g in self.subset],
            "extreme": [enc(g) for g in self.extreme],
            "failures": [{"element": enc(a), "witness": enc(h)} for a, h in self.failures],
        }


def extreme_points(elements, group: Group) -> ExtremeReport:
    els = tuple(sorted(set(elements), key=group.key))
    if not els:
        raise ValueError("empty subset has no extreme-point classification")
    n = len(els)
    tbl = product_table(els, group)
    witness = kernels.extreme_scan(n, tbl, bytearray(b"\x01") * n)
    extreme = tuple(els[i] for i in range(n) if witness[i] < 0)
    failures = tuple(
        (els[i], group.compose(els[witness[i]], group.invert(els[i])))
        for i in range(n)
        if witness[i] >= 0
    )
    return ExtremeReport(els, extreme, failures, group)


@dataclass
class ScanReport:
    checked: int
    counterexample: tuple | None  # subset elements, or None
    budget_exhausted: bool
    group: Group

    def to_json(self) -> dict:
        return {
            "checked": self.checked,
            "counterexample": None
            if self.counterexample is None
            else {"subset": [self.group.encode(g) for g in self.counterexample]},
            "budget_exhausted": self.budget_exhausted,
        }


def diffuse_scan(
    group: Group, window: Window, max_subset_size: int, budget: int = 1_000_000
) -> ScanReport:
    """Enumerate nonempty window subsets up to the size bound, by size then
    canonical order, stopping at the first subset with no extreme point.

    A hit is a window-scale counterexample to diffuseness; none is expected
    for the implemented groups.  The budget caps the number of subsets
    inspected; running out is reported, not raised.
    """
    if max_subset_size < 1:
        raise ValueError("max_subset_size must be at least 1")
    window.group.check_same(group)
    els = window.elements
    n = len(els)
    tbl = product_table(els, group)
    checked, combo, exhausted = kernels.subset_scan(n, tbl, min(max_subset_size, n), budget)
    counterexample = None if combo is None else tuple(els[i] for i in combo)
    return ScanReport(checked, counterexample, exhausted, group)
