"""Ordering extension on finite symmetric windows.

Given a window S and a prescription set R (at most one of each inverse pair,
never the identity), the goal is a strict partial order on S satisfying

(i)  whenever g, h*g and h^-1*g all lie in S for some h != id, g precedes
     h*g or h^-1*g;
(ii) for nonidentity g in S, g precedes g^-1 exactly when g lies in R;

plus totality when requested.  ``peel_solve`` builds the order directly by
repeatedly removing the canonically least extreme point together with its
inverse and stacking the removed pairs above everything that remains.
``backtrack_solve`` is the independent route: exhaustive orientation search
with transitive-closure propagation.  ``tower_solve`` runs the peeling
construction on nested balls and reports whether the solutions restrict to
one another, the finite shadow of extending to the whole group.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import kernels
from .diffuse import product_table
from .errors import BudgetError, SolveError
from .groups import Group, Window, generate_ball
from .orders import OrderTable


@dataclass(frozen=True)
class RSet:
    """Orientation prescription: id-free and meeting each inverse pair at
    most once."""

    group: Group
    elements: frozenset

    def __init__(self, group: Group, elements):
        elements = frozenset(elements)
        identity = group.identity()
        for g in elements:
            group.validate(g)
            if g == identity:
                raise SolveError("the identity cannot carry an orientation")
            if group.invert(g) in elements and group.invert(g) != g:
                raise SolveError(
                    f"both {group.encode(g)} and its inverse are prescribed"
                )
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "elements", elements)

    def __contains__(self, g):
        return g in self.elements

    def covers(self, window: Window) -> bool:
        """True when every nonidentity window element has one side prescribed."""
        identity = self.group.identity()
        for g in window:
            if g != identity and g not in self and self.group.invert(g) not in self:
                return False
        return True

    def encoded(self) -> list:
        return sorted(
            (self.group.encode(g) for g in self.elements),
            key=lambda e: self.group.key(self.group.decode(e)),
        )


@dataclass(frozen=True)
class ExtensionProblem:
    window: Window
    rset: RSet
    require_total: bool = False

    def __post_init__(self):
        self.window.group.check_same(self.rset.group)


@dataclass(frozen=True)
class UnsatCertificate:
    nodes: int

    def to_json(self) -> dict:
        return {"unsat": True, "nodes": self.nodes}


def canonical_rset(window: Window) -> RSet:
    """Pick the canonically lesser side of every inverse pair in the window."""
    grp = window.group
    identity = grp.identity()
    chosen = []
    for g in window:
        if g == identity:
            continue
        inv = grp.invert(g)
        if grp.key(g) < grp.key(inv):
            chosen.append(g)
    return RSet(grp, chosen)


def random_rset(window: Window, rng: random.Random, full_coverage: bool = False) -> RSet:
    """Uniform valid prescription: per inverse pair, one side or (unless full
    coverage is forced) neither."""
    grp = window.group
    identity = grp.identity()
    chosen = []
    for g in window:
        if g == identity:
            continue
        inv = grp.invert(g)
        if grp.key(g) >= grp.key(inv):
            continue  # handle each pair once
        options = [g, inv] if full_coverage else [g, inv, None]
        pick = rng.choice(options)
        if pick is not None:
            chosen.append(pick)
    return RSet(grp, chosen)


def _oriented_pairs(problem: ExtensionProblem) -> list:
    """Within-pair orientations dictated by the prescription set."""
    grp = problem.window.group
    identity = grp.identity()
    out = []
    for g in problem.window:
        if g == identity:
            continue
        if g in problem.rset:
            out.append((g, grp.invert(g)))
    return out


def peel_solve(problem: ExtensionProblem) -> OrderTable:
    """Extreme-point peeling.

    While elements remain, the canonically least extreme point a is removed
    together with a^-1 and placed above everything still unpeeled; a against
    a^-1 is oriented by the prescription set, or left incomparable when the
    set meets neither side.  The result is transitively closed and satisfies
    (i) and (ii); it is total exactly when the prescription covers every
    inverse pair of the window.
    """
    window = problem.window
    grp = window.group
    els = window.elements
    n = len(els)
    identity = grp.identity()
    if problem.require_total and not problem.rset.covers(window):
        raise SolveError("totality requires the prescription to cover every inverse pair")

    tbl = product_table(els, grp)
    alive = bytearray(b"\x01") * n
    layer = [0] * n
    remaining = n
    stage = 0
    while remaining:
        stage += 1
        a = kernels.first_extreme(n, tbl, alive)
        if a < 0:
            raise SolveError("no extreme point in a peeling stage; window is not diffuse-compatible")
        b = window.index[grp.invert(els[a])]
        if b == a and els[a] != identity:
            raise SolveError(f"torsion detected at {grp.encode(els[a])}")
        layer[a] = stage
        alive[a] = 0
        remaining -= 1
        if b != a:
            layer[b] = stage
            alive[b] = 0
            remaining -= 1

    pairs = [
        (els[i], els[j])
        for i in range(n)
        for j in range(n)
        if layer[i] > layer[j]  # peeled later means placed below
    ]
    pairs.extend(_oriented_pairs(problem))
    return OrderTable(window, pairs)


def validate_solution(table: OrderTable, problem: ExtensionProblem) -> list:
    """Check the order axioms, conditions (i) and (ii), and totality when
    required; returns one record per violation."""
    if table.window != problem.window:
        raise SolveError("table window differs from the problem window")
    window = problem.window
    grp = window.group
    els = window.elements
    n = len(els)
    enc = grp.encode
    identity = grp.identity()
    report = []

    rel = table.matrix()
    refl, asym, trans = kernels.order_scan(n, rel)
    for i in refl:
        report.append({"condition": "irreflexivity", "witness": [enc(els[i])]})
    for i, j in asym:
        report.append({"condition": "asymmetry", "witness": [enc(els[i]), enc(els[j])]})
    for i, j, k in trans:
        report.append({"condition": "transitivity", "witness": [enc(els[i]), enc(els[j]), enc(els[k])]})

    tbl = product_table(els, grp)
    for g in range(n):
        bg = g * n
        for u in range(n):
            if u == g:
                continue
            v = tbl[bg + u]
            if v < 0:
                continue
            # u = h*g and v = h^-1*g for h = u * g^-1
            if not rel[bg + u] and not rel[bg + v]:
                h = grp.compose(els[u], grp.invert(els[g]))
                report.append({"condition": "i", "witness": [enc(els[g]), enc(h)]})

    for g in range(n):
        if els[g] == identity:
            continue
        j = window.index[grp.invert(els[g])]
        if bool(rel[g * n + j]) != (els[g] in problem.rset):
            report.append({"condition": "ii", "witness": [enc(els[g])]})

    if problem.require_total:
        for i in range(n):
            for j in range(i + 1, n):
                if not rel[i * n + j] and not rel[j * n + i]:
                    report.append({"condition": "totality", "witness": [enc(els[i]), enc(els[j])]})
    return report


# ---------------------------------------------------------------------------
# Independent backtracking solver.

_UNDECIDED, _LT, _GT, _INC = 0, 1, 2, 3


class _Search:
    def __init__(self, problem: ExtensionProblem, node_cap: int):
        self.problem = problem
        self.window = problem.window
        self.grp = self.window.group
        self.els = self.window.elements
        self.n = len(self.els)
        self.node_cap = node_cap
        self.nodes = 0
        idx = self.window.index
        self.inv = [idx[self.grp.invert(g)] for g in self.els]
        self.tbl = product_table(self.els, self.grp)
        # unordered decision pairs in canonical order
        self.pairs = [(i, j) for i in range(self.n) for j in range(i + 1, self.n)]
        self.forced = {}
        identity = self.grp.identity()
        for i, g in enumerate(self.els):
            if g == identity:
                continue
            j = self.inv[i]
            if j <= i:
                continue
            if g in problem.rset:
                self.forced[(i, j)] = _LT
            elif self.grp.invert(g) in problem.rset:
                self.forced[(i, j)] = _GT
            else:
                self.forced[(i, j)] = _INC

    def state_of(self, rel, inc, i, j):
        if rel[i * self.n + j]:
            return _LT
        if rel[j * self.n + i]:
            return _GT
        if inc[i * self.n + j]:
            return _INC
        return _UNDECIDED

    def add_edge(self, rel, inc, i, j):
        """Insert i -> j and close transitively; False on any conflict."""
        n = self.n
        if rel[i * n + j]:
            return True
        if i == j or rel[j * n + i] or inc[i * n + j]:
            return False
        preds = [p for p in range(n) if rel[p * n + i]] + [i]
        succs = [j] + [s for s in range(n) if rel[j * n + s]]
        for p in preds:
            bp = p * n
            for s in succs:
                if p == s or rel[s * n + p] or inc[bp + s]:
                    return False
                rel[bp + s] = 1
        return True

    def condition_i_ok(self, rel, inc, decided_mask):
        """Clauses whose two pairs are both decided must have a true side."""
        n = self.n
        for g in range(n):
            bg = g * n
            for u in range(n):
                if u == g:
                    continue
                v = self.tbl[bg + u]
                if v < 0:
                    continue
                su = self.state_of(rel, inc, g, u)
                sv = self.state_of(rel, inc, g, v)
                if su == _LT or sv == _LT:
                    continue
                if su != _UNDECIDED and sv != _UNDECIDED:
                    return False
        return True

    def solve(self):
        n = self.n
        rel = bytearray(n * n)
        inc = bytearray(n * n)
        for (i, j), state in self.forced.items():
            if state == _LT:
                if not self.add_edge(rel, inc, i, j):
                    return UnsatCertificate(self.nodes)
            elif state == _GT:
                if not self.add_edge(rel, inc, j, i):
                    return UnsatCertificate(self.nodes)
            else:
                if self.problem.require_total:
                    return UnsatCertificate(self.nodes)
                if rel[i * n + j] or rel[j * n + i]:
                    return UnsatCertificate(self.nodes)
                inc[i * n + j] = inc[j * n + i] = 1
        result = self._dfs(rel, inc, 0)
        if result is None:
            return UnsatCertificate(self.nodes)
        return OrderTable.from_matrix(self.window, result)

    def _dfs(self, rel, inc, depth):
        n = self.n
        pos = None
        for k in range(depth, len(self.pairs)):
            i, j = self.pairs[k]
            if self.state_of(rel, inc, i, j) == _UNDECIDED:
                pos = k
                break
        if pos is None:
            if not self.condition_i_ok(rel, inc, None):
                return None
            report_ok = self._final_check(rel)
            return rel if report_ok else None
        i, j = self.pairs[pos]
        branches = [_LT, _GT] if self.problem.require_total else [_LT, _GT, _INC]
        for branch in branches:
            self.nodes += 1
            if self.nodes > self.node_cap:
                raise BudgetError(f"backtracking node cap {self.node_cap} exceeded")
            new_rel = bytearray(rel)
            new_inc = bytearray(inc)
            if branch == _LT:
                ok = self.add_edge(new_rel, new_inc, i, j)
            elif branch == _GT:
                ok = self.add_edge(new_rel, new_inc, j, i)
            else:
                new_inc[i * n + j] = new_inc[j * n + i] = 1
                ok = True
            if not ok:
                continue
            if not self.condition_i_ok(new_rel, new_inc, None):
                continue
            result = self._dfs(new_rel, new_inc, pos + 1)
            if result is not None:
                return result
        return None

    def _final_check(self, rel):
        table = OrderTable.from_matrix(self.window, rel)
        return not validate_solution(table, self.problem)


def backtrack_solve(problem: ExtensionProblem, node_cap: int = 500_000, size_cap: int = 16):
    """Exhaustive search over pair orientations with closure propagation.

    Returns an ``OrderTable`` or an ``UnsatCertificate`` recording how many
    branch nodes the exhausted search visited.  Branching is deterministic:
    pairs in canonical order, orientations tried as before/after/incomparable.
    """
    if len(problem.window) > size_cap:
        raise BudgetError(f"window size {len(problem.window)} exceeds the cap {size_cap}")
    return _Search(problem, node_cap).solve()


# ---------------------------------------------------------------------------
# Nested-window coherence.


@dataclass
class TowerReport:
    group: Group
    radii: list
    tables: list  # OrderTable per radius
    coherent: list  # bool per consecutive radius pair
    mismatch: tuple | None  # (smaller_radius, larger_radius) of first failure

    @property
    def all_coherent(self) -> bool:
        return all(self.coherent)

    def to_json(self) -> dict:
        return {
            "radii": list(self.radii),
            "coherent": list(self.coherent),
            "all_coherent": self.all_coherent,
            "mismatch": None if self.mismatch is None else list(self.mismatch),
        }


def tower_solve(group: Group, radii, rset: RSet, require_total: bool = False) -> TowerReport:
    """Peel nested balls and compare each solution with the restriction of
    the next one; agreement on every step approximates extending a single
    ordering to the whole group."""
    radii = list(radii)
    if not radii or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be a nonempty strictly increasing list")
    tables = []
    for r in radii:
        window = generate_ball(group, r)
        tables.append(peel_solve(ExtensionProblem(window, rset, require_total)))
    coherent = []
    mismatch = None
    for k in range(len(radii) - 1):
        small = tables[k]
        restricted = tables[k + 1].restrict(small.window)
        ok = restricted.pairs == small.pairs
        coherent.append(ok)
        if not ok and mismatch is None:
            mismatch = (radii[k], radii[k + 1])
    return TowerReport(group, radii, tables, coherent, mismatch)
