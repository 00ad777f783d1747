"""Pure-Python window-scan kernels.

Reference implementations of the hot loops.  The compiled lane
(``ordo._kernels_c``) mirrors these signatures and must produce identical
output, including emission order of witnesses; ``ordo.kernels`` picks the
backend at import time.

Data layout conventions (shared with the compiled lane):

* boolean matrices are flat ``bytearray`` objects in row-major order;
* index tables are flat ``array('i')`` (or any int sequence), ``-1`` meaning
  "outside";
* windows are indexed in canonical order, so ascending-index iteration is
  canonical iteration.
"""

from itertools import combinations


def cone_scan(n, m, memb_wu, memb_uw, uw, invw, idw, idu, prod, check_total):
    """Scan the three cone-field conditions over an n-element window.

    memb_wu: n*m membership of universe columns at window rows
    memb_uw: m*n membership of window columns at universe rows
    uw:      window index -> universe index
    invw:    window index -> window index of the inverse
    idw:     window index of the identity, -1 if absent
    idu:     universe index of the identity
    prod:    n*n table, prod[a*n+b] = universe index of w_a * w_b

    Returns (c1, c2, c3) violation index lists; c3 is None unless requested.
    """
    c1 = []
    for i in range(n):
        base = i * m
        if memb_wu[base + idu]:
            c1.append((i, idw))
        for j in range(n):
            if j == idw:
                continue
            if not memb_wu[base + uw[j]] and not memb_wu[base + uw[invw[j]]]:
                c1.append((i, j))

    c2 = []
    for i in range(n):
        bi = i * m
        for j in range(n):
            if not memb_wu[bi + uw[j]]:
                continue
            bgf = prod[j * n + i] * n
            for k in range(n):
                if memb_uw[bgf + k] and not memb_wu[bi + prod[k * n + j]]:
                    c2.append((i, j, k))

    c3 = None
    if check_total:
        c3 = []
        for i in range(n):
            bi = i * m
            for j in range(i + 1, n):
                if (
                    not memb_wu[j * m + prod[i * n + invw[j]]]
                    and not memb_wu[bi + prod[j * n + invw[i]]]
                ):
                    c3.append((i, j))
    return c1, c2, c3


def closure_scan(n, rel):
    """In-place Warshall transitive closure of the n*n relation matrix."""
    for k in range(n):
        bk = k * n
        for i in range(n):
            if rel[i * n + k]:
                bi = i * n
                for j in range(n):
                    if rel[bk + j]:
                        rel[bi + j] = 1


def order_scan(n, rel):
    """Strict-partial-order axiom violations of an n*n relation matrix.

    Returns (irreflexivity indices, asymmetry pairs, transitivity triples).
    A transitivity triple (i, j, i) doubles as a two-cycle witness.
    """
    refl = [i for i in range(n) if rel[i * n + i]]
    asym = [(i, j) for i in range(n) for j in range(i + 1, n) if rel[i * n + j] and rel[j * n + i]]
    trans = []
    for i in range(n):
        bi = i * n
        for j in range(n):
            if not rel[bi + j]:
                continue
            bj = j * n
            for k in range(n):
                if rel[bj + k] and not rel[bi + k]:
                    trans.append((i, j, k))
    return refl, asym, trans


def extreme_scan(n, tbl, alive):
    """Per-element extreme-point classification within the alive subset.

    tbl[a*n+s] is the window index of w_a * w_s^-1 * w_a, or -1 when that
    product lies outside the window.  Returns, for every alive index a, the
    least witness index s proving a non-extreme, or -1 when a is extreme.
    Entries for dead indices are meaningless (-1).
    """
    out = [-1] * n
    for a in range(n):
        if not alive[a]:
            continue
        ba = a * n
        for s in range(n):
            if s == a or not alive[s]:
                continue
            t = tbl[ba + s]
            if t >= 0 and alive[t]:
                out[a] = s
                break
    return out


def first_extreme(n, tbl, alive):
    """Least alive index that is an extreme point of the alive subset, or -1."""
    for a in range(n):
        if not alive[a]:
            continue
        ba = a * n
        extreme = True
        for s in range(n):
            if s == a or not alive[s]:
                continue
            t = tbl[ba + s]
            if t >= 0 and alive[t]:
                extreme = False
                break
        if extreme:
            return a
    return -1


def subset_scan(n, tbl, max_size, budget):
    """Search subsets (by size, then lexicographically) for one with no extreme point.

    Returns (checked_count, counterexample_index_tuple_or_None, budget_exhausted).
    """
    checked = 0
    mask = bytearray(n)
    for size in range(1, max_size + 1):
        for combo in combinations(range(n), size):
            if checked >= budget:
                return checked, None, True
            checked += 1
            for idx in combo:
                mask[idx] = 1
            has_extreme = False
            for a in combo:
                ba = a * n
                extreme = True
                for s in combo:
                    if s == a:
                        continue
                    t = tbl[ba + s]
                    if t >= 0 and mask[t]:
                        extreme = False
                        break
                if extreme:
                    has_extreme = True
                    break
            for idx in combo:
                mask[idx] = 0
            if not has_extreme:
                return checked, combo, False
    return checked, None, False
