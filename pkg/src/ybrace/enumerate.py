"""Brute-force oracles, independent of the family formulas and of the coset
construction.

* :func:`braces_on_group` finds every brace with a prescribed multiplicative
  group as a regular subgroup of the holomorph of each abelian group of that
  order.
* :func:`all_solutions` enumerates involutive solutions directly, by
  backtracking over the table ``x . y = sigma_x^-1(y)`` subject to
  ``(x.y).(x.z) = (y.x).(y.z)``.
* :func:`conjecture_check` runs the dihedral size question over oracle braces.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

import numba
import numpy as np

from .braces import Brace, brace_from_table, brace_isomorphic
from .construct import classify
from .errors import InternalConsistencyError, ResourceBoundError
from .groups import (
    GroupDescriptor,
    GroupTable,
    _closure,
    abelian_types,
    as_table,
    dihedral_group,
    holomorph,
    identify_group,
    normal_core,
    small_groups,
    subgroups,
)
from .solutions import (
    Solution,
    canonical_form,
    is_indecomposable,
    permutation_group,
    validate,
)

MAX_SOLUTION_SIZE = 6


# ---------------------------------------------------------------------------
# braces from regular subgroups of holomorphs


@dataclass
class BraceCensus:
    group: str
    braces: list[Brace]
    by_additive: dict[str, int] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.braces)


def generating_set(G: GroupTable) -> list[int]:
    """Greedy generating set: elements of largest order first."""
    rows, e = G.rows, G.identity
    span = {e}
    gens: list[int] = []
    for g in sorted(range(G.order), key=lambda g: (-G.orders[g], g)):
        if len(span) == G.order:
            break
        if g not in span:
            gens.append(g)
            span = _closure(rows, e, gens)
    return gens


def _extend(G: GroupTable, H: GroupTable, gens, images, t_of) -> dict | None:
    """Extend ``gens[i] -> images[i]`` to an injective homomorphism on ``<gens>``
    whose image acts freely on the zero point; ``None`` if impossible."""
    grow, hrow = G.rows, H.rows
    phi = {G.identity: H.identity}
    moved = {t_of[H.identity]}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g, h in zip(gens, images):
            y = grow[x][g]
            img = hrow[phi[x]][h]
            old = phi.get(y)
            if old is not None:
                if old != img:
                    return None
                continue
            if t_of[img] in moved:
                return None
            moved.add(t_of[img])
            phi[y] = img
            queue.append(y)
    return phi


def regular_subgroups(hol: GroupTable, G: GroupTable) -> list[frozenset[int]]:
    """Subgroups of ``hol`` isomorphic to ``G`` that act regularly on the abelian group."""
    n = G.order
    if hol.abelian.order != n:
        return []
    action = hol.action
    t_of = action[:, 0].tolist()
    fixed = (action == np.arange(n)[None, :]).any(axis=1)
    fpf_by_order: dict[int, list[int]] = {}
    for h in range(hol.order):
        if h == hol.identity or not fixed[h]:
            fpf_by_order.setdefault(hol.orders[h], []).append(h)
    gens = generating_set(G)
    found: dict[frozenset, None] = {}

    def rec(i, images, phi):
        if i == len(gens):
            if len(phi) == n:
                found.setdefault(frozenset(phi.values()), None)
            return
        orbit = {t_of[v] for v in phi.values()}
        for h in fpf_by_order.get(G.orders[gens[i]], []):
            if t_of[h] in orbit:
                continue
            nxt = _extend(G, hol, gens[: i + 1], images + [h], t_of)
            if nxt is not None:
                rec(i + 1, images + [h], nxt)

    rec(0, [], {G.identity: hol.identity})
    return list(found)


def brace_from_regular_subgroup(hol: GroupTable, R) -> Brace:
    """``a o b = r_a(b)`` where ``r_a`` is the element of ``R`` sending 0 to ``a``."""
    A = hol.abelian
    action = hol.action
    by_t = {int(action[h, 0]): h for h in R}
    mult = np.array([action[by_t[a]] for a in range(A.order)], dtype=np.int64)
    return brace_from_table(A, mult)


def braces_on_group(G, bound: int | None = None) -> BraceCensus:
    """Every brace (up to isomorphism) whose multiplicative group is isomorphic to ``G``."""
    G = as_table(G)
    kept: list[Brace] = []
    by_add: dict[str, int] = {}
    for A in abelian_types(G.order):
        hol = holomorph(A, bound)
        local: list[Brace] = []
        for R in sorted(regular_subgroups(hol, G), key=sorted):
            B = brace_from_regular_subgroup(hol, R)
            if all(brace_isomorphic(B, C) is None for C in local):
                local.append(B)
        kept.extend(local)
        by_add[str(A)] = len(local)
    return BraceCensus(str(identify_group(G)), kept, by_add)


def braces_of_order(n: int, bound: int | None = None) -> list[tuple[str, BraceCensus]]:
    return [(name, braces_on_group(G, bound)) for name, G in small_groups(n)]


def has_small_corefree_index(G: GroupTable, max_index: int) -> bool:
    """Whether some core-free subgroup has index at most ``max_index``."""
    for H in subgroups(G):
        if G.order // len(H) <= max_index and len(normal_core(G, H)) == 1:
            return True
    return False


# ---------------------------------------------------------------------------
# direct enumeration of solutions


@numba.njit(cache=True)
def _row_key(T, x, n, out):
    # cycle lengths of row x (descending, zero padded) followed by the length of x's cycle
    seen = np.zeros(n, dtype=np.bool_)
    lengths = np.zeros(n, dtype=np.int64)
    k = 0
    own = 0
    for i in range(n):
        if not seen[i]:
            j = i
            c = 0
            has_x = False
            while not seen[j]:
                seen[j] = True
                if j == x:
                    has_x = True
                j = T[x, j]
                c += 1
            lengths[k] = c
            k += 1
            if has_x:
                own = c
    lengths[:k] = np.sort(lengths[:k])[::-1]
    for i in range(n):
        out[i] = lengths[i]
    out[n] = own


@numba.njit(cache=True)
def _key_greater(a, b, n):
    for i in range(n + 1):
        if a[i] != b[i]:
            return a[i] > b[i]
    return False


@numba.njit(cache=True)
def _consistent(T, n):
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            a = T[x, y]
            c = T[y, x]
            if a < 0 or c < 0:
                continue
            for z in range(n):
                b = T[x, z]
                d = T[y, z]
                if b < 0 or d < 0:
                    continue
                lv = T[a, b]
                rv = T[c, d]
                if lv >= 0 and rv >= 0:
                    if lv != rv:
                        return False
                elif lv >= 0:
                    # T[c, d] is forced to lv; impossible if lv already sits elsewhere in row c
                    for w in range(n):
                        if T[c, w] == lv:
                            return False
                elif rv >= 0:
                    for w in range(n):
                        if T[a, w] == rv:
                            return False
    return True


@numba.njit(cache=True)
def _transitive(T, n):
    seen = np.zeros(n, dtype=np.bool_)
    stack = np.zeros(n, dtype=np.int64)
    seen[0] = True
    top = 1
    count = 1
    while top > 0:
        top -= 1
        v = stack[top]
        for x in range(n):
            w = T[x, v]
            if not seen[w]:
                seen[w] = True
                stack[top] = w
                top += 1
                count += 1
    return count == n


@numba.njit(cache=True)
def _search(row0, n, transitive_only, descending, out):
    """Fill rows 1..n-1 of the table; returns the number of tables written to ``out``
    (or -1 if ``out`` overflowed)."""
    T = -np.ones((n, n), dtype=np.int64)
    used = np.zeros((n, n), dtype=np.bool_)
    for j in range(n):
        T[0, j] = row0[j]
        used[0, row0[j]] = True
    key0 = np.zeros(n + 1, dtype=np.int64)
    keyx = np.zeros(n + 1, dtype=np.int64)
    _row_key(T, 0, n, key0)
    count = 0
    start = n
    last = n * n - 1
    if start > last:
        # a single row: the table is already complete
        if not _consistent(T, n):
            return 0
        if out.shape[0] == 0:
            return -1
        out[0] = T
        return 1
    tried = -np.ones(n * n, dtype=np.int64)
    k = start
    while k >= start:
        x = k // n
        y = k % n
        cur = T[x, y]
        if cur >= 0:
            used[x, cur] = False
            T[x, y] = -1
        step = tried[k] + 1
        placed = False
        while step < n:
            v = n - 1 - step if descending else step
            if not used[x, v]:
                T[x, y] = v
                used[x, v] = True
                ok = _consistent(T, n)
                if ok and y == n - 1:
                    _row_key(T, x, n, keyx)
                    if _key_greater(keyx, key0, n):
                        ok = False
                if ok:
                    placed = True
                    break
                T[x, y] = -1
                used[x, v] = False
            step += 1
        if placed:
            tried[k] = step
            if k == last:
                if (not transitive_only) or _transitive(T, n):
                    if count >= out.shape[0]:
                        return -1
                    out[count] = T
                    count += 1
            else:
                k += 1
                tried[k] = -1
        else:
            tried[k] = -1
            k -= 1
    return count


def _row0_representatives(n: int) -> list[tuple[int, ...]]:
    """One permutation per conjugacy class under relabellings fixing point 0:
    each cycle type, with point 0 placed in a cycle of each available length."""

    def partitions(k, maxpart):
        if k == 0:
            yield []
            return
        for first in range(min(k, maxpart), 0, -1):
            for rest in partitions(k - first, first):
                yield [first] + rest

    reps = []
    for parts in partitions(n, n):
        for own in sorted(set(parts), reverse=True):
            rest = list(parts)
            rest.remove(own)
            cycles = [own] + rest
            img = [0] * n
            start = 0
            for length in cycles:
                for i in range(length):
                    img[start + i] = start + (i + 1) % length
                start += length
            reps.append(tuple(img))
    return reps


@dataclass
class CensusEntry:
    solution: Solution
    canonical: str
    group: str
    group_order: int
    indecomposable: bool


@dataclass
class SolutionCensus:
    n: int
    indecomposable_only: bool
    entries: list[CensusEntry]
    labelled_tables: int = 0

    @property
    def count(self) -> int:
        return len(self.entries)

    def counts(self) -> dict[str, int]:
        c = Counter(e.group for e in self.entries)
        return dict(sorted(c.items()))


def all_solutions(n: int, indecomposable_only: bool = False, descending: bool = False) -> SolutionCensus:
    """Every involutive non-degenerate solution of size ``n`` up to isomorphism.

    ``n <= 5`` is supported in general and ``n = 6`` with ``indecomposable_only``.
    ``descending`` reverses the value order of the search (the result must not change).
    """
    if n < 1 or n > MAX_SOLUTION_SIZE or (n == MAX_SOLUTION_SIZE and not indecomposable_only):
        raise ResourceBoundError("solution census", n, 5 if not indecomposable_only else 6, "max-size")
    seen: dict[str, CensusEntry] = {}
    total = 0
    for row0 in _row0_representatives(n):
        cap = 4096
        while True:
            out = np.empty((cap, n, n), dtype=np.int64)
            got = _search(np.array(row0, dtype=np.int64), n, indecomposable_only, descending, out)
            if got >= 0:
                break
            cap *= 4
        total += got
        for T in out[:got]:
            sigma = [tuple(int(v) for v in np.argsort(row)) for row in T]
            S = Solution.from_sigma(sigma)
            key = canonical_form(S)
            if key in seen:
                continue
            if not validate(S):
                raise InternalConsistencyError(f"search produced a non-solution: {validate(S)}")
            ind = is_indecomposable(S)
            if indecomposable_only and not ind:
                raise InternalConsistencyError("transitivity filter let a decomposable solution through")
            G = permutation_group(S)
            seen[key] = CensusEntry(S, key, str(identify_group(G)), G.order, ind)
    entries = [seen[k] for k in sorted(seen)]
    return SolutionCensus(n, indecomposable_only, entries, total)


# ---------------------------------------------------------------------------
# dihedral size question


@dataclass
class ConjectureReport:
    n: int
    status: str  # pass, counterexample, skipped
    braces: int = 0
    sizes: list[int] = field(default_factory=list)
    dichotomy: bool = True
    counterexample: Solution | None = None
    note: str = ""

    @property
    def size_n_found(self) -> bool:
        return self.counterexample is not None


def conjecture_check(n: int, bound: int | None = None) -> ConjectureReport:
    """Look for an indecomposable solution of size ``n`` with permutation group ``D_2n``.

    All braces with multiplicative group ``D_2n`` come from the holomorph oracle;
    each is classified with every core-free stabilizer subgroup.
    """
    if n < 3:
        return ConjectureReport(n, "skipped", note="D4 is the Klein four-group; rotations are not determined")
    try:
        census = braces_on_group(dihedral_group(n), bound)
    except ResourceBoundError as exc:
        return ConjectureReport(n, "skipped", note=str(exc))
    sizes: list[int] = []
    counterexample = None
    for B in census.braces:
        for c in classify(B).classes:
            sizes.append(c.size)
            if c.size == n and counterexample is None:
                counterexample = c.solution
    dichotomy = all(s in (n, 2 * n) for s in sizes)
    status = "counterexample" if counterexample is not None else "pass"
    return ConjectureReport(n, status, census.count, sorted(sizes), dichotomy, counterexample)


def descriptor_of(S: Solution) -> GroupDescriptor:
    return identify_group(permutation_group(S))


def constructed_solutions(max_size: int, max_group_order: int, bound: int | None = None) -> dict[str, Solution]:
    """Indecomposable solutions of size at most ``max_size`` produced by the coset
    construction from every brace of order at most ``max_group_order``, keyed by
    canonical form."""
    out: dict[str, Solution] = {}
    for m in range(1, max_group_order + 1):
        for _, G in small_groups(m):
            if not has_small_corefree_index(G, max_size):
                continue
            for B in braces_on_group(G, bound).braces:
                for c in classify(B, cross_check="none").classes:
                    if c.size <= max_size:
                        out.setdefault(canonical_form(c.solution), c.solution)
    return out
