"""Finite involutive non-degenerate set-theoretic solutions.

A solution on ``{0..n-1}`` is stored by its two tables ``sigma[x][y] =
sigma_x(y)`` and ``tau[y][x] = tau_y(x)``, so that ``r(x, y) = (sigma_x(y),
tau_y(x))``.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .braces import Brace, brace_from_table
from .errors import BraceAxiomError, DomainError, InternalConsistencyError
from .groups import (
    AbelianGroup,
    GroupTable,
    PermGroup,
    cycle_type,
    generate_perm_group,
    invariant_factors_from_orders,
    is_permutation,
    is_transitive,
    perm_inverse,
)


class Solution:
    def __init__(self, sigma: Sequence[Sequence[int]], tau: Sequence[Sequence[int]], labels=None):
        self.sigma = tuple(tuple(int(v) for v in row) for row in sigma)
        self.tau = tuple(tuple(int(v) for v in row) for row in tau)
        self.labels = None if labels is None else tuple(labels)
        n = len(self.sigma)
        if len(self.tau) != n or any(len(r) != n for r in self.sigma + self.tau):
            raise DomainError("sigma and tau must both be n x n tables")

    @classmethod
    def from_sigma(cls, sigma: Sequence[Sequence[int]], labels=None) -> "Solution":
        """Solution whose ``tau`` is forced by involutivity:
        ``tau_y(x) = sigma^-1_{sigma_x(y)}(x)``."""
        sigma = [tuple(int(v) for v in row) for row in sigma]
        for x, row in enumerate(sigma):
            if not is_permutation(row):
                raise DomainError(f"sigma_{x} is not a permutation")
        inv = [perm_inverse(row) for row in sigma]
        n = len(sigma)
        tau = [[inv[sigma[x][y]][x] for x in range(n)] for y in range(n)]
        return cls(sigma, tau, labels)

    @property
    def n(self) -> int:
        return len(self.sigma)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, Solution) and self.sigma == other.sigma and self.tau == other.tau

    def __hash__(self) -> int:
        return hash((self.sigma, self.tau))

    def __repr__(self) -> str:
        return f"Solution(n={self.n})"

    def r(self, x: int, y: int) -> tuple[int, int]:
        return self.sigma[x][y], self.tau[y][x]

    def relabel(self, perm: Sequence[int]) -> "Solution":
        """Isomorphic copy in which point ``x`` is renamed ``perm[x]``."""
        n = self.n
        inv = perm_inverse(tuple(perm))
        sigma = [[perm[self.sigma[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
        tau = [[perm[self.tau[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
        return Solution(sigma, tau)

    @cached_property
    def fingerprints(self) -> list[tuple]:
        """Isomorphism-invariant label of each point: the cycle type of
        ``sigma_x`` and the cycle types met along the ``sigma_x``-cycle of ``x``."""
        types = [cycle_type(row) for row in self.sigma]
        out = []
        for x, row in enumerate(self.sigma):
            cyc, y = [], x
            while True:
                cyc.append(types[y])
                y = row[y]
                if y == x:
                    break
            out.append((types[x], tuple(sorted(cyc))))
        return out


def flip_solution(n: int) -> Solution:
    """``r(x, y) = (y, x)``."""
    ident = [tuple(range(n))] * n
    return Solution(ident, ident)


def permutation_solution(perm: Sequence[int]) -> Solution:
    """Lyubashenko's solution ``r(x, y) = (f(y), f^-1(x))`` with ``sigma_x = f`` for all ``x``."""
    perm = tuple(perm)
    return Solution.from_sigma([perm] * len(perm))


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    ok: bool
    problem: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else self.problem


def validate(S: Solution) -> ValidationReport:
    """Non-degeneracy, ``r^2 = id`` on all pairs and the braid relation on all triples."""
    n = S.n
    if n == 0:
        return ValidationReport(False, "empty set")
    for name, tab in (("sigma", S.sigma), ("tau", S.tau)):
        for x, row in enumerate(tab):
            if not is_permutation(row):
                return ValidationReport(False, f"{name}_{x} is not a bijection", (name, x))
    sig = np.array(S.sigma, dtype=np.int64)
    tau_t = np.array(S.tau, dtype=np.int64).T  # tau_t[x, y] = tau_y(x)
    x, y = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    u, v = sig[x, y], tau_t[x, y]
    bad = np.argwhere((sig[u, v] != x) | (tau_t[u, v] != y))
    if len(bad):
        a, b = bad[0].tolist()
        return ValidationReport(False, f"r^2 != id at ({a}, {b})", (a, b))

    def r1(a, b):
        return sig[a, b], tau_t[a, b]

    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    # (r x 1)(1 x r)(r x 1)
    a, b = r1(x, y)
    c, d = r1(b, z)
    lhs = (*r1(a, c), d)
    # (1 x r)(r x 1)(1 x r)
    u, v = r1(y, z)
    w, t = r1(x, u)
    rhs = (w, *r1(t, v))
    mism = (lhs[0] != rhs[0]) | (lhs[1] != rhs[1]) | (lhs[2] != rhs[2])
    bad = np.argwhere(mism)
    if len(bad):
        trip = tuple(bad[0].tolist())
        return ValidationReport(False, f"braid relation fails at {trip}", trip)
    return ValidationReport(True)


# ---------------------------------------------------------------------------
# permutation group and the brace it carries


def permutation_group(S: Solution) -> PermGroup:
    return generate_perm_group(list(S.sigma), degree=S.n)


def is_indecomposable(S: Solution) -> bool:
    return is_transitive(permutation_group(S))


def abelian_presentation(table, identity: int = 0) -> tuple[AbelianGroup, list[int]]:
    """Write an abelian group table as ``Z_{d1} x ... x Z_{dk}``.

    Returns the group and ``embed`` with ``embed[i]`` the table element that
    corresponds to encoded element ``i``.  Raises :class:`DomainError` when the
    table is not an abelian group.
    """
    G = GroupTable(table, identity=identity)
    n = G.order
    if not G.is_abelian:
        raise DomainError("table is not commutative")
    factors = invariant_factors_from_orders(n, G.orders)
    if n == 1:
        return AbelianGroup(()), [identity]
    rows, orders = G.rows, G.orders
    gens: list[int] = [0] * len(factors)

    def extend(span, g, d):
        out, seen = list(span), set(span)
        mult = identity
        for _ in range(1, d):
            mult = rows[mult][g]
            for s in span:
                t = rows[s][mult]
                if t in seen:
                    return None
                seen.add(t)
                out.append(t)
        return out

    def rec(i, span):
        if i < 0:
            return True
        for g in range(n):
            if orders[g] != factors[i]:
                continue
            nxt = extend(span, g, factors[i])
            if nxt is None:
                continue
            gens[i] = g
            if rec(i - 1, nxt):
                return True
        return False

    if not rec(len(factors) - 1, [identity]):
        raise DomainError("no basis found; table is not an abelian group")
    A = AbelianGroup(tuple(factors))
    embed = []
    for coords in A.elements:
        x = identity
        for c, g in zip(coords, gens):
            for _ in range(c):
                x = rows[x][g]
        embed.append(x)
    emb = np.array(embed)
    if len(set(embed)) != n or not np.array_equal(G.table[emb[:, None], emb[None, :]], emb[A.add_table]):
        raise DomainError("table is not an abelian group")
    return A, embed


def induced_brace(S: Solution) -> Brace:
    """The brace on the permutation group of ``S``.

    The product is composition; the sum is generated from ``g + sigma_y =
    g o sigma_{g^-1(y)}`` and extended through a breadth-first decomposition of
    every element as a sum of the ``sigma_y``.
    """
    G = permutation_group(S)
    els, index = G.elements, G.index
    n = len(els)
    T = G.table()
    mul = T.rows
    gen = [index[row] for row in S.sigma]
    addgen = [[mul[g][gen[els[g].index(y)]] for y in range(S.n)] for g in range(n)]
    e = index[tuple(range(S.n))]
    decomposition: dict[int, tuple[int, ...]] = {e: ()}
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for y in range(S.n):
            h = addgen[g][y]
            if h not in decomposition:
                decomposition[h] = decomposition[g] + (y,)
                queue.append(h)
    if len(decomposition) != n:
        raise InternalConsistencyError("the sigma_y do not additively generate the permutation group")
    add = np.empty((n, n), dtype=np.int64)
    for h in range(n):
        word = decomposition[h]
        for g in range(n):
            x = g
            for y in word:
                x = addgen[x][y]
            add[g, h] = x
    try:
        A, embed = abelian_presentation(add, identity=e)
    except DomainError as exc:
        raise InternalConsistencyError(f"induced addition is not an abelian group: {exc}") from exc
    emb = np.array(embed)
    back = np.empty(n, dtype=np.int64)
    back[emb] = np.arange(n)
    mult = back[T.table[emb[:, None], emb[None, :]]]
    try:
        return brace_from_table(A, mult)
    except BraceAxiomError as exc:
        raise InternalConsistencyError(f"induced structure is not a brace: {exc}") from exc


# ---------------------------------------------------------------------------
# isomorphism and canonical form


def solutions_isomorphic(S1: Solution, S2: Solution) -> Optional[tuple[int, ...]]:
    """A bijection ``phi`` with ``phi(sigma_x(y)) = sigma'_{phi(x)}(phi(y))`` (and the
    same for ``tau``), or ``None``."""
    n = S1.n
    if n != S2.n or Counter(S1.fingerprints) != Counter(S2.fingerprints):
        return None
    s1, s2 = S1.sigma, S2.sigma
    fp1, fp2 = S1.fingerprints, S2.fingerprints
    by_fp: dict[tuple, list[int]] = {}
    for v in range(n):
        by_fp.setdefault(fp2[v], []).append(v)
    phi = [-1] * n
    used = [False] * n
    assigned: list[int] = []

    def assign(u, v, trail) -> bool:
        if phi[u] >= 0:
            return phi[u] == v
        if used[v] or fp1[u] != fp2[v]:
            return False
        phi[u] = v
        used[v] = True
        assigned.append(u)
        trail.append(u)
        return True

    def propagate(start: int, trail) -> bool:
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in list(assigned):
                for a, b in ((u, w), (w, u)):
                    c = s1[a][b]
                    known = phi[c] >= 0
                    if not assign(c, s2[phi[a]][phi[b]], trail):
                        return False
                    if not known:
                        queue.append(c)
        return True

    def undo(trail):
        for u in trail:
            used[phi[u]] = False
            phi[u] = -1
        del assigned[len(assigned) - len(trail):]

    def rec() -> bool:
        try:
            u = phi.index(-1)
        except ValueError:
            return True
        for v in by_fp[fp1[u]]:
            if used[v]:
                continue
            trail: list[int] = []
            if assign(u, v, trail) and propagate(u, trail) and rec():
                return True
            undo(trail)
        return False

    if not rec():
        return None
    t1, t2 = S1.tau, S2.tau
    if any(t2[phi[y]][phi[x]] != phi[t1[y][x]] for x in range(n) for y in range(n)):
        return None
    return tuple(phi)


def canonical_form(S: Solution) -> str:
    """Smallest relabelled sigma table over a refinement-guided family of labellings.

    Labels are handed out by closing the labelled set under ``(x, y) ->
    sigma_x(y)`` in a fixed pair order; when the closure stalls the search
    branches over the unlabelled points of least fingerprint.  Two solutions
    get the same string iff they are isomorphic.
    """
    n = S.n
    sig = S.sigma
    fp = S.fingerprints
    best: list = [None]

    def close(order, pos, done):
        m = done
        while m < len(order):
            pm = order[m]
            for i in range(m + 1):
                pi = order[i]
                for c in (sig[pi][pm], sig[pm][pi]):
                    if pos[c] < 0:
                        pos[c] = len(order)
                        order.append(c)
            m += 1
        return m

    def rec(order, pos, done):
        done = close(order, pos, done)
        if len(order) == n:
            table = tuple(tuple(pos[sig[order[i]][order[j]]] for j in range(n)) for i in range(n))
            if best[0] is None or table < best[0]:
                best[0] = table
            return
        free = [v for v in range(n) if pos[v] < 0]
        low = min(fp[v] for v in free)
        for v in free:
            if fp[v] != low:
                continue
            o2, p2 = list(order), list(pos)
            p2[v] = len(o2)
            o2.append(v)
            rec(o2, p2, done)

    rec([], [-1] * n, 0)
    rows = ";".join(" ".join(map(str, row)) for row in best[0])
    return f"n={n}:{rows}"
