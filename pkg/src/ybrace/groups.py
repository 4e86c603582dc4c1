"""Exact finite-group substrate.

Three representations are used throughout the package:

* :class:`AbelianGroup` -- a product of cyclic groups, elements are residue
  tuples and are encoded as mixed-radix integers (first coordinate most
  significant);
* :class:`PermGroup` -- a permutation group given by generators, elements are
  image tuples;
* :class:`GroupTable` -- a group given by its Cayley table over ``0..n-1``.

Everything here is exhaustive and meant for groups of a few thousand elements
at most.
"""
from __future__ import annotations

import itertools
import math
import random
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from . import config
from .errors import DomainError, ResourceBoundError, UsageError

Element = tuple
Permutation = tuple


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def multiplicative_order(g: int, m: int) -> int:
    """Order of ``g`` in the unit group of ``Z/m``; 0 if ``g`` is not a unit."""
    if math.gcd(g, m) != 1:
        return 0
    k, x = 1, g % m
    while x != 1 % m:
        x = x * g % m
        k += 1
    return k


# ---------------------------------------------------------------------------
# abelian groups


@dataclass(frozen=True)
class AbelianGroup:
    """The group Z_{m1} x ... x Z_{mk}; ``moduli=()`` is the trivial group."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        mods = tuple(int(m) for m in self.moduli)
        if any(m < 2 for m in mods):
            raise DomainError(f"cyclic factor sizes must be >= 2, got {mods}")
        object.__setattr__(self, "moduli", mods)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def zero(self) -> Element:
        return (0,) * len(self.moduli)

    def __len__(self) -> int:
        return self.order

    def __str__(self) -> str:
        return "x".join(f"Z{m}" for m in self.moduli) or "Z1"

    def contains(self, g) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == len(self.moduli)
            and all(isinstance(c, (int, np.integer)) and 0 <= c < m for c, m in zip(g, self.moduli))
        )

    def check(self, g) -> Element:
        if not self.contains(g):
            raise DomainError(f"{g!r} is not an element of {self}")
        return g

    def encode(self, g: Element) -> int:
        idx = 0
        for c, m in zip(g, self.moduli):
            idx = idx * m + c
        return idx

    def decode(self, idx: int) -> Element:
        coords = []
        for m in reversed(self.moduli):
            idx, c = divmod(idx, m)
            coords.append(c)
        return tuple(reversed(coords))

    @cached_property
    def elements(self) -> list[Element]:
        return list(itertools.product(*(range(m) for m in self.moduli)))

    @cached_property
    def basis(self) -> list[Element]:
        k = len(self.moduli)
        return [tuple(int(i == j) for j in range(k)) for i in range(k)]

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: Element) -> Element:
        return tuple(-x % m for x, m in zip(a, self.moduli))

    def scale(self, k: int, a: Element) -> Element:
        return tuple(k * x % m for x, m in zip(a, self.moduli))

    def element_order(self, a: Element) -> int:
        return math.lcm(1, *(m // math.gcd(m, x) for x, m in zip(a, self.moduli)))

    @cached_property
    def coords(self) -> np.ndarray:
        """``coords[i]`` is the residue tuple of element ``i``."""
        return np.array(self.elements, dtype=np.int64).reshape(self.order, len(self.moduli))

    def encode_array(self, coords: np.ndarray) -> np.ndarray:
        idx = np.zeros(coords.shape[:-1], dtype=np.int64)
        for i, m in enumerate(self.moduli):
            idx = idx * m + coords[..., i] % m
        return idx

    @cached_property
    def add_table(self) -> np.ndarray:
        c = self.coords
        return self.encode_array(c[:, None, :] + c[None, :, :])

    @cached_property
    def neg_index(self) -> np.ndarray:
        return self.encode_array(-self.coords)

    @cached_property
    def orders(self) -> list[int]:
        return [self.element_order(g) for g in self.elements]


def element_order(G, g) -> int:
    """Least ``k >= 1`` with ``k*g = 0`` (abelian) or ``g**k = e`` (table/permutation group)."""
    if isinstance(G, AbelianGroup):
        return G.element_order(G.check(g))
    if isinstance(G, PermGroup):
        G = G.table()
    if isinstance(G, GroupTable):
        if not (isinstance(g, (int, np.integer)) and 0 <= g < G.order):
            raise DomainError(f"{g!r} is not an element index of a group of order {G.order}")
        return G.orders[g]
    raise UsageError(f"unsupported group type {type(G).__name__}")


def additive_span(A: AbelianGroup, gens: Iterable[int]) -> set[int]:
    """Subgroup of ``A`` generated by the given encoded elements."""
    add = A.add_table
    span = {0}
    for g in gens:
        if g in span:
            continue
        frontier = list(span)
        new = set(span)
        while frontier:
            nxt = []
            for s in frontier:
                t = int(add[s, g])
                if t not in new:
                    new.add(t)
                    nxt.append(t)
            frontier = nxt
        span = new
    return span


# ---------------------------------------------------------------------------
# homomorphisms between abelian groups


@dataclass(frozen=True)
class AbelianHom:
    """Homomorphism determined by the images of the canonical generators."""

    source: AbelianGroup
    target: AbelianGroup
    images: tuple[Element, ...]

    def __call__(self, g: Element) -> Element:
        out = self.target.zero
        for c, img in zip(g, self.images):
            out = self.target.add(out, self.target.scale(c, img))
        return out

    @cached_property
    def mapping(self) -> np.ndarray:
        """Index map: ``mapping[i]`` encodes the image of element ``i``."""
        if not self.images:
            return np.zeros(self.source.order, dtype=np.int64)
        img = np.array(self.images, dtype=np.int64)
        coords = self.source.coords @ img
        return self.target.encode_array(coords)

    def compose(self, other: "AbelianHom") -> "AbelianHom":
        """``self o other`` (apply ``other`` first)."""
        return AbelianHom(other.source, self.target, tuple(self(x) for x in other.images))

    def inverse(self) -> "AbelianHom":
        inv = np.empty_like(self.mapping)
        inv[self.mapping] = np.arange(self.source.order)
        return AbelianHom(
            self.target,
            self.source,
            tuple(self.source.decode(int(inv[self.target.encode(e)])) for e in self.target.basis),
        )

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(set(self.mapping.tolist())) == self.source.order

    def is_additive(self) -> bool:
        f = self.mapping
        return bool(np.array_equal(f[self.source.add_table], self.target.add_table[f[:, None], f[None, :]]))


def additive_isomorphisms(A: AbelianGroup, B: AbelianGroup, allowed=None) -> Iterator[AbelianHom]:
    """All isomorphisms ``A -> B``, by backtracking over generator images.

    ``allowed[i]``, when given, restricts the encoded image of the ``i``-th
    canonical generator.
    """
    if A.order != B.order:
        return
    if A.rank == 0:
        yield AbelianHom(A, B, ())
        return
    add = B.add_table
    orders = B.orders
    candidates = [[x for x in range(B.order) if orders[x] == m] for m in A.moduli]
    if allowed is not None:
        candidates = [[x for x in c if x in set(ok)] for c, ok in zip(candidates, allowed)]
    chosen: list[int] = []

    def extend(span: list[int], x: int, m: int) -> list[int] | None:
        seen = set(span)
        out = list(span)
        mult = 0
        for _ in range(1, m):
            mult = int(add[mult, x])
            for s in span:
                t = int(add[s, mult])
                if t in seen:
                    return None
                seen.add(t)
                out.append(t)
        return out

    def rec(i: int, span: list[int]):
        if i == A.rank:
            yield AbelianHom(A, B, tuple(B.decode(x) for x in chosen))
            return
        for x in candidates[i]:
            nxt = extend(span, x, A.moduli[i])
            if nxt is None:
                continue
            chosen.append(x)
            yield from rec(i + 1, nxt)
            chosen.pop()

    yield from rec(0, [0])


def abelian_automorphisms(A: AbelianGroup, bound: int | None = None) -> list[AbelianHom]:
    """Every additive automorphism of ``A``, each stored as images of the canonical generators."""
    bound = config.bounds.subgroups if bound is None else bound
    if A.order > bound:
        raise ResourceBoundError("abelian group", A.order, bound, "bound-subgroups")
    return list(additive_isomorphisms(A, A))


def invariant_factors_from_orders(order: int, orders: Iterable[int]) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` of an abelian group with the given element orders."""
    orders = list(orders)
    per_prime: dict[int, list[int]] = {}
    for p in prime_factors(order):
        v = _valuation(order, p)
        # s[k] = log_p #{g : g^(p^k) = e}
        s = [0]
        while s[-1] < v:
            pk = p ** len(s)
            s.append(_valuation(sum(1 for o in orders if pk % o == 0), p))
        at_least = [s[k] - s[k - 1] for k in range(1, len(s))] + [0]
        exps = []
        for k in range(1, len(s)):
            exps.extend([k] * (at_least[k - 1] - at_least[k]))
        per_prime[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in per_prime.values()), default=0)
    factors = [math.prod(p ** e[i] for p, e in per_prime.items() if i < len(e)) for i in range(width)]
    return sorted(factors)


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def abelian_types(n: int) -> list[AbelianGroup]:
    """One representative per isomorphism type of abelian group of order ``n``,
    given by invariant factors (smallest first)."""
    if n == 1:
        return [AbelianGroup(())]

    def partitions(k, maxpart=None):
        maxpart = k if maxpart is None else maxpart
        if k == 0:
            yield []
            return
        for first in range(min(k, maxpart), 0, -1):
            for rest in partitions(k - first, first):
                yield [first] + rest

    primes = prime_factors(n)
    parts = [list(partitions(_valuation(n, p))) for p in primes]
    out = []
    for combo in itertools.product(*parts):
        width = max(len(c) for c in combo)
        factors = [
            math.prod(p ** c[i] for p, c in zip(primes, combo) if i < len(c)) for i in range(width)
        ]
        out.append(AbelianGroup(tuple(sorted(factors))))
    out.sort(key=lambda A: (len(A.moduli), A.moduli))
    return out


# ---------------------------------------------------------------------------
# permutations


def perm_compose(p: Permutation, q: Permutation) -> Permutation:
    """``p o q``: apply ``q`` first."""
    return tuple(p[i] for i in q)


def perm_inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    img = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a] = b
    return tuple(img)


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


class PermGroup:
    """Permutation group given by generators; elements are computed lazily."""

    def __init__(self, degree: int, generators: Sequence[Permutation]):
        self.degree = degree
        self.generators = [tuple(int(i) for i in g) for g in generators]
        for g in self.generators:
            if len(g) != degree or not is_permutation(g):
                raise DomainError(f"{g!r} is not a permutation of {degree} points")

    @cached_property
    def elements(self) -> list[Permutation]:
        ident = tuple(range(self.degree))
        seen = {ident}
        out = [ident]
        queue = deque(out)
        while queue:
            x = queue.popleft()
            for s in self.generators:
                y = perm_compose(x, s)
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    queue.append(y)
        return out

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    @cached_property
    def index(self) -> dict[Permutation, int]:
        return {g: i for i, g in enumerate(self.elements)}

    def orbit(self, point: int) -> set[int]:
        seen = {point}
        stack = [point]
        while stack:
            x = stack.pop()
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def table(self) -> "GroupTable":
        if "_table" not in self.__dict__:
            el = np.array(self.elements, dtype=np.int64).reshape(len(self.elements), self.degree)
            index = self.index
            n = len(self.elements)
            tab = np.empty((n, n), dtype=np.int64)
            for i in range(n):
                # row i: elements[i] o elements[j]
                prods = el[i][el]
                tab[i] = [index[tuple(r)] for r in prods.tolist()]
            self.__dict__["_table"] = GroupTable(tab, identity=0, action=el)
        return self.__dict__["_table"]


def generate_perm_group(gens: Sequence[Permutation], degree: int | None = None) -> PermGroup:
    """Closure of ``gens``; elements are listed breadth-first from the identity."""
    gens = list(gens)
    if not gens:
        if degree is None:
            raise UsageError("an empty generator list needs an explicit degree")
        return PermGroup(degree, [])
    degrees = {len(g) for g in gens}
    if len(degrees) != 1 or (degree is not None and degrees != {degree}):
        raise UsageError(f"generators have mixed degrees {sorted(degrees)}")
    return PermGroup(degrees.pop(), gens)


def is_transitive(G: PermGroup) -> bool:
    if G.degree < 1:
        raise DomainError("transitivity needs at least one point")
    return len(G.orbit(0)) == G.degree


# ---------------------------------------------------------------------------
# Cayley tables


class GroupTable:
    """Group on ``0..n-1`` given by ``table[i, j] = i*j``.

    ``action`` optionally records a permutation action, one row per element
    (used for holomorphs acting on their abelian group).
    """

    def __init__(self, table, identity: int | None = None, action=None, labels=None):
        self.table = np.asarray(table, dtype=np.int64)
        n = self.table.shape[0]
        if self.table.shape != (n, n):
            raise DomainError("a Cayley table must be square")
        if identity is None:
            rows = np.nonzero((self.table == np.arange(n)[None, :]).all(axis=1))[0]
            if len(rows) != 1:
                raise DomainError("table has no unique identity")
            identity = int(rows[0])
        self.identity = identity
        self.action = None if action is None else np.asarray(action, dtype=np.int64)
        self.labels = labels

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    def mul(self, i: int, j: int) -> int:
        return self.rows[i][j]

    @cached_property
    def inverses(self) -> list[int]:
        inv = [0] * self.order
        for i, j in zip(*np.nonzero(self.table == self.identity)):
            inv[int(i)] = int(j)
        return inv

    @cached_property
    def orders(self) -> list[int]:
        rows, e = self.rows, self.identity
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != e:
                x = rows[x][g]
                k += 1
            out.append(k)
        return out

    def power(self, g: int, k: int) -> int:
        k %= self.orders[g]
        x = self.identity
        for _ in range(k):
            x = self.rows[x][g]
        return x

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        return frozenset(_closure(self.rows, self.identity, list(gens)))

    def conjugate(self, H: Iterable[int], g: int) -> frozenset[int]:
        """``g H g^-1``."""
        rows, gi = self.rows, self.inverses[g]
        return frozenset(rows[rows[g][h]][gi] for h in H)

    def is_subgroup(self, H) -> bool:
        H = set(H)
        if self.identity not in H:
            return False
        rows = self.rows
        return all(rows[a][b] in H for a in H for b in H)

    def is_normal(self, H) -> bool:
        H = frozenset(H)
        return all(self.conjugate(H, g) == H for g in range(self.order))

    def relabel(self, perm: Sequence[int]) -> "GroupTable":
        """Isomorphic copy in which old element ``i`` is called ``perm[i]``."""
        perm = np.asarray(perm, dtype=np.int64)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        new = perm[self.table[inv[:, None], inv[None, :]]]
        return GroupTable(new, identity=int(perm[self.identity]))


def _closure(rows, identity: int, gens: list[int], start: Iterable[int] = ()) -> set[int]:
    seen = set(start) | {identity}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = rows[x][g]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def as_table(G) -> GroupTable:
    if isinstance(G, GroupTable):
        return G
    if isinstance(G, PermGroup):
        return G.table()
    raise UsageError(f"expected a GroupTable or PermGroup, got {type(G).__name__}")


def verify_group_table(G: GroupTable, sample: int = 200_000, seed: int = 0) -> str | None:
    """Check closure, identity, inverses and associativity; return the first problem or ``None``.

    Associativity is exhaustive up to order 200 and sampled above that.
    """
    T, n, e = G.table, G.order, G.identity
    if T.min() < 0 or T.max() >= n:
        return "table entries out of range"
    ar = np.arange(n)
    if not (np.array_equal(T[e], ar) and np.array_equal(T[:, e], ar)):
        return f"{e} is not a two-sided identity"
    for i in range(n):
        if len(set(T[i].tolist())) != n:
            return f"row {i} is not a permutation"
    if n <= 200:
        lhs = T[T, :]  # (a*b)*c indexed [a, b, c]
        rhs = T[:, T]  # a*(b*c) indexed [a, b, c]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b, c = bad[0].tolist()
            return f"associativity fails at ({a}, {b}, {c})"
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, sample))
        bad = np.nonzero(T[T[a, b], c] != T[a, T[b, c]])[0]
        if len(bad):
            k = bad[0]
            return f"associativity fails at ({a[k]}, {b[k]}, {c[k]})"
    return None


# ---------------------------------------------------------------------------
# subgroup lattice


def subgroups(G, bound: int | None = None, within: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """All subgroups of ``G`` (or of its subgroup ``within``) as sorted element tuples.

    Cyclic subgroups are seeded first, then joins with cyclic subgroups are
    taken until nothing new appears.
    """
    G = as_table(G)
    bound = config.bounds.subgroups if bound is None else bound
    if G.order > bound:
        raise ResourceBoundError("group", G.order, bound, "bound-subgroups")
    rows, e = G.rows, G.identity
    ambient = sorted(range(G.order) if within is None else set(within), key=lambda g: (G.orders[g], g))
    cyclic: dict[frozenset, int] = {}
    for g in ambient:
        C = frozenset(_closure(rows, e, [g]))
        cyclic.setdefault(C, g)
    found: dict[frozenset, list[int]] = {C: [g] for C, g in cyclic.items()}
    found.setdefault(frozenset([e]), [])
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for C, c in cyclic.items():
                if C <= H:
                    continue
                gens = found[H] + [c]
                J = frozenset(_closure(rows, e, gens, start=H))
                if J not in found:
                    found[J] = gens
                    nxt.append(J)
        frontier = nxt
    return sorted((tuple(sorted(H)) for H in found), key=lambda H: (len(H), H))


def normal_core(G, H: Iterable[int]) -> frozenset[int]:
    """Largest normal subgroup of ``G`` contained in ``H`` (intersection of conjugates)."""
    G = as_table(G)
    H = frozenset(H)
    if not G.is_subgroup(H):
        raise DomainError("normal_core needs a subgroup")
    core = set(H)
    for g in range(G.order):
        if len(core) == 1:
            break
        core &= G.conjugate(H, g)
    return frozenset(core)


# ---------------------------------------------------------------------------
# holomorph


def holomorph(A: AbelianGroup, bound: int | None = None) -> GroupTable:
    """``A x| Aut(A)``; element ``t*|Aut| + i`` is the affine map ``a -> t + phi_i(a)``.

    The returned table carries ``action`` (the affine maps on encoded elements
    of ``A``) and ``automorphisms`` (the list ``phi_i``).  Composition is
    composition of maps: ``(h1*h2)(a) = h1(h2(a))``.
    """
    bound = config.bounds.holomorph if bound is None else bound
    if A.order > bound:
        raise ResourceBoundError("holomorph", A.order, bound, "bound-holomorph")
    auts = list(additive_isomorphisms(A, A))
    k, n = len(auts), A.order
    if n * k > bound:
        raise ResourceBoundError("holomorph", n * k, bound, "bound-holomorph")
    P = np.array([f.mapping for f in auts], dtype=np.int64).reshape(k, n)
    lookup = {tuple(row): i for i, row in enumerate(P.tolist())}
    C = np.array([[lookup[tuple(P[i][P[j]].tolist())] for j in range(k)] for i in range(k)], dtype=np.int64)
    ident = lookup[tuple(range(n))]
    idx = np.arange(n * k)
    T, F = idx // k, idx % k
    add = A.add_table
    new_t = add[T[:, None], P[F[:, None], T[None, :]]]
    new_f = C[F[:, None], F[None, :]]
    table = new_t * k + new_f
    action = add[T[:, None], P[F]]
    G = GroupTable(table, identity=ident, action=action)
    G.automorphisms = auts
    G.abelian = A
    return G


# ---------------------------------------------------------------------------
# structure recognition


@dataclass(frozen=True)
class GroupDescriptor:
    """Isomorphism-invariant summary of a small group.

    ``kind`` is one of ``cyclic``, ``abelian``, ``dihedral``, ``semidirect``,
    ``other``.  ``data`` holds the invariant factors (abelian kinds), ``(m, k,
    scalar)`` for ``Z_m x| Z_k`` with the generator of ``Z_k`` acting by
    ``scalar``, or the abelianization invariants for ``other``.
    """

    kind: str
    order: int
    data: tuple = ()

    def __str__(self) -> str:
        if self.kind == "cyclic":
            return f"C{self.order}"
        if self.kind == "abelian":
            return "x".join(f"C{d}" for d in self.data)
        if self.kind == "dihedral":
            return f"D{self.order}"
        if self.kind == "semidirect":
            m, k, c = self.data
            return f"C{m}:C{k}[{c}]"
        return f"G{self.order}(ab=" + "x".join(f"C{d}" for d in self.data) + ")"


def identify_group(G) -> GroupDescriptor:
    """Recognise cyclic, abelian, dihedral and metacyclic ``Z_m x| Z_k`` groups."""
    G = as_table(G)
    n = G.order
    bound = config.bounds.holomorph
    if n > bound:
        raise ResourceBoundError("group", n, bound, "bound-holomorph")
    if n == 1:
        return GroupDescriptor("cyclic", 1, (1,))
    if G.is_abelian:
        factors = invariant_factors_from_orders(n, G.orders)
        if len(factors) == 1:
            return GroupDescriptor("cyclic", n, tuple(factors))
        return GroupDescriptor("abelian", n, tuple(factors))
    orders = G.orders
    if n % 2 == 0 and n >= 6:
        half = n // 2
        for r in range(n):
            if orders[r] == half:
                R = G.generated([r])
                if all(orders[s] == 2 for s in range(n) if s not in R):
                    return GroupDescriptor("dihedral", n)
                break
    best = None
    seen_cyclic = set()
    for r in sorted(range(n), key=lambda g: -orders[g]):
        m = orders[r]
        if m == 1 or n % m:
            continue
        N = G.generated([r])
        if N in seen_cyclic:
            continue
        seen_cyclic.add(N)
        if best is not None and m < best[0]:
            break
        if not G.is_normal(N):
            continue
        k = n // m
        rows, inv = G.rows, G.inverses
        for s in range(n):
            if orders[s] != k or any(G.power(s, j) in N for j in range(1, k)):
                continue
            img = rows[rows[s][r]][inv[s]]
            c = next(j for j in range(m) if G.power(r, j) == img)
            oc = multiplicative_order(c, m)
            canon = min(pow(c, j, m) for j in range(1, oc + 1) if math.gcd(j, oc) == 1)
            cand = (m, k, canon)
            if best is None or (-cand[0], cand[1], cand[2]) < (-best[0], best[1], best[2]):
                best = cand
    if best is not None:
        return GroupDescriptor("semidirect", n, best)
    D = commutator_subgroup(G)
    return GroupDescriptor("other", n, tuple(_quotient_invariants(G, D)))


def commutator_subgroup(G) -> frozenset[int]:
    G = as_table(G)
    rows, inv = G.rows, G.inverses
    comms = {rows[rows[rows[x][y]][inv[x]]][inv[y]] for x in range(G.order) for y in range(G.order)}
    return G.generated(comms)


def _quotient_invariants(G: GroupTable, N: frozenset[int]) -> list[int]:
    rows, e = G.rows, G.identity
    m = G.order // len(N)
    if m == 1:
        return []
    orders = []
    for g in range(G.order):
        k, x = 1, g
        while x not in N:
            x = rows[x][g]
            k += 1
        orders.append(k)
    # each coset contributes |N| equal entries
    counts = Counter(orders)
    coset_orders = []
    for o, c in counts.items():
        coset_orders.extend([o] * (c // len(N)))
    return invariant_factors_from_orders(m, coset_orders)


def dihedral_split(G, rotations: Iterable[int] | None = None) -> tuple[frozenset[int], frozenset[int]]:
    """Rotation subgroup and reflection set of a dihedral group.

    For the Klein four-group (``D_4``) the rotation subgroup is not unique and
    must be passed explicitly.
    """
    G = as_table(G)
    if rotations is not None:
        R = frozenset(rotations)
        n = G.order // 2
        if len(R) != n or not G.is_subgroup(R) or G.order < 4 or G.order % 2:
            raise DomainError("designated rotations are not an index-2 subgroup")
        if max(G.orders[g] for g in R) != n:
            raise DomainError("designated rotations are not cyclic")
        refl = frozenset(range(G.order)) - R
        if any(G.orders[s] != 2 for s in refl):
            raise DomainError("group is not dihedral over the designated rotations")
        return R, refl
    if G.order == 4:
        raise DomainError("D4 has three candidate rotation subgroups; designate one explicitly")
    desc = identify_group(G)
    if desc.kind != "dihedral":
        raise DomainError(f"group {desc} is not dihedral")
    n = G.order // 2
    r = next(g for g in range(G.order) if G.orders[g] == n)
    R = G.generated([r])
    return R, frozenset(range(G.order)) - R


# ---------------------------------------------------------------------------
# small group constructors


def cyclic_group(n: int) -> GroupTable:
    a = np.arange(n)
    return GroupTable((a[:, None] + a[None, :]) % n, identity=0)


def abelian_group_table(A: AbelianGroup) -> GroupTable:
    return GroupTable(A.add_table, identity=0)


def semidirect_group(m: int, k: int, scalar: int) -> GroupTable:
    """``Z_m x| Z_k`` with the generator of ``Z_k`` acting by multiplication by ``scalar``.

    Element ``(a, b)`` has index ``a*k + b``; ``(a,b)(c,d) = (a + scalar^b c, b + d)``.
    """
    if pow(scalar, k, m) != 1 % m:
        raise DomainError(f"{scalar} does not have order dividing {k} mod {m}")
    n = m * k
    idx = np.arange(n)
    a, b = idx // k, idx % k
    powers = np.array([pow(scalar, j, m) for j in range(k)], dtype=np.int64)
    na = (a[:, None] + powers[b][:, None] * a[None, :]) % m
    nb = (b[:, None] + b[None, :]) % k
    return GroupTable(na * k + nb, identity=0)


def dihedral_group(n: int) -> GroupTable:
    """Dihedral group of order ``2n`` (symmetries of the ``n``-gon)."""
    return semidirect_group(n, 2, n - 1)


def quaternion_group() -> GroupTable:
    # units +-1, +-i, +-j, +-k as (sign, unit) with unit in 1,i,j,k
    units = [(s, u) for s in (1, -1) for u in range(4)]
    prod = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }  # fmt: skip
    index = {x: i for i, x in enumerate(units)}
    table = []
    for s1, u1 in units:
        row = []
        for s2, u2 in units:
            s, u = prod[u1, u2]
            row.append(index[(s1 * s2 * s, u)])
        table.append(row)
    return GroupTable(table, identity=0)


def alternating_group_4() -> GroupTable:
    gens = [perm_from_cycles(4, [(0, 1, 2)]), perm_from_cycles(4, [(0, 1), (2, 3)])]
    return generate_perm_group(gens).table()


def direct_product(G: GroupTable, H: GroupTable) -> GroupTable:
    n, m = G.order, H.order
    idx = np.arange(n * m)
    a, b = idx // m, idx % m
    return GroupTable(G.table[a[:, None], a[None, :]] * m + H.table[b[:, None], b[None, :]], identity=G.identity * m + H.identity)


def small_groups(n: int) -> list[tuple[str, GroupTable]]:
    """Every group of order ``n <= 15`` up to isomorphism, with a display name."""
    if n < 1 or n > 15:
        raise UsageError("small_groups covers orders 1..15")
    out = [(str(identify_group(abelian_group_table(A))), abelian_group_table(A)) for A in abelian_types(n)]
    nonab: list[GroupTable] = []
    ps = prime_factors(n)
    if n == 8:
        nonab = [dihedral_group(4), quaternion_group()]
    elif n == 12:
        nonab = [dihedral_group(6), alternating_group_4(), semidirect_group(3, 4, 2)]
    elif len(ps) == 2 and n == ps[0] * ps[1]:
        q, p = ps
        if (p - 1) % q == 0:
            g = next(x for x in range(2, p) if multiplicative_order(x, p) == q)
            nonab = [semidirect_group(p, q, g)]
    out.extend((str(identify_group(G)), G) for G in nonab)
    return out


def random_relabeling(G: GroupTable, rng: random.Random) -> GroupTable:
    perm = list(range(G.order))
    rng.shuffle(perm)
    return G.relabel(perm)


Group = Union[AbelianGroup, PermGroup, GroupTable]
