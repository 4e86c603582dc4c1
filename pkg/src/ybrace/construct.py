"""Indecomposable solutions from a brace.

An element ``x`` whose lambda-orbit additively generates the brace, together
with a core-free subgroup ``K`` of the multiplicative group fixing ``x``,
yields a solution on the left cosets ``B/K``:

    sigma_{aK}(bK) = (lambda_a(x) o b) K,
    tau_{bK}(aK)   = sigma^-1_{sigma_{aK}(bK)}(aK).

Two such data give isomorphic solutions iff a brace automorphism followed by
the lambda action carries one element to the other and the subgroups to
conjugates.  :func:`classify` deduplicates along that criterion and checks the
result against direct solution isomorphism.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .braces import (
    Brace,
    brace_automorphisms,
    brace_cyc_4q,
    brace_cyc_p2q,
    brace_dih1_4p,
    brace_dih2_4p,
    brace_dih3_4p,
    brace_noncyc_4q,
    brace_noncyc_p2q,
    brace_pq,
    brace_semi_p2q,
    trivial_brace,
)
from .errors import ConstructionError, DomainError, InternalConsistencyError, UnsupportedGroupError
from .groups import (
    AbelianGroup,
    GroupDescriptor,
    Element,
    additive_span,
    is_prime,
    normal_core,
    prime_factors,
    subgroups,
)
from .solutions import Solution, is_indecomposable, solutions_isomorphic, validate


@dataclass(frozen=True)
class LambdaOrbit:
    """A lambda-orbit, held as sorted encoded elements; the representative is the smallest."""

    indices: tuple[int, ...]
    additive_order: int
    generating: bool | None = None

    @property
    def representative(self) -> int:
        return self.indices[0]

    def __len__(self) -> int:
        return len(self.indices)

    def elements(self, B: Brace) -> list[Element]:
        return [B.additive.decode(i) for i in self.indices]


@dataclass(frozen=True)
class ConstructionDatum:
    x: int
    K: tuple[int, ...]

    def describe(self, B: Brace) -> str:
        return f"x={B.additive.decode(self.x)} |K|={len(self.K)}"


def lambda_orbits(B: Brace) -> list[LambdaOrbit]:
    """Partition of the carrier into lambda-orbits, ordered by representative."""
    lam = B.lambda_table
    orders = B.additive.orders
    seen = [False] * B.order
    out = []
    for x in range(B.order):
        if seen[x]:
            continue
        orb = sorted(set(lam[:, x].tolist()))
        for y in orb:
            seen[y] = True
        out.append(LambdaOrbit(tuple(orb), orders[x]))
    return out


def passes_order_filter(B: Brace, orbit: LambdaOrbit) -> bool:
    """Necessary condition: a generating orbit's common additive order is divisible by
    every prime dividing ``|B|``."""
    return all(orbit.additive_order % p == 0 for p in prime_factors(B.order))


def is_generating_orbit(B: Brace, orbit: LambdaOrbit) -> bool:
    if not passes_order_filter(B, orbit):
        return False
    return len(additive_span(B.additive, orbit.indices)) == B.order


def generating_orbits(B: Brace) -> list[LambdaOrbit]:
    return [o for o in lambda_orbits(B) if is_generating_orbit(B, o)]


def stabilizer(B: Brace, x) -> frozenset[int]:
    """``{k : lambda_k(x) = x}`` as encoded elements."""
    if isinstance(x, tuple):
        x = B.additive.encode(B.additive.check(x))
    col = B.lambda_table[:, x]
    return frozenset(int(k) for k in (col == x).nonzero()[0])


def corefree_subgroups(B: Brace, x) -> list[tuple[int, ...]]:
    """Subgroups of the stabilizer of ``x`` whose normal core in ``(B, o)`` is trivial."""
    if isinstance(x, tuple):
        x = B.additive.encode(x)
    G = B.mult_group
    S = stabilizer(B, x)
    return [H for H in subgroups(G, within=S) if len(normal_core(G, H)) == 1]


def _cosets(B: Brace, K: tuple[int, ...]) -> tuple[list[int], list[int]]:
    """Left cosets ``gK``: returns the representative (least element) list and the
    coset number of every element."""
    rows = B.rows
    which = [-1] * B.order
    reps = []
    for g in range(B.order):
        if which[g] < 0:
            for k in K:
                which[rows[g][k]] = len(reps)
            reps.append(g)
    return reps, which


def build_solution(B: Brace, datum: ConstructionDatum, check: bool = True) -> Solution:
    """The solution on ``B/K`` attached to ``(x, K)``.

    With ``check`` (the default) the result is validated and tested for
    indecomposability; any failure raises :class:`ConstructionError`.
    """
    x, K = datum.x, tuple(datum.K)
    if B.mult_group.identity not in K:
        raise ConstructionError("K does not contain the identity", K)
    lam = B.lambda_table
    rows = B.rows
    reps, which = _cosets(B, K)
    if len(reps) * len(K) != B.order:
        raise ConstructionError("K is not a subgroup: cosets do not partition B", K)
    for g in range(B.order):
        if lam[g, x] != lam[reps[which[g]], x]:
            raise ConstructionError(
                "lambda_a(x) depends on the coset representative", (reps[which[g]], g)
            )
    sigma = []
    for a in reps:
        v = int(lam[a, x])
        sigma.append([which[rows[v][b]] for b in reps])
    try:
        S = Solution.from_sigma(sigma, labels=tuple(B.additive.decode(a) for a in reps))
    except DomainError as exc:
        raise ConstructionError(f"sigma is degenerate: {exc}") from exc
    if check:
        report = validate(S)
        if not report:
            raise ConstructionError(f"constructed table is not a solution: {report}", report.witness)
        if not is_indecomposable(S):
            raise ConstructionError("constructed solution is decomposable")
    return S


# ---------------------------------------------------------------------------
# classification


@dataclass
class SolutionClass:
    datum: ConstructionDatum
    solution: Solution
    members: list[ConstructionDatum] = field(default_factory=list)

    @property
    def size(self) -> int:
        return self.solution.n


@dataclass
class Classification:
    brace: Brace
    orbits: list[LambdaOrbit]
    generating: list[LambdaOrbit]
    data: list[ConstructionDatum]
    classes: list[SolutionClass]
    automorphism_count: int

    @property
    def count(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    def row(self) -> dict:
        return {
            "brace": self.brace.label,
            "generating_orbits": len(self.generating),
            "pairs": len(self.data),
            "classes": self.count,
            "sizes": self.sizes,
        }


def _class_key(B: Brace, datum: ConstructionDatum, auts, to_rep, rep_of, stabs) -> tuple:
    """Least ``(x', K')`` reachable from ``(x, K)`` through automorphisms and the
    lambda action ``(x, K) -> (lambda_h(x), h K h^-1)``."""
    G = B.mult_group
    best = None
    for f in auts:
        fm = f.mapping
        y = int(fm[datum.x])
        fK = [int(fm[k]) for k in datum.K]
        r = rep_of[y]
        h0 = to_rep[y]
        base = G.conjugate(fK, h0)
        for s in stabs[r]:
            key = (r, tuple(sorted(G.conjugate(base, s))))
            if best is None or key < best:
                best = key
    return best


def classify(B: Brace, cross_check: str = "reps") -> Classification:
    """All indecomposable solutions with structure brace ``B`` up to isomorphism.

    ``cross_check`` is ``"reps"`` (representatives pairwise non-isomorphic),
    ``"all"`` (additionally every datum isomorphic to its class representative)
    or ``"none"``.
    """
    orbits = lambda_orbits(B)
    gen = [o for o in orbits if is_generating_orbit(B, o)]
    data = [ConstructionDatum(o.representative, K) for o in gen for K in corefree_subgroups(B, o.representative)]
    auts = brace_automorphisms(B) if data else []
    lam = B.lambda_table
    G = B.mult_group
    rep_of = [0] * B.order
    to_rep = [0] * B.order
    stabs = {}
    for o in orbits:
        r = o.representative
        for z in o.indices:
            rep_of[z] = r
        # to_rep[z] carries z back onto r: the inverse of some h with lambda_h(r) = z
        for h in range(B.order - 1, -1, -1):
            to_rep[int(lam[h, r])] = G.inverses[h]
        stabs[r] = sorted(stabilizer(B, r))
    groups: dict[tuple, list[ConstructionDatum]] = {}
    for d in data:
        groups.setdefault(_class_key(B, d, auts, to_rep, rep_of, stabs), []).append(d)
    classes = []
    for members in groups.values():
        S = build_solution(B, members[0])
        classes.append(SolutionClass(members[0], S, members))
    if cross_check in ("reps", "all"):
        for i in range(len(classes)):
            for j in range(i + 1, len(classes)):
                if classes[i].size == classes[j].size and solutions_isomorphic(
                    classes[i].solution, classes[j].solution
                ):
                    raise InternalConsistencyError(
                        f"{B.label}: classes {classes[i].datum.describe(B)} and "
                        f"{classes[j].datum.describe(B)} give isomorphic solutions"
                    )
    if cross_check == "all":
        for c in classes:
            for d in c.members[1:]:
                if solutions_isomorphic(c.solution, build_solution(B, d)) is None:
                    raise InternalConsistencyError(
                        f"{B.label}: {d.describe(B)} is not isomorphic to its class representative"
                    )
    return Classification(B, orbits, gen, data, classes, len(auts))


# ---------------------------------------------------------------------------
# whole multiplicative groups

GROUP_KINDS = {
    "cyclic-pq": "cyclic group of order pq",
    "semidirect-pq": "Z_p x| Z_q with p ≡ 1 (mod q)",
    "pq": "all groups of order pq",
    "cyclic-p2q": "cyclic group of order p^2 q",
    "abelian-p2q": "Z_p x Z_p x Z_q",
    "semidirect-p2q": "Z_{p^2} x| Z_q with p ≡ 1 (mod q)",
    "dihedral-2p2": "dihedral group of order 2p^2, p odd",
    "dihedral-4p": "dihedral group of order 4p, p odd",
}


def _need_primes(p, q=None):
    for name, v in (("p", p), ("q", q)):
        if v is not None and not is_prime(v):
            raise DomainError(f"{name}={v} must be prime")
    if q is not None and p == q:
        raise DomainError("p and q must be distinct primes")


def group_braces(kind: str, p: int, q: int | None = None) -> list[Brace]:
    """Every brace family whose multiplicative group is the named group."""
    if kind not in GROUP_KINDS:
        raise UnsupportedGroupError(
            f"no brace families are implemented for group kind {kind!r}; covered: {', '.join(GROUP_KINDS)}"
        )
    if kind.startswith("dihedral"):
        _need_primes(p)
        if p == 2:
            raise DomainError("p must be an odd prime")
        if kind == "dihedral-2p2":
            return [brace_semi_p2q(p, 2)]
        return [brace_dih1_4p(p), brace_dih2_4p(p), brace_dih3_4p(p)]
    if q is None:
        raise DomainError(f"group kind {kind!r} needs both p and q")
    _need_primes(p, q)
    if kind in ("semidirect-pq", "semidirect-p2q") and (p - 1) % q:
        raise DomainError(f"p ≡ 1 (mod q) required, got p={p}, q={q}")
    if kind == "cyclic-pq":
        return [trivial_brace(AbelianGroup((p * q,)))]
    if kind == "semidirect-pq":
        return [brace_pq(p, q)]
    if kind == "pq":
        out = [trivial_brace(AbelianGroup((p * q,)))]
        if (p - 1) % q == 0:
            out.append(brace_pq(p, q))
        return out
    if kind == "cyclic-p2q":
        extra = brace_cyc_4q(q) if p == 2 else brace_cyc_p2q(p, q)
        return [trivial_brace(AbelianGroup((p * p * q,))), extra]
    if kind == "abelian-p2q":
        extra = brace_noncyc_4q(q) if p == 2 else brace_noncyc_p2q(p, q)
        return [trivial_brace(AbelianGroup((p, p, q))), extra]
    return [brace_semi_p2q(p, q)]


def kind_from_descriptor(desc: GroupDescriptor) -> tuple[str, int, int | None]:
    """Map a recognised group onto a covered kind and its primes."""

    def split(n):
        fs = prime_factors(n)
        exps = {f: 0 for f in fs}
        for f in fs:
            m = n
            while m % f == 0:
                m //= f
                exps[f] += 1
        return exps

    n = desc.order
    e = split(n)
    gap = UnsupportedGroupError(f"group {desc} is outside the covered families ({', '.join(GROUP_KINDS)})")
    if desc.kind == "cyclic":
        if sorted(e.values()) == [1, 1]:
            q, p = sorted(e)
            return "cyclic-pq", p, q
        if sorted(e.values()) == [1, 2]:
            p = next(f for f, k in e.items() if k == 2)
            q = next(f for f, k in e.items() if k == 1)
            return "cyclic-p2q", p, q
    if desc.kind == "abelian" and sorted(e.values()) == [1, 2] and len(desc.data) == 2:
        p = next(f for f, k in e.items() if k == 2)
        q = next(f for f, k in e.items() if k == 1)
        return "abelian-p2q", p, q
    if desc.kind == "dihedral":
        m = n // 2
        if is_prime(math.isqrt(m)) and math.isqrt(m) ** 2 == m and m % 2:
            return "dihedral-2p2", math.isqrt(m), None
        if m % 2 == 0 and is_prime(m // 2) and m // 2 > 2:
            return "dihedral-4p", m // 2, None
        if is_prime(m) and m > 2:
            return "semidirect-pq", m, 2
    if desc.kind == "semidirect":
        m, k, _ = desc.data
        if is_prime(k) and is_prime(m):
            return "semidirect-pq", m, k
        r = math.isqrt(m)
        if is_prime(k) and r * r == m and is_prime(r):
            return "semidirect-p2q", r, k
    raise gap


@dataclass
class GroupCensus:
    kind: str
    p: int
    q: int | None
    classifications: list[Classification]

    @property
    def total(self) -> int:
        return sum(c.count for c in self.classifications)

    @property
    def sizes(self) -> list[int]:
        return [s for c in self.classifications for s in c.sizes]

    @property
    def solutions(self) -> list[Solution]:
        return [k.solution for c in self.classifications for k in c.classes]

    def rows(self) -> list[dict]:
        return [c.row() for c in self.classifications]


def classify_group(kind, p: int | None = None, q: int | None = None, cross_check: str = "reps") -> GroupCensus:
    """Classify over every brace whose multiplicative group is the given one.

    ``kind`` is a key of ``GROUP_KINDS`` or a :class:`GroupDescriptor`.
    """
    if isinstance(kind, GroupDescriptor):
        kind, p, q = kind_from_descriptor(kind)
    braces = group_braces(kind, p, q)
    return GroupCensus(kind, p, q, [classify(B, cross_check) for B in braces])


def classify_all(braces: Iterable[Brace], cross_check: str = "reps") -> list[Classification]:
    return [classify(B, cross_check) for B in braces]
