"""Braces: the nine explicit families, table-backed braces, axioms, lambda map,
automorphisms and isomorphism testing.

Elements are residue tuples of the additive group.  Family braces evaluate the
product by formula; every brace also exposes ``mult_table`` over the canonical
mixed-radix encoding for bulk work.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from . import config
from .errors import BraceAxiomError, DomainError, ResourceBoundError
from .groups import (
    AbelianGroup,
    AbelianHom,
    Element,
    GroupTable,
    additive_isomorphisms,
    invariant_factors_from_orders,
    is_prime,
    multiplicative_order,
)

FAMILIES = (
    "trivial", "pq", "cyc4q", "cycP2q", "noncyc4q", "noncycP2q",
    "semiP2q", "dih1", "dih2", "dih3", "table",
)  # fmt: skip


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


# Products on residue tuples.  ``m`` is the tuple of moduli, ``g`` the twisting unit.


def _mul_trivial(m, prm, x, y):
    return tuple((a + b) % k for a, b, k in zip(x, y, m))


def _mul_twisted(m, prm, x, y):
    # (a, b) o (c, d) = (a + g^b c, b + d)
    (a, b), (c, d) = x, y
    return ((a + pow(prm["g"], b, m[0]) * c) % m[0], (b + d) % m[1])


def _mul_heisenberg(m, prm, x, y):
    # (a, b, c) o (d, e, f) = (a + d + be, b + e, c + f)
    (a, b, c), (d, e, f) = x, y
    return ((a + d + b * e) % m[0], (b + e) % m[1], (c + f) % m[2])


def _mul_cyc_p2q(m, prm, x, y):
    (a, b), (c, d) = x, y
    return ((a + c + prm["p"] * a * c) % m[0], (b + d) % m[1])


def _mul_noncyc_4q(m, prm, x, y):
    (a, b), (c, d) = x, y
    return ((a + c) % m[0], (b + _sign(b) * d) % 4)


def _mul_dih1(m, prm, x, y):
    (a, b), (c, d) = x, y
    s = _sign(b)
    return ((a + s * c) % m[0], (b + s * d) % 4)


def _mul_dih2(m, prm, x, y):
    (a, b), (c, d) = x, y
    return ((a + _sign(b * (b - 1) // 2) * c) % m[0], (b + _sign(b) * d) % 4)


def _mul_dih3(m, prm, x, y):
    (a, b, c), (d, e, f) = x, y
    return ((a + d) % 2, (b + e) % 2, (c + _sign(a) * f) % m[2])


_FORMULAS: dict[str, Callable] = {
    "trivial": _mul_trivial,
    "pq": _mul_twisted,
    "semiP2q": _mul_twisted,
    "cyc4q": _mul_heisenberg,
    "noncycP2q": _mul_heisenberg,
    "cycP2q": _mul_cyc_p2q,
    "noncyc4q": _mul_noncyc_4q,
    "dih1": _mul_dih1,
    "dih2": _mul_dih2,
    "dih3": _mul_dih3,
}


class Brace:
    """An abelian group ``additive`` with a second group law on the same carrier.

    Either ``family`` names a formula (see ``FAMILIES``) or ``table`` holds the
    product of encoded elements.
    """

    def __init__(self, additive: AbelianGroup, family: str, params: dict | None = None, table=None):
        if family not in FAMILIES:
            raise DomainError(f"unknown brace family {family!r}")
        if (family == "table") != (table is not None):
            raise DomainError("a table is required exactly for the 'table' family")
        self.additive = additive
        self.family = family
        self.params = dict(params or {})
        if table is not None:
            table = np.asarray(table, dtype=np.int64)
            n = additive.order
            if table.shape != (n, n):
                raise DomainError(f"multiplication table must be {n}x{n}")
            self.__dict__["mult_table"] = table

    def __repr__(self) -> str:
        return f"Brace({self.label})"

    @property
    def label(self) -> str:
        if self.family == "table":
            return f"table[{self.additive}]"
        if self.family == "trivial":
            return f"trivial[{self.additive}]"
        args = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}({args})"

    @property
    def order(self) -> int:
        return self.additive.order

    def __len__(self) -> int:
        return self.order

    @property
    def elements(self) -> list[Element]:
        return self.additive.elements

    def mul(self, a: Element, b: Element) -> Element:
        if self.family == "table":
            A = self.additive
            return A.decode(int(self.mult_table[A.encode(a), A.encode(b)]))
        return _FORMULAS[self.family](self.additive.moduli, self.params, a, b)

    def add(self, a: Element, b: Element) -> Element:
        return self.additive.add(a, b)

    def lam(self, a: Element, b: Element) -> Element:
        """``lambda_a(b) = -a + a o b``."""
        return self.additive.add(self.additive.neg(a), self.mul(a, b))

    @cached_property
    def mult_table(self) -> np.ndarray:
        els = self.additive.elements
        enc = self.additive.encode
        mul = self.mul
        return np.array([[enc(mul(a, b)) for b in els] for a in els], dtype=np.int64).reshape(
            self.order, self.order
        )

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.mult_table.tolist()

    @cached_property
    def lambda_table(self) -> np.ndarray:
        """``lambda_table[a, b]`` encodes ``lambda_a(b)``."""
        A = self.additive
        return A.add_table[A.neg_index[:, None], self.mult_table]

    @cached_property
    def mult_group(self) -> GroupTable:
        return GroupTable(self.mult_table, identity=0)

    @cached_property
    def mult_orders(self) -> list[int]:
        return self.mult_group.orders

    def mult_order(self, a: Element) -> int:
        return self.mult_orders[self.additive.encode(a)]


def lam(B: Brace, a: Element, b: Element) -> Element:
    return B.lam(a, b)


# ---------------------------------------------------------------------------
# families


def _require_prime(name: str, v: int):
    if not is_prime(v):
        raise DomainError(f"{name}={v} must be prime")


def _default_unit(q: int, m: int, g: int | None) -> int:
    if g is None:
        return next(x for x in range(2, m) if multiplicative_order(x, m) == q)
    if multiplicative_order(g, m) != q:
        raise DomainError(f"g={g} does not have multiplicative order {q} mod {m}")
    return g % m


def trivial_brace(A: AbelianGroup) -> Brace:
    return Brace(A, "trivial")


def brace_pq(p: int, q: int, g: int | None = None) -> Brace:
    """Brace on Z_p x Z_q with ``(a,b) o (c,d) = (a + g^b c, b + d)``."""
    _require_prime("p", p)
    _require_prime("q", q)
    if p == q or (p - 1) % q:
        raise DomainError(f"p ≡ 1 (mod q) required, got p={p}, q={q}")
    g = _default_unit(q, p, g)
    return Brace(AbelianGroup((p, q)), "pq", {"p": p, "q": q, "g": g})


def brace_cyc_4q(q: int) -> Brace:
    """Brace on Z_2 x Z_2 x Z_q whose multiplicative group is cyclic of order 4q."""
    _require_prime("q", q)
    if q == 2:
        raise DomainError("q must be an odd prime")
    return Brace(AbelianGroup((2, 2, q)), "cyc4q", {"q": q})


def brace_cyc_p2q(p: int, q: int) -> Brace:
    _require_prime("p", p)
    _require_prime("q", q)
    if p == 2:
        raise DomainError("p must be odd (use brace_cyc_4q for p = 2)")
    if p == q:
        raise DomainError("p and q must be distinct")
    return Brace(AbelianGroup((p * p, q)), "cycP2q", {"p": p, "q": q})


def brace_noncyc_4q(q: int) -> Brace:
    """Brace on Z_q x Z_4 with multiplicative group Z_q x Z_2 x Z_2."""
    _require_prime("q", q)
    if q == 2:
        raise DomainError("q must be an odd prime")
    return Brace(AbelianGroup((q, 4)), "noncyc4q", {"q": q})


def brace_noncyc_p2q(p: int, q: int) -> Brace:
    _require_prime("p", p)
    _require_prime("q", q)
    if p == 2:
        raise DomainError("p must be odd (use brace_noncyc_4q for p = 2)")
    if p == q:
        raise DomainError("p and q must be distinct")
    return Brace(AbelianGroup((p, p, q)), "noncycP2q", {"p": p, "q": q})


def brace_semi_p2q(p: int, q: int, g: int | None = None) -> Brace:
    """Brace on Z_{p^2} x Z_q with ``g`` of order ``q`` in the units mod ``p^2``."""
    _require_prime("p", p)
    _require_prime("q", q)
    if p == q or (p - 1) % q:
        raise DomainError(f"p ≡ 1 (mod q) required, got p={p}, q={q}")
    g = _default_unit(q, p * p, g)
    return Brace(AbelianGroup((p * p, q)), "semiP2q", {"p": p, "q": q, "g": g})


def _odd_prime(p: int):
    _require_prime("p", p)
    if p == 2:
        raise DomainError("p must be an odd prime")


def brace_dih1_4p(p: int) -> Brace:
    _odd_prime(p)
    return Brace(AbelianGroup((p, 4)), "dih1", {"p": p})


def brace_dih2_4p(p: int) -> Brace:
    _odd_prime(p)
    return Brace(AbelianGroup((p, 4)), "dih2", {"p": p})


def brace_dih3_4p(p: int) -> Brace:
    _odd_prime(p)
    return Brace(AbelianGroup((2, 2, p)), "dih3", {"p": p})


def family_brace(tag: str, p: int | None = None, q: int | None = None, g: int | None = None,
                 additive: AbelianGroup | None = None) -> Brace:
    """Instantiate a family by tag (the serialization entry point)."""
    builders = {
        "pq": lambda: brace_pq(p, q, g),
        "cyc4q": lambda: brace_cyc_4q(q),
        "cycP2q": lambda: brace_cyc_p2q(p, q),
        "noncyc4q": lambda: brace_noncyc_4q(q),
        "noncycP2q": lambda: brace_noncyc_p2q(p, q),
        "semiP2q": lambda: brace_semi_p2q(p, q, g),
        "dih1": lambda: brace_dih1_4p(p),
        "dih2": lambda: brace_dih2_4p(p),
        "dih3": lambda: brace_dih3_4p(p),
    }
    if tag == "trivial":
        if additive is None:
            raise DomainError("the trivial family needs its additive group")
        return trivial_brace(additive)
    if tag not in builders:
        raise DomainError(f"unknown brace family {tag!r}")
    return builders[tag]()


# ---------------------------------------------------------------------------
# axioms


@dataclass
class AxiomReport:
    ok: bool
    violation: str | None = None
    triple: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else self.violation


def verify_brace_axioms(B: Brace, bound: int | None = None) -> AxiomReport:
    """Exhaustive check of the group laws and of ``a o (b + c) = a o b - a + a o c``."""
    bound = config.bounds.holomorph if bound is None else bound
    n = B.order
    if n > bound:
        raise ResourceBoundError("brace", n, bound, "bound-holomorph")
    A = B.additive
    add, neg = A.add_table, A.neg_index
    M = B.mult_table
    dec = A.decode
    if not np.array_equal(add, add.T):
        i, j = np.argwhere(add != add.T)[0].tolist()
        return AxiomReport(False, f"addition not commutative at ({dec(i)}, {dec(j)})", (dec(i), dec(j)))
    if M.min() < 0 or M.max() >= n:
        return AxiomReport(False, "product outside the carrier")
    ar = np.arange(n)
    if not (np.array_equal(M[0], ar) and np.array_equal(M[:, 0], ar)):
        bad = int(np.nonzero((M[0] != ar) | (M[:, 0] != ar))[0][0])
        return AxiomReport(False, f"zero is not the multiplicative identity at {dec(bad)}", (A.zero, dec(bad)))
    for a in range(n):
        if len(np.unique(M[a])) != n:
            return AxiomReport(False, f"left multiplication by {dec(a)} is not bijective", (dec(a),))
        if not np.any(M[a] == 0):
            return AxiomReport(False, f"{dec(a)} has no inverse", (dec(a),))
    for a in range(n):
        # associativity: (a o b) o c == a o (b o c)
        lhs = M[M[a]]
        rhs = M[a][M]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = bad[0].tolist()
            t = (dec(a), dec(b), dec(c))
            return AxiomReport(False, f"associativity fails at {t}", t)
        # compatibility: a o (b + c) == a o b - a + a o c
        lhs = M[a][add]
        rhs = add[add[M[a][:, None], neg[a]], M[a][None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = bad[0].tolist()
            t = (dec(a), dec(b), dec(c))
            return AxiomReport(False, f"compatibility fails at {t}", t)
    return AxiomReport(True)


def brace_from_table(additive: AbelianGroup, mult_table) -> Brace:
    """Table-backed brace; raises :class:`BraceAxiomError` naming the violated triple."""
    B = Brace(additive, "table", table=mult_table)
    report = verify_brace_axioms(B)
    if not report:
        raise BraceAxiomError(report.violation, report.triple)
    return B


def materialize(B: Brace) -> Brace:
    """Table-backed copy of any brace."""
    return Brace(B.additive, "table", table=B.mult_table.copy())


# ---------------------------------------------------------------------------
# automorphisms and isomorphisms


@dataclass(frozen=True)
class BraceAutomorphism:
    """A brace automorphism, stored through its underlying additive automorphism."""

    additive: AbelianHom = field()

    @property
    def images(self):
        return self.additive.images

    @property
    def mapping(self) -> np.ndarray:
        return self.additive.mapping

    def __call__(self, a: Element) -> Element:
        return self.additive(a)

    def compose(self, other: "BraceAutomorphism") -> "BraceAutomorphism":
        return BraceAutomorphism(self.additive.compose(other.additive))

    def inverse(self) -> "BraceAutomorphism":
        return BraceAutomorphism(self.additive.inverse())


def _is_multiplicative(f: np.ndarray, M1: np.ndarray, M2: np.ndarray) -> bool:
    return bool(np.array_equal(f[M1], M2[f[:, None], f[None, :]]))


def brace_automorphisms(B: Brace, bound: int | None = None) -> list[BraceAutomorphism]:
    """Additive automorphisms that also respect the product."""
    bound = config.bounds.subgroups if bound is None else bound
    if B.order > bound:
        raise ResourceBoundError("brace", B.order, bound, "bound-subgroups")
    M = B.mult_table
    return [
        BraceAutomorphism(f)
        for f in additive_isomorphisms(B.additive, B.additive, _allowed_images(B, B))
        if _is_multiplicative(f.mapping, M, M)
    ]


def element_signatures(B: Brace) -> list[tuple]:
    """Per-element data preserved by every brace isomorphism."""
    A = B.additive
    lam = B.lambda_table
    fixed = (lam == np.arange(B.order)[None, :]).sum(axis=1).tolist()
    moved = (lam != np.arange(B.order)[:, None]).sum(axis=0).tolist()
    return list(zip(A.orders, B.mult_orders, fixed, moved))


def _allowed_images(B1: Brace, B2: Brace) -> list[list[int]]:
    sig1, sig2 = element_signatures(B1), element_signatures(B2)
    out = []
    for e in B1.additive.basis:
        s = sig1[B1.additive.encode(e)]
        out.append([x for x, t in enumerate(sig2) if t == s])
    return out


def brace_invariants(B: Brace) -> tuple:
    """Cheap isomorphism invariants used to reject non-isomorphic pairs early."""
    A = B.additive
    return (
        B.order,
        tuple(invariant_factors_from_orders(A.order, A.orders)),
        tuple(sorted(element_signatures(B))),
    )


def brace_isomorphic(B1: Brace, B2: Brace, bound: int | None = None) -> Optional[AbelianHom]:
    """An additive isomorphism ``B1 -> B2`` that is also multiplicative, or ``None``."""
    bound = config.bounds.subgroups if bound is None else bound
    for B in (B1, B2):
        if B.order > bound:
            raise ResourceBoundError("brace", B.order, bound, "bound-subgroups")
    if B1.order != B2.order or brace_invariants(B1) != brace_invariants(B2):
        return None
    M1, M2 = B1.mult_table, B2.mult_table
    for f in additive_isomorphisms(B1.additive, B2.additive, _allowed_images(B1, B2)):
        if _is_multiplicative(f.mapping, M1, M2):
            return f
    return None
