"""Brute-force reference computations used by the tests.

Nothing here calls into the package's search code: everything is plain
enumeration over small sets, so agreement with the library is evidence.
"""
from __future__ import annotations

import itertools
from math import gcd


def repeated_addition_order(moduli, g) -> int:
    zero = tuple(0 for _ in moduli)
    x, k = tuple(g), 1
    while x != zero:
        x = tuple((a + b) % m for a, b, m in zip(x, g, moduli))
        k += 1
    return k


def table_subgroups(rows) -> set[frozenset]:
    """Every subset closed under the product (finite, so closed subsets are subgroups)."""
    n = len(rows)
    out = set()
    for mask in range(1, 1 << n):
        S = [i for i in range(n) if mask >> i & 1]
        s = set(S)
        if all(rows[a][b] in s for a in S for b in S):
            out.add(frozenset(S))
    return out


def additive_automorphism_count(moduli) -> int:
    """Bijections of the carrier preserving addition, by checking all permutations."""
    elems = list(itertools.product(*(range(m) for m in moduli)))
    idx = {e: i for i, e in enumerate(elems)}
    add = [[idx[tuple((a + b) % m for a, b, m in zip(x, y, moduli))] for y in elems] for x in elems]
    n = len(elems)
    count = 0
    for perm in itertools.permutations(range(n)):
        if all(perm[add[a][b]] == add[perm[a]][perm[b]] for a in range(n) for b in range(n)):
            count += 1
    return count


def brace_automorphism_count(moduli, mul) -> int:
    """Additive automorphisms fixed by their images of the standard basis that also
    respect ``mul`` (a function on coordinate tuples)."""
    elems = list(itertools.product(*(range(m) for m in moduli)))
    k = len(moduli)

    def apply(images, x):
        out = [0] * k
        for coeff, img in zip(x, images):
            out = [(o + coeff * v) % m for o, v, m in zip(out, img, moduli)]
        return tuple(out)

    count = 0
    for images in itertools.product(elems, repeat=k):
        if any(repeated_addition_order(moduli, img) != m for img, m in zip(images, moduli)):
            continue
        f = {x: apply(images, x) for x in elems}
        if len(set(f.values())) != len(elems):
            continue
        if all(f[mul(x, y)] == mul(f[x], f[y]) for x in elems for y in elems):
            count += 1
    return count


def is_ybe_solution(sigma) -> bool:
    """Check r(x,y) = (sigma_x(y), tau_y(x)) with tau from involutivity, by composing maps."""
    n = len(sigma)
    inv = [[0] * n for _ in range(n)]
    for x in range(n):
        if sorted(sigma[x]) != list(range(n)):
            return False
        for y in range(n):
            inv[x][sigma[x][y]] = y

    def r(x, y):
        u = sigma[x][y]
        return u, inv[u][x]

    for x in range(n):
        for y in range(n):
            if r(*r(x, y)) != (x, y):
                return False
    # tau rows must be permutations too
    for y in range(n):
        if len({r(x, y)[1] for x in range(n)}) != n:
            return False
    for x, y, z in itertools.product(range(n), repeat=3):
        a, b = r(x, y)
        b, c = r(b, z)
        a, b = r(a, b)
        u, v = r(y, z)
        w, u = r(x, u)
        u, v = r(u, v)
        if (a, b, c) != (w, u, v):
            return False
    return True


def relabel_sigma(sigma, perm):
    n = len(sigma)
    out = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            out[perm[x]][perm[y]] = perm[sigma[x][y]]
    return tuple(tuple(r) for r in out)


def brute_isomorphic(s1, s2) -> bool:
    n = len(s1)
    t2 = tuple(tuple(r) for r in s2)
    return any(relabel_sigma(s1, p) == t2 for p in itertools.permutations(range(n)))


def brute_solution_classes(n: int) -> list[tuple]:
    """Representatives of all involutive solutions of size n, up to relabelling."""
    perms = list(itertools.permutations(range(n)))
    seen: set = set()
    reps = []
    for sigma in itertools.product(perms, repeat=n):
        if sigma in seen or not is_ybe_solution(sigma):
            continue
        orbit = {relabel_sigma(sigma, p) for p in perms}
        seen |= orbit
        reps.append(sigma)
    return reps


def is_transitive(sigma) -> bool:
    n = len(sigma)
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for row in sigma:
            if row[v] not in seen:
                seen.add(row[v])
                stack.append(row[v])
    return len(seen) == n


def units(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
