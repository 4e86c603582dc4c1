"""Line-oriented text formats for solutions, braces and censuses.

Every file starts with ``ybe1 <kind>``. Elements are written as their
mixed-radix integer codes, so files are exact and language neutral::

    ybe1 solution
    n 3
    sigma 0: 1 2 0
    ...

    ybe1 brace
    additive 3 2
    family pq p=3 q=2 g=2

    ybe1 brace
    additive 2 2
    mult
    0 1 2 3
    ...
"""
from __future__ import annotations

import functools

import numpy as np

from .braces import Brace, brace_from_table, family_brace
from .enumerate import BraceCensus, CensusEntry, SolutionCensus
from .errors import DomainError
from .groups import AbelianGroup
from .solutions import Solution, canonical_form, validate

MAGIC = "ybe1"
_FAMILY_KEYS = ("p", "q", "g")


def _lines(text: str) -> list[str]:
    return [ln for ln in text.split("\n") if ln.strip()]


def _expect_header(lines: list[str], kind: str) -> None:
    if not lines or lines[0].split() != [MAGIC, kind]:
        got = lines[0] if lines else "<empty>"
        raise DomainError(f"expected header '{MAGIC} {kind}', got {got!r}")


def _parsing(load):
    """Report malformed numbers, short files and missing attributes as DomainError."""

    @functools.wraps(load)
    def wrapper(text: str):
        try:
            return load(text)
        except (ValueError, IndexError, KeyError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"malformed input: {exc}") from exc

    return wrapper


def _field(line: str, key: str) -> list[str]:
    parts = line.split()
    if not parts or parts[0] != key:
        raise DomainError(f"expected '{key} ...', got {line!r}")
    return parts[1:]


# solutions


def _solution_body(S: Solution) -> list[str]:
    return [f"sigma {x}: " + " ".join(map(str, row)) for x, row in enumerate(S.sigma)]


def _parse_sigma(lines: list[str], n: int) -> Solution:
    if len(lines) < n:
        raise DomainError(f"expected {n} sigma rows, found {len(lines)}")
    rows = []
    for x, line in enumerate(lines[:n]):
        head, _, rest = line.partition(":")
        if head.split() != ["sigma", str(x)]:
            raise DomainError(f"expected 'sigma {x}:', got {line!r}")
        row = [int(v) for v in rest.split()]
        if len(row) != n:
            raise DomainError(f"sigma {x} has {len(row)} entries, expected {n}")
        rows.append(row)
    S = Solution.from_sigma(rows)
    report = validate(S)
    if not report:
        raise DomainError(f"not an involutive solution: {report}")
    return S


def dump_solution(S: Solution) -> str:
    return "\n".join([f"{MAGIC} solution", f"n {S.n}", *_solution_body(S)]) + "\n"


@_parsing
def load_solution(text: str) -> Solution:
    lines = _lines(text)
    _expect_header(lines, "solution")
    (n,) = _field(lines[1], "n")
    return _parse_sigma(lines[2:], int(n))


# braces


def _brace_body(B: Brace) -> list[str]:
    out = [" ".join(["additive", *map(str, B.additive.moduli)])]
    if B.family == "table":
        out.append("mult")
        out.extend(" ".join(map(str, row)) for row in B.mult_table.tolist())
    else:
        keys = " ".join(f"{k}={B.params[k]}" for k in _FAMILY_KEYS if k in B.params)
        out.append(f"family {B.family} {keys}".rstrip())
    return out


def _parse_brace(lines: list[str]) -> tuple[Brace, int]:
    """Parse a brace body; returns the brace and the number of lines consumed."""
    A = AbelianGroup(tuple(int(m) for m in _field(lines[0], "additive")))
    head = lines[1].split()
    if head[0] == "family":
        if len(head) < 2:
            raise DomainError("family line needs a tag")
        params = {}
        for item in head[2:]:
            k, sep, v = item.partition("=")
            if not sep or k not in _FAMILY_KEYS:
                raise DomainError(f"bad family parameter {item!r}")
            params[k] = int(v)
        B = family_brace(head[1], additive=A, **params)
        if B.additive != A:
            raise DomainError(f"family {head[1]} has additive group {B.additive}, file says {A}")
        return B, 2
    if head != ["mult"]:
        raise DomainError(f"expected 'family' or 'mult', got {lines[1]!r}")
    n = A.order
    rows = [[int(v) for v in line.split()] for line in lines[2 : 2 + n]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DomainError(f"mult needs {n} rows of {n} entries")
    return brace_from_table(A, np.array(rows, dtype=np.int64)), 2 + n


def dump_brace(B: Brace) -> str:
    return "\n".join([f"{MAGIC} brace", *_brace_body(B)]) + "\n"


@_parsing
def load_brace(text: str) -> Brace:
    lines = _lines(text)
    _expect_header(lines, "brace")
    B, _ = _parse_brace(lines[1:])
    return B


def braces_equal(B1: Brace, B2: Brace) -> bool:
    """Identical carrier, description and product table."""
    return (
        B1.additive == B2.additive
        and B1.family == B2.family
        and B1.params == B2.params
        and np.array_equal(B1.mult_table, B2.mult_table)
    )


# censuses


def dump_brace_census(C: BraceCensus) -> str:
    out = [f"{MAGIC} brace-census", f"group {C.group}", f"count {C.count}"]
    for name, k in C.by_additive.items():
        out.append(f"additive-count {name} {k}")
    for i, B in enumerate(C.braces):
        out.append(f"entry {i}")
        out.extend(_brace_body(B))
    return "\n".join(out) + "\n"


@_parsing
def load_brace_census(text: str) -> BraceCensus:
    lines = _lines(text)
    _expect_header(lines, "brace-census")
    (group,) = _field(lines[1], "group")
    (count,) = _field(lines[2], "count")
    i = 3
    by_add = {}
    while i < len(lines) and lines[i].startswith("additive-count "):
        name, k = _field(lines[i], "additive-count")
        by_add[name] = int(k)
        i += 1
    braces = []
    for j in range(int(count)):
        if _field(lines[i], "entry") != [str(j)]:
            raise DomainError(f"expected 'entry {j}', got {lines[i]!r}")
        B, used = _parse_brace(lines[i + 1 :])
        braces.append(B)
        i += 1 + used
    return BraceCensus(group, braces, by_add)


def dump_solution_census(C: SolutionCensus) -> str:
    out = [
        f"{MAGIC} solution-census",
        f"n {C.n}",
        f"indecomposable-only {int(C.indecomposable_only)}",
        f"count {C.count}",
    ]
    for i, e in enumerate(C.entries):
        out.append(f"entry {i} group={e.group} order={e.group_order} indecomposable={int(e.indecomposable)}")
        out.extend(_solution_body(e.solution))
    return "\n".join(out) + "\n"


@_parsing
def load_solution_census(text: str) -> SolutionCensus:
    lines = _lines(text)
    _expect_header(lines, "solution-census")
    n = int(_field(lines[1], "n")[0])
    only = _field(lines[2], "indecomposable-only") == ["1"]
    count = int(_field(lines[3], "count")[0])
    entries = []
    i = 4
    for j in range(count):
        parts = _field(lines[i], "entry")
        if not parts or parts[0] != str(j):
            raise DomainError(f"expected 'entry {j} ...', got {lines[i]!r}")
        attrs = dict(p.split("=", 1) for p in parts[1:])
        S = _parse_sigma(lines[i + 1 :], n)
        entries.append(
            CensusEntry(S, canonical_form(S), attrs["group"], int(attrs["order"]), attrs["indecomposable"] == "1")
        )
        i += 1 + n
    return SolutionCensus(n, only, entries)
