"""Theorem-verification sweep: every classification count, solution size,
automorphism order and orbit count is recomputed and compared with its stated
value.

Each check records its ``basis``: ``stated`` when the expected value is a
published closed form, ``derived`` when it follows from one by arithmetic
(for instance orbit counts from the automorphism and orbit sizes).
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd

from .braces import (
    Brace,
    brace_automorphisms,
    brace_cyc_4q,
    brace_cyc_p2q,
    brace_dih1_4p,
    brace_dih2_4p,
    brace_dih3_4p,
    brace_isomorphic,
    brace_noncyc_4q,
    brace_noncyc_p2q,
    brace_pq,
    brace_semi_p2q,
    trivial_brace,
)
from .construct import Classification, classify
from .errors import ResourceBoundError
from .groups import (
    AbelianGroup,
    abelian_group_table,
    cyclic_group,
    dihedral_group,
    identify_group,
    semidirect_group,
)
from .solutions import induced_brace, is_indecomposable, validate

DEFAULT_PQ = ((3, 2), (5, 2), (7, 3), (13, 3), (11, 5))
DEFAULT_CYCLIC_P2Q = ((2, 3), (2, 5), (3, 2), (5, 2), (5, 3))
DEFAULT_ABELIAN_P2Q = ((2, 3), (2, 5), (2, 7), (3, 2), (5, 2), (3, 5))
DEFAULT_DIHEDRAL_2P2 = (3, 5)
DEFAULT_DIHEDRAL_4P = (3, 5, 7)
DEFAULT_SEMIDIRECT_P2Q = ((7, 3),)
CONSISTENCY_LIMIT = 200

COLUMNS = ("claim", "parameters", "expected", "computed", "status", "basis")


@dataclass(frozen=True)
class Check:
    claim: str
    parameters: str
    expected: str
    computed: str
    status: str
    basis: str

    def tsv(self) -> str:
        return "\t".join(getattr(self, c) for c in COLUMNS)


@dataclass
class VerificationReport:
    checks: list[Check]

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def render(self) -> str:
        tally = {s: sum(c.status == s for c in self.checks) for s in ("pass", "fail", "skipped(bound)")}
        lines = ["\t".join(COLUMNS), *(c.tsv() for c in self.checks)]
        lines.append(
            f"# checks={len(self.checks)} pass={tally['pass']} fail={tally['fail']} "
            f"skipped={tally['skipped(bound)']}"
        )
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v)) if v else "-"
    return str(v)


def _check(claim, params, expected, computed, basis="stated") -> Check:
    status = "pass" if expected == computed else "fail"
    return Check(claim, params, _fmt(expected), _fmt(computed), status, basis)


def _phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _consistency(B: Brace, c: Classification) -> Check:
    """Every representative solution is valid, indecomposable and has structure brace B."""
    problems = []
    if B.order <= CONSISTENCY_LIMIT:
        for k in c.classes:
            S = k.solution
            if not validate(S):
                problems.append(f"invalid:{k.datum.describe(B)}")
            elif not is_indecomposable(S):
                problems.append(f"decomposable:{k.datum.describe(B)}")
            elif brace_isomorphic(induced_brace(S), B) is None:
                problems.append(f"brace-mismatch:{k.datum.describe(B)}")
    return _check("consistency", B.label, "ok", ";".join(problems) or "ok", "derived")


def _classify_checks(claim, params, braces, expected_total, expected_size) -> tuple[list[Check], list[Classification]]:
    results = [classify(B) for B in braces]
    total = sum(c.count for c in results)
    sizes = sorted(s for c in results for s in c.sizes)
    checks = [
        _check(f"solutions.{claim}", params, expected_total, total),
        _check(f"sizes.{claim}", params, [expected_size] * expected_total, sizes),
    ]
    checks += [_consistency(B, c) for B, c in zip(braces, results)]
    return checks, results


def _aut_check(tag, params, B, expected, basis="stated") -> Check:
    return _check(f"automorphisms.{tag}", params, expected, len(brace_automorphisms(B)), basis)


def _group_check(tag, params, B, expected_group) -> Check:
    return _check(f"group.{tag}", params, str(identify_group(expected_group)), str(identify_group(B.mult_group)))


def _dichotomy(params, n, sizes) -> Check:
    bad = sorted(s for s in sizes if s not in (n, 2 * n))
    return _check("dichotomy.dihedral", f"{params} allowed={n},{2 * n}", "ok", "ok" if not bad else _fmt(bad))


def checks_pq(p: int, q: int) -> list[Check]:
    params = f"p={p} q={q}"
    n = p * q
    out, _ = _classify_checks("cyclic-pq", params, [trivial_brace(AbelianGroup((n,)))], 1, n)
    if (p - 1) % q:
        return out
    B = brace_pq(p, q)
    more, res = _classify_checks("semidirect-pq", params, [B], q - 1, n)
    out += more
    out.append(_group_check("pq", params, B, semidirect_group(p, q, B.params["g"])))
    out.append(_aut_check("pq", params, B, p - 1))
    out.append(_check("orbits.pq", params, (p - 1) * (q - 1) // q, len(res[0].generating), "derived"))
    if q == 2:
        out.append(_dichotomy(params, p, res[0].sizes))
    return out


def checks_cyclic_p2q(p: int, q: int) -> list[Check]:
    params = f"p={p} q={q}"
    n = p * p * q
    extra = brace_cyc_4q(q) if p == 2 else brace_cyc_p2q(p, q)
    out, _ = _classify_checks("cyclic-p2q", params, [trivial_brace(AbelianGroup((n,))), extra], p, n)
    out.append(_group_check(extra.family, params, extra, cyclic_group(n)))
    if p == 2:
        out.append(_aut_check("cyc4q", params, extra, 2 * (q - 1)))
    else:
        out.append(_aut_check("cycP2q", params, extra, q - 1))
    return out


def checks_abelian_p2q(p: int, q: int) -> list[Check]:
    params = f"p={p} q={q}"
    n = p * p * q
    extra = brace_noncyc_4q(q) if p == 2 else brace_noncyc_p2q(p, q)
    triv = trivial_brace(AbelianGroup((p, p, q)))
    out, _ = _classify_checks("abelian-p2q", params, [triv, extra], 1, n)
    out.append(_check("solutions.trivial-noncyclic", params, 0, classify(triv).count))
    out.append(_group_check(extra.family, params, extra, abelian_group_table(AbelianGroup((p, p, q)))))
    if p == 2:
        out.append(_aut_check("noncyc4q", params, extra, _phi(4 * q)))
    else:
        out.append(_aut_check("noncycP2q", params, extra, p * (p - 1) * (q - 1)))
    return out


def checks_dihedral_2p2(p: int) -> list[Check]:
    params = f"p={p}"
    B = brace_semi_p2q(p, 2)
    out, res = _classify_checks("dihedral-2p2", params, [B], 1, 2 * p * p)
    out.append(_group_check("semiP2q", params, B, dihedral_group(p * p)))
    out.append(_aut_check("semiP2q", params, B, _phi(p * p)))
    out.append(_dichotomy(params, p * p, res[0].sizes))
    return out


def checks_dihedral_4p(p: int) -> list[Check]:
    params = f"p={p}"
    braces = [brace_dih1_4p(p), brace_dih2_4p(p), brace_dih3_4p(p)]
    out, res = _classify_checks("dihedral-4p", params, braces, 2, 4 * p)
    for B in braces:
        out.append(_group_check(B.family, params, B, dihedral_group(2 * p)))
    out.append(_aut_check("dih1", params, braces[0], _phi(4 * p)))
    out.append(_aut_check("dih2", params, braces[1], p - 1))
    out.append(_check("orbits.dih3", params, 0, len(res[2].generating)))
    out.append(_dichotomy(params, 2 * p, [s for c in res for s in c.sizes]))
    return out


def checks_semidirect_p2q(p: int, q: int) -> list[Check]:
    params = f"p={p} q={q}"
    B = brace_semi_p2q(p, q)
    out, _ = _classify_checks("semidirect-p2q", params, [B], q - 1, p * p * q)
    out.append(_group_check("semiP2q", params, B, semidirect_group(p * p, q, B.params["g"])))
    out.append(_aut_check("semiP2q", params, B, _phi(p * p)))
    return out


def _guard(fn, *args) -> list[Check]:
    try:
        return fn(*args)
    except ResourceBoundError as exc:
        params = " ".join(map(str, args))
        return [Check(fn.__name__, params, "-", str(exc), "skipped(bound)", "stated")]


def sweep_tasks(
    pq=DEFAULT_PQ,
    cyclic_p2q=DEFAULT_CYCLIC_P2Q,
    abelian_p2q=DEFAULT_ABELIAN_P2Q,
    dihedral_2p2=DEFAULT_DIHEDRAL_2P2,
    dihedral_4p=DEFAULT_DIHEDRAL_4P,
    semidirect_p2q=DEFAULT_SEMIDIRECT_P2Q,
) -> list[tuple]:
    tasks = [(checks_pq, p, q) for p, q in pq]
    tasks += [(checks_cyclic_p2q, p, q) for p, q in cyclic_p2q]
    tasks += [(checks_abelian_p2q, p, q) for p, q in abelian_p2q]
    tasks += [(checks_dihedral_2p2, p) for p in dihedral_2p2]
    tasks += [(checks_dihedral_4p, p) for p in dihedral_4p]
    tasks += [(checks_semidirect_p2q, p, q) for p, q in semidirect_p2q]
    return tasks


def verify_theorems(threads: int = 1, **ranges) -> VerificationReport:
    """Run the sweep; the report does not depend on ``threads``."""
    tasks = sweep_tasks(**ranges)
    if threads <= 1:
        parts = [_guard(*t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda t: _guard(*t), tasks))
    return VerificationReport([c for part in parts for c in part])
