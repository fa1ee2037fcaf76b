"""Embedded verification suite.

Each check is a pure function of its arguments and a fixed seed, so checks can
run on a thread pool and be merged in declaration order without affecting the
report bytes.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

from .certify import Kind, Scenario, Verdict, reducible_certificate
from .confpair import bk_quotient_check, coface_mismatches, corrupted_table
from .groupring import RingElement, Solvable, brute_force_solvable, minus_conj_solvable
from .groupword import GroupPresentation, Word, conjugate_power
from .lattice import Window, enumerate_pairs
from .wspace import (
    WVector,
    build_relation_basis,
    pushforward,
    quotient_rank,
    relation,
    retract,
)

SELFTEST_SCHEMA = "barbellcalc/selftest/v1"
THREADS_ENV = "BARBELLCALC_THREADS"
SEED = 20240917


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    if n < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


# individual checks; each returns (passed, detail)


def check_coface(n: int) -> tuple[bool, dict]:
    detail = {}
    ok = True
    for rank in (1, 2):
        w = Window(rank, n if rank == 1 else min(n, 2))
        bad = coface_mismatches(w)
        detail[f"rank{rank}"] = {
            "bound": w.bound,
            "pairs": len(enumerate_pairs(w)),
            "mismatches": len(bad),
        }
        ok = ok and not bad
    return ok, detail


def check_bk(n: int) -> tuple[bool, dict]:
    detail = {}
    ok = True
    for w in (Window(1, min(n, 3)), Window(2, 1)):
        r = bk_quotient_check(w)
        detail[f"rank{w.rank}_bound{w.bound}"] = {
            "rank_bk": r.rank_bk,
            "rank_w": r.rank_w,
            "injective": r.injective,
            "surjective": r.surjective,
        }
        ok = ok and r.basis_bijection
    return ok, detail


def random_injective(rng: random.Random, b: int, bp: int) -> tuple[tuple[int, ...], ...]:
    from .linalg import matrix_rank

    while True:
        m = tuple(tuple(rng.randint(-2, 2) for _ in range(bp)) for _ in range(b))
        if matrix_rank(m) == bp:
            return m


def random_wvector(rng: random.Random, rank: int, bound: int, terms: int) -> WVector:
    pairs = enumerate_pairs(Window(rank, bound))
    return WVector(
        (rng.choice(pairs), rng.choice([-3, -2, -1, 1, 2, 3])) for _ in range(terms)
    )


def check_retraction(count: int, seed: int = SEED) -> tuple[bool, dict]:
    rng = random.Random(seed)
    failures = 0
    for _ in range(count):
        bp = rng.randint(1, 2)
        b = rng.randint(bp, 3)
        m = random_injective(rng, b, bp)
        v = random_wvector(rng, bp, 2, rng.randint(0, 5))
        if retract(m, pushforward(m, v)) != v:
            failures += 1
    return failures == 0, {"instances": count, "failures": failures}


def random_word(rng: random.Random, pres: GroupPresentation, max_len: int) -> Word:
    return pres.word(
        (rng.randrange(len(pres.factor_orders)), rng.choice([-2, -1, 1, 2]))
        for _ in range(rng.randint(1, max_len))
    )


def random_solver_instance(rng: random.Random, pres: GroupPresentation):
    """A random (g, y) with y of support at most 8 and words of length at most 4.

    About half the terms are paired with a conjugate carrying the opposite
    coefficient, so both verdicts occur often.
    """
    g = random_word(rng, pres, 4)
    while g.is_identity:
        g = random_word(rng, pres, 4)
    terms = []
    for _ in range(rng.randint(1, 4)):
        w = random_word(rng, pres, 3)
        if w.is_identity:
            continue
        c = rng.choice([-2, -1, 1, 2])
        terms.append((w, c))
        if rng.random() < 0.5:
            terms.append((conjugate_power(g, w, rng.randint(-1, 1)), -c))
    return g, RingElement(terms)


def solver_agrees(g: Word, y: RingElement) -> tuple[bool, bool]:
    """(agreement, solvable) between the orbit-sum solver and the linear oracle."""
    fast = minus_conj_solvable(g, y)
    slow = brute_force_solvable(g, y)
    agree = isinstance(fast, Solvable) == isinstance(slow, Solvable)
    if isinstance(fast, Solvable):
        agree = agree and fast.witness - _conj(g, fast.witness) == y
    return agree, isinstance(fast, Solvable)


def _conj(g, x):
    from .groupring import conj_action

    return conj_action(g, x)


def check_solver(count: int, seed: int = SEED) -> tuple[bool, dict]:
    rng = random.Random(seed)
    stats = {"instances": 0, "disagreements": 0, "solvable": 0}
    for pres in (GroupPresentation((0, 0)), GroupPresentation((3, 0))):
        for _ in range(count):
            g, y = random_solver_instance(rng, pres)
            agree, solvable = solver_agrees(g, y)
            stats["instances"] += 1
            stats["solvable"] += solvable
            stats["disagreements"] += not agree
    return stats["disagreements"] == 0, stats


def coefficient_sweep(max_k: int = 4, max_c: int = 3):
    """All (presentation, alpha1, alpha2, c) of the coefficient sweep."""
    values = [x for x in range(-max_c, max_c + 1)]
    # alpha2 of order infinity, 3, 4; alpha1 a generator of the other factor
    pres_list = [GroupPresentation((0, 0)), GroupPresentation((0, 3)), GroupPresentation((0, 4))]
    for pres in pres_list:
        a1, a2 = pres.gen(0), pres.gen(1)
        for k in range(1, max_k + 1):
            for c in _nonzero_vectors(values, k):
                yield pres, a1, a2, c


def _nonzero_vectors(values, k):
    import itertools

    for c in itertools.product(values, repeat=k):
        if c[-1]:
            yield c


def obstruction_matches(pres, a1, a2, c) -> bool:
    s = Scenario(Kind.REDUCIBLE, Window(1, 1), presentation=pres, alpha1=a1, alpha2=a2,
                 coefficients=tuple(c))
    cert = reducible_certificate(s)
    if cert.verdict is not Verdict.CERTIFIED:
        return False
    lem = cert.evidence["expected_orbit_sums"]
    return len(lem) == sum(1 for x in c if x) and all(e["found"] == e["expected"] for e in lem)


def check_obstruction_sweep(max_k: int) -> tuple[bool, dict]:
    total = bad = 0
    for inst in coefficient_sweep(max_k=max_k, max_c=2):
        total += 1
        bad += not obstruction_matches(*inst)
    return bad == 0, {"instances": total, "failures": bad}


def dense_quotient_rank(w: Window) -> int:
    """Independent oracle: dense rank of the window relation matrix over QQ."""
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix

    pairs = enumerate_pairs(w)
    col = {p: i for i, p in enumerate(pairs)}
    rows = []
    for a, b in pairs:
        if w.contains_triple(a, b):
            row = [QQ(0)] * len(pairs)
            for p, c in relation(a, b).items():
                row[col[p]] += QQ(int(c))
            rows.append(row)
    if not rows:
        return len(pairs)
    m = DomainMatrix(rows, (len(rows), len(pairs)), QQ)
    return len(pairs) - m.rank()


def quotient_rank_table(max_n: int) -> list[dict]:
    out = []
    for n in range(1, max_n + 1):
        w = Window(1, n)
        out.append({
            "bound": n,
            "pairs": len(enumerate_pairs(w)),
            "relation_rank": build_relation_basis(w).rank,
            "quotient_rank": quotient_rank(w),
            "oracle": dense_quotient_rank(w),
        })
    return out


def check_quotient_ranks(max_n: int) -> tuple[bool, dict]:
    table = quotient_rank_table(max_n)
    ok = all(r["quotient_rank"] == r["oracle"] for r in table)
    return ok, {"table": table}


def build_checks(n: int) -> list[tuple[str, Callable[[], tuple[bool, dict]]]]:
    return [
        ("coface_vs_closed_form", lambda: check_coface(n)),
        ("bk_quotient", lambda: check_bk(n)),
        ("retract_pushforward", lambda: check_retraction(100)),
        ("solver_vs_oracle", lambda: check_solver(40)),
        ("obstruction_sweep", lambda: check_obstruction_sweep(2)),
        ("quotient_rank_growth", lambda: check_quotient_ranks(max(6, n))),
    ]


def run_selftest(n: int, threads: int | None = None, corrupt: bool = False) -> dict:
    if n < 1:
        raise ValueError("selftest window must be >= 1")
    threads = thread_count() if threads is None else threads
    checks = build_checks(n)

    def run_all() -> list:
        if threads == 1:
            return [fn() for _, fn in checks]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(fn) for _, fn in checks]
            return [f.result() for f in futures]

    if corrupt:
        with corrupted_table():
            results = run_all()
    else:
        results = run_all()
    entries = [
        {"name": name, "passed": ok, "detail": detail}
        for (name, _), (ok, detail) in zip(checks, results)
    ]
    growth = next(e for e in entries if e["name"] == "quotient_rank_growth")
    return {
        "schema": SELFTEST_SCHEMA,
        "window": n,
        "passed": all(e["passed"] for e in entries),
        "checks": entries,
        "quotient_ranks": [r["quotient_rank"] for r in growth["detail"]["table"]],
    }
