"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line with its measurements and the time
taken, then asserts. Run directly (python3 tests/test_acceptance.py) for the
summary alone; under pytest the lines appear in the terminal summary.
"""

from __future__ import annotations

import itertools
import json
import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest
import sympy

from barbellcalc.certify import (
    CurveDatum,
    Kind,
    Relation,
    Scenario,
    Verdict,
    antisymmetry_check,
    independence_certificate,
    irreducible_certificate,
    reducible_certificate,
)
from barbellcalc.confpair import (
    bk_quotient_check,
    computed_generator,
    closed_form_generator,
)
from barbellcalc.groupring import Solvable, brute_force_solvable, minus_conj_solvable, minus_id_minus_conj
from barbellcalc.groupword import GroupPresentation
from barbellcalc.lattice import Window, enumerate_pairs, neg
from barbellcalc.linalg import matrix_rank
from barbellcalc.selftest import random_solver_instance
from barbellcalc.wspace import (
    WVector,
    iota_star,
    pushforward,
    quotient_rank,
    relation,
    retract,
)
from oracles import dense_quotient_rank, dense_relation_matrix, in_row_span

SEED = 7
# summary lines, printed by the terminal summary hook in conftest.py
LINES: list[str] = []


@contextmanager
def criterion(number: int, name: str, budget: float):
    """Collect a detail string, print one PASS/FAIL line, enforce the time budget."""
    info: dict = {"ok": False, "detail": ""}
    start = time.perf_counter()
    try:
        yield info
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed <= budget
        status = "PASS" if info["ok"] and within else "FAIL"
        line = (f"[criterion {number}] {status} {name}: {info['detail']} "
                f"({elapsed:.2f}s, budget {budget:.0f}s)")
        LINES.append(line)
    assert info["ok"], line
    assert within, line


# 1


def test_criterion_1_coface_pairing_consistency():
    with criterion(1, "coface/pairing consistency", 10) as c:
        checked = mismatches = 0
        for rank in (1, 2):
            for p in enumerate_pairs(Window(rank, 3)):
                for k in range(4):
                    checked += 1
                    mismatches += computed_generator(k, p.a, p.b) != closed_form_generator(k, p.a, p.b)
        c["detail"] = f"{checked} (pair, k) cases, {mismatches} mismatches"
        c["ok"] = checked > 0 and mismatches == 0


# 2


def test_criterion_2_codomain_isomorphism():
    with criterion(2, "codomain isomorphism at window scale", 60) as c:
        parts, ok = [], True
        for rank, bound in [(1, 1), (1, 2), (1, 3), (2, 1)]:
            r = bk_quotient_check(Window(rank, bound))
            parts.append(f"(b={rank},N={bound}) {r.rank_bk}={r.rank_w}"
                         f"{'' if r.basis_bijection else ' NO-BIJECTION'}")
            ok = ok and r.ranks_agree and r.basis_bijection
        c["detail"] = "; ".join(parts)
        c["ok"] = ok


# 3


def _random_injective(rng, b, bp):
    while True:
        m = tuple(tuple(rng.randint(-3, 3) for _ in range(bp)) for _ in range(b))
        if matrix_rank(m) == bp:
            return m


def test_criterion_3_retraction_identity():
    with criterion(3, "retract o pushforward = id", 5) as c:
        rng = random.Random(SEED)
        failures = nonzero = 0
        for _ in range(500):
            bp = rng.randint(1, 2)
            b = rng.randint(bp, 3)
            m = _random_injective(rng, b, bp)
            pairs = enumerate_pairs(Window(bp, 3))
            v = WVector((rng.choice(pairs), rng.randint(-5, 5)) for _ in range(rng.randint(0, 6)))
            nonzero += bool(v)
            failures += retract(m, pushforward(m, v)) != v
        c["detail"] = f"500 instances ({nonzero} nonzero), {failures} failures"
        c["ok"] = failures == 0


# 4


def test_criterion_4_solver_oracle_agreement():
    with criterion(4, "solver/oracle agreement", 120) as c:
        rng = random.Random(SEED)
        total = disagree = solvable = bad_witness = 0
        for pres in (GroupPresentation((0, 0)), GroupPresentation((3, 0))):
            kept = 0
            while kept < 120:
                g, y = random_solver_instance(rng, pres)
                if len(g) > 4 or any(len(w) > 4 for w in y) or len(y) > 8:
                    continue
                kept += 1
                fast, slow = minus_conj_solvable(g, y), brute_force_solvable(g, y)
                total += 1
                disagree += isinstance(fast, Solvable) != isinstance(slow, Solvable)
                if isinstance(fast, Solvable):
                    solvable += 1
                    bad_witness += minus_id_minus_conj(g, fast.witness) != y
        c["detail"] = (f"{total} instances ({solvable} solvable, {total - solvable} not), "
                       f"{disagree} disagreements, {bad_witness} bad witnesses")
        c["ok"] = total >= 200 and disagree == 0 and bad_witness == 0 and 0 < solvable < total


# 5


def test_criterion_5_obstruction_coefficients():
    with criterion(5, "obstruction coefficient -c_k", 60) as c:
        cases = failures = 0
        # alpha1 generates a Z factor, alpha2 a factor of order infinity, 3 or 4
        for orders in [(0, 0), (0, 3), (0, 4)]:
            pres = GroupPresentation(orders)
            a1, a2 = pres.gen(0), pres.gen(1)
            g = a2 * a1
            for cvec in itertools.product(range(-3, 4), repeat=4):
                if not any(cvec):
                    continue
                cases += 1
                s = Scenario(Kind.REDUCIBLE, Window(1, 1), presentation=pres,
                             alpha1=a1, alpha2=a2, coefficients=cvec)
                cert = reducible_certificate(s)
                ok = cert.verdict is Verdict.CERTIFIED
                obs = cert.evidence.get("obstructions", [])
                for k, ck in enumerate(cvec, start=1):
                    if not ck:
                        continue
                    target = (g ** k).to_literal()
                    sums = [o["sum"] for o in obs if target in o["members"]]
                    ok = ok and sums == [str(-ck)]
                failures += not ok
        c["detail"] = f"{cases} (presentation, c) instances, {failures} failures"
        c["ok"] = cases == 3 * (7 ** 4 - 1) and failures == 0


# 6


def test_criterion_6_covering_translate_identity():
    with criterion(6, "covering-translate identity", 5) as c:
        w = Window(1, 3)
        classes = [
            WVector.theta((2,), (-1,)) - WVector.theta((-2,), (1,)),
            WVector.theta((3,), (1,)) * 2 - WVector.theta((-3,), (-1,)) * 2
            + WVector.theta((1,), (3,)),
            WVector.theta((1,), (-2,), "1/3"),
        ]
        bases = [(1,), (1, 0), (2, -1), (0, 1, 1)]
        cases = failures = 0
        for v in classes:
            for base in bases:
                for m in range(1, 5):
                    for n in range(0, 5 - m):
                        for x in (1, -2, 3):
                            curves = [CurveDatum(base, x, Relation.EQUAL)] * m
                            curves += [CurveDatum(neg(base), -x, Relation.NEGATED)] * n
                            if len(base) > 1:
                                other = tuple(1 if i == 0 else 0 for i in range(len(base)))
                                if matrix_rank([base, other]) < 2:
                                    other = tuple(0 if i == 0 else 1 for i in range(len(base)))
                                curves.append(CurveDatum(other, 5, Relation.INDEPENDENT))
                            s = Scenario(Kind.IRREDUCIBLE, w, classes=(v,),
                                         curves=tuple(curves), coefficients=(1,))
                            ev = irreducible_certificate(s).evidence
                            expected = v * ((m + n) * x)
                            got = WVector.from_terms(
                                ((tuple(t["a"]), tuple(t["b"])), t["coeff"]) for t in ev["retracted"]
                            )
                            cases += 1
                            failures += not (ev["k"] == m + n and got == expected)
        c["detail"] = f"{cases} scenarios (m+n <= 4, m >= 1), {failures} failures"
        c["ok"] = failures == 0 and cases > 0


# 7


def _dense_vec(v, pairs):
    return [sympy.Rational(str(v[p])) if p in v else 0 for p in pairs]


def test_criterion_7_independence_and_antisymmetry():
    with criterion(7, "independence and antisymmetry", 5) as c:
        rng = random.Random(SEED)
        w = Window(1, 3)
        pairs_tuple, m = dense_relation_matrix(1, 3)
        pairs = enumerate_pairs(w)
        assert [(p.a, p.b) for p in pairs] == pairs_tuple
        base_rank = m.rank()
        wrong = 0
        full = proportional = anti_ok = anti_flagged = 0
        for _ in range(60):
            fam = [WVector((rng.choice(pairs), rng.randint(-3, 3)) for _ in range(3))
                   for _ in range(rng.randint(1, 3))]
            dense = m.col_join(sympy.Matrix([_dense_vec(v, pairs) for v in fam]))
            independent = dense.rank() - base_rank == len(fam)
            cert = independence_certificate(fam, w)
            wrong += (cert.verdict is Verdict.CERTIFIED) != independent
            full += independent
            # proportional family must be refused
            v = fam[0]
            prop = independence_certificate([v, v * rng.choice([-2, 3, "1/2"])], w)
            wrong += prop.verdict is not Verdict.NOT_CERTIFIED
            # equal modulo a window-internal four-term relation, so dependent
            a, b = rng.choice([p for p in pairs if w.contains_triple(p.a, p.b)])
            dup = independence_certificate([v, v + relation(a, b) * rng.randint(1, 3)], w)
            wrong += dup.verdict is not Verdict.NOT_CERTIFIED
            proportional += 1
            # built antisymmetric family
            anti = [u - iota_star(u) for u in fam]
            wrong += antisymmetry_check(anti, w).verdict is not Verdict.CERTIFIED
            anti_ok += 1
            # a family is flagged exactly when some iota v + v leaves the relation span
            violates = any(not in_row_span(m, _dense_vec(u + iota_star(u), pairs)) for u in fam)
            flagged = antisymmetry_check(fam, w).verdict is Verdict.NOT_CERTIFIED
            wrong += flagged != violates
            anti_flagged += flagged
        c["detail"] = (f"{full} full-rank families, {proportional} proportional and "
                       f"{proportional} relation-equivalent pairs refused, "
                       f"{anti_ok} antisymmetric certified, {anti_flagged} violations flagged, "
                       f"{wrong} wrong verdicts")
        c["ok"] = wrong == 0 and full > 0 and anti_flagged > 0


# 8


def test_criterion_8_quotient_rank_growth(tmp_path):
    with criterion(8, "quotient-rank growth", 120) as c:
        ranks = {n: quotient_rank(Window(1, n)) for n in range(2, 7)}
        oracle = {n: dense_quotient_rank(1, n) for n in range(2, 7)}
        out = tmp_path / "selftest.json"
        r = subprocess.run([sys.executable, "-m", "barbellcalc", "selftest", "--window", "2",
                            "--out", str(out)], capture_output=True, text=True)
        emitted = json.loads(out.read_text())["quotient_ranks"]
        c["detail"] = (f"ranks N=2..6 {list(ranks.values())}, oracle {list(oracle.values())}, "
                       f"emitted {emitted[1:6]}")
        c["ok"] = (ranks == oracle and emitted[1:6] == list(ranks.values())
                   and r.returncode == 0)


# 9


def test_criterion_9_determinism(tmp_path):
    with criterion(9, "determinism across thread counts", 120) as c:
        outputs = []
        for threads in ("1", "4"):
            out = tmp_path / f"selftest-{threads}.json"
            env = dict(os.environ, BARBELLCALC_THREADS=threads)
            subprocess.run([sys.executable, "-m", "barbellcalc", "selftest", "--window", "2",
                            "--out", str(out)], env=env, capture_output=True, check=True)
            outputs.append(out.read_bytes())
        c["detail"] = f"threads 1 vs 4, {len(outputs[0])} bytes, identical={outputs[0] == outputs[1]}"
        c["ok"] = outputs[0] == outputs[1]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
