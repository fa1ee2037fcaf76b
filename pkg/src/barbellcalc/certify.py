"""Certificate pipelines.

Three shapes: independence (and iota-antisymmetry) of supplied invariant
vectors in the truncated W(Y_0); nonvanishing of the retracted invariant
summed over covering translates of a curve; and the conjugacy obstruction
for the twisted loop class in a free product.

Certificates are one-sided. NotCertified only means no obstruction was seen
in the window used.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groupring import (
    Obstruction,
    Solvable,
    conj_action,
    dax_composite,
    minus_conj_solvable,
)
from .groupword import Word, is_two_torsion, multiply, orbit_step
from .embpi1 import (
    NotConjugate,
    are_conjugate_same_group_part,
    loop_class_standard,
    loop_class_twisted,
    loop_class_twisted_closed_form,
)
from .lattice import ThetaPair, Window, neg
from .linalg import Echelon, matrix_rank
from .wspace import (
    WindowError,
    WVector,
    build_relation_basis,
    check_support,
    format_wvector,
    iota_star,
    pushforward,
    reduce,
    required_bound,
    retract,
)


class PreconditionError(ValueError):
    """Scenario data violates a hypothesis of the pipeline."""


class Verdict(str, enum.Enum):
    CERTIFIED = "Certified"
    NOT_CERTIFIED = "NotCertified"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    evidence: dict = field(default_factory=dict)


class Relation(str, enum.Enum):
    INDEPENDENT = "independent"
    EQUAL = "equal"
    NEGATED = "negated"


@dataclass(frozen=True)
class CurveDatum:
    image_class: tuple[int, ...]
    intersection: int
    relation_to_base: Relation


class Kind(str, enum.Enum):
    INDEPENDENCE = "independence"
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"


@dataclass(frozen=True)
class Scenario:
    kind: Kind
    window: Window
    id: str = "scenario"
    classes: tuple[WVector, ...] = ()
    curves: tuple[CurveDatum, ...] = ()
    coefficients: tuple[int, ...] = ()
    presentation: object = None
    alpha1: Word | None = None
    alpha2: Word | None = None
    check_antisymmetry: bool = False
    synthetic: bool = False


def _inconclusive(err: WindowError, vectors: Sequence[WVector], w: Window) -> Certificate:
    need = max((required_bound(v) for v in vectors), default=w.bound)
    return Certificate(
        Verdict.INCONCLUSIVE,
        {"reason": str(err), "required_window": {"rank": w.rank, "bound": need}},
    )


# independence / antisymmetry


def independence_certificate(classes: Sequence[WVector], w: Window) -> Certificate:
    """Certified iff the classes stay linearly independent modulo relations."""
    try:
        for v in classes:
            check_support(v, w)
    except WindowError as err:
        return _inconclusive(err, classes, w)
    rb = build_relation_basis(w)
    reduced = [reduce(v, rb) for v in classes]
    ech = Echelon(reduced)
    certified = bool(classes) and ech.rank == len(classes)
    evidence = {
        "rank": ech.rank,
        "count": len(classes),
        "reduced": [format_wvector(r) for r in reduced],
        "echelon": [format_wvector(WVector._raw(dict(r.items()))) for r in ech.rows()],
        "relation_pivots": [[list(p.a), list(p.b)] for p in sorted(rb._ech.pivots)],
    }
    return Certificate(Verdict.CERTIFIED if certified else Verdict.NOT_CERTIFIED, evidence)


def antisymmetry_check(classes: Sequence[WVector], w: Window) -> Certificate:
    """Certified iff iota_*(v) + v reduces to zero for every class."""
    try:
        for v in classes:
            check_support(v, w)
    except WindowError as err:
        return _inconclusive(err, classes, w)
    rb = build_relation_basis(w)
    failures = []
    for idx, v in enumerate(classes):
        residue = reduce(iota_star(v) + v, rb)
        if residue:
            failures.append({"index": idx, "residue": format_wvector(residue)})
    verdict = Verdict.NOT_CERTIFIED if failures else Verdict.CERTIFIED
    return Certificate(verdict, {"checked": len(classes), "failures": failures})


# irreducible case: covering translates


def _column(c: Sequence[int]) -> tuple[tuple[int], ...]:
    return tuple((int(x),) for x in c)


def _validate_curves(curves: Sequence[CurveDatum]) -> None:
    if not curves:
        raise PreconditionError("irreducible scenario needs at least one curve")
    base = curves[0]
    if base.relation_to_base is not Relation.EQUAL:
        raise PreconditionError("the first curve is the base curve and must be 'equal'")
    c1 = tuple(base.image_class)
    if not any(c1):
        raise PreconditionError("base curve class must be nonzero")
    for idx, cv in enumerate(curves):
        ci = tuple(cv.image_class)
        if len(ci) != len(c1):
            raise PreconditionError(f"curve {idx}: class rank {len(ci)} != base rank {len(c1)}")
        if cv.relation_to_base is Relation.EQUAL:
            if ci != c1 or cv.intersection != base.intersection:
                raise PreconditionError(f"curve {idx}: 'equal' needs the base class and intersection")
        elif cv.relation_to_base is Relation.NEGATED:
            if ci != neg(c1) or cv.intersection != -base.intersection:
                raise PreconditionError(
                    f"curve {idx}: 'negated' needs minus the base class and intersection"
                )
        elif not any(ci) or matrix_rank([c1, ci]) != 2:
            raise PreconditionError(f"curve {idx}: 'independent' class must not be parallel to base")


def combined_class(classes: Sequence[WVector], coefficients: Sequence[int]) -> WVector:
    if not classes:
        raise PreconditionError("no invariant classes supplied")
    if len(coefficients) != len(classes):
        raise PreconditionError(
            f"{len(coefficients)} coefficients for {len(classes)} classes"
        )
    if not any(coefficients):
        raise PreconditionError("all coefficients are zero")
    v = WVector()
    for c, cls in zip(coefficients, classes):
        v = v + cls * c
    return v


def irreducible_certificate(s: Scenario) -> Certificate:
    """Retract the summed translate contributions along the base curve."""
    _validate_curves(s.curves)
    v = combined_class(s.classes, s.coefficients)
    w = s.window
    try:
        check_support(v, w)
    except WindowError as err:
        return _inconclusive(err, [v], w)

    base = s.curves[0]
    base_map = _column(base.image_class)
    psi = WVector()
    psi_literal = WVector()
    tally = {r.value: 0 for r in Relation}
    for cv in s.curves:
        tally[cv.relation_to_base.value] += 1
        psi_literal = psi_literal + pushforward(_column(cv.image_class), v) * cv.intersection
        if cv.relation_to_base is Relation.NEGATED:
            # reorient the translate: class and intersection both flip, the
            # supplied vector is unchanged under conjugation by iota
            psi = psi + pushforward(_column(neg(cv.image_class)), v) * (-cv.intersection)
        else:
            psi = psi + pushforward(_column(cv.image_class), v) * cv.intersection
    k = tally["equal"] + tally["negated"]
    retracted = retract(base_map, psi)
    closed_form = v * (k * base.intersection)
    identity_holds = retracted == closed_form

    rb = build_relation_basis(w)
    reduced = reduce(retracted, rb)
    literal_gap = reduce(retract(base_map, psi_literal) - retracted, rb)
    certified = identity_holds and bool(reduced)
    evidence = {
        "k": k,
        "tally": tally,
        "base_intersection": base.intersection,
        "retracted": format_wvector(retracted),
        "closed_form": format_wvector(closed_form),
        "identity_holds": identity_holds,
        "reduced": format_wvector(reduced),
        "literal_agrees_mod_relations": not literal_gap,
        "synthetic_classes": s.synthetic,
    }
    return Certificate(Verdict.CERTIFIED if certified else Verdict.NOT_CERTIFIED, evidence)


# reducible case: conjugacy obstruction


def _obstruction_json(o: Obstruction) -> dict:
    return {
        "representative": o.representative.to_literal(),
        "members": [m.to_literal() for m in o.members],
        "sum": str(o.total),
    }


def reducible_certificate(s: Scenario) -> Certificate:
    a1, a2 = s.alpha1, s.alpha2
    if a1 is None or a2 is None:
        raise PreconditionError("reducible scenario needs alpha1 and alpha2")
    if a1.is_identity or a2.is_identity:
        raise PreconditionError("alpha1 and alpha2 must be nontrivial")
    if is_two_torsion(a2):
        raise PreconditionError("alpha2 must not be 2-torsion")
    c = list(s.coefficients)
    if not c or not any(c):
        raise PreconditionError("coefficient vector c must be nonzero")

    alpha = multiply(a1, a2)
    try:
        beta0 = dax_composite(c, alpha)
    except ValueError as err:
        raise PreconditionError(str(err)) from err
    twisted = loop_class_twisted(a1, a2, beta0)
    if twisted != loop_class_twisted_closed_form(a1, a2, beta0):
        raise AssertionError("semidirect product closed form mismatch")
    if twisted.group_part != loop_class_standard(a1, a2).group_part:
        raise AssertionError("loop classes have different group parts")

    direct = are_conjugate_same_group_part(twisted.ring_part, alpha)
    # normalized form after conjugating by alpha1^-1
    g = multiply(a2, a1)
    rhs = beta0 - conj_action(a2, beta0)
    normalized = minus_conj_solvable(g, rhs)
    if isinstance(direct, NotConjugate) == isinstance(normalized, Solvable):
        raise AssertionError("direct and normalized conjugacy verdicts disagree")

    evidence: dict = {
        "alpha": alpha.to_literal(),
        "beta0": beta0.to_literal(),
        "twisted_ring_part": twisted.ring_part.to_literal(),
        "normalized_conjugator": g.to_literal(),
        "normalized_rhs": rhs.to_literal(),
    }
    if isinstance(direct, NotConjugate):
        expected = []
        for k, ck in enumerate(c, start=1):
            if not ck:
                continue
            word = g ** k
            found = next((o.total for o in normalized.obstructions if word in o.members), 0)
            expected.append(
                {"k": k, "orbit_of": word.to_literal(), "expected": str(-ck), "found": str(found)}
            )
        evidence["obstructions"] = [_obstruction_json(o) for o in normalized.obstructions]
        evidence["direct_obstructions"] = [_obstruction_json(o) for o in direct.obstructions]
        evidence["expected_orbit_sums"] = expected
        return Certificate(Verdict.CERTIFIED, evidence)
    evidence["conjugator_ring_part"] = direct.witness.ring_part.to_literal()
    return Certificate(Verdict.NOT_CERTIFIED, evidence)


def run_scenario(s: Scenario) -> Certificate:
    if s.kind is Kind.INDEPENDENCE:
        ind = independence_certificate(s.classes, s.window)
        if not s.check_antisymmetry or ind.verdict is Verdict.INCONCLUSIVE:
            return ind
        anti = antisymmetry_check(s.classes, s.window)
        both = ind.verdict is Verdict.CERTIFIED and anti.verdict is Verdict.CERTIFIED
        return Certificate(
            Verdict.CERTIFIED if both else Verdict.NOT_CERTIFIED,
            {"independence": ind.evidence, "antisymmetry": anti.evidence},
        )
    if s.kind is Kind.IRREDUCIBLE:
        return irreducible_certificate(s)
    if s.kind is Kind.REDUCIBLE:
        return reducible_certificate(s)
    raise PreconditionError(f"unknown scenario kind {s.kind}")


# evidence re-verification


def _parse_wvec(items) -> WVector:
    return WVector((ThetaPair(tuple(t["a"]), tuple(t["b"])), Fraction(t["coeff"])) for t in items)


def verify_evidence(kind: Kind, cert: Certificate, scenario: Scenario | None = None) -> bool:
    """Re-check a Certified certificate from its evidence alone.

    Independence: the reduced vectors avoid every relation pivot and have full
    rank. Irreducible: the retracted vector is a nonzero vector free of relation
    pivots and equals k * #(sigma . gamma_1) times the class. Reducible: each
    reported orbit sum is nonzero and, given the scenario, the listed members
    are the support words of the right-hand side in one orbit.
    """
    if cert.verdict is not Verdict.CERTIFIED:
        return False
    ev = cert.evidence
    if kind is Kind.INDEPENDENCE:
        ev = ev.get("independence", ev)
        pivots = {ThetaPair(tuple(a), tuple(b)) for a, b in ev["relation_pivots"]}
        reduced = [_parse_wvec(r) for r in ev["reduced"]]
        if any(p in pivots for r in reduced for p in r.keys()):
            return False
        return Echelon(reduced).rank == ev["count"] == len(reduced)
    if kind is Kind.IRREDUCIBLE:
        red = _parse_wvec(ev["reduced"])
        return (
            bool(red)
            and ev["identity_holds"]
            and _parse_wvec(ev["retracted"]) == _parse_wvec(ev["closed_form"])
            and ev["k"] >= 1
        )
    if kind is Kind.REDUCIBLE:
        obs = ev["obstructions"]
        if not obs or any(Fraction(o["sum"]) == 0 for o in obs):
            return False
        rhs_terms = {tuple(map(tuple, t["word"])): int(t["coeff"]) for t in ev["normalized_rhs"]}
        for o in obs:
            members = [tuple(map(tuple, m)) for m in o["members"]]
            if sum(rhs_terms.get(m, 0) for m in members) != int(o["sum"]):
                return False
        if scenario is not None:
            pres = scenario.alpha1.pres
            g = pres.word(ev["normalized_conjugator"])
            for o in obs:
                rep = pres.word(o["representative"])
                if any(orbit_step(g, rep, pres.word(m)) is None for m in o["members"]):
                    return False
        return all(Fraction(e["found"]) == Fraction(e["expected"]) for e in ev["expected_orbit_sums"])
    return False
