"""JSON scenario and report files.

Rational quantities (coefficients, intersections, group ring coefficients)
travel as strings "p" or "p/q". Lattice coordinates, factor indices and
exponents may be JSON integers or integer strings. Floats are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .certify import Certificate, CurveDatum, Kind, Relation, Scenario
from .groupword import GroupPresentation
from .lattice import ThetaPair, Window, is_admissible
from .wspace import WVector

SCENARIO_SCHEMA = "barbellcalc/scenario/v1"
REPORT_SCHEMA = "barbellcalc/report/v1"


class ScenarioParseError(ValueError):
    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


def _int(x: Any, field: str) -> int:
    if isinstance(x, bool) or isinstance(x, float):
        raise ScenarioParseError(f"expected an integer, got {x!r}", field)
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise ScenarioParseError(f"expected an integer, got {x!r}", field)


def _rational(x: Any, field: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ScenarioParseError(f"expected an exact rational string, got {x!r}", field)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ScenarioParseError(f"expected an exact rational string, got {x!r}", field)


def _integral(x: Any, field: str) -> int:
    q = _rational(x, field)
    if q.denominator != 1:
        raise ScenarioParseError(f"expected an integer, got {x!r}", field)
    return int(q)


def _list(x: Any, field: str) -> list:
    if not isinstance(x, list):
        raise ScenarioParseError(f"expected a list, got {type(x).__name__}", field)
    return x


def _obj(x: Any, field: str) -> dict:
    if not isinstance(x, dict):
        raise ScenarioParseError(f"expected an object, got {type(x).__name__}", field)
    return x


def _get(d: dict, key: str, field: str):
    if key not in d:
        raise ScenarioParseError("missing required field", f"{field}.{key}")
    return d[key]


def _vec(x: Any, field: str, rank: int | None = None) -> tuple[int, ...]:
    v = tuple(_int(c, f"{field}[{i}]") for i, c in enumerate(_list(x, field)))
    if not v:
        raise ScenarioParseError("empty lattice vector", field)
    if rank is not None and len(v) != rank:
        raise ScenarioParseError(f"expected rank {rank}, got {len(v)}", field)
    return v


def _wvector(x: Any, field: str, rank: int) -> WVector:
    terms = []
    for i, t in enumerate(_list(x, field)):
        f = f"{field}[{i}]"
        t = _obj(t, f)
        a = _vec(_get(t, "a", f), f + ".a", rank)
        b = _vec(_get(t, "b", f), f + ".b", rank)
        if not is_admissible(a, b):
            raise ScenarioParseError(f"inadmissible pair a={a}, b={b}", f)
        terms.append((ThetaPair(a, b), _rational(_get(t, "coeff", f), f + ".coeff")))
    return WVector(terms)


def _word(pres: GroupPresentation, x: Any, field: str):
    syl = []
    for i, s in enumerate(_list(x, field)):
        s = _list(s, f"{field}[{i}]")
        if len(s) != 2:
            raise ScenarioParseError("a syllable is [factor, exponent]", f"{field}[{i}]")
        syl.append((_int(s[0], f"{field}[{i}][0]"), _int(s[1], f"{field}[{i}][1]")))
    try:
        return pres.word(syl)
    except ValueError as err:
        raise ScenarioParseError(str(err), field) from err


def scenario_from_dict(d: Any) -> Scenario:
    d = _obj(d, "$")
    schema = d.get("schema")
    if schema != SCENARIO_SCHEMA:
        raise ScenarioParseError(f"unsupported schema {schema!r}", "$.schema")
    try:
        kind = Kind(_get(d, "kind", "$"))
    except ValueError as err:
        raise ScenarioParseError(str(err), "$.kind") from err
    wd = _obj(_get(d, "window", "$"), "$.window")
    try:
        window = Window(_int(_get(wd, "rank", "$.window"), "$.window.rank"),
                        _int(_get(wd, "bound", "$.window"), "$.window.bound"))
    except ValueError as err:
        if isinstance(err, ScenarioParseError):
            raise
        raise ScenarioParseError(str(err), "$.window") from err
    sid = d.get("id", "scenario")
    if not isinstance(sid, str):
        raise ScenarioParseError("id must be a string", "$.id")
    synthetic = d.get("synthetic", False)
    anti = d.get("check_antisymmetry", False)
    for name, val in (("synthetic", synthetic), ("check_antisymmetry", anti)):
        if not isinstance(val, bool):
            raise ScenarioParseError("expected true or false", f"$.{name}")
    coeffs = tuple(
        _integral(c, f"$.coefficients[{i}]")
        for i, c in enumerate(_list(d.get("coefficients", []), "$.coefficients"))
    )
    kw: dict = dict(kind=kind, window=window, id=sid, coefficients=coeffs,
                    synthetic=synthetic, check_antisymmetry=anti)

    if kind in (Kind.INDEPENDENCE, Kind.IRREDUCIBLE):
        classes = tuple(
            _wvector(c, f"$.classes[{i}]", window.rank)
            for i, c in enumerate(_list(_get(d, "classes", "$"), "$.classes"))
        )
        kw["classes"] = classes
    if kind is Kind.IRREDUCIBLE:
        curves = []
        for i, c in enumerate(_list(_get(d, "curves", "$"), "$.curves")):
            f = f"$.curves[{i}]"
            c = _obj(c, f)
            try:
                rel = Relation(_get(c, "relation_to_base", f))
            except ValueError as err:
                raise ScenarioParseError(str(err), f + ".relation_to_base") from err
            curves.append(CurveDatum(
                _vec(_get(c, "image_class", f), f + ".image_class"),
                _integral(_get(c, "intersection", f), f + ".intersection"),
                rel,
            ))
        kw["curves"] = tuple(curves)
    if kind is Kind.REDUCIBLE:
        pd = _obj(_get(d, "presentation", "$"), "$.presentation")
        orders = tuple(
            _int(m, f"$.presentation.factor_orders[{i}]")
            for i, m in enumerate(_list(_get(pd, "factor_orders", "$.presentation"),
                                        "$.presentation.factor_orders"))
        )
        try:
            pres = GroupPresentation(orders)
        except ValueError as err:
            raise ScenarioParseError(str(err), "$.presentation.factor_orders") from err
        kw["presentation"] = pres
        kw["alpha1"] = _word(pres, _get(d, "alpha1", "$"), "$.alpha1")
        kw["alpha2"] = _word(pres, _get(d, "alpha2", "$"), "$.alpha2")
    return Scenario(**kw)


def parse_scenario(text: str) -> Scenario:
    try:
        data = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as err:
        raise ScenarioParseError(err.msg, line=err.lineno) from err
    except ScenarioParseError as err:
        raise ScenarioParseError(str(err)) from err
    return scenario_from_dict(data)


def _reject_float(s: str):
    raise ScenarioParseError(f"floating point literal {s} is not allowed; use \"p/q\"")


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def scenario_to_dict(s: Scenario) -> dict:
    """Inverse of scenario_from_dict, used for the shipped examples."""
    from .wspace import format_wvector

    d: dict = {
        "schema": SCENARIO_SCHEMA,
        "id": s.id,
        "kind": s.kind.value,
        "window": {"rank": s.window.rank, "bound": s.window.bound},
        "synthetic": s.synthetic,
        "coefficients": [str(c) for c in s.coefficients],
    }
    if s.kind in (Kind.INDEPENDENCE, Kind.IRREDUCIBLE):
        d["classes"] = [format_wvector(v) for v in s.classes]
    if s.kind is Kind.INDEPENDENCE:
        d["check_antisymmetry"] = s.check_antisymmetry
    if s.kind is Kind.IRREDUCIBLE:
        d["curves"] = [
            {"image_class": list(c.image_class), "intersection": str(c.intersection),
             "relation_to_base": c.relation_to_base.value}
            for c in s.curves
        ]
    if s.kind is Kind.REDUCIBLE:
        d["presentation"] = {"factor_orders": list(s.presentation.factor_orders)}
        d["alpha1"] = s.alpha1.to_literal()
        d["alpha2"] = s.alpha2.to_literal()
    return d


def _plain(x: Any) -> Any:
    """Normalize evidence into JSON-native values (lists, dicts, str, int, bool)."""
    return json.loads(json.dumps(x, sort_keys=True))


@dataclass(frozen=True)
class Report:
    scenario_id: str
    verdict: str
    window: dict
    evidence: dict
    timing: str | None = None

    @classmethod
    def from_certificate(cls, s: Scenario, cert: Certificate, timing: str | None = None) -> "Report":
        return cls(
            s.id,
            cert.verdict.value,
            {"rank": s.window.rank, "bound": s.window.bound},
            _plain(cert.evidence),
            timing,
        )

    def to_dict(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "scenario_id": self.scenario_id,
            "verdict": self.verdict,
            "window": self.window,
            "evidence": self.evidence,
            "timing": self.timing,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        if d.get("schema") != REPORT_SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(d["scenario_id"], d["verdict"], d["window"], d["evidence"], d["timing"])


def dumps(d: Any) -> str:
    return json.dumps(d, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
