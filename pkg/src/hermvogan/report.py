"""JSON reports: exact numbers travel as strings ("3/2", "1-i", "(1)*sqrt(3)")."""
from __future__ import annotations

from fractions import Fraction as Q
from typing import Any

from .classify import (
    BalancedVerdict,
    MetricParameters,
    Method,
    PluriclosedVerdict,
    balanced_columns,
    construct_compatible_ell,
    decide_balanced,
    decide_pluriclosed,
    verify_balanced_witness,
    verify_pluriclosed_witness,
)
from .dsl import Elaborated, diagram_text
from .exact import format_gaussian, format_surd
from .lpexact import Dual, Primal, verify_certificate
from .regstruct import (
    EllSubspace,
    construct_default_ell,
    enumerate_delta0,
    make_structure,
    moduli_dim,
)
from .rootsys import identify, type_label
from .tables import algebra_name
from .vogan import Table1Method, mixed_family, table1_membership


class MethodDisagreement(RuntimeError):
    """Two independent routes disagree or a certificate fails its check: a bug."""


def q(x) -> str:
    return str(Q(x))


def _one_based(vs) -> list[int]:
    return [v + 1 for v in sorted(vs)]


def certificate_json(cert) -> dict:
    if isinstance(cert, Primal):
        return {"kind": "Primal", "x": [q(v) for v in cert.x], "t": [q(v) for v in cert.t]}
    return {"kind": "Dual", "y": [q(v) for v in cert.y]}


def certificate_from_json(d: dict):
    if d["kind"] == "Primal":
        return Primal(tuple(Q(v) for v in d["x"]), tuple(Q(v) for v in d["t"]))
    return Dual(tuple(Q(v) for v in d["y"]))


def ell_json(ell: EllSubspace) -> list[list[str]]:
    return [[format_surd(x) for x in row] for row in ell.rows]


def _rootmap(m: dict, fmt) -> list[dict]:
    return [{"root": list(a), "value": fmt(v)} for a, v in sorted(m.items(), key=lambda kv: (sum(kv[0]), kv[0]))]


def metric_json(mp: MetricParameters) -> dict:
    return {"lambda": _rootmap(mp.lam, q), "mu": _rootmap(mp.mu, format_gaussian), "D": _rootmap(mp.D, q)}


def pluriclosed_json(v: PluriclosedVerdict, ell: EllSubspace) -> dict:
    out: dict[str, Any] = {"ell": ell_json(ell), "pluriclosed": v.yes,
                           "reason": v.reason.value if v.reason else None,
                           "kappa": None, "certificate": None}
    if v.certificate is not None:
        out["certificate"] = certificate_json(v.certificate)
    if v.witness is not None:
        out["kappa"] = [q(k) for k in v.witness.kappa]
    if v.J is not None:
        out["J"] = [[format_surd(x) for x in row] for row in v.J]
    return out


def components_json(vd) -> list[dict]:
    out = []
    for comp in vd.components:
        letter, rank, _ = identify(vd.cartan, comp.dynkin[0])
        types = "~".join(f"{letter}{rank}" for _ in comp.dynkin)
        entry = {"vertices": _one_based(comp.vertices), "type": types, "kind": comp.kind.value,
                 "table1": table1_membership(vd, comp), "mixed_family": None}
        if comp.is_inner:
            entry["table1_methods"] = {m.value: table1_membership(vd, comp, m) for m in Table1Method}
        if comp.kind.value == "Mixed":
            entry["mixed_family"] = mixed_family(vd, comp)
        out.append(entry)
    return out


def _check_balanced(structure, v: BalancedVerdict) -> None:
    prob = balanced_columns(structure.vd, structure.delta0).problem
    if not verify_certificate(prob, v.certificate):
        raise MethodDisagreement("balanced certificate failed verification")
    if v.witness is not None and not verify_balanced_witness(structure, v.witness):
        raise MethodDisagreement("balanced witness failed verification")


def balanced_json(structure, methods: str = "both") -> tuple[dict, BalancedVerdict]:
    chosen = {"char": [Method.CHARACTERIZATION], "oracle": [Method.ORACLE],
              "both": [Method.CHARACTERIZATION, Method.ORACLE]}[methods]
    verdicts = {m: decide_balanced(structure, m) for m in chosen}
    for v in verdicts.values():
        _check_balanced(structure, v)
    values = {v.balanced for v in verdicts.values()}
    if len(values) != 1:
        raise MethodDisagreement(
            "balanced methods disagree: " + ", ".join(f"{m.value}={v.balanced}" for m, v in verdicts.items()))
    main = verdicts.get(Method.ORACLE) or verdicts[Method.CHARACTERIZATION]
    out = {"balanced": main.balanced,
           "methods": {m.value: v.balanced for m, v in verdicts.items()},
           "certificate": certificate_json(main.certificate),
           "witness": metric_json(main.witness) if main.witness else None}
    return out, main


def _pluri(vd, d0, ell) -> tuple[dict, PluriclosedVerdict]:
    s = make_structure(vd, d0, ell)
    v = decide_pluriclosed(s)
    if v.witness is not None and not verify_pluriclosed_witness(s, v.witness, v.J):
        raise MethodDisagreement("pluriclosed witness failed verification")
    if v.certificate is not None and not v.yes:
        from .classify import kappa_problem
        if not verify_certificate(kappa_problem(vd, v.J), v.certificate):
            raise MethodDisagreement("kappa certificate failed verification")
    return pluriclosed_json(v, ell), v


def classify_report(el: Elaborated, best_ell: bool = False, methods: str = "both",
                    all_delta0: bool = True) -> dict:
    """Everything the deciders say about one diagram with one Delta0.

    Raises MethodDisagreement when two routes to the same answer differ."""
    vd, d0 = el.vd, el.delta0
    structure = make_structure(vd, d0, el.ell)
    bal, bal_v = balanced_json(structure, methods)
    report: dict[str, Any] = {
        "input": diagram_text(vd, d0 if el.delta0_given or d0 else None, el.ell),
        "type": type_label(vd.cartan),
        "rank": vd.rank,
        "algebra": algebra_name(vd),
        "inner": vd.is_inner,
        "delta0": _one_based(d0),
        "components": components_json(vd),
        "balanced": bal,
    }
    inner = all(c.is_inner for c in vd.components)
    plur: dict[str, Any] = {"applicable": vd.rank % 2 == 0, "reason": None,
                            "default_ell": None, "given_ell": None, "best_ell": None, "some_ell": None}
    found: list[bool] = []
    if vd.rank % 2:
        plur["reason"] = "OddRank"
    else:
        j, v = _pluri(vd, d0, construct_default_ell(vd, d0))
        plur["default_ell"] = j
        found.append(v.yes)
        if el.ell is not None:
            j, v = _pluri(vd, d0, el.ell)
            plur["given_ell"] = j
            found.append(v.yes)
        if inner and not d0:
            j, v = _pluri(vd, d0, construct_compatible_ell(vd))
            if best_ell:
                plur["best_ell"] = j
            found.append(v.yes)
        elif not inner:
            plur["reason"] = "NotInner"
        plur["some_ell"] = any(found)
    report["pluriclosed"] = plur
    report["exclusivity"] = not (bal_v.balanced and any(found))
    if not report["exclusivity"]:
        raise MethodDisagreement("a structure came out both balanced and pluriclosed")
    rows = []
    for dd in (enumerate_delta0(vd) if all_delta0 else [d0]):
        entry = {"delta0": _one_based(dd), "dim": moduli_dim(vd, dd) if vd.rank % 2 == 0 else None}
        if dd == d0:
            entry["balanced"] = bal_v.balanced
        else:
            entry["balanced"] = decide_balanced(make_structure(vd, dd)).balanced
        rows.append(entry)
    report["moduli"] = rows
    report["error"] = None
    return report


def witness_report(el: Elaborated) -> dict:
    vd, d0 = el.vd, el.delta0
    structure = make_structure(vd, d0, el.ell)
    out: dict[str, Any] = {"input": diagram_text(vd, d0 if el.delta0_given or d0 else None, el.ell),
                           "balanced": None, "pluriclosed": None}
    v = decide_balanced(structure)
    if v.witness is not None:
        out["balanced"] = dict(metric_json(v.witness), verified=verify_balanced_witness(structure, v.witness))
    if vd.rank % 2 == 0:
        ell = el.ell
        if ell is None and not d0 and all(c.is_inner for c in vd.components):
            ell = construct_compatible_ell(vd)
        if ell is not None:
            s = make_structure(vd, d0, ell)
            pv = decide_pluriclosed(s)
            if pv.witness is not None:
                w = pv.witness
                out["pluriclosed"] = {
                    "ell": ell_json(ell),
                    "kappa": [q(k) for k in w.kappa],
                    "lambda": _rootmap(w.lam, q),
                    "cartan_form": [[q(x) for x in row] for row in w.cartan_form],
                    "verified": verify_pluriclosed_witness(s, w, pv.J),
                }
    return out


# JSON schema --------------------------------------------------------------------------

_RAT = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_CERT = {
    "oneOf": [
        {"type": "object", "required": ["kind", "x", "t"],
         "properties": {"kind": {"const": "Primal"}, "x": {"type": "array", "items": _RAT},
                        "t": {"type": "array", "items": _RAT}}},
        {"type": "object", "required": ["kind", "y"],
         "properties": {"kind": {"const": "Dual"}, "y": {"type": "array", "items": _RAT}}},
    ]
}
_ROOTVAL = {"type": "array", "items": {"type": "object", "required": ["root", "value"],
                                         "properties": {"root": {"type": "array", "items": {"type": "integer"}},
                                                        "value": {"type": "string"}}}}
_PLURI = {"oneOf": [{"type": "null"}, {
    "type": "object", "required": ["ell", "pluriclosed", "reason", "kappa", "certificate"],
    "properties": {"ell": {"type": "array"}, "pluriclosed": {"type": "boolean"},
                   "reason": {"enum": [None, "NotInner", "NotTable1", "NoKappa"]},
                   "kappa": {"oneOf": [{"type": "null"}, {"type": "array", "items": _RAT}]},
                   "certificate": {"oneOf": [{"type": "null"}, _CERT]}}}]}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["input", "type", "rank", "algebra", "inner", "delta0", "components",
                 "balanced", "pluriclosed", "moduli", "exclusivity", "error"],
    "properties": {
        "seq": {"type": "integer"},
        "input": {"type": "string"},
        "type": {"type": "string"},
        "rank": {"type": "integer", "minimum": 1},
        "algebra": {"type": ["string", "null"]},
        "inner": {"type": "boolean"},
        "delta0": {"type": "array", "items": {"type": "integer"}},
        "components": {"type": "array", "items": {
            "type": "object", "required": ["vertices", "type", "kind", "table1"],
            "properties": {"kind": {"enum": ["Compact", "Inner", "ComplexType", "Mixed"]},
                           "table1": {"type": "boolean"}}}},
        "balanced": {"type": "object", "required": ["balanced", "methods", "certificate", "witness"],
                     "properties": {"balanced": {"type": "boolean"}, "certificate": _CERT,
                                    "witness": {"oneOf": [{"type": "null"}, {
                                        "type": "object", "required": ["lambda", "mu", "D"],
                                        "properties": {"lambda": _ROOTVAL, "mu": _ROOTVAL, "D": _ROOTVAL}}]}}},
        "pluriclosed": {"type": "object",
                        "required": ["applicable", "reason", "default_ell", "given_ell", "best_ell", "some_ell"],
                        "properties": {"applicable": {"type": "boolean"},
                                       "default_ell": _PLURI, "given_ell": _PLURI, "best_ell": _PLURI,
                                       "some_ell": {"type": ["boolean", "null"]}}},
        "moduli": {"type": "array", "items": {
            "type": "object", "required": ["delta0", "dim", "balanced"],
            "properties": {"dim": {"type": ["integer", "null"]}, "balanced": {"type": "boolean"}}}},
        "exclusivity": {"type": "boolean"},
        "error": {"type": ["string", "null"]},
    },
}
