"""Report documents: assembly from library results and independent re-verification.

Every witness is stored with enough exact data (triples, integer
coefficients, matrices, field coordinates) for ``verify_report`` to check it
from the echoed input alone, without repeating any search.
"""

from __future__ import annotations

from typing import Any

from .classifier import (CubicArithmetic, Generic, IsogenyClassReport, NonIsomorphicWitness,
                         SplitProduct)
from .elliptic import (IsogenyWitness, ModularMatrix, PeriodRatio, in_fundamental_domain,
                       isogenous, isomorphic, period_ratio, reduce_fundamental)
from .exact.field import generated_subfield, minimal_polynomial, q_dependence
from .exact.integer import det
from .io import SCHEMA_VERSION, element_from_json, element_to_json, parse_document, witness_to_json
from .lattice import NormalizedLattice, QuotientCurve, normalize_with, quotient_curve, validate
from .orbits import ProjectivePoint

__all__ = ["MATRIX_LIMIT", "original_coefficients", "normalized_json", "classification_json",
           "quotients_json", "isogeny_json", "reduce_json", "pairwise_json", "witness_json",
           "orbit_json", "verify_report"]

# full pairwise matrices are embedded only up to this many curves
MATRIX_LIMIT = 64


def original_coefficients(nl: NormalizedLattice, triple) -> list[int]:
    """Integer coefficients over the input generators of the lattice vector gamma_{m,n,p}."""
    m, n, p = triple
    c = (n, m, p)
    return [sum(c[k] * nl.recombination[k][j] for k in range(3)) for j in range(3)]


def _vec(v) -> list:
    return [element_to_json(z) for z in v]


def normalized_json(nl: NormalizedLattice) -> dict:
    I = nl.relations
    return {
        "alpha": element_to_json(nl.alpha),
        "beta": element_to_json(nl.beta),
        "recombination": [list(r) for r in nl.recombination],
        "relation_space": {"dim": I.dim, "basis": [[str(x) for x in b] for b in I.basis]},
    }


def classification_json(cls) -> dict:
    nl = cls.normalized
    out: dict[str, Any] = {"tag": cls.tag, "normalized": normalized_json(nl)}
    if isinstance(cls, SplitProduct):
        out.update({
            "gamma0": {"triple": list(cls.gamma0),
                       "coefficients": original_coefficients(nl, cls.gamma0),
                       "vector": _vec(cls.gamma0_vector)},
            "h_basis": [{"triple": list(t), "coefficients": original_coefficients(nl, t),
                         "vector": _vec(v)} for t, v in zip(cls.h_triples, cls.h_basis)],
            "functional": _vec(cls.functional),
            "chart_ratio": element_to_json(cls.chart_ratio),
            "e_tau": element_to_json(cls.e_tau.tau),
            "also_cubic": cls.also_cubic,
        })
    elif isinstance(cls, CubicArithmetic):
        out.update({
            "primitive_element": element_to_json(cls.primitive_element),
            "primitive_min_poly": cls.primitive_min_poly.to_strings(),
            "reference_tau": element_to_json(cls.reference_tau.tau),
        })
    elif isinstance(cls, Generic):
        out.update({
            "degree": cls.degree,
            "exhausted": cls.exhausted,
            "witness": None if cls.triples is None else {
                "triples": [list(t) for t in cls.triples],
                "taus": [element_to_json(t.tau) for t in cls.taus],
                "dependence": [],
                "height": cls.certificate_height,
            },
        })
    return out


def _quotient_entry(q: QuotientCurve, reduced: PeriodRatio) -> dict:
    return {"triple": list(q.triple), "tau": element_to_json(q.tau.tau),
            "reduced_tau": element_to_json(reduced.tau),
            "basis_change": [list(r) for r in q.basis_change]}


def quotients_json(curves, reduced) -> list[dict]:
    return [_quotient_entry(q, r) for q, r in zip(curves, reduced)]


def isogeny_json(rep: IsogenyClassReport) -> dict:
    classes = []
    for cl in rep.classes:
        classes.append({
            "representative": cl.representative,
            "members": [{"index": i, "witness": witness_to_json(cl.witnesses[i])}
                        for i in cl.members],
        })
    out = {"height": rep.height, "all_isogenous": rep.all_isogenous, "classes": classes,
           "first_failing_pair": (None if rep.first_failing_pair() is None
                                  else [list(t) for t in rep.first_failing_pair()])}
    if len(rep.curves) <= MATRIX_LIMIT:
        out["matrix"] = [[None if w is None else witness_to_json(w) for w in row]
                         for row in rep.matrix()]
    return out


def reduce_json(taus) -> list[dict]:
    out = []
    for t in taus:
        pr = PeriodRatio.of(t)
        red, M = reduce_fundamental(pr)
        out.append({"tau": element_to_json(t), "reduced": element_to_json(red.tau),
                    "matrix": list(M.as_tuple())})
    return out


def pairwise_json(taus) -> dict:
    prs = [PeriodRatio.of(t) for t in taus]
    matrix = []
    for a in prs:
        row = []
        for b in prs:
            w = isogenous(a, b)
            iso = isomorphic(a, b)
            row.append({"isogeny": None if w is None else witness_to_json(w),
                        "isomorphism": None if iso is None else list(iso.as_tuple())})
        matrix.append(row)
    return {"taus": [element_to_json(t) for t in taus],
            "all_isogenous": all(e["isogeny"] is not None for r in matrix for e in r),
            "matrix": matrix}


def witness_json(w: NonIsomorphicWitness) -> dict:
    return {"alpha": element_to_json(w.alpha), "tau": element_to_json(w.tau),
            "threshold_ceiling": w.threshold_ceiling, "m": w.m, "n": w.n,
            "tau_m": element_to_json(w.tau_m.tau), "tau_n": element_to_json(w.tau_n.tau),
            "reduced_m": element_to_json(w.reduced_m.tau),
            "reduced_n": element_to_json(w.reduced_n.tau),
            "isogeny": (lambda g: None if g is None else witness_to_json(g))(
                isogenous(w.tau_m, w.tau_n))}


def orbit_json(points, same: bool, matrix) -> dict:
    return {"points": [None if p is None else element_to_json(p) for p in points],
            "same_orbit": same,
            "matrix": None if matrix is None else witness_to_json(matrix)}


# --- verification ------------------------------------------------------------

def _witness(values) -> IsogenyWitness:
    from .exact.rational import parse_rational
    return IsogenyWitness(*(parse_rational(str(v)) for v in values))


def _verify_classification(doc, data: dict) -> dict:
    F = doc.field
    el = lambda v: element_from_json(F, v)
    lattice = validate(F, doc.require_generators())
    nl = normalize_with(lattice, [tuple(r) for r in data["normalized"]["recombination"]])
    checks = {"normalized": nl.alpha == el(data["normalized"]["alpha"])
              and nl.beta == el(data["normalized"]["beta"])}
    tag = data["tag"]
    if tag == "SplitProduct":
        rows = [data["gamma0"]["coefficients"]] + [h["coefficients"] for h in data["h_basis"]]
        vecs = [lattice.combination(r) for r in rows]
        h1, h2 = vecs[1], vecs[2]
        phi = [el(v) for v in data["functional"]]
        mu = el(data["chart_ratio"])
        pairing = lambda v: phi[0] * v[0] + phi[1] * v[1]
        checks["basis_of_gamma"] = abs(det(rows)) == 1
        checks["h_on_complex_line"] = (h2[0] == mu * h1[0] and h2[1] == mu * h1[1])
        checks["functional_kills_h"] = not pairing(h1) and not pairing(h2) and bool(pairing(vecs[0]))
        red, _ = reduce_fundamental(period_ratio(F.one, mu))
        checks["e_tau"] = red.tau == el(data["e_tau"]) and in_fundamental_domain(red.tau)
        # dim I = 2 exactly when 1, alpha, beta satisfy one rational relation
        checks["relation_dim"] = len(q_dependence([F.one, nl.alpha, nl.beta])) == 1
    elif tag == "CubicArithmetic":
        prim = el(data["primitive_element"])
        checks["degree_three"] = minimal_polynomial(prim).degree == 3
        span = [F.one, prim, prim * prim]
        checks["alpha_beta_in_field"] = all(q_dependence(span + [x]) for x in (nl.alpha, nl.beta))
        checks["independent"] = not q_dependence([F.one, nl.alpha, nl.beta])
        checks["reference_tau"] = period_ratio(F.one, prim).tau == el(data["reference_tau"])
    elif tag == "Generic":
        checks["degree"] = generated_subfield([nl.alpha, nl.beta]).degree == data["degree"] >= 4
        w = data.get("witness")
        if w is not None:
            curves = [quotient_curve(nl, tuple(t)) for t in w["triples"]]
            checks["witness_taus"] = all(c.tau.tau == el(t) for c, t in zip(curves, w["taus"]))
            x, y = curves[0].tau.tau, curves[1].tau.tau
            checks["not_isogenous"] = not q_dependence([F.one, x, y, x * y])
    return checks


def _verify_quotients(doc, nl, entries) -> bool:
    F = doc.field
    for e in entries:
        q = quotient_curve(nl, tuple(e["triple"]))
        if q.tau.tau != element_from_json(F, e["tau"]) or not q.verify():
            return False
        if reduce_fundamental(q.tau)[0].tau != element_from_json(F, e["reduced_tau"]):
            return False
    return True


def _verify_isogeny(doc, taus, data) -> bool:
    prs = [PeriodRatio(t) for t in taus]
    seen = set()
    for cl in data["classes"]:
        rep = prs[cl["representative"]]
        for m in cl["members"]:
            if not _witness(m["witness"]).verifies(rep.tau, prs[m["index"]].tau):
                return False
            seen.add(m["index"])
    if seen != set(range(len(prs))):
        return False
    # distinct class representatives must not be isogenous
    reps = [prs[cl["representative"]] for cl in data["classes"]]
    if any(isogenous(a, b) is not None for k, a in enumerate(reps) for b in reps[k + 1:]):
        return False
    if data["all_isogenous"] != (len(reps) <= 1):
        return False
    for i, row in enumerate(data.get("matrix") or []):
        for j, w in enumerate(row):
            if (w is None) != (isogenous(prs[i], prs[j]) is None):
                return False
            if w is not None and not _witness(w).verifies(prs[i].tau, prs[j].tau):
                return False
    return True


def verify_report(report: dict) -> dict:
    """Re-check every certificate in a report against its echoed input.

    Returns the verdicts (classification tag, isogeny verdict) together with
    a map of named checks, each True when the corresponding witness holds.
    """
    if report.get("schema") != SCHEMA_VERSION:
        raise ValueError("unsupported report schema")
    doc = parse_document(report["input"])
    F = doc.field
    checks: dict[str, bool] = {}
    verdicts: dict[str, Any] = {"command": report["command"]}
    cls = report.get("classification")
    nl = None
    if cls is not None:
        verdicts["classification"] = cls["tag"]
        for k, v in _verify_classification(doc, cls).items():
            checks[f"classification.{k}"] = bool(v)
    if "normalized" in report or cls is not None:
        norm = report.get("normalized") or cls["normalized"]
        nl = normalize_with(validate(F, doc.require_generators()),
                            [tuple(r) for r in norm["recombination"]])
    if "quotients" in report:
        checks["quotients"] = _verify_quotients(doc, nl, report["quotients"])
    if "isogeny" in report:
        taus = [element_from_json(F, e["tau"]) for e in report["quotients"]]
        checks["isogeny"] = _verify_isogeny(doc, taus, report["isogeny"])
        verdicts["all_isogenous"] = report["isogeny"]["all_isogenous"]
    if "reduce" in report:
        ok = True
        for e in report["reduce"]:
            t, r = element_from_json(F, e["tau"]), element_from_json(F, e["reduced"])
            ok &= ModularMatrix(*e["matrix"]).act(t) == r and in_fundamental_domain(r)
        checks["reduce"] = ok
    if "pairwise" in report:
        pw = report["pairwise"]
        taus = [element_from_json(F, t) for t in pw["taus"]]
        ok = True
        for i, row in enumerate(pw["matrix"]):
            for j, e in enumerate(row):
                if e["isogeny"] is not None:
                    ok &= _witness(e["isogeny"]).verifies(taus[i], taus[j])
                else:
                    ok &= bool(q_dependence([F.one, taus[i], taus[j], taus[i] * taus[j]])) is False
                if e["isomorphism"] is not None:
                    ok &= ModularMatrix(*e["isomorphism"]).act(taus[i]) == taus[j]
        checks["pairwise"] = ok
        verdicts["all_isogenous"] = pw["all_isogenous"]
    if "witness" in report:
        w = report["witness"]
        alpha, tau = element_from_json(F, w["alpha"]), element_from_json(F, w["tau"])
        tm, tn = element_from_json(F, w["tau_m"]), element_from_json(F, w["tau_n"])
        ctx = F.conjugate_context
        ok = w["m"] > w["n"] and tm == tau * w["m"] - alpha and tn == tau * w["n"] - alpha
        ok = ok and all(ctx.sign_real(ctx.im(x) - 1) > 0 for x in (tm, tn))
        ok = ok and isomorphic(PeriodRatio(tm), PeriodRatio(tn)) is None
        if w["isogeny"] is not None:
            ok = ok and _witness(w["isogeny"]).verifies(tm, tn)
        checks["witness"] = bool(ok)
    if "orbit" in report:
        o = report["orbit"]
        pts = [None if p is None else element_from_json(F, p) for p in o["points"]]
        ok = True
        if o["matrix"] is not None:
            A = _witness(o["matrix"])
            ok = A.det != 0 and A.act(pts[0]) == pts[1]
        else:
            rational = [ProjectivePoint(p).is_rational() for p in pts]
            ok = o["same_orbit"] == (rational[0] and rational[1])
        checks["orbit"] = bool(ok)
        verdicts["same_orbit"] = o["same_orbit"]
    verdicts["ok"] = all(checks.values())
    return {"verdicts": verdicts, "checks": checks}
