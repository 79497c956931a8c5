"""Command-line entry point: ``semitor <command> [options] FILE``.

Exit codes: 0 success, 2 invalid input, 3 mathematical rejection,
4 search exhausted. ``--json`` prints the machine-readable report, otherwise
a text summary is printed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from . import report as R
from .classifier import (Generic, classify, isogeny_class_report, nonisomorphic_witness,
                         nonisomorphic_witness_for_lattice)
from .elliptic import reduce_fundamental
from .errors import InvalidInput, MathematicalRejection, SearchExhausted, SemitorError
from .io import SCHEMA_VERSION, LatticeDocument, load_document
from .lattice import enumerate_quotients, normalize, validate
from .orbits import ProjectivePoint, orbit_matrix, same_orbit

COMMANDS = ("validate", "classify", "quotients", "isogeny", "reduce", "witness", "orbit", "report")

EXIT_OK, EXIT_INPUT, EXIT_MATH, EXIT_SEARCH, EXIT_INTERNAL = 0, 2, 3, 4, 1


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, InvalidInput):
        return EXIT_INPUT
    if isinstance(exc, MathematicalRejection):
        return EXIT_MATH
    if isinstance(exc, SearchExhausted):
        return EXIT_SEARCH
    return EXIT_INTERNAL


class _Timer:
    def __init__(self):
        self.timings: dict[str, float] = {}

    def __call__(self, name: str, fn, *args, **kwargs):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.timings[name] = round(time.perf_counter() - t0, 6)


def _lattice(doc: LatticeDocument, opts, timer: _Timer):
    lattice = timer("validate", validate, doc.field, doc.require_generators())
    nl = timer("normalize", normalize, lattice, opts.norm_height)
    return lattice, nl


def _require(value, key: str):
    if not value:
        from .io import DocumentError
        raise DocumentError(f"this command needs a non-empty \"{key}\" list", f"$.{key}")
    return value


def run(command: str, doc: LatticeDocument, opts) -> tuple[dict, int]:
    """Execute one command; returns the report document and the exit code."""
    timer = _Timer()
    out: dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "flags": {"height": opts.height, "witness_cap": opts.witness_cap,
                  "norm_height": opts.norm_height},
        "input": doc.raw,
        "field": doc.field.describe(),
    }
    code = EXIT_OK
    if command == "validate":
        _, nl = _lattice(doc, opts, timer)
        out["normalized"] = R.normalized_json(nl)
    elif command in ("classify", "report"):
        lattice = timer("validate", validate, doc.field, doc.require_generators())
        cls = timer("classify", classify, lattice, opts.norm_height, opts.witness_cap)
        out["classification"] = R.classification_json(cls)
        if isinstance(cls, Generic) and cls.exhausted:
            code = EXIT_SEARCH
        if command == "report":
            rep = timer("isogeny_report", isogeny_class_report, lattice, opts.height,
                        opts.norm_height, opts.witness_cap, opts.jobs, cls)
            out["quotients"] = R.quotients_json(rep.curves, rep.reduced)
            out["isogeny"] = R.isogeny_json(rep)
    elif command == "quotients":
        _, nl = _lattice(doc, opts, timer)
        out["normalized"] = R.normalized_json(nl)
        curves = timer("enumerate", enumerate_quotients, nl, opts.height, opts.jobs)
        reduced = timer("reduce", lambda: [reduce_fundamental(c.tau)[0] for c in curves])
        out["quotients"] = R.quotients_json(curves, reduced)
    elif command == "isogeny":
        if doc.taus is not None:
            out["pairwise"] = timer("pairwise", R.pairwise_json, _require(doc.taus, "taus"))
        else:
            lattice, nl = _lattice(doc, opts, timer)
            cls = timer("classify", classify, nl, opts.norm_height, opts.witness_cap)
            out["classification"] = R.classification_json(cls)
            rep = timer("isogeny_report", isogeny_class_report, lattice, opts.height,
                        opts.norm_height, opts.witness_cap, opts.jobs, cls)
            out["quotients"] = R.quotients_json(rep.curves, rep.reduced)
            out["isogeny"] = R.isogeny_json(rep)
    elif command == "reduce":
        out["reduce"] = timer("reduce", R.reduce_json, _require(doc.taus, "taus"))
    elif command == "witness":
        if doc.witness is not None:
            w = timer("witness", nonisomorphic_witness, *doc.witness)
        else:
            _, nl = _lattice(doc, opts, timer)
            out["normalized"] = R.normalized_json(nl)
            w = timer("witness", nonisomorphic_witness_for_lattice, nl)
        out["witness"] = R.witness_json(w)
    elif command == "orbit":
        pts = _require(doc.points, "points")
        if len(pts) != 2:
            from .io import DocumentError
            raise DocumentError("orbit needs exactly two points", "$.points")
        p, q = (ProjectivePoint(x) for x in pts)
        same = timer("orbit", same_orbit, p, q)
        matrix = None
        if same and not p.is_rational():
            matrix = orbit_matrix(p.x, q.x)
        out["orbit"] = R.orbit_json(pts, same, matrix)
    else:
        raise InvalidInput(f"unknown command {command!r}")
    out["diagnostics"] = {"timings": timer.timings,
                          "heights": {"enumeration": opts.height, "witness_cap": opts.witness_cap,
                                      "normalization": opts.norm_height}}
    cls_data = out.get("classification")
    if cls_data and cls_data["tag"] == "Generic" and cls_data.get("witness"):
        out["diagnostics"]["heights"]["witness_found_at"] = cls_data["witness"]["height"]
    out["exit_code"] = code
    return out, code


# --- text rendering --------------------------------------------------------

def _e(x: dict) -> str:
    return f"{x['text']}  (~ {x['approx']})"


def render_text(rep: dict) -> str:
    lines = [f"semitor {rep['command']}  field: min_poly {rep['field']['min_poly']}"]
    if "normalized" in rep:
        _render_normalized(lines, rep["normalized"])
    cls = rep.get("classification")
    if cls:
        _render_normalized(lines, cls["normalized"])
        lines.append(f"classification: {cls['tag']}")
        if cls["tag"] == "SplitProduct":
            lines.append(f"  gamma0 = {cls['gamma0']['triple']}  (generator coefficients "
                         f"{cls['gamma0']['coefficients']})")
            for h in cls["h_basis"]:
                lines.append(f"  H cap Gamma: {h['triple']}  -> ({_e(h['vector'][0])}, "
                             f"{_e(h['vector'][1])})")
            lines.append(f"  E lattice <1, {cls['chart_ratio']['text']}>, e_tau = {_e(cls['e_tau'])}")
            lines.append(f"  also_cubic = {cls['also_cubic']}")
        elif cls["tag"] == "CubicArithmetic":
            lines.append(f"  primitive element {_e(cls['primitive_element'])}")
            lines.append(f"  reference tau {_e(cls['reference_tau'])}")
        else:
            lines.append(f"  degree of Q(alpha, beta) = {cls['degree']}")
            w = cls.get("witness")
            if w is None:
                lines.append("  witness search exhausted (no certificate)")
            else:
                for t, tau in zip(w["triples"], w["taus"]):
                    lines.append(f"  quotient {t}: tau = {_e(tau)}")
                lines.append("  the two curves are not isogenous (1, tau1, tau2, tau1*tau2 independent)")
    if "quotients" in rep:
        lines.append(f"quotient curves: {len(rep['quotients'])}")
        for q in rep["quotients"]:
            lines.append(f"  {tuple(q['triple'])}: tau = {q['tau']['text']}, "
                         f"reduced ~ {q['reduced_tau']['approx']}")
    if "isogeny" in rep:
        iso = rep["isogeny"]
        lines.append(f"isogeny classes: {len(iso['classes'])}  all_isogenous = {iso['all_isogenous']}")
        if iso["first_failing_pair"]:
            a, b = iso["first_failing_pair"]
            lines.append(f"  first non-isogenous pair: {tuple(a)} and {tuple(b)}")
    if "reduce" in rep:
        for e in rep["reduce"]:
            lines.append(f"reduce {e['tau']['text']} -> {_e(e['reduced'])}  via {tuple(e['matrix'])}")
    if "pairwise" in rep:
        pw = rep["pairwise"]
        lines.append(f"pairwise isogeny (all_isogenous = {pw['all_isogenous']})")
        for i, row in enumerate(pw["matrix"]):
            for j, e in enumerate(row):
                if i < j:
                    lines.append(f"  {i} -> {j}: isogeny {e['isogeny']}, isomorphism {e['isomorphism']}")
    if "witness" in rep:
        w = rep["witness"]
        lines.append(f"non-isomorphic quotients along (m,1), (n,1): m = {w['m']}, n = {w['n']}")
        lines.append(f"  tau_m = {_e(w['tau_m'])}, reduced {w['reduced_m']['text']}")
        lines.append(f"  tau_n = {_e(w['tau_n'])}, reduced {w['reduced_n']['text']}")
        lines.append(f"  isogeny tau_m -> tau_n: {w['isogeny']}")
    if "orbit" in rep:
        o = rep["orbit"]
        lines.append(f"same PGL2(Q)-orbit: {o['same_orbit']}  matrix {o['matrix']}")
    return "\n".join(lines)


def _render_normalized(lines: list, n: dict) -> None:
    lines.append(f"normalized: alpha = {_e(n['alpha'])}, beta = {_e(n['beta'])}")
    lines.append(f"  recombination {n['recombination']}, dim I = {n['relation_space']['dim']}")


# --- argument handling --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semitor",
                                description="Splitting and isogeny diagnostics for rank-3 lattices in C^2.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", help="JSON lattice document, or - for standard input")
    p.add_argument("--height", type=int, default=3, help="enumeration height for quotients (default 3)")
    p.add_argument("--witness-cap", type=int, default=6,
                   help="largest height tried for a Generic witness (default 6)")
    p.add_argument("--norm-height", type=int, default=10,
                   help="largest recombination height tried by normalization (default 10)")
    p.add_argument("--json", action="store_true", help="print the machine-readable report")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    opts = parser.parse_args(argv)
    for flag in ("height", "witness_cap", "norm_height", "jobs"):
        if getattr(opts, flag) < 1:
            parser.error(f"--{flag.replace('_', '-')} must be positive")
    try:
        text = sys.stdin.read() if opts.file == "-" else open(opts.file, encoding="utf-8").read()
    except OSError as exc:
        print(f"error: cannot read {opts.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    try:
        doc = load_document(text)
        rep, code = run(opts.command, doc, opts)
    except SemitorError as exc:
        code = exit_code_for(exc)
        err = {"schema": SCHEMA_VERSION, "command": opts.command,
               "error": {"type": type(exc).__name__, "message": str(exc), "exit_code": code}}
        if opts.json:
            print(json.dumps(err, indent=2))
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return code
    print(json.dumps(rep, indent=2) if opts.json else render_text(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
