"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a violation is found, 2 for
parse, schema or usage errors. JSON reports use sorted keys and are
byte-identical across runs with equal inputs and seeds.
"""

import argparse
import json
import logging
import sys

from .count import CountProblem, intersection_number, virtual_count
from .document import DocumentError, load_document
from .errors import CountError, DManifoldError
from .fibre import cotangent_exact_at, d_transverse_at, fibre_product, map_to_euclidean
from .glue import format_report, validate_glue
from .laws import run_law_suite
from .standard import classify_mor_at, etale_at, is_manifold_at

__all__ = ["main", "run", "COMMANDS"]

COMMANDS = ("check", "classify", "fibre", "glue", "count", "laws")

_FLOAT_DIGITS = 12


def _expectations(expect, report):
    """Violations for ``expect`` keys whose reported value differs.

    Keys a command does not report are left to the commands that do.
    """
    out = []
    for key, want in sorted(expect.items()):
        if key not in report:
            continue
        got = report[key]
        if got != want:
            out.append({"condition": f"expected {key}", "expected": want, "got": got})
    return out


# commands ----------------------------------------------------------------

def cmd_check(doc):
    morphisms, ok = {}, True
    for name, spec in sorted(doc.morphisms.items()):
        v = doc.validate_morphism(name)
        entry = {"valid": v.ok, "violations": v.violations}
        if v.ok and spec.witnesses:
            entry["maps_witnesses_into_target_domain"] = v.value.maps_into_domain(spec.witnesses)
            if not entry["maps_witnesses_into_target_domain"]:
                entry["violations"] = [{"condition": "witness image lies in the target domain"}]
        entry["violations"] = entry["violations"] + _expectations(spec.expect, entry)
        ok &= not entry["violations"]
        morphisms[name] = entry
    twos = {}
    for name, (spec, v, problem) in sorted(doc.two_morphisms().items()):
        if v is None:
            entry = {"valid": False, "violations": [{"condition": problem}]}
        else:
            entry = {"valid": v.ok, "violations": v.violations}
        entry["violations"] = entry["violations"] + _expectations(spec.get("expect", {}), entry)
        ok &= not entry["violations"]
        twos[name] = entry
    models = {name: {"n": X.n, "rank": X.k, "vdim": X.vdim, "orient": X.orient,
                     "witnesses": len(doc.model_witnesses[name])}
              for name, X in sorted(doc.models.items())}
    return ok, {"models": models, "morphisms": morphisms, "two_morphisms": twos}


def cmd_classify(doc):
    ok = True
    models = {}
    for name, X in sorted(doc.models.items()):
        pts = doc.model_witnesses[name]
        entry = {"vdim": X.vdim, "manifold_at": [
            {"point": p.to_json(), "manifold": is_manifold_at(X, p, tol=doc.tolerance)}
            for p in pts]}
        if pts:
            entry["manifold"] = all(r["manifold"] for r in entry["manifold_at"])
        entry["violations"] = _expectations(doc.raw["models"][name].get("expect", {}), entry)
        ok &= not entry["violations"]
        models[name] = entry
    morphisms = {}
    for name, spec in sorted(doc.morphisms.items()):
        v = doc.validate_morphism(name)
        if not v.ok:
            morphisms[name] = {"valid": False, "violations": v.violations}
            ok = False
            continue
        m = v.value
        flags = classify_mor_at(m, spec.witnesses, tol=doc.tolerance)
        verdicts = etale_at(m, spec.witnesses, tol=doc.tolerance)
        points = []
        for fl, ev in zip(flags, verdicts):
            fl = dict(fl)
            fl.update({"rank_M": ev.rank_m, "rank_N": ev.rank_n, "etale_exact_sequence": ev.etale,
                       "omega_equivalence": ev.omega_equivalence})
            points.append(fl)
        violations = [{"condition": "exact-sequence and omega verdicts agree", "point": p["point"]}
                      for p, ev in zip(points, verdicts) if not ev.agrees]
        summary = {"valid": True, "points": points, "scope": "at witness points"}
        for key in ("w_submersion", "submersion", "w_immersion", "immersion", "etale",
                    "w_embedding", "embedding"):
            if points:
                summary[key] = all(p[key] for p in points)
        violations += _expectations(spec.expect, summary)
        summary["violations"] = violations
        ok &= not violations
        morphisms[name] = summary
    return ok, {"models": models, "morphisms": morphisms}


def cmd_fibre(doc):
    ok, out = True, {}
    for name, spec in sorted(doc.fibres.items()):
        X, Y = doc.models[spec.left], doc.models[spec.right]
        data = fibre_product(X, spec.g, Y, spec.h, len(spec.g))
        W = data.W
        pts = doc.fibre_witnesses(spec, W)
        entry = {
            "vdim": data.vdim,
            "vdim_identity": data.vdim == X.vdim + Y.vdim - data.p,
            "n": W.n, "rank": W.k, "p": data.p, "orient": W.orient,
            "vars": list(W.names),
            "section": [q.to_string(W.names) for q in W.s],
        }
        points = []
        e_flags = classify_mor_at(data.e, pts, tol=doc.tolerance)
        for pt, fl in zip(pts, e_flags):
            xs, ys = pt.coords[:X.n], pt.coords[X.n:]
            g_mor, h_mor = map_to_euclidean(X, spec.g), map_to_euclidean(Y, spec.h)
            transverse = d_transverse_at(g_mor, h_mor, [(xs, ys)], tol=doc.tolerance)[0]
            cz, mid, surj = cotangent_exact_at(data, pt, tol=doc.tolerance)
            points.append({
                "point": pt.to_json(),
                "d_transverse": transverse,
                "cotangent_exact": cz and mid and surj,
                "manifold": is_manifold_at(W, pt, tol=doc.tolerance),
                "left_projection": {k: fl[k] for k in ("submersion", "immersion", "embedding")},
            })
        entry["points"] = points
        violations = [{"condition": "cotangent sequence exact", "point": p["point"]}
                      for p in points if not p["cotangent_exact"]]
        if not entry["vdim_identity"]:
            violations.append({"condition": "vdim W = vdim X + vdim Y - p"})
        violations += _expectations(spec.expect, entry)
        entry["violations"] = violations
        ok &= not violations
        out[name] = entry
    return ok, {"fibre_products": out}


def cmd_glue(doc):
    ok, out = True, {}
    for name, spec in sorted(doc.raw.get("glue", {}).items()):
        report = validate_glue(doc.glue_data(name), tol=doc.tolerance)
        report["violations"] = _expectations(spec.get("expect", {}), report)
        ok &= report["valid"] and not report["violations"]
        out[name] = report
    return ok, {"glue": out}


def _count_options(spec, seed):
    opts = {k: spec[k] for k in ("grid", "newton_iterations", "newton_tol", "dedupe_radius")
            if k in spec}
    opts["epsilons"] = tuple(spec.get("epsilons", (1e-3, 2e-3, 4e-3)))
    opts["seeds"] = tuple(spec.get("seeds", range(seed, seed + 5)))
    return opts


def cmd_count(doc):
    ok, out = True, {}
    for name, spec in sorted(doc.raw.get("counts", {}).items()):
        target = spec["model"]
        opts = _count_options(spec, doc.seed)
        box = tuple(tuple(b) for b in spec["box"])
        try:
            if target in doc.fibres:
                fs = doc.fibres[target]
                result = intersection_number(doc.models[fs.left], fs.g, doc.models[fs.right],
                                             fs.h, len(fs.g), box, **opts)
            elif target in doc.models:
                result = virtual_count(CountProblem(doc.models[target], box, **opts))
            else:
                raise DocumentError(f"unknown model or fibre product {target!r}",
                                    f"/counts/{name}/model")
            entry = result.as_dict()
            entry["violations"] = _expectations(spec.get("expect", {}), entry)
        except CountError as exc:
            entry = {"count": None, "error": str(exc), "details": exc.details,
                     "violations": [{"condition": "count certified", "error": str(exc)}]}
        ok &= not entry["violations"]
        out[name] = entry
    return ok, {"counts": out}


def cmd_laws(seed, cases):
    report = run_law_suite(seed, cases)
    for part in report.values():
        part.pop("seconds", None)
    return all(p["ok"] for p in report.values()), {"laws": report, "seed": seed}


# output ------------------------------------------------------------------

def _normalize(obj):
    if isinstance(obj, float):
        return float(f"{obj:.{_FLOAT_DIGITS}g}")
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    return obj


def to_json(report):
    return json.dumps(_normalize(report), sort_keys=True, indent=2, ensure_ascii=False)


def _text_items(lines, items, indent="  "):
    for key, value in items:
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            _text_items(lines, sorted(value.items()), indent + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for v in value:
                lines.append(f"{indent}  -")
                _text_items(lines, sorted(v.items()), indent + "    ")
        else:
            lines.append(f"{indent}{key}: {json.dumps(_normalize(value))}")


def to_text(report):
    if report.get("command") == "glue" and "glue" in report:
        blocks = [f"[{name}]\n{format_report(r)}" for name, r in sorted(report["glue"].items())]
        blocks.append(f"overall: {'ok' if report['ok'] else 'violations found'}")
        return "\n".join(blocks)
    lines = [f"{report.get('command', 'error')}: "
             f"{'ok' if report.get('ok') else 'violations found' if 'ok' in report else 'error'}"]
    _text_items(lines, sorted((k, v) for k, v in report.items() if k not in ("command", "ok")))
    return "\n".join(lines)


# entry points ------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="dmanifold",
        description="Check, classify, glue and count standard-model derived manifolds.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("document", nargs="?",
                        help="JSON document path, or '-' for standard input")
    parser.add_argument("--seed", type=int, default=None, help="base seed for counts and laws")
    parser.add_argument("--tolerance", type=float, default=None,
                        help="rank pivot and float-witness tolerance (default 1e-9)")
    parser.add_argument("--max-groebner-steps", type=int, default=None,
                        help="cap on Buchberger reduction steps")
    parser.add_argument("--cases", type=int, default=200, help="cases per law suite")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def run(command, document=None, *, seed=None, tolerance=None, max_groebner_steps=None,
        cases=200):
    """Run ``command`` and return ``(exit_code, report)``."""
    try:
        if tolerance is not None and not tolerance > 0:
            raise DocumentError("--tolerance must be positive")
        if command == "laws":
            ok, body = cmd_laws(seed if seed is not None else 0, cases)
        else:
            if document is None:
                raise DocumentError(f"the {command} command needs a document")
            doc = load_document(document, seed=seed, tolerance=tolerance,
                                max_groebner_steps=max_groebner_steps)
            handler = {"check": cmd_check, "classify": cmd_classify, "fibre": cmd_fibre,
                       "glue": cmd_glue, "count": cmd_count}[command]
            ok, body = handler(doc)
    except DocumentError as exc:
        return 2, {"command": command, "error": exc.detail, "path": exc.pointer or "/"}
    except DManifoldError as exc:
        return 2, {"command": command, "error": str(exc), "path": "/"}
    report = {"command": command, "ok": bool(ok)}
    report.update(body)
    return (0 if ok else 1), report


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    code, report = run(args.command, args.document, seed=args.seed, tolerance=args.tolerance,
                       max_groebner_steps=args.max_groebner_steps, cases=args.cases)
    text = to_json(report) if args.format == "json" else to_text(report)
    print(text)
    if code == 2:
        print(f"error: {report.get('path', '/')}: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
