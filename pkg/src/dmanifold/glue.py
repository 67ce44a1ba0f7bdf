"""Validation of good-coordinate-system gluing data.

Charts are standard models of a common virtual dimension, listed in their
total order. For each ordered pair ``i < j`` an overlap supplies an open set
``V_ij`` (extra ``> 0`` conditions on chart ``i``), a map ``e_ij: V_ij -> V_j``
and a bundle map ``ehat_ij: E_i -> E_j``. The validator certifies:

* cover: every global witness is a point of some chart's zero locus;
* compatibility: ``ehat_ij s_i = s_j(e_ij)`` mod ``I_{s_i}^2``;
* exactness: ``0 -> TV_ij -> E_i + TV_j -> E_j -> 0`` at each overlap witness;
* cocycle: ``e_ik = e_jk(e_ij)`` mod ``I_{s_i}^2`` and
  ``ehat_ik = ehat_jk(e_ij) ehat_ij`` mod ``I_{s_i}`` on triple overlaps;
* map-out: ``g_j(e_ij) = g_i`` mod ``I_{s_i}``.

Membership is tested in the global polynomial ring, which is sufficient for the
localized statement on ``V_ij``. When it fails and positive denominators on
``V_ij`` are supplied, ``D^r * residual`` is retried for ``r = 1..3``.
"""

from dataclasses import dataclass, field

from .errors import DimensionError
from .linalg import DEFAULT_PIVOT_TOL
from .poly import Poly
from .polymatrix import PolyMatrix
from .standard import StdModel, etale_ranks
from .witness import as_witness

__all__ = ["Overlap", "GlueData", "validate_glue", "format_report"]

_MAX_DENOMINATOR_POWER = 3


@dataclass(frozen=True)
class Overlap:
    i: int
    j: int
    domain: tuple
    e: tuple
    ehat: PolyMatrix
    witnesses: tuple = ()
    denominators: tuple = ()


@dataclass(frozen=True)
class GlueData:
    n: int
    charts: tuple
    overlaps: tuple = ()
    labels: tuple = None
    chart_witnesses: tuple = None
    global_witnesses: tuple = ()
    out_maps: tuple = None

    def label(self, i):
        return self.labels[i] if self.labels else str(i)


@dataclass
class _Entry:
    condition: str
    charts: list
    ok: bool
    scope: str
    details: list = field(default_factory=list)

    def as_dict(self):
        return {"condition": self.condition, "charts": self.charts, "ok": self.ok,
                "scope": self.scope, "details": self.details}


def _check_shapes(d):
    charts = list(d.charts)
    for idx, X in enumerate(charts):
        if not isinstance(X, StdModel):
            raise TypeError("charts must be StdModel instances")
        if X.vdim != d.n:
            raise DimensionError(
                f"chart {d.label(idx)} has dim - rank = {X.vdim}, expected {d.n}")
    seen = set()
    for ov in d.overlaps:
        if not (0 <= ov.i < ov.j < len(charts)):
            raise DimensionError(f"overlap indices ({ov.i}, {ov.j}) must satisfy i < j")
        if (ov.i, ov.j) in seen:
            raise DimensionError(f"duplicate overlap ({ov.i}, {ov.j})")
        seen.add((ov.i, ov.j))
        Xi, Xj = charts[ov.i], charts[ov.j]
        if len(ov.e) != Xj.n or any(p.nvars != Xi.n for p in ov.e):
            raise DimensionError(f"e_{ov.i}{ov.j} must map R^{Xi.n} to R^{Xj.n}")
        if ov.ehat.shape != (Xj.k, Xi.k) or ov.ehat.nvars != Xi.n:
            raise DimensionError(f"ehat_{ov.i}{ov.j} must be {Xj.k} x {Xi.k}")
        if any(p.nvars != Xi.n for p in ov.domain + ov.denominators):
            raise DimensionError("overlap domain polynomials live on chart i")
    if d.out_maps is not None:
        if len(d.out_maps) != len(charts):
            raise DimensionError("one out-map per chart is required")
        q = {len(g) for g in d.out_maps}
        if len(q) > 1:
            raise DimensionError("out-maps must share a target dimension")


def _member(p, ideal, denominators):
    """``(ok, residual_text, used_denominator)`` for ``p`` in ``ideal``."""
    r = ideal.normal_form(p)
    if not r:
        return True, None, False
    if denominators:
        D = Poly.one(p.nvars)
        for q in denominators:
            D = D * q
        scaled = p
        for _ in range(_MAX_DENOMINATOR_POWER):
            scaled = scaled * D
            if ideal.contains(scaled):
                return True, None, True
    return False, r, False


def validate_glue(d, *, tol=DEFAULT_PIVOT_TOL):
    """Check the gluing hypotheses; returns a dict report with an overall verdict."""
    _check_shapes(d)
    charts = list(d.charts)
    overlaps = sorted(d.overlaps, key=lambda ov: (ov.i, ov.j))
    by_pair = {(ov.i, ov.j): ov for ov in overlaps}
    entries = []

    # cover, witness-level only
    if d.global_witnesses:
        missing = []
        for w in d.global_witnesses:
            pt = as_witness(w)
            if not any(X.n == len(pt) and pt.is_zero_of(X.s) and pt.satisfies(X.domain)
                       for X in charts):
                missing.append(pt.to_json())
        entries.append(_Entry("cover", [], not missing, "global witnesses",
                              [{"uncovered": m} for m in missing]))

    for idx, X in enumerate(charts):
        for w in (d.chart_witnesses[idx] if d.chart_witnesses else ()):
            X.check_witness(w, f"witness of chart {d.label(idx)}")

    for ov in overlaps:
        Xi, Xj = charts[ov.i], charts[ov.j]
        pair = [d.label(ov.i), d.label(ov.j)]
        n = Xi.n

        lhs = ov.ehat @ Xi.section_column()
        details, ok, localized = [], True, False
        for c in range(Xj.k):
            resid = lhs[c, 0] - Xj.s[c].subs_into(ov.e, n)
            good, r, used = _member(resid, Xi.I_s2, ov.denominators)
            localized |= used
            if not good:
                ok = False
                details.append({"component": c, "residual": r.to_string(Xi.names)})
        entries.append(_Entry("section compatibility mod I_s^2", pair, ok,
                              "localized by denominators" if localized else "global ring",
                              details))

        details, ok = [], True
        for w in ov.witnesses:
            pt = Xi.check_witness(w, f"overlap witness of {pair}")
            if not pt.satisfies(ov.domain):
                raise DimensionError(f"overlap witness {pt.to_json()} lies outside V_ij")
            image = pt.image(ov.e)
            exact_here, rm, rn = etale_ranks(Xi, Xj, ov.e, ov.ehat, pt, tol=tol)
            in_domain = image.satisfies(Xj.domain)
            ok &= exact_here and in_domain
            details.append({"point": pt.to_json(), "exact": exact_here, "rank_M": rm,
                            "rank_N": rn, "image_in_domain": in_domain})
        entries.append(_Entry("overlap exactness", pair, ok, "overlap witnesses", details))

        if d.out_maps is not None:
            gi, gj = d.out_maps[ov.i], d.out_maps[ov.j]
            details, ok = [], True
            for c, (a, b) in enumerate(zip(gi, gj)):
                good, r, _ = _member(b.subs_into(ov.e, n) - a, Xi.I_s, ov.denominators)
                if not good:
                    ok = False
                    details.append({"component": c, "residual": r.to_string(Xi.names)})
            entries.append(_Entry("map-out compatibility mod I_s", pair, ok,
                                  "global ring", details))

    for (i, j), a in by_pair.items():
        for k in range(j + 1, len(charts)):
            if (j, k) not in by_pair or (i, k) not in by_pair:
                continue
            b, c = by_pair[(j, k)], by_pair[(i, k)]
            Xi = charts[i]
            n = Xi.n
            triple = [d.label(i), d.label(j), d.label(k)]
            dens = a.denominators + c.denominators
            details, ok = [], True
            for comp, (p, q) in enumerate(zip(c.e, b.e)):
                good, r, _ = _member(p - q.subs_into(a.e, n), Xi.I_s2, dens)
                if not good:
                    ok = False
                    details.append({"component": comp, "residual": r.to_string(Xi.names)})
            entries.append(_Entry("cocycle for maps mod I_s^2", triple, ok,
                                  "global ring", details))
            composite = b.ehat.subs(a.e, n) @ a.ehat
            diff = c.ehat - composite
            details, ok = [], True
            for r_ in range(diff.rows):
                for s_ in range(diff.cols):
                    good, r, _ = _member(diff[r_, s_], Xi.I_s, dens)
                    if not good:
                        ok = False
                        details.append({"entry": [r_, s_], "residual": r.to_string(Xi.names)})
            entries.append(_Entry("cocycle for bundle maps mod I_s", triple, ok,
                                  "global ring", details))

    return {
        "valid": all(e.ok for e in entries),
        "charts": [d.label(i) for i in range(len(charts))],
        "vdim": d.n,
        "conditions": [e.as_dict() for e in entries],
        "note": "pointwise conditions are certified at witness points only",
    }


def format_report(report):
    """Plain-text table of a :func:`validate_glue` report."""
    lines = [f"gluing data for charts {', '.join(report['charts'])} (vdim {report['vdim']})"]
    width = max([len(c["condition"]) for c in report["conditions"]] + [9])
    for c in report["conditions"]:
        where = "/".join(c["charts"]) or "-"
        mark = "pass" if c["ok"] else "FAIL"
        lines.append(f"  {c['condition']:<{width}}  {where:<12} {mark}  [{c['scope']}]")
    lines.append(f"overall: {'valid' if report['valid'] else 'invalid'}")
    lines.append(f"note: {report['note']}")
    return "\n".join(lines)
