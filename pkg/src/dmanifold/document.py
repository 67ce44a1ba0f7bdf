"""JSON definition documents: loading, schema validation and name resolution.

A document declares named models, morphisms, 2-morphisms, fibre products,
gluing data and count problems. Every construction error is reported with the
JSON pointer of the offending value.
"""

import json
import sys
from dataclasses import dataclass
from importlib import resources

import jsonschema

from .errors import DManifoldError
from .glue import GlueData, Overlap
from .groebner import DEFAULT_MAX_STEPS
from .linalg import DEFAULT_PIVOT_TOL
from .parse import parse_poly
from .polymatrix import PolyMatrix
from .standard import StdModel, validate_2mor, validate_mor
from .witness import as_witness

__all__ = ["DocumentError", "Document", "load_document", "read_json", "document_schema"]

class DocumentError(DManifoldError, ValueError):
    """Malformed document; ``pointer`` locates the offending value."""

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.detail = message


def _escape(token):
    return str(token).replace("~", "~0").replace("/", "~1")


def pointer(*parts):
    return "".join("/" + _escape(p) for p in parts)


def document_schema():
    text = resources.files("dmanifold").joinpath("schema/document.schema.json").read_text()
    return json.loads(text)


def _no_duplicates(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise DocumentError(f"duplicate key {key!r}")
        out[key] = value
    return out


def read_json(path):
    """Parse a document from ``path`` (``"-"`` reads standard input)."""
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read document: {exc.strerror}") from exc
    try:
        return json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from exc


def load_document(path, **overrides):
    return Document(read_json(path), **overrides)


@dataclass(frozen=True)
class MorphismSpec:
    name: str
    source: str
    target: str
    f: tuple
    fhat: PolyMatrix
    witnesses: tuple
    expect: dict


@dataclass(frozen=True)
class FibreSpec:
    name: str
    left: str
    right: str
    g: tuple
    h: tuple
    witnesses: tuple
    expect: dict


class Document:
    """A schema-checked document with parsed models and unvalidated morphism data.

    Morphisms are validated lazily so that ``check`` can report violations
    instead of failing at load time.
    """

    def __init__(self, raw, *, seed=None, tolerance=None, max_groebner_steps=None):
        validator = jsonschema.Draft202012Validator(document_schema())
        errors = sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path))
        if errors:
            first = errors[0]
            raise DocumentError(f"schema violation: {first.message}", pointer(*first.absolute_path))
        self.raw = raw
        settings = raw.get("settings", {})
        self.seed = seed if seed is not None else settings.get("seed", 0)
        self.tolerance = tolerance if tolerance is not None else settings.get(
            "tolerance", DEFAULT_PIVOT_TOL)
        self.max_steps = (max_groebner_steps if max_groebner_steps is not None
                          else settings.get("max_groebner_steps", DEFAULT_MAX_STEPS))
        self._check_names()
        self.models = {}
        self.model_witnesses = {}
        for name, spec in raw.get("models", {}).items():
            self._load_model(name, spec)
        self.morphisms = {name: self._load_morphism(name, spec)
                          for name, spec in raw.get("morphisms", {}).items()}
        self.fibres = {name: self._load_fibre(name, spec)
                       for name, spec in raw.get("fibre_products", {}).items()}
        self._validated = {}

    # helpers -------------------------------------------------------------

    def _check_names(self):
        # counts refer to models and fibre products by name, so they share a namespace
        clash = sorted(set(self.raw.get("models", {})) & set(self.raw.get("fibre_products", {})))
        if clash:
            raise DocumentError(f"name {clash[0]!r} is declared as both a model and a fibre product",
                                pointer("fibre_products", clash[0]))

    def _polys(self, texts, names, where):
        out = []
        for i, text in enumerate(texts):
            try:
                out.append(parse_poly(text, names))
            except DManifoldError as exc:
                raise DocumentError(str(exc), pointer(*where, i)) from exc
        return out

    def _matrix(self, rows, names, shape, where):
        r, c = shape
        if len(rows) != r or any(len(row) != c for row in rows):
            got = (len(rows), len(rows[0]) if rows else 0)
            raise DocumentError(f"expected a {r} x {c} matrix, got {got[0]} x {got[1]}",
                                pointer(*where))
        entries = [self._polys(row, names, (*where, i)) for i, row in enumerate(rows)]
        return PolyMatrix(entries, len(names), r, c)

    def _points(self, raw_points, X, where):
        out = []
        for i, raw in enumerate(raw_points):
            try:
                pt = X.check_witness(as_witness(raw, self.tolerance))
            except DManifoldError as exc:
                raise DocumentError(str(exc), pointer(*where, i)) from exc
            out.append(pt)
        return tuple(out)

    def model(self, name, where):
        if name not in self.models:
            raise DocumentError(f"unknown model {name!r}", pointer(*where))
        return self.models[name]

    # sections ------------------------------------------------------------

    def _load_model(self, name, spec):
        where = ("models", name)
        names = spec["vars"]
        if len(spec["section"]) != spec["rank"]:
            raise DocumentError(f"section has {len(spec['section'])} components but rank is "
                                f"{spec['rank']}", pointer(*where, "section"))
        s = self._polys(spec["section"], names, (*where, "section"))
        domain = self._polys(spec.get("domain", []), names, (*where, "domain"))
        try:
            X = StdModel(len(names), spec["rank"], s, domain, spec.get("orient", 1), names,
                         max_steps=self.max_steps)
        except DManifoldError as exc:
            raise DocumentError(str(exc), pointer(*where)) from exc
        self.models[name] = X
        self.model_witnesses[name] = self._points(spec.get("witnesses", []), X,
                                                  (*where, "witnesses"))

    def _load_morphism(self, name, spec):
        where = ("morphisms", name)
        X = self.model(spec["source"], (*where, "source"))
        Y = self.model(spec["target"], (*where, "target"))
        if len(spec["map"]) != Y.n:
            raise DocumentError(f"map needs {Y.n} components", pointer(*where, "map"))
        f = self._polys(spec["map"], X.names, (*where, "map"))
        fhat = self._matrix(spec["fhat"], X.names, (Y.k, X.k), (*where, "fhat"))
        if "witnesses" in spec:
            pts = self._points(spec["witnesses"], X, (*where, "witnesses"))
        else:
            pts = self.model_witnesses[spec["source"]]
        return MorphismSpec(name, spec["source"], spec["target"], tuple(f), fhat, pts,
                            spec.get("expect", {}))

    def _load_fibre(self, name, spec):
        where = ("fibre_products", name)
        X = self.model(spec["left"], (*where, "left"))
        Y = self.model(spec["right"], (*where, "right"))
        if len(spec["left_map"]) != len(spec["right_map"]):
            raise DocumentError("left_map and right_map must have the same length",
                                pointer(*where, "right_map"))
        g = self._polys(spec["left_map"], X.names, (*where, "left_map"))
        h = self._polys(spec["right_map"], Y.names, (*where, "right_map"))
        return FibreSpec(name, spec["left"], spec["right"], tuple(g), tuple(h),
                         tuple(spec.get("witnesses", [])), spec.get("expect", {}))

    def validate_morphism(self, name):
        """Cached :class:`Validation` of a declared morphism."""
        if name not in self._validated:
            m = self.morphisms[name]
            self._validated[name] = validate_mor(self.models[m.source], self.models[m.target],
                                                 m.f, m.fhat)
        return self._validated[name]

    def two_morphisms(self):
        """``name -> (spec, Validation or None, problem)`` for each declared 2-morphism."""
        out = {}
        for name, spec in self.raw.get("two_morphisms", {}).items():
            where = ("two_morphisms", name)
            for key in ("from", "to"):
                if spec[key] not in self.morphisms:
                    raise DocumentError(f"unknown morphism {spec[key]!r}", pointer(*where, key))
            a, b = self.morphisms[spec["from"]], self.morphisms[spec["to"]]
            if (a.source, a.target) != (b.source, b.target):
                raise DocumentError("2-morphism ends must share source and target",
                                    pointer(*where, "to"))
            X, Y = self.models[a.source], self.models[a.target]
            lam = self._matrix(spec["lambda"], X.names, (Y.n, X.k), (*where, "lambda"))
            va, vb = self.validate_morphism(spec["from"]), self.validate_morphism(spec["to"])
            if not (va.ok and vb.ok):
                out[name] = (spec, None, "an end 1-morphism is invalid")
                continue
            out[name] = (spec, validate_2mor(va.value, vb.value, lam), None)
        return out

    def fibre_witnesses(self, spec, W):
        return self._points(spec.witnesses, W, ("fibre_products", spec.name, "witnesses"))

    def glue_data(self, name):
        spec = self.raw["glue"][name]
        where = ("glue", name)
        charts = [self.model(c, (*where, "charts", i)) for i, c in enumerate(spec["charts"])]
        overlaps = []
        for idx, ov in enumerate(spec.get("overlaps", [])):
            here = (*where, "overlaps", idx)
            i, j = ov["i"], ov["j"]
            if not (0 <= i < j < len(charts)):
                raise DocumentError("overlap indices must satisfy 0 <= i < j < #charts",
                                    pointer(*here))
            Xi, Xj = charts[i], charts[j]
            if len(ov["map"]) != Xj.n:
                raise DocumentError(f"map needs {Xj.n} components", pointer(*here, "map"))
            domain = self._polys(ov.get("domain", []), Xi.names, (*here, "domain"))
            overlaps.append(Overlap(
                i, j, tuple(domain),
                tuple(self._polys(ov["map"], Xi.names, (*here, "map"))),
                self._matrix(ov["fhat"], Xi.names, (Xj.k, Xi.k), (*here, "fhat")),
                tuple(ov.get("witnesses", [])),
                tuple(self._polys(ov.get("denominators", []), Xi.names, (*here, "denominators"))),
            ))
        out_maps = None
        if "out_maps" in spec:
            if len(spec["out_maps"]) != len(charts):
                raise DocumentError("one out-map per chart is required", pointer(*where, "out_maps"))
            out_maps = tuple(tuple(self._polys(g, X.names, (*where, "out_maps", i)))
                             for i, (g, X) in enumerate(zip(spec["out_maps"], charts)))
        chart_witnesses = tuple(self.model_witnesses[c] for c in spec["charts"])
        labels = list(spec["charts"])
        if len(set(labels)) != len(labels):
            labels = [f"{c}#{i}" for i, c in enumerate(labels)]
        return GlueData(spec["vdim"], tuple(charts), tuple(overlaps), tuple(labels),
                        chart_witnesses, tuple(spec.get("global_witnesses", [])), out_maps)
