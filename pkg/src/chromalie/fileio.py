"""JSON interchange for algebras, sigma forms and linear maps.

Rationals are strings matching RATIONAL; output key order is fixed and
product keys are sorted by basis index, so serialization is canonical.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .algebra import FLAVORS, Element, EvenMap, GradedAlgebra, GradedBasis
from .grading import BiCharacter, GroupSpec, MalformedInputError, SigmaForm

RATIONAL = re.compile(r"^-?[0-9]+(/[1-9][0-9]*)?$")


class FormatError(MalformedInputError):
    def __init__(self, message, line=None, column=None, path=""):
        self.line, self.column, self.path = line, column, path
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        if path:
            message = f"{path}: {message}"
        super().__init__(where + message)


class _Doc:
    """Parsed document plus its source text, for error positions."""

    def __init__(self, text: str):
        self.text = text
        try:
            self.data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(exc.msg, exc.lineno, exc.colno) from None

    def error(self, message, path, needle=None):
        line = col = None
        if needle is not None:
            # walk the object keys named in the path, then look for the value
            pos = 0
            for key in re.sub(r"\[\d+\]", "", path).split(".")[1:]:
                at = self.text.find(json.dumps(key), pos)
                if at >= 0:
                    pos = at
            pos = self.text.find(json.dumps(needle), pos)
            if pos >= 0:
                line = self.text.count("\n", 0, pos) + 1
                col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return FormatError(message, line, col, path)


def parse_rational(doc: _Doc, value, path) -> Fraction:
    if not isinstance(value, str) or not RATIONAL.match(value):
        raise doc.error(f"{value!r} is not a rational string", path, value)
    return Fraction(value)


def format_rational(q) -> str:
    return str(Fraction(q))


def _obj(doc, value, path) -> dict:
    if not isinstance(value, dict):
        raise doc.error("expected an object", path)
    return value


def _degree(doc, spec, value, path):
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise doc.error("degree must be a list of integers", path)
    if not spec.is_canonical(value):
        raise doc.error(f"degree {value} is not canonical for the group", path)
    return tuple(value)


def _group_key(doc, spec, key, path):
    try:
        coords = [int(c) for c in key.split(",")]
    except ValueError:
        raise doc.error(f"bad group element key {key!r}", path, key) from None
    if not spec.is_canonical(coords):
        raise doc.error(f"group element {key!r} is not canonical", path, key)
    return tuple(coords)


def _group_str(a) -> str:
    return ",".join(str(c) for c in a)


def _element(doc, basis, value, path) -> Element:
    value = _obj(doc, value, path)
    terms = []
    for name, coeff in value.items():
        if name not in basis.names:
            raise doc.error(f"unknown basis name {name!r}", path, name)
        terms.append((basis.names.index(name), parse_rational(doc, coeff, f"{path}.{name}")))
    return Element(terms)


def _element_json(basis, x: Element) -> dict:
    return {basis.names[i]: format_rational(c) for i, c in x.items()}


def _map_columns(doc, domain, codomain, value, path) -> dict:
    value = _obj(doc, value, path)
    cols = {}
    for name, img in value.items():
        if name not in domain.names:
            raise doc.error(f"unknown basis name {name!r}", path, name)
        cols[domain.names.index(name)] = _element(doc, codomain, img, f"{path}.{name}")
    return cols


def _map_json(f: EvenMap) -> dict:
    return {f.domain.names[i]: _element_json(f.target, c) for i, c in f.columns.items()}


def algebra_from_data(doc: _Doc) -> GradedAlgebra:
    data = _obj(doc, doc.data, "$")
    allowed = {"group", "epsilon", "basis", "products", "twist", "flavor"}
    for key in data:
        if key not in allowed:
            raise doc.error(f"unexpected key {key!r}", "$", key)
    for key in ("group", "epsilon", "basis"):
        if key not in data:
            raise doc.error(f"missing key {key!r}", "$")
    group = _obj(doc, data["group"], "$.group")
    free_rank = group.get("free_rank", 0)
    torsion = group.get("torsion", [])
    if not isinstance(free_rank, int) or not isinstance(torsion, list) or \
            not all(isinstance(n, int) for n in torsion):
        raise doc.error("group needs integer free_rank and a list of torsion orders", "$.group")
    try:
        spec = GroupSpec(free_rank, tuple(torsion))
    except MalformedInputError as exc:
        raise doc.error(str(exc), "$.group") from None

    eps = _obj(doc, data["epsilon"], "$.epsilon")
    matrix = eps.get("matrix")
    if not isinstance(matrix, list) or len(matrix) != spec.rank or \
            not all(isinstance(r, list) and len(r) == spec.rank for r in matrix):
        raise doc.error(f"epsilon.matrix must be {spec.rank}x{spec.rank}", "$.epsilon")
    rows = [[parse_rational(doc, v, f"$.epsilon.matrix[{i}][{j}]") for j, v in enumerate(r)]
            for i, r in enumerate(matrix)]
    try:
        epsilon = BiCharacter.validated(spec, rows)
    except MalformedInputError as exc:
        raise doc.error(f"invalid bi-character: {exc}", "$.epsilon") from None

    entries = data["basis"]
    if not isinstance(entries, list):
        raise doc.error("basis must be a list", "$.basis")
    pairs = []
    for k, entry in enumerate(entries):
        entry = _obj(doc, entry, f"$.basis[{k}]")
        name = entry.get("name")
        if not isinstance(name, str):
            raise doc.error("basis entry needs a name", f"$.basis[{k}]")
        pairs.append((name, _degree(doc, spec, entry.get("degree"), f"$.basis[{k}].degree")))
    try:
        basis = GradedBasis(tuple(n for n, _ in pairs), tuple(d for _, d in pairs), spec)
    except MalformedInputError as exc:
        raise doc.error(str(exc), "$.basis") from None

    products = {}
    for key, value in _obj(doc, data.get("products", {}), "$.products").items():
        parts = key.split(",")
        if len(parts) != 2 or any(p not in basis.names for p in parts):
            raise doc.error(f"product key {key!r} must be 'name1,name2'", "$.products", key)
        i, j = basis.names.index(parts[0]), basis.names.index(parts[1])
        products[(i, j)] = _element(doc, basis, value, f"$.products.{key}")

    twist = None
    if data.get("twist") is not None:
        twist = EvenMap(basis, _map_columns(doc, basis, basis, data["twist"], "$.twist"))
    flavor = data.get("flavor", "raw")
    if flavor not in FLAVORS:
        raise doc.error(f"unknown flavor {flavor!r}", "$.flavor", flavor)
    return GradedAlgebra(spec, epsilon, basis, products, twist, flavor)


def loads_algebra(text: str) -> GradedAlgebra:
    return algebra_from_data(_Doc(text))


def algebra_to_data(A: GradedAlgebra) -> dict:
    out = {
        "group": {"free_rank": A.spec.free_rank, "torsion": list(A.spec.torsion_orders)},
        "epsilon": {"matrix": [[format_rational(v) for v in row] for row in A.epsilon.matrix]},
        "basis": [{"name": n, "degree": list(d)} for n, d in zip(A.basis.names, A.basis.degrees)],
        "products": {
            f"{A.basis.names[i]},{A.basis.names[j]}": _element_json(A.basis, p)
            for (i, j), p in sorted(A.products.items())
        },
    }
    if A.twist is not None:
        out["twist"] = _map_json(A.twist)
    out["flavor"] = A.flavor
    return out


def dumps_algebra(A: GradedAlgebra) -> str:
    return json.dumps(algebra_to_data(A), indent=2) + "\n"


def loads_map(text: str, domain: GradedBasis, codomain: GradedBasis | None = None) -> EvenMap:
    """A map file is an object {basis name: {codomain name: rational}}; absent names map to 0."""
    doc = _Doc(text)
    target = codomain if codomain is not None else domain
    return EvenMap(domain, _map_columns(doc, domain, target, doc.data, "$"), codomain)


def dumps_map(f: EvenMap) -> str:
    return json.dumps(_map_json(f), indent=2) + "\n"


def loads_sigma(text: str, spec: GroupSpec) -> SigmaForm:
    """Sigma files: {"kind": ..., "matrix" | "omega" | "table": ...}.

    omega keys are group elements "1,0"; explicit table keys are "1,0;0,1".
    An optional "default" rational fills unlisted entries.
    """
    doc = _Doc(text)
    data = _obj(doc, doc.data, "$")
    kind = data.get("kind")
    default = data.get("default")
    if default is not None:
        default = parse_rational(doc, default, "$.default")
    try:
        if kind == "bimultiplicative":
            matrix = data.get("matrix")
            if not isinstance(matrix, list) or len(matrix) != spec.rank or \
                    not all(isinstance(r, list) and len(r) == spec.rank for r in matrix):
                raise doc.error(f"matrix must be {spec.rank}x{spec.rank}", "$.matrix")
            rows = [[parse_rational(doc, v, f"$.matrix[{i}][{j}]") for j, v in enumerate(r)]
                    for i, r in enumerate(matrix)]
            return SigmaForm.bimultiplicative(spec, rows)
        if kind == "coboundary":
            omega = {
                _group_key(doc, spec, k, "$.omega"): parse_rational(doc, v, f"$.omega.{k}")
                for k, v in _obj(doc, data.get("omega", {}), "$.omega").items()
            }
            return SigmaForm.coboundary(spec, omega, default)
        if kind == "explicit":
            table = {}
            for k, v in _obj(doc, data.get("table", {}), "$.table").items():
                halves = k.split(";")
                if len(halves) != 2:
                    raise doc.error(f"table key {k!r} must be 'a;b'", "$.table", k)
                key = (_group_key(doc, spec, halves[0], "$.table"), _group_key(doc, spec, halves[1], "$.table"))
                table[key] = parse_rational(doc, v, f"$.table.{k}")
            sigma = SigmaForm.explicit(spec, table)
            sigma.default = default
            return sigma
    except MalformedInputError as exc:
        if isinstance(exc, FormatError):
            raise
        raise doc.error(str(exc), "$") from None
    raise doc.error(f"unknown sigma kind {kind!r}", "$.kind", kind)


def dumps_sigma(sigma: SigmaForm) -> str:
    out = {"kind": sigma.kind}
    if sigma.kind == "bimultiplicative":
        out["matrix"] = [[format_rational(v) for v in row] for row in sigma.data]
    elif sigma.kind == "coboundary":
        out["omega"] = {_group_str(a): format_rational(v) for a, v in sorted(sigma.data.items())}
    else:
        out["table"] = {
            f"{_group_str(a)};{_group_str(b)}": format_rational(v)
            for (a, b), v in sorted(sigma.data.items())
        }
    if sigma.default is not None:
        out["default"] = format_rational(sigma.default)
    return json.dumps(out, indent=2) + "\n"
