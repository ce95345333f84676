"""Graded bases, sparse elements, structure constants and even maps."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .grading import BiCharacter, CheckResult, GroupSpec, MalformedInputError

FLAVORS = ("lie-color", "hom-lie-color", "hom-color", "raw")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class Element:
    """Sparse vector over a basis: basis index -> nonzero Fraction.

    Immutable; equality and hashing go through the sorted term tuple.
    """

    __slots__ = ("_terms",)

    def __init__(self, coeffs: Mapping[int, object] | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, (dict, Mapping)) else coeffs
        acc: dict[int, Fraction] = {}
        for i, c in items:
            if type(c) is not Fraction:
                c = Fraction(c)
            if c:
                acc[i] = acc.get(i, 0) + c
        self._terms = tuple(sorted((i, c) for i, c in acc.items() if c))

    @classmethod
    def _raw(cls, terms: tuple) -> "Element":
        # terms already sorted, unique and nonzero Fractions
        x = object.__new__(cls)
        x._terms = terms
        return x

    @classmethod
    def _merge(cls, pairs) -> "Element":
        acc: dict = {}
        for i, c in pairs:
            acc[i] = acc.get(i, 0) + c
        return cls._raw(tuple(sorted((i, c) for i, c in acc.items() if c)))

    @classmethod
    def basis(cls, i: int, coeff=1) -> "Element":
        return cls({i: coeff})

    def items(self):
        return self._terms

    def support(self) -> tuple:
        return tuple(i for i, _ in self._terms)

    def coeff(self, i: int) -> Fraction:
        for j, c in self._terms:
            if j == i:
                return c
        return Fraction(0)

    def as_dict(self) -> dict:
        return dict(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(self._terms)

    def __add__(self, other: "Element") -> "Element":
        if not other._terms:
            return self
        if not self._terms:
            return other
        return Element._merge(self._terms + other._terms)

    def __sub__(self, other: "Element") -> "Element":
        return Element._merge(self._terms + tuple((i, -c) for i, c in other._terms))

    def __neg__(self) -> "Element":
        return Element._raw(tuple((i, -c) for i, c in self._terms))

    def __mul__(self, scalar) -> "Element":
        if type(scalar) is not Fraction:
            scalar = Fraction(scalar)
        if not scalar:
            return ZERO
        if scalar == 1:
            return self
        return Element._raw(tuple((i, scalar * c) for i, c in self._terms))

    __rmul__ = __mul__

    def __repr__(self):
        return f"Element({dict(self._terms)!r})"


ZERO = Element()


def element_sum(parts: Iterable[Element]) -> Element:
    return Element._merge(t for p in parts for t in p.items())


@dataclass(frozen=True)
class GradedBasis:
    names: tuple
    degrees: tuple
    spec: GroupSpec

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(tuple(d) for d in self.degrees))
        if len(self.names) != len(self.degrees):
            raise MalformedInputError("names and degrees differ in length")
        if len(set(self.names)) != len(self.names):
            raise MalformedInputError("basis names must be unique")
        for name, deg in zip(self.names, self.degrees):
            if not _NAME.match(name):
                raise MalformedInputError(f"basis name {name!r} is not an identifier")
            if not self.spec.is_canonical(deg):
                raise MalformedInputError(f"degree {deg} of {name} is not canonical")

    @classmethod
    def from_pairs(cls, spec: GroupSpec, pairs) -> "GradedBasis":
        pairs = list(pairs)
        return cls(tuple(n for n, _ in pairs), tuple(spec.canon(d) for _, d in pairs), spec)

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise MalformedInputError(f"unknown basis name {name!r}") from None

    def component(self, degree) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == tuple(degree)]

    def degree_of(self, x: Element):
        """Degree of a nonzero homogeneous element, None for zero."""
        degs = {self.degrees[i] for i in x.support()}
        if len(degs) > 1:
            raise ValueError(f"element {x!r} is not homogeneous")
        return degs.pop() if degs else None

    def is_homogeneous(self, x: Element, degree) -> bool:
        return all(self.degrees[i] == tuple(degree) for i in x.support())

    def format(self, x: Element) -> str:
        if not x:
            return "0"
        out = []
        for k, (i, c) in enumerate(x.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            term = self.names[i] if mag == 1 else f"{mag}*{self.names[i]}"
            if k == 0:
                out.append(term if sign == "+" else "-" + term)
            else:
                out.append(f" {sign} {term}")
        return "".join(out)


@dataclass(frozen=True)
class EvenMap:
    """Linear map given by the images of basis vectors (missing columns map to 0)."""

    domain: GradedBasis
    columns: Mapping
    codomain: GradedBasis | None = None

    def __post_init__(self):
        cols = {int(i): e for i, e in dict(self.columns).items() if e}
        object.__setattr__(self, "columns", dict(sorted(cols.items())))

    @property
    def target(self) -> GradedBasis:
        return self.codomain if self.codomain is not None else self.domain

    @classmethod
    def identity(cls, basis: GradedBasis) -> "EvenMap":
        return cls(basis, {i: Element.basis(i) for i in range(len(basis))})

    @classmethod
    def diagonal(cls, basis: GradedBasis, values) -> "EvenMap":
        return cls(basis, {i: Element.basis(i, v) for i, v in enumerate(values)})

    def column(self, i: int) -> Element:
        return self.columns.get(i, ZERO)

    def __call__(self, x: Element) -> Element:
        return apply_map(self, x)

    def compose(self, other: "EvenMap") -> "EvenMap":
        """self after other."""
        return EvenMap(other.domain, {i: self(c) for i, c in other.columns.items()}, self.codomain)

    def __eq__(self, other):
        if not isinstance(other, EvenMap):
            return NotImplemented
        return (self.domain, self.columns, self.target) == (other.domain, other.columns, other.target)


def apply_map(f: EvenMap, x: Element) -> Element:
    return element_sum(f.column(i) * c for i, c in x.items())


def is_even_map(f: EvenMap) -> CheckResult:
    bad = [
        i for i, img in f.columns.items()
        if not f.target.is_homogeneous(img, f.domain.degrees[i])
    ]
    return CheckResult(not bad, tuple(bad) or None, "degree not preserved" if bad else "")


@dataclass
class GradedAlgebra:
    """A graded algebra: basis, commutation factor, sparse products, optional twist.

    ``products`` maps ordered index pairs to Elements; absent pairs are zero.
    Construction only checks well-formedness; evenness is a reported check
    (see check_evenness) so that defective tables stay expressible.
    """

    spec: GroupSpec
    epsilon: BiCharacter
    basis: GradedBasis
    products: dict = field(default_factory=dict)
    twist: EvenMap | None = None
    flavor: str = "raw"

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise MalformedInputError(f"unknown flavor {self.flavor!r}")
        if self.epsilon.spec != self.spec or self.basis.spec != self.spec:
            raise MalformedInputError("grading group mismatch")
        n = len(self.basis)
        clean = {}
        for (i, j), e in self.products.items():
            if not (0 <= i < n and 0 <= j < n) or any(k >= n for k in e.support()):
                raise MalformedInputError(f"product ({i},{j}) references unknown basis index")
            if e:
                clean[(i, j)] = e
        self.products = dict(sorted(clean.items()))
        if self.twist is not None and self.twist.domain != self.basis:
            raise MalformedInputError("twist is defined on a different basis")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def deg(self, i: int):
        return self.basis.degrees[i]

    def eps(self, i: int, j: int) -> Fraction:
        return self.epsilon(self.basis.degrees[i], self.basis.degrees[j])

    def vec(self, i: int) -> Element:
        return Element.basis(i)

    def zeta(self) -> EvenMap:
        return self.twist if self.twist is not None else EvenMap.identity(self.basis)

    def prod(self, i: int, j: int) -> Element:
        return self.products.get((i, j), ZERO)

    def mult(self, x: Element, y: Element) -> Element:
        return mult_eval(self, x, y)

    def replace(self, **changes) -> "GradedAlgebra":
        fields = dict(spec=self.spec, epsilon=self.epsilon, basis=self.basis,
                      products=self.products, twist=self.twist, flavor=self.flavor)
        fields.update(changes)
        return GradedAlgebra(**fields)


def mult_eval(A: GradedAlgebra, x: Element, y: Element) -> Element:
    parts = []
    for i, a in x.items():
        for j, b in y.items():
            p = A.products.get((i, j))
            if p:
                parts.append(p * (a * b))
    return element_sum(parts)


def check_evenness(A: GradedAlgebra):
    """One violation per stored product that leaves A_{deg i + deg j}."""
    from .axioms import Violation, ViolationReport

    found = []
    for (i, j), p in A.products.items():
        target = A.spec.add(A.deg(i), A.deg(j))
        if not A.basis.is_homogeneous(p, target):
            wrong = Element((k, c) for k, c in p.items() if A.deg(k) != target)
            found.append(Violation("evenness", (i, j), wrong))
    return ViolationReport("evenness", found, A.dim ** 2, "pairs")


def is_endomorphism(A: GradedAlgebra, zeta: EvenMap) -> CheckResult:
    """zeta(x_i x_j) == zeta(x_i) zeta(x_j) on every basis pair."""
    if not is_even_map(zeta):
        return CheckResult(False, None, "map is not even")
    for i, j in itertools.product(range(A.dim), repeat=2):
        if zeta(A.prod(i, j)) != mult_eval(A, zeta.column(i), zeta.column(j)):
            return CheckResult(False, (i, j), "product not preserved")
    return CheckResult(True)


def skew_complete(A: GradedAlgebra) -> GradedAlgebra:
    """Fill [x_j, x_i] := -eps(x_i, x_j) [x_i, x_j] for every pair given one way only.

    Diagonal products that are absent stay zero (see unforced_diagonals).
    """
    products = dict(A.products)
    for (i, j), p in A.products.items():
        if i != j and (j, i) not in A.products:
            products[(j, i)] = p * (-A.eps(i, j))
    return A.replace(products=products)


def unforced_diagonals(A: GradedAlgebra) -> list[int]:
    """Indices i whose zero default for [x_i, x_i] is not forced by skew-symmetry or grading.

    [x, x] = -eps(x, x)[x, x] already forces zero when eps(x, x) = 1; when
    eps(x, x) = -1 the default is only justified if A_{2 deg x} = 0.
    """
    out = []
    for i in range(A.dim):
        if (i, i) in A.products or A.eps(i, i) == 1:
            continue
        if A.basis.component(A.spec.add(A.deg(i), A.deg(i))):
            out.append(i)
    return out
