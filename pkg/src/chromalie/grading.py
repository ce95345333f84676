"""Grading groups, bi-characters and multipliers.

A grading group is Z^r x Z_{n1} x ... x Z_{nk}; its elements are plain
tuples of ints in canonical form (torsion coordinates reduced into
[0, n)).  Free coordinates come first.  Tuples order lexicographically,
which is the tie-break used for every "first counterexample".
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

GroupElement = tuple  # tuple[int, ...]


class MalformedInputError(ValueError):
    """Input that cannot describe the requested object at all."""


class SupportMissError(KeyError):
    """An explicit table was asked for a value outside its declared support."""

    def __str__(self):
        return self.args[0] if self.args else "support miss"


class CheckResult(NamedTuple):
    ok: bool
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class GroupSpec:
    free_rank: int = 0
    torsion_orders: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion_orders", tuple(int(n) for n in self.torsion_orders))
        if self.free_rank < 0:
            raise MalformedInputError("free_rank must be non-negative")
        for n in self.torsion_orders:
            if n < 2:
                raise MalformedInputError(f"torsion order {n} is < 2")

    @property
    def rank(self) -> int:
        return self.free_rank + len(self.torsion_orders)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def _moduli(self):
        return (None,) * self.free_rank + self.torsion_orders

    def canon(self, coords: Iterable[int]) -> GroupElement:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise MalformedInputError(
                f"expected {self.rank} coordinates, got {len(coords)}"
            )
        return tuple(c if n is None else c % n for c, n in zip(coords, self._moduli()))

    def is_canonical(self, a: Sequence[int]) -> bool:
        if len(a) != self.rank:
            return False
        return all(n is None or 0 <= c < n for c, n in zip(a, self._moduli()))

    def zero(self) -> GroupElement:
        return (0,) * self.rank

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        if len(a) != self.rank or len(b) != self.rank:
            raise MalformedInputError("coordinate count does not match group")
        return self.canon(x + y for x, y in zip(a, b))

    def neg(self, a: GroupElement) -> GroupElement:
        return self.canon(-x for x in a)

    def generators(self) -> list[GroupElement]:
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def elements(self) -> list[GroupElement]:
        """All elements, lexicographically; only for finite groups."""
        if not self.is_finite:
            raise ValueError("group is infinite")
        return list(itertools.product(*(range(n) for n in self.torsion_orders)))


def group_add(spec: GroupSpec, a: GroupElement, b: GroupElement) -> GroupElement:
    return spec.add(a, b)


def _as_matrix(matrix, size: int) -> tuple:
    rows = tuple(tuple(Fraction(v) for v in row) for row in matrix)
    if len(rows) != size or any(len(r) != size for r in rows):
        raise MalformedInputError(f"matrix must be {size}x{size}")
    for row in rows:
        if any(v == 0 for v in row):
            raise MalformedInputError("matrix entries must be nonzero")
    return rows


@functools.lru_cache(maxsize=8192)
def _bimult(matrix, a, b) -> Fraction:
    value = Fraction(1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                value *= matrix[i][j] ** (ai * bj)
    return value


@dataclass
class ValidationReport:
    problems: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.valid


def validate_bicharacter(spec: GroupSpec, matrix) -> ValidationReport:
    """Check the generator table of a commutation factor.

    Raises MalformedInputError for a zero or wrongly sized table; every
    other defect ends up in the returned report.
    """
    b = _as_matrix(matrix, spec.rank)
    orders = (None,) * spec.free_rank + spec.torsion_orders
    report = ValidationReport()
    for i in range(spec.rank):
        if b[i][i] not in (1, -1):
            report.problems.append(f"diagonal: b[{i}][{i}] = {b[i][i]} is not +1 or -1")
        for j in range(spec.rank):
            if j > i and b[i][j] * b[j][i] != 1:
                report.problems.append(
                    f"reciprocal: b[{i}][{j}] * b[{j}][{i}] = {b[i][j] * b[j][i]} != 1"
                )
            for k in (i, j):
                n = orders[k]
                if n is not None and b[i][j] ** n != 1:
                    report.problems.append(
                        f"torsion: b[{i}][{j}]^{n} = {b[i][j] ** n} != 1"
                    )
                    break
    return report


@dataclass(frozen=True)
class BiCharacter:
    """Commutation factor stored on generator pairs, extended bimultiplicatively."""

    spec: GroupSpec
    matrix: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrix", _as_matrix(self.matrix, self.spec.rank))

    @classmethod
    def validated(cls, spec: GroupSpec, matrix) -> "BiCharacter":
        report = validate_bicharacter(spec, matrix)
        if not report.valid:
            raise MalformedInputError("; ".join(report.problems))
        return cls(spec, matrix)

    @classmethod
    def trivial(cls, spec: GroupSpec) -> "BiCharacter":
        return cls(spec, [[1] * spec.rank for _ in range(spec.rank)])

    def __call__(self, a: GroupElement, b: GroupElement) -> Fraction:
        return bicharacter_eval(self, a, b)


def bicharacter_eval(eps: BiCharacter, a: GroupElement, b: GroupElement) -> Fraction:
    if len(a) != eps.spec.rank or len(b) != eps.spec.rank:
        raise MalformedInputError("coordinate count does not match bi-character")
    return _bimult(eps.matrix, tuple(a), tuple(b))


def product_bicharacter(eps: BiCharacter, delta: BiCharacter) -> BiCharacter:
    if eps.spec != delta.spec:
        raise MalformedInputError("bi-characters live on different groups")
    n = eps.spec.rank
    return BiCharacter(
        eps.spec, [[eps.matrix[i][j] * delta.matrix[i][j] for j in range(n)] for i in range(n)]
    )


class SigmaForm:
    """A map Gamma x Gamma -> F*, in one of three representations.

    ``bimultiplicative``: generator matrix, extended like a bi-character.
    ``coboundary``: omega table, sigma(a, b) = omega(a+b) / (omega(a) omega(b)).
    ``explicit``: finite table of pairs; lookups outside it raise SupportMissError.
    """

    KINDS = ("bimultiplicative", "coboundary", "explicit")

    def __init__(self, spec: GroupSpec, kind: str, data, default=None):
        if kind not in self.KINDS:
            raise MalformedInputError(f"unknown sigma kind {kind!r}")
        self.spec = spec
        self.kind = kind
        self.default = None if default is None else Fraction(default)
        if self.default == 0:
            raise MalformedInputError("sigma values must be nonzero")
        if kind == "bimultiplicative":
            self.data = _as_matrix(data, spec.rank)
        else:
            table = {}
            for key, value in dict(data).items():
                value = Fraction(value)
                if value == 0:
                    raise MalformedInputError("sigma values must be nonzero")
                if kind == "coboundary":
                    key = spec.canon(key)
                else:
                    key = (spec.canon(key[0]), spec.canon(key[1]))
                table[key] = value
            self.data = table

    @classmethod
    def bimultiplicative(cls, spec, matrix):
        return cls(spec, "bimultiplicative", matrix)

    @classmethod
    def coboundary(cls, spec, omega, default=None):
        return cls(spec, "coboundary", omega, default)

    @classmethod
    def explicit(cls, spec, table):
        return cls(spec, "explicit", table)

    @classmethod
    def constant_one(cls, spec):
        return cls(spec, "coboundary", {}, default=1)

    def _omega(self, a):
        try:
            return self.data[a]
        except KeyError:
            if self.default is not None:
                return self.default
            raise SupportMissError(f"omega is not defined at {a}") from None

    def __call__(self, a: GroupElement, b: GroupElement) -> Fraction:
        return sigma_eval(self, a, b)

    def covers(self, a, b) -> bool:
        try:
            self(a, b)
        except SupportMissError:
            return False
        return True

    def __eq__(self, other):
        if not isinstance(other, SigmaForm):
            return NotImplemented
        return (self.spec, self.kind, self.data, self.default) == (
            other.spec, other.kind, other.data, other.default)

    def __repr__(self):
        return f"SigmaForm({self.kind}, {self.data!r})"


def sigma_eval(sigma: SigmaForm, a: GroupElement, b: GroupElement) -> Fraction:
    if sigma.kind == "bimultiplicative":
        return _bimult(sigma.data, tuple(a), tuple(b))
    if sigma.kind == "coboundary":
        s = sigma.spec.add(a, b)
        return sigma._omega(s) / (sigma._omega(a) * sigma._omega(b))
    try:
        return sigma.data[(a, b)]
    except KeyError:
        if sigma.default is not None:
            return sigma.default
        raise SupportMissError(f"sigma is not defined at ({a}, {b})") from None


def _sorted_support(support) -> list:
    return sorted(set(tuple(a) for a in support))


def validate_multiplier(sigma: SigmaForm, support) -> CheckResult:
    """sigma(a, b+c) sigma(b, c) == sigma(a, b) sigma(a+b, c) on support^3."""
    add = sigma.spec.add
    pts = _sorted_support(support)
    for a, b, c in itertools.product(pts, repeat=3):
        lhs = sigma(a, add(b, c)) * sigma(b, c)
        rhs = sigma(a, b) * sigma(add(a, b), c)
        if lhs != rhs:
            return CheckResult(False, (a, b, c), "multiplier law")
    return CheckResult(True)


def validate_symmetric_multiplier(sigma: SigmaForm, support) -> CheckResult:
    """Symmetry on pairs, then cyclic invariance of sigma(a, b) sigma(c, a+b)."""
    add = sigma.spec.add
    pts = _sorted_support(support)
    for a, b in itertools.product(pts, repeat=2):
        if sigma(a, b) != sigma(b, a):
            return CheckResult(False, (a, b), "symmetry")
    for a, b, c in itertools.product(pts, repeat=3):
        v = sigma(a, b) * sigma(c, add(a, b))
        if v != sigma(b, c) * sigma(a, add(b, c)) or v != sigma(c, a) * sigma(b, add(c, a)):
            return CheckResult(False, (a, b, c), "cyclic invariance")
    return CheckResult(True)


class Delta:
    """delta(a, b) = sigma(a, b) / sigma(b, a) as an evaluator."""

    def __init__(self, sigma: SigmaForm):
        self.sigma = sigma
        self.spec = sigma.spec

    def __call__(self, a, b) -> Fraction:
        return self.sigma(a, b) / self.sigma(b, a)

    def to_bicharacter(self) -> BiCharacter:
        """Materialize on generator pairs.

        Exact for bimultiplicative sigma; for other kinds this relies on the
        multiplier law making delta bimultiplicative, so callers should
        confirm agreement on the degrees they use.
        """
        if self.sigma.kind == "bimultiplicative":
            b = self.sigma.data
            n = self.spec.rank
            return BiCharacter(self.spec, [[b[i][j] / b[j][i] for j in range(n)] for i in range(n)])
        gens = self.spec.generators()
        return BiCharacter(self.spec, [[self(g, h) for h in gens] for g in gens])


def delta_from_sigma(sigma: SigmaForm) -> Delta:
    return Delta(sigma)
