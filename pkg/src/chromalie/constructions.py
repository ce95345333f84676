"""Algebra-producing constructions: commutators, twists and the Laurent extension."""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from . import axioms
from .algebra import Element, EvenMap, GradedAlgebra, check_evenness, is_endomorphism, is_even_map, mult_eval
from .grading import (
    SigmaForm,
    SupportMissError,
    delta_from_sigma,
    product_bicharacter,
    validate_multiplier,
    validate_symmetric_multiplier,
)

DEFAULT_SEED = 0x5EED


class ConstructionError(ValueError):
    """A construction's hypothesis fails; ``witness`` names the offending tuple."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionWarning(UserWarning):
    pass


def _names(A, idx):
    return "(" + ",".join(A.basis.names[i] for i in idx) + ")"


def commutator_algebra(A: GradedAlgebra, zeta: EvenMap | None = None) -> GradedAlgebra:
    """[x,y] = mu(x,y) - eps(x,y) mu(y,x), same basis, eps and twist.

    If A is not Hom-associative under its twist the algebra is still built,
    with a PreconditionWarning.
    """
    zeta = zeta if zeta is not None else A.zeta()
    assoc = axioms.check_hom_associativity(A, zeta)
    if not assoc.passed:
        warnings.warn(
            f"input is not hom-associative: {assoc.first().describe(A)}",
            PreconditionWarning, stacklevel=2,
        )
    return A.replace(products=axioms.commutator_products(A), twist=zeta, flavor="hom-lie-color")


def _require_endomorphism(A, zeta):
    if zeta.domain != A.basis:
        raise ConstructionError("map is defined on a different basis")
    res = is_endomorphism(A, zeta)
    if not res.ok:
        if res.witness is None:
            raise ConstructionError("map is not even")
        raise ConstructionError(
            f"map is not an algebra endomorphism at {_names(A, res.witness)}", res.witness)


def endo_twist_mult(A: GradedAlgebra, zeta: EvenMap) -> GradedAlgebra:
    """(A, zeta o mu, zeta) for an associative A and multiplicative even zeta."""
    assoc = axioms.check_hom_associativity(A, EvenMap.identity(A.basis))
    if not assoc.passed:
        v = assoc.first()
        raise ConstructionError(f"input is not associative at {_names(A, v.indices)}", v.indices)
    _require_endomorphism(A, zeta)
    products = {k: zeta(p) for k, p in A.products.items()}
    return A.replace(products=products, twist=zeta, flavor="hom-color")


def endo_twist_bracket(L: GradedAlgebra, zeta: EvenMap) -> GradedAlgebra:
    """(L, zeta o [.,.], zeta, eps) for a Lie color algebra L and even endomorphism zeta."""
    for check in (axioms.check_eps_skew, axioms.check_eps_jacobi):
        rep = check(L)
        if not rep.passed:
            v = rep.first()
            raise ConstructionError(f"input is not a Lie color algebra: {v.describe(L)}", v.indices)
    _require_endomorphism(L, zeta)
    products = {k: zeta(p) for k, p in L.products.items()}
    return L.replace(products=products, twist=zeta, flavor="hom-lie-color")


def degree_support(A: GradedAlgebra) -> list:
    return sorted(set(A.basis.degrees))


def _required_pairs(A: GradedAlgebra) -> set:
    """Every (a, b) at which a sigma check or twist of A evaluates sigma."""
    add = A.spec.add
    degs = degree_support(A)
    sums = sorted({add(a, b) for a in degs for b in degs})
    need = set()
    for a in degs:
        for b in degs:
            need.add((a, b))
        for s in sums:
            need.add((a, s))
            need.add((s, a))
    return need


def sigma_twist(L: GradedAlgebra, sigma: SigmaForm, mode: str = "multiplier") -> GradedAlgebra:
    """[x,y]^sigma = sigma(x,y)[x,y].

    ``symmetric`` mode needs a symmetric multiplier and keeps eps;
    ``multiplier`` mode needs a multiplier and replaces eps by eps*delta.
    sigma is only consulted on the degree support of L (closed under one
    addition); explicit tables that do not cover it are rejected first.
    """
    if mode not in ("symmetric", "multiplier"):
        raise ValueError(f"unknown mode {mode!r}")
    if sigma.spec != L.spec:
        raise ConstructionError("sigma is defined on a different group")
    missing = sorted(p for p in _required_pairs(L) if not sigma.covers(*p))
    if missing:
        raise SupportMissError(
            f"sigma does not cover the degree support; first missing pair {missing[0]}")
    support = degree_support(L)
    if mode == "symmetric":
        res = validate_symmetric_multiplier(sigma, support)
        epsilon = L.epsilon
    else:
        res = validate_multiplier(sigma, support)
    if not res.ok:
        raise ConstructionError(f"sigma fails the {res.reason} at {res.witness}", res.witness)
    if mode == "multiplier":
        delta = delta_from_sigma(sigma)
        epsilon = product_bicharacter(L.epsilon, delta.to_bicharacter())
        for a in support:
            for b in support:
                if epsilon(a, b) != L.epsilon(a, b) * delta(a, b):
                    raise ConstructionError(
                        f"delta is not bimultiplicative on the degree support at {(a, b)}", (a, b))
    products = {(i, j): p * sigma(L.deg(i), L.deg(j)) for (i, j), p in L.products.items()}
    flavor = L.flavor if L.flavor in ("lie-color", "hom-lie-color") else "hom-lie-color"
    return L.replace(products=products, epsilon=epsilon, flavor=flavor)


# --- Laurent polynomials and L (x) F[t, t^-1] ---------------------------------


class LaurentPoly:
    """Exact Laurent polynomial: exponent -> nonzero Fraction."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for e, c in items:
            c = Fraction(c)
            if c:
                acc[int(e)] = acc.get(int(e), 0) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "LaurentPoly":
        return cls({exponent: coeff})

    def items(self):
        return self._terms

    def as_dict(self) -> dict:
        return dict(self._terms)

    def min_exponent(self):
        return self._terms[0][0] if self._terms else None

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(self._terms)

    def __add__(self, other):
        return LaurentPoly(self._terms + other._terms)

    def __sub__(self, other):
        return LaurentPoly(self._terms + tuple((e, -c) for e, c in other._terms))

    def __neg__(self):
        return LaurentPoly((e, -c) for e, c in self._terms)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return LaurentPoly(
                (e1 + e2, c1 * c2) for e1, c1 in self._terms for e2, c2 in other._terms)
        other = Fraction(other)
        return LaurentPoly((e, c * other) for e, c in self._terms)

    __rmul__ = __mul__

    def shift(self, lam) -> "LaurentPoly":
        """f(t) -> f(lam + t); defined only for polynomials (no negative exponents)."""
        lam = Fraction(lam)
        if self._terms and self._terms[0][0] < 0:
            raise ValueError("f(lam + t) is not a Laurent polynomial when f has negative exponents")
        out = []
        for e, c in self._terms:
            for k in range(e + 1):
                out.append((k, c * math.comb(e, k) * lam ** (e - k)))
        return LaurentPoly(out)

    def __repr__(self):
        return f"LaurentPoly({dict(self._terms)!r})"


class ExtendedElement:
    """Finite sum of x_i (x) f_i(t) with x_i basis vectors of L."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, LaurentPoly] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, LaurentPoly] = {}
        for i, f in items:
            acc[i] = acc.get(i, LaurentPoly()) + f
        self._terms = tuple(sorted((i, f) for i, f in acc.items() if f))

    @classmethod
    def tensor(cls, x: Element, f: LaurentPoly) -> "ExtendedElement":
        return cls((i, f * c) for i, c in x.items())

    def items(self):
        return self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, ExtendedElement):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(self._terms)

    def __add__(self, other):
        return ExtendedElement(self._terms + other._terms)

    def __sub__(self, other):
        return ExtendedElement(self._terms + tuple((i, -f) for i, f in other._terms))

    def __mul__(self, scalar):
        return ExtendedElement((i, f * scalar) for i, f in self._terms)

    __rmul__ = __mul__

    def __repr__(self):
        return f"ExtendedElement({dict(self._terms)!r})"


def laurent_substitution_map(lam) -> Callable:
    """zeta_lam(x (x) f(t)) = x (x) f(lam + t); accepts LaurentPoly or ExtendedElement."""
    lam = Fraction(lam)

    def apply(u):
        if isinstance(u, LaurentPoly):
            return u.shift(lam)
        return ExtendedElement((i, f.shift(lam)) for i, f in u.items())
    return apply


@dataclass
class SampleReport:
    name: str
    failures: list
    checked: int

    @property
    def passed(self) -> bool:
        return not self.failures


class LaurentExtension:
    """L' = L (x) F[t, t^-1] with [x (x) f, y (x) g] = [x, y] (x) fg.

    ``twist`` acts on extended elements; by default it is zeta_L (x) id.
    ``outer`` (optional) is post-composed with the bracket, which is how a
    twisted bracket zeta o [.,.] on L' is represented.
    """

    def __init__(self, L: GradedAlgebra, twist: Callable | None = None, outer: Callable | None = None):
        self.L = L
        self._twist = twist
        self._outer = outer

    def zeta(self, u: ExtendedElement) -> ExtendedElement:
        if self._twist is not None:
            return self._twist(u)
        z = self.L.zeta()
        out = []
        for i, f in u.items():
            out.extend((k, f * c) for k, c in z.column(i).items())
        return ExtendedElement(out)

    def bracket(self, u: ExtendedElement, v: ExtendedElement) -> ExtendedElement:
        out = []
        for i, f in u.items():
            for j, g in v.items():
                p = self.L.prod(i, j)
                if p:
                    fg = f * g
                    out.extend((k, fg * c) for k, c in p.items())
        res = ExtendedElement(out)
        return self._outer(res) if self._outer is not None else res

    def twisted(self, zeta: Callable) -> "LaurentExtension":
        """(L', zeta o [.,.], zeta) for an endomorphism zeta of this bracket."""
        return LaurentExtension(self.L, twist=zeta, outer=zeta)

    def degree(self, u: ExtendedElement):
        degs = {self.L.deg(i) for i, _ in u.items()}
        if len(degs) > 1:
            raise ValueError("extended element is not homogeneous")
        return degs.pop() if degs else None

    def eps(self, u, v):
        return self.L.epsilon(self.degree(u), self.degree(v))

    # sampled checks on homogeneous extended elements

    def sample(self, rng: random.Random, bound: int = 4, min_exponent: int | None = None) -> ExtendedElement:
        """A random homogeneous element: same-degree basis vectors times Laurent polys."""
        lo = -bound if min_exponent is None else min_exponent
        degree = rng.choice(sorted(set(self.L.basis.degrees)))
        idx = self.L.basis.component(degree)
        terms = []
        for i in rng.sample(idx, rng.randint(1, len(idx))):
            poly = LaurentPoly(
                (rng.randint(lo, bound), Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
                for _ in range(rng.randint(1, 3)))
            if not poly:
                poly = LaurentPoly.monomial(rng.randint(lo, bound))
            terms.append((i, poly))
        return ExtendedElement(terms)

    def sample_triples(self, n: int = 64, bound: int = 4, seed: int = DEFAULT_SEED,
                       min_exponent: int | None = None) -> list:
        rng = random.Random(seed)
        return [tuple(self.sample(rng, bound, min_exponent) for _ in range(3)) for _ in range(n)]

    def skew_residual(self, u, v):
        return self.bracket(u, v) + self.bracket(v, u) * self.eps(u, v)

    def jacobi_residual(self, u, v, w):
        b, z = self.bracket, self.zeta
        return (b(z(u), b(v, w)) * self.eps(w, u)
                + b(z(v), b(w, u)) * self.eps(u, v)
                + b(z(w), b(u, v)) * self.eps(v, w))

    def check_skew(self, samples) -> SampleReport:
        fails = [(k, "pair") for k, (u, v, _) in enumerate(samples) if self.skew_residual(u, v)]
        return SampleReport("eps-skew", fails, len(samples))

    def check_hom_jacobi(self, samples) -> SampleReport:
        fails = [(k, "triple") for k, t in enumerate(samples) if self.jacobi_residual(*t)]
        return SampleReport("hom-eps-jacobi", fails, len(samples))

    def check_endomorphism(self, phi: Callable, samples) -> SampleReport:
        """phi[u, v] == [phi u, phi v] on the first two entries of each sample."""
        fails = [
            (k, "pair") for k, (u, v, _) in enumerate(samples)
            if phi(self.bracket(u, v)) != self.bracket(phi(u), phi(v))
        ]
        return SampleReport("endomorphism", fails, len(samples))


def laurent_extend(L: GradedAlgebra) -> LaurentExtension:
    return LaurentExtension(L)


def check_construction_output(A: GradedAlgebra) -> bool:
    """Evenness of table and twist; used by builders as a sanity gate."""
    return check_evenness(A).passed and (A.twist is None or is_even_map(A.twist).ok)
