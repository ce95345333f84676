"""Builders for the worked examples and a few auxiliary fixtures."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .algebra import Element, EvenMap, GradedAlgebra, GradedBasis, is_endomorphism, skew_complete
from .constructions import check_construction_output, endo_twist_bracket, endo_twist_mult, sigma_twist
from .grading import BiCharacter, GroupSpec, SigmaForm

CORPUS_IDS = (
    "sl2-color",
    "sl2-color-paper-eps",
    "sl2-hom",
    "heisenberg-color",
    "heisenberg-hom",
    "witt-z2",
    "group-hom-assoc",
    "sl2-sigma-twist",
)

Z2 = GroupSpec(0, (2,))
Z2xZ2 = GroupSpec(0, (2, 2))
Z2xZ2xZ2 = GroupSpec(0, (2, 2, 2))

# eps'(a, b) = (-1)^(a1 b2 + a2 b1); makes every choice of c12, c23, c31 a Lie color algebra
SL2_EPS = ((1, -1), (-1, 1))
# (-1)^(a1 b1 + a2 b2) as printed; fails the eps-Jacobi identity with these constants
SL2_PRINTED_EPS = ((-1, 1), (1, -1))
# sigma(a, b) = (-1)^(a1 b2)
SL2_SIGMA = ((1, -1), (1, 1))


def _sl2(eps_matrix) -> GradedAlgebra:
    basis = GradedBasis.from_pairs(Z2xZ2, [("a1", (1, 0)), ("a2", (0, 1)), ("a3", (1, 1))])
    products = {
        (0, 1): Element({2: -1}),
        (1, 2): Element({0: 1}),
        (2, 0): Element({1: 1}),
    }
    A = GradedAlgebra(Z2xZ2, BiCharacter(Z2xZ2, eps_matrix), basis, products, flavor="lie-color")
    return skew_complete(A)


def _heisenberg() -> GradedAlgebra:
    basis = GradedBasis.from_pairs(
        Z2xZ2xZ2, [("e1", (1, 1, 0)), ("e2", (1, 0, 1)), ("e3", (0, 1, 1))])
    eps = BiCharacter(Z2xZ2xZ2, ((-1, 1, 1), (1, -1, 1), (1, 1, -1)))
    A = GradedAlgebra(Z2xZ2xZ2, eps, basis, {(0, 1): Element({2: 1})}, flavor="lie-color")
    return skew_complete(A)


def heisenberg_twist(H: GradedAlgebra, lam1, lam2) -> EvenMap:
    lam1, lam2 = Fraction(lam1), Fraction(lam2)
    if lam1 == 0 or lam2 == 0:
        raise ValueError("lambda1 and lambda2 must be nonzero")
    return EvenMap.diagonal(H.basis, (lam1, lam2, lam1 * lam2))


def _witt_z2() -> GradedAlgebra:
    """Witt type on Z2 with eps(1,1) = -1 and s = 1: [e_a, e_b] = (1 - eps(a,b)) e_{a+b}."""
    eps = BiCharacter(Z2, ((-1,),))
    basis = GradedBasis.from_pairs(Z2, [("e0", (0,)), ("e1", (1,))])
    s = lambda a: Fraction(1)
    products = {}
    for i, j in itertools.product(range(2), repeat=2):
        a, b = basis.degrees[i], basis.degrees[j]
        c = s(b) - eps(a, b) * s(a)
        products[(i, j)] = Element({basis.component(Z2.add(a, b))[0]: c})
    return GradedAlgebra(Z2, eps, basis, products, flavor="lie-color")


def _group_algebra_z2() -> GradedAlgebra:
    basis = GradedBasis.from_pairs(Z2, [("u0", (0,)), ("u1", (1,))])
    products = {(i, j): Element({(i + j) % 2: 1}) for i in range(2) for j in range(2)}
    return GradedAlgebra(Z2, BiCharacter.trivial(Z2), basis, products, flavor="raw")


def build(corpus_id: str, *params) -> GradedAlgebra:
    """Build a corpus algebra; the twist (if any) travels inside the algebra."""
    if corpus_id == "sl2-color":
        A = _sl2(SL2_EPS)
    elif corpus_id == "sl2-color-paper-eps":
        A = _sl2(SL2_PRINTED_EPS)
    elif corpus_id == "sl2-hom":
        L = _sl2(SL2_EPS)
        A = endo_twist_bracket(L, EvenMap.diagonal(L.basis, (-1, -1, 1)))
    elif corpus_id == "heisenberg-color":
        A = _heisenberg()
    elif corpus_id == "heisenberg-hom":
        lam1, lam2 = params if params else (1, 1)
        H = _heisenberg()
        A = endo_twist_bracket(H, heisenberg_twist(H, lam1, lam2))
    elif corpus_id == "witt-z2":
        A = _witt_z2()
    elif corpus_id == "group-hom-assoc":
        G = _group_algebra_z2()
        A = endo_twist_mult(G, EvenMap.diagonal(G.basis, (1, -1)))
    elif corpus_id == "sl2-sigma-twist":
        H = build("sl2-hom")
        A = sigma_twist(H, SigmaForm.bimultiplicative(Z2xZ2, SL2_SIGMA), "multiplier")
    else:
        raise KeyError(f"unknown corpus id {corpus_id!r}")
    if corpus_id != "heisenberg-hom" and params:
        raise ValueError(f"{corpus_id} takes no parameters")
    assert check_construction_output(A)
    return A


def solve_diagonal_endomorphisms(L: GradedAlgebra, candidates, nonzero_only: bool = False) -> list:
    """All diagonal maps with entries drawn from candidates that are endomorphisms of L."""
    for d in set(L.basis.degrees):
        if len(L.basis.component(d)) != 1:
            raise ValueError("every homogeneous component must be one-dimensional")
    values = sorted(set(Fraction(c) for c in candidates))
    found = []
    for diag in itertools.product(values, repeat=L.dim):
        if nonzero_only and all(v == 0 for v in diag):
            continue
        f = EvenMap.diagonal(L.basis, diag)
        if is_endomorphism(L, f).ok:
            found.append(f)
    return found


def diagonal_entries(f: EvenMap) -> tuple:
    return tuple(f.column(i).coeff(i) for i in range(len(f.domain)))
