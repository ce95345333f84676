"""Exhaustive identity checks over homogeneous basis tuples.

Every check is bilinear (or trilinear) in its arguments, so quantifying over
basis tuples is enough.  The only exception is flexibility, which is
quadratic in x; it is checked in linearized form on same-degree pairs.
"""

from __future__ import annotations

import enum
import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ZERO, Element, EvenMap, GradedAlgebra, element_sum, mult_eval


@dataclass(frozen=True)
class Violation:
    identity: str
    indices: tuple
    residual: Element

    def sort_key(self):
        return (self.identity, self.indices)

    def describe(self, A: GradedAlgebra, target=None) -> str:
        names = ",".join(A.basis.names[i] for i in self.indices)
        basis = target if target is not None else A.basis
        return f"{self.identity} @ ({names}) residual {basis.format(self.residual)}"


@dataclass
class ViolationReport:
    name: str
    entries: list = field(default_factory=list)
    checked: int = 0
    unit: str = "triples"

    def __post_init__(self):
        self.entries = sorted(self.entries, key=Violation.sort_key)

    @property
    def passed(self) -> bool:
        return not self.entries

    def __bool__(self):
        return self.passed

    def first(self) -> Violation | None:
        return self.entries[0] if self.entries else None


_POOLS: dict = {}
_POOLS_LOCK = threading.Lock()


def _pool(workers: int) -> ThreadPoolExecutor:
    # one long-lived pool per worker count; starting threads per check costs more than the check
    with _POOLS_LOCK:
        if workers not in _POOLS:
            _POOLS[workers] = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="chromalie")
        return _POOLS[workers]


def _scan(name, tuples, residual, workers=1, unit="triples") -> ViolationReport:
    """Evaluate residual on every tuple; partitioned across threads when workers > 1.

    The merged report is sorted, so it does not depend on scheduling.
    """
    tuples = list(tuples)

    def run(chunk):
        out = []
        for t in chunk:
            r = residual(*t)
            if r:
                out.append(Violation(name, tuple(t), r))
        return out

    if workers <= 1 or len(tuples) < 2:
        found = run(tuples)
    else:
        size = -(-len(tuples) // workers)
        chunks = [tuples[k:k + size] for k in range(0, len(tuples), size)]
        found = [v for part in _pool(workers).map(run, chunks) for v in part]
    return ViolationReport(name, found, len(tuples), unit)


def _pairs(A):
    return itertools.product(range(A.dim), repeat=2)


def _triples(A):
    return itertools.product(range(A.dim), repeat=3)


def _twist(A: GradedAlgebra, zeta: EvenMap | None) -> EvenMap:
    return zeta if zeta is not None else A.zeta()


def _vec(A, x) -> Element:
    return Element.basis(x) if isinstance(x, int) else x


def _deg(A, x):
    return A.deg(x) if isinstance(x, int) else A.basis.degree_of(x)


def check_eps_skew(A: GradedAlgebra, workers: int = 1) -> ViolationReport:
    """[x,y] + eps(x,y)[y,x] on all basis pairs."""
    def res(i, j):
        return A.prod(i, j) + A.prod(j, i) * A.eps(i, j)
    return _scan("eps-skew", _pairs(A), res, workers, "pairs")


def _jacobi_residual(A, zeta):
    def res(i, j, k):
        x, y, z = (zeta.column(t) for t in (i, j, k))
        return element_sum([
            mult_eval(A, x, A.prod(j, k)) * A.eps(k, i),
            mult_eval(A, y, A.prod(k, i)) * A.eps(i, j),
            mult_eval(A, z, A.prod(i, j)) * A.eps(j, k),
        ])
    return res


def check_eps_jacobi(A: GradedAlgebra, workers: int = 1) -> ViolationReport:
    return _scan("eps-jacobi", _triples(A), _jacobi_residual(A, EvenMap.identity(A.basis)), workers)


def check_hom_eps_jacobi(A: GradedAlgebra, zeta: EvenMap | None = None, workers: int = 1) -> ViolationReport:
    """Cyclic sum of eps(z,x)[zeta(x),[y,z]]; zeta defaults to A's twist (or identity)."""
    return _scan("hom-eps-jacobi", _triples(A), _jacobi_residual(A, _twist(A, zeta)), workers)


def associator(A: GradedAlgebra, zeta: EvenMap | None, x, y, z) -> Element:
    zeta = _twist(A, zeta)
    x, y, z = _vec(A, x), _vec(A, y), _vec(A, z)
    return mult_eval(A, zeta(x), mult_eval(A, y, z)) - mult_eval(A, mult_eval(A, x, y), zeta(z))


def check_hom_associativity(A: GradedAlgebra, zeta: EvenMap | None = None, workers: int = 1) -> ViolationReport:
    zeta = _twist(A, zeta)
    return _scan("hom-associativity", _triples(A), lambda i, j, k: associator(A, zeta, i, j, k), workers)


def check_flexible(A: GradedAlgebra, zeta: EvenMap | None = None, workers: int = 1) -> ViolationReport:
    """a(x,y,x) = 0 for homogeneous x, y.

    For basis vectors x_i, x_k of equal degree the cross term
    a(x_i,y,x_k) + a(x_k,y,x_i) must vanish too; reported at (i, j, k).
    """
    zeta = _twist(A, zeta)
    tuples = [
        (i, j, k)
        for i in range(A.dim) for j in range(A.dim) for k in range(i, A.dim)
        if A.deg(i) == A.deg(k)
    ]

    def res(i, j, k):
        if i == k:
            return associator(A, zeta, i, j, i)
        return associator(A, zeta, i, j, k) + associator(A, zeta, k, j, i)
    return _scan("flexible", tuples, res, workers)


def _eps(A, a, b) -> Fraction:
    return A.epsilon(a, b)


def cyclic_S(A: GradedAlgebra, zeta: EvenMap | None, x, y, z) -> Element:
    """S(x,y,z) = eps(z,x) a(x,y,z) + eps(x,y) a(y,z,x) + eps(y,z) a(z,x,y)."""
    zeta = _twist(A, zeta)
    dx, dy, dz = _deg(A, x), _deg(A, y), _deg(A, z)
    if None in (dx, dy, dz):
        return ZERO
    return element_sum([
        associator(A, zeta, x, y, z) * _eps(A, dz, dx),
        associator(A, zeta, y, z, x) * _eps(A, dx, dy),
        associator(A, zeta, z, x, y) * _eps(A, dy, dz),
    ])


def color_commutator(A: GradedAlgebra, x: Element, y: Element) -> Element:
    """mu(x,y) - eps(x,y) mu(y,x) for homogeneous x, y."""
    dx, dy = A.basis.degree_of(x), A.basis.degree_of(y)
    if dx is None or dy is None:
        return ZERO
    return mult_eval(A, x, y) - mult_eval(A, y, x) * _eps(A, dx, dy)


def cyclic_S_commutator_form(A: GradedAlgebra, zeta: EvenMap | None, x, y, z) -> Element:
    """eps(z,x)[zeta x, mu(y,z)] + eps(x,y)[zeta y, mu(z,x)] + eps(y,z)[zeta z, mu(x,y)]."""
    zeta = _twist(A, zeta)
    x, y, z = _vec(A, x), _vec(A, y), _vec(A, z)
    dx, dy, dz = (A.basis.degree_of(v) for v in (x, y, z))
    if None in (dx, dy, dz):
        return ZERO
    m = lambda u, v: mult_eval(A, u, v)
    return element_sum([
        color_commutator(A, zeta(x), m(y, z)) * _eps(A, dz, dx),
        color_commutator(A, zeta(y), m(z, x)) * _eps(A, dx, dy),
        color_commutator(A, zeta(z), m(x, y)) * _eps(A, dy, dz),
    ])


def check_S_symmetry(A: GradedAlgebra, zeta: EvenMap | None = None, workers: int = 1) -> ViolationReport:
    """S(x,y,z) = eps(x,y) eps(y,z) eps(z,x) S(x,z,y) on basis triples."""
    zeta = _twist(A, zeta)

    def res(i, j, k):
        c = A.eps(i, j) * A.eps(j, k) * A.eps(k, i)
        return cyclic_S(A, zeta, i, j, k) - cyclic_S(A, zeta, i, k, j) * c
    return _scan("S-symmetry", _triples(A), res, workers)


# S3 as words in s1 = (1 2), s2 = (2 3); a word acts right-to-left.
S3_WORDS = {
    "id": (),
    "s1": (1,),
    "s2": (2,),
    "s1s2": (1, 2),
    "s2s1": (2, 1),
    "s2s1s2": (2, 1, 2),
}


def _word(pi) -> tuple:
    if isinstance(pi, str):
        return S3_WORDS[pi]
    return tuple(pi)


def permute(pi, items, eps=None):
    """Reorder a 3-tuple by the word pi; returns (new tuple, parity).

    The parity multiplies eps(left, right) of each adjacent swap performed,
    starting with the rightmost letter.  Without eps the parity is 1.
    """
    items = list(items)
    parity = Fraction(1)
    for letter in reversed(_word(pi)):
        a, b = letter - 1, letter
        if eps is not None:
            parity *= eps(items[a], items[b])
        items[a], items[b] = items[b], items[a]
    return tuple(items), parity


def sign(pi) -> int:
    return -1 if len(_word(pi)) % 2 else 1


def permutation_parity(eps, pi, degrees) -> Fraction:
    """|pi(x1,x2,x3)| for homogeneous arguments of the given degrees."""
    return permute(pi, degrees, eps)[1]


class SubgroupTag(enum.Enum):
    G1 = ("id",)
    G2 = ("id", "s1")
    G3 = ("id", "s2")
    G4 = ("id", "s2s1s2")
    G5 = ("id", "s1s2", "s2s1")
    G6 = ("id", "s1", "s2", "s1s2", "s2s1", "s2s1s2")

    @property
    def words(self):
        return self.value


def G_sum(A: GradedAlgebra, zeta: EvenMap | None, G: SubgroupTag, i: int, j: int, k: int) -> Element:
    """sum over pi in G of sgn(pi) |pi(x)| a(pi(x)) on basis vectors."""
    zeta = _twist(A, zeta)
    parts = []
    for name in G.words:
        (p, q, r), parity = permute(name, (i, j, k), A.eps)
        parts.append(associator(A, zeta, p, q, r) * (sign(name) * parity))
    return element_sum(parts)


def alternating_sum(A: GradedAlgebra, zeta: EvenMap | None, i: int, j: int, k: int) -> Element:
    return G_sum(A, zeta, SubgroupTag.G6, i, j, k)


def check_G_hom_associative(A: GradedAlgebra, zeta: EvenMap | None, G: SubgroupTag, workers: int = 1) -> ViolationReport:
    zeta = _twist(A, zeta)
    return _scan(f"{G.name}-hom-associativity", _triples(A),
                 lambda i, j, k: G_sum(A, zeta, G, i, j, k), workers)


def commutator_products(A: GradedAlgebra) -> dict:
    """Products of the color commutator mu(x,y) - eps(x,y) mu(y,x) on basis pairs."""
    out = {}
    for i, j in _pairs(A):
        p = A.prod(i, j) - A.prod(j, i) * A.eps(i, j)
        if p:
            out[(i, j)] = p
    return out


def check_admissible(A: GradedAlgebra, zeta: EvenMap | None = None, workers: int = 1) -> ViolationReport:
    """Hom-eps-Jacobi for the color commutator of A's product."""
    zeta = _twist(A, zeta)
    C = A.replace(products=commutator_products(A), twist=zeta)
    return _scan("admissible", _triples(C), _jacobi_residual(C, zeta), workers)


def check_morphism(A: GradedAlgebra, B: GradedAlgebra, f: EvenMap, workers: int = 1) -> ViolationReport:
    """Even, product-preserving and intertwining the twists (absent twist = identity).

    Pair tuples (i, j) for products; singletons (i,) for evenness and twists.
    """
    entries = []
    for i in range(A.dim):
        img = f.column(i)
        if not B.basis.is_homogeneous(img, A.deg(i)):
            entries.append(Violation("morphism-even", (i,), img))
    za, zb = A.zeta(), B.zeta()
    for i in range(A.dim):
        r = f(za.column(i)) - zb(f.column(i))
        if r:
            entries.append(Violation("morphism-twist", (i,), r))

    def res(i, j):
        return f(A.prod(i, j)) - mult_eval(B, f.column(i), f.column(j))
    prod = _scan("morphism-product", _pairs(A), res, workers, "pairs")
    return ViolationReport("morphism", entries + prod.entries, A.dim ** 2 + 2 * A.dim, "tuples")


def check_twist_even(A: GradedAlgebra, zeta: EvenMap | None = None) -> ViolationReport:
    zeta = _twist(A, zeta)
    found = []
    for i in range(A.dim):
        img = zeta.column(i)
        if not A.basis.is_homogeneous(img, A.deg(i)):
            found.append(Violation("twist-even", (i,), img))
    return ViolationReport("twist-even", found, A.dim, "basis vectors")


def check_twist_multiplicative(A: GradedAlgebra, zeta: EvenMap | None = None, workers: int = 1) -> ViolationReport:
    """zeta(mu(x,y)) = mu(zeta x, zeta y) on basis pairs."""
    zeta = _twist(A, zeta)

    def res(i, j):
        return zeta(A.prod(i, j)) - mult_eval(A, zeta.column(i), zeta.column(j))
    return _scan("twist-endomorphism", _pairs(A), res, workers, "pairs")
