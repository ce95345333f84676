from fractions import Fraction
from itertools import product

import pytest

import oracles
import randalg
from chromalie import axioms as ax
from chromalie.algebra import ZERO, Element, EvenMap, mult_eval
from chromalie.axioms import SubgroupTag
from chromalie.constructions import commutator_algebra
from chromalie.corpus import CORPUS_IDS, build

a1, a2, a3 = (Element.basis(i) for i in range(3))
EPS_PRIME = oracles.sign_power_eps(lambda a, b: a[0] * b[1] + a[1] * b[0])
EPS_PRINTED = oracles.sign_power_eps(lambda a, b: a[0] * b[0] + a[1] * b[1])


@pytest.fixture(scope="module")
def corpus():
    return {cid: build(cid) for cid in CORPUS_IDS}


@pytest.fixture(scope="module")
def randoms():
    return randalg.random_algebras(40, seed=7)


def test_eps_skew_examples(corpus):
    assert ax.check_eps_skew(corpus["sl2-color"]).passed
    H = corpus["heisenberg-color"]
    assert ax.check_eps_skew(H).passed
    assert H.prod(0, 1) == H.prod(1, 0) == Element.basis(2)


def test_eps_skew_corrupted():
    L = build("sl2-color")
    products = dict(L.products)
    products[(1, 0)] = a3
    rep = ax.check_eps_skew(L.replace(products=products))
    assert [(v.indices, v.residual) for v in rep.entries] == [((0, 1), -2 * a3), ((1, 0), 2 * a3)]


def test_eps_jacobi_matches_oracle(corpus):
    L = corpus["sl2-color"]
    c, m = oracles.dense(L), oracles.dense_map(EvenMap.identity(L.basis), 3)
    for t in product(range(3), repeat=3):
        assert oracles.is_zero(oracles.jacobi(c, m, L.basis.degrees, EPS_PRIME, *t))
    rep = ax.check_eps_jacobi(L)
    assert rep.passed and rep.checked == 27


def test_eps_jacobi_zero_product(corpus):
    assert ax.check_eps_jacobi(corpus["sl2-color"].replace(products={})).passed


def test_eps_jacobi_printed_eps_fails(corpus):
    L = corpus["sl2-color-paper-eps"]
    rep = ax.check_eps_jacobi(L)
    first = rep.first()
    assert first.indices == (0, 0, 1)
    assert first.residual == -2 * a2
    c, m = oracles.dense(L), oracles.dense_map(EvenMap.identity(L.basis), 3)
    failing = {t for t in product(range(3), repeat=3)
               if not oracles.is_zero(oracles.jacobi(c, m, L.basis.degrees, EPS_PRINTED, *t))}
    assert failing == {v.indices for v in rep.entries}


def test_printed_eps_failure_pattern(corpus):
    rep = ax.check_eps_jacobi(corpus["sl2-color-paper-eps"])
    multisets = {tuple(sorted(v.indices)) for v in rep.entries}
    assert multisets == {(0, 0, 1), (0, 0, 2), (0, 1, 1), (1, 1, 2)}


def test_hom_eps_jacobi_examples(corpus):
    assert ax.check_hom_eps_jacobi(corpus["sl2-hom"]).passed
    L = corpus["sl2-color"]
    assert ax.check_hom_eps_jacobi(L, EvenMap.identity(L.basis)).passed
    assert ax.check_hom_eps_jacobi(build("heisenberg-hom", 2, 3)).passed


def test_eps_jacobi_iff_hom_jacobi_with_identity(corpus, randoms):
    for A in list(corpus.values()) + randoms:
        assert ax.check_eps_jacobi(A).passed == ax.check_hom_eps_jacobi(A, EvenMap.identity(A.basis)).passed


def test_hom_associativity_examples(corpus):
    assert ax.check_hom_associativity(corpus["group-hom-assoc"]).passed
    zero = corpus["sl2-hom"].replace(products={})
    assert ax.check_hom_associativity(zero, EvenMap.diagonal(zero.basis, (3, -1, 2))).passed
    assert not ax.check_hom_associativity(corpus["sl2-color"]).passed


def test_associator_examples(corpus):
    G = corpus["group-hom-assoc"]
    assert all(ax.associator(G, None, *t) == ZERO for t in product(range(2), repeat=3))
    L = corpus["sl2-color"]
    assert ax.associator(L, None, a1, a2, a3) == ZERO
    assert ax.associator(L, None, a1, a1, a2) == -a2


def test_flexible_examples(corpus):
    assert ax.check_flexible(corpus["group-hom-assoc"]).passed
    assert ax.check_flexible(corpus["sl2-color"]).passed
    L = corpus["sl2-color"]
    bad = L.replace(products={(0, 1): a3, (2, 0): a2})
    rep = ax.check_flexible(bad)
    assert (0, 1, 0) in {v.indices for v in rep.entries}
    assert ax.associator(bad, None, a1, a2, a1) == -a2


def test_flexible_cross_terms():
    # two basis vectors of one degree: a(x1,y,x2) + a(x2,y,x1) must vanish as well
    A = randalg.random_algebras(1, seed=3)[0]
    rep = ax.check_flexible(A)
    for v in rep.entries:
        i, j, k = v.indices
        assert A.deg(i) == A.deg(k)


def test_cyclic_S_examples(corpus, randoms):
    G = corpus["group-hom-assoc"]
    assert all(ax.cyclic_S(G, None, *t) == ZERO for t in product(range(2), repeat=3))
    L = corpus["sl2-color"]
    c, m = oracles.dense(L), oracles.dense_map(L.zeta(), 3)
    expected = oracles.S(c, m, L.basis.degrees, EPS_PRIME, 0, 0, 1)
    assert ax.cyclic_S(L, None, 0, 0, 1) == Element(enumerate(expected))
    assert ax.cyclic_S(L, None, 0, 0, 1) == ZERO


def test_cyclic_S_two_forms_agree(corpus, randoms):
    for A in list(corpus.values()) + randoms:
        for t in product(range(A.dim), repeat=3):
            assert ax.cyclic_S(A, None, *t) == ax.cyclic_S_commutator_form(A, None, *t)


def test_S_symmetry_examples(corpus, randoms):
    assert ax.check_S_symmetry(commutator_algebra(corpus["group-hom-assoc"])).passed
    assert ax.check_S_symmetry(corpus["sl2-hom"]).passed
    failing = [A for A in randoms if not ax.check_admissible(A).passed]
    assert failing
    assert not any(ax.check_S_symmetry(A).passed for A in failing)


def test_permutation_parity_table():
    eps = lambda a, b: Fraction(10 * a + b)  # not a bi-character; only tracks which pairs are used
    d = (1, 2, 3)
    assert ax.permutation_parity(eps, "id", d) == 1
    assert ax.permutation_parity(eps, "s1", d) == eps(1, 2)
    assert ax.permutation_parity(eps, "s2", d) == eps(2, 3)
    assert ax.permutation_parity(eps, "s1s2", d) == eps(2, 3) * eps(1, 3)
    assert ax.permutation_parity(eps, "s2s1", d) == eps(1, 2) * eps(1, 3)
    assert ax.permutation_parity(eps, "s2s1s2", d) == eps(2, 3) * eps(1, 3) * eps(1, 2)


def test_permutation_parity_sl2(corpus):
    L = corpus["sl2-color"]
    assert ax.permutation_parity(L.epsilon, "s1", L.basis.degrees) == -1


def test_permute_matches_koszul_oracle():
    eps = lambda a, b: Fraction(10 * a + b)
    for name in ax.S3_WORDS:
        out, parity = ax.permute(name, (0, 1, 2), eps)
        sign, factor = oracles.koszul(out, (0, 1, 2), eps)
        assert parity == factor
        assert ax.sign(name) == sign


def test_subgroups():
    words = {g: {ax.permute(w, "xyz")[0] for w in g.words} for g in SubgroupTag}
    assert words[SubgroupTag.G1] == {tuple("xyz")}
    assert words[SubgroupTag.G4] == {tuple("xyz"), tuple("zyx")}
    assert words[SubgroupTag.G5] == {tuple("xyz"), tuple("yzx"), tuple("zxy")}
    assert len(words[SubgroupTag.G6]) == 6
    for g, perms in words.items():  # closed under composition
        for p in perms:
            for q in perms:
                composed = tuple(p[("xyz").index(ch)] for ch in q)
                assert composed in perms


def test_G2_G3_G4_match_displayed_conditions(randoms):
    for A in randoms[:12]:
        zeta = A.zeta()
        m = lambda u, v: mult_eval(A, u, v)
        for i, j, k in product(range(3), repeat=3):
            x, y, z = (Element.basis(t) for t in (i, j, k))
            e = A.eps
            g2 = (m(zeta(x), m(y, z)) - m(zeta(y), m(x, z)) * e(i, j)) \
                - (m(m(x, y), zeta(z)) - m(m(y, x), zeta(z)) * e(i, j))
            g3 = (m(zeta(x), m(y, z)) - m(zeta(x), m(z, y)) * e(j, k)) \
                - (m(m(x, y), zeta(z)) - m(m(x, z), zeta(y)) * e(j, k))
            g4 = (m(zeta(x), m(y, z)) - m(m(x, y), zeta(z))) \
                - (m(zeta(z), m(y, x)) - m(m(z, y), zeta(x))) * (e(i, j) * e(j, k) * e(i, k))
            # cyclic terms enter with + for the even permutations
            g5 = ax.associator(A, None, x, y, z) \
                + ax.associator(A, None, y, z, x) * (e(i, j) * e(i, k)) \
                + ax.associator(A, None, z, x, y) * (e(i, k) * e(j, k))
            assert ax.G_sum(A, None, SubgroupTag.G2, i, j, k) == g2
            assert ax.G_sum(A, None, SubgroupTag.G3, i, j, k) == g3
            assert ax.G_sum(A, None, SubgroupTag.G4, i, j, k) == g4
            assert ax.G_sum(A, None, SubgroupTag.G5, i, j, k) == g5


def test_G_sum_matches_oracle(randoms):
    orders = {
        SubgroupTag.G1: [(0, 1, 2)],
        SubgroupTag.G2: [(0, 1, 2), (1, 0, 2)],
        SubgroupTag.G3: [(0, 1, 2), (0, 2, 1)],
        SubgroupTag.G4: [(0, 1, 2), (2, 1, 0)],
        SubgroupTag.G5: [(0, 1, 2), (1, 2, 0), (2, 0, 1)],
        SubgroupTag.G6: oracles.ALL_ORDERS,
    }
    for A in randoms[:10]:
        c, m, eps = oracles.dense(A), oracles.dense_map(A.zeta(), 3), randalg.eps_fn(A)
        for g, ords in orders.items():
            for t in product(range(3), repeat=3):
                expected = Element(enumerate(oracles.g_sum(c, m, A.basis.degrees, eps, t, ords)))
                assert ax.G_sum(A, None, g, *t) == expected


def test_G_hom_associative_examples(corpus):
    G = corpus["group-hom-assoc"]
    assert ax.check_G_hom_associative(G, None, SubgroupTag.G1).passed
    assert ax.check_G_hom_associative(G, None, SubgroupTag.G6).passed
    zero = corpus["sl2-hom"].replace(products={})
    assert all(ax.check_G_hom_associative(zero, None, g).passed for g in SubgroupTag)


def test_admissible_examples(corpus, randoms):
    H = corpus["sl2-hom"]
    assert ax.check_admissible(H).passed
    # the commutator of a Hom-Lie color bracket is twice the bracket
    assert ax.commutator_products(H) == {k: v * 2 for k, v in H.products.items()}
    assert ax.check_admissible(corpus["group-hom-assoc"]).passed
    assert any(not ax.check_admissible(A).passed for A in randoms)


def test_admissible_equivalences(corpus, randoms):
    for A in list(corpus.values()) + randoms:
        a = ax.check_admissible(A).passed
        assert a == ax.check_G_hom_associative(A, None, SubgroupTag.G6).passed
        assert a == ax.check_S_symmetry(A).passed
        eps = randalg.eps_fn(A)
        assert a == oracles.admissible(A, eps) == oracles.alternating_vanishes(A, eps) \
            == oracles.s_symmetric(A, eps)


def test_morphism_examples(corpus):
    L = corpus["sl2-color"]
    assert ax.check_morphism(L, L, EvenMap.identity(L.basis)).passed
    zeta = EvenMap.diagonal(L.basis, (-1, -1, 1))
    assert ax.check_morphism(L, L, zeta).passed
    H = corpus["sl2-hom"]
    assert ax.check_morphism(H, H, zeta).passed
    rep = ax.check_morphism(L, L, EvenMap.diagonal(L.basis, (2, 1, 1)))
    assert not rep.passed
    assert (0, 1) in {v.indices for v in rep.entries if v.identity == "morphism-product"}


def test_reports_independent_of_workers(corpus, randoms):
    for A in [corpus["sl2-color-paper-eps"]] + randoms[:5]:
        assert ax.check_eps_jacobi(A, workers=1) == ax.check_eps_jacobi(A, workers=4)
        for chk in (ax.check_hom_eps_jacobi, ax.check_S_symmetry, ax.check_admissible):
            assert chk(A, None, 1) == chk(A, None, 4)
