"""Compare the three admissibility predicates and the subgroup hierarchy on random algebras.

    python3 scripts/random_admissibility.py --count 200 --seed 1
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from chromalie import axioms as ax
from chromalie.algebra import Element, EvenMap, GradedAlgebra, GradedBasis
from chromalie.axioms import SubgroupTag
from chromalie.corpus import Z2xZ2
from chromalie.grading import BiCharacter


@dataclass
class Config:
    count: int = 100
    seed: int = 1
    dim: int = 3
    zero_weight: int = 2  # extra zeros in the coefficient pool
    twist_probability: float = 0.7


def random_algebra(rng, cfg):
    elems = Z2xZ2.elements()
    pool = elems if rng.random() < 0.5 else elems[:2]
    degs = tuple(rng.choice(pool) for _ in range(cfg.dim))
    basis = GradedBasis(tuple(f"x{k + 1}" for k in range(cfg.dim)), degs, Z2xZ2)
    b00, b11, b01 = (rng.choice((1, -1)) for _ in range(3))
    eps = BiCharacter(Z2xZ2, ((b00, b01), (b01, b11)))
    coeffs = [0] * cfg.zero_weight + [1, -1, 2, -2, 3]

    def draw():
        return Fraction(rng.choice(coeffs), rng.choice((1, 2)))

    products = {}
    for i in range(cfg.dim):
        for j in range(cfg.dim):
            target = Z2xZ2.add(degs[i], degs[j])
            products[(i, j)] = Element((k, draw()) for k in basis.component(target))
    twist = None
    if rng.random() < cfg.twist_probability:
        twist = EvenMap(basis, {i: Element((k, draw()) for k in basis.component(d))
                                for i, d in enumerate(degs)})
    return GradedAlgebra(Z2xZ2, eps, basis, products, twist, "raw")


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=Config.count)
    p.add_argument("--seed", type=int, default=Config.seed)
    args = p.parse_args(argv)
    cfg = Config(count=args.count, seed=args.seed)
    rng = random.Random(cfg.seed)

    tally = Counter()
    disagreements = 0
    hierarchy_breaks = 0
    for _ in range(cfg.count):
        A = random_algebra(rng, cfg)
        verdicts = (
            ax.check_admissible(A).passed,
            ax.check_G_hom_associative(A, None, SubgroupTag.G6).passed,
            ax.check_S_symmetry(A).passed,
        )
        if len(set(verdicts)) > 1:
            disagreements += 1
        tally["admissible" if verdicts[0] else "not admissible"] += 1
        passing = [g.name for g in SubgroupTag if ax.check_G_hom_associative(A, None, g).passed]
        for g in passing:
            tally[g] += 1
        if passing and "G6" not in passing:
            hierarchy_breaks += 1

    print(f"algebras: {cfg.count} (seed {cfg.seed})")
    for key in sorted(tally):
        print(f"  {key}: {tally[key]}")
    print(f"predicate disagreements: {disagreements}")
    print(f"passes some Gi but not G6: {hierarchy_breaks}")
    return 0 if disagreements == hierarchy_breaks == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
