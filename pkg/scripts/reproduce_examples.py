"""Rebuild every worked example and print its bracket table and check verdicts.

    python3 scripts/reproduce_examples.py [--workers N] [--json]
"""

import argparse
import json
from dataclasses import dataclass
from fractions import Fraction

from chromalie import axioms as ax
from chromalie.constructions import LaurentPoly, laurent_extend
from chromalie.corpus import CORPUS_IDS, build


@dataclass
class Config:
    workers: int = 1
    laurent_samples: int = 64
    laurent_bound: int = 4
    seed: int = 0x5EED


def upper_table(A):
    names = A.basis.names
    return {f"[{names[i]},{names[j]}]": A.basis.format(p)
            for (i, j), p in sorted(A.products.items()) if i <= j}


def summarize(cid, A, cfg):
    checks = {
        "eps-skew": ax.check_eps_skew(A, cfg.workers),
        "eps-jacobi": ax.check_eps_jacobi(A, cfg.workers),
        "hom-eps-jacobi": ax.check_hom_eps_jacobi(A, None, cfg.workers),
        "hom-associativity": ax.check_hom_associativity(A, None, cfg.workers),
        "admissible": ax.check_admissible(A, None, cfg.workers),
    }
    row = {"id": cid, "table": upper_table(A), "checks": {}}
    for name, rep in checks.items():
        first = rep.first()
        row["checks"][name] = "PASS" if rep.passed else f"FAIL first {first.describe(A)}"
    return row


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)
    cfg = Config(workers=args.workers)

    rows = [summarize(cid, build(cid), cfg) for cid in CORPUS_IDS]
    for lam in ((2, 3), (-1, "1/2")):
        H = build("heisenberg-hom", *(Fraction(v) for v in lam))
        rows.append(summarize(f"heisenberg-hom {lam[0]} {lam[1]}", H, cfg))

    E = laurent_extend(build("sl2-hom"))
    samples = E.sample_triples(cfg.laurent_samples, cfg.laurent_bound, cfg.seed)
    t3 = LaurentPoly.monomial(3).shift(2)
    extra = {
        "laurent skew": E.check_skew(samples).passed,
        "laurent hom-jacobi": E.check_hom_jacobi(samples).passed,
        "t^3 at 2+t": {str(e): str(c) for e, c in t3.items()},
    }

    if args.json:
        print(json.dumps({"algebras": rows, "laurent": extra}, indent=2))
        return
    for row in rows:
        print(row["id"])
        for k, v in row["table"].items():
            print(f"  {k} = {v}")
        for k, v in row["checks"].items():
            print(f"  {k}: {v}")
    for k, v in extra.items():
        print(f"{k}: {v}")


if __name__ == "__main__":
    main()
