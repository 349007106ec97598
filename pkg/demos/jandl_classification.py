"""Reversions of the free-fermion algebra in Ising and their equivalence classes.

Run: python3 demos/jandl_classification.py
"""

import itertools

from ribbonalg.autrev import (
    aut_group,
    check_g,
    dichotomy_check,
    find_reversions,
    is_jandl,
    jandl_equivalent,
    reflexivity_witness,
)
from ribbonalg.category import fixture_path, load_category_file
from ribbonalg.cli import jandl_classify
from ribbonalg.diagram import identity_mor, obj_str
from ribbonalg.frobenius import enumerate_frobenius, trivial_algebra


def main():
    C = load_category_file(fixture_path("ising"))
    A = enumerate_frobenius(C, "1+psi")[0]
    G = aut_group(C, A)
    print(f"Aut(1+psi) has order {G.order()}")

    revs, complete = find_reversions(C, A)
    print(f"reversions of 1+psi: {len(revs)} (search complete: {complete})")
    for k, r in enumerate(revs):
        print(f"  sigma_{k} acts on psi by {r.sigma.block(1)[0][0]}; axioms hold: {is_jandl(C, A, r.sigma).passed}")
        M, g, _ = reflexivity_witness(C, A, r.sigma)
        print(f"    reflexivity witness has nu = {check_g(C, A, r.sigma, M, g)}")
        print(f"    sign cells of the inner-twist dichotomy: {dichotomy_check(C, A, r.sigma)['cells']}")

    T = trivial_algebra(C)
    nodes = [("(1, id)", T, identity_mor(C, T.obj))] + [(f"(1+psi, sigma_{k})", A, r.sigma) for k, r in enumerate(revs)]
    print("\npairwise equivalence (witness module carrier, nu):")
    for (n1, A1, s1), (n2, A2, s2) in itertools.product(nodes, repeat=2):
        w, _ = jandl_equivalent(C, A1, s1, A2, s2)
        tag = f"via {obj_str(C, w.module.obj)}, nu = {w.nu}" if w else "not equivalent"
        print(f"  {n1:>18} ~ {n2:<18} {tag}")

    rep = jandl_classify(C)
    print(f"\nclassification: {rep['class_count']} class(es) {rep['classes']}, exhaustive: {rep['exhaustive']}")


if __name__ == "__main__":
    main()
