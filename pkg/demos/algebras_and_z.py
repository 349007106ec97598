"""Frobenius algebras in the Z4 fixture, their Z matrices and invertible bimodules.

Run: python3 demos/algebras_and_z.py
"""

from ribbonalg.category import fixture_path, load_category_file
from ribbonalg.frobenius import check_frobenius, enumerate_frobenius, opposite, product, trivial_algebra
from ribbonalg.modules import alpha_picard_maps, is_azumaya, picard_bimodules, z_matrix


def show(label, Z):
    print(f"{label}:")
    for row in Z:
        print("  " + " ".join(str(x) for x in row))


def main():
    C = load_category_file(fixture_path("z4"))
    algs = [trivial_algebra(C)]
    for carrier in ("1+g2", "1+g+g2+g3"):
        found = enumerate_frobenius(C, carrier)
        print(f"carrier {carrier}: {len(found)} structure(s), search complete: {found.complete}")
        algs.extend(found)

    for A in algs:
        rep = check_frobenius(C, A)
        print(f"\n{A.describe()}: axioms {rep.passed}, symmetric {rep.symmetric}, gamma {rep.gamma}")
        show("Z", z_matrix(C, A))
        print(f"Azumaya: {is_azumaya(C, A)}")
        print(f"Z of the opposite algebra is the transpose: {z_matrix(C, opposite(C, A)) == [list(c) for c in zip(*z_matrix(C, A))]}")

    A = algs[1]
    show(f"\nZ({A.describe()} # {A.describe()})", z_matrix(C, product(C, A, A)))

    P = picard_bimodules(C, A)
    print(f"\ninvertible {A.describe()}-bimodules: {P.order()} classes, complete: {P.complete}")
    print(f"multiplication table: {P.table}")
    maps = alpha_picard_maps(C, A, P)
    labels = [C.names[i] for i in range(C.rank) if C.is_invertible(i)]
    print(f"classes hit by alpha+ on {labels}: {maps[1]}")
    print(f"classes hit by alpha- on {labels}: {maps[-1]}")


if __name__ == "__main__":
    main()
