"""A walk through the Ising fixture: validation, dimensions, the s-matrix and a few diagrams.

Run: python3 demos/category_tour.py
"""

from ribbonalg.category import fixture_path, is_modular, load_category_file, qdim, s_matrix, validate_category
from ribbonalg.diagram import closed_scalar, run_diagram


def main():
    C = load_category_file(fixture_path("ising"))
    print(f"labels: {', '.join(C.names)}")

    rep = validate_category(C)
    for line in (c.line() for c in rep.checks):
        print("  " + line)
    print(f"all axioms hold: {rep.passed}")

    for i, name in enumerate(C.names):
        d = qdim(C, i)
        print(f"dim {name} = {d}  (squared: {d * d}, twist {C.twist[i]})")

    print("s-matrix:")
    for row in s_matrix(C):
        print("  " + "  ".join(f"{x!s:>8}" for x in row))
    print(f"modular: {is_modular(C)}")

    # the loop of s is its dimension; the Hopf link of s with psi is an s-matrix entry
    loop = closed_scalar(run_diagram(C, "dt[s] . b[s]"))
    hopf = closed_scalar(run_diagram(
        C, "(d[psi] * dt[s]) . (id[psi] * (c[s,psi] . c[psi,s]) * id[s]) . (bt[psi] * b[s])"
    ))
    print(f"loop of s = {loop}")
    print(f"Hopf link (s, psi) = {hopf}, s-matrix entry = {s_matrix(C)[2][1]}")

    # the double braiding on s s is diagonal in the fusion channels
    f = run_diagram(C, "c[s,s] . c[s,s]")
    for k, b in sorted(f.blocks.items()):
        print(f"double braiding of s with itself on channel {C.names[k]}: {b[0][0]}")


if __name__ == "__main__":
    main()
