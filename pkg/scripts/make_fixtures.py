"""Author the shipped category fixtures from closed-form data and validate them.

Run once: python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import itertools
import sys

from ribbonalg.category import FIXTURE_DIR, CategorySpec, dumps_category, validate_category
from ribbonalg.scalar import ONE, CycNum, zeta


def build(name, labels, fusion, fval, rval, twist, dual):
    n = len(labels)
    fus = {(a, b, c): 1 for a, b, c in itertools.product(range(n), repeat=3) if fusion(a, b, c)}

    def N(a, b, c):
        return fus.get((a, b, c), 0)

    fsym = {}
    for a, b, c, d in itertools.product(range(n), repeat=4):
        for e in range(n):
            if not (N(a, b, e) and N(e, c, d)):
                continue
            for f in range(n):
                if N(b, c, f) and N(a, f, d):
                    fsym[a, b, c, d, e, f] = CycNum.coerce(fval(a, b, c, d, e, f))
    rsym = {}
    for a, b in itertools.product(range(n), repeat=2):
        for c in range(n):
            if N(a, b, c):
                rsym[a, b, c] = CycNum.coerce(rval(a, b, c))
    tw = [CycNum.coerce(t) for t in twist]
    piv = [tw[a] * rsym[a, dual[a], 0] for a in range(n)]
    return CategorySpec(labels, fus, fsym, rsym, tw, dual, piv, name=name)


def triv():
    return build("triv", ["1"], lambda a, b, c: True, lambda *k: 1, lambda *k: 1, [1], [0])


def z2(name, other, r, theta, fsign):
    return build(
        name, ["1", other],
        lambda a, b, c: (a + b) % 2 == c,
        lambda a, b, c, d, e, f: fsign if a == b == c == 1 else 1,
        lambda a, b, c: r if a == b == 1 else 1,
        [1, theta], [0, 1],
    )


def z4():
    z8 = zeta(8)
    return build(
        "z4", ["1", "g", "g2", "g3"],
        lambda a, b, c: (a + b) % 4 == c,
        lambda a, b, c, d, e, f: -1 if a % 2 and b + c >= 4 else 1,
        lambda a, b, c: z8 ** (a * b),
        [z8 ** (a * a) for a in range(4)], [0, 3, 2, 1],
    )


def fib():
    phi_inv = zeta(5) + zeta(5, 4)
    t = 1

    def fusion(a, b, c):
        if a == 0:
            return b == c
        if b == 0:
            return a == c
        return True

    def fval(a, b, c, d, e, f):
        if (a, b, c, d) == (t, t, t, t):
            return {(0, 0): phi_inv, (0, 1): ONE, (1, 0): phi_inv, (1, 1): -phi_inv}[e, f]
        return 1

    def rval(a, b, c):
        if a == b == t:
            return zeta(5, 3) if c == 0 else -zeta(5, 4)
        return 1

    return build("fib", ["1", "t"], fusion, fval, rval, [1, zeta(5, 2)], [0, 1])


def ising():
    one, psi, s = 0, 1, 2
    inv_sqrt2 = (zeta(8) - zeta(8, 3)) / 2
    table = {(psi, psi): {one}, (psi, s): {s}, (s, psi): {s}, (s, s): {one, psi}}

    def fusion(a, b, c):
        if a == one:
            return b == c
        if b == one:
            return a == c
        return c in table[a, b]

    def fval(a, b, c, d, e, f):
        if (a, b, c, d) == (s, s, s, s):
            return -inv_sqrt2 if e == f == psi else inv_sqrt2
        if (a, b, c, d) in ((psi, s, psi, s), (s, psi, s, psi)):
            return -1
        return 1

    def rval(a, b, c):
        if a == b == s:
            return zeta(16, 15) if c == one else zeta(16, 3)
        if a == b == psi:
            return -1
        if psi in (a, b) and s in (a, b):
            return -zeta(4)
        return 1

    return build("ising", ["1", "psi", "s"], fusion, fval, rval, [1, -1, zeta(16)], [0, 1, 2])


def all_fixtures():
    return [
        triv(),
        z2("z2-semion", "s1", zeta(4), zeta(4), -1),
        z2("z2-fermion", "f", -1, -1, 1),
        z4(),
        fib(),
        ising(),
    ]


def main() -> int:
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    status = 0
    for C in all_fixtures():
        rep = validate_category(C)
        print(C.name, "ok" if rep.passed else "FAILED")
        for chk in rep.checks:
            if not chk.passed:
                print("   ", chk.line())
                status = 1
        if rep.passed:
            (FIXTURE_DIR / f"{C.name}.json").write_text(dumps_category(C))
    return status


if __name__ == "__main__":
    sys.exit(main())
