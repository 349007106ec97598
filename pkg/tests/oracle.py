"""Independent reference evaluator for closed diagrams.

Scalars are Fraction polynomials reduced modulo the cyclotomic polynomial of a
single fixed conductor. Morphisms are dense matrices over the full direct sum
of right-combed splitting trees (x1 (x2 (... xn))), reading the category JSON
directly. Cap normalizations are solved from the zig-zag identities here rather
than read from the package.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import lcm

import sympy

from ribbonalg.diagram import Name, Prim, Tensor


class PolyNum:
    __slots__ = ("ring", "c")

    def __init__(self, ring: "Ring", c):
        self.ring = ring
        self.c = tuple(c)

    def __add__(self, o):
        return PolyNum(self.ring, (a + b for a, b in zip(self.c, o.c)))

    def __sub__(self, o):
        return PolyNum(self.ring, (a - b for a, b in zip(self.c, o.c)))

    def __neg__(self):
        return PolyNum(self.ring, (-a for a in self.c))

    def __mul__(self, o):
        n = self.ring.deg
        prod = [Fraction(0)] * (2 * n)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return PolyNum(self.ring, self.ring.reduce(prod))

    def inv(self):
        hit = self.ring.inverses.get(self.c)
        if hit is not None:
            return hit
        x = sympy.Symbol("x")
        p = sum(sympy.Rational(a.numerator, a.denominator) * x**i for i, a in enumerate(self.c))
        q = sympy.invert(p, self.ring.phi_expr, x)
        poly = sympy.Poly(q, x)
        coeffs = [Fraction(0)] * self.ring.deg
        for (e,), v in poly.terms():
            coeffs[e] = Fraction(int(v.p), int(v.q))
        out = PolyNum(self.ring, coeffs)
        self.ring.inverses[self.c] = out
        return out

    def __bool__(self):
        return any(self.c)

    def __eq__(self, o):
        return self.c == o.c


class Ring:
    """Q(zeta_N) as Q[x]/Phi_N(x)."""

    def __init__(self, N: int):
        x = sympy.Symbol("x")
        self.N = N
        self.phi_expr = sympy.cyclotomic_poly(N, x)
        self.phi = [int(a) for a in reversed(sympy.Poly(self.phi_expr, x).all_coeffs())]
        self.deg = len(self.phi) - 1
        self.inverses = {}

    def reduce(self, coeffs):
        c = list(coeffs)
        for i in range(len(c) - 1, self.deg - 1, -1):
            a = c[i]
            if a:
                for j in range(self.deg + 1):
                    c[i - self.deg + j] -= a * self.phi[j]
        c = c[: self.deg] + [Fraction(0)] * max(0, self.deg - len(c))
        return c

    def zero(self):
        return PolyNum(self, [Fraction(0)] * self.deg)

    def one(self):
        return self.const(1)

    def const(self, q):
        return PolyNum(self, [Fraction(q)] + [Fraction(0)] * (self.deg - 1))

    def from_json(self, obj):
        n = obj["order"]
        assert self.N % n == 0
        step = self.N // n
        big = [Fraction(0)] * (self.N + 1)
        for i, s in enumerate(obj["coeffs"]):
            big[i * step] += Fraction(s)
        return PolyNum(self, self.reduce(big))


def conductor(doc) -> int:
    orders = [1]
    for t in doc["F"]:
        orders.append(t[-1]["order"])
    for t in doc["R"]:
        orders.append(t[-1]["order"])
    orders += [x["order"] for x in doc["twist"] + doc["pivotal"]]
    return lcm(*orders)


def _inverse(ring, m):
    n = len(m)
    a = [row[:] + [ring.one() if i == j else ring.zero() for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c])
        a[c], a[p] = a[p], a[c]
        inv = a[c][c].inv()
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


class Oracle:
    def __init__(self, doc: dict):
        self.doc = doc
        self.ring = Ring(conductor(doc))
        self.names = doc["labels"]
        idx = {n: i for i, n in enumerate(self.names)}
        self.n = len(self.names)
        self.N = set()
        for t in doc["fusion"]:
            self.N.add(tuple(idx[x] for x in t[:3]))
        self.Fd = {tuple(idx[x] for x in t[:6]): self.ring.from_json(t[6]) for t in doc["F"]}
        self.Rd = {tuple(idx[x] for x in t[:3]): self.ring.from_json(t[3]) for t in doc["R"]}
        self.theta = [self.ring.from_json(x) for x in doc["twist"]]
        self.kappa = [self.ring.from_json(x) for x in doc["pivotal"]]
        self.dual = [idx[x] for x in doc["dual"]]
        self.Finv = {}
        for a, b, c, d in itertools.product(range(self.n), repeat=4):
            es = [e for e in range(self.n) if (a, b, e) in self.N and (e, c, d) in self.N]
            fs = [f for f in range(self.n) if (b, c, f) in self.N and (a, f, d) in self.N]
            if es:
                m = [[self.Fd.get((a, b, c, d, e, f), self.ring.zero()) for f in fs] for e in es]
                inv = _inverse(self.ring, m)
                for i, f in enumerate(fs):
                    for j, e in enumerate(es):
                        self.Finv[a, b, c, d, f, e] = inv[i][j]
        self.cap = {}
        self.rcap = {}
        for a in range(1, self.n):
            self._solve_caps(a)

    # -- bases
    def trees(self, w):
        """All right-combed trees of w, as tuples (j_1, ..., j_n); root is j_1."""
        if not w:
            return [()]
        layer = [(w[-1],)]
        for a in reversed(w[:-1]):
            layer = [(j,) + t for t in layer for j in range(self.n) if (a, t[0], j) in self.N]
        return sorted(layer)

    @staticmethod
    def root(t):
        return t[0] if t else 0

    def F(self, *k):
        return self.Fd.get(k, self.ring.zero())

    def Fi(self, *k):
        return self.Finv.get(k, self.ring.zero())

    def R(self, *k):
        return self.Rd.get(k, self.ring.zero())

    def mat(self, dom, cod, fill):
        """Dense matrix with entry fill(cod_tree, dom_tree) on equal roots."""
        rows, cols = self.trees(cod), self.trees(dom)
        z = self.ring.zero()
        return (dom, cod, [[fill(r, c) if self.root(r) == self.root(c) else z for c in cols] for r in rows])

    def compose(self, f, g):
        dom, mid, gm = g
        mid2, cod, fm = f
        assert mid == mid2, "type mismatch"
        z = self.ring.zero()
        k = len(gm)
        out = []
        for row in fm:
            acc = [z] * (len(gm[0]) if gm else 0)
            for t in range(k):
                if row[t]:
                    acc = [x + row[t] * y if y else x for x, y in zip(acc, gm[t])]
            out.append(acc)
        return (dom, cod, out)

    def identity(self, w):
        one, z = self.ring.one(), self.ring.zero()
        return self.mat(w, w, lambda r, c: one if r == c else z)

    # -- tensor: id_X (x) g acts on the right-combed suffix, f (x) id_Y goes through product trees
    def _left_id(self, x, g):
        dom, cod, gm = g
        gd, gc = self.trees(dom), self.trees(cod)
        n = len(x)
        z = self.ring.zero()
        W0, W1 = tuple(x) + tuple(dom), tuple(x) + tuple(cod)
        out = []
        for r in self.trees(W1):
            row = []
            for c in self.trees(W0):
                if r[:n] != c[:n]:
                    row.append(z)
                else:
                    row.append(gm[gc.index(r[n:])][gd.index(c[n:])])
            out.append(row)
        return (W0, W1, out)

    def _Q(self, x, y):
        """(Q, prods, trees) with tree = sum_prod Q[prod, tree] prod; prod = (s, t, k)."""
        memo = self.__dict__.setdefault("_memo", {})
        if (x, y) in memo:
            return memo[x, y]
        trees = self.trees(tuple(x) + tuple(y))
        prods = [
            (s, t, k)
            for s in self.trees(x)
            for t in self.trees(y)
            for k in range(self.n)
            if (self.root(s), self.root(t), k) in self.N
        ]
        Q = {}
        if not x:
            for t in trees:
                Q[((), t, self.root(t)), t] = self.ring.one()
        else:
            a, xr = x[0], tuple(x[1:])
            sub, _, _ = self._Q(xr, y)
            for tree in trees:
                k = self.root(tree)
                rest = tree[1:]
                r = self.root(rest)
                for (s1, t, r2), rest2 in list(sub):
                    if rest2 != rest:
                        continue
                    v = sub[(s1, t, r2), rest2]
                    i1, j = self.root(s1), self.root(t)
                    for i in range(self.n):
                        if (a, i1, i) not in self.N or (i, j, k) not in self.N:
                            continue
                        coef = self.Fi(a, i1, j, k, r, i)
                        if coef:
                            key = ((i,) + s1, t, k), tree
                            Q[key] = Q.get(key, self.ring.zero()) + coef * v
        memo[x, y] = (Q, prods, trees)
        return memo[x, y]

    def _right_id(self, f, y):
        dom, cod, fm = f
        y = tuple(y)
        fd, fc = self.trees(dom), self.trees(cod)
        Qd, pd, td = self._Q(tuple(dom), y)
        Qc, pc, tc = self._Q(tuple(cod), y)
        z = self.ring.zero()
        M = [[z] * len(pd) for _ in pc]
        for r, (s1, t1, k1) in enumerate(pc):
            for c, (s0, t0, k0) in enumerate(pd):
                if t1 == t0 and k1 == k0:
                    M[r][c] = fm[fc.index(s1)][fd.index(s0)]
        Dd = [[Qd.get((p, t), z) for t in td] for p in pd]
        Dc = [[Qc.get((p, t), z) for t in tc] for p in pc]
        if not tc or not td:
            return (tuple(dom) + y, tuple(cod) + y, [[z] * len(td) for _ in tc])
        MD = self.compose((None, None, M), (None, None, Dd))[2]
        out = self.compose((None, None, _inverse(self.ring, Dc)), (None, None, MD))[2]
        return (tuple(dom) + y, tuple(cod) + y, out)

    def tensor(self, f, g):
        dom, cod, _ = f
        gdom, gcod, _ = g
        left = self._right_id(f, gcod)
        right = self._left_id(dom, g)
        return self.compose(left, right)

    # -- elementary morphisms
    def swap(self, w, m, sign):
        """Adjacent crossing of letters m, m+1 in right-combed trees."""
        a, b = w[m], w[m + 1]
        v = tuple(w[:m]) + (b, a) + tuple(w[m + 2:])
        z = self.ring.zero()

        def r(x, y, f):
            return self.R(x, y, f) if sign > 0 else self.R(y, x, f).inv()

        src, dst = self.trees(w), self.trees(v)
        out = [[z] * len(src) for _ in dst]
        di = {t: i for i, t in enumerate(dst)}
        last = m + 1 == len(w) - 1
        for n, t in enumerate(src):
            j = t[m]
            if last:
                tgt = di[t[:m + 1] + (a,)]
                out[tgt][n] = out[tgt][n] + r(a, b, j)
                continue
            s, rest = t[m + 1], t[m + 2]
            for e in range(self.n):
                if (a, b, e) not in self.N or (e, rest, j) not in self.N:
                    continue
                c1 = self.Fi(a, b, rest, j, s, e)
                if not c1:
                    continue
                c1 = c1 * r(a, b, e)
                for s2 in range(self.n):
                    c2 = self.F(b, a, rest, j, e, s2)
                    if c2:
                        tgt = di[t[:m + 1] + (s2,) + t[m + 2:]]
                        out[tgt][n] = out[tgt][n] + c1 * c2
        return (tuple(w), v, out)

    def braid(self, u, v, sign):
        """Move the letters of v, first letter first, leftwards across u."""
        w = list(u) + list(v)
        out = self.identity(tuple(w))
        for q in range(len(v)):
            pos = len(u) + q
            for m in range(pos - 1, q - 1, -1):
                out = self.compose(self.swap(tuple(w), m, sign), out)
                w[m], w[m + 1] = w[m + 1], w[m]
        return out

    def twist(self, w, sign):
        z = self.ring.zero()
        return self.mat(w, w, lambda r, c: (self.theta[self.root(r)] if sign > 0 else self.theta[self.root(r)].inv()) if r == c else z)

    def _cup(self, a, coef):
        ad = self.dual[a]
        w = (a, ad)
        z = self.ring.zero()
        return ((), w, [[coef if t == (0, ad) else z] for t in self.trees(w)])

    def _capm(self, a, coef):
        ad = self.dual[a]
        w = (ad, a)
        z = self.ring.zero()
        return (w, (), [[coef if t == (0, a) else z for t in self.trees(w)]])

    def _solve_caps(self, a):
        ad = self.dual[a]
        one = self.ring.one()
        A = (a,)
        b = self._cup(a, one)
        d = self._capm(a, one)
        zz = self.compose(self.tensor(self.identity(A), d), self.tensor(b, self.identity(A)))
        self.cap[a] = zz[2][0][0].inv()
        bt = ((), (ad, a), [[self.kappa[a] if t == (0, a) else self.ring.zero()] for t in self.trees((ad, a))])
        dt = ((a, ad), (), [[one if t == (0, ad) else self.ring.zero() for t in self.trees((a, ad))]])
        zz = self.compose(self.tensor(dt, self.identity(A)), self.tensor(self.identity(A), bt))
        self.rcap[a] = zz[2][0][0].inv()

    def letter_dualities(self, a):
        ad = self.dual[a]
        z = self.ring.zero()
        b = self._cup(a, self.ring.one())
        d = self._capm(a, self.cap[a])
        bt = ((), (ad, a), [[self.kappa[a] if t == (0, a) else z] for t in self.trees((ad, a))])
        dt = ((a, ad), (), [[self.rcap[a] if t == (0, ad) else z for t in self.trees((a, ad))]])
        return b, d, bt, dt

    def dualities(self, w):
        """Recursion on the first letter: b_{xY} = (id_x (x) b_Y (x) id_x*) b_x, and so on."""
        if not w:
            u = self.identity(())
            return u, u, u, u
        if len(w) == 1:
            return self.letter_dualities(w[0])
        x, Y = w[0], tuple(w[1:])
        bx, dx, btx, dtx = self.letter_dualities(x)
        bY, dY, btY, dtY = self.dualities(Y)
        X1, X1d = (x,), (self.dual[x],)
        Yd = tuple(self.dual[a] for a in reversed(Y))
        I = self.identity
        b = self.compose(self.tensor(self.tensor(I(X1), bY), I(X1d)), bx)
        d = self.compose(dY, self.tensor(self.tensor(I(Yd), dx), I(Y)))
        bt = self.compose(self.tensor(self.tensor(I(Yd), btx), I(Y)), btY)
        dt = self.compose(dtx, self.tensor(self.tensor(I(X1), dtY), I(X1d)))
        return b, d, bt, dt

    def delta(self, w):
        wd = tuple(self.dual[a] for a in reversed(w))
        wdd = tuple(self.dual[a] for a in reversed(wd))
        b_ud = self.dualities(wd)[0]
        d_u = self.dualities(w)[1]
        left = self.compose(self.braid(wd, wdd, 1), b_ud)
        return self.compose(self.tensor(self.identity(wdd), d_u), self.tensor(left, self.twist(w, 1)))

    # -- evaluation of a parsed expression
    def word(self, letters):
        idx = {n: i for i, n in enumerate(self.names)}
        return tuple(idx[t] for t in letters if idx[t] != 0)

    def eval(self, e):
        if isinstance(e, Prim):
            ws = [self.word(w) for w in e.args]
            U = ws[0]
            if e.kind == "id":
                return self.identity(U)
            if e.kind in ("theta", "thetai"):
                return self.twist(U, 1 if e.kind == "theta" else -1)
            if e.kind == "c":
                return self.braid(U, ws[1], 1)
            if e.kind == "ci":
                return self.braid(ws[1], U, -1)
            if e.kind == "delta":
                return self.delta(U)
            return dict(zip(("b", "d", "bt", "dt"), self.dualities(U)))[e.kind]
        if isinstance(e, Name):
            raise KeyError(e.name)
        parts = [self.eval(p) for p in e.parts]
        out = parts[0]
        for p in parts[1:]:
            out = self.tensor(out, p) if isinstance(e, Tensor) else self.compose(out, p)
        return out

    def closed_value(self, e):
        dom, cod, m = self.eval(e)
        assert dom == () and cod == ()
        return m[0][0]


def load_oracle(path) -> Oracle:
    with open(path) as fh:
        return Oracle(json.load(fh))
