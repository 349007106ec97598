"""Morphisms between tensor words in left-combed fusion-tree bases.

An object is a formal direct sum of words: a tuple of summands, each summand a
tuple of nonzero label indices. ``((),)`` is the tensor unit. A morphism stores,
for each simple root k, the matrix whose column t is the image of the splitting
tree t of the domain, expanded in the splitting trees of the codomain. Bases at
a root are the concatenation over summands of lexicographically sorted trees.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import linalg
from .category import CategorySpec
from .errors import DiagramSyntaxError, NotInvertible, TypeMismatch, UnboundName
from .scalar import ONE, ZERO, CycNum

Word = tuple[int, ...]
Obj = tuple[Word, ...]

UNIT: Obj = ((),)

__all__ = [
    "Obj",
    "Mor",
    "UNIT",
    "word",
    "obj_sum",
    "obj_tensor",
    "obj_dual",
    "obj_str",
    "hom_dim",
    "basis",
    "identity_mor",
    "zero_mor",
    "compose",
    "tensor_mor",
    "braid_mor",
    "twist_mor",
    "duality_mors",
    "delta_iso",
    "dual_mor",
    "dual_tensor_swap",
    "right_dual_mor",
    "closed_scalar",
    "scalar_mor",
    "from_components",
    "component",
    "inclusion",
    "projection",
    "hom_basis",
    "mor_to_vec",
    "vec_to_mor",
    "inverse_mor",
    "linear_relations",
    "combine",
    "Prim",
    "Name",
    "Compose",
    "Tensor",
    "parse_diagram",
    "print_diagram",
    "infer_type",
    "eval_diagram",
    "run_diagram",
]


# -- objects -----------------------------------------------------------------

def word(*letters: int) -> Obj:
    """Single-summand object; unit letters are dropped."""
    return (tuple(a for a in letters if a),)


def obj_sum(*objs: Obj) -> Obj:
    return tuple(w for X in objs for w in X)


def obj_tensor(*objs: Obj) -> Obj:
    out: Obj = UNIT
    for X in objs:
        out = tuple(x + y for x in out for y in X)
    return out


def obj_dual(C: CategorySpec, X: Obj) -> Obj:
    return tuple(tuple(C.dual(a) for a in reversed(x)) for x in X)


def obj_str(C: CategorySpec, X: Obj) -> str:
    parts = [" ".join(C.names[a] for a in x) or C.names[0] for x in X]
    return " + ".join(parts) if parts else "0"


# -- bases -------------------------------------------------------------------

def _cache(C: CategorySpec) -> dict:
    cache = C.__dict__.get("_diagram_cache")
    if cache is None:
        cache = C.__dict__.setdefault("_diagram_cache", {})
    return cache


def trees(C: CategorySpec, w: Word, k: int) -> tuple[Word, ...]:
    """Left-combed splitting trees of word w at root k, as intermediate sequences."""
    cache = _cache(C)
    key = ("trees", w, k)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not w:
        out: tuple[Word, ...] = ((),) if k == 0 else ()
    else:
        layer = [(w[0],)]
        for a in w[1:]:
            layer = [t + (j,) for t in layer for j in C.fuse(t[-1], a)]
        out = tuple(sorted(t for t in layer if t[-1] == k))
    cache[key] = out
    return out


def basis(C: CategorySpec, X: Obj, k: int) -> list[tuple[int, Word]]:
    return [(alpha, t) for alpha, x in enumerate(X) for t in trees(C, x, k)]


def _offsets(C: CategorySpec, X: Obj, k: int) -> list[int]:
    """Start index of each summand's trees inside the basis at root k (plus the total)."""
    off = [0]
    for x in X:
        off.append(off[-1] + len(trees(C, x, k)))
    return off


def _roots(C: CategorySpec, X: Obj) -> list[int]:
    return [k for k in range(C.rank) if any(trees(C, x, k) for x in X)]


def hom_dim(C: CategorySpec, X: Obj, Y: Obj) -> int:
    return sum(_offsets(C, X, k)[-1] * _offsets(C, Y, k)[-1] for k in range(C.rank))


# -- morphisms ---------------------------------------------------------------

class Mor:
    """Immutable morphism dom -> cod with one exact matrix per root."""

    __slots__ = ("C", "dom", "cod", "blocks")

    def __init__(self, C: CategorySpec, dom: Obj, cod: Obj, blocks: dict[int, list[list[CycNum]]]):
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "blocks", {k: b for k, b in blocks.items() if b and b[0] and not linalg.is_zero(b)})

    def __setattr__(self, name, value):
        raise AttributeError("Mor is immutable")

    def block(self, k: int) -> list[list[CycNum]]:
        b = self.blocks.get(k)
        if b is not None:
            return b
        return linalg.zeros(_offsets(self.C, self.cod, k)[-1], _offsets(self.C, self.dom, k)[-1])

    def is_zero(self) -> bool:
        return not self.blocks

    def _same_type(self, other: "Mor") -> None:
        if self.dom != other.dom or self.cod != other.cod:
            raise TypeMismatch(
                f"cannot combine {obj_str(self.C, self.dom)} -> {obj_str(self.C, self.cod)} with "
                f"{obj_str(self.C, other.dom)} -> {obj_str(self.C, other.cod)}"
            )

    def __add__(self, other: "Mor") -> "Mor":
        self._same_type(other)
        blocks = dict(self.blocks)
        for k, b in other.blocks.items():
            blocks[k] = linalg.add(blocks[k], b) if k in blocks else b
        return Mor(self.C, self.dom, self.cod, blocks)

    def __neg__(self) -> "Mor":
        return self.scale(-ONE)

    def __sub__(self, other: "Mor") -> "Mor":
        return self + (-other)

    def scale(self, s) -> "Mor":
        s = CycNum.coerce(s)
        return Mor(self.C, self.dom, self.cod, {k: linalg.scale(s, b) for k, b in self.blocks.items()})

    def __rmul__(self, s) -> "Mor":
        return self.scale(s)

    def __matmul__(self, other: "Mor") -> "Mor":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mor):
            return NotImplemented
        if self.dom != other.dom or self.cod != other.cod:
            return False
        keys = set(self.blocks) | set(other.blocks)
        return all(self.block(k) == other.block(k) for k in keys)

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, tuple(sorted(self.blocks))))

    def __repr__(self) -> str:
        body = "; ".join(
            f"{self.C.names[k]}: " + str([[str(x) for x in r] for r in b]) for k, b in sorted(self.blocks.items())
        )
        return f"Mor({obj_str(self.C, self.dom)} -> {obj_str(self.C, self.cod)} | {body or 'zero'})"


def identity_mor(C: CategorySpec, X: Obj) -> Mor:
    return Mor(C, X, X, {k: linalg.identity(_offsets(C, X, k)[-1]) for k in _roots(C, X)})


def zero_mor(C: CategorySpec, X: Obj, Y: Obj) -> Mor:
    return Mor(C, X, Y, {})


def scalar_mor(C: CategorySpec, s) -> Mor:
    return Mor(C, UNIT, UNIT, {0: [[CycNum.coerce(s)]]})


def closed_scalar(f: Mor) -> CycNum:
    if f.dom != UNIT or f.cod != UNIT:
        raise TypeMismatch("not an endomorphism of the tensor unit")
    return f.block(0)[0][0]


def compose(*fs: Mor) -> Mor:
    """compose(f, g, h) = f . g . h (rightmost applied first)."""
    out = fs[-1]
    for f in reversed(fs[:-1]):
        if f.dom != out.cod:
            raise TypeMismatch(
                f"composition mismatch: {obj_str(f.C, f.dom)} != {obj_str(f.C, out.cod)}"
            )
        blocks = {}
        for k in set(f.blocks) & set(out.blocks):
            blocks[k] = linalg.matmul(f.blocks[k], out.blocks[k])
        out = Mor(f.C, out.dom, f.cod, blocks)
    return out


def inverse_mor(f: Mor) -> Mor:
    C = f.C
    blocks = {}
    for k in set(_roots(C, f.dom)) | set(_roots(C, f.cod)):
        if _offsets(C, f.dom, k)[-1] != _offsets(C, f.cod, k)[-1]:
            raise NotInvertible("morphism blocks are not square")
        blocks[k] = linalg.inverse(f.block(k))
    return Mor(C, f.cod, f.dom, blocks)


# -- direct sums -------------------------------------------------------------

def from_components(C: CategorySpec, dom: Obj, cod: Obj, comps: dict[tuple[int, int], Mor]) -> Mor:
    """Assemble a morphism from pieces cod[beta] <- dom[alpha] keyed (beta, alpha)."""
    blocks = {}
    for k in range(C.rank):
        ro, co = _offsets(C, cod, k), _offsets(C, dom, k)
        if not ro[-1] or not co[-1]:
            continue
        mat = None
        for (beta, alpha), f in comps.items():
            if f.dom != (dom[alpha],) or f.cod != (cod[beta],):
                raise TypeMismatch("component has the wrong type")
            b = f.blocks.get(k)
            if b is None:
                continue
            if mat is None:
                mat = linalg.zeros(ro[-1], co[-1])
            for i, row in enumerate(b):
                tgt = mat[ro[beta] + i]
                for j, x in enumerate(row):
                    if x:
                        tgt[co[alpha] + j] = tgt[co[alpha] + j] + x
        if mat is not None:
            blocks[k] = mat
    return Mor(C, dom, cod, blocks)


def component(f: Mor, beta: int, alpha: int) -> Mor:
    C = f.C
    blocks = {}
    for k, b in f.blocks.items():
        ro, co = _offsets(C, f.cod, k), _offsets(C, f.dom, k)
        sub = [row[co[alpha]:co[alpha + 1]] for row in b[ro[beta]:ro[beta + 1]]]
        blocks[k] = sub
    return Mor(C, (f.dom[alpha],), (f.cod[beta],), blocks)


def inclusion(C: CategorySpec, X: Obj, alpha: int) -> Mor:
    return from_components(C, (X[alpha],), X, {(alpha, 0): identity_mor(C, (X[alpha],))})


def projection(C: CategorySpec, X: Obj, alpha: int) -> Mor:
    return from_components(C, X, (X[alpha],), {(0, alpha): identity_mor(C, (X[alpha],))})


# -- tensor product ----------------------------------------------------------

def _prod_trees(C: CategorySpec, x: Word, y: Word, k: int):
    return [
        (i, s, j, t)
        for i in range(C.rank)
        for j in range(C.rank)
        if C.N(i, j, k)
        for s in trees(C, x, i)
        for t in trees(C, y, j)
    ]


def _change(C: CategorySpec, x: Word, y: Word, k: int):
    """Matrix T with psi_prod = sum_L T[L, prod] psi_L, and its inverse."""
    cache = _cache(C)
    key = ("T", x, y, k)
    hit = cache.get(key)
    if hit is not None:
        return hit
    rows = trees(C, x + y, k)
    ridx = {t: n for n, t in enumerate(rows)}
    cols = _prod_trees(C, x, y, k)
    T = linalg.zeros(len(rows), len(cols))
    if not y:
        for n, (i, s, _, _) in enumerate(cols):
            T[ridx[s]][n] = ONE
    else:
        y0, b = y[:-1], y[-1]
        for n, (i, s, j, t) in enumerate(cols):
            jp = t[-2] if len(t) >= 2 else 0
            sub_t = t[:-1]
            for h in C.fuse(i, jp):
                if not C.N(h, b, k):
                    continue
                coef = C.Finv_entry(i, jp, b, k, j, h)
                if not coef:
                    continue
                sub_T, _ = _change(C, x, y0, h)
                sub_cols = _prod_trees(C, x, y0, h)
                col = sub_cols.index((i, s, jp, sub_t))
                sub_rows = trees(C, x + y0, h)
                for m, L in enumerate(sub_rows):
                    v = sub_T[m][col]
                    if v:
                        T[ridx[L + (k,)]][n] = T[ridx[L + (k,)]][n] + coef * v
    out = (T, linalg.inverse(T) if T else T)
    cache[key] = out
    return out


def _tensor2(f: Mor, g: Mor) -> Mor:
    C = f.C
    if f.dom == UNIT and f.cod == UNIT:
        return g.scale(closed_scalar(f)) if f.blocks else zero_mor(C, g.dom, g.cod)
    if g.dom == UNIT and g.cod == UNIT:
        return f.scale(closed_scalar(g)) if g.blocks else zero_mor(C, f.dom, f.cod)
    dom = obj_tensor(f.dom, g.dom)
    cod = obj_tensor(f.cod, g.cod)
    blocks = {}
    for k in range(C.rank):
        ro, co = _offsets(C, cod, k), _offsets(C, dom, k)
        if not ro[-1] or not co[-1]:
            continue
        mat = None
        for (a1, x1), (b1, y1) in itertools.product(enumerate(f.cod), enumerate(g.cod)):
            beta = a1 * len(g.cod) + b1
            if ro[beta] == ro[beta + 1]:
                continue
            Tc, _ = _change(C, x1, y1, k)
            pc = _prod_trees(C, x1, y1, k)
            for (a0, x0), (b0, y0) in itertools.product(enumerate(f.dom), enumerate(g.dom)):
                alpha = a0 * len(g.dom) + b0
                if co[alpha] == co[alpha + 1]:
                    continue
                _, Tdi = _change(C, x0, y0, k)
                pd = _prod_trees(C, x0, y0, k)
                K = linalg.zeros(len(pc), len(pd))
                nz = False
                for r, (i, s1, j, t1) in enumerate(pc):
                    fb = f.blocks.get(i)
                    gb = g.blocks.get(j)
                    if fb is None or gb is None:
                        continue
                    fr = _offsets(C, f.cod, i)[a1] + trees(C, x1, i).index(s1)
                    gr = _offsets(C, g.cod, j)[b1] + trees(C, y1, j).index(t1)
                    for c, (i2, s0, j2, t0) in enumerate(pd):
                        if i2 != i or j2 != j:
                            continue
                        fc = _offsets(C, f.dom, i)[a0] + trees(C, x0, i).index(s0)
                        gc = _offsets(C, g.dom, j)[b0] + trees(C, y0, j).index(t0)
                        u, v = fb[fr][fc], gb[gr][gc]
                        if u and v:
                            K[r][c] = u * v
                            nz = True
                if not nz:
                    continue
                sub = linalg.matmul(linalg.matmul(Tc, K), Tdi)
                if mat is None:
                    mat = linalg.zeros(ro[-1], co[-1])
                for r, row in enumerate(sub):
                    mat[ro[beta] + r][co[alpha]:co[alpha + 1]] = row
        if mat is not None:
            blocks[k] = mat
    return Mor(C, dom, cod, blocks)


def tensor_mor(*fs: Mor) -> Mor:
    out = fs[0]
    for f in fs[1:]:
        out = _tensor2(out, f)
    return out


# -- braiding and twist ------------------------------------------------------

def _swap(C: CategorySpec, w: Word, m: int, sign: int) -> Mor:
    """Braid the adjacent letters at positions m, m+1 of w (over for sign +1)."""
    cache = _cache(C)
    key = ("swap", w, m, sign)
    hit = cache.get(key)
    if hit is not None:
        return hit
    a, b = w[m], w[m + 1]
    v = w[:m] + (b, a) + w[m + 2:]

    def r(x, y, f):
        # over crossing on (x y) -> (y x); the under crossing is the inverse of c_{y,x}
        return C.R(x, y, f) if sign > 0 else C.R(y, x, f).inv()

    blocks = {}
    for k in range(C.rank):
        src = trees(C, w, k)
        if not src:
            continue
        dst = trees(C, v, k)
        didx = {t: n for n, t in enumerate(dst)}
        mat = linalg.zeros(len(dst), len(src))
        for n, t in enumerate(src):
            if m == 0:
                top = t[1]
                mat[didx[(b,) + t[1:]]][n] = r(a, b, top)
                continue
            left, mid, top = t[m - 1], t[m], t[m + 1]
            for f in C.fuse(a, b):
                c1 = C.F_entry(left, a, b, top, mid, f)
                if not c1:
                    continue
                c1 = c1 * r(a, b, f)
                for g in C.fuse(left, b):
                    c2 = C.Finv_entry(left, b, a, top, f, g)
                    if c2:
                        tgt = didx[t[:m] + (g,) + t[m + 1:]]
                        mat[tgt][n] = mat[tgt][n] + c1 * c2
        blocks[k] = mat
    out = Mor(C, (w,), (v,), blocks)
    cache[key] = out
    return out


def _braid_words(C: CategorySpec, u: Word, v: Word, sign: int) -> Mor:
    cache = _cache(C)
    key = ("braid", u, v, sign)
    hit = cache.get(key)
    if hit is not None:
        return hit
    w = u + v
    out = identity_mor(C, (w,))
    # move letters of u, last first, across all of v
    cur = list(w)
    for p in reversed(range(len(u))):
        for m in range(p, p + len(v)):
            out = compose(_swap(C, tuple(cur), m, sign), out)
            cur[m], cur[m + 1] = cur[m + 1], cur[m]
    cache[key] = out
    return out


def braid_mor(C: CategorySpec, U: Obj, V: Obj, sign: int = 1) -> Mor:
    """c_{U,V}: U V -> V U for sign +1; for sign -1 the inverse of c_{V,U}, also U V -> V U."""
    comps = {}
    dom = obj_tensor(U, V)
    cod = obj_tensor(V, U)
    for a, u in enumerate(U):
        for b, v in enumerate(V):
            comps[b * len(U) + a, a * len(V) + b] = _braid_words(C, u, v, sign)
    return from_components(C, dom, cod, comps)


def twist_mor(C: CategorySpec, X: Obj, sign: int = 1) -> Mor:
    blocks = {}
    for k in _roots(C, X):
        t = C.theta(k) if sign > 0 else C.theta(k).inv()
        blocks[k] = linalg.scale(t, linalg.identity(_offsets(C, X, k)[-1]))
    return Mor(C, X, X, blocks)


# -- dualities ---------------------------------------------------------------

def _letter_dualities(C: CategorySpec, a: int):
    ad = C.dual(a)
    b = Mor(C, UNIT, ((a, ad),), {0: [[ONE]]})
    d = Mor(C, ((ad, a),), UNIT, {0: [[C.cap_scalar(a)]]})
    bt = Mor(C, UNIT, ((ad, a),), {0: [[C.kappa(a)]]})
    dt = Mor(C, ((a, ad),), UNIT, {0: [[C.right_cap_scalar(a)]]})
    return b, d, bt, dt


def _word_dualities(C: CategorySpec, x: Word):
    cache = _cache(C)
    key = ("dual", x)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not x:
        u = identity_mor(C, UNIT)
        out = (u, u, u, u)
    elif len(x) == 1:
        out = _letter_dualities(C, x[0])
    else:
        xp, a = x[:-1], x[-1]
        bp, dp, btp, dtp = _word_dualities(C, xp)
        ba, da, bta, dta = _letter_dualities(C, a)
        Xp = (xp,)
        Xpd = obj_dual(C, Xp)
        A, Ad = ((a,),), ((C.dual(a),),)
        b = compose(tensor_mor(identity_mor(C, Xp), ba, identity_mor(C, Xpd)), bp)
        d = compose(da, tensor_mor(identity_mor(C, Ad), dp, identity_mor(C, A)))
        bt = compose(tensor_mor(identity_mor(C, Ad), btp, identity_mor(C, A)), bta)
        dt = compose(dtp, tensor_mor(identity_mor(C, Xp), dta, identity_mor(C, Xpd)))
        out = (b, d, bt, dt)
    cache[key] = out
    return out


def duality_mors(C: CategorySpec, X: Obj) -> tuple[Mor, Mor, Mor, Mor]:
    """(b_X: 1 -> X X*, d_X: X* X -> 1, b~_X: 1 -> X* X, d~_X: X X* -> 1)."""
    if len(X) == 1:
        return _word_dualities(C, X[0])
    Xd = obj_dual(C, X)
    XXd, XdX = obj_tensor(X, Xd), obj_tensor(Xd, X)
    n = len(X)
    parts = [_word_dualities(C, x) for x in X]
    b = from_components(C, UNIT, XXd, {(a * n + a, 0): parts[a][0] for a in range(n)})
    d = from_components(C, XdX, UNIT, {(0, a * n + a): parts[a][1] for a in range(n)})
    bt = from_components(C, UNIT, XdX, {(a * n + a, 0): parts[a][2] for a in range(n)})
    dt = from_components(C, XXd, UNIT, {(0, a * n + a): parts[a][3] for a in range(n)})
    return b, d, bt, dt


def dual_tensor_swap(C: CategorySpec, X: Obj, Y: Obj) -> Mor:
    """The summand reordering (X Y)* -> Y* X* (identity on each word)."""
    nx, ny = len(X), len(Y)
    dom, cod = obj_dual(C, obj_tensor(X, Y)), obj_tensor(obj_dual(C, Y), obj_dual(C, X))
    comps = {(j * nx + i, i * ny + j): identity_mor(C, (dom[i * ny + j],)) for i in range(nx) for j in range(ny)}
    return from_components(C, dom, cod, comps)


def dual_mor(f: Mor) -> Mor:
    """f*: Y* -> X* built from the left duality."""
    C = f.C
    X, Y = f.dom, f.cod
    Xd, Yd = obj_dual(C, X), obj_dual(C, Y)
    bX = duality_mors(C, X)[0]
    dY = duality_mors(C, Y)[1]
    return compose(
        tensor_mor(dY, identity_mor(C, Xd)),
        tensor_mor(identity_mor(C, Yd), f, identity_mor(C, Xd)),
        tensor_mor(identity_mor(C, Yd), bX),
    )


def right_dual_mor(f: Mor) -> Mor:
    """The same transpose built from the right duality."""
    C = f.C
    X, Y = f.dom, f.cod
    Xd, Yd = obj_dual(C, X), obj_dual(C, Y)
    btX = duality_mors(C, X)[2]
    dtY = duality_mors(C, Y)[3]
    return compose(
        tensor_mor(identity_mor(C, Xd), dtY),
        tensor_mor(identity_mor(C, Xd), f, identity_mor(C, Yd)),
        tensor_mor(btX, identity_mor(C, Yd)),
    )


def delta_iso(C: CategorySpec, U: Obj) -> Mor:
    """delta_U = (id x d_U) . ((c_{U*,U**} . b_{U*}) x theta_U): U -> U**."""
    Ud = obj_dual(C, U)
    Udd = obj_dual(C, Ud)
    b_ud = duality_mors(C, Ud)[0]
    d_u = duality_mors(C, U)[1]
    left = compose(braid_mor(C, Ud, Udd), b_ud)
    return compose(tensor_mor(identity_mor(C, Udd), d_u), tensor_mor(left, twist_mor(C, U)))


# -- hom spaces as vector spaces ----------------------------------------------

def _slots(C: CategorySpec, X: Obj, Y: Obj) -> list[tuple[int, int, int]]:
    out = []
    for k in range(C.rank):
        nr, nc = _offsets(C, Y, k)[-1], _offsets(C, X, k)[-1]
        out.extend((k, r, c) for r in range(nr) for c in range(nc))
    return out


def mor_to_vec(f: Mor) -> list[CycNum]:
    return [f.blocks[k][r][c] if k in f.blocks else ZERO for k, r, c in _slots(f.C, f.dom, f.cod)]


def vec_to_mor(C: CategorySpec, X: Obj, Y: Obj, vec: Sequence[CycNum]) -> Mor:
    blocks: dict[int, list[list[CycNum]]] = {}
    for (k, r, c), x in zip(_slots(C, X, Y), vec):
        if x:
            if k not in blocks:
                blocks[k] = linalg.zeros(_offsets(C, Y, k)[-1], _offsets(C, X, k)[-1])
            blocks[k][r][c] = CycNum.coerce(x)
    return Mor(C, X, Y, blocks)


def hom_basis(C: CategorySpec, X: Obj, Y: Obj) -> list[Mor]:
    n = hom_dim(C, X, Y)
    out = []
    for i in range(n):
        v = [ZERO] * n
        v[i] = ONE
        out.append(vec_to_mor(C, X, Y, v))
    return out


def mors_linear_span(mors: Iterable[Mor]) -> int:
    vecs = [mor_to_vec(f) for f in mors]
    return linalg.rank(vecs) if vecs else 0


def linear_relations(mors: Sequence[Mor]) -> list[list[CycNum]]:
    """Basis of coefficient vectors x with sum_i x_i mors[i] = 0 (all of one type)."""
    if not mors:
        return []
    cols = [mor_to_vec(f) for f in mors]
    rows = [[col[r] for col in cols] for r in range(len(cols[0]))]
    rows = [r for r in rows if any(r)]
    if not rows:
        return [[ONE if i == j else ZERO for i in range(len(mors))] for j in range(len(mors))]
    return linalg.nullspace(rows, len(mors))


def combine(coeffs: Sequence[CycNum], mors: Sequence[Mor]) -> Mor:
    """sum_i coeffs[i] mors[i] over a nonempty list of morphisms of one type."""
    f0 = mors[0]
    out = zero_mor(f0.C, f0.dom, f0.cod)
    for x, f in zip(coeffs, mors):
        if x:
            out = out + f.scale(x)
    return out


# -- textual diagrams ----------------------------------------------------------

PRIMITIVES = {
    "id": 1, "c": 2, "ci": 2, "theta": 1, "thetai": 1,
    "b": 1, "d": 1, "bt": 1, "dt": 1, "delta": 1,
}
_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_']+)|(.))")


@dataclass(frozen=True)
class Prim:
    kind: str
    args: tuple[tuple[str, ...], ...]
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Name:
    name: str
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Compose:
    parts: tuple
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Tensor:
    parts: tuple
    pos: int = field(default=-1, compare=False)


DiagramExpr = Prim | Name | Compose | Tensor


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None or m.end() == i:
            break
        if m.group(1) is not None:
            out.append(("ident", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            ch = m.group(2)
            if ch not in ".*()[],":
                raise DiagramSyntaxError(f"unexpected character {ch!r}", m.start(2))
            out.append((ch, ch, m.start(2)))
        i = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str):
        tok = self.toks[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise DiagramSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        pos = self.peek()[2]
        parts = [self.term()]
        while self.peek()[0] == ".":
            self.i += 1
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Compose(tuple(parts), pos)

    def term(self):
        pos = self.peek()[2]
        parts = [self.factor()]
        while self.peek()[0] == "*":
            self.i += 1
            parts.append(self.factor())
        return parts[0] if len(parts) == 1 else Tensor(tuple(parts), pos)

    def factor(self):
        tok = self.peek()
        if tok[0] == "(":
            self.i += 1
            e = self.expr()
            self.take(")")
            return e
        if tok[0] != "ident":
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise DiagramSyntaxError(f"expected a primitive, name or '(', found {what}", tok[2])
        self.i += 1
        if self.peek()[0] != "[":
            return Name(tok[1], tok[2])
        if tok[1] not in PRIMITIVES:
            raise DiagramSyntaxError(f"unknown primitive {tok[1]!r}", tok[2])
        self.i += 1
        args = [self.word()]
        while self.peek()[0] == ",":
            self.i += 1
            args.append(self.word())
        self.take("]")
        if len(args) != PRIMITIVES[tok[1]]:
            raise DiagramSyntaxError(f"{tok[1]} takes {PRIMITIVES[tok[1]]} word(s), got {len(args)}", tok[2])
        return Prim(tok[1], tuple(args), tok[2])

    def word(self):
        letters = [self.take("ident")[1]]
        while self.peek()[0] == "ident":
            letters.append(self.take("ident")[1])
        return tuple(letters)


def parse_diagram(text: str, env: dict | None = None, C: CategorySpec | None = None) -> DiagramExpr:
    """Parse diagram text; with ``C`` given the expression is also type-checked."""
    p = _Parser(text)
    e = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise DiagramSyntaxError(f"unexpected {tok[1]!r}", tok[2])
    if C is not None:
        infer_type(C, e, env or {})
    elif env is not None:
        for name, pos in _names(e):
            if name not in env:
                raise UnboundName(f"unbound name {name!r} (at offset {pos})")
    return e


def _names(e):
    if isinstance(e, Name):
        yield e.name, e.pos
    elif isinstance(e, (Compose, Tensor)):
        for part in e.parts:
            yield from _names(part)


def print_diagram(e: DiagramExpr) -> str:
    if isinstance(e, Prim):
        return f"{e.kind}[{', '.join(' '.join(w) for w in e.args)}]"
    if isinstance(e, Name):
        return e.name
    if isinstance(e, Compose):
        return " . ".join(f"({print_diagram(p)})" if isinstance(p, Compose) else print_diagram(p) for p in e.parts)
    inner = []
    for p in e.parts:
        s = print_diagram(p)
        inner.append(f"({s})" if isinstance(p, (Compose, Tensor)) else s)
    return " * ".join(inner)


def _resolve_word(C: CategorySpec, letters: tuple[str, ...], env: dict, pos: int) -> Obj:
    out: Obj = UNIT
    for t in letters:
        if t in C.names:
            piece = word(C.names.index(t))
        elif t in env and not isinstance(env[t], Mor):
            piece = env[t]
        else:
            raise UnboundName(f"unknown label or object {t!r} (at offset {pos})")
        out = obj_tensor(out, piece)
    return out


def _prim_type(C: CategorySpec, kind: str, objs: list[Obj]) -> tuple[Obj, Obj]:
    U = objs[0]
    if kind in ("id", "theta", "thetai"):
        return U, U
    if kind == "delta":
        return U, obj_dual(C, obj_dual(C, U))
    if kind == "c":
        return obj_tensor(U, objs[1]), obj_tensor(objs[1], U)
    if kind == "ci":
        return obj_tensor(objs[1], U), obj_tensor(U, objs[1])
    Ud = obj_dual(C, U)
    return {
        "b": (UNIT, obj_tensor(U, Ud)),
        "d": (obj_tensor(Ud, U), UNIT),
        "bt": (UNIT, obj_tensor(Ud, U)),
        "dt": (obj_tensor(U, Ud), UNIT),
    }[kind]


def infer_type(C: CategorySpec, e: DiagramExpr, env: dict) -> tuple[Obj, Obj]:
    if isinstance(e, Prim):
        return _prim_type(C, e.kind, [_resolve_word(C, w, env, e.pos) for w in e.args])
    if isinstance(e, Name):
        f = env.get(e.name)
        if not isinstance(f, Mor):
            raise UnboundName(f"unbound name {e.name!r} (at offset {e.pos})")
        return f.dom, f.cod
    types = [infer_type(C, p, env) for p in e.parts]
    if isinstance(e, Tensor):
        return obj_tensor(*(t[0] for t in types)), obj_tensor(*(t[1] for t in types))
    for (dom, _), (_, cod), part in zip(types, types[1:], e.parts[1:]):
        if dom != cod:
            raise TypeMismatch(
                f"cannot compose {obj_str(C, dom)} with {obj_str(C, cod)} (at offset {part.pos})"
            )
    return types[-1][0], types[0][1]


def eval_diagram(C: CategorySpec, e: DiagramExpr, env: dict | None = None) -> Mor:
    env = env or {}
    if isinstance(e, Prim):
        objs = [_resolve_word(C, w, env, e.pos) for w in e.args]
        U = objs[0]
        if e.kind == "id":
            return identity_mor(C, U)
        if e.kind in ("theta", "thetai"):
            return twist_mor(C, U, 1 if e.kind == "theta" else -1)
        if e.kind == "c":
            return braid_mor(C, U, objs[1])
        if e.kind == "ci":
            return braid_mor(C, objs[1], U, -1)
        if e.kind == "delta":
            return delta_iso(C, U)
        b, d, bt, dt = duality_mors(C, U)
        return {"b": b, "d": d, "bt": bt, "dt": dt}[e.kind]
    if isinstance(e, Name):
        f = env.get(e.name)
        if not isinstance(f, Mor):
            raise UnboundName(f"unbound name {e.name!r} (at offset {e.pos})")
        return f
    parts = [eval_diagram(C, p, env) for p in e.parts]
    if isinstance(e, Tensor):
        return tensor_mor(*parts)
    for left, right, part in zip(parts, parts[1:], e.parts[1:]):
        if left.dom != right.cod:
            raise TypeMismatch(
                f"cannot compose {obj_str(C, left.dom)} with {obj_str(C, right.cod)} (at offset {part.pos})"
            )
    return compose(*parts)


def run_diagram(C: CategorySpec, text: str, env: dict | None = None) -> Mor:
    return eval_diagram(C, parse_diagram(text, env, C), env)
