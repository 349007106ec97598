"""Morphisms depending polynomially on unknown scalars.

A SymMor is a finite sum  sum_mono mono(v) * f_mono  of ordinary morphisms of
one type with monomial coefficients in the unknowns v. Composition and tensor
product multiply monomials, so polynomial identities between structure
morphisms turn into polynomial equations on the unknowns, one per matrix entry.
"""

from __future__ import annotations

from typing import Sequence

from .diagram import Mor, Obj, compose, hom_dim, mor_to_vec, obj_tensor, tensor_mor, vec_to_mor, zero_mor
from .polysolve import Poly
from .scalar import ONE, ZERO, CycNum

Mono = tuple[int, ...]


class SymMor:
    __slots__ = ("nvars", "terms", "dom", "cod", "C")

    def __init__(self, nvars: int, terms: dict[Mono, Mor], dom: Obj, cod: Obj, C):
        self.nvars = nvars
        self.terms = {m: f for m, f in terms.items() if not f.is_zero()}
        self.dom = dom
        self.cod = cod
        self.C = C

    @classmethod
    def const(cls, nvars: int, f: Mor) -> "SymMor":
        return cls(nvars, {(0,) * nvars: f}, f.dom, f.cod, f.C)

    @classmethod
    def unknown(cls, nvars: int, first: int, basis: Sequence[Mor], fixed: Mor | None = None) -> "SymMor":
        """fixed + sum_i v[first + i] basis[i]."""
        f0 = basis[0] if basis else fixed
        terms: dict[Mono, Mor] = {}
        if fixed is not None:
            terms[(0,) * nvars] = fixed
        for i, b in enumerate(basis):
            e = [0] * nvars
            e[first + i] = 1
            terms[tuple(e)] = b
        return cls(nvars, terms, f0.dom, f0.cod, f0.C)

    def _lift(self, other) -> "SymMor":
        return other if isinstance(other, SymMor) else SymMor.const(self.nvars, other)

    def __add__(self, other) -> "SymMor":
        other = self._lift(other)
        terms = dict(self.terms)
        for m, f in other.terms.items():
            terms[m] = terms[m] + f if m in terms else f
        return SymMor(self.nvars, terms, self.dom, self.cod, self.C)

    def __neg__(self) -> "SymMor":
        return SymMor(self.nvars, {m: -f for m, f in self.terms.items()}, self.dom, self.cod, self.C)

    def __sub__(self, other) -> "SymMor":
        return self + (-self._lift(other))

    def scale(self, s) -> "SymMor":
        return SymMor(self.nvars, {m: f.scale(s) for m, f in self.terms.items()}, self.dom, self.cod, self.C)

    def equations(self) -> list[Poly]:
        """One polynomial per matrix entry; the identity holds iff all vanish."""
        polys: dict[int, Poly] = {}
        for m, f in self.terms.items():
            for i, x in enumerate(mor_to_vec(f)):
                if x:
                    p = polys.setdefault(i, {})
                    s = p.get(m, ZERO) + x
                    if s:
                        p[m] = s
                    else:
                        p.pop(m)
        return [p for _, p in sorted(polys.items()) if p]

    def evaluate(self, point: Sequence[CycNum]) -> Mor:
        out = zero_mor(self.C, self.dom, self.cod)
        for m, f in self.terms.items():
            c = ONE
            for v, e in enumerate(m):
                if e:
                    c = c * point[v] ** e
            if c:
                out = out + f.scale(c)
        return out


def _mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def _lift_all(fs) -> list[SymMor]:
    n = next(f.nvars for f in fs if isinstance(f, SymMor))
    return [f if isinstance(f, SymMor) else SymMor.const(n, f) for f in fs]


def scompose(*fs) -> SymMor:
    """compose for SymMor / Mor arguments (rightmost applied first)."""
    fs = _lift_all(fs)
    out = fs[-1]
    for f in reversed(fs[:-1]):
        terms: dict[Mono, Mor] = {}
        for m1, g in f.terms.items():
            for m2, h in out.terms.items():
                k = _mul(m1, m2)
                gh = compose(g, h)
                terms[k] = terms[k] + gh if k in terms else gh
        out = SymMor(out.nvars, terms, out.dom, f.cod, f.C)
    return out


def stensor(*fs) -> SymMor:
    fs = _lift_all(fs)
    out = fs[0]
    for f in fs[1:]:
        terms: dict[Mono, Mor] = {}
        for m1, g in out.terms.items():
            for m2, h in f.terms.items():
                k = _mul(m1, m2)
                gh = tensor_mor(g, h)
                terms[k] = terms[k] + gh if k in terms else gh
        out = SymMor(out.nvars, terms, obj_tensor(out.dom, f.dom), obj_tensor(out.cod, f.cod), out.C)
    return out


def hom_unknown(C, X: Obj, Y: Obj, nvars: int, first: int) -> SymMor:
    """A general morphism X -> Y with unknown entries v[first:first + hom_dim]."""
    n = hom_dim(C, X, Y)
    basis = []
    for i in range(n):
        vec = [ZERO] * n
        vec[i] = ONE
        basis.append(vec_to_mor(C, X, Y, vec))
    if not basis:
        return SymMor(nvars, {}, X, Y, C)
    return SymMor.unknown(nvars, first, basis)
