"""Exact solutions of small zero-dimensional polynomial systems over cyclotomic fields.

Polynomials are dicts mapping exponent tuples to CycNum coefficients. The
Groebner basis is computed by sympy over Q(zeta_N); roots of the resulting
triangular system are found by factoring over Q(zeta_M) for a short list of
cyclotomic extensions. A root outside all tried fields makes the result
incomplete, which callers must report.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

import sympy as sp

from .errors import RibbonAlgError
from .scalar import ONE, ZERO, CycNum, cyc_make, totient

Poly = dict[tuple[int, ...], CycNum]

# extra conductors tried, in order, when a univariate factor does not split
_EXTENSIONS = (1, 4, 3, 8, 5, 12, 16, 24, 20, 40, 48)


class NotZeroDimensional(RibbonAlgError):
    """The system has a positive-dimensional solution set."""


@lru_cache(maxsize=None)
def _field(order: int):
    return sp.QQ if order <= 2 else sp.QQ.cyclotomic_field(order)


def _to_dom(K, order: int, x: CycNum):
    coords = x.coords_at(order)
    if K is sp.QQ:
        return sp.QQ(coords[0].numerator, coords[0].denominator)
    return K.new([sp.QQ(c.numerator, c.denominator) for c in reversed(coords)])


def _from_dom(K, order: int, a) -> CycNum:
    if K is sp.QQ:
        q = sp.QQ.convert(a)
        return CycNum(Fraction(int(q.numerator), int(q.denominator)))
    rep = list(reversed(a.to_list()))
    coords = [Fraction(int(c.numerator), int(c.denominator)) for c in rep]
    coords += [Fraction(0)] * (totient(order) - len(coords))
    return cyc_make(order, coords)


def _conductor(values) -> int:
    n = 1
    for x in values:
        n = lcm(n, x.order)
    return n


def poly_eval(p: Poly, point: Sequence[CycNum | None]) -> Poly:
    """Substitute the known coordinates of point (None = keep variable)."""
    out: Poly = {}
    for mono, c in p.items():
        coef = c
        keep = []
        for v, e in enumerate(mono):
            if e and point[v] is not None:
                coef = coef * point[v] ** e
                keep.append(0)
            else:
                keep.append(e)
        if coef:
            key = tuple(keep)
            s = out.get(key, ZERO) + coef
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def cyclotomic_roots(coeffs: Sequence[CycNum]) -> tuple[list[CycNum], bool]:
    """Distinct roots of sum coeffs[k] x**k found in cyclotomic fields, and whether all were found."""
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    deg = len(coeffs) - 1
    if deg <= 0:
        return [], True
    if deg == 1:
        return [-coeffs[0] / coeffs[1]], True
    base = _conductor(coeffs)
    roots: list[CycNum] = []
    remaining = deg
    todo = [coeffs]
    x = sp.Symbol("x")
    for ext in _EXTENSIONS:
        order = lcm(base, ext)
        K = _field(order)
        nxt = []
        for cs in todo:
            p = sp.Poly.from_list([_to_dom(K, order, c) for c in reversed(cs)], x, domain=K)
            for fac, mult in p.factor_list()[1]:
                fl = fac.all_coeffs()
                if len(fl) == 2:
                    r = _from_dom(K, order, K.quo(K.neg(K.convert(fl[1])), K.convert(fl[0])))
                    if r not in roots:
                        roots.append(r)
                    remaining -= mult
                else:
                    sub = [_from_dom(K, order, K.convert(c)) for c in reversed(fl)]
                    nxt.extend([sub] * mult)
        todo = nxt
        if not todo:
            return roots, remaining == 0
    return roots, False


def solve_system(polys: Sequence[Poly], nvars: int) -> tuple[list[list[CycNum]], bool]:
    """All solutions of polys = 0 with cyclotomic coordinates.

    Returns (solutions, complete). Raises NotZeroDimensional if the solution
    set is infinite.
    """
    polys = [p for p in polys if p]
    if not polys:
        if nvars == 0:
            return [[]], True
        raise NotZeroDimensional("no equations")
    for p in polys:
        if all(not any(m) for m in p):
            return [], True
    order = _conductor(c for p in polys for c in p.values())
    if nvars == 0:
        return [[]], True
    K = _field(order)
    gens = sp.symbols(f"v0:{nvars}")
    sps = [
        sp.Poly.from_dict({m: _to_dom(K, order, c) for m, c in p.items()}, *gens, domain=K)
        for p in polys
    ]
    G = sp.groebner(sps, *gens, order="lex", domain=K)
    basis = []
    for g in G.polys:
        d = {m: _from_dom(K, order, K.convert(c)) for m, c in g.rep.to_dict().items()}
        basis.append(d)
    if any(len(b) == 1 and not any(next(iter(b))) for b in basis):
        return [], True
    if not G.is_zero_dimensional:
        raise NotZeroDimensional("solution set is not finite")

    complete = True
    partials: list[list[CycNum | None]] = [[None] * nvars]
    for v in reversed(range(nvars)):
        relevant = [b for b in basis if all(not any(m[:v]) for m in b) and any(m[v] for m in b)]
        nxt = []
        for pt in partials:
            unis = []
            for b in relevant:
                r = poly_eval(b, pt)
                if r:
                    cs = [ZERO] * (max(m[v] for m in r) + 1)
                    for m, c in r.items():
                        cs[m[v]] = c
                    unis.append(cs)
            if not unis:
                raise NotZeroDimensional(f"variable {v} unconstrained")
            unis.sort(key=len)
            cands, ok = cyclotomic_roots(unis[0])
            complete = complete and ok
            for r in cands:
                if all(_horner(cs, r) == ZERO for cs in unis[1:]):
                    q = list(pt)
                    q[v] = r
                    nxt.append(q)
        partials = nxt
    sols = []
    for pt in partials:
        if all(not poly_eval(p, pt) for p in polys):
            sols.append(list(pt))
    return sols, complete


def _horner(cs: Sequence[CycNum], x: CycNum) -> CycNum:
    acc = ZERO
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for m, c in q.items():
        s = out.get(m, ZERO) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def monomial(nvars: int, *vs: int) -> tuple[int, ...]:
    e = [0] * nvars
    for v in vs:
        e[v] += 1
    return tuple(e)


def constant(nvars: int, c=ONE) -> Poly:
    c = CycNum.coerce(c)
    return {(0,) * nvars: c} if c else {}


def _groebner_is_one(polys: Sequence[Poly], nvars: int) -> bool:
    order = _conductor(c for p in polys for c in p.values())
    K = _field(order)
    gens = sp.symbols(f"v0:{max(nvars, 1)}")
    sps = [
        sp.Poly.from_dict({m: _to_dom(K, order, c) for m, c in p.items()}, *gens[:nvars], domain=K)
        for p in polys
    ]
    G = sp.groebner(sps, *gens[:nvars], order="grevlex", domain=K)
    return any(g.is_ground and not g.is_zero for g in G.polys)


def is_consistent(polys: Sequence[Poly], nvars: int) -> bool:
    """True iff polys = 0 has a solution over the algebraic closure."""
    polys = [p for p in polys if p]
    if not polys:
        return True
    if any(all(not any(m) for m in p) for p in polys):
        return False
    if nvars == 0:
        return True
    return not _groebner_is_one(polys, nvars)


def find_solution(polys: Sequence[Poly], nvars: int, tries: int = 6) -> tuple[list[CycNum] | None, bool]:
    """One cyclotomic solution of polys = 0, specializing free variables to 1, 2, ... as needed.

    Returns (solution or None, conclusive). Inconclusive means every
    specialization tried failed although the system is consistent.
    """
    polys = [p for p in polys if p]
    if not is_consistent(polys, nvars):
        return None, True
    work = list(polys)
    for v in range(nvars + 1):
        try:
            sols, _ = solve_system(work, nvars)
        except NotZeroDimensional:
            sols = None
        if sols:
            return sols[0], True
        if sols == [] and not is_consistent(work, nvars):
            return None, False
        if v == nvars:
            break
        for c in range(1, tries + 1):
            trial = work + [poly_add({monomial(nvars, v): ONE}, constant(nvars, -c))]
            if is_consistent(trial, nvars):
                work = trial
                break
    return None, False
