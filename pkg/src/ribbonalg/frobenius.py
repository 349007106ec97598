"""Algebras and symmetric special Frobenius algebras in a skeletal ribbon category.

Carriers are objects in the sense of ``diagram``: formal sums of words. The
structure maps are stored as whole morphisms on the carrier, so every axiom is
a plain equality of morphisms. Normalized means  eps . eta = dim(A)  and
m . Delta = id.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .category import CategorySpec, CheckFamily, CheckResult, ValidationReport, qdim
from .diagram import (
    UNIT,
    Mor,
    Obj,
    _offsets,
    braid_mor,
    closed_scalar,
    component,
    compose,
    duality_mors,
    from_components,
    hom_basis,
    hom_dim,
    identity_mor,
    inverse_mor,
    linear_relations,
    combine,
    obj_dual,
    obj_str,
    obj_sum,
    obj_tensor,
    tensor_mor,
    zero_mor,
)
from .errors import DegenerateAlgebra, InternalInconsistency, NotAGroup, NotInvertible, NotSupported, TypeMismatch
from .polysolve import NotZeroDimensional, Poly, constant, find_solution, monomial, poly_add, solve_system
from .scalar import ONE, ZERO, CycNum
from .symbolic import SymMor, hom_unknown, scompose, stensor

__all__ = [
    "Algebra",
    "FrobAlgebra",
    "FrobeniusReport",
    "AlgebraList",
    "Retract",
    "Centers",
    "FiniteAbelianGroup",
    "GroupCochain",
    "obj_dim",
    "check_algebra",
    "check_frobenius",
    "make_frobenius",
    "phi_mor",
    "phi_prime_mor",
    "frobeniusability",
    "normalize",
    "opposite",
    "product",
    "direct_sum",
    "end_algebra",
    "trivial_algebra",
    "coboundary",
    "label_group",
    "associator_cochain",
    "schellekens",
    "schellekens_cochains",
    "centers",
    "unit_elements",
    "star",
    "central_unit_elements",
    "is_simple",
    "enumerate_frobenius",
    "frobenius_isomorphism",
    "carrier_labels",
    "split_idempotent",
    "center_multiplicities",
    "algebra_to_json",
    "algebra_from_json",
]


# -- data --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Algebra:
    obj: Obj
    m: Mor
    eta: Mor
    name: str = ""

    def __post_init__(self):
        A = self.obj
        if self.m.dom != obj_tensor(A, A) or self.m.cod != A:
            raise TypeMismatch("product must be a morphism A A -> A")
        if self.eta.dom != UNIT or self.eta.cod != A:
            raise TypeMismatch("unit must be a morphism 1 -> A")

    @property
    def C(self) -> CategorySpec:
        return self.m.C


@dataclass(frozen=True, eq=False)
class FrobAlgebra:
    alg: Algebra
    Delta: Mor
    eps: Mor
    gamma: CycNum | None = None
    gamma_prime: CycNum | None = None
    symmetric: bool = False
    normalized: bool = False
    name: str = ""

    def __post_init__(self):
        A = self.alg.obj
        if self.Delta.dom != A or self.Delta.cod != obj_tensor(A, A):
            raise TypeMismatch("coproduct must be a morphism A -> A A")
        if self.eps.dom != A or self.eps.cod != UNIT:
            raise TypeMismatch("counit must be a morphism A -> 1")

    @property
    def C(self) -> CategorySpec:
        return self.alg.C

    @property
    def obj(self) -> Obj:
        return self.alg.obj

    @property
    def m(self) -> Mor:
        return self.alg.m

    @property
    def eta(self) -> Mor:
        return self.alg.eta

    @property
    def special(self) -> bool:
        return bool(self.gamma) and bool(self.gamma_prime)

    def describe(self) -> str:
        C = self.C
        return self.name or obj_str(C, self.obj)


@dataclass
class FrobeniusReport(ValidationReport):
    gamma: CycNum | None = None
    gamma_prime: CycNum | None = None
    symmetric: bool = False
    phi_invertible: bool = False


class AlgebraList(list):
    """Result list of an enumeration, with its completeness certificate."""

    def __init__(self, items=(), complete: bool = True, cells: int = 0, note: str = ""):
        super().__init__(items)
        self.complete = complete
        self.cells = cells
        self.note = note


# -- small helpers -----------------------------------------------------------

def _id(C: CategorySpec, X: Obj) -> Mor:
    return identity_mor(C, X)


def obj_dim(C: CategorySpec, X: Obj) -> CycNum:
    total = ZERO
    for x in X:
        d = ONE
        for a in x:
            d = d * qdim(C, a)
        total = total + d
    return total


def _scalar_of(f: Mor) -> CycNum | None:
    """s if f = s * id, else None."""
    C = f.C
    if f.dom != f.cod:
        return None
    s = None
    for k in range(C.rank):
        n = _offsets(C, f.dom, k)[-1]
        if not n:
            continue
        b = f.block(k)
        if s is None:
            s = b[0][0]
        for i in range(n):
            for j in range(n):
                if b[i][j] != (s if i == j else ZERO):
                    return None
    return s


def _compare(fam: CheckFamily, lhs: Mor, rhs: Mor, rule: str) -> bool:
    if lhs == rhs:
        return fam.check(True)
    C = lhs.C
    for k in sorted(set(lhs.blocks) | set(rhs.blocks)):
        a, b = lhs.block(k), rhs.block(k)
        for i, (ra, rb) in enumerate(zip(a, b)):
            for j, (x, y) in enumerate(zip(ra, rb)):
                if x != y:
                    return fam.check(False, rule=rule, root=C.names[k], entry=(i, j), lhs=x, rhs=y)
    return fam.check(False, rule=rule)


def _algebra_checks(C: CategorySpec, A: Algebra) -> list[CheckResult]:
    X = A.obj
    I = _id(C, X)
    m, eta = A.m, A.eta
    assoc = CheckFamily("associativity")
    _compare(assoc, compose(m, tensor_mor(m, I)), compose(m, tensor_mor(I, m)), "m(m x id) = m(id x m)")
    unit = CheckFamily("unit")
    _compare(unit, compose(m, tensor_mor(eta, I)), I, "m(eta x id) = id")
    _compare(unit, compose(m, tensor_mor(I, eta)), I, "m(id x eta) = id")
    return [assoc.result, unit.result]


def check_algebra(C: CategorySpec, A: Algebra) -> ValidationReport:
    return ValidationReport(_algebra_checks(C, A))


def phi_mor(A: FrobAlgebra | Algebra, eps: Mor | None = None) -> Mor:
    """Phi = ((eps . m) x id_{A*}) . (id_A x b_A): A -> A*."""
    alg = A.alg if isinstance(A, FrobAlgebra) else A
    eps = A.eps if eps is None else eps
    C, X = alg.C, alg.obj
    b = duality_mors(C, X)[0]
    return compose(tensor_mor(compose(eps, alg.m), _id(C, obj_dual(C, X))), tensor_mor(_id(C, X), b))


def phi_prime_mor(A: FrobAlgebra | Algebra, eps: Mor | None = None) -> Mor:
    """Phi' = (id_{A*} x (eps . m)) . (b~_A x id_A): A -> A*."""
    alg = A.alg if isinstance(A, FrobAlgebra) else A
    eps = A.eps if eps is None else eps
    C, X = alg.C, alg.obj
    bt = duality_mors(C, X)[2]
    return compose(tensor_mor(_id(C, obj_dual(C, X)), compose(eps, alg.m)), tensor_mor(bt, _id(C, X)))


def make_frobenius(alg: Algebra, Delta: Mor, eps: Mor, name: str = "") -> FrobAlgebra:
    """Wrap structure maps, computing the special scalars and the symmetry flag."""
    C, X = alg.C, alg.obj
    gamma = closed_scalar(compose(eps, alg.eta))
    gamma_prime = _scalar_of(compose(alg.m, Delta))
    probe = FrobAlgebra(alg, Delta, eps)
    symmetric = phi_mor(probe) == phi_prime_mor(probe)
    dim = obj_dim(C, X)
    normalized = gamma == dim and gamma_prime == ONE
    return FrobAlgebra(alg, Delta, eps, gamma, gamma_prime, symmetric, normalized, name or alg.name)


def check_frobenius(C: CategorySpec, A: FrobAlgebra) -> FrobeniusReport:
    X = A.obj
    I = _id(C, X)
    m, D, e = A.m, A.Delta, A.eps
    checks = _algebra_checks(C, A.alg)
    coassoc = CheckFamily("coassociativity")
    _compare(coassoc, compose(tensor_mor(D, I), D), compose(tensor_mor(I, D), D), "(D x id)D = (id x D)D")
    counit = CheckFamily("counit")
    _compare(counit, compose(tensor_mor(e, I), D), I, "(eps x id)D = id")
    _compare(counit, compose(tensor_mor(I, e), D), I, "(id x eps)D = id")
    frob = CheckFamily("frobenius")
    Dm = compose(D, m)
    _compare(frob, compose(tensor_mor(I, m), tensor_mor(D, I)), Dm, "(id x m)(D x id) = D m")
    _compare(frob, compose(tensor_mor(m, I), tensor_mor(I, D)), Dm, "(m x id)(id x D) = D m")
    gamma = closed_scalar(compose(e, A.eta))
    gamma_prime = _scalar_of(compose(m, D))
    dim = obj_dim(C, X)
    special = CheckFamily("special")
    special.check(bool(gamma), rule="eps eta != 0", value=gamma)
    special.check(bool(gamma_prime), rule="m D = gamma' id with gamma' != 0", value=gamma_prime)
    special.check(gamma_prime is not None and gamma * gamma_prime == dim, rule="gamma gamma' = dim A", dim=dim)
    phi, phip = phi_mor(A), phi_prime_mor(A)
    symmetric = phi == phip
    sym = CheckFamily("symmetric")
    if A.symmetric:
        _compare(sym, phi, phip, "Phi = Phi'")
    try:
        inverse_mor(phi)
        phi_inv = True
    except NotInvertible:
        phi_inv = False
    checks += [coassoc.result, counit.result, frob.result, special.result]
    if A.symmetric:
        checks.append(sym.result)
    if A.normalized:
        norm = CheckFamily("normalized")
        norm.check(gamma == dim, rule="eps eta = dim A", value=gamma, dim=dim)
        norm.check(gamma_prime == ONE, rule="m D = id", value=gamma_prime)
        checks.append(norm.result)
    return FrobeniusReport(checks, gamma, gamma_prime, symmetric, phi_inv)


# -- constructions -----------------------------------------------------------

def trivial_algebra(C: CategorySpec) -> FrobAlgebra:
    u = _id(C, UNIT)
    return make_frobenius(Algebra(UNIT, u, u, "1"), u, u, "1")


def _natural_counit(alg: Algebra) -> Mor:
    """eps_nat = d_A . (id_{A*} x m) . (b~_A x id_A)."""
    C, X = alg.C, alg.obj
    _, d, bt, _ = duality_mors(C, X)
    return compose(d, tensor_mor(_id(C, obj_dual(C, X)), alg.m), tensor_mor(bt, _id(C, X)))


def frobeniusability(C: CategorySpec, A: Algebra, xi=ONE) -> FrobAlgebra | None:
    """Frobenius structure with eps = xi * eps_nat, if the induced Phi is invertible."""
    xi = CycNum.coerce(xi)
    if not xi:
        raise DegenerateAlgebra("xi must be nonzero")
    X = A.obj
    eps = _natural_counit(A).scale(xi)
    try:
        phi_inv = inverse_mor(phi_mor(A, eps))
    except NotInvertible:
        return None
    b = duality_mors(C, X)[0]
    psi = compose(tensor_mor(_id(C, X), phi_inv), b)
    Delta = compose(tensor_mor(A.m, _id(C, X)), tensor_mor(_id(C, X), psi))
    return make_frobenius(A, Delta, eps, A.name)


def normalize(C: CategorySpec, A: FrobAlgebra) -> FrobAlgebra:
    if not obj_dim(C, A.obj):
        raise DegenerateAlgebra(f"dim({A.describe()}) = 0")
    gp = _scalar_of(compose(A.m, A.Delta))
    if not gp:
        raise DegenerateAlgebra(f"{A.describe()} is not special")
    return make_frobenius(A.alg, A.Delta.scale(gp.inv()), A.eps.scale(gp), A.name)


def opposite(C: CategorySpec, A: FrobAlgebra) -> FrobAlgebra:
    X = A.obj
    m = compose(A.m, braid_mor(C, X, X, -1))
    D = compose(braid_mor(C, X, X, 1), A.Delta)
    name = f"({A.describe()})^opp"
    return make_frobenius(Algebra(X, m, A.eta, name), D, A.eps, name)


def product(C: CategorySpec, A: FrobAlgebra, B: FrobAlgebra) -> FrobAlgebra:
    X, Y = A.obj, B.obj
    IX, IY = _id(C, X), _id(C, Y)
    Z = obj_tensor(X, Y)
    m = compose(tensor_mor(A.m, B.m), tensor_mor(IX, braid_mor(C, Y, X, -1), IY))
    eta = tensor_mor(A.eta, B.eta)
    D = compose(tensor_mor(IX, braid_mor(C, X, Y, 1), IY), tensor_mor(A.Delta, B.Delta))
    eps = tensor_mor(A.eps, B.eps)
    name = f"{A.describe()} # {B.describe()}"
    return make_frobenius(Algebra(Z, m, eta, name), D, eps, name)


def _block_sum(C: CategorySpec, f: Mor, g: Mor, dom: Obj, cod: Obj, dmap, cmap) -> dict:
    comps = {}
    for h, dm, cm in ((f, dmap[0], cmap[0]), (g, dmap[1], cmap[1])):
        for a in range(len(h.dom)):
            for b in range(len(h.cod)):
                piece = component(h, b, a)
                if not piece.is_zero():
                    comps[cm(b), dm(a)] = piece
    return comps


def direct_sum(C: CategorySpec, A: FrobAlgebra, B: FrobAlgebra) -> FrobAlgebra:
    """The product algebra on A + B with componentwise structure maps."""
    X, Y = A.obj, B.obj
    nx, ny = len(X), len(Y)
    S = obj_sum(X, Y)
    n = nx + ny
    SS = obj_tensor(S, S)
    pair_a = lambda i: (i // nx) * n + (i % nx)
    pair_b = lambda i: (nx + i // ny) * n + nx + (i % ny)
    m = from_components(C, SS, S, _block_sum(C, A.m, B.m, SS, S, (pair_a, pair_b), (lambda b: b, lambda b: nx + b)))
    D = from_components(C, S, SS, _block_sum(C, A.Delta, B.Delta, S, SS, (lambda a: a, lambda a: nx + a), (pair_a, pair_b)))
    eta = from_components(C, UNIT, S, _block_sum(C, A.eta, B.eta, UNIT, S, (lambda a: 0, lambda a: 0), (lambda b: b, lambda b: nx + b)))
    eps = from_components(C, S, UNIT, _block_sum(C, A.eps, B.eps, S, UNIT, (lambda a: a, lambda a: nx + a), (lambda b: 0, lambda b: 0)))
    name = f"{A.describe()} (+) {B.describe()}"
    return make_frobenius(Algebra(S, m, eta, name), D, eps, name)


def end_algebra(C: CategorySpec, U: Obj) -> FrobAlgebra:
    """U* U with m = id x d~_U x id, eta = b~_U, Delta = id x b_U x id, eps = d_U."""
    Ud = obj_dual(C, U)
    b, d, bt, dt = duality_mors(C, U)
    IU, IUd = _id(C, U), _id(C, Ud)
    X = obj_tensor(Ud, U)
    m = tensor_mor(IUd, dt, IU)
    D = tensor_mor(IUd, b, IU)
    name = f"End({obj_str(C, U)})"
    return make_frobenius(Algebra(X, m, bt, name), D, d, name)


# -- group cochains and Schellekens algebras ---------------------------------

@dataclass(frozen=True)
class FiniteAbelianGroup:
    orders: tuple[int, ...]

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(n) for n in self.orders)))

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    def mul(self, g, h) -> tuple[int, ...]:
        return tuple((a + b) % n for a, b, n in zip(g, h, self.orders))

    def order(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out


@dataclass(frozen=True)
class GroupCochain:
    group: FiniteAbelianGroup
    degree: int
    values: dict = field(default_factory=dict)

    def __call__(self, *gs) -> CycNum:
        return self.values.get(tuple(gs), ONE)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupCochain):
            return NotImplemented
        if self.group != other.group or self.degree != other.degree:
            return False
        els = self.group.elements()
        return all(self(*t) == other(*t) for t in itertools.product(els, repeat=self.degree))

    __hash__ = None

    def is_trivial(self) -> bool:
        els = self.group.elements()
        return all(self(*t) == ONE for t in itertools.product(els, repeat=self.degree))


def coboundary(x: GroupCochain) -> GroupCochain:
    """Inhomogeneous coboundary with trivial coefficients (multiplicative)."""
    G, n = x.group, x.degree
    vals = {}
    for t in itertools.product(G.elements(), repeat=n + 1):
        v = x(*t[1:])
        for i in range(n):
            merged = t[:i] + (G.mul(t[i], t[i + 1]),) + t[i + 2:]
            v = v * (x(*merged) if i % 2 else x(*merged).inv())
        last = x(*t[:n])
        v = v * (last.inv() if n % 2 == 0 else last)
        if v != ONE:
            vals[t] = v
    return GroupCochain(G, n + 1, vals)


def label_group(C: CategorySpec, labels: Sequence) -> tuple[FiniteAbelianGroup, dict]:
    """Identify a fusion-closed set of invertible labels with a product of cyclic groups."""
    labs = sorted({C.index(x) for x in labels})
    for a in labs:
        if not C.is_invertible(a):
            raise NotAGroup(f"{C.names[a]} is not invertible")
    for a in labs:
        for b in labs:
            (c,) = C.fuse(a, b)
            if c not in labs:
                raise NotAGroup(f"{C.names[a]} x {C.names[b]} = {C.names[c]} leaves the set")
    if 0 not in labs:
        raise NotAGroup("the unit label is missing")

    def mul(a, b):
        return C.fuse(a, b)[0]

    def power(a, k):
        out = 0
        for _ in range(k):
            out = mul(out, a)
        return out

    def order(a):
        k, x = 1, a
        while x != 0:
            x, k = mul(x, a), k + 1
        return k

    gens: list[int] = []
    span = {0}
    while len(span) < len(labs):
        best = None
        for a in sorted(labs, key=lambda a: (-order(a), a)):
            cyc = {power(a, k) for k in range(order(a))}
            if cyc & span == {0}:
                best = a
                break
        if best is None:
            raise NotSupported("could not decompose the label group into cyclic factors")
        gens.append(best)
        span = {mul(s, power(best, k)) for s in span for k in range(order(best))}
    G = FiniteAbelianGroup(tuple(order(g) for g in gens))
    emb = {}
    for el in G.elements():
        x = 0
        for g, k in zip(gens, el):
            x = mul(x, power(g, k))
        emb[el] = x
    return G, emb


def associator_cochain(C: CategorySpec, labels: Sequence) -> GroupCochain:
    """psi(g,h,k) = F^{ghk}[gh, hk], the associator restricted to the label group."""
    G, emb = label_group(C, labels)
    vals = {}
    for g, h, k in itertools.product(G.elements(), repeat=3):
        a, b, c = emb[g], emb[h], emb[k]
        gh, hk = C.fuse(a, b)[0], C.fuse(b, c)[0]
        d = C.fuse(gh, c)[0]
        v = C.F(a, b, c, d, gh, hk)
        if v != ONE:
            vals[g, h, k] = v
    return GroupCochain(G, 3, vals)


def _elem(C: CategorySpec, dom: Obj, cod: Obj, k: int) -> Mor:
    return Mor(C, dom, cod, {k: [[ONE]]})


def _group_carrier(emb: dict, G: FiniteAbelianGroup) -> tuple[Obj, list]:
    els = G.elements()
    return tuple((emb[g],) if emb[g] else () for g in els), els


def schellekens(C: CategorySpec, G: Sequence, omega: GroupCochain | None = None) -> FrobAlgebra | None:
    """Twisted group algebra on the sum of the labels in G, if psi|G = d omega."""
    grp, emb = label_group(C, G)
    if omega is None:
        omega = GroupCochain(grp, 2, {})
    if omega.group != grp or omega.degree != 2:
        raise TypeMismatch(f"omega must be a 2-cochain on {grp.orders}")
    if coboundary(omega) != associator_cochain(C, G):
        return None
    X, els = _group_carrier(emb, grp)
    n = len(els)
    index = {g: i for i, g in enumerate(els)}
    XX = obj_tensor(X, X)
    comps = {}
    for i, g in enumerate(els):
        for j, h in enumerate(els):
            gh = grp.mul(g, h)
            c = index[gh]
            comps[c, i * n + j] = _elem(C, (XX[i * n + j],), (X[c],), emb[gh]).scale(omega(g, h))
    m = from_components(C, XX, X, comps)
    eta = from_components(C, UNIT, X, {(index[grp.identity], 0): _id(C, UNIT)})
    name = "+".join(C.names[emb[g]] for g in els)
    alg = Algebra(X, m, eta, name)
    if not check_algebra(C, alg).passed:
        raise InternalInconsistency("Schellekens product failed associativity although psi = d omega")
    fa = frobeniusability(C, alg, ONE)
    if fa is None:
        return None
    try:
        return normalize(C, fa)
    except DegenerateAlgebra:
        return None


def schellekens_cochains(C: CategorySpec, G: Sequence, budget: int = 64) -> list[GroupCochain]:
    """One 2-cochain omega with d omega = psi|G per isomorphism class of algebra on G."""
    grp, emb = label_group(C, G)
    X, els = _group_carrier(emb, grp)
    out = []
    for A in enumerate_frobenius(C, X, budget, require_special=False):
        vals = {}
        n = len(els)
        for i, g in enumerate(els):
            for j, h in enumerate(els):
                c = els.index(grp.mul(g, h))
                piece = component(A.m, c, i * n + j)
                v = piece.block(emb[grp.mul(g, h)])[0][0]
                if v != ONE:
                    vals[g, h] = v
        out.append(GroupCochain(grp, 2, vals))
    return out


# -- centers -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Retract:
    obj: Obj
    emb: Mor
    res: Mor


@dataclass(frozen=True, eq=False)
class Centers:
    left: Retract
    right: Retract
    P_l: Mor
    P_r: Mor
    choice_l: str
    choice_r: str


def split_idempotent(p: Mor) -> Retract:
    """Exact splitting p = emb . res with res . emb = id."""
    C = p.C
    words = []
    blocks_e, blocks_r = {}, {}
    for k in range(C.rank):
        n = _offsets(C, p.dom, k)[-1]
        if not n:
            continue
        c, r = linalg.rank_factor(p.block(k))
        if not r:
            continue
        words.extend([(k,) if k else ()] * len(r))
        blocks_e[k], blocks_r[k] = c, r
    obj = tuple(words) if words else ()
    emb = Mor(C, obj, p.cod, blocks_e)
    res = Mor(C, p.dom, obj, blocks_r)
    return Retract(obj, emb, res)


def _center_candidates(C: CategorySpec, A: FrobAlgebra) -> list[tuple[str, Mor]]:
    X = A.obj
    I = _id(C, X)
    loop = compose(A.Delta, A.eta)
    out = []
    for s, tag in ((1, "over"), (-1, "under")):
        c = braid_mor(C, X, X, s)
        out.append((f"right-leg-{tag}", compose(A.m, tensor_mor(A.m, I), tensor_mor(I, c), tensor_mor(loop, I))))
        out.append((f"left-leg-{tag}", compose(A.m, tensor_mor(I, A.m), tensor_mor(c, I), tensor_mor(I, loop))))
    return out


def _center_property(C: CategorySpec, A: FrobAlgebra, P: Mor, side: str) -> bool:
    X = A.obj
    I = _id(C, X)
    c = braid_mor(C, X, X, 1)
    if side == "left":
        f = tensor_mor(P, I)
    else:
        f = tensor_mor(I, P)
    return compose(A.m, c, f) == compose(A.m, f)


def center_multiplicities(C: CategorySpec, A: FrobAlgebra, side: str) -> dict[int, int]:
    """Dimension of the space of f: U_k -> A with m.c.(f x id) = m.(f x id) (or the right analogue)."""
    X = A.obj
    I = _id(C, X)
    c = braid_mor(C, X, X, 1)
    out = {}
    for k in range(C.rank):
        U = ((k,) if k else (),)
        fs = hom_basis(C, U, X)
        if not fs:
            continue
        imgs = []
        for f in fs:
            g = tensor_mor(f, I) if side == "left" else tensor_mor(I, f)
            imgs.append(compose(A.m, c, g) - compose(A.m, g))
        dim = len(linear_relations(imgs))
        if dim:
            out[k] = dim
    return out


def _rank_by_root(P: Mor) -> dict[int, int]:
    return {k: linalg.rank(b) for k, b in P.blocks.items() if linalg.rank(b)}


def centers(C: CategorySpec, A: FrobAlgebra) -> Centers:
    if not A.normalized:
        A = normalize(C, A)
    cands = _center_candidates(C, A)
    chosen = {}
    for side in ("left", "right"):
        want = center_multiplicities(C, A, side)
        best = None
        for tag, P in cands:
            if compose(P, P) != P or not _center_property(C, A, P, side):
                continue
            if _rank_by_root(P) == want:
                best = (tag, P)
                break
        if best is None:
            raise InternalInconsistency(f"no {side} center idempotent among the crossing variants")
        chosen[side] = best
    (tl, Pl), (tr, Pr) = chosen["left"], chosen["right"]
    return Centers(split_idempotent(Pl), split_idempotent(Pr), Pl, Pr, tl, tr)


# -- unit elements -------------------------------------------------------------

def unit_elements(C: CategorySpec, A: FrobAlgebra | Algebra) -> list[Mor]:
    """Basis of A_o = Hom(1, A)."""
    return hom_basis(C, UNIT, A.obj)


def star(A: FrobAlgebra | Algebra, alpha: Mor, beta: Mor) -> Mor:
    return compose(A.m, tensor_mor(alpha, beta))


def central_unit_elements(C: CategorySpec, A: FrobAlgebra, cen: Centers | None = None) -> list[Mor]:
    """Basis of C_o = {gamma in A_o : P_l . gamma = gamma}."""
    cen = cen or centers(C, A)
    basis = unit_elements(C, A)
    if not basis:
        return []
    rel = linear_relations([compose(cen.P_l, g) - g for g in basis])
    return [combine(v, basis) for v in rel]


def is_simple(C: CategorySpec, A: FrobAlgebra) -> bool:
    from .modules import bimodule_of, hom_mod

    M = bimodule_of(C, A)
    return len(hom_mod(C, M, M, "bi")) == 1


# -- enumeration -----------------------------------------------------------------

def carrier_labels(C: CategorySpec, obj) -> Obj:
    """Normalize a carrier given as an object, label list or '+'-separated names."""
    if isinstance(obj, str):
        obj = [s.strip() for s in obj.split("+") if s.strip()]
    if isinstance(obj, tuple) and all(isinstance(w, tuple) for w in obj):
        return obj
    out = []
    for x in obj:
        a = C.index(x)
        out.append((a,) if a else ())
    return tuple(out)


def _chars(labels: list[int], slots: list[tuple[str, int, int, int]]) -> list[list[int]]:
    """Gauge weights of each unknown under rescaling of the nonzero-label summands."""
    nz = [a for a in labels if a]
    out = []
    for kind, a, b, c in slots:
        v = [0] * len(nz)
        sign = 1 if kind == "m" else -1
        for x, s in ((a, sign), (b, sign), (c, -sign)):
            if x:
                v[nz.index(x)] += s
        out.append(v)
    return out


def _rank_int(rows: list[list[int]]) -> int:
    if not rows or not rows[0]:
        return 0
    return linalg.rank([[CycNum(x) for x in r] for r in rows])


def enumerate_frobenius(C: CategorySpec, obj, budget: int | None = 64, require_special: bool = True) -> AlgebraList:
    """All normalized symmetric special Frobenius structures on a multiplicity-free carrier.

    Structures are returned up to rescaling of the summands, with the unit
    component of eta equal to 1. With require_special False the search is for
    unital associative algebras with eps . m nondegenerate instead (used for
    twisted group algebras whose dimension vanishes).
    """
    X = carrier_labels(C, obj)
    labels = [x[0] if x else 0 for x in X]
    if any(len(x) > 1 for x in X) or len(set(labels)) != len(labels):
        raise NotSupported("carrier must be a sum of distinct simple labels")
    for a in labels:
        for b in labels:
            if any(C.N(a, b, c) > 1 for c in range(C.rank)):
                raise NotSupported("fusion multiplicities above one")
    if 0 not in labels:
        return AlgebraList([], True, 0, "no unit summand")
    if any(C.dual(a) not in labels for a in labels):
        return AlgebraList([], True, 0, "carrier not closed under duals")
    dim = obj_dim(C, X)
    if require_special and not dim:
        return AlgebraList([], True, 0, "dimension zero")
    n = len(X)
    pos = {a: i for i, a in enumerate(labels)}
    XX = obj_tensor(X, X)
    I = _id(C, X)

    def piece(dom_i, cod_i, k, dom_obj, cod_obj):
        return from_components(C, dom_obj, cod_obj, {(cod_i, dom_i): _elem(C, (dom_obj[dom_i],), (cod_obj[cod_i],), k)})

    m_fixed = zero_mor(C, XX, X)
    slots, basis = [], []
    for a, b, c in itertools.product(labels, repeat=3):
        if not C.N(a, b, c):
            continue
        f = piece(pos[a] * n + pos[b], pos[c], c, XX, X)
        if a == 0 or b == 0:
            m_fixed = m_fixed + f
        else:
            slots.append(("m", a, b, c))
            basis.append(f)
    p = len(slots)
    dslots, dbasis = [], []
    if require_special:
        for a, b, c in itertools.product(labels, repeat=3):
            if C.N(a, b, c):
                dslots.append(("d", a, b, c))
                dbasis.append(piece(pos[c], pos[a] * n + pos[b], c, X, XX))
    nv = p + len(dslots)
    eta = from_components(C, UNIT, X, {(pos[0], 0): _id(C, UNIT)})
    eps_val = dim if require_special else ONE
    eps = from_components(C, X, UNIT, {(0, pos[0]): _id(C, UNIT).scale(eps_val)})
    mS = SymMor.unknown(nv, 0, basis, fixed=m_fixed) if basis else SymMor.const(nv, m_fixed)
    eqs = []
    eqs += (scompose(mS, stensor(mS, I)) - scompose(mS, stensor(I, mS))).equations()
    if require_special:
        dS = SymMor.unknown(nv, p, dbasis)
        eqs += (scompose(stensor(dS, I), dS) - scompose(stensor(I, dS), dS)).equations()
        eqs += (scompose(tensor_mor(eps, I), dS) - I).equations()
        eqs += (scompose(tensor_mor(I, eps), dS) - I).equations()
        Dm = scompose(dS, mS)
        eqs += (scompose(stensor(I, mS), stensor(dS, I)) - Dm).equations()
        eqs += (scompose(stensor(mS, I), stensor(I, dS)) - Dm).equations()
        eqs += (scompose(mS, dS) - I).equations()
        Xd = obj_dual(C, X)
        b = duality_mors(C, X)[0]
        bt = duality_mors(C, X)[2]
        em = scompose(eps, mS)
        phi = scompose(stensor(em, _id(C, Xd)), tensor_mor(I, b))
        phip = scompose(stensor(_id(C, Xd), em), tensor_mor(bt, I))
        eqs += (phi - phip).equations()
    allslots = slots + dslots
    chars = _chars(labels, allslots)
    # the pairing m(a, a*, 0) is nonzero in any Frobenius algebra, so it can be gauged to 1
    pairing = [i for i, (k, a, b, c) in enumerate(slots) if c == 0]
    sols, complete, cells = _branch_solve(eqs, nv, chars, pairing, budget)
    found = []
    for pt in sols:
        m = m_fixed + (combine(pt[:p], basis) if basis else zero_mor(C, XX, X))
        alg = Algebra(X, m, eta, "+".join(C.names[a] for a in labels))
        if require_special:
            fa = make_frobenius(alg, combine(pt[p:nv], dbasis), eps, alg.name)
        else:
            fa = frobeniusability(C, alg, ONE)
            if fa is None:
                continue
        if any(frobenius_isomorphism(C, fa, g, algebra_only=not require_special) is not None for g in found):
            continue
        found.append(fa)
    return AlgebraList(found, complete, cells)


def _pin(nv: int, i: int, value: int) -> Poly:
    return poly_add({monomial(nv, i): ONE}, constant(nv, -value))


def _branch_solve(eqs: list[Poly], nv: int, chars: list[list[int]], pairing: list[int], budget: int | None):
    """Solve modulo the rescaling torus by pinning variables to 0 or 1 along a case split."""
    width = len(chars[0]) if chars else 0
    extra: list[Poly] = []
    rows: list[list[int]] = []
    for i in pairing:
        if _rank_int(rows + [chars[i]]) > _rank_int(rows):
            extra.append(_pin(nv, i, 1))
            rows.append(chars[i])
    stack = [(extra, rows, set(pairing))]
    sols: list[list[CycNum]] = []
    complete, cells = True, 0
    while stack:
        extra, rows, decided = stack.pop()
        cells += 1
        if budget is not None and cells > budget:
            complete = False
            break
        try:
            s, ok = solve_system(eqs + extra, nv)
            sols.extend(s)
            complete = complete and ok
            continue
        except NotZeroDimensional:
            pass
        r = _rank_int(rows)
        nxt = next((i for i in range(nv) if i not in decided and r < width and _rank_int(rows + [chars[i]]) > r), None)
        if nxt is None:
            complete = False
            continue
        stack.append((extra + [_pin(nv, nxt, 0)], rows, decided | {nxt}))
        stack.append((extra + [_pin(nv, nxt, 1)], rows + [chars[nxt]], decided | {nxt}))
    return sols, complete, cells


def frobenius_isomorphism(
    C: CategorySpec, A: FrobAlgebra, B: FrobAlgebra, algebra_only: bool = False, extra=None
) -> Mor | None:
    """An isomorphism phi: A -> B of (Frobenius) algebras, or None if there is none.

    ``extra(phi)`` may return further SymMor identities that phi must satisfy.
    """
    X, Y = A.obj, B.obj
    if obj_dim(C, X) != obj_dim(C, Y) or any(
        _offsets(C, X, k)[-1] != _offsets(C, Y, k)[-1] for k in range(C.rank)
    ):
        return None
    n1 = hom_dim(C, X, Y)
    nv = 2 * n1
    phi = hom_unknown(C, X, Y, nv, 0)
    psi = hom_unknown(C, Y, X, nv, n1)
    eqs = []
    eqs += (scompose(psi, phi) - _id(C, X)).equations()
    eqs += (scompose(phi, A.eta) - B.eta).equations()
    eqs += (scompose(phi, A.m) - scompose(B.m, stensor(phi, phi))).equations()
    if not algebra_only:
        eqs += (scompose(B.eps, phi) - A.eps).equations()
        eqs += (scompose(stensor(phi, phi), A.Delta) - scompose(B.Delta, phi)).equations()
    if extra is not None:
        for ident in extra(phi):
            eqs += ident.equations()
    pt, conclusive = find_solution(eqs, nv)
    if pt is None:
        if not conclusive:
            raise NotSupported("isomorphism search was inconclusive")
        return None
    return phi.evaluate(pt)


# -- serialization -------------------------------------------------------------------

def _obj_json(C: CategorySpec, X: Obj) -> list[list[str]]:
    return [[C.names[a] for a in w] for w in X]


def _obj_from_json(C: CategorySpec, doc) -> Obj:
    return tuple(tuple(C.index(a) for a in w if C.index(a)) for w in doc)


def _mor_json(C: CategorySpec, f: Mor) -> dict:
    return {
        C.names[k]: [[x.to_json() for x in row] for row in b]
        for k, b in sorted(f.blocks.items())
    }


def _mor_from_json(C: CategorySpec, dom: Obj, cod: Obj, doc: dict) -> Mor:
    return Mor(C, dom, cod, {C.index(k): [[CycNum.from_json(x) for x in row] for row in b] for k, b in doc.items()})


def algebra_to_json(C: CategorySpec, A: FrobAlgebra) -> dict:
    """Carrier words and per-root structure matrices of m, eta, Delta, eps."""
    return {
        "name": A.describe(),
        "carrier": _obj_json(C, A.obj),
        "m": _mor_json(C, A.m),
        "eta": _mor_json(C, A.eta),
        "Delta": _mor_json(C, A.Delta),
        "eps": _mor_json(C, A.eps),
    }


def algebra_from_json(C: CategorySpec, doc: dict) -> FrobAlgebra:
    X = _obj_from_json(C, doc["carrier"])
    XX = obj_tensor(X, X)
    m = _mor_from_json(C, XX, X, doc["m"])
    eta = _mor_from_json(C, UNIT, X, doc["eta"])
    D = _mor_from_json(C, X, XX, doc["Delta"])
    eps = _mor_from_json(C, X, UNIT, doc["eps"])
    name = doc.get("name", "")
    return make_frobenius(Algebra(X, m, eta, name), D, eps, name)
