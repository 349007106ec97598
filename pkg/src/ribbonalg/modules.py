"""Modules and bimodules over Frobenius algebras, tensor products over an algebra,
alpha-induction, the Z matrix and invertible bimodules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .category import CategorySpec, CheckFamily, ValidationReport, is_modular
from .diagram import (
    Mor,
    Obj,
    _offsets,
    braid_mor,
    combine,
    compose,
    dual_mor,
    dual_tensor_swap,
    duality_mors,
    hom_basis,
    identity_mor,
    inverse_mor,
    mor_to_vec,
    obj_dual,
    obj_str,
    obj_tensor,
    tensor_mor,
)
from .errors import InternalInconsistency, InvalidTwist, NotInvertible, NotSupported, TypeMismatch
from .frobenius import FrobAlgebra, _compare, is_simple, normalize, obj_dim, split_idempotent
from .polysolve import NotZeroDimensional, solve_system
from .scalar import ONE, CycNum
from .symbolic import SymMor, scompose

__all__ = [
    "LeftModule",
    "RightModule",
    "Bimodule",
    "PicardTable",
    "left_module_of",
    "right_module_of",
    "bimodule_of",
    "check_action",
    "hom_mod",
    "hom_mod_averaged",
    "is_module_iso",
    "alpha_induction",
    "sandwich",
    "dual_right_module",
    "sigma_twist",
    "twisted_bimodule",
    "is_algebra_automorphism",
    "tensor_over_A",
    "sub_bimodule",
    "simple_summands",
    "z_matrix",
    "z_matrix_pair",
    "is_azumaya",
    "alpha_fully_faithful",
    "is_permutation_matrix",
    "picard_bimodules",
    "alpha_picard_maps",
]


@dataclass(frozen=True, eq=False)
class LeftModule:
    alg: FrobAlgebra
    obj: Obj
    rho: Mor


@dataclass(frozen=True, eq=False)
class RightModule:
    alg: FrobAlgebra
    obj: Obj
    rho: Mor


@dataclass(frozen=True, eq=False)
class Bimodule:
    left: FrobAlgebra
    right: FrobAlgebra
    obj: Obj
    rho_l: Mor
    rho_r: Mor
    name: str = ""


def _id(C: CategorySpec, X: Obj) -> Mor:
    return identity_mor(C, X)


def _same_alg(A: FrobAlgebra, B: FrobAlgebra) -> bool:
    return A is B or (A.obj == B.obj and A.m == B.m and A.eta == B.eta)


def left_module_of(C: CategorySpec, A: FrobAlgebra) -> LeftModule:
    return LeftModule(A, A.obj, A.m)


def right_module_of(C: CategorySpec, A: FrobAlgebra) -> RightModule:
    return RightModule(A, A.obj, A.m)


def bimodule_of(C: CategorySpec, A: FrobAlgebra) -> Bimodule:
    return Bimodule(A, A, A.obj, A.m, A.m, "A")


def _kind(M) -> str:
    if isinstance(M, Bimodule):
        return "bi"
    if isinstance(M, LeftModule):
        return "left"
    if isinstance(M, RightModule):
        return "right"
    raise TypeMismatch(f"not a module: {type(M).__name__}")


# -- axioms --------------------------------------------------------------------

def _left_checks(C, A, X, rho, fam: CheckFamily) -> None:
    IA, IX = _id(C, A.obj), _id(C, X)
    if rho.dom != obj_tensor(A.obj, X) or rho.cod != X:
        raise TypeMismatch("left action must map A M -> M")
    _compare(fam, compose(rho, tensor_mor(A.m, IX)), compose(rho, tensor_mor(IA, rho)), "rho(m x id) = rho(id x rho)")
    _compare(fam, compose(rho, tensor_mor(A.eta, IX)), IX, "rho(eta x id) = id")


def _right_checks(C, B, X, rho, fam: CheckFamily) -> None:
    IB, IX = _id(C, B.obj), _id(C, X)
    if rho.dom != obj_tensor(X, B.obj) or rho.cod != X:
        raise TypeMismatch("right action must map M B -> M")
    _compare(fam, compose(rho, tensor_mor(IX, B.m)), compose(rho, tensor_mor(rho, IB)), "rho(id x m) = rho(rho x id)")
    _compare(fam, compose(rho, tensor_mor(IX, B.eta)), IX, "rho(id x eta) = id")


def check_action(C: CategorySpec, M, kind: str | None = None) -> ValidationReport:
    kind = kind or _kind(M)
    if kind != _kind(M):
        raise TypeMismatch(f"expected a {kind} module, got {_kind(M)}")
    checks = []
    if kind == "left":
        fam = CheckFamily("left-action")
        _left_checks(C, M.alg, M.obj, M.rho, fam)
        checks.append(fam.result)
    elif kind == "right":
        fam = CheckFamily("right-action")
        _right_checks(C, M.alg, M.obj, M.rho, fam)
        checks.append(fam.result)
    else:
        fl, fr, fc = CheckFamily("left-action"), CheckFamily("right-action"), CheckFamily("commuting-actions")
        _left_checks(C, M.left, M.obj, M.rho_l, fl)
        _right_checks(C, M.right, M.obj, M.rho_r, fr)
        IA, IB = _id(C, M.left.obj), _id(C, M.right.obj)
        _compare(
            fc,
            compose(M.rho_l, tensor_mor(IA, M.rho_r)),
            compose(M.rho_r, tensor_mor(M.rho_l, IB)),
            "rho_l(id x rho_r) = rho_r(rho_l x id)",
        )
        checks += [fl.result, fr.result, fc.result]
    return ValidationReport(checks)


# -- hom spaces ----------------------------------------------------------------

def _constraints(C: CategorySpec, M, N, kind: str):
    """Linear maps f -> defect of f as an intertwiner, one per action."""
    out = []
    if kind in ("left", "bi"):
        A = M.left if kind == "bi" else M.alg
        rM = M.rho_l if kind == "bi" else M.rho
        rN = N.rho_l if kind == "bi" else N.rho
        IA = _id(C, A.obj)
        out.append(lambda f, rM=rM, rN=rN, IA=IA: compose(f, rM) - compose(rN, tensor_mor(IA, f)))
    if kind in ("right", "bi"):
        B = M.right if kind == "bi" else M.alg
        rM = M.rho_r if kind == "bi" else M.rho
        rN = N.rho_r if kind == "bi" else N.rho
        IB = _id(C, B.obj)
        out.append(lambda f, rM=rM, rN=rN, IB=IB: compose(f, rM) - compose(rN, tensor_mor(f, IB)))
    return out


def _check_compatible(M, N, kind: str) -> None:
    if _kind(M) != kind or _kind(N) != kind:
        raise TypeMismatch(f"hom_mod({kind}) needs two {kind} modules")
    if kind == "bi":
        ok = _same_alg(M.left, N.left) and _same_alg(M.right, N.right)
    else:
        ok = _same_alg(M.alg, N.alg)
    if not ok:
        raise TypeMismatch("modules over different algebras")


def hom_mod(C: CategorySpec, M, N, kind: str | None = None) -> list[Mor]:
    """Basis of module morphisms M -> N, by solving the intertwining equations."""
    kind = kind or _kind(M)
    _check_compatible(M, N, kind)
    basis = hom_basis(C, M.obj, N.obj)
    if not basis:
        return []
    cons = _constraints(C, M, N, kind)
    cols = []
    for f in basis:
        v = []
        for c in cons:
            v.extend(mor_to_vec(c(f)))
        cols.append(v)
    rows = [[col[r] for col in cols] for r in range(len(cols[0]))]
    rows = [r for r in rows if any(r)]
    if not rows:
        return basis
    return [combine(x, basis) for x in linalg.nullspace(rows, len(basis))]


def _average(C: CategorySpec, M, N, kind: str, f: Mor) -> Mor:
    out = f
    if kind in ("left", "bi"):
        A = M.left if kind == "bi" else M.alg
        rM = M.rho_l if kind == "bi" else M.rho
        rN = N.rho_l if kind == "bi" else N.rho
        IA = _id(C, A.obj)
        loop = compose(A.Delta, A.eta)
        out = compose(rN, tensor_mor(IA, out), tensor_mor(IA, rM), tensor_mor(loop, _id(C, M.obj)))
    if kind in ("right", "bi"):
        B = M.right if kind == "bi" else M.alg
        rM = M.rho_r if kind == "bi" else M.rho
        rN = N.rho_r if kind == "bi" else N.rho
        IB = _id(C, B.obj)
        loop = compose(B.Delta, B.eta)
        out = compose(rN, tensor_mor(out, IB), tensor_mor(rM, IB), tensor_mor(_id(C, M.obj), loop))
    return out


def hom_mod_averaged(C: CategorySpec, M, N, kind: str | None = None) -> list[Mor]:
    """Basis of module morphisms as the image of the averaging projector (needs m . Delta = id)."""
    kind = kind or _kind(M)
    _check_compatible(M, N, kind)
    basis = hom_basis(C, M.obj, N.obj)
    if not basis:
        return []
    imgs = [_average(C, M, N, kind, f) for f in basis]
    vecs = [mor_to_vec(g) for g in imgs]
    red, piv = linalg.rref(vecs)
    return [_vec_mor(C, M.obj, N.obj, red[i]) for i in range(len(piv))]


def _vec_mor(C, X, Y, v) -> Mor:
    from .diagram import vec_to_mor

    return vec_to_mor(C, X, Y, v)


def is_module_iso(C: CategorySpec, M, N, kind: str | None = None) -> Mor | None:
    """An invertible module morphism M -> N, if one exists among the basis and short combinations."""
    kind = kind or _kind(M)
    if [_offsets(C, M.obj, k)[-1] for k in range(C.rank)] != [_offsets(C, N.obj, k)[-1] for k in range(C.rank)]:
        return None
    hs = hom_mod(C, M, N, kind)
    if not hs:
        return None
    cands = list(hs)
    if len(hs) > 1:
        cands.append(combine([ONE] * len(hs), hs))
        cands += [combine([CycNum(i + 2) ** j for j in range(len(hs))], hs) for i in range(len(hs) + 2)]
    for f in cands:
        try:
            inverse_mor(f)
            return f
        except NotInvertible:
            continue
    return None


# -- constructions ---------------------------------------------------------------

def alpha_induction(C: CategorySpec, A: FrobAlgebra, V: Obj, sign: int = 1) -> Bimodule:
    """Carrier A V; left action m x id, right action through the over (+) or under (-) braiding."""
    X = A.obj
    IV = _id(C, V)
    rho_l = tensor_mor(A.m, IV)
    if sign > 0:
        c = braid_mor(C, V, X, 1)
    else:
        c = braid_mor(C, V, X, -1)
    rho_r = compose(tensor_mor(A.m, IV), tensor_mor(_id(C, X), c))
    return Bimodule(A, A, obj_tensor(X, V), rho_l, rho_r, f"alpha{'+' if sign > 0 else '-'}({obj_str(C, V)})")


def _label_obj(C: CategorySpec, i) -> Obj:
    i = C.index(i)
    return ((i,) if i else (),)


def sandwich(C: CategorySpec, A: FrobAlgebra, i, j) -> Bimodule:
    """U_i A U_j with both actions through inverse braidings."""
    Ui, Uj = _label_obj(C, i), _label_obj(C, j)
    X = A.obj
    Ii, Ij, IA = _id(C, Ui), _id(C, Uj), _id(C, X)
    mid = tensor_mor(Ii, A.m, Ij)
    rho_l = compose(mid, tensor_mor(braid_mor(C, X, Ui, -1), IA, Ij))
    rho_r = compose(mid, tensor_mor(Ii, IA, braid_mor(C, Uj, X, -1)))
    return Bimodule(A, A, obj_tensor(Ui, X, Uj), rho_l, rho_r, f"{C.names[C.index(i)]} (x)+ A (x)- {C.names[C.index(j)]}")


def dual_right_module(C: CategorySpec, M: LeftModule) -> RightModule:
    """M* with action (id x d_A) . (rho* x id_A)."""
    A = M.alg
    Md = obj_dual(C, M.obj)
    dA = duality_mors(C, A.obj)[1]
    rhod = compose(dual_tensor_swap(C, A.obj, M.obj), dual_mor(M.rho))
    rho = compose(tensor_mor(_id(C, Md), dA), tensor_mor(rhod, _id(C, A.obj)))
    return RightModule(A, Md, rho)


def sigma_twist(C: CategorySpec, M: LeftModule, sigma: Mor) -> LeftModule:
    """M* with action (d~_A x id) . (sigma x (rho . c_{M,A})*)."""
    A = M.alg
    Md = obj_dual(C, M.obj)
    dtA = duality_mors(C, A.obj)[3]
    act = compose(M.rho, braid_mor(C, M.obj, A.obj, 1))
    actd = compose(dual_tensor_swap(C, M.obj, A.obj), dual_mor(act))
    rho = compose(tensor_mor(dtA, _id(C, Md)), tensor_mor(sigma, actd))
    return LeftModule(A, Md, rho)


def is_algebra_automorphism(C: CategorySpec, A: FrobAlgebra, phi: Mor) -> bool:
    if phi.dom != A.obj or phi.cod != A.obj:
        return False
    if compose(phi, A.m) != compose(A.m, tensor_mor(phi, phi)) or compose(phi, A.eta) != A.eta:
        return False
    try:
        inverse_mor(phi)
    except NotInvertible:
        return False
    return True


def twisted_bimodule(C: CategorySpec, A: FrobAlgebra, phi: Mor, psi: Mor) -> Bimodule:
    """A with actions m . (phi x id) and m . (id x psi)."""
    for f, nm in ((phi, "phi"), (psi, "psi")):
        if not is_algebra_automorphism(C, A, f):
            raise InvalidTwist(f"{nm} is not an algebra automorphism")
    I = _id(C, A.obj)
    return Bimodule(A, A, A.obj, compose(A.m, tensor_mor(phi, I)), compose(A.m, tensor_mor(I, psi)), "twisted")


def tensor_over_A(C: CategorySpec, M: Bimodule, N: Bimodule) -> Bimodule:
    """M (x)_B N as the image of the averaging idempotent on M N."""
    B = M.right
    if not _same_alg(B, N.left):
        raise TypeMismatch("middle algebras differ")
    if not B.normalized:
        B = normalize(C, B)
    IM, IN = _id(C, M.obj), _id(C, N.obj)
    loop = compose(B.Delta, B.eta)
    P = compose(tensor_mor(M.rho_r, N.rho_l), tensor_mor(IM, loop, IN))
    if compose(P, P) != P:
        raise InternalInconsistency("averaging map on M N is not idempotent")
    R = split_idempotent(P)
    IA, IC = _id(C, M.left.obj), _id(C, N.right.obj)
    rho_l = compose(R.res, tensor_mor(M.rho_l, IN), tensor_mor(IA, R.emb))
    rho_r = compose(R.res, tensor_mor(IM, N.rho_r), tensor_mor(R.emb, IC))
    return Bimodule(M.left, N.right, R.obj, rho_l, rho_r, f"({M.name}) (x) ({N.name})")


def sub_bimodule(C: CategorySpec, M: Bimodule, e: Mor) -> Bimodule:
    """Image of an idempotent bimodule endomorphism."""
    R = split_idempotent(e)
    IA, IB = _id(C, M.left.obj), _id(C, M.right.obj)
    rho_l = compose(R.res, M.rho_l, tensor_mor(IA, R.emb))
    rho_r = compose(R.res, M.rho_r, tensor_mor(R.emb, IB))
    return Bimodule(M.left, M.right, R.obj, rho_l, rho_r, M.name)


def simple_summands(C: CategorySpec, M: Bimodule) -> list[Bimodule] | None:
    """Simple summands of M, when its endomorphism algebra is commutative; else None."""
    ends = hom_mod(C, M, M, "bi")
    n = len(ends)
    if n == 0:
        return []
    if n == 1:
        return [M]
    for f in ends:
        for g in ends:
            if compose(f, g) != compose(g, f):
                return None
    # idempotents of a commutative split semisimple algebra: x with x.x = x
    nv = n
    sym = SymMor.unknown(nv, 0, ends)
    eqs = (scompose(sym, sym) - sym).equations()
    try:
        sols, complete = solve_system(eqs, nv)
    except NotZeroDimensional:
        return None
    if not complete:
        return None
    idems = [combine(s, ends) for s in sols]
    idems = [e for e in idems if not e.is_zero()]
    prim = []
    for e in idems:
        if not any(f != e and compose(f, e) == f for f in idems):
            prim.append(e)
    if len(prim) != n:
        return None
    return [sub_bimodule(C, M, e) for e in prim]


# -- Z matrix ----------------------------------------------------------------------

def z_matrix_pair(C: CategorySpec, A: FrobAlgebra) -> tuple[list[list[int]], list[list[int]]]:
    """Z from sandwich bimodules and from alpha-induction, computed independently."""
    if not A.normalized:
        A = normalize(C, A)
    Abi = bimodule_of(C, A)
    r = range(C.rank)
    z1 = [[len(hom_mod(C, sandwich(C, A, i, j), Abi, "bi")) for j in r] for i in r]
    z2 = []
    for i in r:
        row = []
        ap = alpha_induction(C, A, _label_obj(C, i), 1)
        for j in r:
            am = alpha_induction(C, A, _label_obj(C, C.dual(j)), -1)
            row.append(len(hom_mod(C, ap, am, "bi")))
        z2.append(row)
    return z1, z2


def z_matrix(C: CategorySpec, A: FrobAlgebra) -> list[list[int]]:
    z1, z2 = z_matrix_pair(C, A)
    if z1 != z2:
        raise InternalInconsistency(f"the two expressions for Z disagree: {z1} vs {z2}")
    return z1


def _is_permutation(z: list[list[int]]) -> bool:
    n = len(z)
    return all(sorted(row) == [0] * (n - 1) + [1] for row in z) and all(
        sorted(z[i][j] for i in range(n)) == [0] * (n - 1) + [1] for j in range(n)
    )


def alpha_fully_faithful(C: CategorySpec, A: FrobAlgebra, sign: int) -> bool:
    """dim Hom_{A|A}(alpha(U_i), alpha(U_j)) = delta_ij on simple labels."""
    if not A.normalized:
        A = normalize(C, A)
    ind = [alpha_induction(C, A, _label_obj(C, i), sign) for i in range(C.rank)]
    return all(
        len(hom_mod(C, ind[i], ind[j], "bi")) == (i == j) for i in range(C.rank) for j in range(C.rank)
    )


def is_azumaya(C: CategorySpec, A: FrobAlgebra) -> bool:
    """Whether alpha+ and alpha- are both equivalences C -> C_{A|A}.

    Decided from the functors themselves, not from Z: for simple A in a modular
    category the bimodule category has the global dimension of C, so a functor
    that is fully faithful on simples is also essentially surjective.
    """
    if not is_modular(C):
        raise NotSupported("the Azumaya test needs a modular category")
    if not is_simple(C, A):
        return False
    return alpha_fully_faithful(C, A, 1) and alpha_fully_faithful(C, A, -1)


def is_permutation_matrix(z: list[list[int]]) -> bool:
    return _is_permutation(z)


# -- invertible bimodules -------------------------------------------------------------

@dataclass
class PicardTable:
    elements: list[Bimodule]
    table: list[list[int]]
    complete: bool
    simple_count: int
    expected_simple_count: int | None
    note: str = ""

    def order(self) -> int:
        return len(self.elements)


def _bimodule_dim(C: CategorySpec, M: Bimodule) -> CycNum:
    return obj_dim(C, M.obj)


def _find_class(C: CategorySpec, classes: Sequence[Bimodule], M: Bimodule) -> int | None:
    for i, N in enumerate(classes):
        if N.obj and M.obj and hom_mod(C, M, N, "bi"):
            return i
    return None


def picard_bimodules(C: CategorySpec, A: FrobAlgebra, budget: int | None = None) -> PicardTable:
    """Invertible A-bimodules up to isomorphism, with the multiplication table.

    Simple bimodules are collected as summands of the sandwich bimodules
    U_i A U_j; the scan is complete when the number of distinct simple
    bimodules equals sum_ij Z_ij^2. Invertible ones are the simple bimodules
    of dimension dim A.
    """
    if not A.normalized:
        A = normalize(C, A)
    Z = z_matrix(C, A)
    expected = sum(z * z for row in Z for z in row)
    simples: list[Bimodule] = []
    complete = True
    note = ""
    pairs = [(i, j) for i in range(C.rank) for j in range(C.rank)]
    for n, (i, j) in enumerate(pairs):
        if budget is not None and n >= budget:
            complete, note = False, "budget exhausted"
            break
        parts = simple_summands(C, sandwich(C, A, i, j))
        if parts is None:
            complete, note = False, f"could not split sandwich({C.names[i]}, {C.names[j]})"
            continue
        for P in parts:
            if _find_class(C, simples, P) is None:
                simples.append(P)
        if len(simples) == expected:
            break
    if len(simples) != expected:
        complete = False
        note = note or f"found {len(simples)} of {expected} simple bimodules"
    dA = obj_dim(C, A.obj)
    inv = [S for S in simples if _bimodule_dim(C, S) in (dA, -dA)]
    unit = _find_class(C, inv, bimodule_of(C, A))
    if unit is None:
        raise InternalInconsistency("A is not among the invertible bimodules found")
    inv.insert(0, inv.pop(unit))
    table = []
    for X in inv:
        row = []
        for Y in inv:
            k = _find_class(C, inv, tensor_over_A(C, X, Y))
            if k is None:
                raise InternalInconsistency("product of invertible bimodules left the table")
            row.append(k)
        table.append(row)
    return PicardTable(inv, table, complete, len(simples), expected, note)


def alpha_picard_maps(C: CategorySpec, A: FrobAlgebra, P: PicardTable) -> dict[int, list[int | None]]:
    """Class in P of alpha+(U) and alpha-(U) for each invertible label U, keyed by sign."""
    if not A.normalized:
        A = normalize(C, A)
    labels = [i for i in range(C.rank) if C.is_invertible(i)]
    return {
        s: [_find_class(C, P.elements, alpha_induction(C, A, _label_obj(C, i), s)) for i in labels]
        for s in (1, -1)
    }
