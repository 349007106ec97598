import itertools

import pytest

from conftest import MODULAR, algebra, algebras, cat, fixture_algebra_params
from ribbonalg.autrev import _simple_left_modules, aut_group, find_reversions
from ribbonalg.diagram import UNIT, compose, identity_mor, inverse_mor, tensor_mor
from ribbonalg.errors import InvalidTwist
from ribbonalg.frobenius import centers, direct_sum, normalize, trivial_algebra
from ribbonalg.modules import (
    LeftModule,
    alpha_induction,
    alpha_picard_maps,
    bimodule_of,
    check_action,
    dual_right_module,
    hom_mod,
    hom_mod_averaged,
    is_azumaya,
    is_module_iso,
    left_module_of,
    picard_bimodules,
    sandwich,
    sigma_twist,
    tensor_over_A,
    twisted_bimodule,
    z_matrix,
    z_matrix_pair,
)


def label(C, i):
    return ((i,) if i else (),)


def test_regular_actions_pass():
    C = cat("ising")
    A = algebra("ising", "1+psi")
    assert check_action(C, left_module_of(C, A)).passed
    assert check_action(C, bimodule_of(C, A)).passed


def test_mutated_action_fails_with_witness():
    C = cat("ising")
    A = algebra("ising", "1+psi")
    bad = LeftModule(A, A.obj, A.m.scale(-1))
    rep = check_action(C, bad)
    assert not rep.passed and rep.first_failure().witness is not None


def test_simple_algebra_hom_dims():
    C = cat("ising")
    for A in algebras("ising"):
        Ab = bimodule_of(C, A)
        assert len(hom_mod(C, Ab, Ab, "bi")) == 1
    T = trivial_algebra(C)
    L = left_module_of(C, T)
    assert len(hom_mod(C, L, L, "left")) == 1


@pytest.mark.parametrize("name, i", fixture_algebra_params())
def test_alpha_induction_homs_match_fusion(name, i):
    C = cat(name)
    A = algebras(name)[i]
    Z = z_matrix(C, A)
    r = range(C.rank)
    for a, b in itertools.product(r, repeat=2):
        M = alpha_induction(C, A, label(C, a), 1)
        N = alpha_induction(C, A, label(C, b), 1)
        want = sum(C.N(b, k, a) * Z[k][0] for k in r)
        assert len(hom_mod(C, M, N, "bi")) == want


@pytest.mark.parametrize("name, i", fixture_algebra_params())
def test_hom_routes_agree(name, i):
    C = cat(name)
    A = algebras(name)[i]
    mods = [bimodule_of(C, A)]
    mods += [alpha_induction(C, A, label(C, a), s) for a in range(C.rank) for s in (1, -1)]
    for M, N in itertools.product(mods[:5], repeat=2):
        h1, h2 = hom_mod(C, M, N, "bi"), hom_mod_averaged(C, M, N, "bi")
        assert len(h1) == len(h2)
        for f in h2:
            assert check_intertwiner(C, M, N, f)


def check_intertwiner(C, M, N, f):
    IA = identity_mor(C, M.left.obj)
    ok_l = compose(f, M.rho_l) == compose(N.rho_l, tensor_mor(IA, f))
    ok_r = compose(f, M.rho_r) == compose(N.rho_r, tensor_mor(f, IA))
    return ok_l and ok_r


def test_alpha_examples():
    C = cat("ising")
    A = algebra("ising", "1+psi")
    assert is_module_iso(C, alpha_induction(C, A, UNIT, 1), bimodule_of(C, A), "bi") is not None
    T = trivial_algebra(C)
    for s in (1, -1):
        M = alpha_induction(C, T, label(C, 2), s)
        assert M.rho_l == identity_mor(C, M.obj) and M.rho_r == identity_mor(C, M.obj)


def test_alpha_plus_minus_differ_by_monodromy():
    # over 1+g2 in Z4 the label g has monodromy -1 with g2, and g2 has monodromy 1 with itself
    C = cat("z4")
    A = algebra("z4", "1+g2")
    g, g2 = label(C, 1), label(C, 2)
    assert is_module_iso(C, alpha_induction(C, A, g2, 1), alpha_induction(C, A, g2, -1), "bi") is not None
    assert not hom_mod(C, alpha_induction(C, A, g, 1), alpha_induction(C, A, g, -1), "bi")


def test_sandwich_examples():
    C = cat("ising")
    A = algebra("ising", "1+psi")
    assert is_module_iso(C, sandwich(C, A, 0, 0), bimodule_of(C, A), "bi") is not None
    for name in MODULAR:
        K = cat(name)
        T = trivial_algebra(K)
        Tb = bimodule_of(K, T)
        for i, j in itertools.product(range(K.rank), repeat=2):
            want = 1 if j == K.dual_of[i] else 0
            assert len(hom_mod(K, sandwich(K, T, i, j), Tb, "bi")) == want


@pytest.mark.parametrize("name, i", fixture_algebra_params())
def test_z_two_expressions(name, i):
    C = cat(name)
    z1, z2 = z_matrix_pair(C, algebras(name)[i])
    assert z1 == z2


@pytest.mark.parametrize("name, i", fixture_algebra_params())
def test_z_unit_column(name, i):
    C = cat(name)
    Z = z_matrix(C, algebras(name)[i])
    assert [Z[k][0] for k in range(C.rank)] == [1] + [0] * (C.rank - 1)


def test_dual_right_module_examples():
    C = cat("ising")
    T = trivial_algebra(C)
    D = dual_right_module(C, left_module_of(C, T))
    assert D.obj == UNIT and D.rho == identity_mor(C, UNIT)
    A = algebra("ising", "1+psi")
    for M in _simple_left_modules(C, A, None)[0]:
        assert check_action(C, M).passed
        assert check_action(C, dual_right_module(C, M)).passed


def test_sigma_twist_examples():
    C = cat("ising")
    T = trivial_algebra(C)
    L = left_module_of(C, T)
    S = sigma_twist(C, L, identity_mor(C, UNIT))
    assert S.obj == UNIT and S.rho == identity_mor(C, UNIT)
    A = algebra("ising", "1+psi")
    revs, _ = find_reversions(C, A)
    for r in revs:
        for M in _simple_left_modules(C, A, None)[0]:
            Ms = sigma_twist(C, M, r.sigma)
            assert check_action(C, Ms).passed
            Mss = sigma_twist(C, Ms, r.sigma)
            assert len(hom_mod(C, M, Mss, "left")) == len(hom_mod(C, M, M, "left"))


def test_twisted_bimodules():
    C = cat("ising")
    A = algebra("ising", "1+psi")
    I = identity_mor(C, A.obj)
    Ab = bimodule_of(C, A)
    assert is_module_iso(C, twisted_bimodule(C, A, I, I), Ab, "bi") is not None
    G = aut_group(C, A)
    auts = [a.phi for a in G.elements]
    for g, p, q in itertools.product(auts, repeat=3):
        lhs = twisted_bimodule(C, A, p, q)
        rhs = twisted_bimodule(C, A, compose(g, p), compose(g, q))
        assert is_module_iso(C, lhs, rhs, "bi") is not None
    for p, q, p2, q2 in itertools.product(auts, repeat=4):
        prod = tensor_over_A(C, twisted_bimodule(C, A, p, q), twisted_bimodule(C, A, p2, q2))
        want = twisted_bimodule(C, A, compose(inverse_mor(q), p), compose(inverse_mor(p2), q2))
        assert is_module_iso(C, prod, want, "bi") is not None
    with pytest.raises(InvalidTwist):
        twisted_bimodule(C, A, I.scale(2), I)


def test_tensor_over_A_unit_and_associativity():
    C = cat("ising")
    A = algebra("ising", "1+psi")
    Ab = bimodule_of(C, A)
    assert is_module_iso(C, tensor_over_A(C, Ab, Ab), Ab, "bi") is not None
    P = picard_bimodules(C, A)
    for X, Y, W in itertools.product(P.elements, repeat=3):
        L = tensor_over_A(C, tensor_over_A(C, X, Y), W)
        R = tensor_over_A(C, X, tensor_over_A(C, Y, W))
        assert is_module_iso(C, L, R, "bi") is not None


def test_azumaya_examples():
    C = cat("ising")
    T = trivial_algebra(C)
    assert is_azumaya(C, T)
    A = algebra("ising", "1+psi")
    Z = z_matrix(C, A)
    perm = all(sorted(row) == [0] * (C.rank - 1) + [1] for row in Z) and all(
        sorted(col) == [0] * (C.rank - 1) + [1] for col in zip(*Z)
    )
    assert is_azumaya(C, A) == perm
    D = normalize(C, direct_sum(C, T, T))
    assert centers(C, D).left.obj != UNIT
    assert not is_azumaya(C, D)


def test_picard_examples():
    T = cat("triv")
    assert picard_bimodules(T, trivial_algebra(T)).order() == 1
    S = cat("z2-semion")
    P = picard_bimodules(S, trivial_algebra(S))
    assert P.complete and P.order() == 2 and P.table == [[0, 1], [1, 0]]


@pytest.mark.parametrize("name", ("z2-semion", "z4", "ising"))
def test_picard_group_axioms(name):
    C = cat(name)
    for A in algebras(name):
        P = picard_bimodules(C, A)
        assert P.complete and P.simple_count == P.expected_simple_count
        n = P.order()
        t = P.table
        assert all(t[0][x] == x == t[x][0] for x in range(n))
        assert all(any(t[x][y] == 0 for y in range(n)) for x in range(n))
        for x, y, z in itertools.product(range(n), repeat=3):
            assert t[t[x][y]][z] == t[x][t[y][z]]
        maps = alpha_picard_maps(C, A, P)
        for s in (1, -1):
            assert None not in maps[s] and maps[s][0] == 0


def test_twisted_bimodules_land_in_picard():
    C = cat("ising")
    A = algebra("ising", "1+psi")
    P = picard_bimodules(C, A)
    I = identity_mor(C, A.obj)
    for a in aut_group(C, A).elements:
        Y = twisted_bimodule(C, A, I, a.phi)
        assert any(hom_mod(C, Y, X, "bi") for X in P.elements)

