"""Inner automorphisms, their bicomodule oracle, enumeration, the exact
sequence, and the specialised kernel criteria."""

import itertools

import numpy as np
import pytest

from corings import (GF, QQ, AlgebraMorphism, CoringMorphism, Matrix, check_coring_morphism,
                     check_dk_morphism, check_entwining_morphism, check_graded_triple,
                     dk_from_graded, dk_ker_membership, entwining_coring_automorphism,
                     entwining_from_graded, entwining_ker_membership,
                     enumerate_automorphisms, graded_coring, graded_dual_element,
                     graded_dual_invertible, graded_ker_omega,
                     graded_triple_coring_automorphism, graded_triple_ker_membership,
                     graded_values_algebra, grouplike_coalgebra, group_algebra,
                     inner_via_bicomodule, is_inner, matrix_algebra, matrix_coring,
                     scalar_algebra, trivial_coring, verify_exact_sequence)
from corings.convolution import convolution_inverse
from corings.fields import basis_vector
from corings.picard import INNER, NOT_INNER
from corings.report import InvalidStructureError

from conftest import dual_numbers, kz2_graded

F2, F3, F5 = GF(2), GF(3), GF(5)


def grouplike_permutation(C, perm):
    f = C.field
    n = C.dim
    mat = f.zeros((n, n))
    for src, dst in enumerate(perm):
        mat[dst, src] = f.scalar(1)
    return CoringMorphism(C, C, Matrix(f, mat), AlgebraMorphism.identity(C.base))


def test_identity_inner_with_counit_witness():
    C = grouplike_coalgebra(2, F2)
    res = is_inner(CoringMorphism.identity(C))
    assert res.status == INNER
    # epsilon itself satisfies the equation; the found witness need not be
    # epsilon but must be convolution invertible
    assert res.witness is not None
    assert convolution_inverse(res.witness) is not None


def test_grouplike_swap_not_inner_f2_f3():
    for field in (F2, F3):
        C = grouplike_coalgebra(2, field)
        res = is_inner(grouplike_permutation(C, [1, 0]))
        assert res.status == NOT_INNER
        assert res.certainty == "deterministic"


@pytest.mark.parametrize("field", [QQ, F5])
def test_grouplike_rigidity(field):
    """Inn(kG) is trivial for G in {Z_2, Z_3}: only the identity
    permutation is inner."""
    for n in (2, 3):
        C = grouplike_coalgebra(n, field)
        for perm in itertools.permutations(range(n)):
            m = grouplike_permutation(C, list(perm))
            assert check_coring_morphism(m).ok
            res = is_inner(m)
            want = INNER if list(perm) == list(range(n)) else NOT_INNER
            assert res.status == want, (n, perm)


def test_matrix_conjugation_is_inner():
    """Conjugation-induced automorphisms of the matrix coring are inner."""
    C = matrix_coring(scalar_algebra(F2), 2)
    auts = enumerate_automorphisms(C)
    assert len(auts) == 6
    for m in auts.elements:
        res = is_inner(m)
        assert res.status == INNER
        via = inner_via_bicomodule(m)
        assert via.status == "isomorphic"


def test_matrix_automorphisms_are_conjugations():
    """Independent oracle: the coring automorphisms with rho = id are
    exactly the maps dual to conjugation, |PGL_2(F_2)| = 6 of them."""
    C = matrix_coring(scalar_algebra(F2), 2)
    auts = enumerate_automorphisms(C)
    # brute-force all invertible U and collect the induced coalgebra maps
    # phi_U(x_ij) = sum_kl U_ki (U^-1)_jl ... build as the transpose-dual of
    # conjugation and verify each against the axiom checker instead of
    # trusting the formula's orientation
    seen = set()
    found = []
    for entries in itertools.product(range(2), repeat=4):
        U = Matrix(F2, np.array(entries, dtype=np.int64).reshape(2, 2))
        if not U.is_invertible():
            continue
        Uinv = U.inverse()
        phi = F2.zeros((4, 4))
        for i in range(2):
            for j in range(2):
                # x_ij -> sum_kl (U)_ik (U^-1)_lj x_kl: dual of e -> U e U^-1
                for k in range(2):
                    for l in range(2):
                        phi[2 * k + l, 2 * i + j] = (int(U.a[i, k]) * int(Uinv.a[l, j])) % 2
        key = tuple(phi.reshape(-1).tolist())
        if key in seen:
            continue
        seen.add(key)
        m = CoringMorphism(C, C, Matrix(F2, phi), AlgebraMorphism.identity(C.base))
        assert check_coring_morphism(m).ok and m.is_isomorphism()
        found.append(m)
    assert len(found) == 6
    for m in found:
        assert auts.find(m.phi, m.rho.matrix) is not None


def test_coalgebra_inner_formula():
    """For an inner coalgebra automorphism with witness p, the map is
    conjugation in the convolution sense: phi(c) = sum p(c_1) c_2 p^-1(c_3).

    Over the base field the tensor quotients are the plain tensor powers,
    so the triple expansion can be contracted directly."""
    C = matrix_coring(scalar_algebra(F2), 2)
    d = C.dim
    damb = C.delta_ambient
    T = damb.kron(Matrix.eye(F2, d)) @ damb   # c -> c1 (x) c2 (x) c3
    T4 = T.a.reshape(d, d, d, d)              # [c1, c2, c3, input]
    for m in enumerate_automorphisms(C).elements:
        res = is_inner(m)
        assert res.status == INNER
        p = res.witness.values.a[0]
        q = res.witness_inverse.values.a[0]
        conj = np.einsum("i,ijkn,k->jn", p, T4, q) % 2
        assert np.all(conj == m.phi.a)


def test_enumeration_counts():
    assert len(enumerate_automorphisms(grouplike_coalgebra(2, F2))) == 2
    assert len(enumerate_automorphisms(grouplike_coalgebra(3, F2))) == 6


def test_enumeration_budget_marks_incomplete():
    C = grouplike_coalgebra(3, F2)
    auts = enumerate_automorphisms(C, budget=3)
    assert not auts.complete
    assert len(auts.elements) <= 3


def test_enumeration_requires_finite_field():
    with pytest.raises(InvalidStructureError):
        enumerate_automorphisms(grouplike_coalgebra(2, QQ))


def test_exact_sequence_kz2():
    C = grouplike_coalgebra(2, F2)
    rep = verify_exact_sequence(C, enumerate_automorphisms(C))
    assert (rep.aut_count, rep.inn_count, rep.out_count) == (2, 1, 2)
    assert rep.oracle_agreements == 2
    assert rep.inn_closed and rep.inn_normal
    assert len(rep.coset_representatives) == 2


def test_exact_sequence_trivial_coring():
    A = dual_numbers(F2)
    C = trivial_coring(A)
    auts = enumerate_automorphisms(C, fix_rho_identity=False)
    rep = verify_exact_sequence(C, auts)
    assert rep.aut_count == 1 and rep.inn_count == 1


def test_trivial_coring_inner_iff_conjugation_by_unit():
    """For C = A the map a -> b a b^{-1} with rho = phi is inner; an
    automorphism moving a unit-fixed structure differently is not.

    Over F_3[Z_2], conjugation is trivial (commutative), so every
    automorphism with rho != id must be not inner unless rho is trivial."""
    A, _ = group_algebra([[0, 1], [1, 0]], F3)
    C = trivial_coring(A)
    auts = enumerate_automorphisms(C, fix_rho_identity=False)
    assert auts.complete
    # A commutative: inner automorphisms of A are trivial, so exactly the
    # identity of the coring is inner
    inner_count = 0
    for m in auts.elements:
        res = is_inner(m)
        via = inner_via_bicomodule(m)
        assert (res.status == INNER) == (via.status == "isomorphic")
        inner_count += res.status == INNER
    assert inner_count == 1
    assert len(auts) == 2  # id and g -> -g


def test_matrix_coring_noncommutative_base_conjugation():
    """Conjugation by a unit b of A gives an inner automorphism of the
    trivial coring (phi = rho = conjugation)."""
    A = matrix_algebra(F2, 2)
    C = trivial_coring(A)
    # b = e12 + e21 is a unit
    b = F2.normalize(basis_vector(F2, 4, 1) + basis_vector(F2, 4, 2))
    binv = A.element_inverse(b)
    conj = A.left_mult(b) @ A.right_mult(binv)
    m = CoringMorphism(C, C, Matrix(F2, conj.a), AlgebraMorphism(A, A, Matrix(F2, conj.a)))
    assert check_coring_morphism(m).ok
    res = is_inner(m)
    assert res.status == INNER
    assert inner_via_bicomodule(m).status == "isomorphic"


def test_exact_sequence_graded_coring():
    Gd = kz2_graded(F3)
    C = graded_coring(Gd)
    auts = enumerate_automorphisms(C, fix_rho_identity=False)
    rep = verify_exact_sequence(C, auts)
    assert rep.complete and rep.undecided == 0
    assert rep.oracle_agreements == rep.aut_count


# -- graded fast paths ---------------------------------------------------------

def test_graded_values_algebra_is_dual():
    """The values algebra is the right dual in disguise: structure constants
    agree under the bijection values <-> dual elements."""
    from corings import check_algebra, right_dual_algebra
    Gd = kz2_graded(F3)
    C = graded_coring(Gd)
    val = graded_values_algebra(Gd)
    assert check_algebra(val).ok
    dual = right_dual_algebra(C)
    assert val.dim == dual.dim
    # random sampling of products through both routes
    rng = np.random.default_rng(4)
    for _ in range(20):
        v1 = Matrix(F3, rng.integers(0, 3, size=(2, 2)))
        v2 = Matrix(F3, rng.integers(0, 3, size=(2, 2)))
        p1 = graded_dual_element(Gd, C, v1)
        p2 = graded_dual_element(Gd, C, v2)
        prod_dual = dual.convolve(p1.values, p2.values)
        x1 = F3.normalize(v1.a.T).reshape(-1)
        x2 = F3.normalize(v2.a.T).reshape(-1)
        prod_vals = Matrix(F3, val.multiply(x1, x2).reshape(2, 2).T)
        assert graded_dual_element(Gd, C, prod_vals).values == prod_dual


def test_graded_dual_invertible_trivial_grading():
    """G trivial, X a point: p is one element of A, invertible iff a unit."""
    G1 = [[0]]
    A = dual_numbers(F3)
    Gd = __import__("corings").GradedData(G1, [[0]], A, [0, 0])
    for entries in itertools.product(range(3), repeat=2):
        vals = Matrix(F3, np.array(entries, dtype=np.int64).reshape(2, 1))
        q = graded_dual_invertible(vals, Gd)
        want = A.element_inverse(np.array(entries, dtype=np.int64)) is not None
        assert (q is not None) == want


def test_graded_dual_element_roundtrip():
    from corings import graded_dual_values
    Gd = kz2_graded(F3)
    C = graded_coring(Gd)
    rng = np.random.default_rng(8)
    for _ in range(10):
        vals = Matrix(F3, rng.integers(0, 3, size=(2, 2)))
        p = graded_dual_element(Gd, C, vals)
        assert p.validate().ok
        assert graded_dual_values(Gd, p) == vals


def test_graded_dual_invertible_eps_selfinverse():
    Gd = kz2_graded(F3)
    A = Gd.algebra
    ones = Matrix(F3, np.stack([A.unit, A.unit], axis=1))
    q = graded_dual_invertible(ones, Gd)
    assert q is not None and q == ones


def test_graded_classification_fast_vs_generic():
    """All 81 dual elements classified identically (spec exhaustive case)."""
    Gd = kz2_graded(F3)
    C = graded_coring(Gd)
    fast, gen = set(), set()
    for entries in itertools.product(range(3), repeat=4):
        vals = Matrix(F3, np.array(entries, dtype=np.int64).reshape(2, 2))
        if graded_dual_invertible(vals, Gd) is not None:
            fast.add(entries)
        p = graded_dual_element(Gd, C, vals)
        if convolution_inverse(p) is not None:
            gen.add(entries)
    assert fast == gen
    assert len(fast) == 48


def test_paper_display_regression():
    """q(p(a (x) x)(1_A (x) x)) = eps(a (x) x) pins the convolution
    convention to the graded inverse criterion."""
    Gd = kz2_graded(F3)
    C = graded_coring(Gd)
    A = Gd.algebra
    nX = 2
    vals = Matrix(F3, [[1, 2], [0, 1]])
    qvals = graded_dual_invertible(vals, Gd)
    assert qvals is not None
    p = graded_dual_element(Gd, C, vals)
    q = graded_dual_element(Gd, C, qvals)
    for t in range(A.dim):
        for x in range(nX):
            c = basis_vector(F3, C.dim, t * nX + x)   # a_t (x) x
            pa = p(c)                                  # p(a (x) x) in A
            one_x = F3.zeros((C.dim,))
            for s in range(A.dim):
                if A.unit[s] != F3.scalar(0):
                    one_x[s * nX + x] = A.unit[s]
            lhs = q(C.bimodule.left_act(pa) @ one_x)
            rhs = C.epsilon @ c
            assert np.all(lhs == rhs)


def test_graded_ker_identity_member():
    Gd = kz2_graded(F3)
    C = graded_coring(Gd)
    res = graded_ker_omega(CoringMorphism.identity(C), Gd)
    assert res.status == INNER
    assert res.witness is not None


def test_graded_ker_x_swap_agreement():
    """The identity-on-A, X-swap automorphism: classified by the fast path
    and matched against the generic inner test (truth value computed)."""
    Gd = kz2_graded(F3)
    C = graded_coring(Gd)
    m = graded_triple_coring_automorphism(Gd, [0, 1], [1, 0], Matrix.eye(F3, 2), coring=C)
    assert check_coring_morphism(m).ok
    res = graded_ker_omega(m, Gd)
    gen = is_inner(m)
    assert res.status == gen.status


def test_graded_ker_rho_scaling_agreement():
    """rho = the degree-sign automorphism prunes the p-space; fast path and
    generic route still agree."""
    Gd = kz2_graded(F3)
    C = graded_coring(Gd)
    alpha = Matrix(F3, [[1, 0], [0, 2]])  # g -> -g
    m = graded_triple_coring_automorphism(Gd, [0, 1], [0, 1], alpha, coring=C)
    assert check_coring_morphism(m).ok
    res = graded_ker_omega(m, Gd)
    gen = is_inner(m)
    assert res.status == gen.status


def test_graded_ker_agreement_full_aut_group():
    Gd = kz2_graded(F3)
    C = graded_coring(Gd)
    auts = enumerate_automorphisms(C, fix_rho_identity=False)
    for m in auts.elements:
        assert graded_ker_omega(m, Gd).status == is_inner(m).status


# -- entwining and triple kernels ------------------------------------------------

def test_entwining_ker_identity():
    Gd = kz2_graded(F3)
    E = entwining_from_graded(Gd)
    I_A = Matrix.eye(F3, 2)
    I_C = Matrix.eye(F3, 2)
    assert check_entwining_morphism(E, I_A, I_C).ok
    res = entwining_ker_membership(E, I_A, I_C)
    assert res.status == INNER


def test_entwining_ker_graded_instance_agrees_with_graded_path():
    Gd = kz2_graded(F3)
    E = entwining_from_graded(Gd)
    C = graded_coring(Gd)
    gamma = Matrix(F3, [[0, 1], [1, 0]])   # X swap
    alpha = Matrix.eye(F3, 2)
    assert check_entwining_morphism(E, alpha, gamma).ok
    res = entwining_ker_membership(E, alpha, gamma)
    m = graded_triple_coring_automorphism(Gd, [0, 1], [1, 0], alpha, coring=C)
    res2 = graded_ker_omega(m, Gd)
    res3 = is_inner(entwining_coring_automorphism(E, alpha, gamma))
    assert res.status == res2.status == res3.status


def test_entwining_ker_coalgebra_swap_over_base_field():
    """A = k: the entwined coring is the coalgebra itself; gamma = swap
    agrees with the generic inner test on kZ_2."""
    k = scalar_algebra(F2)
    C = grouplike_coalgebra(2, F2)
    from corings import flip_entwining
    E = flip_entwining(k, C)
    gamma = Matrix(F2, [[0, 1], [1, 0]])
    res = entwining_ker_membership(E, Matrix.eye(F2, 1), gamma)
    gen = is_inner(entwining_coring_automorphism(E, Matrix.eye(F2, 1), gamma))
    assert res.status == gen.status == NOT_INNER


def test_dk_ker_identity_and_equivalence():
    Gd = kz2_graded(F3)
    D = dk_from_graded(Gd)
    I2 = Matrix.eye(F3, 2)
    assert check_dk_morphism(D, I2, I2, I2).ok
    res = dk_ker_membership(D, I2, I2, I2)
    assert res.status == INNER


def test_graded_triple_sign_automorphism():
    """f = id, phi = id, alpha = grading sign over F_3: classified and
    matched against the generic route."""
    Gd = kz2_graded(F3)
    alpha = Matrix(F3, [[1, 0], [0, 2]])
    rep = check_graded_triple(Gd, [0, 1], [0, 1], alpha)
    assert rep.ok
    res = graded_triple_ker_membership(Gd, [0, 1], [0, 1], alpha)
    m = graded_triple_coring_automorphism(Gd, [0, 1], [0, 1], alpha)
    gen = is_inner(m)
    assert res.status == gen.status


def test_graded_triple_swap_with_trivial_action_not_member():
    """X = {x0, x1} with the trivial G-action and phi the swap: the
    vanishing condition phi(x)h != x zeroes every component of p, so no
    invertible p exists."""
    from corings import GradedData, cyclic_group, trivial_gset
    G = cyclic_group(2)
    A, degrees = group_algebra(G, F3)
    Gd = GradedData(G, trivial_gset(2, 2), A, degrees)
    assert Gd.validate().ok
    rep = check_graded_triple(Gd, [0, 1], [1, 0], Matrix.eye(F3, 2))
    assert rep.ok
    res = graded_triple_ker_membership(Gd, [0, 1], [1, 0], Matrix.eye(F3, 2))
    assert res.status == NOT_INNER
    assert res.solution_space_dim == 0
    # cross-check by the generic route on the induced coring automorphism
    m = graded_triple_coring_automorphism(Gd, [0, 1], [1, 0], Matrix.eye(F3, 2))
    assert is_inner(m).status == NOT_INNER


def test_graded_triple_invalid_rejected():
    Gd = kz2_graded(F3)
    with pytest.raises(InvalidStructureError):
        # phi not equivariant for f = id
        graded_triple_ker_membership(Gd, [0, 1], [1, 1], Matrix.eye(F3, 2))
