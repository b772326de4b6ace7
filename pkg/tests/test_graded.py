import pytest

from adoforge.catalog import abelian, filiform4, heisenberg3
from adoforge.errors import DegenerateCocycle, InvalidGrading, NotACocycle
from adoforge.freenilp import free_nilpotent
from adoforge.graded import (
    Cocycle,
    cocycle_extension_rep,
    cocycle_space,
    current_algebra,
    euler_derivation,
    free_nilpotent_faithful_rep,
    graded_embedding,
    graded_faithful_rep,
)
from adoforge.liealg import LieAlgebra, lower_central_series, validate
from adoforge.linalg import RationalMatrix, kernel_basis, unit_vector, vec_is_zero
from adoforge.reps import (
    Representation,
    adjoint,
    is_homomorphism,
    is_nilpotent_rep,
    rep_kernel,
)


class TestCurrentAlgebra:
    def test_abelian_base(self):
        c = current_algebra(abelian(1), 2)
        assert c.product.dim == 1 and not c.product.brackets

    def test_h3_truncation3(self, h3):
        c = current_algebra(h3, 3)
        assert c.product.dim == 6
        assert validate(c.product).ok
        # [e0 (x) t, e1 (x) t] = e2 (x) t^2
        lhs = c.product.bracket(
            unit_vector(6, c.flat_index(1, 0)), unit_vector(6, c.flat_index(1, 1))
        )
        expected = unit_vector(6, c.flat_index(2, 2))
        assert lhs == expected
        # degree 3 truncates: [e0 (x) t, e1 (x) t^2] = 0
        lhs = c.product.bracket(
            unit_vector(6, c.flat_index(1, 0)), unit_vector(6, c.flat_index(2, 1))
        )
        assert vec_is_zero(lhs)

    def test_h3_truncation2_abelian(self, h3):
        c = current_algebra(h3, 2)
        assert c.product.dim == 3 and not c.product.brackets

    def test_nilpotency_class_bounded(self, h3):
        c = current_algebra(h3, 3)
        series = lower_central_series(c.product)
        assert series[-1].dim == 0
        assert len(series) - 1 <= 2


class TestGradedEmbedding:
    def test_abelian1(self):
        emb = graded_embedding(abelian(1))
        assert emb.target.dim == 1
        assert emb.matrix == RationalMatrix.identity(1)

    def test_h3(self, h3):
        emb = graded_embedding(h3)
        assert emb.target.dim == 6  # truncation 3
        assert emb.is_injective()
        c = current_algebra(h3, 3)
        assert emb.matrix.column(0) == unit_vector(6, c.flat_index(1, 0))
        assert emb.matrix.column(2) == unit_vector(6, c.flat_index(2, 2))

    def test_f4_dimensions(self, f4):
        emb = graded_embedding(f4)
        assert emb.target.dim == 12  # truncation 4, base dim 4

    def test_high_degree_brackets_vanish(self, h3, f4):
        for algebra in (h3, f4):
            emb = graded_embedding(algebra)
            target = emb.target
            n = 1 + algebra.grading.max_degree
            cols = [emb.matrix.column(i) for i in range(algebra.dim)]
            for i in range(algebra.dim):
                for j in range(algebra.dim):
                    if algebra.grading.degrees[i] + algebra.grading.degrees[j] >= n:
                        assert vec_is_zero(target.bracket(cols[i], cols[j]))

    def test_requires_grading(self, solvable):
        with pytest.raises(InvalidGrading):
            graded_embedding(solvable)


class TestEulerDerivation:
    def test_abelian1(self):
        phi = euler_derivation(current_algebra(abelian(1), 2))
        assert phi.map == RationalMatrix.identity(1)

    def test_h3_diagonal(self, h3):
        phi = euler_derivation(current_algebra(h3, 3))
        assert phi.map == RationalMatrix.from_entries(
            6, 6, [(i, i, 1) for i in range(3)] + [(i, i, 2) for i in range(3, 6)]
        )

    @pytest.mark.parametrize("build", [lambda: abelian(2), heisenberg3, filiform4])
    def test_zero_kernel(self, build):
        algebra = build()
        c = current_algebra(algebra, 1 + algebra.grading.max_degree)
        phi = euler_derivation(c)
        assert kernel_basis(phi.map).dim == 0


class TestCocycleSpace:
    def test_abelian1_trivial_module(self):
        a1 = abelian(1)
        rep = Representation(a1, 1, [RationalMatrix.zero(1, 1)])
        assert cocycle_space(a1, rep).dim == 1

    def test_h3_trivial_module(self, h3):
        rep = Representation(h3, 1, [RationalMatrix.zero(1, 1)] * 3)
        space = cocycle_space(h3, rep)
        assert space.dim == 2  # maps vanishing on [L,L] = span{e2}
        for psi in space.basis:
            assert vec_is_zero(psi.map.column(2))

    def test_h3_adjoint_is_derivation_space(self, h3):
        assert cocycle_space(h3, adjoint(h3)).dim == 6

    def test_every_basis_member_satisfies_identity(self, f4):
        space = cocycle_space(f4, adjoint(f4))
        assert all(psi.satisfies_identity() for psi in space.basis)


class TestCocycleExtension:
    def test_abelian1_two_dim(self):
        a1 = abelian(1)
        rep = Representation(a1, 1, [RationalMatrix.zero(1, 1)])
        phi = Cocycle(rep, RationalMatrix.identity(1))
        extended = cocycle_extension_rep(a1, rep, phi)
        assert extended.space_dim == 2
        assert extended.matrices[0] == RationalMatrix.from_entries(2, 2, [(0, 1, 1)])
        assert rep_kernel(extended).dim == 0
        assert is_nilpotent_rep(extended)

    def test_degenerate_cocycle_rejected(self, h3):
        rep = Representation(h3, 1, [RationalMatrix.zero(1, 1)] * 3)
        zero_map = Cocycle(rep, RationalMatrix.zero(1, 3))
        with pytest.raises(DegenerateCocycle):
            cocycle_extension_rep(h3, rep, zero_map)

    def test_non_cocycle_rejected(self, h3):
        rep = Representation(h3, 1, [RationalMatrix.zero(1, 1)] * 3)
        # phi(e2) != 0 violates the identity since e2 = [e0,e1] and rho = 0
        bad = Cocycle(rep, RationalMatrix.from_entries(1, 3, [(0, 0, 1), (0, 1, 1), (0, 2, 1)]))
        with pytest.raises(NotACocycle):
            cocycle_extension_rep(h3, rep, bad)

    def test_full_pipeline_on_current_h3(self, h3):
        current = current_algebra(h3, 3)
        phi = euler_derivation(current)
        extended = cocycle_extension_rep(current.product, adjoint(current.product), phi)
        assert extended.space_dim == 6 + cocycle_space(current.product, adjoint(current.product)).dim
        assert rep_kernel(extended).dim == 0
        assert is_nilpotent_rep(extended)


class TestGradedFaithfulRep:
    def test_abelian1(self):
        rep = graded_faithful_rep(abelian(1))
        assert rep.space_dim == 2
        assert rep_kernel(rep).dim == 0

    @pytest.mark.parametrize("build", [heisenberg3, filiform4, lambda: abelian(3)])
    def test_verified_faithful_nilpotent(self, build):
        algebra = build()
        rep = graded_faithful_rep(algebra)
        assert is_homomorphism(rep)
        assert rep_kernel(rep).dim == 0
        assert is_nilpotent_rep(rep)

    def test_ungraded_rejected(self, solvable):
        with pytest.raises(InvalidGrading):
            graded_faithful_rep(solvable)


class TestFreeNilpotentFaithfulRep:
    def test_free11(self):
        rep = free_nilpotent_faithful_rep(free_nilpotent(1, 1))
        assert rep.space_dim == 2

    @pytest.mark.parametrize("r,c", [(2, 2), (2, 3)])
    def test_faithful_nilpotent(self, r, c):
        f = free_nilpotent(r, c)
        rep = free_nilpotent_faithful_rep(f)
        assert is_homomorphism(rep)
        assert rep_kernel(rep).dim == 0
        assert is_nilpotent_rep(rep)

    def test_grading_required(self):
        bare = LieAlgebra(3, {(0, 1): {2: 1}})
        with pytest.raises(InvalidGrading):
            free_nilpotent_faithful_rep(bare)
