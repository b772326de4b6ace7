"""Representation values and combinators.

A Representation is one square matrix per basis element of its algebra.
Nothing here assumes the homomorphism identity; ``is_homomorphism`` checks it
and the construction pipeline asserts it wherever an operation promises it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import AlgebraMismatch, DimensionMismatch, NotCentral
from .linalg import (
    F0,
    RationalMatrix,
    SpanBasis,
    Subspace,
    Vector,
    block_diag,
    kernel_basis,
    kronecker,
    solve_multi,
    unit_vector,
    vec_is_zero,
)
from .liealg import LieAlgebra, LieHom, quotient


class Representation:
    """Matrices (one per algebra basis element) acting on Q^space_dim."""

    __slots__ = ("algebra", "space_dim", "matrices")

    def __init__(self, algebra: LieAlgebra, space_dim: int, matrices: Sequence[RationalMatrix]):
        if len(matrices) != algebra.dim:
            raise DimensionMismatch("need exactly one matrix per basis element")
        for m in matrices:
            if m.rows != space_dim or m.cols != space_dim:
                raise DimensionMismatch("representation matrices must be square of size space_dim")
        self.algebra = algebra
        self.space_dim = space_dim
        self.matrices = tuple(matrices)

    def __repr__(self) -> str:
        return f"Representation(dim {self.algebra.dim} algebra on Q^{self.space_dim})"


def _same_algebra(a: LieAlgebra, b: LieAlgebra) -> bool:
    return a is b or a.structurally_equal(b)


def element_action(rep: Representation, x: Sequence[Fraction]) -> RationalMatrix:
    """sum_i x_i * rho(e_i)."""
    if len(x) != rep.algebra.dim:
        raise DimensionMismatch("element coefficient vector has wrong length")
    acc = RationalMatrix.zero(rep.space_dim, rep.space_dim)
    for xi, m in zip(x, rep.matrices):
        if xi:
            acc = acc + m.scale(xi)
    return acc


def adjoint(algebra: LieAlgebra) -> Representation:
    """ad(e_i) = matrix of [e_i, .] on the algebra itself."""
    n = algebra.dim
    mats = []
    for i in range(n):
        entries = []
        for j in range(n):
            for k, v in algebra.bracket_basis(i, j).items():
                entries.append((k, j, v))
        mats.append(RationalMatrix.from_entries(n, n, entries))
    return Representation(algebra, n, mats)


def direct_sum(rho: Representation, tau: Representation) -> Representation:
    if not _same_algebra(rho.algebra, tau.algebra):
        raise AlgebraMismatch("direct_sum requires representations of the same algebra")
    mats = [block_diag([a, b]) for a, b in zip(rho.matrices, tau.matrices)]
    return Representation(rho.algebra, rho.space_dim + tau.space_dim, mats)


def tensor_product(rho: Representation, tau: Representation) -> Representation:
    """Lie tensor action: x acts as rho(x) (x) I + I (x) tau(x)."""
    if not _same_algebra(rho.algebra, tau.algebra):
        raise AlgebraMismatch("tensor_product requires representations of the same algebra")
    iv = RationalMatrix.identity(rho.space_dim)
    iw = RationalMatrix.identity(tau.space_dim)
    mats = [kronecker(a, iw) + kronecker(iv, b) for a, b in zip(rho.matrices, tau.matrices)]
    return Representation(rho.algebra, rho.space_dim * tau.space_dim, mats)


def restrict_along(rho: Representation, phi: LieHom) -> Representation:
    """Pull back along phi: x acts as rho(phi(x))."""
    if not _same_algebra(phi.target, rho.algebra):
        raise AlgebraMismatch("hom target must be the representation's algebra")
    mats = [element_action(rho, phi.matrix.column(i)) for i in range(phi.source.dim)]
    return Representation(phi.source, rho.space_dim, mats)


def rep_kernel(rep: Representation) -> Subspace:
    """{x in L : rho(x) = 0}, the kernel of the stacked map L -> End(V)."""
    n = rep.algebra.dim
    sd = rep.space_dim
    entries = []
    for i, m in enumerate(rep.matrices):
        for r, c, v in m.entries():
            entries.append((r * sd + c, i, v))
    stacked = RationalMatrix.from_entries(sd * sd, n, entries)
    return kernel_basis(stacked)


def is_faithful(rep: Representation) -> bool:
    return rep_kernel(rep).dim == 0


def is_homomorphism(rep: Representation) -> bool:
    """Commutator identity rho([e_i,e_j]) = [rho(e_i), rho(e_j)], exactly."""
    n = rep.algebra.dim
    for i in range(n):
        mi = rep.matrices[i]
        for j in range(i + 1, n):
            mj = rep.matrices[j]
            lhs = element_action(rep, _coeff_vec(rep.algebra.bracket_basis(i, j), n))
            if lhs != mi @ mj - mj @ mi:
                return False
    return True


def _coeff_vec(coeffs: dict[int, Fraction], n: int) -> Vector:
    out = [F0] * n
    for k, v in coeffs.items():
        out[k] = v
    return tuple(out)


def _flatten(m: RationalMatrix) -> dict[int, Fraction]:
    sd = m.cols
    out = {}
    for r, row in m._data.items():
        base = r * sd
        for c, v in row.items():
            out[base + c] = v
    return out


def is_nilpotent_rep(rep: Representation) -> bool:
    """Associative span chain W_1 = span{rho(e_i)}, W_{k+1} = span(W_k W_1).

    If the representation is nilpotent the chain hits zero within space_dim
    steps (the matrices are simultaneously strictly triangularizable), and
    any W_k = 0 forces every rho(x)^k = 0; so checking the chain up to
    k = space_dim decides nilpotency exactly.
    """
    sd = rep.space_dim
    if sd == 0:
        return True
    generators = [m for m in rep.matrices if not m.is_zero()]
    if not generators:
        return True
    basis = SpanBasis()
    current: list[RationalMatrix] = []
    for m in generators:
        if basis.add(_flatten(m)):
            current.append(m)
    for _ in range(sd):
        if not current:
            return True
        nxt_basis = SpanBasis()
        nxt: list[RationalMatrix] = []
        for w in current:
            for g in generators:
                p = w @ g
                if not p.is_zero() and nxt_basis.add(_flatten(p)):
                    nxt.append(p)
        current = nxt
    return not current


def kernel_submodule(rep: Representation, z: Sequence[Fraction]) -> tuple[Subspace, Representation]:
    """Carrier Ker rho(z) plus the induced representation of algebra/<z>.

    Requires rho(z) to commute with every rho(e_i) (z acts centrally); the
    carrier is then invariant and z acts as zero on it, so the compressed
    action factors through the quotient by the line of z.  Invariance and the
    homomorphism property of the result are asserted, not assumed.
    """
    n = rep.algebra.dim
    ad_z_cols = [rep.algebra.bracket(z, unit_vector(n, i)) for i in range(n)]
    if any(not vec_is_zero(c) for c in ad_z_cols):
        raise NotCentral("z is not central in the algebra")
    mz = element_action(rep, z)
    for i, m in enumerate(rep.matrices):
        if mz @ m != m @ mz:
            raise NotCentral(f"rho(z) does not commute with rho(e_{i})")
    carrier = kernel_basis(mz)
    basis = carrier.basis
    compressed = []
    for i, m in enumerate(rep.matrices):
        image = m @ basis
        x = solve_multi(basis, image)
        if x is None:
            raise NotCentral(f"rho(e_{i}) does not stabilize Ker rho(z)")
        compressed.append(x)
    z_line = Subspace.from_vectors(n, [z])
    quo, _ = quotient(rep.algebra, z_line)
    # Basis vector j of the quotient lifts to the standard basis vector at
    # the j-th complement coordinate; its compressed action represents it.
    pivot = set(z_line._pivots)
    complement = [i for i in range(n) if i not in pivot]
    induced = Representation(quo, carrier.dim, [compressed[i] for i in complement])
    assert is_homomorphism(induced), "induced kernel-submodule action must be a homomorphism"
    return carrier, induced


def cyclic_submodule(rep: Representation, v: Sequence[Fraction]) -> Representation:
    """Sub-representation on the smallest invariant subspace containing v."""
    if len(v) != rep.space_dim:
        raise DimensionMismatch("vector must live in the representation space")
    span = SpanBasis()
    frontier = []
    vd = {i: x for i, x in enumerate(v) if x}
    if vd and span.add(vd):
        frontier.append(tuple(v))
    vectors = list(frontier)
    while frontier:
        new_frontier = []
        for w in frontier:
            for m in rep.matrices:
                img = m.apply(w)
                d = {i: x for i, x in enumerate(img) if x}
                if d and span.add(d):
                    new_frontier.append(img)
                    vectors.append(img)
        frontier = new_frontier
    sub = Subspace.from_vectors(rep.space_dim, vectors)
    basis = sub.basis
    mats = []
    for m in rep.matrices:
        x = solve_multi(basis, m @ basis)
        assert x is not None, "cyclic closure must be invariant"
        mats.append(x)
    return Representation(rep.algebra, sub.dim, mats)
