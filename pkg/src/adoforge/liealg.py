"""Structure-constant Lie algebras over Q.

A LieAlgebra stores brackets sparsely for index pairs i < j only, so
antisymmetry holds by construction; the Jacobi identity is checked by
``validate``.  Quotients, the center, central series, and the codimension-one
ideal refinement used by the construction engine all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DimensionMismatch, NotAnIdeal, NotNilpotent, ZeroIdeal
from .linalg import (
    F0,
    RationalMatrix,
    Subspace,
    Vector,
    frac,
    solve_multi,
    unit_vector,
    vec_is_zero,
)

BracketTable = dict[tuple[int, int], dict[int, Fraction]]


@dataclass(frozen=True)
class Grading:
    """Positive integer degree per basis index."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        if any(d < 1 for d in self.degrees):
            raise ValueError("grading degrees must be positive integers")

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.degrees else 0


class LieAlgebra:
    """Finite-dimensional Lie algebra presented by structure constants."""

    __slots__ = ("dim", "labels", "brackets", "grading")

    def __init__(
        self,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object]],
        labels: Sequence[str] | None = None,
        grading: Grading | None = None,
    ):
        self.dim = dim
        table: BracketTable = {}
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket pair ({i},{j}) must satisfy 0 <= i < j < dim")
            row = {}
            for k, v in coeffs.items():
                k = int(k)
                if not 0 <= k < dim:
                    raise ValueError(f"bracket target index {k} out of range")
                fv = frac(v)
                if fv:
                    row[k] = fv
            if row:
                table[(i, j)] = row
        self.brackets = table
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != dim:
                raise ValueError("label count must equal dim")
        self.labels = labels
        if grading is not None and len(grading.degrees) != dim:
            raise ValueError("grading length must equal dim")
        self.grading = grading

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i}"

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        """[e_i, e_j] as a sparse coefficient dict."""
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -v for k, v in self.brackets.get((j, i), {}).items()}

    def bracket(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        """Bilinear extension of the structure constants."""
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionMismatch("bracket operands must have length dim")
        out = [F0] * self.dim
        for (i, j), coeffs in self.brackets.items():
            c = u[i] * v[j] - u[j] * v[i]
            if c:
                for k, val in coeffs.items():
                    out[k] += c * val
        return tuple(out)

    def structurally_equal(self, other: "LieAlgebra") -> bool:
        return self.dim == other.dim and self.brackets == other.brackets

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, brackets={len(self.brackets)})"


def bracket(algebra: LieAlgebra, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return algebra.bracket(u, v)


@dataclass
class ValidationReport:
    """Jacobi violations as (i, j, k, residual) tuples; empty means valid."""

    dim: int
    jacobi_violations: list[tuple[int, int, int, Vector]]
    grading_ok: bool | None  # None when the algebra carries no grading

    @property
    def ok(self) -> bool:
        return not self.jacobi_violations and self.grading_ok is not False


def validate(algebra: LieAlgebra) -> ValidationReport:
    """Check the Jacobi identity on all basis triples (and grading if present)."""
    violations = []
    n = algebra.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                residual = _jacobi_residual(algebra, i, j, k)
                if residual is not None:
                    violations.append((i, j, k, residual))
    grading_ok = verify_grading(algebra) if algebra.grading is not None else None
    return ValidationReport(n, violations, grading_ok)


def _jacobi_residual(algebra: LieAlgebra, i: int, j: int, k: int) -> Vector | None:
    n = algebra.dim
    acc = [F0] * n
    for (a, b), c in (((i, j), k), ((j, k), i), ((k, i), j)):
        inner = algebra.bracket_basis(a, b)
        for m, coeff in inner.items():
            outer = algebra.bracket_basis(m, c)
            for t, oc in outer.items():
                acc[t] += coeff * oc
    if any(acc):
        return tuple(acc)
    return None


def verify_grading(algebra: LieAlgebra, grading: Grading | None = None) -> bool:
    """True iff every bracket is degree-additive for the grading."""
    g = grading if grading is not None else algebra.grading
    if g is None or len(g.degrees) != algebra.dim:
        return False
    deg = g.degrees
    for (i, j), coeffs in algebra.brackets.items():
        target = deg[i] + deg[j]
        if any(deg[k] != target for k in coeffs):
            return False
    return True


def center(algebra: LieAlgebra) -> Subspace:
    """{x : [x, L] = 0}, solved as the kernel of the stacked adjoint system."""
    n = algebra.dim
    entries = []
    for (i, j), coeffs in algebra.brackets.items():
        for k, v in coeffs.items():
            entries.append((j * n + k, i, v))   # x_i * [e_i, e_j]
            entries.append((i * n + k, j, -v))  # x_j * [e_j, e_i]
    m = RationalMatrix.from_entries(n * n, n, entries)
    from .linalg import kernel_basis

    return kernel_basis(m)


def _bracket_span(algebra: LieAlgebra, space: Subspace) -> Subspace:
    """[L, space] as a subspace."""
    vectors = []
    for col in space.basis_vectors():
        for i in range(algebra.dim):
            v = algebra.bracket(unit_vector(algebra.dim, i), col)
            if not vec_is_zero(v):
                vectors.append(v)
    return Subspace.from_vectors(algebra.dim, vectors)


def lower_central_series(algebra: LieAlgebra) -> list[Subspace]:
    """L >= [L,L] >= [L,[L,L]] >= ... up to (and including) stabilization."""
    terms = [Subspace.full(algebra.dim)]
    while True:
        nxt = _bracket_span(algebra, terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
        if nxt.dim == 0:
            break
    return terms


def nilpotency_class(algebra: LieAlgebra) -> int:
    series = lower_central_series(algebra)
    if series[-1].dim != 0:
        raise NotNilpotent("lower central series stabilizes at a nonzero term")
    return len(series) - 1


def derived_subalgebra(algebra: LieAlgebra) -> Subspace:
    return _bracket_span(algebra, Subspace.full(algebra.dim))


def minimal_generator_count(algebra: LieAlgebra) -> int:
    return algebra.dim - derived_subalgebra(algebra).dim


def is_ideal(algebra: LieAlgebra, space: Subspace) -> bool:
    """[L, space] contained in space, checked basis vs basis."""
    if space.ambient_dim != algebra.dim:
        raise DimensionMismatch("subspace ambient dimension mismatch")
    for col in space.basis_vectors():
        for i in range(algebra.dim):
            v = algebra.bracket(unit_vector(algebra.dim, i), col)
            if not vec_is_zero(v) and not space.contains_vector(v):
                return False
    return True


class LieHom:
    """Linear map between Lie algebras; the homomorphism identity is
    verified exactly on all source basis pairs at construction time."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: LieAlgebra, target: LieAlgebra, matrix: RationalMatrix):
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise DimensionMismatch("LieHom matrix must be target.dim x source.dim")
        self.source = source
        self.target = target
        self.matrix = matrix
        cols = [matrix.column(i) for i in range(source.dim)]
        for i in range(source.dim):
            for j in range(i + 1, source.dim):
                lhs = matrix.apply(_dict_to_vec(source.bracket_basis(i, j), source.dim))
                rhs = target.bracket(cols[i], cols[j])
                if lhs != rhs:
                    raise ValueError(
                        f"not a Lie homomorphism: image bracket mismatch on basis pair ({i},{j})"
                    )

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return self.matrix.apply(v)

    def is_injective(self) -> bool:
        from .linalg import kernel_basis

        return kernel_basis(self.matrix).dim == 0

    def compose(self, inner: "LieHom") -> "LieHom":
        """self o inner (inner applied first)."""
        if inner.target is not self.source and not inner.target.structurally_equal(self.source):
            raise DimensionMismatch("composition target/source mismatch")
        return LieHom(inner.source, self.target, self.matrix @ inner.matrix)

    def __repr__(self) -> str:
        return f"LieHom({self.source.dim} -> {self.target.dim})"


def _dict_to_vec(coeffs: Mapping[int, Fraction], n: int) -> Vector:
    out = [F0] * n
    for k, v in coeffs.items():
        out[k] = v
    return tuple(out)


def identity_hom(algebra: LieAlgebra) -> LieHom:
    return LieHom(algebra, algebra, RationalMatrix.identity(algebra.dim))


@dataclass
class IdealChain:
    """Ascending flag of ideals with codimension-1 steps and [L, I_i] <= I_{i-1}."""

    algebra: LieAlgebra
    ideals: list[Subspace]


def quotient(algebra: LieAlgebra, ideal: Subspace) -> tuple[LieAlgebra, LieHom]:
    """Quotient algebra on the complement coordinates of the ideal's echelon
    basis, together with the surjective projection."""
    if not is_ideal(algebra, ideal):
        raise NotAnIdeal("quotient requires an ideal")
    n = algebra.dim
    pivot_set = set(ideal._pivots)
    complement = [i for i in range(n) if i not in pivot_set]
    q = len(complement)
    if ideal.dim == 0:
        proj_matrix = RationalMatrix.identity(n)
        quo = LieAlgebra(n, algebra.brackets, labels=algebra.labels, grading=algebra.grading)
        return quo, LieHom(algebra, quo, proj_matrix)
    # x = B a + E_Q b uniquely; the projection reads off b.
    basis_cols = ideal.basis_vectors()
    lhs = RationalMatrix.from_columns(n, basis_cols + [unit_vector(n, i) for i in complement])
    inv = solve_multi(lhs, RationalMatrix.identity(n))
    assert inv is not None, "ideal basis plus complement must be invertible"
    proj_matrix = RationalMatrix.from_entries(
        q, n, ((r - ideal.dim, c, v) for r, c, v in inv.entries() if r >= ideal.dim)
    )
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(q):
        for b in range(a + 1, q):
            v = algebra.bracket_basis(complement[a], complement[b])
            img = proj_matrix.apply(_dict_to_vec(v, n))
            coeffs = {k: val for k, val in enumerate(img) if val}
            if coeffs:
                table[(a, b)] = coeffs
    labels = tuple(algebra.label(i) for i in complement) if q else None
    quo = LieAlgebra(q, table, labels=labels)
    return quo, LieHom(algebra, quo, proj_matrix)


def central_flag(algebra: LieAlgebra) -> IdealChain:
    """Full flag 0 = I_0 < I_1 < ... < I_n = L with codim-1 steps and
    [L, I_i] <= I_{i-1}, built by pivot-completing the lower central series."""
    nilpotency_class(algebra)  # raises NotNilpotent when it fails
    series = lower_central_series(algebra)
    if series[-1].dim != 0:
        raise NotNilpotent("algebra is not nilpotent")
    chain = [Subspace.zero(algebra.dim)]
    # Walk the series from the deepest nonzero term back up to L; every
    # intermediate subspace between consecutive terms is an ideal because the
    # layer quotients are central.
    for layer in reversed(series):
        current = chain[-1]
        for v in layer.basis_vectors():
            if not current.contains_vector(v):
                current = current.add(Subspace.from_vectors(algebra.dim, [v]))
                chain.append(current)
    return IdealChain(algebra, chain)


def codim1_refinement(algebra: LieAlgebra, ideal: Subspace) -> Subspace:
    """An ideal J < I with dim I - dim J = 1 and [L, I] <= J, obtained by
    intersecting I with the central flag just below the first flag member
    containing I."""
    if ideal.dim == 0:
        raise ZeroIdeal("refinement requires a nonzero ideal")
    if not is_ideal(algebra, ideal):
        raise NotAnIdeal("refinement requires an ideal")
    flag = central_flag(algebra)
    k = None
    for idx, member in enumerate(flag.ideals):
        if member.contains(ideal):
            k = idx
            break
    assert k is not None and k >= 1, "full flag member must contain any ideal"
    j = ideal.intersect(flag.ideals[k - 1])
    assert j.dim == ideal.dim - 1, "flag intersection must drop dimension by exactly 1"
    commutator = _bracket_span_of(algebra, ideal)
    assert all(j.contains_vector(v) for v in commutator.basis_vectors()), "[L, I] must land in J"
    return j


def _bracket_span_of(algebra: LieAlgebra, space: Subspace) -> Subspace:
    return _bracket_span(algebra, space)
