"""Current algebras, 1-cocycles, and the graded construction pipeline.

For a positively graded nilpotent algebra L with top degree n-1, the map
sending a degree-i basis element x to x(x)t^i embeds L into the current
algebra L(x)tQ[t]/(t^n).  The scaling derivation (eigenvalue = t-degree) is a
1-cocycle with zero kernel valued in the adjoint module, and the cocycle
extension of the current algebra on V + Z^1(L,V) is faithful and nilpotent;
restricting back along the embedding yields a faithful nilpotent
representation of L.  Every promised property is re-checked exactly at
construction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateCocycle, DimensionMismatch, InvalidGrading, NotACocycle
from .linalg import (
    F0,
    F1,
    RationalMatrix,
    kernel_basis,
)
from .liealg import Grading, LieAlgebra, LieHom, verify_grading
from .reps import (
    Representation,
    adjoint,
    is_homomorphism,
    is_nilpotent_rep,
    rep_kernel,
    restrict_along,
)


@dataclass
class CurrentAlgebra:
    """base (x) tQ[t]/(t^truncation) on the basis {e_i (x) t^a : 1 <= a < n},
    ordered by t-degree then base index."""

    base: LieAlgebra
    truncation: int
    product: LieAlgebra

    def flat_index(self, a: int, i: int) -> int:
        """Index of e_i (x) t^a in the product basis."""
        if not (1 <= a < self.truncation and 0 <= i < self.base.dim):
            raise DimensionMismatch("current algebra coordinate out of range")
        return (a - 1) * self.base.dim + i

    def t_degree(self, flat: int) -> int:
        return flat // self.base.dim + 1


def current_algebra(base: LieAlgebra, truncation: int) -> CurrentAlgebra:
    """[x(x)t^a, y(x)t^b] = [x,y](x)t^{a+b}, truncated to zero at t^n."""
    if truncation < 2:
        raise ValueError("current algebra truncation must be at least 2")
    n = base.dim
    levels = truncation - 1
    dim = n * levels
    table = {}
    for a in range(1, levels + 1):
        for b in range(a, levels + 1):
            if a + b > levels:
                continue
            shift = (a + b - 1) * n
            for (i, j), coeffs in base.brackets.items():
                lo, hi = (a - 1) * n + i, (b - 1) * n + j
                out = {shift + k: v for k, v in coeffs.items()}
                if lo < hi:
                    table[(lo, hi)] = dict(out)
                if a != b:
                    # the (e_j (x) t^a, e_i (x) t^b) pair carries the sign flip
                    lo2, hi2 = (a - 1) * n + j, (b - 1) * n + i
                    table[(lo2, hi2)] = {k: -v for k, v in out.items()}
    labels = tuple(
        f"{base.label(i)}*t^{a}" for a in range(1, levels + 1) for i in range(n)
    )
    degrees = tuple(a for a in range(1, levels + 1) for _ in range(n))
    product = LieAlgebra(dim, table, labels=labels, grading=Grading(degrees))
    return CurrentAlgebra(base=base, truncation=truncation, product=product)


def graded_embedding(algebra: LieAlgebra, current: CurrentAlgebra | None = None) -> LieHom:
    """The injective homomorphism x -> x(x)t^deg(x) into the current algebra
    truncated at 1 + max degree."""
    if algebra.grading is None or not verify_grading(algebra):
        raise InvalidGrading("graded_embedding requires a valid positive grading")
    n = 1 + algebra.grading.max_degree
    if current is None:
        current = current_algebra(algebra, n)
    elif current.truncation != n or not current.base.structurally_equal(algebra):
        raise DimensionMismatch("provided current algebra does not match the grading")
    entries = []
    for i, d in enumerate(algebra.grading.degrees):
        entries.append((current.flat_index(d, i), i, F1))
    matrix = RationalMatrix.from_entries(current.product.dim, algebra.dim, entries)
    hom = LieHom(algebra, current.product, matrix)
    assert hom.is_injective(), "graded embedding must be injective"
    return hom


@dataclass
class Cocycle:
    """A linear map phi: L -> V written columnwise against a representation."""

    rep: Representation
    map: RationalMatrix  # space_dim x algebra.dim; column i = phi(e_i)

    def __post_init__(self):
        if self.map.rows != self.rep.space_dim or self.map.cols != self.rep.algebra.dim:
            raise DimensionMismatch("cocycle map must be space_dim x algebra.dim")

    def value(self, x) -> tuple:
        return self.map.apply(x)

    def satisfies_identity(self) -> bool:
        """phi([x,y]) - rho(x)phi(y) + rho(y)phi(x) = 0 on all basis pairs."""
        alg = self.rep.algebra
        n = alg.dim
        cols = [self.map.column(i) for i in range(n)]
        for i in range(n):
            mi = self.rep.matrices[i]
            for j in range(i + 1, n):
                mj = self.rep.matrices[j]
                bracket_vec = [F0] * n
                for k, v in alg.bracket_basis(i, j).items():
                    bracket_vec[k] = v
                lhs = self.map.apply(tuple(bracket_vec))
                mid = mi.apply(cols[j])
                last = mj.apply(cols[i])
                if any(a - b + c for a, b, c in zip(lhs, mid, last)):
                    return False
        return True


@dataclass
class CocycleSpace:
    """Canonical echelon basis of all 1-cocycles for a representation."""

    rep: Representation
    basis: list[Cocycle]

    @property
    def dim(self) -> int:
        return len(self.basis)


def cocycle_space(algebra: LieAlgebra, rep: Representation) -> CocycleSpace:
    """Solve the cocycle identity over all basis pairs as one linear system.

    Unknowns are the entries of the map, flattened column-major (column i =
    phi(e_i)); the kernel's canonical echelon basis makes downstream
    constructions deterministic.
    """
    if not _same(algebra, rep.algebra):
        raise DimensionMismatch("representation must belong to the given algebra")
    if not is_homomorphism(rep):
        raise ValueError("cocycle_space requires a homomorphism representation")
    n = algebra.dim
    vd = rep.space_dim
    unknown = lambda i, r: i * vd + r
    entries = []
    row_index = 0
    for i in range(n):
        mi = rep.matrices[i]
        for j in range(i + 1, n):
            mj = rep.matrices[j]
            base = row_index
            for k, v in algebra.bracket_basis(i, j).items():
                for r in range(vd):
                    entries.append((base + r, unknown(k, r), v))
            for r, row in mi._data.items():
                for s, v in row.items():
                    entries.append((base + r, unknown(j, s), -v))
            for r, row in mj._data.items():
                for s, v in row.items():
                    entries.append((base + r, unknown(i, s), v))
            row_index += vd
    system = RationalMatrix.from_entries(row_index, n * vd, entries)
    solutions = kernel_basis(system)
    basis = []
    for w in solutions.basis_vectors():
        mat_entries = []
        for idx, v in enumerate(w):
            if v:
                i, r = divmod(idx, vd)
                mat_entries.append((r, i, v))
        cocycle = Cocycle(rep, RationalMatrix.from_entries(vd, n, mat_entries))
        assert cocycle.satisfies_identity()
        basis.append(cocycle)
    return CocycleSpace(rep, basis)


def _same(a: LieAlgebra, b: LieAlgebra) -> bool:
    return a is b or a.structurally_equal(b)


def euler_derivation(current: CurrentAlgebra) -> Cocycle:
    """The scaling cocycle phi(x(x)t^a) = a * x(x)t^a valued in the adjoint
    module; its kernel is zero because every eigenvalue is a positive
    integer."""
    product = current.product
    ad = adjoint(product)
    entries = [(i, i, Fraction(current.t_degree(i))) for i in range(product.dim)]
    phi = Cocycle(ad, RationalMatrix.from_entries(product.dim, product.dim, entries))
    assert phi.satisfies_identity(), "scaling map must be a derivation"
    return phi


def cocycle_extension_rep(algebra: LieAlgebra, rep: Representation, phi: Cocycle) -> Representation:
    """Faithful extension on V + Z^1(L, V) given a cocycle with zero kernel.

    x acts by (v, psi) -> (rho(x)v + psi(x), 0).  Faithfulness and (when rho
    is nilpotent) nilpotency of the result are asserted on every call.
    """
    if not _same(algebra, rep.algebra):
        raise DimensionMismatch("representation must belong to the given algebra")
    if phi.rep is not rep and phi.rep.matrices != rep.matrices:
        raise NotACocycle("cocycle is valued in a different module")
    if not phi.satisfies_identity():
        raise NotACocycle("map does not satisfy the cocycle identity")
    if kernel_basis(phi.map).dim != 0:
        raise DegenerateCocycle("cocycle has a nonzero kernel")
    space = cocycle_space(algebra, rep)
    n = algebra.dim
    vd = rep.space_dim
    zd = space.dim
    total = vd + zd
    mats = []
    for i in range(n):
        entries = [(r, c, v) for r, c, v in rep.matrices[i].entries()]
        for b, psi in enumerate(space.basis):
            col = psi.map.column(i)
            for r, v in enumerate(col):
                if v:
                    entries.append((r, vd + b, v))
        mats.append(RationalMatrix.from_entries(total, total, entries))
    result = Representation(algebra, total, mats)
    assert is_homomorphism(result), "cocycle extension must be a homomorphism"
    assert rep_kernel(result).dim == 0, "cocycle extension must be faithful"
    if is_nilpotent_rep(rep):
        assert is_nilpotent_rep(result), "extension of a nilpotent module must stay nilpotent"
    return result


def graded_faithful_rep(algebra: LieAlgebra) -> Representation:
    """Faithful nilpotent representation of a validly graded algebra via the
    embedding + scaling-cocycle extension + restriction pipeline."""
    if algebra.grading is None or not verify_grading(algebra):
        raise InvalidGrading("graded_faithful_rep requires a valid grading")
    if algebra.dim == 0:
        return Representation(algebra, 0, [])
    n = 1 + algebra.grading.max_degree
    current = current_algebra(algebra, n)
    embedding = graded_embedding(algebra, current)
    ad = adjoint(current.product)
    phi = euler_derivation(current)
    extended = cocycle_extension_rep(current.product, ad, phi)
    result = restrict_along(extended, embedding)
    assert is_homomorphism(result)
    assert rep_kernel(result).dim == 0, "restriction along an injective hom keeps faithfulness"
    assert is_nilpotent_rep(result)
    return result


def free_nilpotent_faithful_rep(free_algebra: LieAlgebra) -> Representation:
    """Faithful nilpotent representation of a free nilpotent algebra carrying
    its Hall-degree grading."""
    if free_algebra.grading is None:
        raise InvalidGrading("free nilpotent algebra must carry its degree grading")
    return graded_faithful_rep(free_algebra)
