"""Construction engine: presentation, ideal flag, kernel-distinguishing
search, gluing, transport back to the input algebra, and certificates.

The pipeline builds a faithful nilpotent representation for any validated
nilpotent algebra over Q.  Algebras with a verified grading take the direct
graded route; everything else is presented as a quotient F/I of a free
nilpotent algebra and handled by walking a codimension-one ideal flag inside
I.  At each flag step the previous algebra is a one-dimensional central
extension of the next one; non-central directions are separated by the
adjoint representation, central ones by searching tensor powers of the
previous faithful representation for a kernel non-inclusion witness and
carving out the kernel submodule it acts on.  Every output is re-verified
exactly before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (
    AlgebraMismatch,
    BudgetExceeded,
    InvalidGrading,
    NotLinearlyIndependent,
    SeparatorFailed,
    TensorBudgetExceeded,
)
from .linalg import (
    RationalMatrix,
    Subspace,
    frac,
    rank,
    solve,
    solve_multi,
    unit_vector,
    vec_is_zero,
)
from .liealg import (
    LieAlgebra,
    LieHom,
    codim1_refinement,
    identity_hom,
    nilpotency_class,
    quotient,
    validate,
    verify_grading,
)
from .freenilp import present
from .graded import free_nilpotent_faithful_rep, graded_faithful_rep
from .reps import (
    Representation,
    adjoint,
    cyclic_submodule,
    direct_sum,
    element_action,
    is_homomorphism,
    is_nilpotent_rep,
    kernel_submodule,
    rep_kernel,
    restrict_along,
    tensor_product,
)
from .linalg import kernel_basis

Separator = Callable[[Sequence[Fraction]], Representation]


@dataclass
class EngineConfig:
    method: str = "auto"              # auto | graded | induction
    max_tensor_power: int = 6
    dimension_budget: int = 20000     # representation space cap
    free_dimension_budget: int = 200  # free nilpotent algebra cap
    compress: bool = True

    def __post_init__(self):
        if self.method not in ("auto", "graded", "induction"):
            raise ValueError(f"unknown method {self.method!r}")
        if min(self.max_tensor_power, self.dimension_budget, self.free_dimension_budget) < 1:
            raise ValueError("all budgets must be positive")

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "max_tensor_power": self.max_tensor_power,
            "dimension_budget": self.dimension_budget,
            "free_dimension_budget": self.free_dimension_budget,
            "compress": self.compress,
        }


@dataclass
class Certificate:
    """Replayable audit trail; steps hold only JSON-compatible values."""

    config: dict
    steps: list[dict] = field(default_factory=list)

    def add(self, kind: str, **fields) -> None:
        self.steps.append({"kind": kind, **fields})

    def steps_of_kind(self, kind: str) -> list[dict]:
        return [s for s in self.steps if s["kind"] == kind]


@dataclass
class VerificationReport:
    homomorphism: bool
    faithful: bool
    nilpotent: bool

    @property
    def ok(self) -> bool:
        return self.homomorphism and self.faithful and self.nilpotent

    def failing(self) -> list[str]:
        return [
            name
            for name, good in (
                ("homomorphism", self.homomorphism),
                ("faithful", self.faithful),
                ("nilpotent", self.nilpotent),
            )
            if not good
        ]


def verify_output(algebra: LieAlgebra, rep: Representation) -> VerificationReport:
    """Re-check everything the construction promises, with exact arithmetic."""
    if not (rep.algebra is algebra or rep.algebra.structurally_equal(algebra)):
        raise AlgebraMismatch("representation belongs to a different algebra")
    return VerificationReport(
        homomorphism=is_homomorphism(rep),
        faithful=rep_kernel(rep).dim == 0,
        nilpotent=is_nilpotent_rep(rep),
    )


def _coords_json(x: Sequence[Fraction]) -> list[str]:
    return [str(frac(v)) for v in x]


def _check_rep_budget(rep: Representation, config: EngineConfig) -> None:
    if rep.space_dim > config.dimension_budget:
        raise BudgetExceeded(
            f"representation space of dimension {rep.space_dim} exceeds budget {config.dimension_budget}"
        )


def _kernel_witness(rep: Representation, z: Sequence[Fraction], x: Sequence[Fraction]) -> int | None:
    """Index of the first canonical basis vector of Ker rho(z) that rho(x)
    does not kill, or None when Ker rho(z) <= Ker rho(x)."""
    mx = element_action(rep, x)
    for idx, v in enumerate(kernel_basis(element_action(rep, z)).basis_vectors()):
        if not vec_is_zero(mx.apply(v)):
            return idx
    return None


def _distinguish(
    rho0: Representation,
    z: Sequence[Fraction],
    x: Sequence[Fraction],
    config: EngineConfig,
) -> tuple[Representation, int, int]:
    """Search rho0, rho0^(x)2, ... for Ker rho(z) not contained in Ker rho(x).

    Returns (representation, tensor power, witness index into the canonical
    kernel basis of rho(z)).  The family of tensor powers of a faithful
    nilpotent representation is closed under tensoring and contains a
    faithful member, which is exactly what makes some finite power succeed;
    the budgets turn "finite" into an explicit failure mode instead of an
    unbounded run.
    """
    pair = RationalMatrix.from_columns(rho0.algebra.dim, [tuple(z), tuple(x)])
    if rank(pair) != 2:
        raise NotLinearlyIndependent("z and x must be linearly independent")
    rho = rho0
    for power in range(1, config.max_tensor_power + 1):
        witness = _kernel_witness(rho, z, x)
        if witness is not None:
            return rho, power, witness
        if power == config.max_tensor_power:
            break
        next_dim = rho.space_dim * rho0.space_dim
        if next_dim > config.dimension_budget:
            raise TensorBudgetExceeded(
                f"tensor power {power + 1} needs dimension {next_dim} > budget {config.dimension_budget}"
            )
        rho = tensor_product(rho, rho0)
    raise TensorBudgetExceeded(
        f"no kernel witness within tensor power {config.max_tensor_power}"
    )


def distinguish_by_kernels(
    rho0: Representation,
    z: Sequence[Fraction],
    x: Sequence[Fraction],
    config: EngineConfig | None = None,
) -> Representation:
    """A tensor power of rho0 whose z-action kernel is not inside the
    x-action kernel.  rho0 must be faithful and nilpotent (the engine
    guarantees this for its own calls)."""
    rep, _, _ = _distinguish(rho0, z, x, config or EngineConfig())
    return rep


def _glue_traced(algebra: LieAlgebra, separator: Separator) -> tuple[Representation, dict]:
    if algebra.dim == 0:
        empty = Representation(algebra, 0, [])
        return empty, {"algebra_dim": 0, "summand_dims": [], "kernel_dims": []}
    x1 = unit_vector(algebra.dim, 0)
    rho = separator(x1)
    if element_action(rho, x1).is_zero():
        raise SeparatorFailed("separator returned a representation vanishing on its element")
    kernel = rep_kernel(rho)
    summands = [rho.space_dim]
    kernels = [kernel.dim]
    while kernel.dim > 0:
        x = kernel.basis_vectors()[0]
        rho_x = separator(x)
        if element_action(rho_x, x).is_zero():
            raise SeparatorFailed("separator returned a representation vanishing on its element")
        rho = direct_sum(rho, rho_x)
        new_kernel = rep_kernel(rho)
        assert new_kernel.dim < kernel.dim, "glue kernel descent must be strict"
        kernel = new_kernel
        summands.append(rho_x.space_dim)
        kernels.append(kernel.dim)
    assert len(summands) <= algebra.dim, "gluing must finish within dim L iterations"
    return rho, {"algebra_dim": algebra.dim, "summand_dims": summands, "kernel_dims": kernels}


def glue_local(algebra: LieAlgebra, separator: Separator) -> Representation:
    """Assemble a faithful nilpotent representation from a separator that
    maps any nonzero x to a nilpotent representation with rho_x(x) != 0.

    Starts from the first basis vector and keeps direct-summing away the
    first canonical kernel vector; the kernel dimension drops strictly every
    iteration, so at most dim L summands appear.
    """
    rep, _ = _glue_traced(algebra, separator)
    return rep


def _graded_cert_fields(algebra: LieAlgebra, rep: Representation) -> dict:
    levels = algebra.grading.max_degree
    current_dim = algebra.dim * levels
    return {
        "current_dim": current_dim,
        "cocycle_dim": rep.space_dim - current_dim,
        "rep_dim": rep.space_dim,
    }


def _flag_generator(upper: Subspace, lower: Subspace) -> Sequence[Fraction]:
    for v in upper.basis_vectors():
        if not lower.contains_vector(v):
            return v
    raise AssertionError("strictly larger ideal must contain a new basis vector")


def _induction_pipeline(
    algebra: LieAlgebra, config: EngineConfig, cert: Certificate
) -> Representation:
    pres = present(algebra, config.free_dimension_budget)
    cert.add(
        "presented",
        free_rank=sum(1 for d in pres.F.grading.degrees if d == 1),
        free_dim=pres.F.dim,
        kernel_dim=pres.I.dim,
        nil_class=pres.F.grading.max_degree,
    )
    rho = free_nilpotent_faithful_rep(pres.F)
    _check_rep_budget(rho, config)
    cert.add("graded_pipeline", **_graded_cert_fields(pres.F, rho))

    descending = [pres.I]
    while descending[-1].dim > 0:
        descending.append(codim1_refinement(pres.F, descending[-1]))
    flag = list(reversed(descending))  # 0 = J_0 < J_1 < ... < J_m = I

    current = pres.F
    proj = identity_hom(pres.F)
    for k in range(len(flag) - 1):
        g = _flag_generator(flag[k + 1], flag[k])
        z = proj.apply(g)
        assert not vec_is_zero(z), "flag generator must survive the projection"
        for i in range(current.dim):
            if not vec_is_zero(current.bracket(unit_vector(current.dim, i), z)):
                raise AssertionError("flag image must be central in the current quotient")
        cert.add("flag_step", index=k, z=_coords_json(z))
        z_line = Subspace.from_vectors(current.dim, [z])
        quo, p = quotient(current, z_line)
        adj = adjoint(quo)

        def separator(x, _s=current, _rho=rho, _z=z, _p=p, _quo=quo, _adj=adj):
            if not element_action(_adj, x).is_zero():
                return _adj
            lift = solve(_p.matrix, x)
            assert lift is not None, "quotient projection must be surjective"
            rep_big, power, witness = _distinguish(_rho, _z, lift, config)
            cert.add(
                "kernel_search",
                element=_coords_json(x),
                tensor_power=power,
                rep_dim=rep_big.space_dim,
            )
            carrier, induced = kernel_submodule(rep_big, _z)
            assert induced.algebra.structurally_equal(_quo)
            induced = Representation(_quo, induced.space_dim, induced.matrices)
            assert is_nilpotent_rep(induced)
            compressed_dim = None
            if config.compress:
                induced = cyclic_submodule(induced, unit_vector(carrier.dim, witness))
                compressed_dim = induced.space_dim
            cert.add(
                "kernel_submodule",
                carrier_dim=carrier.dim,
                compressed_dim=compressed_dim,
            )
            return induced

        rho, trace = _glue_traced(quo, separator)
        cert.add("glue", **trace)
        current = quo
        proj = p.compose(proj)

    # Transport the representation of F/I back onto L along the canonical
    # isomorphism induced by the presentation.
    lift_cols = []
    for j in range(current.dim):
        lift = solve(proj.matrix, unit_vector(current.dim, j))
        assert lift is not None
        lift_cols.append(pres.pi.apply(lift))
    psi = RationalMatrix.from_columns(algebra.dim, lift_cols)
    inv = solve_multi(psi, RationalMatrix.identity(algebra.dim))
    assert inv is not None, "presentation quotient must be isomorphic to the input"
    iso = LieHom(algebra, current, inv)
    return restrict_along(rho, iso)


def construct_faithful_nilpotent(
    algebra: LieAlgebra, config: EngineConfig | None = None
) -> tuple[Representation, Certificate]:
    """Faithful nilpotent representation plus a replayable certificate."""
    config = config or EngineConfig()
    report = validate(algebra)
    if not report.ok:
        raise ValueError("input algebra fails validation; run validate() for details")
    nilpotency_class(algebra)  # raises NotNilpotent otherwise
    cert = Certificate(config=config.as_dict())
    graded_ok = algebra.grading is not None and verify_grading(algebra)
    if config.method == "graded" and not graded_ok:
        raise InvalidGrading("method=graded requires a valid grading on the input")
    if algebra.dim == 0:
        rep = Representation(algebra, 0, [])
        cert.add("verified", homomorphism=True, faithful=True, nilpotent=True)
        return rep, cert
    if config.method == "graded" or (config.method == "auto" and graded_ok):
        rep = graded_faithful_rep(algebra)
        _check_rep_budget(rep, config)
        cert.add("graded_pipeline", **_graded_cert_fields(algebra, rep))
    else:
        rep = _induction_pipeline(algebra, config, cert)
    outcome = verify_output(algebra, rep)
    assert outcome.ok, f"construction failed verification: {outcome.failing()}"
    cert.add("verified", homomorphism=True, faithful=True, nilpotent=True)
    return rep, cert


def replay_certificate(algebra: LieAlgebra, cert: Certificate) -> tuple[Representation, Certificate]:
    """Re-run the construction under the certificate's recorded configuration
    and check that every step reproduces; returns the rebuilt representation."""
    config = EngineConfig(**cert.config)
    rep, fresh = construct_faithful_nilpotent(algebra, config)
    if fresh.steps != cert.steps:
        raise ValueError("certificate does not replay: step log diverged")
    return rep, fresh
