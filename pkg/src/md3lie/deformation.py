"""Linear deformations and the operators that generate or trivialize them.

Deformed structures are the truncated polynomials nu_t = nu0 + t nu1 + t^2 nu2
and d_t = d0 + t d1; every identity is enforced coefficient by coefficient at
all t-orders the polynomial data can produce (bracket orders 0..4, the
deformed-pair compatibility orders 0..3, equivalence orders 0..5 and 0..2).

Trivial deformations carry d1 = 0: the trivializing family intertwines the
undeformed differential on both sides, which forces the linear part of d_t to
vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from .cohomology import ComplexAssembly, TotalCochain
from .errors import InputError
from .exactnum import Matrix, unit, vec_add, vec_scale, vec_sub, vec_zero
from .multilin import (
    CochainCoordinates, SkewTernaryTensor, embed_skew_trilinear, pair_basis,
)
from .structures import (
    MD3LieAlgebra, Report, Representation, ThreeLieAlgebra, Violation,
    adjoint_representation,
)


@dataclass(frozen=True)
class LinearDeformation:
    """Deformation data (nu1, nu2, d1) over a fixed base."""

    base: MD3LieAlgebra
    nu1: SkewTernaryTensor
    nu2: SkewTernaryTensor
    d1: Matrix

    def __post_init__(self):
        n = self.base.n
        for t in (self.nu1, self.nu2):
            if t.dim_in != n or t.dim_out != n:
                raise InputError("deformation tensor shape mismatch")
        if self.d1.rows != n or self.d1.cols != n:
            raise InputError("deformation differential shape mismatch")

    @classmethod
    def zero(cls, base: MD3LieAlgebra) -> "LinearDeformation":
        n = base.n
        return cls(base, SkewTernaryTensor.zero(n, n),
                   SkewTernaryTensor.zero(n, n), Matrix.zeros(n, n))

    @property
    def is_zero(self) -> bool:
        return self.nu1.is_zero and self.nu2.is_zero and self.d1.is_zero


def verify_linear_deformation(ld: LinearDeformation) -> Report:
    """Order-by-order check of the deformed axioms on basis tuples.

    Order 0 reproduces the base axioms, so an invalid base shows up here as
    order-0 violations."""
    n = ld.base.n
    nus = (ld.base.algebra.bracket, ld.nu1, ld.nu2)
    ds = (ld.base.d, ld.d1)
    lam = ld.base.lam
    violations = []
    units = [unit(n, i) for i in range(n)]

    for order in range(5):
        terms = [(i, order - i) for i in range(3) if 0 <= order - i <= 2]
        for i1, i2 in pair_basis(n):
            for t3 in combinations(range(n), 3):
                lhs = [Fraction(0)] * n
                rhs = [Fraction(0)] * n
                for i, j in terms:
                    inner = nus[j].basis_value(*t3)
                    lhs = vec_add(lhs, nus[i](units[i1], units[i2], inner))
                    w3 = nus[j].basis_value(i1, i2, t3[0])
                    w4 = nus[j].basis_value(i1, i2, t3[1])
                    w5 = nus[j].basis_value(i1, i2, t3[2])
                    rhs = vec_add(rhs, nus[i](w3, units[t3[1]], units[t3[2]]))
                    rhs = vec_add(rhs, nus[i](units[t3[0]], w4, units[t3[2]]))
                    rhs = vec_add(rhs, nus[i](units[t3[0]], units[t3[1]], w5))
                if lhs != rhs:
                    violations.append(Violation(
                        f"bracket identity at order {order}",
                        (i1, i2) + t3, tuple(lhs), tuple(rhs)))

    for order in range(4):
        terms = [(i, order - i) for i in range(3) if 0 <= order - i <= 1]
        for triple in combinations(range(n), 3):
            lhs = [Fraction(0)] * n
            rhs = [Fraction(0)] * n
            for i, l in terms:
                lhs = vec_add(lhs, ds[l].apply(nus[i].basis_value(*triple)))
                a, b, c = triple
                rhs = vec_add(rhs, nus[i](ds[l].column(a), units[b], units[c]))
                rhs = vec_add(rhs, nus[i](units[a], ds[l].column(b), units[c]))
                rhs = vec_add(rhs, nus[i](units[a], units[b], ds[l].column(c)))
            if order <= 2:
                rhs = vec_add(rhs, vec_scale(lam, nus[order].basis_value(*triple)))
            if tuple(lhs) != tuple(rhs):
                violations.append(Violation(
                    f"differential rule at order {order}",
                    triple, tuple(lhs), tuple(rhs)))
    return Report.from_violations(violations)


def infinitesimal(ld: LinearDeformation) -> TotalCochain:
    """The degree-2 cochain (nu1, d1) attached to a deformation.

    For a valid deformation this is a cocycle in the complex with adjoint
    coefficients."""
    return TotalCochain(
        2, embed_skew_trilinear(ld.nu1),
        CochainCoordinates.from_linear_map(ld.d1))


def adjoint_complex(md: MD3LieAlgebra) -> ComplexAssembly:
    return ComplexAssembly(md, adjoint_representation(md))


def check_equivalence(ld: LinearDeformation, ld2: LinearDeformation,
                      N: Matrix) -> bool:
    """Whether id + tN intertwines the two deformed structures identically in t.

    The bracket side is compared at orders 0..5 and the differential side at
    orders 0..2: every order the polynomial data can produce."""
    if ld.base != ld2.base:
        raise InputError("deformations live over different bases")
    n = ld.base.n
    if N.rows != n or N.cols != n:
        raise InputError("equivalence map shape mismatch")
    d0 = ld.base.d
    # differential side: N_t d_t = d'_t N_t
    if N @ d0 + ld.d1 != d0 @ N + ld2.d1:
        return False
    if N @ ld.d1 != ld2.d1 @ N:
        return False

    nus = (ld.base.algebra.bracket, ld.nu1, ld.nu2)
    nus2 = (ld.base.algebra.bracket, ld2.nu1, ld2.nu2)
    units = [unit(n, i) for i in range(n)]
    ncols = [N.column(i) for i in range(n)]
    for a, b, c in combinations(range(n), 3):
        lhs = [vec_zero(n) for _ in range(6)]
        v = [nus[i].basis_value(a, b, c) for i in range(3)]
        lhs[0] = v[0]
        lhs[1] = vec_add(v[1], N.apply(v[0]))
        lhs[2] = vec_add(v[2], N.apply(v[1]))
        lhs[3] = N.apply(v[2])
        rhs = [vec_zero(n) for _ in range(6)]
        args = {0: (units[a], units[b], units[c]),
                1: (ncols[a], ncols[b], ncols[c])}
        for j in range(3):
            for alpha, beta, gamma in product((0, 1), repeat=3):
                order = j + alpha + beta + gamma
                val = nus2[j](args[alpha][0], args[beta][1], args[gamma][2])
                rhs[order] = vec_add(rhs[order], val)
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class NijenhuisOperator:
    """Operator generating a trivial deformation; validated on construction."""

    md: MD3LieAlgebra
    N: Matrix

    def __post_init__(self):
        report = is_nijenhuis(self.md, self.N)
        if not report.valid:
            raise InputError("operator fails the Nijenhuis conditions")


def is_nijenhuis(md: MD3LieAlgebra, N: Matrix) -> Report:
    """Differential commutation plus the cubic compatibility identity."""
    n = md.n
    if N.rows != n or N.cols != n:
        raise InputError("operator shape mismatch")
    violations = []
    if N @ md.d != md.d @ N:
        violations.append(Violation(
            "differential commutation", (), N @ md.d, md.d @ N))
    br = md.algebra.bracket
    units = [unit(n, i) for i in range(n)]
    ncols = [N.column(i) for i in range(n)]
    N2 = N @ N
    N3 = N2 @ N
    for a, b, c in combinations(range(n), 3):
        lhs = br(ncols[a], ncols[b], ncols[c])
        once = vec_add(
            vec_add(br(units[a], ncols[b], ncols[c]),
                    br(ncols[a], units[b], ncols[c])),
            br(ncols[a], ncols[b], units[c]))
        twice = vec_add(
            vec_add(br(ncols[a], units[b], units[c]),
                    br(units[a], ncols[b], units[c])),
            br(units[a], units[b], ncols[c]))
        rhs = vec_add(
            vec_sub(N.apply(once), N2.apply(twice)),
            N3.apply(br.basis_value(a, b, c)))
        if lhs != rhs:
            violations.append(Violation("Nijenhuis identity", (a, b, c), lhs, rhs))
    return Report.from_violations(violations)


def _as_nijenhuis(md: MD3LieAlgebra, N) -> NijenhuisOperator:
    if isinstance(N, NijenhuisOperator):
        if N.md != md:
            raise InputError("operator belongs to a different algebra")
        return N
    return NijenhuisOperator(md, N)


def nijenhuis_deformed_algebra(md: MD3LieAlgebra, N) -> MD3LieAlgebra:
    """The deformed bracket of a Nijenhuis operator, with the same d and weight."""
    nij = _as_nijenhuis(md, N)
    N = nij.N
    n = md.n
    br = md.algebra.bracket
    units = [unit(n, i) for i in range(n)]
    ncols = [N.column(i) for i in range(n)]
    N2 = N @ N

    def deformed(a, b, c):
        once = vec_add(
            vec_add(br(units[a], ncols[b], ncols[c]),
                    br(ncols[a], units[b], ncols[c])),
            br(ncols[a], ncols[b], units[c]))
        twice = vec_add(
            vec_add(br(ncols[a], units[b], units[c]),
                    br(units[a], ncols[b], units[c])),
            br(units[a], units[b], ncols[c]))
        return vec_add(vec_sub(once, N.apply(twice)),
                       N2.apply(br.basis_value(a, b, c)))

    tensor = SkewTernaryTensor.from_function(n, n, deformed)
    return MD3LieAlgebra(ThreeLieAlgebra(n, tensor), md.diff)


def trivial_deformation_from_nijenhuis(md: MD3LieAlgebra, N) -> LinearDeformation:
    """The trivial deformation generated by a Nijenhuis operator (d1 = 0).

    nu1 absorbs the operator once, nu2 twice; the cubic closure
    N nu2 = [N-, N-, N-] is re-checked here as an internal invariant."""
    nij = _as_nijenhuis(md, N)
    N = nij.N
    n = md.n
    br = md.algebra.bracket
    units = [unit(n, i) for i in range(n)]
    ncols = [N.column(i) for i in range(n)]

    def nu1_fn(a, b, c):
        return vec_sub(
            vec_add(vec_add(br(ncols[a], units[b], units[c]),
                            br(units[a], ncols[b], units[c])),
                    br(units[a], units[b], ncols[c])),
            N.apply(br.basis_value(a, b, c)))

    nu1 = SkewTernaryTensor.from_function(n, n, nu1_fn)

    def nu2_fn(a, b, c):
        return vec_sub(
            vec_add(vec_add(br(ncols[a], ncols[b], units[c]),
                            br(units[a], ncols[b], ncols[c])),
                    br(ncols[a], units[b], ncols[c])),
            N.apply(nu1.basis_value(a, b, c)))

    nu2 = SkewTernaryTensor.from_function(n, n, nu2_fn)
    for a, b, c in combinations(range(n), 3):
        if N.apply(nu2.basis_value(a, b, c)) != br(ncols[a], ncols[b], ncols[c]):
            raise RuntimeError("cubic closure failed for a validated operator")
    return LinearDeformation(md, nu1, nu2, Matrix.zeros(n, n))


@dataclass(frozen=True)
class OOperator:
    """Module-to-algebra operator satisfying the relative conditions."""

    md: MD3LieAlgebra
    rep: Representation
    R: Matrix

    def __post_init__(self):
        report = is_o_operator(self.md, self.rep, self.R)
        if not report.valid:
            raise InputError("operator fails the relative operator conditions")


def is_o_operator(md: MD3LieAlgebra, rep: Representation, R: Matrix) -> Report:
    """Relative operator conditions for a module-to-algebra map."""
    n, m = md.n, rep.m
    if R.rows != n or R.cols != m:
        raise InputError(f"operator must be {n}x{m}")
    violations = []
    if R @ rep.d_M != md.d @ R:
        violations.append(Violation(
            "differential intertwining", (), R @ rep.d_M, md.d @ R))
    br = md.algebra.bracket
    units = [unit(m, i) for i in range(m)]
    rcols = [R.column(i) for i in range(m)]
    for a, b, c in combinations(range(m), 3):
        lhs = br(rcols[a], rcols[b], rcols[c])
        inner = vec_add(
            vec_add(rep.rho_vec(rcols[a], rcols[b]).apply(units[c]),
                    rep.rho_vec(rcols[b], rcols[c]).apply(units[a])),
            rep.rho_vec(rcols[c], rcols[a]).apply(units[b]))
        rhs = R.apply(inner)
        if lhs != rhs:
            violations.append(Violation(
                "relative bracket condition", (a, b, c), lhs, rhs))
    return Report.from_violations(violations)


def o_operator_lift(md: MD3LieAlgebra, rep: Representation, R: Matrix) -> Matrix:
    """Strictly triangular lift to the semidirect-product carrier.

    The lift squares to zero, and it is a Nijenhuis operator on the
    semidirect product exactly when R satisfies the relative conditions."""
    n, m = md.n, rep.m
    if R.rows != n or R.cols != m:
        raise InputError(f"operator must be {n}x{m}")
    return Matrix.block([
        [Matrix.zeros(n, n), R],
        [Matrix.zeros(m, n), Matrix.zeros(m, m)],
    ])


def inverse_cocycle_check(md: MD3LieAlgebra, rep: Representation,
                          R: Matrix) -> bool:
    """Whether the inverse of R is a degree-1 cocycle; matches is_o_operator.

    Requires an invertible R between spaces of equal dimension."""
    if rep.m != md.n:
        raise InputError("inverse check needs module dimension equal to the algebra")
    if R.rows != md.n or R.cols != rep.m:
        raise InputError("operator shape mismatch")
    inv = R.inverse()  # raises InputError when singular
    asm = ComplexAssembly(md, rep)
    tc = TotalCochain(1, CochainCoordinates.from_linear_map(inv), None)
    return asm.is_cocycle(tc).valid
