"""Algebra declarations, their classical preconditions, and derived structure.

An `AlgebraSpec` declares a semidirect sum of two Abelian Lie algebras: an
m-dimensional commutative H part acting on itself trivially, an n-dimensional
commutative X part, and the mixed bracket ``[H_j, X_mu] = B^i_{j,mu} H_i``.
Together with an invertible matrix ``r`` pairing the two parts it determines
the deformed enveloping algebra whose bracket table and coproduct matrices
are built here.  Three presets cover the instances of interest: the six
generator null-plane deformation of the 3+1 Poincare algebra, the rank-one
Borel (Jordanian) case, and the shift-ring family.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import linalg
from .algebra import (
    Algebra,
    Monomial,
    SeriesMatrix,
    expm1_over_t_coefficients,
    series_apply,
)
from .errors import (
    DegenerateRMatrixError,
    NoValidXiError,
    ShapeError,
    SingularMatrixError,
    SpecError,
)

Q = Fraction


def _freeze_tensor(value, shape, path):
    """Coerce nested sequences of rationals to nested tuples of Fractions."""
    if not shape:
        try:
            return Q(value)
        except (TypeError, ValueError) as exc:
            raise SpecError(f"not a rational: {value!r}", field=path) from exc
    if not isinstance(value, (list, tuple)) or len(value) != shape[0]:
        raise SpecError(f"expected a sequence of length {shape[0]}", field=path)
    return tuple(
        _freeze_tensor(v, shape[1:], f"{path}[{i}]") for i, v in enumerate(value)
    )


@dataclass(frozen=True)
class AlgebraSpec:
    """Declaration of one quasi-Abelian algebra, with truncation order.

    B is indexed ``B[i][j][mu]``: the H_i coefficient of [H_j, X_mu].
    r is indexed ``r[i][mu]``.  xi, when present, selects the classical
    basis transform.
    """

    name: str
    m: int
    n: int
    B: tuple
    r: tuple
    xi: Optional[tuple] = None
    order: int = 4
    h_names: tuple = ()
    x_names: tuple = ()
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise SpecError("dimensions must be positive")
        if self.order < 0:
            raise SpecError("truncation order must be non-negative")
        object.__setattr__(
            self, "B", _freeze_tensor(self.B, (self.m, self.m, self.n), "B")
        )
        object.__setattr__(self, "r", _freeze_tensor(self.r, (self.m, self.n), "r"))
        if self.xi is not None:
            object.__setattr__(self, "xi", _freeze_tensor(self.xi, (self.n,), "xi"))
        h_names = tuple(self.h_names) or tuple(f"H{i+1}" for i in range(self.m))
        x_names = tuple(self.x_names) or tuple(f"X{i+1}" for i in range(self.n))
        if len(h_names) != self.m or len(x_names) != self.n:
            raise SpecError("generator name lists must match the dimensions")
        if len(set(h_names) | set(x_names)) != self.m + self.n:
            raise SpecError("generator names must be distinct")
        object.__setattr__(self, "h_names", h_names)
        object.__setattr__(self, "x_names", x_names)

    def with_order(self, order):
        return dataclasses.replace(self, order=order)

    def generator_names(self):
        return self.h_names + self.x_names


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    witness: Optional[str] = None


@dataclass(frozen=True)
class ValidationReport:
    spec_name: str
    checks: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.checks)


@dataclass(frozen=True, eq=False)
class DerivedStructure:
    """Everything computed from a valid spec.

    alpha_up[i] is the n-by-n matrix coupling H_i into the coproduct of the
    X generators; alpha_low re-expresses the family through the inverse of
    r, and carries one matrix per X index.  The bracket table lists
    [H_j, X_mu] as truncated pure-H series; its power-zero slice is B.
    """

    spec: AlgebraSpec
    alpha_up: tuple
    r_low: tuple
    alpha_low: tuple
    beta: tuple
    algebra: Algebra

    def bracket(self, j, mu):
        return self.algebra.bracket(j, mu)

    def alpha_h_matrix(self):
        """The matrix sum_i alpha_up[i] * h*H_i with entries in the algebra."""
        alg = self.algebra
        rows = []
        for muu in range(self.spec.n):
            row = []
            for nu in range(self.spec.n):
                terms = {}
                for i in range(self.spec.m):
                    c = self.alpha_up[i][muu][nu]
                    if c:
                        key = (1, Monomial.h_gen(self.spec.m, self.spec.n, i))
                        terms[key] = terms.get(key, Q(0)) + c
                row.append(alg.element(terms))
            rows.append(row)
        return SeriesMatrix(rows)


def _compute_alpha_up(spec):
    m, n = spec.m, spec.n
    return tuple(
        tuple(
            tuple(
                sum((Q(spec.r[j][muu]) * spec.B[i][j][nu] for j in range(m)), Q(0)) / 2
                for nu in range(n)
            )
            for muu in range(n)
        )
        for i in range(m)
    )


def _beta_matrices(spec):
    return tuple(
        tuple(tuple(spec.B[i][j][mu] for j in range(spec.m)) for i in range(spec.m))
        for mu in range(spec.n)
    )


def _r_low(spec):
    """r with lowered indices: the transpose of the inverse of r."""
    inv = linalg.inverse([list(row) for row in spec.r])
    return tuple(tuple(inv[mu][i] for mu in range(spec.n)) for i in range(spec.m))


def _mat_commute(a, b):
    size = len(a)
    for i in range(size):
        for j in range(size):
            ab = sum((a[i][k] * b[k][j] for k in range(size)), Q(0))
            ba = sum((b[i][k] * a[k][j] for k in range(size)), Q(0))
            if ab != ba:
                return (i, j)
    return None


def classical_algebra(spec):
    """The undeformed enveloping algebra: bracket table pinned at power zero."""
    table = {}
    for j in range(spec.m):
        for mu in range(spec.n):
            entry = {}
            for i in range(spec.m):
                c = spec.B[i][j][mu]
                if c:
                    entry[(0, Monomial.h_gen(spec.m, spec.n, i))] = c
            table[(j, mu)] = entry
    return Algebra(spec.m, spec.n, spec.order, table)


def derive_alpha(spec):
    """Derive the coupling matrices and the deformed bracket table.

    Requires the Jacobi identity (commuting beta matrices) and invertible r;
    raises SpecError or DegenerateRMatrixError otherwise.
    """
    beta = _beta_matrices(spec)
    for mu in range(spec.n):
        for nu in range(mu + 1, spec.n):
            bad = _mat_commute(beta[mu], beta[nu])
            if bad is not None:
                raise SpecError(
                    f"Jacobi identity fails: beta[{mu}] and beta[{nu}] "
                    f"do not commute at entry {bad}"
                )
    if spec.m != spec.n:
        raise DegenerateRMatrixError(
            "r must be square and invertible; only non-degenerate pairings "
            "are supported"
        )
    try:
        r_low = _r_low(spec)
    except SingularMatrixError as exc:
        raise DegenerateRMatrixError(
            "r is singular; restrict the declaration to the subalgebra on "
            "which r is invertible before quantizing"
        ) from exc
    alpha_up = _compute_alpha_up(spec)
    alpha_low = tuple(
        tuple(
            tuple(
                sum(
                    (r_low[i][muu] * alpha_up[i][rho][nu] for i in range(spec.m)),
                    Q(0),
                )
                for nu in range(spec.n)
            )
            for rho in range(spec.n)
        )
        for muu in range(spec.n)
    )
    # Build [H_j, X_mu] = sum_nu f(2 alpha.H)^nu_mu B^i_{j,nu} H_i with
    # f(t) = (e^t - 1)/t, in a scratch copy of the Abelian algebra (the
    # series is pure-H, so no bracket is ever consulted while building it).
    scratch = Algebra(spec.m, spec.n, spec.order, {})
    rows = []
    for muu in range(spec.n):
        row = []
        for nu in range(spec.n):
            terms = {}
            for i in range(spec.m):
                c = alpha_up[i][muu][nu]
                if c:
                    terms[(1, Monomial.h_gen(spec.m, spec.n, i))] = c
            row.append(scratch.element(terms))
        rows.append(row)
    alpha_h = SeriesMatrix(rows)
    f_matrix = series_apply(expm1_over_t_coefficients(spec.order), alpha_h.scale(2))
    table = {}
    for j in range(spec.m):
        for mu in range(spec.n):
            acc = scratch.zero()
            for nu in range(spec.n):
                entry = f_matrix.entry(nu, mu)
                if entry.is_zero():
                    continue
                for i in range(spec.m):
                    c = spec.B[i][j][nu]
                    if c:
                        acc = acc + (entry * scratch.h(i)).scale(c)
            table[(j, mu)] = dict(acc.terms)
    algebra = Algebra(spec.m, spec.n, spec.order, table)
    return DerivedStructure(
        spec=spec,
        alpha_up=alpha_up,
        r_low=r_low,
        alpha_low=alpha_low,
        beta=beta,
        algebra=algebra,
    )


def cybe_residual(spec):
    """Residual of the classical Yang-Baxter equation for r.

    Computes [[r, r]] = [r12, r13] + [r12, r23] + [r13, r23] in the third
    tensor power of the undeformed algebra, every term at deformation
    power zero.
    """
    alg = classical_algebra(spec)
    two = alg.tensor_zero(2)
    for i in range(spec.m):
        for mu in range(spec.n):
            c = spec.r[i][mu]
            if not c:
                continue
            two = two + alg.outer(alg.x(mu), alg.h(i)).scale(c)
            two = two - alg.outer(alg.h(i), alg.x(mu)).scale(c)
    r12 = two.embed(3, (0, 1))
    r13 = two.embed(3, (0, 2))
    r23 = two.embed(3, (1, 2))

    def comm(a, b):
        return a * b - b * a

    return comm(r12, r13) + comm(r12, r23) + comm(r13, r23)


def validate_spec(spec):
    """Run the classical precondition checks in a fixed order."""
    checks = []
    beta = _beta_matrices(spec)
    bad = None
    for mu in range(spec.n):
        for nu in range(mu + 1, spec.n):
            hit = _mat_commute(beta[mu], beta[nu])
            if hit is not None:
                bad = (mu, nu, hit)
                break
        if bad:
            break
    checks.append(
        ValidationCheck(
            "jacobi",
            bad is None,
            None
            if bad is None
            else f"beta[{bad[0]}] and beta[{bad[1]}] disagree at entry {bad[2]}",
        )
    )

    r_low = None
    r_witness = None
    if spec.m != spec.n:
        r_witness = f"r is {spec.m}x{spec.n}, not square"
    else:
        try:
            r_low = _r_low(spec)
        except SingularMatrixError:
            r_witness = "r is singular"
    checks.append(ValidationCheck("invertible-r", r_witness is None, r_witness))

    alpha_up = _compute_alpha_up(spec)
    bad = None
    for i in range(spec.m):
        for j in range(spec.m):
            for k in range(spec.m):
                for nu in range(spec.n):
                    lhs = sum(
                        (alpha_up[i][mu][nu] * spec.B[j][k][mu] for mu in range(spec.n)),
                        Q(0),
                    )
                    rhs = sum(
                        (alpha_up[j][mu][nu] * spec.B[i][k][mu] for mu in range(spec.n)),
                        Q(0),
                    )
                    if lhs != rhs:
                        bad = (i, j, k, nu)
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    checks.append(
        ValidationCheck(
            "consistency",
            bad is None,
            None if bad is None else f"indices (i,j,k,nu)={bad}",
        )
    )

    bad = None
    for i in range(spec.m):
        for j in range(i + 1, spec.m):
            hit = _mat_commute(alpha_up[i], alpha_up[j])
            if hit is not None:
                bad = (i, j, hit)
                break
        if bad:
            break
    checks.append(
        ValidationCheck(
            "alpha-commute",
            bad is None,
            None
            if bad is None
            else f"alpha[{bad[0]}] and alpha[{bad[1]}] disagree at entry {bad[2]}",
        )
    )

    if r_low is None:
        checks.append(
            ValidationCheck(
                "alpha-symmetry", False, "needs invertible r to lower indices"
            )
        )
    else:
        alpha_low = [
            [
                [
                    sum(
                        (r_low[i][muu] * alpha_up[i][rho][nu] for i in range(spec.m)),
                        Q(0),
                    )
                    for nu in range(spec.n)
                ]
                for rho in range(spec.n)
            ]
            for muu in range(spec.n)
        ]
        bad = None
        for rho in range(spec.n):
            for muu in range(spec.n):
                for nu in range(muu + 1, spec.n):
                    if alpha_low[muu][rho][nu] != alpha_low[nu][rho][muu]:
                        bad = (rho, muu, nu)
                        break
                if bad:
                    break
            if bad:
                break
        checks.append(
            ValidationCheck(
                "alpha-symmetry",
                bad is None,
                None if bad is None else f"indices (rho,mu,nu)={bad}",
            )
        )

    residual = cybe_residual(spec)
    witness = None
    if not residual.is_zero():
        key = min(residual.terms)
        witness = f"first surviving term at key {key}"
    checks.append(ValidationCheck("cybe", residual.is_zero(), witness))

    return ValidationReport(spec.name, tuple(checks))


def _stacked_alpha_low(spec, alpha_low):
    rows = []
    for muu in range(spec.n):
        for nu in range(spec.n):
            rows.append([alpha_low[sigma][muu][nu] for sigma in range(spec.n)])
    return rows


def h_prime_rank(spec):
    """Dimension of the subspace of H reached by brackets with X.

    Returns (rank, witness): when the rank falls short of m the witness is a
    coefficient vector for a central element lying in the X part.
    """
    derived = derive_alpha(spec)
    stacked = _stacked_alpha_low(spec, derived.alpha_low)
    rank = linalg.rank(stacked)
    if rank >= spec.m:
        return rank, None
    kernel = linalg.nullspace(stacked)
    return rank, tuple(kernel[0]) if kernel else None


def choose_xi(spec):
    """Pick the coefficient vector for the classical basis transform.

    Returns the declared xi when present.  Otherwise scans scaled canonical
    basis vectors (scales 1 and 1/2, index-major) and returns the first one
    whose induced first-order map has full rank.
    """
    if spec.xi is not None:
        return spec.xi
    derived = derive_alpha(spec)
    for idx in range(spec.n):
        for scale in (Q(1), Q(1, 2)):
            cols = []
            for sigma in range(spec.n):
                cols.append(
                    [scale * derived.alpha_low[sigma][muu][idx] for muu in range(spec.n)]
                )
            mat = [[cols[sigma][muu] for sigma in range(spec.n)] for muu in range(spec.n)]
            if linalg.rank(mat) == spec.m:
                return tuple(
                    scale if nu == idx else Q(0) for nu in range(spec.n)
                )
    rank, witness = h_prime_rank(spec)
    raise NoValidXiError(
        f"no scaled basis vector yields a full-rank classical basis "
        f"(reachable rank {rank} < {spec.m})",
        center_witness=witness,
    )


# -- presets -------------------------------------------------------------------


def _poincare_spec():
    # coupling matrices in the lifted basis (r = identity)
    a1 = [[0, 0, 1], [0, 0, 0], [0, 0, 0]]
    a2 = [[0, 0, 0], [0, 0, 1], [0, 0, 0]]
    a3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    alpha = [a1, a2, a3]
    B = [
        [[2 * alpha[i][j][mu] for mu in range(3)] for j in range(3)]
        for i in range(3)
    ]
    r = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    return AlgebraSpec(
        name="poincare-null-plane",
        m=3,
        n=3,
        B=B,
        r=r,
        xi=(0, 0, Q(1, 2)),
        order=4,
        h_names=("H1", "H2", "H3"),
        x_names=("X1", "X2", "X3"),
        metadata={
            "family": "null-plane",
            "physical-generators": (
                "H1=-z*E1, H2=-z*E2, H3=-z*P+, Y1=2*P1, Y2=2*P2, Y3=-2*K3"
            ),
            "deformation-scale": "z=1",
        },
    )


def _jordanian_spec():
    # rank-one Borel case; convention pinned by the classical bracket
    # [H, X] = 2 H, which makes it the size-1 member of the shift-ring family
    return AlgebraSpec(
        name="jordanian-borel",
        m=1,
        n=1,
        B=[[[2]]],
        r=[[1]],
        xi=(Q(1, 2),),
        order=6,
        h_names=("H",),
        x_names=("X",),
        metadata={"family": "borel"},
    )


def _shift_ring_spec(k):
    if k < 1:
        raise SpecError("shift-ring size must be positive")
    alpha = [
        [[1 if sigma == muu + nu else 0 for nu in range(k)] for sigma in range(k)]
        for muu in range(k)
    ]
    # raised = lowered with r = identity; B pinned by the classical limit
    B = [
        [[2 * alpha[i][j][mu] for mu in range(k)] for j in range(k)]
        for i in range(k)
    ]
    r = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    return AlgebraSpec(
        name=f"shift-ring({k})",
        m=k,
        n=k,
        B=B,
        r=r,
        xi=tuple(1 if mu == 0 else 0 for mu in range(k)),
        order=4,
        h_names=tuple(f"H{i}" for i in range(k)),
        x_names=tuple(f"X{i}" for i in range(k)),
        metadata={"family": "shift-ring", "size": str(k)},
    )


def preset(name):
    """Built-in algebra declarations.

    Accepted names: ``poincare-null-plane``, ``jordanian-borel``,
    ``shift-ring`` (size 3), or ``shift-ring(k)``.
    """
    if name == "poincare-null-plane":
        return _poincare_spec()
    if name == "jordanian-borel":
        return _jordanian_spec()
    if name == "shift-ring":
        return _shift_ring_spec(3)
    if name.startswith("shift-ring(") and name.endswith(")"):
        inner = name[len("shift-ring(") : -1]
        if inner.isdigit():
            return _shift_ring_spec(int(inner))
    raise SpecError(f"unknown preset {name!r}")


PRESET_NAMES = ("poincare-null-plane", "jordanian-borel", "shift-ring(3)")
