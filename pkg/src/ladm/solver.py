"""
Laplace-Adomian decomposition for u_t = R u + N u.

For the Kundu-Eckhaus equation ``i u_t + u_xx + 2(|u|^2)_x u + |u|^4 u = 0``
written as ``u_t = i u_xx + 2i(|u|^2)_x u + i|u|^4 u`` the linear part is
``R = i d^2/dx^2`` and the nonlinear part splits into

    N1 = i u^3 conj(u)^2,   N2 = 2i u^2 conj(u)_x,   N3 = 2i u_x u conj(u).

The recursion is ``u_0 = f``, ``u_{n+1} = L^-1[(1/s) L{R u_n + A_n}]``,
where the Laplace step is the time integral from 0 to t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .adomian import FactorKind, MonomialNonlinearity, NonlinearOperator, adomian_poly_sum
from .series import HarmonicPoly, TimeSeries, ts_add, ts_integrate_time, ts_sum

U, CU, DU, DCU = FactorKind.U, FactorKind.CONJ_U, FactorKind.DX_U, FactorKind.DX_CONJ_U

KE_N1 = MonomialNonlinearity(1j, (U, U, U, CU, CU))
KE_N2 = MonomialNonlinearity(2j, (U, U, DCU))
KE_N3 = MonomialNonlinearity(2j, (DU, U, CU))

DEFAULT_BETA = 2.0 ** (1.0 / 16.0)
DEFAULT_TERMS = 4


@dataclass(frozen=True)
class EquationModel:
    """``u_t = sum_j c_j d^{p_j}u/dx^{p_j} + N(u)``; ``linear_op`` holds (p_j, c_j)."""

    linear_op: tuple[tuple[int, complex], ...]
    nonlinear_op: NonlinearOperator

    def __post_init__(self):
        ops = tuple((int(p), complex(c)) for p, c in self.linear_op)
        for p, c in ops:
            if p < 0:
                raise ValueError(f"derivative order must be >= 0, got {p}")
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError(f"non-finite linear coefficient {c!r}")
        object.__setattr__(self, "linear_op", ops)


def kundu_eckhaus() -> EquationModel:
    return EquationModel(((2, 1j),), NonlinearOperator((KE_N1, KE_N2, KE_N3)))


@dataclass(frozen=True)
class LadmRun:
    beta: float
    harmonic: int
    k: int
    iterates: tuple[TimeSeries, ...]
    truncated: TimeSeries = field(repr=False)

    def __call__(self, x: float, t: float) -> complex:
        return self.truncated(x, t)


def initial_condition(beta: float, harmonic: int = 1) -> TimeSeries:
    if beta == 0:
        raise ValueError("beta must be nonzero")
    if not math.isfinite(beta):
        raise ValueError("beta must be finite")
    return TimeSeries.constant(HarmonicPoly({harmonic: beta}))


def apply_linear(model: EquationModel, u: TimeSeries) -> TimeSeries:
    return ts_sum(u.dx(order) * c for order, c in model.linear_op)


def ladm_step(model: EquationModel, iterates: list[TimeSeries], n: int) -> TimeSeries:
    """u_{n+1} from u_0..u_n."""
    if len(iterates) < n + 1:
        raise ValueError(f"step {n} needs iterates u_0..u_{n}, got {len(iterates)}")
    rhs = ts_add(apply_linear(model, iterates[n]), adomian_poly_sum(model.nonlinear_op, iterates, n))
    return ts_integrate_time(rhs)


def run_from(model: EquationModel, u0: TimeSeries, k: int) -> list[TimeSeries]:
    """Iterates u_0..u_k for an arbitrary harmonic-polynomial initial condition."""
    if k < 0:
        raise ValueError(f"number of correction terms must be >= 0, got {k}")
    iterates = [u0]
    for n in range(k):
        iterates.append(ladm_step(model, iterates, n))
    return iterates


def run(model: EquationModel, beta: float = DEFAULT_BETA, harmonic: int = 1, k: int = DEFAULT_TERMS) -> LadmRun:
    iterates = run_from(model, initial_condition(beta, harmonic), k)
    return LadmRun(beta, harmonic, k, tuple(iterates), ts_sum(iterates))


def residual(model: EquationModel, u: TimeSeries) -> TimeSeries:
    """Exact PDE defect ``u_t - R u - N u`` of a series.

    N is applied to the whole series directly, not through Adomian
    polynomials, so this is independent of the decomposition machinery.
    """
    return u.dt() - apply_linear(model, u) - model.nonlinear_op(u)


def residual_orders(model: EquationModel, u: TimeSeries) -> list[float]:
    """Max coefficient magnitude of the residual at each power of t."""
    res = residual(model, u)
    return [res.coefficient(m).max_abs() for m in range(res.degree + 1)]
