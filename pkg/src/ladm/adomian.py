"""
Adomian polynomials for polynomial nonlinearities in u, conj(u) and their x-derivatives.

A nonlinearity is a sum of monomials ``c * f_1(u) * ... * f_d(u)`` where each
factor ``f_j`` is one of u, conj(u), u_x, conj(u)_x.  Substituting the
decomposition ``u = sum_i u_i`` and collecting by total index, the n-th
Adomian polynomial of a monomial is

    A_n = c * sum_{i_1 + ... + i_d = n} f_1(u_{i_1}) * ... * f_d(u_{i_d})

i.e. the coefficient of lambda**n in ``N(sum_i lambda**i u_i)``.  For
polynomial nonlinearities this agrees with the derivative formulas
``A_0 = N(u_0)``, ``A_1 = u_1 N'(u_0)``, ...
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .series import TimeSeries, ts_add, ts_mul, ts_sum


class FactorKind(enum.Enum):
    U = "u"
    CONJ_U = "conj_u"
    DX_U = "dx_u"
    DX_CONJ_U = "dx_conj_u"

    def apply(self, u: TimeSeries) -> TimeSeries:
        if self is FactorKind.U:
            return u
        if self is FactorKind.CONJ_U:
            return u.conj()
        if self is FactorKind.DX_U:
            return u.dx()
        return u.conj().dx()

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]


_SYMBOLS = {
    FactorKind.U: "u{}",
    FactorKind.CONJ_U: "ū{}",
    FactorKind.DX_U: "u{}x",
    FactorKind.DX_CONJ_U: "ū{}x",
}
_KIND_ORDER = {k: i for i, k in enumerate(FactorKind)}

# canonical symbolic term: sorted (kind, iterate index) pairs, repeated for powers
TermKey = tuple[tuple[FactorKind, int], ...]


def term_key(pairs: Sequence[tuple[FactorKind, int]]) -> TermKey:
    return tuple(sorted(pairs, key=lambda p: (_KIND_ORDER[p[0]], p[1])))


@dataclass(frozen=True)
class MonomialNonlinearity:
    coefficient: complex
    factors: tuple[FactorKind, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficient", complex(self.coefficient))
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("monomial needs at least one factor")
        if self.coefficient == 0:
            raise ValueError("monomial coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.factors)

    def __call__(self, u: TimeSeries) -> TimeSeries:
        """Evaluate the monomial on a full series (no decomposition)."""
        out = TimeSeries.constant({0: self.coefficient})
        for f in self.factors:
            out = ts_mul(out, f.apply(u))
        return out


@dataclass(frozen=True)
class NonlinearOperator:
    monomials: tuple[MonomialNonlinearity, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "monomials", tuple(self.monomials))
        if not self.monomials:
            raise ValueError("nonlinear operator needs at least one monomial")

    def __call__(self, u: TimeSeries) -> TimeSeries:
        return ts_sum(m(u) for m in self.monomials)


def index_tuples(d: int, n: int) -> Iterator[tuple[int, ...]]:
    """All d-tuples of non-negative integers summing to n, lexicographic."""
    if d < 1 or n < 0:
        raise ValueError("need d >= 1 and n >= 0")
    if d == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in index_tuples(d - 1, n - first):
            yield (first,) + rest


def tuple_count(d: int, n: int) -> int:
    return math.comb(n + d - 1, d - 1)


def _check_iterates(iterates: Sequence[TimeSeries], n: int) -> None:
    if n < 0:
        raise ValueError(f"order must be non-negative, got {n}")
    if len(iterates) < n + 1:
        raise ValueError(f"A_{n} needs iterates u_0..u_{n}, got {len(iterates)}")


def adomian_poly(nl: MonomialNonlinearity, iterates: Sequence[TimeSeries], n: int) -> TimeSeries:
    _check_iterates(iterates, n)
    applied = {
        kind: [kind.apply(iterates[i]) for i in range(n + 1)]
        for kind in set(nl.factors)
    }
    total = TimeSeries.zero()
    for tup in index_tuples(nl.degree, n):
        prod = TimeSeries.constant({0: nl.coefficient})
        for kind, i in zip(nl.factors, tup):
            prod = ts_mul(prod, applied[kind][i])
            if prod.is_zero():
                break
        total = ts_add(total, prod)
    return total


def adomian_poly_sum(op: NonlinearOperator, iterates: Sequence[TimeSeries], n: int) -> TimeSeries:
    _check_iterates(iterates, n)
    return ts_sum(adomian_poly(m, iterates, n) for m in op.monomials)


def adomian_terms(nl: MonomialNonlinearity, n: int) -> Counter:
    """Symbolic A_n of one monomial as {TermKey: coefficient}."""
    out: Counter = Counter()
    for tup in index_tuples(nl.degree, n):
        out[term_key(list(zip(nl.factors, tup)))] += nl.coefficient
    return out


def adomian_terms_sum(op: NonlinearOperator, n: int) -> Counter:
    out: Counter = Counter()
    for m in op.monomials:
        out.update(adomian_terms(m, n))
    return out


def format_term(key: TermKey, coefficient: complex = 1) -> str:
    """Human-readable symbolic term, e.g. ``3i ū0^2 u0^2 u1``."""
    powers = Counter(key)
    factors = []
    for kind, i in dict.fromkeys(key):
        sym = kind.symbol.format(i)
        factors.append(sym if powers[(kind, i)] == 1 else f"{sym}^{powers[(kind, i)]}")
    c = complex(coefficient)
    if c.real == 0 and c.imag.is_integer():
        head = f"{int(c.imag)}i" if c.imag != 1 else "i"
    else:
        head = f"({c:g})"
    return " ".join([head] + factors)


@dataclass
class LambdaReport:
    """Outcome of the formal-lambda cross-check; one discrepancy per order."""

    discrepancies: list[float]
    tol: float

    @property
    def max_discrepancy(self) -> float:
        return max(self.discrepancies, default=0.0)

    @property
    def failures(self) -> list[int]:
        return [n for n, d in enumerate(self.discrepancies) if not d < self.tol]

    @property
    def ok(self) -> bool:
        return not self.failures


def _lambda_truncated_mul(a: list[TimeSeries], b: list[TimeSeries], order: int) -> list[TimeSeries]:
    out = [TimeSeries.zero()] * (order + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b[: order + 1 - i]):
            out[i + j] = ts_add(out[i + j], ts_mul(x, y))
    return out


def lambda_expansion(op: NonlinearOperator, iterates: Sequence[TimeSeries], order: int) -> list[TimeSeries]:
    """Coefficients of lambda**0..lambda**order in N(sum_i lambda**i u_i)."""
    us = list(iterates[: order + 1])
    us += [TimeSeries.zero()] * (order + 1 - len(us))
    total = [TimeSeries.zero()] * (order + 1)
    for mono in op.monomials:
        acc = [TimeSeries.constant({0: mono.coefficient})]
        for kind in mono.factors:
            acc = _lambda_truncated_mul(acc, [kind.apply(u) for u in us], order)
        total = [ts_add(x, y) for x, y in zip(total, acc)]
    return total


def lambda_consistency_check(
    op: NonlinearOperator, iterates: Sequence[TimeSeries], N: int, tol: float = 1e-10
) -> LambdaReport:
    if N < 0:
        raise ValueError("N must be non-negative")
    us = list(iterates[: N + 1])
    us += [TimeSeries.zero()] * (N + 1 - len(us))
    expanded = lambda_expansion(op, us, N)
    discrepancies = [(expanded[n] - adomian_poly_sum(op, us, n)).max_abs() for n in range(N + 1)]
    return LambdaReport(discrepancies, tol)


__all__ = [
    "FactorKind",
    "LambdaReport",
    "MonomialNonlinearity",
    "NonlinearOperator",
    "TermKey",
    "adomian_poly",
    "adomian_poly_sum",
    "adomian_terms",
    "adomian_terms_sum",
    "format_term",
    "index_tuples",
    "lambda_consistency_check",
    "lambda_expansion",
    "term_key",
    "tuple_count",
]
