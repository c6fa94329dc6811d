"""
Exact arithmetic on complex harmonic polynomials in x and polynomials in t.

A ``HarmonicPoly`` is a finite sum ``sum_k c_k exp(i k x)`` with integer
wavenumbers ``k`` and complex coefficients.  A ``TimeSeries`` is a polynomial
``sum_m a_m(x) t**m`` whose coefficients ``a_m`` are harmonic polynomials.
Coefficients are stored for the plain monomial ``t**m`` (no factorials).

Both types are immutable.  Arithmetic prunes coefficients whose magnitude
drops below ``PRUNE_RTOL`` times the magnitude scale of the operands, so
floating-point cancellation does not grow the support.
"""

from __future__ import annotations

import cmath
import math
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

PRUNE_RTOL = 1e-14

Scalar = complex | float | int


def _check_scalar(c: Scalar) -> complex:
    c = complex(c)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError(f"non-finite coefficient {c!r}")
    return c


def _pruned(terms: Mapping[int, complex], scale: float) -> dict[int, complex]:
    cutoff = PRUNE_RTOL * scale
    return {k: c for k, c in terms.items() if c != 0 and abs(c) >= cutoff}


class HarmonicPoly:
    """Finite complex trigonometric polynomial ``sum_k c_k e^{ikx}``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean: dict[int, complex] = {}
        for k, c in (terms or {}).items():
            if isinstance(k, bool) or int(k) != k:
                raise TypeError(f"harmonic index must be an integer, got {k!r}")
            c = _check_scalar(c)
            if c != 0:
                clean[int(k)] = c
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def _raw(cls, terms: dict[int, complex]) -> HarmonicPoly:
        # trusted constructor for already-validated, already-pruned dicts
        obj = cls.__new__(cls)
        obj._terms = dict(sorted(terms.items()))
        return obj

    @classmethod
    def zero(cls) -> HarmonicPoly:
        return cls._raw({})

    @classmethod
    def constant(cls, c: Scalar) -> HarmonicPoly:
        return cls({0: c})

    @property
    def terms(self) -> Mapping[int, complex]:
        return MappingProxyType(self._terms)

    def support(self) -> frozenset[int]:
        return frozenset(self._terms)

    def max_abs(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def is_zero(self) -> bool:
        return not self._terms

    def __getitem__(self, k: int) -> complex:
        return self._terms.get(k, 0j)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HarmonicPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        return f"HarmonicPoly({self._terms!r})"

    def __add__(self, other: HarmonicPoly) -> HarmonicPoly:
        if not isinstance(other, HarmonicPoly):
            return NotImplemented
        return hp_add(self, other)

    def __sub__(self, other: HarmonicPoly) -> HarmonicPoly:
        if not isinstance(other, HarmonicPoly):
            return NotImplemented
        return hp_add(self, -other)

    def __neg__(self) -> HarmonicPoly:
        return HarmonicPoly._raw({k: -c for k, c in self._terms.items()})

    def __mul__(self, other: HarmonicPoly | Scalar) -> HarmonicPoly:
        if isinstance(other, HarmonicPoly):
            return hp_mul(self, other)
        if isinstance(other, (int, float, complex)):
            return hp_scale(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> HarmonicPoly:
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = HarmonicPoly.constant(1)
        for _ in range(n):
            out = hp_mul(out, self)
        return out

    def conj(self) -> HarmonicPoly:
        return hp_conj(self)

    def dx(self, order: int = 1) -> HarmonicPoly:
        out = self
        for _ in range(order):
            out = hp_dx(out)
        return out

    def __call__(self, x: float) -> complex:
        return sum((c * cmath.exp(1j * k * x) for k, c in self._terms.items()), 0j)

    def allclose(self, other: HarmonicPoly, atol: float = 1e-12) -> bool:
        keys = self.support() | other.support()
        return all(abs(self[k] - other[k]) <= atol for k in keys)


def hp_add(a: HarmonicPoly, b: HarmonicPoly) -> HarmonicPoly:
    out = dict(a._terms)
    for k, c in b._terms.items():
        out[k] = out.get(k, 0j) + c
    return HarmonicPoly._raw(_pruned(out, max(a.max_abs(), b.max_abs())))


def hp_mul(a: HarmonicPoly, b: HarmonicPoly) -> HarmonicPoly:
    """Convolution over harmonic indices."""
    out: dict[int, complex] = {}
    for j, c in a._terms.items():
        for k, d in b._terms.items():
            out[j + k] = out.get(j + k, 0j) + c * d
    return HarmonicPoly._raw(_pruned(out, a.max_abs() * b.max_abs()))


def hp_scale(a: HarmonicPoly, s: Scalar) -> HarmonicPoly:
    s = _check_scalar(s)
    if s == 0:
        return HarmonicPoly.zero()
    return HarmonicPoly._raw({k: s * c for k, c in a._terms.items()})


def hp_conj(a: HarmonicPoly) -> HarmonicPoly:
    """Complex conjugate as a function of real x: k -> -k, c -> conj(c)."""
    return HarmonicPoly._raw({-k: c.conjugate() for k, c in a._terms.items()})


def hp_dx(a: HarmonicPoly) -> HarmonicPoly:
    return HarmonicPoly._raw({k: 1j * k * c for k, c in a._terms.items() if k != 0})


class TimeSeries:
    """Polynomial in t with ``HarmonicPoly`` coefficients.

    ``coeffs[m]`` multiplies ``t**m``.  Trailing zero coefficients are
    dropped, so the zero series has no coefficients and degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[HarmonicPoly] = ()):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, HarmonicPoly):
                raise TypeError(f"TimeSeries coefficients must be HarmonicPoly, got {type(c).__name__}")
        while cs and cs[-1].is_zero():
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> TimeSeries:
        return cls()

    @classmethod
    def constant(cls, hp: HarmonicPoly | Mapping[int, Scalar]) -> TimeSeries:
        return cls.monomial(hp, 0)

    @classmethod
    def monomial(cls, hp: HarmonicPoly | Mapping[int, Scalar], power: int) -> TimeSeries:
        if power < 0:
            raise ValueError("power of t must be non-negative")
        if not isinstance(hp, HarmonicPoly):
            hp = HarmonicPoly(hp)
        return cls([HarmonicPoly.zero()] * power + [hp])

    @property
    def coeffs(self) -> tuple[HarmonicPoly, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def coefficient(self, m: int) -> HarmonicPoly:
        if 0 <= m < len(self._coeffs):
            return self._coeffs[m]
        return HarmonicPoly.zero()

    def powers(self) -> list[int]:
        """Powers of t carrying a nonzero coefficient."""
        return [m for m, c in enumerate(self._coeffs) if c]

    def support(self) -> frozenset[int]:
        return frozenset().union(*(c.support() for c in self._coeffs))

    def max_abs(self) -> float:
        return max((c.max_abs() for c in self._coeffs), default=0.0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        parts = [f"t^{m}: {dict(c.terms)!r}" for m, c in enumerate(self._coeffs) if c]
        return "TimeSeries({" + ", ".join(parts) + "})"

    def __add__(self, other: TimeSeries) -> TimeSeries:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return ts_add(self, other)

    def __sub__(self, other: TimeSeries) -> TimeSeries:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return ts_add(self, -other)

    def __neg__(self) -> TimeSeries:
        return TimeSeries(-c for c in self._coeffs)

    def __mul__(self, other: TimeSeries | HarmonicPoly | Scalar) -> TimeSeries:
        if isinstance(other, TimeSeries):
            return ts_mul(self, other)
        if isinstance(other, HarmonicPoly):
            return TimeSeries(hp_mul(c, other) for c in self._coeffs)
        if isinstance(other, (int, float, complex)):
            return TimeSeries(hp_scale(c, other) for c in self._coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def conj(self) -> TimeSeries:
        # t is real, so conjugation acts on the coefficients only
        return TimeSeries(hp_conj(c) for c in self._coeffs)

    def dx(self, order: int = 1) -> TimeSeries:
        return TimeSeries(c.dx(order) for c in self._coeffs)

    def dt(self) -> TimeSeries:
        return TimeSeries(hp_scale(c, m) for m, c in enumerate(self._coeffs) if m > 0)

    def integrate_time(self) -> TimeSeries:
        return ts_integrate_time(self)

    def __call__(self, x: float, t: float) -> complex:
        return ts_eval(self, x, t)

    def allclose(self, other: TimeSeries, atol: float = 1e-12) -> bool:
        n = max(len(self._coeffs), len(other._coeffs))
        return all(self.coefficient(m).allclose(other.coefficient(m), atol) for m in range(n))

    def to_tree(self) -> list[dict]:
        return to_tree(self)


def ts_add(a: TimeSeries, b: TimeSeries) -> TimeSeries:
    n = max(len(a.coeffs), len(b.coeffs))
    return TimeSeries(hp_add(a.coefficient(m), b.coefficient(m)) for m in range(n))


def ts_mul(a: TimeSeries, b: TimeSeries) -> TimeSeries:
    """Cauchy product in t."""
    if a.is_zero() or b.is_zero():
        return TimeSeries.zero()
    out = [HarmonicPoly.zero()] * (a.degree + b.degree + 1)
    for i, ca in enumerate(a.coeffs):
        if not ca:
            continue
        for j, cb in enumerate(b.coeffs):
            if cb:
                out[i + j] = hp_add(out[i + j], hp_mul(ca, cb))
    return TimeSeries(out)


def ts_sum(items: Iterable[TimeSeries]) -> TimeSeries:
    out = TimeSeries.zero()
    for s in items:
        out = ts_add(out, s)
    return out


def ts_integrate_time(a: TimeSeries) -> TimeSeries:
    """Integral from 0 to t: ``c t**m -> c t**(m+1) / (m+1)``.

    This is the inverse Laplace step ``L^-1[(1/s) L{.}]`` for polynomial
    integrands, since ``(1/s) L{t**m} = m!/s**(m+2)``.
    """
    if a.is_zero():
        return a
    return TimeSeries([HarmonicPoly.zero()] + [hp_scale(c, 1.0 / (m + 1)) for m, c in enumerate(a.coeffs)])


def ts_eval(a: TimeSeries, x: float, t: float) -> complex:
    if not (math.isfinite(x) and math.isfinite(t)):
        raise ValueError("x and t must be finite")
    acc = 0j
    for c in reversed(a.coeffs):
        acc = acc * t + c(x)
    return acc


def to_tree(a: TimeSeries) -> list[dict]:
    """JSON-compatible tree: ascending powers of t, ascending k, zero powers omitted."""
    return [
        {
            "power_t": m,
            "terms": [{"k": k, "re": c.real, "im": c.imag} for k, c in a.coefficient(m)],
        }
        for m in a.powers()
    ]


def from_tree(tree: Sequence[Mapping]) -> TimeSeries:
    coeffs: dict[int, HarmonicPoly] = {}
    for entry in tree:
        m = int(entry["power_t"])
        if m in coeffs:
            raise ValueError(f"duplicate power_t {m}")
        coeffs[m] = HarmonicPoly({int(term["k"]): complex(term["re"], term["im"]) for term in entry["terms"]})
    if not coeffs:
        return TimeSeries.zero()
    return TimeSeries(coeffs.get(m, HarmonicPoly.zero()) for m in range(max(coeffs) + 1))
