"""
Reference solutions and error metrics for plane-wave initial data.

``ExactSolution`` is the published closed form

    u(x, t) = +/- e^{ix} (1 + (1/u0^4 - 1) e^{4it})^{-1/4}

evaluated on the principal branch.  ``PlaneWave`` is the plane wave
``beta e^{ikx} e^{i(beta^4 - k^2)t}``, which solves the Kundu-Eckhaus
equation exactly for ``u(x, 0) = beta e^{ikx}`` (the modulus is conserved
and ``(|u|^2)_x = 0``).
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .solver import LadmRun

CSV_COLUMNS = ("x", "t", "re_ladm", "im_ladm", "re_exact", "im_exact", "err_re", "err_im", "err_abs")
PART_COLUMNS = {
    "real": ("x", "t", "re_ladm", "re_exact", "err_re"),
    "imag": ("x", "t", "im_ladm", "im_exact", "err_im"),
}


class BranchCutError(ValueError):
    """The fourth-root argument crosses the principal branch cut."""


@dataclass(frozen=True)
class ExactSolution:
    u0: float
    sign: int = 1

    def __post_init__(self):
        if self.u0 == 0 or not math.isfinite(self.u0):
            raise ValueError("u0 must be finite and nonzero")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def shift(self) -> float:
        """The constant ``1/u0^4 - 1``."""
        return 1.0 / self.u0**4 - 1.0

    def __call__(self, x: float, t: float) -> complex:
        return exact_eval(self, x, t)


def exact_eval(sol: ExactSolution, x: float, t: float) -> complex:
    c = sol.shift
    # w(s) = 1 + c e^{4is} circles 1 with radius |c|; with c real and > -1 it
    # meets the non-positive axis only if c >= 1, first at 4|s| = pi
    if c >= 1 and abs(t) >= math.pi / 4:
        raise BranchCutError(
            f"|1/u0^4 - 1| = {c:.6g} >= 1: w(t) reaches the branch cut before t = {t}"
        )
    w = 1 + c * cmath.exp(4j * t)
    return sol.sign * cmath.exp(1j * x) * cmath.exp(-0.25 * cmath.log(w))


@dataclass(frozen=True)
class PlaneWave:
    beta: float
    harmonic: int = 1

    @property
    def frequency(self) -> float:
        return self.beta**4 - self.harmonic**2

    def __call__(self, x: float, t: float) -> complex:
        return self.beta * cmath.exp(1j * (self.harmonic * x + self.frequency * t))


@dataclass(frozen=True)
class ComparisonRow:
    x: float
    t: float
    ladm: complex
    exact: complex

    @property
    def err_re(self) -> float:
        return abs(self.exact.real - self.ladm.real)

    @property
    def err_im(self) -> float:
        return abs(self.exact.imag - self.ladm.imag)

    @property
    def err_abs(self) -> float:
        return abs(self.exact - self.ladm)

    def values(self) -> dict[str, float]:
        return {
            "x": self.x,
            "t": self.t,
            "re_ladm": self.ladm.real,
            "im_ladm": self.ladm.imag,
            "re_exact": self.exact.real,
            "im_exact": self.exact.imag,
            "err_re": self.err_re,
            "err_im": self.err_im,
            "err_abs": self.err_abs,
        }


def compare_grid(
    run: LadmRun, sol: Callable[[float, float], complex], xs: Sequence[float], t: float
) -> list[ComparisonRow]:
    if not xs:
        raise ValueError("empty x grid")
    return [ComparisonRow(x, t, run(x, t), sol(x, t)) for x in xs]


def fd_residual(u: Callable[[float, float], complex], x: float, t: float, h: float) -> float:
    """|i u_t + u_xx + 2(|u|^2)_x u + |u|^4 u| with second-order centered differences."""
    if h <= 0:
        raise ValueError("step must be positive")
    c = u(x, t)
    ut = (u(x, t + h) - u(x, t - h)) / (2 * h)
    right, left = u(x + h, t), u(x - h, t)
    uxx = (right - 2 * c + left) / h**2
    mod_x = (abs(right) ** 2 - abs(left) ** 2) / (2 * h)
    return abs(1j * ut + uxx + 2 * mod_x * c + abs(c) ** 4 * c)


def exact_residual_check(sol: ExactSolution, x: float, t: float, h: float) -> float:
    return fd_residual(sol, x, t, h)


def fmt(v: float) -> str:
    """12 significant digits, no negative zero."""
    s = format(v, ".12g")
    return "0" if s in ("-0", "0") else s


def rows_to_csv(rows: Iterable[ComparisonRow], columns: Sequence[str] = CSV_COLUMNS) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        vals = row.values()
        writer.writerow([fmt(vals[c]) for c in columns])
    return buf.getvalue()
