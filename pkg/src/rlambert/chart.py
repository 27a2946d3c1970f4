"""Local analysis of the r-Lambert curve at its ramification points.

With Delta = 1 - r z^r, the deck transformation of the x-projection is the
unique series Dt(Delta) = -Delta + O(Delta^2) solving
log(1-Dt) + Dt = log(1-Delta) + Delta; the Airy coordinate v satisfies
(1/2) v^2 = u = -Delta - log(1-Delta), with branch v = Delta + O(Delta^2),
and psi is its inverse, so the deck map is exactly v -> -v.  Writing
S(v) = (1 - psi(v))^{1/r}, the curve point is z = a S(v) with a^r = 1/r,
which is where the root ring takes over.  Everything here is a plain
Fraction-coefficient series; the same expansions serve every ramification
point at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import (LaurentSeries, exp_series, log1p_series, pow_series,
                     series_compose, series_reverse)

__all__ = ["LocalChart", "build_chart", "deck_series", "airy_coordinates"]


def _u_series(order: int) -> LaurentSeries:
    """u(Delta) = -Delta - log(1-Delta) = sum_{k>=2} Delta^k / k."""
    coeffs = [Fraction(0), Fraction(0)] + [Fraction(1, k) for k in range(2, order)]
    return LaurentSeries(0, coeffs, order, Fraction(0))


def airy_coordinates(r: int, order: int):
    """(v(Delta), psi(v)) with (1/2)v^2 = u and psi the inverse of v.

    The branch is fixed by v = Delta + O(Delta^2).  Independent of r.
    """
    if order < 4:
        raise ValueError("order must be >= 4")
    u = _u_series(order + 1)
    # v = Delta * sqrt(2u/Delta^2); 2u/Delta^2 has constant term 1
    ratio = LaurentSeries(0, [2 * c for c in u.coeffs[2:]], order - 1, Fraction(0))
    v = (pow_series(ratio, Fraction(1, 2))).shift(1)
    psi = series_reverse(v, order)
    return v, psi


def deck_series(r: int, order: int) -> LaurentSeries:
    """Dt(Delta) = psi(-v(Delta)): the deck transformation in Delta."""
    if order < 2:
        raise ValueError("order must be >= 2")
    v, psi = airy_coordinates(r, max(order, 4))
    return series_compose(psi, -v).with_order(order)


@dataclass(frozen=True)
class LocalChart:
    """Shared local series data at truncation order N (exponents < N known)."""

    r: int
    N: int
    v_of_delta: LaurentSeries   # v(Delta)
    psi: LaurentSeries          # Delta(v) = psi(v)
    psi_neg: LaurentSeries      # psi(-v)
    delta_tilde: LaurentSeries  # deck map in Delta
    S: LaurentSeries            # (1 - psi(v))^{1/r}, so z = a S(v)
    S_neg: LaurentSeries        # S(-v)
    Sp: LaurentSeries           # dS/dv
    Sp_neg: LaurentSeries       # (dS/dv)(-v)

    def u(self) -> LaurentSeries:
        """u = v^2/2 as an exact series."""
        return LaurentSeries.from_coeffs([Fraction(1, 2)], 2)


def build_chart(r: int, order: int) -> LocalChart:
    v, psi = airy_coordinates(r, order)
    psi_neg = psi.flip_sign()
    one = LaurentSeries.constant(Fraction(1))
    S = pow_series(one.with_order(order) - psi, Fraction(1, r))
    S_neg = S.flip_sign()
    Sp = S.derivative()
    Sp_neg = Sp.flip_sign()
    dt = series_compose(psi, -v).with_order(order)
    return LocalChart(r, order, v, psi, psi_neg, dt, S, S_neg, Sp, Sp_neg)


def x_invariant_series(chart: LocalChart, which: str) -> LaurentSeries:
    """T e^{1-T} with T = 1-Delta resp. 1-Dt; equal iff x is deck-invariant."""
    delta = (LaurentSeries.identity(chart.N) if which == "direct"
             else chart.delta_tilde)
    T = LaurentSeries.constant(Fraction(1)).with_order(chart.N) - delta
    return T * exp_series(delta)


def log_diff_invariant(chart: LocalChart) -> LaurentSeries:
    """(-Dt - log(1-Dt)) - (-Delta - log(1-Delta)); zero to order N."""
    dt = chart.delta_tilde
    delta = LaurentSeries.identity(chart.N)

    def u_of(w):
        return -w - log1p_series(-w)

    return u_of(dt) - u_of(delta)
