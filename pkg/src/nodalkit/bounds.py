"""Closed-form multiplicity and counting bounds (classical table, Pleijel).

The first zero of the order-zero Bessel function is computed here by
bisection on the power series, not hard-coded; everything downstream
(Pleijel constant, Faber-Krahn threshold, Weyl term) uses that value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import UnknownFamily
from .surface import (CLOSED_NON_ORIENTABLE, CLOSED_ORIENTABLE, SurfaceSpec)


def _j0_series(x: float) -> float:
    """J0 via its power series; fine for 0 <= x <= 4."""
    term = 1.0
    total = 1.0
    q = x * x / 4.0
    for m in range(1, 60):
        term *= -q / (m * m)
        total += term
        if abs(term) < 1e-18:
            break
    return total


@lru_cache(maxsize=1)
def bessel_j0_first_zero(tol: float = 1e-12) -> float:
    """First positive zero of J0 by bisection on [2, 3]."""
    lo, hi = 2.0, 3.0
    assert _j0_series(lo) > 0 > _j0_series(hi)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _j0_series(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def pleijel_gamma() -> float:
    """gamma = 4 / j01^2 (< 1): asymptotic cap on kappa(lambda_k)/k."""
    j01 = bessel_j0_first_zero()
    return 4.0 / (j01 * j01)


def pleijel_bound(lam: float, area: float):
    """(mult bound 2*lam*area/(pi j01^2) - 1, gamma)."""
    if lam <= 0 or area <= 0:
        raise ValueError("lambda and area must be positive")
    j01 = bessel_j0_first_zero()
    return 2.0 * lam * area / (math.pi * j01 * j01) - 1.0, pleijel_gamma()


def faber_krahn_threshold(kappa: int) -> float:
    """Lower bound for lambda_k * |Omega| when the eigenfunction has kappa
    nodal domains: kappa * pi * j01^2."""
    j01 = bessel_j0_first_zero()
    return kappa * math.pi * j01 * j01


def weyl_term(lam: float, area: float) -> float:
    """Leading Weyl asymptotics for the counting function N(lambda)."""
    return area * lam / (4.0 * math.pi)


@dataclass(frozen=True)
class BoundSet:
    cheng: int | None
    besson: int | None
    nadirashvili: int | None
    hhn: int | None      # the 2k-3 bound, genus-0 and k >= 3 only
    k: int

    def to_json(self):
        return {"cheng": self.cheng, "besson": self.besson,
                "nadirashvili": self.nadirashvili, "hhn": self.hhn, "k": self.k}


def classical_bounds(surface: SurfaceSpec, k: int) -> BoundSet:
    """Multiplicity upper bounds per the classical table.

    Absent table cells are encoded as None, never 0.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    cheng = besson = nadir = hhn = None
    if surface.kind == CLOSED_ORIENTABLE:
        g = surface.param
        if g == 0:
            cheng = k * (k + 1) // 2
            besson = 2 * k - 1
            nadir = 2 * k - 1
            if k >= 3:
                hhn = 2 * k - 3
        elif g == 1:
            cheng = (k + 2) * (k + 3) // 2
            besson = 2 * k + 3
            nadir = 2 * k + 2
        else:
            cheng = (k + 2 * g) * (k + 2 * g + 1) // 2
            besson = 2 * k + 4 * g - 1
            nadir = 2 * k + 4 * g - 3
    elif surface.kind == CLOSED_NON_ORIENTABLE:
        c = surface.param
        if c == 1:
            besson = 4 * k - 1
            nadir = 2 * k + 1
        elif c == 2:
            nadir = 2 * k + 1
        else:
            besson = 4 * k + 4 * c - 1
            nadir = 2 * k + 2 * c - 1
    else:
        raise UnknownFamily("no classical table row for %s" % surface.kind)
    return BoundSet(cheng, besson, nadir, hhn, k)
