"""Certified isolation of the positive zeros of half-power polynomials.

Roots are isolated in the substituted variable s = sqrt(h): the half-power
polynomial becomes an ordinary polynomial Q(s).  The lowest s-power is
factored out (so h = 0 is never reported), the search runs on (0, B] with B
a Cauchy bound, subdivision is guided by Descartes' rule of signs, and each
isolated interval is refined by bisection and certified by its sign change.
Even-multiplicity candidates (no sign change) are flagged, not certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .algebra import HalfPowerPoly
from .errors import PrecisionLoss, ZeroPolynomial
from .melnikov import zero_bound
from .systems import Case

REFINE_WIDTH = 1e-12

CERT_SIMPLE = "SimpleSignChange"
CERT_SUSPECT_EVEN = "SuspectedEvenMultiplicity"


def _polyval(coeffs, x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deriv(coeffs):
    return [k * c for k, c in enumerate(coeffs)][1:]


def sign_variations(coeffs) -> int:
    signs = [c for c in coeffs if c != 0.0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def _shift_by_one(coeffs):
    """Taylor shift: coefficients of P(x + 1) (synthetic division by (x-1))."""
    out = list(coeffs)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += out[j + 1]
    return out


def _descartes_count_01(coeffs) -> int:
    """Sign variations of (1+x)^n P(1/(1+x)): root-count bound of P on (0, 1)."""
    rev = list(reversed(coeffs))
    return sign_variations(_shift_by_one(rev))


def _scale_to_unit(coeffs, lo: float, hi: float):
    """Coefficients of P(lo + (hi - lo) * x), mapping (0,1) onto (lo, hi)."""
    n = len(coeffs)
    out = list(coeffs)
    if lo != 0.0:
        # Taylor shift by lo via repeated synthetic division
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                out[j] += lo * out[j + 1]
    width = hi - lo
    w = 1.0
    for k in range(n):
        out[k] *= w
        w *= width
    return out


@dataclass(frozen=True)
class IsolatedRoot:
    lo: float
    hi: float
    mid: float
    certificate: str


@dataclass
class RootReport:
    s_roots: list = field(default_factory=list)
    h_roots: list = field(default_factory=list)
    suspected: list = field(default_factory=list)
    descartes_bound: int = 0
    theorem_bound: int | None = None

    def certified_count(self) -> int:
        return len(self.s_roots)


def _bisect_root(coeffs, lo: float, hi: float):
    flo = _polyval(coeffs, lo)
    fhi = _polyval(coeffs, hi)
    if flo == 0.0:
        lo_adj = max(lo * (1 - 1e-9) - 1e-300, 0.0)
        flo = _polyval(coeffs, lo_adj)
        lo = lo_adj
    if fhi == 0.0:
        hi *= 1 + 1e-9
        fhi = _polyval(coeffs, hi)
    if flo * fhi > 0:
        return None
    # tight target: both the s-interval and the induced h-interval stay <= 1e-12
    while (hi - lo) * max(1.0, hi + lo) > REFINE_WIDTH:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # float resolution reached
        fm = _polyval(coeffs, mid)
        if fm == 0.0:
            lo = hi = mid
            break
        if flo * fm < 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return lo, hi


def _isolate(coeffs, lo: float, hi: float, out: list, depth: int = 0):
    """Recursive Descartes-guided subdivision of (lo, hi)."""
    mapped = _scale_to_unit(coeffs, lo, hi)
    count = _descartes_count_01(mapped)
    if count == 0:
        return
    flo = _polyval(coeffs, lo)
    fhi = _polyval(coeffs, hi)
    if count == 1 and flo * fhi < 0:
        out.append((lo, hi))
        return
    if depth > 60 or hi - lo < 1e-9 * max(1.0, hi):
        # unresolved cluster: record as a sign-change interval if one exists,
        # otherwise leave it for the even-multiplicity scan
        if flo * fhi < 0:
            out.append((lo, hi))
        return
    mid = 0.5 * (lo + hi)
    _isolate(coeffs, lo, mid, out, depth + 1)
    _isolate(coeffs, mid, hi, out, depth + 1)


def _strip_low_power(coeffs):
    k = 0
    while k < len(coeffs) and coeffs[k] == 0.0:
        k += 1
    return coeffs[k:]


def isolate_positive_roots(poly: HalfPowerPoly, case: Case | None = None,
                           m: int | None = None, n: int | None = None,
                           which: str = "M1") -> RootReport:
    """Isolate and certify the positive zeros of P(h) via Q(s), s = sqrt(h)."""
    if poly.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    coeffs = _strip_low_power(poly.to_s_poly())
    if not coeffs or all(c == 0.0 for c in coeffs):
        raise PrecisionLoss("all coefficients vanished in float conversion")
    scale = max(abs(c) for c in coeffs)
    if not math.isfinite(scale) or scale == 0.0:
        raise PrecisionLoss("coefficient conversion lost all significant digits")
    if len(coeffs) == 1:
        report = RootReport(descartes_bound=0)
    else:
        lead = coeffs[-1]
        bound = 1.0 + max(abs(c) for c in coeffs[:-1]) / abs(lead)
        intervals: list = []
        _isolate(coeffs, 0.0, bound, intervals)
        report = RootReport(descartes_bound=sign_variations(coeffs))
        deriv = _deriv(coeffs)
        for lo, hi in intervals:
            refined = _bisect_root(coeffs, max(lo, 1e-300), hi)
            if refined is None:
                continue
            rlo, rhi = refined
            mid = 0.5 * (rlo + rhi)
            if mid <= 0:
                continue
            dval = _polyval(deriv, mid) if deriv else 0.0
            cert = CERT_SIMPLE if dval != 0.0 else CERT_SUSPECT_EVEN
            report.s_roots.append(IsolatedRoot(rlo, rhi, mid, cert))
        # flag possible even-multiplicity roots: minima of |P| at zeros of P'
        if deriv and len(deriv) > 1:
            report.suspected = _suspect_even_roots(coeffs, deriv, bound,
                                                  report.s_roots, scale)
    report.s_roots.sort(key=lambda r: r.mid)
    report.h_roots = [IsolatedRoot(r.lo ** 2, r.hi ** 2, r.mid ** 2,
                                   r.certificate) for r in report.s_roots]
    if case is not None and m is not None and n is not None:
        report.theorem_bound = zero_bound(case, m, n, which)
    return report


def _suspect_even_roots(coeffs, deriv, bound, certified, scale):
    out = []
    intervals: list = []
    _isolate(deriv, 0.0, bound, intervals)
    for lo, hi in intervals:
        refined = _bisect_root(deriv, max(lo, 1e-300), hi)
        if refined is None:
            continue
        mid = 0.5 * (refined[0] + refined[1])
        if mid <= 0:
            continue
        if any(r.lo - 1e-9 <= mid <= r.hi + 1e-9 for r in certified):
            continue
        if abs(_polyval(coeffs, mid)) <= 1e-8 * scale * max(1.0, mid) ** len(coeffs):
            out.append(IsolatedRoot(refined[0], refined[1], mid,
                                    CERT_SUSPECT_EVEN))
    return out


@dataclass(frozen=True)
class BoundCheck:
    ok: bool
    certified: int
    bound: int
    slack: int


def check_against_bound(report: RootReport, case: Case, m: int, n: int,
                        which: str = "M1") -> BoundCheck:
    bound = zero_bound(case, m, n, which)
    count = report.certified_count()
    return BoundCheck(ok=count <= bound, certified=count, bound=bound,
                      slack=bound - count)
