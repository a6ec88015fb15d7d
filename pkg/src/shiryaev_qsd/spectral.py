"""Principal eigenvalue, index, and normalizer of the killed diffusion.

Everything downstream hangs off one number per cutoff A: the smallest
positive root lam of the boundary condition W_{1, xi/2}(2/A) = 0 with
xi = sqrt(1 - 8 lam). This module brackets that root with the proven
two-sided bounds, polishes it with Brent iteration, checks that no
smaller root was skipped, and packages the result as a validated
EigenSystem the distribution and moment code can trust blindly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import InitVar, dataclass

from .errors import BracketError, ConsistencyError, ConvergenceError, DomainError
from .specfun import (
    DEFAULT_SERIES,
    SeriesControl,
    documented_real,
    gamma,
    hyp1f1,
    whittaker_w,
)

_EPS = 2.220446049250313e-16
_RESIDUAL_TOL = 1e-9       # eigencondition residual allowance, scaled by |W0|
_XI_IDENTITY_TOL = 1e-12   # |xi^2 + 8 lam - 1| allowance
_DUAL_C_TOL = 1e-8         # agreement between the two normalizer routes
_BRACKET_SLACK = 1e-9      # relative slack when re-checking the bracket
_SAMPLES_BELOW = 50        # sign samples guarding against a skipped root


def _check_cutoff(A: float) -> float:
    A = float(A)
    if not math.isfinite(A) or A <= 0.0:
        raise DomainError(f"cutoff must be a finite positive number, got {A!r}")
    return A


def xi_of_lambda(lam: float) -> complex:
    """Index xi = sqrt(1 - 8 lam); real in (0, 1] for lam <= 1/8, else
    positive imaginary (principal branch)."""
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0.0:
        raise DomainError(f"rate must be a finite positive number, got {lam!r}")
    d = 1.0 - 8.0 * lam
    if d >= 0.0:
        return complex(math.sqrt(d), 0.0)
    return complex(0.0, math.sqrt(-d))


def one_minus_xi(lam: float, xi: complex) -> complex:
    """1 - xi without cancellation: 8 lam / (1 + xi).

    For large cutoffs xi creeps toward 1 and the direct subtraction
    loses the leading digits; this form keeps full relative accuracy.
    """
    return 8.0 * float(lam) / (1.0 + xi)


def lambda_bounds(A: float) -> tuple[float, float]:
    """Two-sided bounds (lo, hi) for the principal rate at cutoff A."""
    A = _check_cutoff(A)
    lo = 1.0 / A + 1.0 / (A * (A + 1.0))
    hi = 1.0 / A + (1.0 + math.sqrt(4.0 * A + 1.0)) / (2.0 * A * A)
    return lo, hi


def eigencondition(A: float, lam: float, ctl: SeriesControl = DEFAULT_SERIES) -> float:
    """Boundary-condition function g(lam) = W_{1, xi/2}(2/A); vanishes at
    the spectrum. Real part only; the imaginary residue is kernel noise."""
    A = _check_cutoff(A)
    xi = xi_of_lambda(lam)
    return whittaker_w(1.0, 0.5 * xi, 2.0 / A, ctl).real


def _brent(f, a: float, b: float, fa: float, fb: float, rel_tol: float) -> float:
    # classic Brent: bisection safeguarded by secant / inverse quadratic steps
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise BracketError(f"no sign change on [{a}, {b}]")
    c, fc = a, fa
    d = e = b - a
    for _ in range(200):
        if (fb > 0.0) == (fc > 0.0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * _EPS * abs(b) + 0.5 * rel_tol * abs(b)
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1 or fb == 0.0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, xm)
        fb = f(b)
    raise ConvergenceError("root refinement did not converge in 200 iterations")


def _normalizer_direct(A: float, xi: complex, ctl: SeriesControl) -> float:
    w0 = documented_real(
        whittaker_w(0.0, 0.5 * xi, 2.0 / A, ctl), "W at the right endpoint"
    )
    if w0 <= 0.0:
        raise ConsistencyError(
            f"endpoint Whittaker value must be positive, got {w0!r} at A={A}"
        )
    return 1.0 / (math.exp(-1.0 / A) * w0)


def _normalizer_series(
    A: float, lam: float, xi: complex, sigma: int, ctl: SeriesControl
) -> float:
    # confluent-series route to the same constant; exercised as a check
    eta = one_minus_xi(lam, xi)            # 1 - xi, cancellation-free
    if sigma > 0:
        plus, minus = 2.0 - eta, eta       # 1 + s*xi, 1 - s*xi
    else:
        plus, minus = eta, 2.0 - eta
    val = (
        plus
        * gamma(0.5 * plus)
        * cmath.exp(0.5 * minus * math.log(0.5 * A))
        * hyp1f1(-0.5 * minus, plus, 2.0 / A, ctl)
        / (2.0 * gamma(plus))
    )
    return documented_real(val, "series form of the normalizer")


def eigen_checks(
    A: float,
    lam: float,
    xi: complex,
    C: float,
    ctl: SeriesControl = DEFAULT_SERIES,
) -> list[tuple[str, bool, float]]:
    """Invariant battery for a candidate (A, lam, xi, C) quadruple.

    Returns (name, passed, metric) rows; every metric is the dimensionless
    residual the pass/fail threshold applies to. Recomputes everything from
    scratch so a stale or tampered field cannot hide.
    """
    A = _check_cutoff(A)
    rows: list[tuple[str, bool, float]] = []

    lo, hi = lambda_bounds(A)
    in_bracket = lo * (1.0 - _BRACKET_SLACK) <= lam <= hi * (1.0 + _BRACKET_SLACK)
    rows.append(("rate-bracket", in_bracket, (lam - lo) / (hi - lo)))

    ident = abs(xi * xi + 8.0 * lam - 1.0) / max(1.0, 8.0 * lam)
    rows.append(("index-identity", ident <= _XI_IDENTITY_TOL, ident))

    z = 2.0 / A
    w1 = whittaker_w(1.0, 0.5 * xi, z, ctl)
    w0 = whittaker_w(0.0, 0.5 * xi, z, ctl)
    res = abs(w1) / max(1.0, abs(w0))
    rows.append(("eigencondition-residual", res <= _RESIDUAL_TOL, res))

    ok_c = math.isfinite(C) and C > 0.0
    rows.append(("normalizer-positive", ok_c, C))

    if ok_c and w0.real > 0.0:
        direct = 1.0 / (math.exp(-1.0 / A) * w0.real)
        rel = abs(direct - C) / C
        rows.append(("normalizer-endpoint", rel <= _DUAL_C_TOL, rel))
        worst = 0.0
        for sigma in (1, -1):
            try:
                alt = _normalizer_series(A, lam, xi, sigma, ctl)
            except Exception:
                worst = math.inf
                break
            worst = max(worst, abs(alt - C) / C)
        rows.append(("normalizer-series", worst <= _DUAL_C_TOL, worst))
    else:
        rows.append(("normalizer-endpoint", False, math.inf))
        rows.append(("normalizer-series", False, math.inf))
    return rows


@dataclass(frozen=True)
class EigenSystem:
    """Validated spectral data for one cutoff: rate lam, index xi,
    normalizer C, and the eigencondition residual left by the solver.

    Construction re-runs the invariant battery and raises ConsistencyError
    if anything fails; validate=False skips that (used to inject known-bad
    systems when exercising the verification path, never in normal flow).
    """

    A: float
    lam: float
    xi: complex
    C: float
    residual: float
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool) -> None:
        _check_cutoff(self.A)
        if not validate:
            return
        failed = [
            (name, metric)
            for name, passed, metric in eigen_checks(self.A, self.lam, self.xi, self.C)
            if not passed
        ]
        if failed:
            raise ConsistencyError(
                "eigdata invariants violated: "
                + ", ".join(f"{name} (metric {metric:.3e})" for name, metric in failed)
            )


def assemble_system(
    A: float,
    lam: float,
    validate: bool = True,
    ctl: SeriesControl = DEFAULT_SERIES,
) -> EigenSystem:
    """Build the full spectral record for a given rate.

    The normal path is solve_lambda; this entry exists so a deliberately
    off-eigenvalue rate can be packaged (validate=False) and fed to the
    verification battery, which must then flag it.
    """
    A = _check_cutoff(A)
    if not (lam > 0.0 and math.isfinite(lam)):
        raise DomainError(f"rate must be positive and finite, got {lam!r}")
    xi = xi_of_lambda(lam)
    C = _normalizer_direct(A, xi, ctl)
    residual = abs(whittaker_w(1.0, 0.5 * xi, 2.0 / A, ctl))
    return EigenSystem(A=A, lam=lam, xi=xi, C=C, residual=residual, validate=validate)


def solve_lambda(
    A: float, tol: float = 1e-12, ctl: SeriesControl = DEFAULT_SERIES
) -> EigenSystem:
    """Solve the boundary condition for the principal rate at cutoff A.

    tol is the relative width the bracketing iteration must reach. Raises
    BracketError if no sign change is found, ConvergenceError if iteration
    stalls, ConsistencyError if the polished root fails its invariants
    (for example outside the kernel's reliable window, A below ~0.35).
    """
    A = _check_cutoff(A)
    if not (0.0 < tol <= 1e-6):
        raise DomainError(f"tol out of range (0, 1e-6]: {tol!r}")

    def g(lam: float) -> float:
        return whittaker_w(1.0, 0.5 * xi_of_lambda(lam), 2.0 / A, ctl).real

    lo, hi = lambda_bounds(A)
    width = hi - lo
    glo = g(lo)
    ghi = g(hi)
    # the proven bounds are strict, but allow the upper end to drift in case
    # roundoff parks g(hi) on the wrong side of zero
    grow = 0
    while (glo > 0.0) == (ghi > 0.0) and grow < 8:
        grow += 1
        hi = lo + width * 1.5**grow
        ghi = g(hi)
    if (glo > 0.0) == (ghi > 0.0):
        raise BracketError(
            f"eigencondition does not change sign near the proven bracket at A={A}"
        )

    lam = _brent(g, lo, hi, glo, ghi, tol)

    # guard against having converged to a higher branch: the boundary
    # function must keep one sign strictly below the bracket
    floor = min(1e-8, 0.5 * lo)
    prev = None
    for i in range(_SAMPLES_BELOW):
        t = floor + (lo - floor) * (i + 0.5) / _SAMPLES_BELOW
        s = g(t) > 0.0
        if prev is not None and s != prev:
            raise ConsistencyError(
                f"boundary condition changes sign below the bracket at A={A}; "
                "a smaller root exists"
            )
        prev = s

    return assemble_system(A, lam, ctl=ctl)
