"""Moments of arbitrary real order for the conditioned law.

The closed form at order s has two pieces:

    M(s) = 2 lam A^s / (s(s-1) + 2 lam) * 2F2(1, -s; b1, b2; 2/A)
         + C 2^s / Gamma(-s) * Gamma(1/2 + xi/2 - s) Gamma(1/2 - xi/2 - s)

with b1 = 3/2 + xi/2 - s and b2 = 3/2 - xi/2 - s. The second piece
vanishes identically at nonnegative integer s (reciprocal Gamma zero),
where the 2F2 terminates and the formula is exact term by term.

For real xi the formula's two pieces develop pole pairs at the ladder of
orders s = 1/2 +- xi/2 + k (k = 0, 1, ...). The function M(s) itself is
analytic there; only the representation degenerates. Orders close to the
ladder are therefore evaluated by quintic interpolation through nearby
clean orders, and the ladder points themselves also have a dedicated
logarithmic-series branch (moment_singular_base / _shifted) exposed for
direct use and cross-checking.

All dispatch decisions key off |s - ladder| with a 1e-3 band, widened
when the two ladder families crowd together (xi near 0: pairs around
half-integers; xi near 1: pairs around integers).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NonConvergenceError, RegimeError
from .specfun import (
    DEFAULT_SERIES,
    SeriesControl,
    digamma,
    documented_real,
    gamma,
    hyp2f2,
    pochhammer,
    rgamma,
)
from .spectral import EigenSystem, one_minus_xi

_MAX_ORDER = 50.0
_INT_SNAP = 1e-12      # this close to an integer counts as that integer
_BAND = 1e-3           # half-width of the interpolation band around the ladder
_CROWDED = 6e-3        # ladder families closer than this are handled jointly
_EXP_LIMIT = 700.0     # |s ln A| beyond this cannot be represented anyway


@dataclass(frozen=True)
class MomentResult:
    """Moment of the conditioned law: order, value, and which evaluation
    branch produced it ("series", "interpolated", "singular", "special",
    or "recurrence")."""

    s: float
    value: float
    branch: str


def _check_sys(sys: EigenSystem) -> EigenSystem:
    if not isinstance(sys, EigenSystem):
        raise DomainError("expected an EigenSystem")
    return sys


def _check_order(s: float, A: float) -> float:
    s = float(s)
    if not math.isfinite(s):
        raise DomainError(f"order must be finite, got {s!r}")
    if abs(s) > _MAX_ORDER:
        raise DomainError(f"order magnitude capped at {_MAX_ORDER}, got {s!r}")
    if abs(s) * abs(math.log(A)) > _EXP_LIMIT:
        raise DomainError(f"A**s overflows doubles for A={A}, s={s}")
    return s


def moment_integer(n: int, sys: EigenSystem) -> MomentResult:
    """Integer moment by the upward recurrence
    (k(k-1) + 2 lam) M_k = 2 lam A^k - 2 k M_{k-1}, starting from M_0 = 1.

    Independent of the hypergeometric machinery, which makes it the
    cross-check partner for moment_frac at integer orders.
    """
    _check_sys(sys)
    if n != int(n) or not 0 <= int(n) <= _MAX_ORDER:
        raise DomainError(f"integer order must lie in [0, {int(_MAX_ORDER)}], got {n!r}")
    n = int(n)
    _check_order(float(n), sys.A)
    lam, A = sys.lam, sys.A
    m = 1.0
    for k in range(1, n + 1):
        m = (2.0 * lam * A**k - 2.0 * k * m) / (k * (k - 1.0) + 2.0 * lam)
    return MomentResult(s=float(n), value=m, branch="recurrence")


def _regular_value(s: float, sys: EigenSystem, ctl: SeriesControl) -> float:
    # closed form with no dispatch; callers keep s clear of the ladder
    lam, A, xi, C = sys.lam, sys.A, sys.xi, sys.C
    half_eta = 0.5 * one_minus_xi(lam, xi)          # (1 - xi)/2, stable
    # all four parameters built as (integer - s) +- half_eta so that a
    # small result keeps the relative accuracy of half_eta instead of
    # absorbing an absolute eps from 0.5 + 0.5*xi rounded near 1
    g1 = (1.0 - s) - half_eta                       # 1/2 + xi/2 - s
    g2 = half_eta - s                               # 1/2 - xi/2 - s
    b1 = (2.0 - s) - half_eta
    b2 = (1.0 - s) + half_eta
    # s(s-1) + 2 lam factored through its roots (1 +- xi)/2; the product
    # form keeps relative accuracy when s grazes a root, the expanded sum
    # cancels to ~|s|^2 eps there
    den = g1 * g2
    pref = 2.0 * lam * math.pow(A, s) / den
    t1 = pref * hyp2f2(1.0, -s, b1, b2, 2.0 / A, ctl)
    rg = rgamma(complex(-s))
    if rg == 0:
        t2 = 0j
    else:
        t2 = C * math.pow(2.0, s) * rg * gamma(g1) * gamma(g2)
    return documented_real(t1 + t2, f"moment of order {s}")


def _ladder_window(s: float, sys: EigenSystem) -> tuple[float, float, float] | None:
    """(center, halfwidth, node spacing) of the interpolation stencil if s
    sits inside the band around the degenerate-order ladder, else None.

    The stencil spacing balances two error sources: node values lose
    ~eps * scale / dist^2 to cancellation at distance dist from a ladder
    order, while quintic truncation grows like (h log A)^6. Crowded
    clusters (pair separation under _CROWDED) get one window per cluster
    with nodes pushed clear of both members; isolated orders get a
    spacing that keeps all six nodes away from the partner order.
    """
    xi = sys.xi
    nu = abs(xi)
    if nu < _CROWDED:
        # families straddle half-integers 1/2 + k, k >= 0 (this covers a
        # complex xi grazing zero: the pair sits at 1/2 + k -+ i|xi|/2,
        # just off the real axis, and pinches the formula the same way)
        k = max(0.0, round(s - 0.5))
        c = 0.5 + k
        if abs(s - c) <= 0.5 * nu + _BAND:
            return c, 0.5 * nu + _BAND, max(4e-3, 1.5 * nu)
        return None
    if xi.imag != 0.0:
        return None                      # ladder fully complex, never close
    eta = one_minus_xi(sys.lam, xi).real
    if eta < _CROWDED:
        # families pair up around integers m >= 1, lone low order at eta/2
        if s > 0.5:
            c = max(1.0, round(s))
            if abs(s - c) <= 0.5 * eta + _BAND:
                return c, 0.5 * eta + _BAND, max(4e-3, 1.5 * eta)
            return None
        c = 0.5 * eta
        return (c, _BAND, 4e-3) if abs(s - c) <= _BAND else None
    # well-separated ladder: distance to the nearest member of either family
    best: tuple[float, float] | None = None
    for p0 in (0.5 + 0.5 * xi.real, 0.5 * eta):
        k = max(0.0, round(s - p0))
        d = abs(s - (p0 + k))
        if best is None or d < best[0]:
            best = (d, p0 + k)
    if best is not None and best[0] <= _BAND:
        sep = min(xi.real, eta)          # nearest partner order is >= this
        h = min(4e-3, (sep - 2.0 * _BAND) / 3.0)
        return best[1], _BAND, h
    return None


def moment_frac(
    s: float, sys: EigenSystem, ctl: SeriesControl = DEFAULT_SERIES
) -> MomentResult:
    """Moment of real order s in [-50, 50] via the closed form.

    Orders within 1e-12 of a nonnegative integer snap to it (the series
    terminates there and the Gamma piece is exactly zero). Orders inside
    the band around the degenerate ladder are produced by quintic
    interpolation through six clean neighbors; everything else is the
    direct two-piece formula.
    """
    _check_sys(sys)
    s = _check_order(s, sys.A)
    n = round(s)
    if abs(s - n) <= _INT_SNAP and n >= 0:
        return MomentResult(
            s=float(n), value=_regular_value(float(n), sys, ctl), branch="series"
        )
    window = _ladder_window(s, sys)
    if window is None:
        return MomentResult(s=s, value=_regular_value(s, sys, ctl), branch="series")
    c, _, h = window
    nodes = [c + j * h for j in (-3.0, -2.0, -1.0, 1.0, 2.0, 3.0)]
    vals = [_regular_value(t, sys, ctl) for t in nodes]
    acc = 0.0
    for j, (tj, fj) in enumerate(zip(nodes, vals)):
        w = 1.0
        for i, ti in enumerate(nodes):
            if i != j:
                w *= (s - ti) / (tj - ti)
        acc += w * fj
    return MomentResult(s=s, value=acc, branch="interpolated")


def _require_real_index(sys: EigenSystem, what: str) -> float:
    if sys.xi.imag != 0.0 or sys.xi.real == 0.0:
        raise RegimeError(
            f"{what} needs a real positive index xi; at A={sys.A} the rate "
            "sits past the oscillatory threshold (or exactly on it)"
        )
    return sys.xi.real


def moment_special_value(sys: EigenSystem, sigma: int) -> MomentResult:
    """Moment at the distinguished order s = -1/2 + sigma xi/2, where the
    closed form collapses: M = (1 - sigma xi)/4 * A^{(1 + sigma xi)/2}.

    sigma is +1 or -1. Real index only (RegimeError otherwise).
    """
    _check_sys(sys)
    xi = _require_real_index(sys, "the distinguished-order shortcut")
    if sigma not in (-1, 1):
        raise DomainError(f"sigma must be +1 or -1, got {sigma!r}")
    eta = one_minus_xi(sys.lam, sys.xi).real
    if sigma > 0:
        coef, expo = 0.25 * eta, 0.5 * (1.0 + xi)
    else:
        coef, expo = 0.25 * (1.0 + xi), 0.5 * eta
    s = -0.5 + 0.5 * sigma * xi
    _check_order(s + 1.0, sys.A)  # the value itself scales like A^(s+1)
    return MomentResult(s=s, value=coef * math.exp(expo * math.log(sys.A)), branch="special")


def moment_singular_base(
    sys: EigenSystem, sigma: int, ctl: SeriesControl = DEFAULT_SERIES
) -> MomentResult:
    """Moment exactly at the bottom ladder order s = 1/2 + sigma xi/2 via
    the logarithmic series (the representation both regular pieces
    degenerate into). Real index only."""
    _check_sys(sys)
    xi = _require_real_index(sys, "the degenerate-order branch")
    if sigma not in (-1, 1):
        raise DomainError(f"sigma must be +1 or -1, got {sigma!r}")
    lam, A = sys.lam, sys.A
    s_star = 0.5 + 0.5 * sigma * xi
    z = 2.0 / A
    log_z = math.log(z)
    a = -0.5 - 0.5 * sigma * xi                     # Pochhammer numerator
    eta = one_minus_xi(lam, sys.xi).real            # 1 - xi, stable
    h = 0.5 * eta
    d = eta if sigma > 0 else 1.0 + xi              # 1 - sigma xi
    # For xi near 1 the arguments a + j and d + j graze the digamma poles
    # at -1 and 0 with offsets ~eta; forming them as plain doubles keeps
    # only |offset|/eps relative digits, so the grazing cases are unwound
    # with the recurrence psi(u+1) = psi(u) + 1/u against the exact offset.
    psi_1h = digamma(complex(1.0 + h)).real
    if sigma > 0:
        psi_d0 = digamma(complex(1.0 + eta)).real - 1.0 / eta       # psi(eta)
        psi_a = {
            0: psi_1h - 1.0 / h - 1.0 / (h - 1.0),                  # psi(-1+h)
            1: psi_1h - 1.0 / h,                                    # psi(h)
        }
    else:
        psi_d0 = digamma(complex(d)).real
        psi_a = {0: digamma(complex(1.0 - h)).real + 1.0 / h}       # psi(-h)
    total = 0.0
    coef = 1.0                                      # (a)_j z^j / (j! (d)_j)
    small = 0
    for j in range(300):
        psi_d_j = psi_d0 if j == 0 else digamma(complex(d + j)).real
        psi_a_j = psi_a.get(j)
        if psi_a_j is None:
            psi_a_j = digamma(complex(a + j)).real
        bracket = digamma(complex(1.0 + j)).real + psi_d_j - psi_a_j - log_z
        term = coef * bracket
        total += term
        if abs(term) < 1e-15 * max(1.0, abs(total)):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        coef *= (a + j) * z / ((d + j) * (j + 1.0))
    else:
        raise NonConvergenceError("degenerate-order series did not settle in 300 terms")
    value = sigma * (2.0 * lam / xi) * math.pow(A, s_star) * total
    return MomentResult(s=s_star, value=value, branch="singular")


def moment_singular_shifted(
    sys: EigenSystem, sigma: int, k: int, ctl: SeriesControl = DEFAULT_SERIES
) -> MomentResult:
    """Moment at the shifted ladder order s = 1/2 + sigma xi/2 + k, built
    from the bottom-order value by the finite ladder relation."""
    _check_sys(sys)
    xi = _require_real_index(sys, "the degenerate-order branch")
    if k != int(k) or k < 0:
        raise DomainError(f"ladder shift must be a nonnegative integer, got {k!r}")
    k = int(k)
    base = moment_singular_base(sys, sigma, ctl)
    if k == 0:
        return base
    s_star = base.s + k
    _check_order(s_star, sys.A)
    lam, A = sys.lam, sys.A
    sxi = sigma * xi
    if sigma > 0:
        one_p = 2.0 - one_minus_xi(lam, sys.xi).real        # 1 + sigma xi
    else:
        one_p = one_minus_xi(lam, sys.xi).real
    acc = 0.0
    coef = 1.0                                 # (-A/2)^j j! (1+sxi)_j / (5/2+sxi/2)_j
    for j in range(k):
        acc += coef
        coef *= (-0.5 * A) * (j + 1.0) * (one_p + j) / (2.5 + 0.5 * sxi + j)
    inner = base.value - 2.0 * lam / (3.0 + sxi) * math.pow(A, 1.5 + 0.5 * sxi) * acc
    front = (
        math.pow(-2.0, k)
        / (math.factorial(k) * pochhammer(complex(one_p), k).real)
        * pochhammer(complex(1.5 + 0.5 * sxi), k).real
    )
    return MomentResult(s=s_star, value=front * inner, branch="singular")


def moment_log(sys: EigenSystem, ctl: SeriesControl = DEFAULT_SERIES) -> float:
    """Expected logarithm under the conditioned law:
    E[log X] = log A - (M(-1) - 1/2) / lam."""
    _check_sys(sys)
    m_neg1 = moment_frac(-1.0, sys, ctl).value
    return math.log(sys.A) - (m_neg1 - 0.5) / sys.lam


def limit_moment(s: float) -> float:
    """Limit of the order-s moment as A grows: 2^s Gamma(1 - s), s < 1."""
    s = float(s)
    if not math.isfinite(s) or s >= 1.0:
        raise DomainError(f"the limiting moment needs s < 1, got {s!r}")
    if abs(s) > _MAX_ORDER:
        raise DomainError(f"order magnitude capped at {_MAX_ORDER}, got {s!r}")
    return math.pow(2.0, s) * gamma(complex(1.0 - s)).real


def moment_recurrence_residual(
    s: float, sys: EigenSystem, ctl: SeriesControl = DEFAULT_SERIES
) -> float:
    """Dimensionless defect of the order-shift identity
    (s(s-1) + 2 lam) M(s) = 2 lam A^s - 2 s M(s-1),
    using independently evaluated closed-form moments on both sides."""
    _check_sys(sys)
    s = _check_order(s, sys.A)
    _check_order(s - 1.0, sys.A)
    lam, A = sys.lam, sys.A
    ms = moment_frac(s, sys, ctl).value
    ms1 = moment_frac(s - 1.0, sys, ctl).value
    lhs = (s * (s - 1.0) + 2.0 * lam) * ms
    r1 = 2.0 * lam * math.pow(A, s)
    r2 = 2.0 * s * ms1
    scale = abs(lhs) + abs(r1) + abs(r2)
    if scale == 0.0:
        return 0.0
    return abs(lhs - r1 + r2) / scale
