"""Adaptive Gauss-Kronrod quadrature used to cross-check the closed forms.

Deliberately independent of the moment formulas: the only shared code is
the pdf evaluation itself, so an agreement between quad_moment and
moment_frac exercises the eigenvalue, the normalizer, the Whittaker
kernel and the hypergeometric reductions end to end.

The rule is the classic 15-point Kronrod extension of 7-point Gauss on
[-1, 1], applied to panels kept in a worst-error-first heap. Everything
is deterministic: ties in the heap break on insertion order and the
final sum runs over panels sorted by left endpoint, so repeated calls
bit-match.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .distribution import UNDERFLOW_X, qsd_pdf
from .errors import DomainError, ToleranceNotMetError
from .spectral import EigenSystem

__all__ = [
    "QuadratureSpec",
    "quad_moment",
    "quad_log_moment",
    "normalization_check",
]

# 15-point Kronrod abscissae (nonnegative half) and weights, with the
# embedded 7-point Gauss weights; values from the QUADPACK dqk15 tables.
_XGK = (
    0.99145537112081263920685469752632,
    0.94910791234275852452618968404785,
    0.86486442335976907278971278864093,
    0.74153118559939443986386477328079,
    0.58608723546769113029414483825873,
    0.40584515137739716690660641207696,
    0.20778495500789846760068940377324,
    0.0,
)
_WGK = (
    0.02293532201052922496373200805897,
    0.06309209262997855329070066318901,
    0.10479001032225018383987632254152,
    0.14065325971552591874518959051024,
    0.16900472663926790282658342659855,
    0.19035057806478540991325640242101,
    0.20443294007529889241416199923465,
    0.20948214108472782801299917489171,
)
_WG = (
    0.12948496616886969327061143267908,
    0.27970539148927666790146777142378,
    0.38183005050511894495036977548898,
    0.41795918367346938775510204081633,
)


@dataclass(frozen=True)
class QuadratureSpec:
    """Error budget and effort cap for one adaptive integration."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    underflow_cutoff: float = UNDERFLOW_X

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0.0 and math.isfinite(self.abs_tol)):
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol!r}")
        if not (self.rel_tol >= 0.0 and math.isfinite(self.rel_tol)):
            raise DomainError(f"rel_tol must be nonnegative, got {self.rel_tol!r}")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")
        if not 0.0 < self.underflow_cutoff < 1.0:
            raise DomainError(
                f"underflow_cutoff must sit in (0, 1), got {self.underflow_cutoff!r}"
            )


DEFAULT_QUADRATURE = QuadratureSpec()


def _gk15(f, a: float, b: float) -> tuple[float, float]:
    """Kronrod estimate and |K15 - G7| error gauge on [a, b]."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fc = f(mid)
    k = _WGK[7] * fc
    g = _WG[3] * fc
    for i in range(7):
        off = half * _XGK[i]
        pair = f(mid - off) + f(mid + off)
        k += _WGK[i] * pair
        if i % 2 == 1:
            g += _WG[i // 2] * pair
    return k * half, abs((k - g) * half)


def _seed_panels(lo: float, hi: float) -> list[tuple[float, float]]:
    # geometric ladder toward the left edge; the integrand dies like
    # exp(-1/x) there and polynomial rules want the scale changes split
    edges = [lo]
    x = lo
    while x * 4.0 < hi:
        x *= 4.0
        edges.append(x)
    edges.append(hi)
    return list(zip(edges[:-1], edges[1:]))


def _adapt(f, lo: float, hi: float, spec: QuadratureSpec) -> float:
    heap: list[tuple[float, int, float, float, float, float]] = []
    seq = 0
    for a, b in _seed_panels(lo, hi):
        val, err = _gk15(f, a, b)
        heapq.heappush(heap, (-err, seq, a, b, val, err))
        seq += 1
    splits = 0
    while True:
        total = math.fsum(item[4] for item in heap)
        err_total = math.fsum(item[5] for item in heap)
        budget = max(spec.abs_tol, spec.rel_tol * abs(total))
        if err_total <= budget:
            break
        if splits >= spec.max_subdivisions:
            raise ToleranceNotMetError(
                f"adaptive refinement hit the {spec.max_subdivisions}-split cap "
                f"with error {err_total:.3e} over budget {budget:.3e}",
                estimate=total,
                error_bound=err_total,
            )
        _, _, a, b, _, _ = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        for a2, b2 in ((a, mid), (mid, b)):
            val, err = _gk15(f, a2, b2)
            heapq.heappush(heap, (-err, seq, a2, b2, val, err))
            seq += 1
        splits += 1
    panels = sorted((item[2], item[4]) for item in heap)
    return math.fsum(v for _, v in panels)


def quad_moment(
    s: float, sys: EigenSystem, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """E[X^s] under the confined law by adaptive quadrature.

    Integrates x^s * pdf over [cutoff, A]; below the cutoff the density
    underflows to zero in doubles, and for s > -50 the lost mass is far
    beneath the error budget (the integrand carries exp(-1/x)).
    """
    if not math.isfinite(s):
        raise DomainError(f"order must be finite, got {s!r}")
    lo = spec.underflow_cutoff
    if sys.A <= lo:
        raise DomainError(f"cutoff {lo} swallows the whole support [0, {sys.A}]")

    def f(x: float) -> float:
        return math.pow(x, s) * qsd_pdf(x, sys)

    return _adapt(f, lo, sys.A, spec)


def quad_log_moment(
    sys: EigenSystem, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """E[log X] under the confined law by adaptive quadrature."""
    lo = spec.underflow_cutoff
    if sys.A <= lo:
        raise DomainError(f"cutoff {lo} swallows the whole support [0, {sys.A}]")

    def f(x: float) -> float:
        return math.log(x) * qsd_pdf(x, sys)

    return _adapt(f, lo, sys.A, spec)


def normalization_check(
    sys: EigenSystem, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Integral of the pdf over the support; 1 up to quadrature error."""
    lo = spec.underflow_cutoff
    if sys.A <= lo:
        raise DomainError(f"cutoff {lo} swallows the whole support [0, {sys.A}]")
    return _adapt(lambda x: qsd_pdf(x, sys), lo, sys.A, spec)
