"""Self-contained complex special-function kernel.

Scalar double precision throughout (Python ``complex``); no third-party
dependencies. Provides Gamma, log-Gamma, reciprocal Gamma, digamma,
Pochhammer symbols, the confluent series 1F1 and 2F2, Whittaker M and W,
and the z-derivative of W.

The kernel is tuned for the windows this package actually visits: real
arguments z = 2/x, second Whittaker indices b that are real in [0, 1/2],
purely imaginary, or parked close to +-1/2 (the large-A regime pushes
2b toward 1), and hypergeometric denominator parameters passing near
nonpositive integers. Three regimes for W:

* generic parameters: the M-based connection formula;
* |2b - m| < 1e-3 for an integer m: the connection formula develops a
  0/0 pole pair, so W is reconstructed by symmetric 4-point Richardson
  extrapolation in the second index (offsets +-7.5e-4, +-1.5e-3);
* large z with moderate indices: the divergent large-z expansion summed
  to its smallest term, which avoids the exp(z) cancellation the
  connection formula suffers at large arguments. Mandatory from z = 20,
  but already preferred from z = 14 whenever its truncation error is
  measured below 1e-10 or 2b sits within 1e-2 of an integer (there the
  near-pole factors amplify the connection cancellation, while an index
  difference close to an odd integer makes the expansion nearly
  terminating).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    DenominatorPoleError,
    DomainError,
    NonConvergenceError,
    PoleError,
    UndefinedError,
)

_EPS = 2.220446049250313e-16
_POLE_TOL = 1e-12          # this close to a nonpositive integer counts as on it
_NEAR_INT_2B = 1e-3        # |2b - nearest integer| below this -> extrapolated W
_NEAR_INT_WIDE = 1e-2      # within this of an integer, large-z expansion preferred
_RICH_OFFSET = 7.5e-4      # b-offset of the 4-point extrapolation stencil ...
_RICH_OFFSET_SMALL_Z = 2e-5  # ... shrunk for z < 1 where arms stay clean and
                             # the quartic bias would poison small-argument roots
_ASYM_Z_HARD = 20.0        # large-z expansion mandatory beyond this (if eligible)
_ASYM_Z_SOFT = 14.0        # ... opportunistic from here when measurably accurate
_ASYM_TRUNC_OK = 1e-10     # measured truncation below this accepts the expansion
_ASYM_MAX_TERMS = 80


@dataclass(frozen=True)
class SeriesControl:
    """Stopping policy for ascending hypergeometric series.

    A term is "small" when |term| < rel_tol * |partial sum|; summation stops
    after consecutive_small_terms such terms in a row, and raises
    NonConvergenceError past max_terms.
    """

    rel_tol: float = 1e-15
    consecutive_small_terms: int = 3
    max_terms: int = 10000

    def __post_init__(self) -> None:
        if not (0.0 < self.rel_tol <= 1e-6):
            raise DomainError(f"rel_tol out of range: {self.rel_tol}")
        if self.consecutive_small_terms < 1:
            raise DomainError("consecutive_small_terms must be >= 1")
        if self.max_terms < 10:
            raise DomainError("max_terms must be >= 10")


DEFAULT_SERIES = SeriesControl()

# Lanczos rational approximation, g = 7, 9 terms. Standard coefficient set;
# ~1e-14 relative over the right half plane, which is what the Gamma
# recurrence and reflection tests budget for.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# digamma asymptotic tail: B_2k / 2k for 2k = 2..16
_DIGAMMA_TAIL = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
)


def _nonpositive_int_near(z: complex, tol: float = _POLE_TOL) -> int | None:
    """Nearest nonpositive integer within tol of z, or None."""
    n = round(z.real)
    if n <= 0 and abs(z - n) < tol:
        return n
    return None


def _sinpi(z: complex) -> complex:
    # sin(pi z) with the argument reduced against the nearest integer first,
    # so near-integer z keeps full relative accuracy (z - n is exact there).
    n = round(z.real)
    s = cmath.sin(math.pi * (z - n))
    return s if n % 2 == 0 else -s


def _tanpi(z: complex) -> complex:
    n = round(z.real)
    return cmath.tan(math.pi * (z - n))


def gamma(z: complex) -> complex:
    """Complex Gamma function.

    Raises:
        PoleError: z within 1e-12 of a nonpositive integer.
        OverflowError: |Gamma(z)| exceeds the double range.
    """
    z = complex(z)
    if _nonpositive_int_near(z) is not None:
        raise PoleError(f"gamma pole at z={z}")
    if z.real < 0.5:
        # reflection; sin(pi z) is bounded away from 0 by the pole check
        return math.pi / (_sinpi(z) * gamma(1.0 - z))
    w = z - 1.0
    acc = complex(_LANCZOS_C[0])
    for i in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    # exponentials folded together so representable values never overflow
    # through the t**(w+1/2) intermediate
    try:
        out = math.sqrt(2.0 * math.pi) * cmath.exp((w + 0.5) * cmath.log(t) - t) * acc
    except OverflowError as exc:
        raise OverflowError(f"gamma({z}) overflows double precision") from exc
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise OverflowError(f"gamma({z}) overflows double precision")
    return out


def log_gamma(z: complex) -> complex:
    """log Gamma(z) for Re z > 0 (principal value of the Lanczos form)."""
    z = complex(z)
    if z.real <= 0.0:
        raise DomainError("log_gamma requires Re z > 0")
    w = z - 1.0
    acc = complex(_LANCZOS_C[0])
    for i in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (w + 0.5) * cmath.log(t) - t + cmath.log(acc)


def rgamma(z: complex) -> complex:
    """1/Gamma(z); exact 0 at exact nonpositive integers, smooth nearby.

    Near-pole arguments keep full relative accuracy via the reflection form
    1/Gamma(z) = sin(pi z) Gamma(1-z) / pi, so callers may cancel the zero
    against a matching pole without losing digits.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real):
        return 0j
    if z.real < 0.5:
        return _sinpi(z) * gamma(1.0 - z) / math.pi
    return 1.0 / gamma(z)


def digamma(z: complex) -> complex:
    """Complex digamma via reflection, upward recurrence, and the Stirling tail."""
    z = complex(z)
    if _nonpositive_int_near(z) is not None:
        raise PoleError(f"digamma pole at z={z}")
    if z.real < 0.5:
        return digamma(1.0 - z) - math.pi / _tanpi(z)
    acc = 0j
    while z.real < 10.0:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    out = cmath.log(z) - 0.5 / z
    p = inv2
    for coeff in _DIGAMMA_TAIL:
        out -= coeff * p
        p *= inv2
    return out + acc


def pochhammer(z: complex, n: int) -> complex:
    """Rising factorial (z)_n = z (z+1) ... (z+n-1); (z)_0 = 1.

    Exact zeros for nonpositive-integer z with n > -z come out of the product
    naturally. n must be a nonnegative integer.
    """
    if n != int(n) or n < 0:
        raise DomainError(f"pochhammer order must be a nonnegative integer, got {n}")
    out = 1.0 + 0j
    z = complex(z)
    for k in range(int(n)):
        out *= z + k
    return out


def _hyp_series(
    num: tuple[complex, ...],
    den: tuple[complex, ...],
    z: complex,
    ctl: SeriesControl,
    pole_tol: float,
) -> complex:
    """Ascending pFq series with the recurrent term update.

    term_{n+1} = term_n * prod(a_i + n) / prod(b_j + n) * z / (n + 1),
    summed in increasing n until consecutive_small_terms terms in a row fall
    below rel_tol relative to the partial sum.

    A numerator parameter at a nonpositive integer terminates the series. A
    denominator parameter within pole_tol of a nonpositive integer raises
    DenominatorPoleError unless the series terminates: with finitely many
    terms each near-pole division is by an exactly-known parameter and the
    result stays fully accurate, whereas an infinite tail through the pole
    means the caller picked a formula about to lose its meaning.
    """
    terminates = False
    for a in num:
        a = complex(a)
        if a.imag == 0.0 and a.real <= 0.0 and a.real == round(a.real):
            terminates = True
    if not terminates:
        for b in den:
            if _nonpositive_int_near(complex(b), pole_tol) is not None:
                raise DenominatorPoleError(
                    f"denominator parameter {b} within {pole_tol} of nonpositive integer"
                )
    term = 1.0 + 0j
    total = 1.0 + 0j
    small = 0
    for n in range(ctl.max_terms):
        fac = 1.0 + 0j
        for a in num:
            fac *= a + n
        if fac == 0:
            return total  # terminated exactly
        dfac = 1.0 + 0j
        for b in den:
            dfac *= b + n
        if dfac == 0:
            raise DenominatorPoleError(
                f"denominator parameter hits a nonpositive integer at term {n}"
            )
        term *= fac / dfac * z / (n + 1)
        total += term
        if abs(term) < ctl.rel_tol * abs(total):
            small += 1
            if small >= ctl.consecutive_small_terms:
                return total
        else:
            small = 0
    raise NonConvergenceError(
        f"series pFq({num};{den};{z}) did not meet its stopping rule in {ctl.max_terms} terms"
    )


def hyp1f1(a: complex, b: complex, z: complex, ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """Kummer's 1F1(a; b; z) by ascending series (entire in z)."""
    return _hyp_series((complex(a),), (complex(b),), complex(z), ctl, _POLE_TOL)


def hyp2f2(
    a1: complex,
    a2: complex,
    b1: complex,
    b2: complex,
    z: complex,
    ctl: SeriesControl = DEFAULT_SERIES,
) -> complex:
    """2F2(a1, a2; b1, b2; z) by ascending series (entire in z).

    Denominator parameters closer than 1e-6 to a nonpositive integer raise
    DenominatorPoleError (the moment code must switch branches well before
    that); a terminating numerator parameter disarms the check.
    """
    return _hyp_series(
        (complex(a1), complex(a2)), (complex(b1), complex(b2)), complex(z), ctl, 1e-6
    )


def whittaker_m(
    kappa: complex, b: complex, z: float, ctl: SeriesControl = DEFAULT_SERIES
) -> complex:
    """Whittaker M_{kappa,b}(z) for real z > 0.

    M = z^(1/2+b) exp(-z/2) 1F1(1/2 + b - kappa; 1 + 2b; z).

    Raises:
        UndefinedError: -2b is a positive integer (within 1e-12), where M
            is not defined.
        DomainError: z is not a positive real.
    """
    z = _require_positive_real(z)
    kappa = complex(kappa)
    b = complex(b)
    if _nonpositive_int_near(1.0 + 2.0 * b) is not None:
        raise UndefinedError(f"whittaker_m undefined at 2b = {2 * b}")
    pref = cmath.exp((0.5 + b) * math.log(z) - 0.5 * z)
    return pref * hyp1f1(0.5 + b - kappa, 1.0 + 2.0 * b, z, ctl)


def _require_positive_real(z) -> float:
    if isinstance(z, complex):
        if z.imag != 0.0:
            raise DomainError(f"argument must be real and positive, got {z}")
        z = z.real
    z = float(z)
    if not (z > 0.0) or not math.isfinite(z):
        raise DomainError(f"argument must be real and positive, got {z}")
    return z


def _w_connection(kappa: complex, b: complex, z: float, ctl: SeriesControl) -> complex:
    # W = G(-2b)/G(1/2-b-k) M_{k,b} + G(2b)/G(1/2+b-k) M_{k,-b}; the caller
    # guarantees 2b is not parked on an integer, so the Gammas are safe and
    # the two M series are regular.
    c1 = gamma(-2.0 * b) * rgamma(0.5 - b - kappa)
    c2 = gamma(2.0 * b) * rgamma(0.5 + b - kappa)
    return c1 * whittaker_m(kappa, b, z, ctl) + c2 * whittaker_m(kappa, -b, z, ctl)


def _w_asymptotic(kappa: complex, b: complex, z: float) -> tuple[complex, float]:
    # z^kappa exp(-z/2) sum_s (-1)^s (1/2+b-k)_s (1/2-b-k)_s / (s! z^s),
    # truncated at the smallest term. Returns (value, trunc) where trunc is
    # the magnitude of the last kept term relative to the sum: the standard
    # optimal-truncation error estimate the dispatcher screens against.
    c1 = 0.5 + b - kappa
    c2 = 0.5 - b - kappa
    term = 1.0 + 0j
    total = 1.0 + 0j
    prev = math.inf
    last = 0.0
    for s in range(1, _ASYM_MAX_TERMS):
        term *= -(c1 + s - 1) * (c2 + s - 1) / (s * z)
        mag = abs(term)
        if mag >= prev:
            break  # divergent tail reached; stop at the smallest term
        total += term
        prev = mag
        last = mag
        if mag < _EPS * abs(total):
            break
    trunc = last / max(abs(total), 1e-300)
    return cmath.exp(kappa * math.log(z) - 0.5 * z) * total, trunc


def whittaker_w(
    kappa: complex, b: complex, z: float, ctl: SeriesControl = DEFAULT_SERIES
) -> complex:
    """Whittaker W_{kappa,b}(z) for real z > 0; even in b.

    Dispatches between the connection formula, the near-integer-2b
    Richardson stencil, and the large-z expansion (see module docstring).
    Never raises on near-integer 2b; that case is handled internally.
    """
    z = _require_positive_real(z)
    kappa = complex(kappa)
    b = complex(b)
    c1 = 0.5 + b - kappa
    c2 = 0.5 - b - kappa
    two_b = 2.0 * b
    dist = abs(two_b - round(two_b.real))
    if z >= _ASYM_Z_SOFT and abs(c1 * c2) <= z / 3.0:
        val, trunc = _w_asymptotic(kappa, b, z)
        # Below the hard cutoff the expansion is kept only when its measured
        # truncation already beats what exp(z)-scale cancellation leaves of
        # the connection formula, or when near-integer 2b would force the
        # pole-amplified stencil (strictly worse here).
        if z >= _ASYM_Z_HARD or trunc <= _ASYM_TRUNC_OK or dist < _NEAR_INT_WIDE:
            return val
    elif z >= 200.0:
        # indices too large for the eligibility screen, but the connection
        # route is hopeless at this magnitude; best-effort expansion
        return _w_asymptotic(kappa, b, z)[0]
    if dist < _NEAR_INT_2B:
        # quartic bias ~ W''''(b) eps^4 / 6; at small z the connection pieces
        # shrink with the offset, so a tight stencil costs no cancellation
        # and keeps eigencondition roots sharp at large cutoffs
        eps = _RICH_OFFSET if z >= 1.0 else _RICH_OFFSET_SMALL_Z
        s1 = 0.5 * (_w_connection(kappa, b + eps, z, ctl) + _w_connection(kappa, b - eps, z, ctl))
        s2 = 0.5 * (
            _w_connection(kappa, b + 2 * eps, z, ctl) + _w_connection(kappa, b - 2 * eps, z, ctl)
        )
        return (4.0 * s1 - s2) / 3.0
    return _w_connection(kappa, b, z, ctl)


def whittaker_w_dz(
    kappa: complex, b: complex, z: float, ctl: SeriesControl = DEFAULT_SERIES
) -> complex:
    """d/dz W_{kappa,b}(z) via the inverted forward recurrence:

    W' = ((z/2 - kappa) W_{kappa,b}(z) - W_{kappa+1,b}(z)) / z.
    """
    z = _require_positive_real(z)
    kappa = complex(kappa)
    b = complex(b)
    w0 = whittaker_w(kappa, b, z, ctl)
    w1 = whittaker_w(kappa + 1.0, b, z, ctl)
    return ((0.5 * z - kappa) * w0 - w1) / z


def documented_real(value: complex, what: str = "value") -> float:
    """Collapse a complex result that is real on paper to a float.

    Enforces |Im| <= 1e-10 * max(1, |Re|); anything larger means the kernel
    or the formula wiring is broken, not the caller's input.
    """
    from .errors import ConsistencyError

    if abs(value.imag) > 1e-10 * max(1.0, abs(value.real)):
        raise ConsistencyError(
            f"{what} should be real, got imaginary residue {value.imag!r} "
            f"against real part {value.real!r}"
        )
    return value.real
