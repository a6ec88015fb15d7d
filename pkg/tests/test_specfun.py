import cmath
import math

import pytest

from shiryaev_qsd.errors import DenominatorPoleError, DomainError, ConsistencyError
from shiryaev_qsd.specfun import (
    SeriesControl,
    digamma,
    documented_real,
    gamma,
    hyp1f1,
    hyp2f2,
    pochhammer,
    rgamma,
    whittaker_m,
    whittaker_w,
    whittaker_w_dz,
)

# reference values frozen from 40-digit evaluations
GAMMA_C = complex(0.309686256743749129, -0.85678775293927049595)
PSI_QUARTER = -4.2274535333762654081
F22 = 0.83751961133885706467
F11_REAL = 2.3644538928052092846
F11_CPLX = complex(0.28831637337894328925, 0.057672079123884973589)
WHIT_M = 0.95425189958467891473
WHIT_W = 0.63998985469550709937
WHIT_W_SMALLZ = -0.070137014544984922988
WHIT_W_IMAG_B = 0.078119276157416346175
WHIT_W_HALF = 0.6693904804452894868  # 3 e^{-3/2}, elementary case
WHIT_W_DZ = -0.26214753138115296131


def rel(a, b):
    return abs(a - b) / abs(b)


def test_gamma_complex_anchor():
    assert rel(gamma(complex(0.3, 0.7)), GAMMA_C) < 1e-12


def test_gamma_real_factorials():
    for n in range(1, 15):
        assert rel(gamma(complex(n)), math.factorial(n - 1)) < 1e-13


def test_gamma_recurrence_property():
    # Gamma(z+1) = z Gamma(z) across quadrants and magnitudes
    pts = [
        complex(a, b)
        for a in (-6.3, -2.7, -0.4, 0.2, 1.9, 7.5, 23.0)
        for b in (-11.0, -0.8, 0.0, 0.3, 4.0)
    ]
    for z in pts:
        g1 = gamma(z + 1)
        g0 = gamma(z)
        assert abs(g1 - z * g0) / max(abs(g1), abs(z * g0)) < 5e-13, z


def test_gamma_reflection_near_pole():
    # relative accuracy must survive next to the poles of the reflection
    z = complex(-5.0 + 1e-9, 0.0)
    # Gamma(-5 + eps) ~ -1/(120 eps)
    assert rel(gamma(z), -1.0 / (120.0 * 1e-9)) < 1e-6


def test_rgamma_zero_at_nonpositive_integers():
    for n in range(0, 12):
        assert rgamma(complex(-n)) == 0


def test_rgamma_matches_reciprocal():
    for z in (complex(0.3, 0.7), complex(4.5), complex(-2.3, 1.1)):
        assert rel(rgamma(z), 1.0 / gamma(z)) < 1e-13


def test_digamma_anchor():
    assert rel(digamma(complex(0.25)), PSI_QUARTER) < 1e-13


def test_digamma_recurrence():
    for z in (complex(0.17), complex(3.3, -2.0), complex(-4.6, 0.2)):
        assert abs(digamma(z + 1) - digamma(z) - 1.0 / z) < 1e-13 * max(
            1.0, abs(digamma(z))
        )


def test_pochhammer_integer_cases():
    assert pochhammer(complex(3.0), 4) == 3.0 * 4.0 * 5.0 * 6.0
    assert pochhammer(complex(-2.0), 3) == 0.0
    assert pochhammer(complex(1.5), 0) == 1.0


def test_hyp1f1_real_anchor():
    assert rel(hyp1f1(0.5, 1.5, 2.0), F11_REAL) < 1e-13


def test_hyp1f1_complex_anchor():
    got = hyp1f1(complex(-0.3, 0.2), complex(1.1, -0.4), 1.7)
    assert rel(got, F11_CPLX) < 1e-13


def test_hyp2f2_anchor():
    assert rel(hyp2f2(1.0, -0.5, 1.2, 0.8, 0.3), F22) < 1e-13


def test_hyp2f2_terminating_is_finite_polynomial():
    # a2 a nonpositive integer cuts the series; sum the polynomial by hand
    a1, a2, b1, b2, z = 1.0, -3.0, 0.7, 1.9, 0.4
    acc, term = 0.0, 1.0
    for j in range(4):
        acc += term
        term *= (a1 + j) * (a2 + j) * z / ((b1 + j) * (b2 + j) * (j + 1.0))
    assert hyp2f2(a1, a2, b1, b2, z) == pytest.approx(acc, rel=1e-15)


def test_terminating_series_ignores_denominator_graze():
    # numerator terminates at j=2, denominator pole sits at j=3: fine
    val = hyp2f2(1.0, -1.0, 0.5, -2.0 + 1e-9, 0.3)
    assert math.isfinite(val.real)


def test_nonterminating_denominator_pole_raises():
    with pytest.raises(DenominatorPoleError):
        hyp1f1(0.3, -2.0, 0.5)


def test_whittaker_m_anchor():
    assert rel(whittaker_m(0.3, 0.4, 1.1), WHIT_M) < 1e-13


def test_whittaker_w_anchor():
    assert rel(whittaker_w(0.3, 0.4, 1.1), WHIT_W) < 1e-9


def test_whittaker_w_small_z():
    assert rel(whittaker_w(1.0, 0.35, 0.02), WHIT_W_SMALLZ) < 1e-8


def test_whittaker_w_imaginary_second_index():
    got = whittaker_w(0.0, complex(0.0, 0.2), 5.0)
    assert abs(got.imag) < 1e-10
    assert rel(got.real, WHIT_W_IMAG_B) < 1e-9


def test_whittaker_w_elementary_case():
    # kappa = 1, b = 1/2 collapses to z e^{-z/2}
    assert rel(whittaker_w(1.0, 0.5, 3.0), WHIT_W_HALF) < 1e-10
    assert rel(whittaker_w(1.0, 0.5, 3.0), 3.0 * math.exp(-1.5)) < 1e-10


def test_whittaker_w_even_in_b():
    for b in (0.37, 1.21):
        for z in (0.6, 2.5, 9.0):
            assert whittaker_w(0.8, b, z) == whittaker_w(0.8, -b, z)


def test_whittaker_w_near_integer_2b_stencil():
    # 2b within 1e-3 of an integer routes through the Richardson stencil;
    # the limit itself must come out clean
    direct = whittaker_w(1.0, 0.5 + 2e-4, 2.0)
    nearby = whittaker_w(1.0, 0.5 + 2e-3, 2.0)
    assert abs(direct - nearby) < 5e-3 * abs(nearby)
    assert rel(whittaker_w(1.0, 0.5, 2.0), 2.0 * math.exp(-1.0)) < 1e-10


def test_whittaker_w_regime_seam_accuracy():
    # accuracy straddling the connection/asymptotic handoff near z = 20,
    # the weakest stretch of the kernel (both routes bottom out here)
    anchors = [
        (0.11, 19.995, 0.00089927836334820911298),
        (0.11, 20.005, 0.00089524602962649956254),
        (complex(0.0, 0.3), 19.995, 0.00089469604778835491305),
        (complex(0.0, 0.3), 20.005, 0.0008906865374920346333),
    ]
    for b, z, want in anchors:
        assert rel(whittaker_w(1.0, b, z), want) < 2e-6, (b, z)


def test_whittaker_w_dz_anchor():
    assert rel(whittaker_w_dz(0.0, 0.35, 0.8), WHIT_W_DZ) < 1e-8


def test_whittaker_w_dz_finite_difference():
    b, k, z = 0.27, 1.0, 1.7
    h = 1e-6
    fd = (whittaker_w(k, b, z + h) - whittaker_w(k, b, z - h)) / (2 * h)
    assert rel(whittaker_w_dz(k, b, z), fd) < 1e-8


def test_whittaker_w_rejects_bad_z():
    with pytest.raises(DomainError):
        whittaker_w(1.0, 0.3, 0.0)
    with pytest.raises(DomainError):
        whittaker_w(1.0, 0.3, -2.0)


def test_documented_real_accepts_and_rejects():
    assert documented_real(complex(2.0, 1e-12)) == 2.0
    with pytest.raises(ConsistencyError):
        documented_real(complex(2.0, 1e-3))


def test_series_control_validation():
    with pytest.raises(DomainError):
        SeriesControl(max_terms=0)
