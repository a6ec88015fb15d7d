import math

import pytest
import scipy.integrate

from shiryaev_qsd.distribution import UNDERFLOW_X, qsd_pdf
from shiryaev_qsd.errors import DomainError, ToleranceNotMetError
from shiryaev_qsd.quadrature import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    normalization_check,
    quad_log_moment,
    quad_moment,
)
from shiryaev_qsd.spectral import EigenSystem

# oracle-frozen values, same provenance as the anchors in test_moments
QUAD_FRAC_20 = {
    -0.7: 0.681515360166309512937,
    0.3: 1.29761742395592314376,
    3.7: 706.829627314892243863,
}
QUAD_LOG = {20.0: 0.76869754340116908, 100.0: 1.0685916998164794}


def test_spec_validation():
    for bad in (
        dict(abs_tol=0.0),
        dict(abs_tol=-1e-12),
        dict(rel_tol=-1.0),
        dict(max_subdivisions=0),
        dict(underflow_cutoff=0.0),
        dict(underflow_cutoff=1.5),
    ):
        with pytest.raises(DomainError):
            QuadratureSpec(**bad)


def test_spec_defaults_sane():
    assert DEFAULT_QUADRATURE.underflow_cutoff == UNDERFLOW_X
    assert DEFAULT_QUADRATURE.abs_tol <= 1e-10


def test_frozen_moments(solved):
    es = solved(20.0)
    for s, ref in QUAD_FRAC_20.items():
        v = quad_moment(s, es)
        assert abs(v - ref) <= 1e-11 * abs(ref), s


def test_frozen_log_moments(solved):
    for A, ref in QUAD_LOG.items():
        v = quad_log_moment(solved(A))
        assert abs(v - ref) <= 1e-11 * abs(ref), A


def test_normalization_near_one(solved):
    for A in (1.0, 5.0, 20.0, 100.0, 10000.0):
        assert abs(normalization_check(solved(A)) - 1.0) < 1e-11, A


def test_bit_determinism(solved):
    es = solved(20.0)
    for s in (-0.7, 0.3, 3.7):
        assert quad_moment(s, es) == quad_moment(s, es)
    assert quad_log_moment(es) == quad_log_moment(es)
    assert normalization_check(es) == normalization_check(es)


def test_tolerance_failure_carries_estimate(solved):
    es = solved(20.0)
    tight = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-15, max_subdivisions=3)
    with pytest.raises(ToleranceNotMetError) as exc:
        quad_moment(0.3, es, tight)
    err = exc.value
    # partial estimate still usable, bound honest
    assert abs(err.estimate - QUAD_FRAC_20[0.3]) < 1e-6
    assert err.error_bound > 0.0


def test_against_scipy(solved):
    es = solved(20.0)
    for s in (-0.7, 0.3, 3.7):
        ref, bound = scipy.integrate.quad(
            lambda x: x**s * qsd_pdf(x, es),
            UNDERFLOW_X,
            es.A,
            epsabs=1e-13,
            epsrel=1e-12,
            limit=400,
        )
        assert bound < 1e-10 * max(1.0, abs(ref))
        assert abs(quad_moment(s, es) - ref) <= 1e-10 * max(1.0, abs(ref)), s


def test_domain_errors(solved):
    es = solved(20.0)
    with pytest.raises(DomainError):
        quad_moment(float("nan"), es)
    with pytest.raises(DomainError):
        quad_moment(float("inf"), es)
    tiny = EigenSystem(
        A=1e-3, lam=1.0, xi=complex(1.0), C=1.0, residual=0.0, validate=False
    )
    for fn in (normalization_check, quad_log_moment):
        with pytest.raises(DomainError):
            fn(tiny)
    with pytest.raises(DomainError):
        quad_moment(1.0, tiny)
