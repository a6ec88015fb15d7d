"""Exception taxonomy.

Kernel-level failures (special functions) derive from KernelError so callers
can distinguish "the machinery broke" from "you asked for something outside
the contract" (DomainError) or "the answer exists but was not reached"
(ConvergenceError and friends).
"""


class KernelError(Exception):
    """Base class for special-function kernel failures."""


class PoleError(KernelError):
    """Gamma or digamma evaluated at (or within 1e-12 of) a nonpositive integer."""


class DenominatorPoleError(KernelError):
    """A hypergeometric denominator parameter sits on a nonpositive integer.

    For the moment machinery this is the signal that the singular closed-form
    branch must be used instead of the generic one.
    """


class NonConvergenceError(KernelError):
    """A series failed to meet its stopping rule within max_terms."""


class UndefinedError(KernelError):
    """The requested function value does not exist (e.g. Whittaker M at -2b in N)."""


class DomainError(ValueError):
    """Input outside the documented domain of an operation."""


class BracketError(RuntimeError):
    """Root bracketing failed: no sign change after the allowed widenings."""


class ConvergenceError(RuntimeError):
    """Iterative solve stopped without meeting its tolerance."""


class RegimeError(RuntimeError):
    """Operation requires the real-index regime (lambda <= 1/8) but got the other one."""


class ToleranceNotMetError(RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget.

    Carries the best estimate and its error bound so callers can decide
    whether the partial answer is still useful.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class ConsistencyError(RuntimeError):
    """An internal cross-check failed (dual normalizer forms, cdf range, realness...)."""
