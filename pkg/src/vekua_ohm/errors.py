"""Exception types raised by the toolkit."""


class VekuaError(Exception):
    """Base class for all errors raised by vekua_ohm."""


class EvaluationDomainError(VekuaError, ValueError):
    """A field returned a non-finite value on a stencil or quadrature node."""


class DegeneratePairError(VekuaError, ValueError):
    """The generating pair is (numerically) degenerate: |F conj(G) - conj(F) G| too small."""


class SingularWeightError(VekuaError, ValueError):
    """The weight p of a p-analytic system vanishes."""


class QuadratureError(VekuaError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance.

    Attributes
    ----------
    estimate : float
        Error estimate achieved when refinement stopped.
    """

    def __init__(self, message, estimate):
        super().__init__(f"{message} (achieved error estimate {estimate:.3e})")
        self.estimate = estimate


class UnsupportedClosedFormError(VekuaError, ValueError):
    """No closed form exists for the requested formal degree."""


class FitError(VekuaError, ValueError):
    """Invalid input to the separable conductivity fitter."""


class DomainError(VekuaError, ValueError):
    """A point lies outside the domain of a fitted function."""
