"""Exception hierarchy shared by every module of the package."""


class XJacobiError(Exception):
    """Base class for all errors raised by xjacobi."""


class RegimeViolation(XJacobiError, ValueError):
    """Parameters (alpha, beta) fall outside the requested regime."""


class DegenerateFamily(XJacobiError, ValueError):
    """The requested family member loses its nominal degree (beta = 0)."""


class DomainError(XJacobiError, ValueError):
    """A degree or argument outside the admissible range was requested."""


class BetaZero(DegenerateFamily):
    """beta = 0 where the Sobolev inner product needs 2/beta."""


class GammaPole(XJacobiError, ArithmeticError):
    """Gamma function evaluated at a non-positive integer."""


class OverflowInExact(XJacobiError, OverflowError):
    """A coefficient overflowed (float mode) or could not be represented."""


class EigensolverFailure(XJacobiError, RuntimeError):
    """The tridiagonal QL iteration did not converge."""


class SingularIntegrand(XJacobiError, ValueError):
    """The vanishing conditions required by a weighted integral are not met."""


class PoleAt(XJacobiError, ValueError):
    """Evaluation requested at (or numerically on top of) a pole."""

    def __init__(self, x: float):
        super().__init__(f"pole at x = {x!r}")
        self.x = x


class Diverged(XJacobiError, ArithmeticError):
    """An endpoint limit grows without stabilising."""

    def __init__(self, message: str, growth_exponent: float | None = None):
        super().__init__(message)
        self.growth_exponent = growth_exponent


class InconclusiveNearThreshold(XJacobiError):
    """A numerical classification was requested inside the threshold dead zone."""


class UnboundedK(XJacobiError, ArithmeticError):
    """The CHEL constant K appears to be infinite."""


class RootFindingFailure(XJacobiError, ArithmeticError):
    """Newton polishing did not reach the requested residual."""
