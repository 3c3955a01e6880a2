"""Exception hierarchy shared by every module of the toolkit."""


class ToolkitError(Exception):
    """Base class for all errors raised by atomicframes."""


class NonFinite(ToolkitError, ValueError):
    pass


class NotHermitian(ToolkitError, ValueError):
    pass


class DimensionMismatch(ToolkitError, ValueError):
    pass


class NotAFrame(ToolkitError):
    """The frame operator is not safely invertible."""


class NotAtomicForL(ToolkitError):
    """range(L) is not contained in the span of the family, so no Bessel dual exists."""


class DomainViolation(ToolkitError, ValueError):
    pass


class NotAvailable(ToolkitError):
    """The requested quantity has no closed form for this kernel."""


class QuadratureDivergence(ToolkitError, ArithmeticError):
    """Doubling the quadrature resolution moved the result by more than the gate."""


class NonRadialWeight(ToolkitError, ValueError):
    pass
