"""Exception hierarchy shared by all modules."""


class KernelToolsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(KernelToolsError, ValueError):
    """Evaluation point outside the open unit disk."""


class ParameterError(KernelToolsError, ValueError):
    """Kernel or routine parameters violate their documented ranges."""


class ConfigError(KernelToolsError, ValueError):
    """Coefficient-extraction configuration violates its invariants."""


class UnsupportedKernelError(KernelToolsError, ValueError):
    """The requested operation is not defined for this kernel variant."""


class DegenerateInputError(KernelToolsError, ValueError):
    """Not enough usable data to carry out a fit or a check."""


class PoleError(KernelToolsError, ValueError):
    """Gamma function requested at a non-positive integer."""


class NumericalHealthError(KernelToolsError, ArithmeticError):
    """A numerical self-check failed (e.g. spurious imaginary parts)."""


class PrecisionLossError(NumericalHealthError):
    """Alternating-series cancellation exceeded the accepted threshold."""


class NonConvergenceError(NumericalHealthError):
    """An iterative evaluation hit its term budget without converging."""


class IndeterminateError(NumericalHealthError):
    """Coefficient domination cannot be decided at some orders.

    The partially filled certificate is attached as ``certificate``.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate
