"""Exception hierarchy shared by every module.

All domain failures derive from :class:`CanonFockError` so callers (the CLI in
particular) can separate out-of-domain parameters from genuine bugs.
"""


class CanonFockError(Exception):
    """Base class for all library errors."""

    #: short machine-readable tag, emitted by the CLI
    code = "error"


class DomainError(CanonFockError, ValueError):
    """Non-finite input or an argument outside the function's domain."""

    code = "domain"


class InvalidParameterError(DomainError):
    """The parameter pair is unusable (``s == 0`` or non-finite)."""

    code = "invalid_parameter"


class DivergenceError(DomainError):
    """A Gaussian integral would diverge for the given coefficients."""

    code = "divergent"


class OutOfDomainError(DomainError):
    """The requested quantity is undefined for this parameter regime."""

    code = "out_of_domain"


class NotCompactError(OutOfDomainError):
    """The operator is not compact, i.e. ``|s|^2 <= |t|^2 + 1``."""

    code = "not_compact"


class KernelNotInFpError(OutOfDomainError):
    """The kernel function fails to lie in ``F^p`` (``|s| <= |t|``)."""

    code = "kernel_not_in_fp"


class DimensionMismatchError(CanonFockError, ValueError):
    code = "dimension_mismatch"


class KernelOverflowError(CanonFockError, OverflowError):
    """Kernel exponent too large to exponentiate in double precision.

    The offending exponent is kept on the instance for diagnostics.
    """

    code = "overflow"

    def __init__(self, exponent, limit):
        self.exponent = exponent
        self.limit = limit
        super().__init__(
            f"kernel exponent has real part {float(exponent.real):.6g} > {limit:g}"
        )


class InternalConsistencyError(CanonFockError, RuntimeError):
    """Two routes to the same closed form disagree beyond roundoff."""

    code = "internal_consistency"
