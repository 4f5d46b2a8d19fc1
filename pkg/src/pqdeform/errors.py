"""Exception hierarchy shared by all pqdeform modules."""


class PqdeformError(Exception):
    """Base class for all workbench errors."""


class NonPositiveBase(PqdeformError):
    """A deformation base (p or q) is zero or negative."""


class ZeroExponent(PqdeformError):
    """One of the exponent parameters (alpha, gamma, l) is zero."""


class NonIntegerStep(PqdeformError):
    """Ladder mode requires the step l/(alpha*gamma) to be a positive integer."""


class NegativeStructureValue(PqdeformError):
    """A ladder amplitude radicand is negative for the requested truncation."""


class WrongVariant(PqdeformError):
    """Operation applied to a representation variant it is not defined for."""


class ParamMismatch(PqdeformError):
    """Two representations that must share parameters do not."""


class NonMonomialEpsilon(PqdeformError):
    """The variation parameter must be a single Laurent monomial."""


class BaseNotContractive(PqdeformError):
    """An infinite product base has modulus >= 1 and cannot converge."""


class DenominatorZero(PqdeformError):
    """Evaluation point coincides with a zero of the denominator product."""


class OriginArgument(PqdeformError):
    """A correlator argument that must be nonzero is zero."""


class PoleOnContour(PqdeformError):
    """A pole of the integrand lies (numerically) on the quadrature contour."""
