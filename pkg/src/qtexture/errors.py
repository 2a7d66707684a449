"""Exception types raised by qtexture validators and constructors."""


class QTextureError(ValueError):
    """Base class for all qtexture errors."""


class NotHermitian(QTextureError):
    """Matrix is not Hermitian within the configured tolerance."""


class NotPSD(QTextureError):
    """Matrix has an eigenvalue below the negative tolerance."""


class TraceNotOne(QTextureError):
    """Matrix trace deviates from 1 beyond the configured tolerance."""


class InvalidDimension(QTextureError):
    """Dimension argument is not a positive integer."""


class IndexOutOfRange(QTextureError):
    """Basis index outside the valid 1..d range."""


class ParameterOutOfRange(QTextureError):
    """Family parameter outside its documented interval."""


class NonpositiveTemperature(QTextureError):
    """Temperature must be strictly positive."""


class InvalidRank(QTextureError):
    """Requested rank outside 1..d."""


class DimensionMismatch(QTextureError):
    """Operands have incompatible dimensions."""


class IncompleteChannel(QTextureError):
    """Kraus operators do not resolve the identity within tolerance."""


class InvalidSize(QTextureError):
    """Requested ensemble size is smaller than the state's rank."""


class UnknownMeasure(QTextureError):
    """Measure identifier is not one of the implemented quantifiers."""
