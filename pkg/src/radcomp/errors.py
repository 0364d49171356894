"""Exception types raised across the package."""


class RadcompError(Exception):
    """Base class for all package errors."""


class DegreeExceeded(RadcompError):
    """Sampled values are not consistent with a polynomial of the allowed degree."""


class NotDivisible(RadcompError):
    """Exact division left a nonzero remainder."""


class NonScalarQuotient(RadcompError):
    """A quotient that should be a constant is a nonconstant polynomial."""


class DimensionMismatch(RadcompError):
    """Operands live in different numbers of variables."""


class NotPolynomial(RadcompError):
    """A theta-form operator has a pole at z = 0."""


class NotSpherical(RadcompError):
    """A crossed-product element does not act gradedly on powers of z = x^n."""


class NotRadial(RadcompError):
    """An operator does not map each power of f to a multiple of a fixed power shift."""


class NotRationalSplit(RadcompError):
    """A polynomial does not split into rational linear factors."""


class Unsupported(RadcompError):
    """A catalog row has no constructor for its invariant."""


class DimensionTooLarge(RadcompError):
    """A linear-algebra problem exceeds the configured monomial cap."""


class InsufficientModuli(RadcompError):
    """The chosen primes cannot certify an exact integer result."""
