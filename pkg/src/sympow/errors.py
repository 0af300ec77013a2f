"""Exception hierarchy."""


class SympowError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatch(SympowError, ValueError):
    pass


class ZeroPolynomialError(SympowError, ValueError):
    pass


class ValidationError(SympowError, ValueError):
    """Input exponents do not describe a valid monomial curve."""


class GcdNotOne(ValidationError):
    def __init__(self, exponents, g):
        self.exponents = tuple(exponents)
        self.gcd = g
        super().__init__(f"gcd of {list(self.exponents)} is {g}, not 1")


class RedundantGenerator(ValidationError):
    def __init__(self, exponents, index, witness=None):
        self.exponents = tuple(exponents)
        self.index = index
        self.value = self.exponents[index]
        self.witness = witness
        how = f" = {'+'.join(map(str, witness))}" if witness else ""
        super().__init__(
            f"redundant generator {self.value}{how}: "
            f"the exponents define a smaller embedding dimension"
        )


class NotZeroDimensional(SympowError):
    pass


class InhomogeneousIdeal(SympowError, ValueError):
    pass


class InvalidCase(SympowError, ValueError):
    pass


class WrongResidue(InvalidCase):
    pass


class NotArithmetic(InvalidCase):
    pass


class GcdViolation(ValidationError):
    pass


class RedundancyAfterTransform(ValidationError):
    pass


class WitnessMismatch(SympowError, ValueError):
    pass


class NotCompleteIntersection(SympowError, ValueError):
    pass


class SoundnessAlarm(SympowError, AssertionError):
    """A computed invariant contradicts a proven statement; never expected."""
