"""Exception hierarchy.

Every error raised by the library derives from :class:`OrthoError`; the CLI
prints the class name so users can tell which module complained.
"""


class OrthoError(Exception):
    """Base class for all library errors."""


class ParseError(OrthoError, ValueError):
    pass


class FieldMismatch(OrthoError, ValueError):
    pass


class DimensionMismatch(OrthoError, ValueError):
    pass


class ZeroInverse(OrthoError, ZeroDivisionError):
    pass


class TrivialKernel(OrthoError, ValueError):
    pass


class NotInvertible(OrthoError, ValueError):
    pass


class NotTriangular(OrthoError, ValueError):
    pass


class DimensionTooSmall(OrthoError, ValueError):
    pass


class Unclassifiable(OrthoError, RuntimeError):
    pass


class WrongClass(OrthoError, ValueError):
    pass


class BadIndex(OrthoError, ValueError):
    pass


class NotAVertex(OrthoError, ValueError):
    pass


class TooLarge(OrthoError, ValueError):
    def __init__(self, size: int, bound: int, what: str = "enumeration"):
        super().__init__(f"{what} needs {size} candidate matrices, above the bound {bound}")
        self.size = size
        self.bound = bound


class InfiniteField(OrthoError, ValueError):
    pass


class UnsupportedFormat(OrthoError, ValueError):
    pass


class Disconnected(OrthoError):
    def __init__(self, label_a, label_b):
        super().__init__(f"vertices lie in different components: {label_a} vs {label_b}")
        self.label_a = label_a
        self.label_b = label_b


class ConstructionFailed(OrthoError, AssertionError):
    """An intermediate matrix of a path construction failed verification.

    This signals a bug (or a defect in the underlying argument); it should
    never surface for valid input.
    """

    def __init__(self, case: str, step: str):
        super().__init__(f"case {case}: {step}")
        self.case = case
        self.step = step
