"""
Exception hierarchy

Domain code raises these; only the command layer turns them into exit codes
(InputError -> 2, anything else raised by a check -> 1).
"""


class SpecforgeError(Exception):
    """Root of every error raised by the library"""


class InputError(SpecforgeError, ValueError):
    """Malformed or inconsistent input"""


class MeasureError(InputError):
    """Invalid atomic measure (zero weight, mass != 1, dimension clash)"""


class LadderError(InputError):
    """Invalid ladder or factor specification"""


class FactorizationError(InputError):
    """Input pair is not complementary, or peeling got stuck"""


class SpectrumError(SpecforgeError):
    """Spectrum construction failed"""


class FourierError(SpecforgeError):
    """Transform evaluation failed"""


class AmbiguousClassificationError(FourierError):
    """Tail bound too wide to decide whether a value is zero"""


class TilingError(SpecforgeError):
    """No translate system exists for the given masks"""
