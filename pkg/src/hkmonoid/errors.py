"""Exception hierarchy shared by all modules."""


class HKError(Exception):
    """Base class for every error raised by hkmonoid."""


class ParseError(HKError, ValueError):
    pass


class NotTypeA(HKError, ValueError):
    pass


class TooSmall(HKError, ValueError):
    pass


class NotForest(HKError, ValueError):
    pass


class BadOrientation(HKError, ValueError):
    pass


class UnsupportedBlock(HKError, ValueError):
    pass


class NotSourceOrSink(HKError, ValueError):
    pass


class NotMultiplicityFree(HKError, ValueError):
    pass


class HasCycle(HKError, ValueError):
    pass


class NotFullContent(HKError, ValueError):
    pass


class NotPathComplete(HKError, ValueError):
    pass


class BadGluing(HKError, ValueError):
    pass


class NotComplete(HKError, RuntimeError):
    pass


class TableIncomplete(HKError, RuntimeError):
    pass


class Unstable(HKError, RuntimeError):
    pass


class ResourceExhausted(HKError, RuntimeError):
    """Common parent of the errors that mean "ran out of budget"."""


class LimitExceeded(ResourceExhausted):
    """Completion hit its rule limits; ``partial`` holds the system so far."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class CapExceeded(ResourceExhausted):
    def __init__(self, message, found=0):
        super().__init__(message)
        self.found = found
