"""Exception hierarchy shared by the term and net engines."""


class VkerError(Exception):
    """Base class for every error raised by this package."""


class TermSyntaxError(VkerError, ValueError):
    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} (at offset {pos})"
        super().__init__(message)
        self.pos = pos


class IteratedApplication(TermSyntaxError):
    """The head of an application is neither a variable nor an abstraction."""


class NotAValue(VkerError, ValueError):
    pass


class StaleRedex(VkerError, ValueError):
    pass


class FormatError(VkerError, ValueError):
    pass


class NotAnInternalENode(VkerError, ValueError):
    pass


class NotFreeSubstitution(VkerError, ValueError):
    pass


class NotCorrect(VkerError, ValueError):
    def __init__(self, report):
        if isinstance(report, str):
            text = report
        else:
            text = "; ".join(str(v) for v in getattr(report, "violations", report))
        super().__init__("net is not correct: " + text)
        self.report = report


class NotMCut(VkerError, ValueError):
    pass


class NotECut(VkerError, ValueError):
    pass


class StaleCut(VkerError, ValueError):
    pass


class InvariantBreach(VkerError, RuntimeError):
    """A theorem-backed invariant failed: this always signals a bug.

    ``payload`` carries the serialized structures involved so the failure
    can be replayed outside the process.
    """

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}


class BijectionMismatch(InvariantBreach):
    pass


class DivergenceDetected(InvariantBreach):
    pass
