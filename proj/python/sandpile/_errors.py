class SandpileError(ValueError):
    """Domain error raised by the C++ core. `kind` names the failure, e.g. "NotReduced"."""

    def __init__(self, kind, message):
        super().__init__(message)
        self.kind = kind
