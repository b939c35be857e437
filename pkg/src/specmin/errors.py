"""Exception types raised by specmin

All of them are ValueError subclasses, so callers that only guard against bad
input with `except ValueError` keep working.
"""


class SpecminError(ValueError):
    pass


class GraphError(SpecminError):
    """Malformed graph input or an invalid graph transformation"""


class NotATreeError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class Graph6Error(GraphError):
    pass


class SolverCapError(SpecminError):
    """A documented size cap was exceeded"""


class ConvergenceError(SpecminError):
    pass


class CertificateError(SpecminError):
    """A radius certificate could not be used or produced as requested"""


class PlanError(SpecminError):
    pass


class EmptyClassError(SpecminError):
    pass


class UsageError(SpecminError):
    pass
