"""Exception hierarchy shared by every module of the package."""


class ToricError(Exception):
    """Base class; ``code`` is the machine-readable name used by the CLI."""

    @property
    def code(self):
        return type(self).__name__


class NotSimplicial(ToricError):
    pass


class NotComplete(ToricError):
    pass


class NotProjective(ToricError):
    pass


class NotCartier(ToricError):
    pass


class TooManyRays(ToricError):
    pass


class UnboundedContribution(ToricError):
    """A contributing weight chamber has a nonzero recession cone."""


class Unbounded(ToricError):
    pass


class UnboundedChamber(Unbounded):
    pass


class InvalidQ(ToricError, ValueError):
    pass


class InvalidDegree(ToricError, ValueError):
    pass


class UnsupportedRank(ToricError):
    pass
