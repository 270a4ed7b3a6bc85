"""Exception hierarchy. ``exit_code`` is what the CLI returns for each."""


class IsosurfError(Exception):
    exit_code = 3


class ConfigError(IsosurfError):
    exit_code = 2


class NotOrthogonal(IsosurfError):
    pass


class Unclassifiable(IsosurfError):
    def __init__(self, message, nearest=None):
        super().__init__(message)
        self.nearest = nearest


class IncompatiblePlane(IsosurfError):
    pass


class NotAdmissible(IsosurfError):
    def __init__(self, message, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class NoClosedForm(IsosurfError):
    pass


class ChartUnavailable(IsosurfError):
    pass


class NoConvergence(IsosurfError):
    pass


class DomainError(IsosurfError):
    pass


class EmptyValidity(DomainError):
    pass


class DegenerateParameters(IsosurfError):
    pass


class VerificationFailure(IsosurfError):
    exit_code = 4
