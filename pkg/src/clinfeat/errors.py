"""Exception hierarchy shared across the package."""


class ClinfeatError(Exception):
    """Base class for all errors raised by clinfeat."""


class ParseError(ClinfeatError, ValueError):
    """Malformed input text.

    ``line`` (1-based) or ``offset`` (0-based character offset) locate the
    problem when known.
    """

    def __init__(self, message, *, line=None, offset=None):
        self.line = line
        self.offset = offset
        where = ""
        if line is not None:
            where = f"line {line}: "
        elif offset is not None:
            where = f"offset {offset}: "
        super().__init__(where + message)


class StructuralError(ClinfeatError, ValueError):
    """Well-formed input whose structure violates a model invariant."""


class ValidationError(ClinfeatError, ValueError):
    """Input that fails schema or invariant validation; ``path`` names the location."""

    def __init__(self, message, path=""):
        self.message = message
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class EmptyOutputError(ClinfeatError, ValueError):
    """A parse produced nothing for the requested selection."""


class FeatureUnavailable(ClinfeatError):
    """A feature cannot be computed because a required input layer is missing.

    Feature extraction turns this into NA rather than a fabricated value.
    """


class ConfigError(ClinfeatError):
    pass


class ConfigNotFoundError(ConfigError, FileNotFoundError):
    pass


class MalformedConfigError(ConfigError, ValueError):
    pass


class UnknownFeatureError(ConfigError, ValueError):
    def __init__(self, name, suggestion=None):
        self.name = name
        self.suggestion = suggestion
        msg = f"unknown feature {name!r}"
        if suggestion:
            msg += f" (did you mean {suggestion!r}?)"
        super().__init__(msg)
