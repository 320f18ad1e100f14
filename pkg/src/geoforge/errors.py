"""Exception types shared across the pipeline."""


class GeoForgeError(Exception):
    """Base class for all package errors."""


class ParseError(GeoForgeError):
    """Base for DSL parse failures; carries the offending token and line."""

    def __init__(self, message: str, token: str = "", line: int = 0):
        super().__init__(f"{message} (token={token!r}, line={line})" if token or line else message)
        self.token = token
        self.line = line


class UnknownTemplate(ParseError):
    pass


class ArityMismatch(ParseError):
    pass


class UndefinedPoint(ParseError):
    pass


class RedefinedPoint(ParseError):
    pass


class UnderdeterminedOrInvalid(ParseError):
    pass


class UnknownPredicate(GeoForgeError):
    pass


class DegenerateAfterRetries(GeoForgeError):
    """All instantiation attempts violated the minimum-separation margin."""


class Unsatisfiable(GeoForgeError):
    """A construction has no numeric solution (e.g. line misses circle)."""


class NoValidExtension(GeoForgeError):
    """Premise sampling found no viable construction within the budget."""


class EmptyPool(GeoForgeError):
    """The sampler's seed construction itself failed."""


class UnsoundDerivation(GeoForgeError):
    """A derived fact failed the numeric soundness filter."""


class NotDerived(GeoForgeError):
    """Requested a proof trace for a fact outside the closure."""


class InsufficientConclusions(GeoForgeError):
    """Fewer eligible provable conclusions than requested options."""


class NoFalsifiableVariant(GeoForgeError):
    """Every candidate distractor was accidentally true or near-degenerate."""


class MissingTemplate(GeoForgeError):
    """No text template for a clause or option predicate in a language."""


class SchemaMismatch(GeoForgeError):
    pass


class MalformedLine(GeoForgeError):
    def __init__(self, message: str, line_number: int):
        super().__init__(f"{message} (line {line_number})")
        self.line_number = line_number


class UnknownProblemId(GeoForgeError):
    pass


class EndpointError(GeoForgeError):
    pass


class MissingImage(GeoForgeError):
    pass


class ConfigError(GeoForgeError):
    pass
