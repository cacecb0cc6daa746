class MonoidToposError(Exception):
    pass


class ParseError(MonoidToposError):
    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class UnknownGeneratorError(MonoidToposError):
    pass


class NonConfluentError(MonoidToposError):
    def __init__(self, name, pair):
        self.pair = pair
        super().__init__(f"rules of {name} are not locally confluent: "
                         f"critical pair {pair}")


class MorphismError(MonoidToposError):
    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(verdict.detail)


class ActionMismatchError(MonoidToposError):
    pass


class BoundError(MonoidToposError):
    """A degree bound is too small for the requested computation."""


class ConfigError(MonoidToposError):
    pass
