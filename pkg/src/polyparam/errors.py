class PolyparamError(Exception):
    pass


class ModelError(PolyparamError):
    """Malformed model, constraint text or valuation.

    ``line``/``column`` are 1-based when known.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        loc = []
        if self.line is not None:
            loc.append(f"line {self.line}")
        if self.column is not None:
            loc.append(f"column {self.column}")
        return f"{', '.join(loc)}: {self.message}" if loc else self.message


class ValidationError(ModelError):
    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = list(errors)


class SpaceMismatch(PolyparamError):
    pass


class UnsupportedInput(PolyparamError):
    pass


class StateCeilingExceeded(PolyparamError):
    """More distinct hull keys at one location than the finiteness bound allows."""


class BoxTooLarge(PolyparamError):
    pass
