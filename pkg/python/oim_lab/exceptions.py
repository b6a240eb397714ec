class OimBaseException(Exception):  # noqa: N818
    """
    Base class for all custom exceptions we use in oim-lab.
    """


class OimValidationError(OimBaseException):
    """
    Invalid input data or parameters. Reported by the CLI with exit code 1.
    """


class CapExceededError(OimBaseException):
    """
    A computation would exceed one of the configured enumeration caps. Reported by the CLI with exit code 2.
    """

    def __init__(self, what: str, size: float, cap: float) -> None:
        super().__init__(f"{what}: {size:g} exceeds the configured cap {cap:g}")
        self.what = what
        self.size = size
        self.cap = cap


class EnumerationTooLarge(CapExceededError):
    pass


class NetTooLarge(CapExceededError):
    pass
