from oim_lab.exceptions import OimValidationError


class InvalidDelta(OimValidationError):
    def __init__(self, delta: float) -> None:
        super().__init__(f"failure probability has to be in (0, 1], got {delta}")
        self.delta = delta


class MissingGap(OimValidationError):
    pass
