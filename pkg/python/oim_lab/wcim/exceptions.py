from oim_lab.exceptions import OimValidationError


class SingularGramian(OimValidationError):
    def __init__(self, node: int, reason: str) -> None:
        super().__init__(f"Gramian of node {node} is not positive-definite: {reason}")
        self.node = node


class InvalidCoefficients(OimValidationError):
    pass
