"""Exception types. Every message is prefixed with the name of the raising module."""


class ToricMorError(ValueError):
    module = "toricmor"

    def __init__(self, message: str):
        super().__init__(f"{self.module}: {message}")
        self.detail = message


class FanError(ToricMorError):
    module = "fan-core"


class DegreeError(ToricMorError):
    module = "moduli-numerics"


class ThetaError(ToricMorError):
    module = "theta-ring"


class LocalizationError(ToricMorError):
    module = "localization-engine"


class NonCancellationError(LocalizationError):
    """Some negative power of t survived the sum over fixed points."""


class JacobianError(ToricMorError):
    module = "jacobian-integration"


class DocumentError(ToricMorError):
    module = "cli"
