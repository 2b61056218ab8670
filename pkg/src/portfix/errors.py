class PortfixError(Exception):
    """Base class for all errors raised by portfix."""


class IndexingError(PortfixError):
    pass


class PatchTargetMissing(PortfixError):
    pass


class AmbiguousPatchTarget(PortfixError):
    pass


class BackendFailure(PortfixError):
    def __init__(self, message: str, raw_output: str = ""):
        super().__init__(message)
        self.raw_output = raw_output


class FormatError(PortfixError):
    pass


class NoUsageEvidence(PortfixError):
    pass


class PromptConstructionError(PortfixError):
    pass


class ParseFailure(PortfixError):
    pass


class OracleError(PortfixError):
    pass


class ModelBackendError(PortfixError):
    pass


class MissingRecording(ModelBackendError):
    def __init__(self, digest: str):
        super().__init__(f"no recording for prompt digest {digest}")
        self.digest = digest


class InvalidFaultSpec(PortfixError):
    pass


class DatasetError(PortfixError):
    pass


class ConfigError(PortfixError):
    pass
