from enum import Enum


class MethodOption(str, Enum):
    """Values accepted by `generate --method`."""

    AUTO = "auto"
    PRIME = "prime"
    P2 = "p2"
    WF = "wf"


class ExportWhat(str, Enum):
    BASES = "bases"
    CLASSES = "classes"
    FAMILY = "family"


class ExportFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class ExitCode(int, Enum):
    """Exit-code contract of the command line."""

    OK = 0
    VERIFY_FAILED = 1
    BAD_INPUT = 2
    SPECTRAL_FAILURE = 3
