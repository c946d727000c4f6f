from enum import Enum, IntEnum


class ExitCode(IntEnum):
    SUCCESS = 0
    CONFIG_ERROR = 1
    NUMERICAL_FAILURE = 2


class Command(Enum):
    SPECTRUM = "spectrum"
    SWEEP = "sweep"
    QPT = "qpt"
    RELAXATION = "relaxation"
    CLASSIFY = "classify"
    CONVERGE = "converge"


class OutputFormat(Enum):
    DSV = "dsv"
    STRUCTURED = "structured"


class TransitionKind(Enum):
    SECOND = "second"
    FIRST = "first"


DSV_DELIMITER = ","
CONFIG_PREFIX = "# config="
MANIFEST_NAME = "manifest.json"
NUMBER_FORMAT = "{:.17g}"

# oracle values are attached to this many lowest points of a squeezed harmonic spectrum (five complete shells)
SQUEEZED_ORACLE_COUNT = 21
