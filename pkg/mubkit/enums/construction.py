from enum import Enum


class Method(str, Enum):
    """Construction methods recorded in MubSet metadata and files."""

    PRIME_FORMULA = "PRIME_FORMULA"
    P2_QUADRATIC = "P2_QUADRATIC"
    WOOTTERS_FIELDS = "WOOTTERS_FIELDS"


class ClassKind(str, Enum):
    """Generator shapes of linear commuting classes."""

    Z_CLASS = "Z_CLASS"  # (0_m | 1_m)
    X_CLASS = "X_CLASS"  # (1_m | A)


class FieldOp(str, Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"
