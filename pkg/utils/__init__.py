from .exceptions import (
    EngineError,
    ParseError,
    InvalidDecomposition,
    StructureError,
    MissingVariable,
    UnknownVariable,
    MissingOutput,
    DeterminismRequired,
    VtreeMismatch,
    UnsupportedOperation,
    BoundViolation,
    OracleLimitExceeded,
    BudgetExceeded,
)
from .verdicts import Verdict
from .conf import engine_setting
from .mixins import StatsByFormatMixin, EngineCommandMixin
