class EngineError(Exception):
    default_detail = "knowledge compilation error"

    def __init__(self, detail: str | None = None):
        self.detail = detail or self.default_detail
        super().__init__(self.detail)


class ParseError(EngineError):
    default_detail = "malformed input"

    def __init__(self, detail: str | None = None, line: int | None = None):
        self.line = line
        if line is not None:
            detail = f"line {line}: {detail or self.default_detail}"
        super().__init__(detail)


class InvalidDecomposition(EngineError):
    default_detail = "invalid tree decomposition"


class StructureError(EngineError):
    default_detail = "circuit violates the structuredness conditions"


class MissingVariable(EngineError):
    default_detail = "assignment does not cover every variable"


class UnknownVariable(EngineError):
    default_detail = "variable is not labeled in the vtree"


class MissingOutput(EngineError):
    default_detail = "circuit has no such output"


class DeterminismRequired(EngineError):
    default_detail = "operation needs a deterministic circuit"


class VtreeMismatch(EngineError):
    default_detail = "circuits are not structured by the same vtree"


class UnsupportedOperation(EngineError):
    default_detail = "operation is not supported"


class BoundViolation(EngineError):
    default_detail = "width bound violated"


class OracleLimitExceeded(EngineError):
    default_detail = "instance too large for brute force"


class BudgetExceeded(EngineError):
    default_detail = "budget exceeded"

    def __init__(self, stage: str, detail: str | None = None):
        self.stage = stage
        super().__init__(f"{stage}: {detail or self.default_detail}")
