from dataclasses import dataclass


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: truthy when it passed, with a reason when it did not."""

    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def failed(cls, reason: str) -> "Verdict":
        return cls(False, reason)
