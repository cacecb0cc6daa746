from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a finitary check.

    ``bound`` is None when the check is exact, otherwise the degree bound
    it was carried out at.
    """
    accepted: bool
    detail: str = ""
    witness: Any = None
    bound: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.accepted

    @classmethod
    def accept(cls, detail="", witness=None, bound=None, **extra):
        return cls(True, detail, witness, bound, extra)

    @classmethod
    def reject(cls, detail, witness=None, bound=None, **extra):
        return cls(False, detail, witness, bound, extra)
