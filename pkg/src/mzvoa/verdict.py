from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict

PROVED = "Proved"
REFUTED = "Refuted"
INCONCLUSIVE = "Inconclusive"

EXIT_CODES = {PROVED: 0, REFUTED: 1, INCONCLUSIVE: 2}


@dataclass(frozen=True)
class Verdict:
    """Three-valued answer to a radical or membership query.

    A Refuted verdict always carries a witness; a Proved verdict always names
    its reasoning (``structural`` or ``exhaustive``) in ``reason``.
    """

    status: str
    witness: Any = None
    reason: str = ""
    bounds: Dict[str, Any] = field(default_factory=dict)
    certificate: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in EXIT_CODES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == REFUTED and self.witness is None:
            raise ValueError("a Refuted verdict needs a witness")
        if self.status == PROVED and not self.reason:
            raise ValueError("a Proved verdict needs a reason")

    @property
    def proved(self) -> bool:
        return self.status == PROVED

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


def proved(reason, **kw) -> Verdict:
    return Verdict(PROVED, reason=reason, **kw)


def refuted(witness, reason="", **kw) -> Verdict:
    return Verdict(REFUTED, witness=witness, reason=reason, **kw)


def inconclusive(reason, **kw) -> Verdict:
    return Verdict(INCONCLUSIVE, reason=reason, **kw)


class BoundOverflow(ArithmeticError):
    """A declared degree, window or size bound was exceeded."""
