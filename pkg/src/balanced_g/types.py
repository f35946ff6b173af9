"""Shared result types."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ComplexEval:
    """A complex evaluation result with an absolute error estimate.

    ``method`` records which representation produced the value
    (for example ``"left-series"`` or ``"theorem-2.2"``).
    """

    value: complex
    est_error: float = 0.0
    method: str = ""

    def __complex__(self):
        return complex(self.value)


@dataclass
class IdentityReport:
    """Two-sided identity check: LHS vs RHS against a tolerance."""

    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    tolerance: float
    passed: bool
    identity: str = ""
    details: dict = field(default_factory=dict)

    @classmethod
    def from_sides(cls, lhs, rhs, tolerance, identity="", details=None, relative=True):
        lhs = complex(lhs)
        rhs = complex(rhs)
        abs_res = abs(lhs - rhs)
        scale = max(abs(lhs), abs(rhs))
        rel_res = abs_res / scale if scale > 0 else abs_res
        passed = (rel_res if relative else abs_res) < tolerance
        return cls(lhs, rhs, abs_res, rel_res, tolerance, passed, identity, details or {})
