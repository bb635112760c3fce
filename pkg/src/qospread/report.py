"""Structured pass/fail outcome shared by the symbolic and numeric checkers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of one verification run.

    ``failures`` holds (member labels, detail) pairs; ``max_residual`` is set
    by numeric checks only; ``covered``/``expected`` are filled by counting
    checks such as the partition oracle.  ``passed`` is true exactly when
    ``failures`` is empty (numeric residuals above tolerance are recorded as
    failures by the checker that measured them).
    """

    passed: bool
    checks_run: int
    max_residual: float | None = None
    failures: list[tuple[str, str]] = field(default_factory=list)
    covered: int | None = None
    expected: int | None = None

    def describe(self) -> str:
        bits = [f"checks={self.checks_run}"]
        if self.max_residual is not None:
            bits.append(f"max_residual={self.max_residual:.3e}")
        if self.covered is not None:
            bits.append(f"covered={self.covered}/{self.expected}")
        lines = [f"{'PASS' if self.passed else 'FAIL'} ({', '.join(bits)})"]
        for who, what in self.failures[:20]:
            lines.append(f"  {who}: {what}")
        if len(self.failures) > 20:
            lines.append(f"  ... and {len(self.failures) - 20} more failures")
        return "\n".join(lines)

    def summary(self) -> dict:
        """Machine-readable form for the family-file verification block."""
        out: dict = {"passed": self.passed, "checks": self.checks_run}
        if self.max_residual is not None:
            out["max_residual"] = float(self.max_residual)
        if self.covered is not None:
            out["covered"] = self.covered
            out["expected"] = self.expected
        out["failures"] = len(self.failures)
        return out
