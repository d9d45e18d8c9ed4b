"""Result records and error classes shared by every module."""

from dataclasses import dataclass, field


class MalformedError(ValueError):
    """Input tables are the wrong shape or hold out-of-range indices."""


class CapExceeded(RuntimeError):
    """An enumeration would visit more candidates than its cap allows."""

    def __init__(self, what, cap):
        super().__init__(f"{what}: enumeration cap {cap} exceeded")
        self.what = what
        self.cap = cap


class TheoremViolation(AssertionError):
    """A counterexample to a result that is supposed to hold unconditionally."""

    def __init__(self, claim, witness):
        super().__init__(f"{claim}: counterexample {witness!r}")
        self.claim = claim
        self.witness = witness


class NotCartesian(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple

    def to_dict(self):
        return {"law": self.law, "witness": list(self.witness)}


@dataclass
class ValidationReport:
    subject: str
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, law, witnesses):
        self.violations.extend(Violation(law, tuple(w)) for w in witnesses)

    def laws(self):
        return sorted({v.law for v in self.violations})

    def to_dict(self):
        return {
            "claim": f"{self.subject} satisfies its laws",
            "status": "holds" if self.ok else "fails",
            "witnesses": [v.to_dict() for v in self.violations],
            "counts": {"violations": len(self.violations)},
        }


@dataclass
class CheckResult:
    """Outcome of checking one claim; ``witnesses`` is empty iff it holds."""

    claim: str
    holds: bool
    witnesses: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)

    @property
    def status(self):
        return "holds" if self.holds else "fails"

    def __bool__(self):
        return self.holds

    def to_dict(self):
        out = {
            "claim": self.claim,
            "status": self.status,
            "witnesses": [list(w) if isinstance(w, tuple) else w for w in self.witnesses],
            "counts": dict(self.counts),
        }
        if self.data:
            out["data"] = self.data
        return out
