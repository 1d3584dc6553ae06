from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = 1


class VersionedModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


class LSubsetOut(BaseModel):
    group: str
    lattice: str
    values: Dict[str, str]
    tip: str
    tail: str

    @classmethod
    def of(cls, mu) -> "LSubsetOut":
        names = mu.lattice.elements
        return cls(
            group=mu.group.name,
            lattice=mu.lattice.name,
            values=mu.describe(),
            tip=names[mu.tip],
            tail=names[mu.tail],
        )

    def text(self, skip: Optional[str] = None) -> str:
        """{e:1, r2:b, ...}; entries equal to `skip` are left out."""
        body = ", ".join(f"{x}:{v}" for x, v in self.values.items() if v != skip)
        return "{" + body + "}"


class Violation(BaseModel):
    case: int
    property: str
    inputs: Dict[str, Any] = Field(default_factory=dict)


class VerificationReport(VersionedModel):
    suite_id: str
    result: str
    seed: int
    cases_run: int
    cases_checked: int
    violations: List[Violation] = Field(default_factory=list)
    budget_status: Literal["complete", "partial"] = "complete"
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations and self.budget_status == "complete"


class SuiteEntry(BaseModel):
    suite_id: str
    result: str
    description: str


class SuiteListing(VersionedModel):
    command: str = "verify --list"
    suites: List[SuiteEntry]


class CommandReport(VersionedModel):
    command: str
    exit_code: int = 0
    data: Dict[str, Any] = Field(default_factory=dict)
    # human-readable rendering, never serialized
    lines: List[str] = Field(default_factory=list, exclude=True)


class ErrorReport(VersionedModel):
    error: str
    exit_code: int
    field: Optional[str] = None
