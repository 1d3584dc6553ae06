from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator

# identifiers end up in "value@element" point lists
_RESERVED = (",", "@")


class LatticeFile(BaseModel):
    name: str = Field(..., min_length=1)
    elements: List[str] = Field(..., min_length=1, max_length=64)
    le: List[Tuple[str, str]] = Field(default_factory=list)
    notes: Optional[str] = None

    @field_validator("elements")
    @classmethod
    def plain_identifiers(cls, v: List[str]) -> List[str]:
        for label in v:
            if not label or any(ch in label for ch in _RESERVED):
                raise ValueError(f"element id {label!r} must be non-empty and free of ',' and '@'")
        if len(set(v)) != len(v):
            raise ValueError("element ids must be unique")
        return v


class GroupFile(BaseModel):
    name: str = Field(..., min_length=1)
    kind: Literal["cayley", "permutation"]
    table: Optional[List[List[int]]] = None
    degree: Optional[int] = Field(None, ge=1, le=32)
    generators: Optional[List[List[int]]] = None
    aliases: Dict[str, Union[int, str]] = Field(default_factory=dict)
    notes: Optional[str] = None

    @field_validator("table")
    @classmethod
    def square_table(cls, v: Optional[List[List[int]]]) -> Optional[List[List[int]]]:
        if v is None:
            return v
        for i, row in enumerate(v):
            if len(row) != len(v):
                raise ValueError(f"row {i} has {len(row)} entries, the table has {len(v)} rows")
        return v

    @field_validator("aliases")
    @classmethod
    def plain_aliases(cls, v: Dict[str, Union[int, str]]) -> Dict[str, Union[int, str]]:
        for label in v:
            if not label or any(ch in label for ch in _RESERVED):
                raise ValueError(f"alias {label!r} must be non-empty and free of ',' and '@'")
        return v

    @model_validator(mode="after")
    def fields_match_kind(self) -> "GroupFile":
        if self.kind == "cayley":
            if not self.table:
                raise ValueError("cayley groups need a non-empty 'table'")
        else:
            if self.degree is None:
                raise ValueError("permutation groups need 'degree'")
            if self.generators is None:
                raise ValueError("permutation groups need 'generators'")
        return self


class LSubsetFile(BaseModel):
    group: str = Field(..., min_length=1)
    lattice: str = Field(..., min_length=1)
    default: str
    values: Dict[str, str] = Field(default_factory=dict)
    notes: Optional[str] = None
