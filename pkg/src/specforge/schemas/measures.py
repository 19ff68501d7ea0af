from pydantic import BaseModel, Field, field_validator
from typing import List, Literal, Optional, Union
from fractions import Fraction

from specforge.tools.ladder import Decomposition, FactorSpec, Ladder, Side
from specforge.tools.measures import DiscreteMeasure, UniformSegment


def rational_text(value: Union[int, str]) -> str:
    """Canonical text of an exact rational; floats are rejected"""
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError(f"expected an integer or a rational string, got {value!r}")
    try:
        return str(Fraction(str(value).strip()))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational: {value!r}")


# Measure schemas
class AtomSchema(BaseModel):
    pos: List[str]
    w: str

    @field_validator("pos", mode="before")
    @classmethod
    def _position(cls, v):
        if isinstance(v, (int, str)):
            v = [v]
        return [rational_text(c) for c in v]

    @field_validator("w", mode="before")
    @classmethod
    def _weight(cls, v):
        return rational_text(v)


class MeasureSchema(BaseModel):
    dim: int = Field(1, ge=1)
    atoms: List[AtomSchema] = Field(..., min_length=1)

    @classmethod
    def from_domain(cls, m: DiscreteMeasure) -> "MeasureSchema":
        return cls(
            dim=m.dim,
            atoms=[AtomSchema(pos=[str(c) for c in pos], w=str(w)) for pos, w in m.atoms],
        )

    def to_domain(self) -> DiscreteMeasure:
        return DiscreteMeasure(
            tuple((tuple(Fraction(c) for c in a.pos), Fraction(a.w)) for a in self.atoms),
            self.dim,
        )


class SegmentSchema(BaseModel):
    """Normalized Lebesgue measure on [0, length]^dim"""
    length: str
    dim: int = 1

    @classmethod
    def from_domain(cls, seg: UniformSegment) -> "SegmentSchema":
        return cls(length=str(seg.length), dim=seg.dim)


class MeasurePairSchema(BaseModel):
    """Input file of factor-measures"""
    p: MeasureSchema
    q: MeasureSchema


# Ladder schemas
class FactorSpecSchema(BaseModel):
    ladder: List[int]
    type: Literal["I", "II"]
    side: Literal["odd", "even"]
    level: Optional[int] = None
    tail_on: Optional[Literal["odd", "even"]] = None

    @classmethod
    def from_domain(cls, spec: FactorSpec) -> "FactorSpecSchema":
        return cls(
            ladder=list(spec.ladder.entries),
            type=spec.decomposition.value,
            side=spec.side.value,
            level=spec.level,
            tail_on=spec.tail_on.value if spec.tail_on else None,
        )

    def to_domain(self) -> FactorSpec:
        return FactorSpec(
            Ladder(tuple(self.ladder)),
            Decomposition(self.type),
            Side(self.side),
            self.level,
            Side(self.tail_on) if self.tail_on else None,
        )
