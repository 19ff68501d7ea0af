from pydantic import BaseModel, Field
from typing import List, Optional

from specforge.tools.factorizer import LadderWithSides, SetPair


# Set pair schemas
class SetPairSchema(BaseModel):
    A: List[int] = Field(..., min_length=1)
    B: List[int] = Field(..., min_length=1)
    n: int = Field(..., ge=1)

    @classmethod
    def from_domain(cls, sp: SetPair) -> "SetPairSchema":
        return cls(A=list(sp.a), B=list(sp.b), n=sp.n)

    def to_domain(self) -> SetPair:
        return SetPair(tuple(self.A), tuple(self.B), self.n)


# Ladder result schemas
class LadderResultSchema(BaseModel):
    """
    `ladder` is coarse-first for measure pairs; for set pairs it is the
    digit order M_1, M_2, ... of A = E_M1 + M1 M2 E_M3 + ... (finest first).
    """
    ladder: List[int]
    first_side: Optional[str] = None
    labels: List[str]

    @classmethod
    def for_measures(cls, result: LadderWithSides) -> "LadderResultSchema":
        return cls(ladder=list(result.ladder.entries), first_side=result.first_side, labels=list(result.labels))

    @classmethod
    def for_sets(cls, result: LadderWithSides) -> "LadderResultSchema":
        return cls(
            ladder=list(result.digit_order()),
            first_side=result.first_side,
            labels=list(reversed(result.labels)),
        )
