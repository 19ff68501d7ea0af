from pydantic import BaseModel, Field
from typing import List

from specforge.tools.tiling import GridMask, TranslateSystem


# Mask schemas
class MaskSchema(BaseModel):
    m: int = Field(..., ge=1)
    cells: str = Field(..., min_length=1, pattern=r"^[01]+$")

    @classmethod
    def from_domain(cls, mask: GridMask) -> "MaskSchema":
        return cls(m=mask.m, cells=mask.bits())

    def to_domain(self) -> GridMask:
        return GridMask.from_bits(self.cells, self.m)


class TranslateSystemSchema(BaseModel):
    offsets: List[str]
    count: int
    m: int

    @classmethod
    def from_domain(cls, system: TranslateSystem) -> "TranslateSystemSchema":
        return cls(offsets=[str(a) for a in system.offsets], count=system.count, m=system.m)
