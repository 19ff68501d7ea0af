from pydantic import BaseModel, Field
from typing import List, Optional, Union

from specforge.tools.spectra import Spectrum


# Spectrum schemas
class SpectrumSchema(BaseModel):
    base: List[Union[int, List[int]]] = Field(..., min_length=1)
    period: Optional[int] = Field(None, ge=1)
    dim: int = Field(1, ge=1)

    @classmethod
    def from_domain(cls, s: Spectrum) -> "SpectrumSchema":
        return cls(
            base=[list(p) if isinstance(p, tuple) else p for p in s.base],
            period=s.period,
            dim=s.dim,
        )

    def to_domain(self) -> Spectrum:
        base = tuple(tuple(p) if isinstance(p, list) else p for p in self.base)
        return Spectrum(base, self.period, self.dim)
