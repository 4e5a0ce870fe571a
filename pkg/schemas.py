from pydantic import BaseModel, Field
from typing import Dict, List, Optional, Union

SCHEMA_ID = "virtua/1"

Depth = Union[int, str]  # "inf" for the unit ideal


# Input file schemas
class BlockSpec(BaseModel):
    name: str
    count: int
    degree: List[int]


class RingDescriptor(BaseModel):
    p: Optional[int] = None
    blocks: List[BlockSpec]
    dimX: Optional[int] = None
    components: Optional[List[List[str]]] = None  # variable names per prime component of B


class ModuleSpec(BaseModel):
    twists: List[List[int]]


class ComplexFile(BaseModel):
    ring: Optional[RingDescriptor] = None
    modules: List[ModuleSpec]
    maps: List[List[List[str]]]  # maps[i] is phi_{i+1}, row-major


class PresentationFile(BaseModel):
    ring: Optional[RingDescriptor] = None
    source: ModuleSpec
    target: ModuleSpec
    matrix: List[List[str]]


# Report schemas
class Envelope(BaseModel):
    schema_id: str = Field(default=SCHEMA_ID, alias="schema")
    seed: int
    command: str

    class Config:
        populate_by_name = True


class IndexRecord(BaseModel):
    index: int
    rank_phi: int
    rank_F: int
    condition_a: bool
    I_phi: List[str]
    saturation: List[str]
    depth_unsaturated: Depth
    depth_saturated: Depth
    condition_b: bool


class TorsionCertificateOut(BaseModel):
    index: int
    homology_zero: bool
    fitt0: List[str]
    witnesses: Dict[str, bool]


class VirtualityReportOut(Envelope):
    records: List[IndexRecord]
    verdict_theorem: bool
    verdict_oracle: Optional[bool] = None
    exactness_note: bool
    certificates: List[TorsionCertificateOut] = []


class IdealReportOut(Envelope):
    generators: List[str]
    depth: Optional[Depth] = None
    saturated: bool = False


class ResolutionOut(Envelope):
    modules: List[ModuleSpec]
    maps: List[List[List[str]]]
    ranks: List[int]


class FittingEntryOut(BaseModel):
    j: int
    fitting: List[str]
    saturated: Optional[List[str]] = None


class FittingReportOut(Envelope):
    entries: List[FittingEntryOut]
    locally_free_rank: Optional[int] = None


class HomologyOut(Envelope):
    index: int
    is_zero: bool
    target: ModuleSpec
    matrix: List[List[str]]
    b_torsion: Optional[bool] = None


class RankOut(Envelope):
    rank: int
    max_minors: List[str]
