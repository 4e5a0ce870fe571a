# fitting.py - Fitting ideals, their B-saturations and the sheaf-level tests built on them
import logging
from dataclasses import dataclass
from typing import List, Optional

from coxring import IrrelevantIdeal
from errors import InputError
from freemod import GradedMatrix, Presentation, minors_ideal, rank
from groebner import Ideal, contains, ideal_strings, is_b_saturated, saturate_by_irrelevant
from schemas import FittingEntryOut, FittingReportOut
from settings import parallel_map


def fitting_ideal(j: int, P: Presentation) -> Ideal:
    """Fitt_j = I_{r-j} of the presentation matrix, r the rank of its target"""
    if j < 0:
        raise InputError(f"Fitting index must be non-negative, got {j}")
    return minors_ideal(P.target_rank - j, P.matrix)


def saturated_fitting(j: int, P: Presentation, B: IrrelevantIdeal) -> Ideal:
    return saturate_by_irrelevant(fitting_ideal(j, P), B)


@dataclass
class FittingEntry:
    j: int
    fitting: Ideal
    saturated: Optional[Ideal] = None

    def to_schema(self) -> FittingEntryOut:
        return FittingEntryOut(j=self.j, fitting=ideal_strings(self.fitting),
                               saturated=None if self.saturated is None else ideal_strings(self.saturated))


@dataclass
class FittingLadder:
    presentation: Presentation
    entries: List[FittingEntry]

    def fitting(self, j: int) -> Ideal:
        if j >= len(self.entries):
            return Ideal.unit(self.presentation.matrix.ring)
        return self.entries[j].fitting

    def saturated(self, j: int) -> Ideal:
        if j >= len(self.entries):
            return Ideal.unit(self.presentation.matrix.ring)
        return self.entries[j].saturated

    def to_schema(self, command: str, seed: int, locally_free_rank: int = None) -> FittingReportOut:
        return FittingReportOut(seed=seed, command=command,
                                entries=[e.to_schema() for e in self.entries],
                                locally_free_rank=locally_free_rank)


def fitting_ladder(P: Presentation, B: IrrelevantIdeal = None, jmax: int = None) -> FittingLadder:
    """Fitt_0..Fitt_jmax (default: up to the target rank, where the ladder reaches S)"""
    jmax = P.target_rank if jmax is None else jmax

    def entry(j: int) -> FittingEntry:
        fitt = fitting_ideal(j, P)
        sat = saturate_by_irrelevant(fitt, B) if B is not None else None
        return FittingEntry(j, fitt, sat)

    return FittingLadder(P, parallel_map(entry, list(range(jmax + 1))))


def satinv_compare(P: Presentation, P2: Presentation, B: IrrelevantIdeal, jmax: int) -> bool:
    """Saturated Fitting ideals of P and P2 agree for j = 0..jmax"""
    if P.matrix.ring.names != P2.matrix.ring.names or P.matrix.ring.p != P2.matrix.ring.p:
        raise InputError("presentations live over different rings")
    for j in range(jmax + 1):
        if saturated_fitting(j, P, B) != saturated_fitting(j, P2, B):
            logging.info(f"satinv_compare: saturated Fitting ideals differ at j={j}")
            return False
    return True


def is_locally_free_rank(P: Presentation, B: IrrelevantIdeal) -> Optional[int]:
    """r with Fitt_r : B^∞ = S and Fitt_{r-1} : B^∞ = 0 (Fitt_{-1} = 0), if any"""
    for r in range(P.target_rank + 1):
        if saturated_fitting(r, P, B).is_unit():
            if r == 0 or saturated_fitting(r - 1, P, B).is_zero():
                return r
            return None
    return None


def locally_free_rank_of_cokernel(phi: GradedMatrix, B: IrrelevantIdeal) -> Optional[int]:
    """rank(G) - rank(phi) when I(phi) : B^∞ = S, otherwise None"""
    r = rank(phi)
    if not saturate_by_irrelevant(minors_ideal(r, phi), B).is_unit():
        return None
    return phi.nrows - r


def in_relevant_spectrum(Q: Ideal, I: Ideal, B: IrrelevantIdeal) -> bool:
    """Q ∈ 𝕍(I) for a homogeneous prime Q"""
    return is_b_saturated(Q, B) and contains(Q, I)


@dataclass
class Obstruction:
    obstructed: bool
    q_saturated: bool

    def __bool__(self):
        return self.obstructed


def generation_obstruction(P: Presentation, j: int, Q: Ideal, B: IrrelevantIdeal) -> Obstruction:
    """Q ∈ 𝕍(Fitt_j : B^∞): no module with the same sheaf is j-generated at Q"""
    if not is_b_saturated(Q, B):
        logging.warning(f"generation_obstruction: {Q} is not B-saturated")
        return Obstruction(False, False)
    return Obstruction(contains(Q, saturated_fitting(j, P, B)), True)
