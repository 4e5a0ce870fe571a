# virtuality.py - rank + saturated-depth criterion and the homology oracle
import logging
import math
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import settings
from coxring import CoxRing, IrrelevantIdeal
from errors import InputError, PreconditionFailed
from freemod import FreeComplex, GradedMatrix, homology_presentation, minors_ideal, rank
from groebner import Ideal, grade, ideal_strings, radical_membership, saturate_by_irrelevant
from schemas import IndexRecord, TorsionCertificateOut, VirtualityReportOut
from settings import parallel_map


def depth_label(d):
    return "inf" if d == math.inf else int(d)


@dataclass
class IndexCheck:
    index: int
    rank_phi: int
    rank_next: int
    rank_F: int
    I_phi: Ideal
    saturation: Ideal
    depth_unsaturated: float
    depth_saturated: float

    @property
    def condition_a(self) -> bool:
        return self.rank_phi + self.rank_next == self.rank_F

    @property
    def condition_b(self) -> bool:
        return self.depth_saturated >= self.index

    @property
    def classical_b(self) -> bool:
        return self.depth_unsaturated >= self.index

    def to_schema(self) -> IndexRecord:
        return IndexRecord(index=self.index, rank_phi=self.rank_phi, rank_F=self.rank_F,
                           condition_a=self.condition_a, I_phi=ideal_strings(self.I_phi),
                           saturation=ideal_strings(self.saturation),
                           depth_unsaturated=depth_label(self.depth_unsaturated),
                           depth_saturated=depth_label(self.depth_saturated),
                           condition_b=self.condition_b)


@dataclass
class TorsionCertificate:
    """H_i is B-torsion iff Fitt_0(H_i) : B^∞ = S; witnesses record x ∈ √Fitt_0 per variable of B"""
    index: int
    homology_zero: bool
    fitt0: Ideal
    witnesses: Dict[str, bool] = field(default_factory=dict)
    torsion: bool = True

    @property
    def valid(self) -> bool:
        return self.homology_zero or self.torsion

    def to_schema(self) -> TorsionCertificateOut:
        return TorsionCertificateOut(index=self.index, homology_zero=self.homology_zero,
                                     fitt0=ideal_strings(self.fitt0), witnesses=self.witnesses)


@dataclass
class VirtualityReport:
    records: List[IndexCheck]
    verdict_theorem: bool
    exactness_note: bool
    verdict_oracle: Optional[bool] = None
    certificates: List[TorsionCertificate] = field(default_factory=list)

    def to_schema(self, command: str = "check", seed: int = None) -> VirtualityReportOut:
        return VirtualityReportOut(
            seed=settings.SEED if seed is None else seed,
            command=command,
            records=[r.to_schema() for r in self.records],
            verdict_theorem=self.verdict_theorem,
            verdict_oracle=self.verdict_oracle,
            exactness_note=self.exactness_note,
            certificates=[c.to_schema() for c in self.certificates],
        )


def complex_ranks(F: FreeComplex) -> List[int]:
    """rank(phi_i) for i = 1..n+1, phi_{n+1} = 0; each index draws from its own seeded stream"""
    return [rank(F.phi(i), random.Random(settings.SEED * 1009 + i)) for i in range(1, F.length + 2)]


def _index_check(F: FreeComplex, B: IrrelevantIdeal, ranks: List[int], i: int) -> IndexCheck:
    I_phi = minors_ideal(ranks[i - 1], F.phi(i))
    unsat = grade(I_phi)
    sat = saturate_by_irrelevant(I_phi, B)
    record = IndexCheck(index=i, rank_phi=ranks[i - 1], rank_next=ranks[i],
                        rank_F=F.modules[i].rank, I_phi=I_phi, saturation=sat,
                        depth_unsaturated=unsat, depth_saturated=grade(sat))
    logging.info(f"check_virtual: i={i} ranks {record.rank_phi}+{record.rank_next} vs {record.rank_F}, "
                 f"depth {depth_label(unsat)} -> {depth_label(record.depth_saturated)}")
    return record


def check_virtual(F: FreeComplex, B: IrrelevantIdeal, oracle: bool = False) -> VirtualityReport:
    """Rank condition and saturated depth condition at every index 1..n"""
    ranks = complex_ranks(F)
    records = parallel_map(lambda i: _index_check(F, B, ranks, i), list(range(1, F.length + 1)))
    verdict = all(r.condition_a and r.condition_b for r in records)
    exact = all(r.condition_a and r.classical_b for r in records)
    report = VirtualityReport(records=records, verdict_theorem=verdict, exactness_note=exact)
    if oracle:
        report.verdict_oracle, report.certificates = oracle_is_virtual(F, B)
        if report.verdict_oracle != verdict:
            logging.error(f"check_virtual: criterion says {verdict}, homology says {report.verdict_oracle}")
    return report


def check_exact(F: FreeComplex) -> bool:
    """Rank condition with unsaturated depths"""
    ranks = complex_ranks(F)
    for i in range(1, F.length + 1):
        if ranks[i - 1] + ranks[i] != F.modules[i].rank:
            return False
        if grade(minors_ideal(ranks[i - 1], F.phi(i))) < i:
            return False
    return True


def torsion_certificate(F: FreeComplex, B: IrrelevantIdeal, i: int) -> TorsionCertificate:
    P = homology_presentation(F, i)
    ring = F.ring
    if P.target_rank == 0:
        return TorsionCertificate(index=i, homology_zero=True, fitt0=Ideal.unit(ring))
    fitt0 = minors_ideal(P.target_rank, P.matrix)
    witnesses = {ring.names[k]: radical_membership(ring.var(k), fitt0)
                 for comp in B.variables for k in comp}
    if any(all(witnesses[ring.names[k]] for k in comp) for comp in B.variables):
        torsion = True
    else:
        torsion = saturate_by_irrelevant(fitt0, B).is_unit()
    logging.info(f"oracle: H_{i} is nonzero, B-torsion={torsion}")
    return TorsionCertificate(index=i, homology_zero=False, fitt0=fitt0,
                              witnesses=witnesses, torsion=torsion)


def oracle_is_virtual(F: FreeComplex, B: IrrelevantIdeal) -> Tuple[bool, List[TorsionCertificate]]:
    """Every H_i, i >= 1, is B-torsion"""
    certs = parallel_map(lambda i: torsion_certificate(F, B, i), list(range(1, F.length + 1)))
    return all(c.valid for c in certs), certs


def oracle_is_exact(F: FreeComplex) -> bool:
    return all(homology_presentation(F, i).target_rank == 0 for i in range(1, F.length + 1))


def check_two_term(phi: GradedMatrix, psi: GradedMatrix, B: IrrelevantIdeal) -> bool:
    """For phi: F -> G, psi: G -> H with I(phi):B^∞ = I(psi):B^∞ = S"""
    if phi.target.twists != psi.source.twists:
        raise InputError("target of phi is not the source of psi")
    r_phi, r_psi = rank(phi), rank(psi)
    for name, m, r in (("phi", phi, r_phi), ("psi", psi, r_psi)):
        if not saturate_by_irrelevant(minors_ideal(r, m), B).is_unit():
            raise PreconditionFailed(f"I({name}) : B^∞ is not the unit ideal")
    return r_phi + r_psi == phi.target.rank


def _require_projective_space(F: FreeComplex, cox: CoxRing) -> int:
    if len(cox.blocks) != 1 or not cox.is_product:
        raise InputError("operation requires the Cox ring of a single projective space")
    n = cox.dimX
    if F.length > n + 1:
        raise InputError(f"complex of length {F.length} exceeds n+1 = {n + 1}")
    return n


def check_pn_collapse(F: FreeComplex, B: IrrelevantIdeal, cox: CoxRing) -> bool:
    """virtual implies exact on P^n for length <= n+1"""
    _require_projective_space(F, cox)
    if not check_virtual(F, B).verdict_theorem:
        return True
    return oracle_is_exact(F)


def check_pn_remark(F: FreeComplex, B: IrrelevantIdeal, cox: CoxRing) -> bool:
    """On P^n saturation only removes an m-primary part, so depths agree below n+1"""
    n = _require_projective_space(F, cox)
    report = check_virtual(F, B)
    for r in report.records:
        if r.depth_unsaturated >= n + 1:
            if not r.saturation.is_unit():
                return False
        elif r.depth_saturated != r.depth_unsaturated:
            return False
    return report.verdict_theorem == report.exactness_note
