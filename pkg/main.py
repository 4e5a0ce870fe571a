import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from dotenv import load_dotenv
load_dotenv()

from jinja2 import Environment, FileSystemLoader

import settings
from corpus import load_complex, load_ideal, load_presentation
from coxring import CoxRing, factor_dims, irrelevant_components, load_ring
from errors import InputError, VirtuaError
from fitting import fitting_ladder, is_locally_free_rank
from freemod import (FreeComplex, cyclic_presentation, homology_presentation, minimal_free_resolution,
                     minors_ideal, rank, vres_of_pair)
from groebner import grade, ideal_strings, saturate, saturate_by_irrelevant
from schemas import (HomologyOut, IdealReportOut, ModuleSpec, RankOut,
                     ResolutionOut)
from virtuality import check_virtual, depth_label, torsion_certificate

# exit codes
EXIT_OK = 0
EXIT_NEGATIVE = 1


def _twist_label(t) -> str:
    if not any(t):
        return "S"
    return "S(" + ",".join(str(-x) for x in t) + ")"


# Template Environment
template_env = Environment(loader=FileSystemLoader(os.path.join(os.path.dirname(__file__), 'report_templates')))
template_env.filters["twist"] = _twist_label

TEMPLATES = {
    "check": "check.txt",
    "mfr": "resolution.txt",
    "vres-pair": "resolution.txt",
    "saturate": "ideal.txt",
    "depth": "ideal.txt",
    "fitting": "fitting.txt",
    "locally-free": "fitting.txt",
    "homology": "homology.txt",
    "rank": "rank.txt",
}


@dataclass
class Session:
    command: str
    ring: CoxRing
    artifacts: Dict[str, object] = field(default_factory=dict)
    oracle: bool = False
    json: bool = False
    seed: int = 0
    saturate: bool = False
    degree: Optional[Tuple[int, ...]] = None
    index: Optional[int] = None
    j: Optional[int] = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="virtua", description="Virtual resolution checks over Cox rings")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--ring", required=True, help="ring descriptor JSON")
        p.add_argument("--json", action="store_true", help="emit the JSON report")
        p.add_argument("--seed", type=int, default=None, help="session seed")
        p.add_argument("--max-seconds", type=float, default=None, help="wall clock budget")
        return p

    p = add("check", "decide virtuality of a complex")
    p.add_argument("--complex", required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check with the homology oracle")

    p = add("mfr", "minimal free resolution of S/I or of a presented module")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--ideal")
    group.add_argument("--presentation")

    p = add("vres-pair", "virtual resolution of the pair (S/I, d)")
    p.add_argument("--ideal", required=True)
    p.add_argument("--degree", required=True, help="multidegree, e.g. 1,1")

    p = add("saturate", "saturation I : B^∞ (or I : J^∞)")
    p.add_argument("--ideal", required=True)
    p.add_argument("--by-ideal", dest="by_ideal", help="saturate by this ideal instead of B")

    p = add("depth", "depth of an ideal")
    p.add_argument("--ideal", required=True)
    p.add_argument("--saturate", action="store_true", help="take the depth of I : B^∞")

    p = add("fitting", "Fitting ideals of a presentation")
    p.add_argument("--presentation", required=True)
    p.add_argument("--j", type=int, default=None, help="only Fitt_j")
    p.add_argument("--saturate", action="store_true")

    p = add("locally-free", "locally free test for the sheaf of a presented module")
    p.add_argument("--presentation", required=True)

    p = add("homology", "presentation of H_i of a complex")
    p.add_argument("--complex", required=True)
    p.add_argument("--index", type=int, required=True)

    p = add("rank", "rank and I(phi) of a matrix")
    p.add_argument("--matrix", required=True, help="presentation JSON holding the matrix")
    return parser


def _parse_degree(text: str, cox: CoxRing) -> Tuple[int, ...]:
    try:
        d = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"malformed degree '{text}'")
    if len(d) != cox.r:
        raise InputError(f"degree '{text}' has {len(d)} entries, expected {cox.r}")
    return d


def parse_session(argv: List[str]) -> Session:
    """Parse flags, load and validate every input file"""
    args = build_parser().parse_args(argv)
    if args.seed is not None:
        settings.SEED = args.seed
    settings.start_budget(args.max_seconds)

    cox = load_ring(args.ring)
    session = Session(command=args.command, ring=cox, json=args.json, seed=settings.SEED,
                      oracle=getattr(args, "oracle", False), saturate=getattr(args, "saturate", False),
                      index=getattr(args, "index", None), j=getattr(args, "j", None))
    # Load and type-check every artifact before any computation runs
    if getattr(args, "complex", None):
        session.artifacts["complex"] = load_complex(args.complex, cox)
    if getattr(args, "ideal", None):
        session.artifacts["ideal"] = load_ideal(args.ideal, cox.ring)
    if getattr(args, "by_ideal", None):
        session.artifacts["by_ideal"] = load_ideal(args.by_ideal, cox.ring)
    if getattr(args, "presentation", None):
        session.artifacts["presentation"] = load_presentation(args.presentation, cox)
    if getattr(args, "matrix", None):
        session.artifacts["matrix"] = load_presentation(args.matrix, cox).matrix
    if getattr(args, "degree", None):
        session.degree = _parse_degree(args.degree, cox)
    logging.info(f"session: {args.command} over {len(cox.names)} variables, seed {settings.SEED}")
    return session


# Subcommands

def _resolution_out(S: Session, F: FreeComplex) -> ResolutionOut:
    return ResolutionOut(seed=S.seed, command=S.command,
                         modules=[ModuleSpec(twists=[list(t) for t in M.twists]) for M in F.modules],
                         maps=[phi.to_strings() for phi in F.maps], ranks=F.ranks())


def cmd_check(S: Session):
    B = irrelevant_components(S.ring)
    report = check_virtual(S.artifacts["complex"], B, oracle=S.oracle)
    # Check if the criterion holds; the oracle verdict rides along in the report
    code = EXIT_OK if report.verdict_theorem else EXIT_NEGATIVE
    return code, report.to_schema(S.command, S.seed)


def cmd_mfr(S: Session):
    # Prefer an explicit presentation over the cyclic one of the ideal
    P = S.artifacts.get("presentation") or cyclic_presentation(S.artifacts["ideal"])
    return EXIT_OK, _resolution_out(S, minimal_free_resolution(P))


def cmd_vres_pair(S: Session):
    dims = factor_dims(S.ring)
    R = minimal_free_resolution(cyclic_presentation(S.artifacts["ideal"]))
    # Keep the summands S(-a) with a <= d + dims
    return EXIT_OK, _resolution_out(S, vres_of_pair(R, S.degree, dims))


def cmd_saturate(S: Session):
    I = S.artifacts["ideal"]
    J = S.artifacts.get("by_ideal")
    # Default to saturating by B
    sat = saturate(I, J) if J is not None else saturate_by_irrelevant(I, irrelevant_components(S.ring))
    return EXIT_OK, IdealReportOut(seed=S.seed, command=S.command, generators=ideal_strings(sat), saturated=True)


def cmd_depth(S: Session):
    I = S.artifacts["ideal"]
    if S.saturate:
        I = saturate_by_irrelevant(I, irrelevant_components(S.ring))
    return EXIT_OK, IdealReportOut(seed=S.seed, command=S.command, generators=ideal_strings(I),
                                   depth=depth_label(grade(I)), saturated=S.saturate)


def cmd_fitting(S: Session):
    P = S.artifacts["presentation"]
    B = irrelevant_components(S.ring) if S.saturate else None
    ladder = fitting_ladder(P, B, jmax=S.j)
    if S.j is not None:
        # Only the requested index is reported
        ladder.entries = ladder.entries[S.j:]
    return EXIT_OK, ladder.to_schema(S.command, S.seed)


def cmd_locally_free(S: Session):
    P = S.artifacts["presentation"]
    B = irrelevant_components(S.ring)
    r = is_locally_free_rank(P, B)
    # Check if the sheaf is locally free; exit 1 otherwise
    report = fitting_ladder(P, B).to_schema(S.command, S.seed, locally_free_rank=r)
    return (EXIT_OK if r is not None else EXIT_NEGATIVE), report


def cmd_homology(S: Session):
    F = S.artifacts["complex"]
    P = homology_presentation(F, S.index)
    cert = torsion_certificate(F, irrelevant_components(S.ring), S.index)
    out = HomologyOut(seed=S.seed, command=S.command, index=S.index, is_zero=P.target_rank == 0,
                      target=ModuleSpec(twists=[list(t) for t in P.matrix.target.twists]),
                      matrix=P.matrix.to_strings(), b_torsion=cert.valid)
    return EXIT_OK, out


def cmd_rank(S: Session):
    phi = S.artifacts["matrix"]
    r = rank(phi)
    return EXIT_OK, RankOut(seed=S.seed, command=S.command, rank=r,
                            max_minors=ideal_strings(minors_ideal(r, phi)))


HANDLERS = {
    "check": cmd_check,
    "mfr": cmd_mfr,
    "vres-pair": cmd_vres_pair,
    "saturate": cmd_saturate,
    "depth": cmd_depth,
    "fitting": cmd_fitting,
    "locally-free": cmd_locally_free,
    "homology": cmd_homology,
    "rank": cmd_rank,
}


def render(S: Session, report) -> str:
    if S.json:
        return report.model_dump_json(indent=2, by_alias=True)
    template = template_env.get_template(TEMPLATES[S.command])
    return template.render(**report.model_dump(by_alias=True)).rstrip("\n")


def run_subcommand(S: Session) -> Tuple[int, str]:
    # Dispatch to the subcommand handler
    code, report = HANDLERS[S.command](S)
    return code, render(S, report)


def main(argv: List[str] = None) -> int:
    logging.basicConfig(level=settings.LOG_LEVEL, format="%(asctime)s %(levelname)s %(message)s")
    try:
        session = parse_session(sys.argv[1:] if argv is None else argv)
        code, text = run_subcommand(session)
    except VirtuaError as e:
        logging.error(f"{type(e).__name__}: {e.detail}")
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
