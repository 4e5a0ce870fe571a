# corpus.py - regression fixtures and random complex families
import json
import os
import random
from typing import List, Sequence

from coxring import CoxRing, load_ring
from errors import InputError, NotHomogeneous
from freemod import (FreeComplex, Presentation, complex_from_file, direct_sum, koszul_complex,
                     presentation_from_file, taylor_complex, truncate, twist_complex)
from groebner import Ideal
from polynomial import NOT_HOMOGENEOUS, Poly, multidegree_of, parse_poly
from schemas import ComplexFile, PresentationFile

FIXTURES_DIR = os.path.join(os.path.dirname(__file__), "fixtures")

# Betti twists of S/I for the four-points ideal, F_1..F_4
FOUR_POINTS_TWISTS = [
    [(1, 1), (1, 1), (0, 2), (0, 2), (2, 1), (4, 0)],
    [(1, 2), (1, 2), (2, 2), (2, 2), (2, 2), (1, 3), (1, 3), (0, 4), (1, 4), (1, 4), (1, 4)],
    [(2, 3), (2, 3), (2, 3), (1, 4), (1, 4), (4, 2), (4, 2), (4, 2)],
    [(2, 4), (4, 3)],
]

# its virtual resolution of the pair (S/I, (1,1)), F_1..F_3
FOUR_POINTS_VRES_11 = [
    [(1, 1), (1, 1), (0, 2), (0, 2), (2, 1)],
    [(1, 2), (1, 2), (2, 2), (2, 2), (2, 2), (1, 3), (1, 3)],
    [(2, 3), (2, 3), (2, 3)],
]

FOUR_POINTS_VRES_00 = [
    [(1, 1), (1, 1), (0, 2), (0, 2)],
    [(1, 2), (1, 2)],
]


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES_DIR, name)


def load_ideal(path: str, ring) -> Ideal:
    """One polynomial per line; blank lines and # comments are skipped"""
    try:
        with open(path, "r") as f:
            lines = f.readlines()
    except FileNotFoundError:
        raise InputError(f"{path}: no such file")
    gens = []
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            g = parse_poly(text, ring)
        except InputError as e:
            raise InputError(f"{path}:{lineno}: {e.detail}")
        # Check if the generator is homogeneous for the ring grading
        if g and multidegree_of(g) == NOT_HOMOGENEOUS:
            raise NotHomogeneous(f"{path}:{lineno}: {text} is not homogeneous")
        gens.append(g)
    return Ideal(ring, gens)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r") as f:
            return json.load(f)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file")
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})")


def load_complex(path: str, cox: CoxRing) -> FreeComplex:
    try:
        data = ComplexFile.model_validate(_load_json(path))
    except ValueError as e:
        raise InputError(f"{path}: invalid complex file: {e}")
    return complex_from_file(data, cox.ring)


def load_presentation(path: str, cox: CoxRing) -> Presentation:
    try:
        data = PresentationFile.model_validate(_load_json(path))
    except ValueError as e:
        raise InputError(f"{path}: invalid presentation file: {e}")
    return presentation_from_file(data, cox.ring)


# -- named fixtures

def ring(name: str) -> CoxRing:
    return load_ring(fixture_path(f"{name}.json"))


def four_points(cox: CoxRing = None) -> Ideal:
    cox = cox or ring("p1p2")
    return load_ideal(fixture_path("four_points.txt"), cox.ring)


def three_points(cox: CoxRing = None) -> Ideal:
    cox = cox or ring("p1p1")
    return load_ideal(fixture_path("three_points.txt"), cox.ring)


def three_points_presentation(cox: CoxRing = None) -> Presentation:
    cox = cox or ring("p1p1")
    return load_presentation(fixture_path("three_points_presentation.json"), cox)


# -- random families

def random_monomials(cox: CoxRing, rng: random.Random, count: int, max_exp: int = 2) -> List[Poly]:
    """Distinct non-constant monomials"""
    out = []
    while len(out) < count:
        exps = tuple(rng.randint(0, max_exp) if rng.random() < 0.5 else 0 for _ in range(cox.nvars))
        if any(exps):
            m = cox.ring.monomial(exps)
            if m not in out:
                out.append(m)
    return out


def random_complex(cox: CoxRing, rng: random.Random) -> FreeComplex:
    """Koszul or Taylor complex of at most four monomials, possibly truncated, twisted or summed"""
    count = rng.randint(1, 4)
    gens = random_monomials(cox, rng, count)
    build = koszul_complex if rng.random() < 0.5 else taylor_complex
    F = build(cox.ring, gens)
    move = rng.random()
    if move < 0.25 and F.length > 1:
        F = truncate(F, rng.randint(1, F.length - 1))
    elif move < 0.5:
        a = tuple(rng.randint(0, 1) for _ in range(cox.r))
        G = koszul_complex(cox.ring, random_monomials(cox, rng, rng.randint(1, 2)))
        F = direct_sum(F, twist_complex(G, a))
    return F


def ideal_of(cox: CoxRing, polys: Sequence[str]) -> Ideal:
    return Ideal(cox.ring, [parse_poly(s, cox.ring) for s in polys])
