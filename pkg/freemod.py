# freemod.py - graded free modules, matrices, minors, syzygies and resolutions
import logging
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

import settings
from errors import InputError, NotAComplex, NotHomogeneous, PartialResolution
from groebner import Element, Ideal, buchberger, reduce_vector
from polynomial import (NOT_HOMOGENEOUS, Multidegree, Poly, PolyRing, format_poly,
                        mono_div, mono_lcm, multidegree_of, parse_poly, scalar_inverse)
from schemas import ComplexFile, ModuleSpec, PresentationFile


def _add(a: Multidegree, b: Multidegree) -> Multidegree:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Multidegree, b: Multidegree) -> Multidegree:
    return tuple(x - y for x, y in zip(a, b))


def _fmt_deg(d: Multidegree) -> str:
    return "(" + ",".join(str(x) for x in d) + ")"


def _mono_degree(mono, ring: PolyRing) -> Multidegree:
    r = len(ring.degrees[0])
    deg = [0] * r
    for e, d in zip(mono, ring.degrees):
        if e:
            for k in range(r):
                deg[k] += e * d[k]
    return tuple(deg)


# ---------------------------------------------------------------------------
# Types

@dataclass(frozen=True)
class FreeModule:
    """⊕ S(-a_j) over the twists a_j"""
    ring: PolyRing
    twists: Tuple[Multidegree, ...]

    @property
    def rank(self) -> int:
        return len(self.twists)

    def sub(self, keep: Sequence[int]) -> "FreeModule":
        return FreeModule(self.ring, tuple(self.twists[i] for i in keep))

    def shifted(self, a: Multidegree) -> "FreeModule":
        return FreeModule(self.ring, tuple(_add(t, a) for t in self.twists))


class GradedMatrix:
    """Homogeneous map source -> target; entries[i][j] has degree source[j] - target[i]"""

    def __init__(self, source: FreeModule, target: FreeModule,
                 entries: Sequence[Sequence[Poly]], check: bool = True):
        self.source = source
        self.target = target
        self.ring = target.ring
        self.entries = tuple(tuple(row) for row in entries)
        if len(self.entries) != target.rank or any(len(row) != source.rank for row in self.entries):
            raise InputError(
                f"matrix shape does not match modules: expected {target.rank}x{source.rank}")
        if check:
            self.check_homogeneous()

    @property
    def nrows(self) -> int:
        return self.target.rank

    @property
    def ncols(self) -> int:
        return self.source.rank

    def check_homogeneous(self):
        for i, row in enumerate(self.entries):
            for j, f in enumerate(row):
                if not f:
                    continue
                expected = _sub(self.source.twists[j], self.target.twists[i])
                deg = multidegree_of(f)
                if deg == NOT_HOMOGENEOUS:
                    raise NotHomogeneous(f"entry ({i + 1},{j + 1}): {format_poly(f)} is not homogeneous")
                if deg != expected:
                    raise NotHomogeneous(
                        f"entry ({i + 1},{j + 1}): degree {_fmt_deg(deg)}, expected {_fmt_deg(expected)}")

    def column(self, j: int) -> List[Poly]:
        return [row[j] for row in self.entries]

    def is_zero(self) -> bool:
        return all(not f for row in self.entries for f in row)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "GradedMatrix":
        return GradedMatrix(self.source.sub(cols), self.target.sub(rows),
                            [[self.entries[i][j] for j in cols] for i in rows], check=False)

    def to_strings(self) -> List[List[str]]:
        return [[format_poly(f) for f in row] for row in self.entries]

    def __eq__(self, other):
        return (isinstance(other, GradedMatrix) and self.source == other.source
                and self.target == other.target and self.entries == other.entries)

    def __repr__(self):
        return f"GradedMatrix({self.nrows}x{self.ncols})"


@dataclass(frozen=True)
class Presentation:
    """F -> G -> M -> 0, M = coker(matrix)"""
    matrix: GradedMatrix

    @property
    def target_rank(self) -> int:
        return self.matrix.nrows


class FreeComplex:
    """0 -> F_n -> ... -> F_1 -> F_0 with maps[i-1] = phi_i : F_i -> F_{i-1}"""

    def __init__(self, modules: Sequence[FreeModule], maps: Sequence[GradedMatrix], check: bool = True):
        if len(modules) != len(maps) + 1:
            raise InputError(f"{len(modules)} modules need {len(modules) - 1} maps, got {len(maps)}")
        self.modules = tuple(modules)
        self.maps = tuple(maps)
        for i, phi in enumerate(self.maps, start=1):
            if phi.source.twists != self.modules[i].twists or phi.target.twists != self.modules[i - 1].twists:
                raise InputError(f"phi_{i} does not map F_{i} to F_{i - 1}")
        if check:
            self.check_composition()

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def ring(self) -> PolyRing:
        return self.modules[0].ring

    def phi(self, i: int) -> GradedMatrix:
        """phi_i for 1 <= i <= n; phi_{n+1} is the zero map 0 -> F_n"""
        if i == self.length + 1:
            return zero_map(FreeModule(self.ring, ()), self.modules[-1])
        return self.maps[i - 1]

    def ranks(self) -> List[int]:
        return [F.rank for F in self.modules]

    def check_composition(self):
        for i in range(1, self.length):
            prod = compose(self.maps[i - 1], self.maps[i])
            for r, row in enumerate(prod.entries):
                for c, f in enumerate(row):
                    if f:
                        raise NotAComplex(
                            f"phi_{i} * phi_{i + 1} is nonzero: entry ({r + 1},{c + 1}) = {format_poly(f)}",
                            index=i, witness=format_poly(f))


# ---------------------------------------------------------------------------
# Basic maps

def zero_map(source: FreeModule, target: FreeModule) -> GradedMatrix:
    z = target.ring.zero()
    return GradedMatrix(source, target, [[z] * source.rank for _ in range(target.rank)], check=False)


def identity(F: FreeModule) -> GradedMatrix:
    ring = F.ring
    return GradedMatrix(F, F, [[ring.one() if i == j else ring.zero() for j in range(F.rank)]
                               for i in range(F.rank)], check=False)


def compose(phi: GradedMatrix, psi: GradedMatrix) -> GradedMatrix:
    """phi ∘ psi"""
    ring = phi.ring
    rows = []
    for i in range(phi.nrows):
        row = []
        for j in range(psi.ncols):
            acc = ring.zero()
            for k in range(phi.ncols):
                a, b = phi.entries[i][k], psi.entries[k][j]
                if a and b:
                    acc = acc + a * b
            row.append(acc)
        rows.append(row)
    return GradedMatrix(psi.source, phi.target, rows, check=False)


def transpose(phi: GradedMatrix) -> GradedMatrix:
    neg = lambda F: FreeModule(F.ring, tuple(tuple(-x for x in t) for t in F.twists))
    return GradedMatrix(neg(phi.target), neg(phi.source),
                        [list(phi.column(j)) for j in range(phi.ncols)], check=False)


def hstack(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    source = FreeModule(a.ring, a.source.twists + b.source.twists)
    return GradedMatrix(source, a.target,
                        [list(ra) + list(rb) for ra, rb in zip(a.entries, b.entries)], check=False)


# ---------------------------------------------------------------------------
# Minors and rank

class _Minors:
    """Determinants of square submatrices by Laplace expansion along the first row, memoized"""

    def __init__(self, phi: GradedMatrix):
        self.a = phi.entries
        self.zero = phi.ring.zero()
        self.memo: Dict[Tuple[tuple, tuple], Poly] = {}

    def det(self, rows: tuple, cols: tuple) -> Poly:
        if len(rows) == 1:
            return self.a[rows[0]][cols[0]]
        key = (rows, cols)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        top, rest = rows[0], rows[1:]
        total = self.zero
        for idx, c in enumerate(cols):
            e = self.a[top][c]
            if not e:
                continue
            sub = self.det(rest, cols[:idx] + cols[idx + 1:])
            if not sub:
                continue
            term = e * sub
            total = total + term if idx % 2 == 0 else total - term
        self.memo[key] = total
        return total


def minors_ideal(r: int, phi: GradedMatrix) -> Ideal:
    """Ideal of r x r minors; S for r <= 0, 0 beyond the matrix size"""
    ring = phi.ring
    if r <= 0:
        return Ideal.unit(ring)
    if r > min(phi.nrows, phi.ncols):
        return Ideal.zero(ring)
    settings.check_matrix(phi.nrows, phi.ncols)
    minors = _Minors(phi)
    gens = []
    for rows in combinations(range(phi.nrows), r):
        for cols in combinations(range(phi.ncols), r):
            d = minors.det(rows, cols)
            if d:
                gens.append(d.monic())
    return Ideal(ring, list(dict.fromkeys(gens)))


def _rank_mod_p(values: List[List[int]], p: int):
    """Rank of an integer matrix mod p with pivot rows/columns"""
    A = np.array(values, dtype=np.int64) % p
    m, n = A.shape
    row_ids = list(range(m))
    r = 0
    piv_rows, piv_cols = [], []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
            row_ids[r], row_ids[k] = row_ids[k], row_ids[r]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        factors = A[:, c].copy()
        factors[r] = 0
        A = (A - np.outer(factors, A[r])) % p
        piv_rows.append(row_ids[r])
        piv_cols.append(c)
        r += 1
    return r, piv_rows, piv_cols


def rank(phi: GradedMatrix, rng: random.Random = None) -> int:
    """Largest r with I_r(phi) != 0.

    A random evaluation gives a lower bound together with a nonsingular
    submatrix; the bound is then certified symbolically and raised while
    some (r+1)-minor is nonzero.
    """
    if phi.nrows == 0 or phi.ncols == 0 or phi.is_zero():
        return 0
    settings.check_matrix(phi.nrows, phi.ncols)
    rng = rng or random.Random(settings.SEED)
    ring = phi.ring
    point = [rng.randrange(ring.p) for _ in range(ring.nvars)]
    values = [[f.evaluate(point) for f in row] for row in phi.entries]
    r, piv_rows, piv_cols = _rank_mod_p(values, ring.p)
    minors = _Minors(phi)
    if r:
        witness = minors.det(tuple(sorted(piv_rows)), tuple(sorted(piv_cols)))
        if not witness:
            raise ArithmeticError("rank certificate failed: pivot minor vanishes symbolically")
    while r < min(phi.nrows, phi.ncols):
        bigger = next((1 for rows in combinations(range(phi.nrows), r + 1)
                       for cols in combinations(range(phi.ncols), r + 1)
                       if minors.det(rows, cols)), None)
        if bigger is None:
            break
        r += 1
    logging.info(f"rank: {phi.nrows}x{phi.ncols} matrix has rank {r}")
    return r


def max_minors(phi: GradedMatrix, rng: random.Random = None) -> Ideal:
    """I(phi) = I_rank(phi); the unit ideal for rank 0"""
    return minors_ideal(rank(phi, rng), phi)


# ---------------------------------------------------------------------------
# Module Groebner bases

def _pot_key(ring: PolyRing):
    kf = ring.grevlex.keyfunc
    return lambda t: (t[0],) + kf(t[1:])


def _column_vector(phi: GradedMatrix, j: int, offset: int = 0) -> dict:
    vec = {}
    for i, row in enumerate(phi.entries):
        for m, c in row[j].terms.items():
            vec[(offset + i,) + m] = c
    return vec


class _Augmented:
    """Groebner basis of {(phi w, w)} in target ⊕ source, target positions first.

    Elements whose leading position lies in the source block generate
    ker(phi); normal forms of (v, 0) give lifts of v through phi.
    """

    def __init__(self, phi: GradedMatrix):
        self.phi = phi
        self.ring = phi.ring
        self.m = phi.nrows
        self.key = _pot_key(self.ring)
        zero_mono = (0,) * self.ring.nvars
        vectors = []
        for j in range(phi.ncols):
            vec = _column_vector(phi, j)
            vec[(self.m + j,) + zero_mono] = 1
            vectors.append(vec)
        shift = [sum(t) for t in phi.target.twists] + [sum(t) for t in phi.source.twists]
        self.elements: List[Element] = buchberger(vectors, self.key, self.ring.p,
                                                  shift=shift, product_criterion=False)

    def _split(self, vec: dict, count: int, offset: int) -> List[Poly]:
        polys: List[Dict] = [dict() for _ in range(count)]
        for t, c in vec.items():
            if t[0] >= offset:
                polys[t[0] - offset][t[1:]] = c
        return [Poly(self.ring, d) for d in polys]

    def kernel(self) -> GradedMatrix:
        cols, twists = [], []
        k = self.phi.ncols
        for e in self.elements:
            if e.lt[0] < self.m:
                continue
            lt_pos = e.lt[0] - self.m
            twists.append(_add(_mono_degree(e.lt[1:], self.ring), self.phi.source.twists[lt_pos]))
            cols.append(self._split(e.vec, k, self.m))
        order = sorted(range(len(cols)), key=lambda i: (sum(twists[i]), twists[i]))
        source = FreeModule(self.ring, tuple(twists[i] for i in order))
        entries = [[cols[i][r] for i in order] for r in range(k)]
        return GradedMatrix(source, self.phi.source, entries)

    def lift(self, V: GradedMatrix, index: int = None) -> GradedMatrix:
        """W with phi W = V; NotAComplex if a column of V is outside the image"""
        k = self.phi.ncols
        cols = []
        for j in range(V.ncols):
            rem = reduce_vector(_column_vector(V, j), self.elements, self.key, self.ring.p)
            if any(t[0] < self.m for t in rem):
                raise NotAComplex(f"column {j + 1} does not lift through the kernel generators",
                                  index=index)
            cols.append([-f for f in self._split(rem, k, self.m)])
        entries = [[cols[j][r] for j in range(V.ncols)] for r in range(k)]
        return GradedMatrix(V.source, self.phi.source, entries)


def syzygies(phi: GradedMatrix) -> GradedMatrix:
    """Matrix whose columns generate ker(phi)"""
    if phi.ncols == 0:
        return zero_map(FreeModule(phi.ring, ()), phi.source)
    return _Augmented(phi).kernel()


def lift(V: GradedMatrix, phi: GradedMatrix) -> GradedMatrix:
    """Express the columns of V through the columns of phi"""
    return _Augmented(phi).lift(V)


# ---------------------------------------------------------------------------
# Pruning

def _find_unit(A: GradedMatrix) -> Optional[Tuple[int, int]]:
    for i, row in enumerate(A.entries):
        for j, f in enumerate(row):
            if f.is_unit():
                return i, j
    return None


def _cancel_unit(A: GradedMatrix, r: int, c: int) -> GradedMatrix:
    """Split off the unit A[r][c]: clear column c by row operations, drop row r and column c"""
    ring = A.ring
    inv = scalar_inverse(next(iter(A.entries[r][c].terms.values())), ring.p)
    pivot = A.entries[r]
    rows = []
    for k, row in enumerate(A.entries):
        if k == r:
            continue
        factor = row[c] * inv if row[c] else None
        rows.append([row[j] - factor * pivot[j] if factor is not None and pivot[j] else row[j]
                     for j in range(A.ncols) if j != c])
    keep_rows = [k for k in range(A.nrows) if k != r]
    keep_cols = [j for j in range(A.ncols) if j != c]
    return GradedMatrix(A.source.sub(keep_cols), A.target.sub(keep_rows), rows, check=False)


def _drop_column(B: GradedMatrix, c: int) -> GradedMatrix:
    return B.submatrix(range(B.nrows), [j for j in range(B.ncols) if j != c])


def _drop_row(C: GradedMatrix, r: int) -> GradedMatrix:
    return C.submatrix([i for i in range(C.nrows) if i != r], range(C.ncols))


def prune_complex(maps: List[GradedMatrix], idx: int) -> List[GradedMatrix]:
    """Remove every unit entry of maps[idx], adjusting its neighbours"""
    maps = list(maps)
    while True:
        hit = _find_unit(maps[idx])
        if hit is None:
            return maps
        r, c = hit
        maps[idx] = _cancel_unit(maps[idx], r, c)
        if idx > 0:
            maps[idx - 1] = _drop_column(maps[idx - 1], r)
        if idx + 1 < len(maps):
            maps[idx + 1] = _drop_row(maps[idx + 1], c)


def minimize_presentation(P: Presentation) -> Presentation:
    return Presentation(prune_complex([P.matrix], 0)[0])


def _eliminate(vec: dict, echelon: Dict[tuple, dict], key, p: int) -> dict:
    vec = dict(vec)
    while vec:
        lead = min(vec, key=key)
        row = echelon.get(lead)
        if row is None:
            return vec
        c = vec[lead] * scalar_inverse(row[lead], p) % p
        for t, a in row.items():
            v = (vec.get(t, 0) - c * a) % p
            if v:
                vec[t] = v
            else:
                vec.pop(t, None)
    return vec


def minimal_generators(A: GradedMatrix) -> GradedMatrix:
    """Columns of A that minimally generate its image, in their original order.

    Columns are visited by increasing total degree. A column is redundant when
    its normal form modulo the columns of lower degree lies in the span of the
    normal forms already kept in its own degree.
    """
    if A.ncols == 0:
        return A
    ring = A.ring
    key = _pot_key(ring)
    shift = [sum(t) for t in A.target.twists]
    order = sorted(range(A.ncols), key=lambda j: (sum(A.source.twists[j]), A.source.twists[j]))
    kept: List[int] = []
    basis: List[Element] = []
    echelon: Dict[tuple, dict] = {}
    level = None
    for j in order:
        d = sum(A.source.twists[j])
        if d != level:
            settings.check_budget()
            if kept:
                basis = buchberger([_column_vector(A, k) for k in kept], key, ring.p,
                                   shift=shift, product_criterion=False)
            level, echelon = d, {}
        rem = _eliminate(reduce_vector(_column_vector(A, j), basis, key, ring.p), echelon, key, ring.p)
        if rem:
            echelon[min(rem, key=key)] = rem
            kept.append(j)
    if len(kept) < A.ncols:
        logging.debug(f"minimal_generators: kept {len(kept)} of {A.ncols} columns")
    return A.submatrix(range(A.nrows), sorted(kept))


# ---------------------------------------------------------------------------
# Resolutions and homology

def minimal_free_resolution(P: Presentation, maxlen: int = None) -> FreeComplex:
    """Minimal free resolution of coker(P) by iterated syzygies and unit pruning"""
    ring = P.matrix.ring
    maxlen = ring.nvars + 1 if maxlen is None else maxlen
    maps = prune_complex([P.matrix], 0)
    maps[0] = minimal_generators(maps[0])
    while maps[-1].ncols:
        settings.check_budget()
        # Kernel basis elements are usually far from minimal
        K = minimal_generators(syzygies(maps[-1]))
        if K.ncols == 0:
            break
        if len(maps) >= maxlen:
            raise PartialResolution(f"resolution did not terminate within {maxlen} steps",
                                    prefix=_complex_from_maps(maps))
        maps.append(K)
        maps = prune_complex(maps, len(maps) - 1)
        logging.info(f"minimal_free_resolution: F_{len(maps)} has rank {maps[-1].ncols}")
    maps = _drop_empty_tail(maps)
    # Check if the cokernel is free
    if not maps[0].ncols:
        return FreeComplex([maps[0].target], [], check=False)
    return _complex_from_maps(maps)


def _drop_empty_tail(maps: List[GradedMatrix]) -> List[GradedMatrix]:
    """Strip trailing maps with zero source; pruning can empty several at once"""
    maps = list(maps)
    while len(maps) > 1 and not maps[-1].ncols:
        maps.pop()
    return maps


def _complex_from_maps(maps: List[GradedMatrix]) -> FreeComplex:
    if not maps:
        raise InputError("empty list of maps")
    modules = [maps[0].target] + [phi.source for phi in maps]
    return FreeComplex(modules, maps, check=False)


def homology_presentation(F: FreeComplex, i: int) -> Presentation:
    """Presentation of H_i = ker(phi_i) / im(phi_{i+1}), minimized"""
    if not 1 <= i <= F.length:
        raise InputError(f"homology index {i} outside 1..{F.length}")
    K = minimal_generators(syzygies(F.phi(i)))
    if K.ncols == 0:
        return Presentation(zero_map(FreeModule(F.ring, ()), FreeModule(F.ring, ())))
    aug = _Augmented(K)
    relations = aug.kernel()
    lifted = aug.lift(F.phi(i + 1), index=i)
    return minimize_presentation(Presentation(hstack(relations, lifted)))


def vres_of_pair(R: FreeComplex, d: Multidegree, dims: Sequence[int]) -> FreeComplex:
    """Subcomplex on the summands S(-a) with a <= d + (n_1..n_k) componentwise"""
    if len(d) != len(dims):
        raise InputError(f"degree {_fmt_deg(tuple(d))} does not match {len(dims)} factors")
    bound = _add(tuple(d), tuple(dims))
    keep = [[j for j, a in enumerate(F.twists) if all(x <= y for x, y in zip(a, bound))]
            for F in R.modules]
    maps = []
    for i, phi in enumerate(R.maps, start=1):
        dropped = [r for r in range(phi.nrows) if r not in keep[i - 1]]
        for r in dropped:
            for c in keep[i]:
                if phi.entries[r][c]:
                    raise InputError(f"kept summand {c + 1} of F_{i} maps into dropped summand {r + 1}")
        maps.append(phi.submatrix(keep[i - 1], keep[i]))
    while maps and maps[-1].ncols == 0:
        maps.pop()
    modules = [R.modules[0].sub(keep[0])] + [phi.source for phi in maps]
    return FreeComplex(modules, maps)


# ---------------------------------------------------------------------------
# Builders

def _twist_of(f: Poly) -> Multidegree:
    deg = multidegree_of(f)
    if deg == NOT_HOMOGENEOUS:
        raise NotHomogeneous(f"{format_poly(f)} is not homogeneous")
    return deg


def cyclic_presentation(I: Ideal) -> Presentation:
    """S/I presented by the row of generators of I"""
    ring = I.ring
    r = len(ring.degrees[0])
    gens = list(I.generators)
    twists = tuple(_twist_of(g) for g in gens)
    target = FreeModule(ring, ((0,) * r,))
    return Presentation(GradedMatrix(FreeModule(ring, twists), target, [gens]))


def module_presentation(I: Ideal) -> Presentation:
    """I itself as a module: generators as free basis, their syzygies as relations"""
    row = cyclic_presentation(I).matrix
    return Presentation(syzygies(row))


def koszul_complex(ring: PolyRing, polys: Sequence[Poly]) -> FreeComplex:
    r = len(ring.degrees[0])
    degs = [_twist_of(f) for f in polys]
    k = len(polys)
    subsets = [list(combinations(range(k), j)) for j in range(k + 1)]

    def twist(s):
        out = (0,) * r
        for t in s:
            out = _add(out, degs[t])
        return out

    modules = [FreeModule(ring, tuple(twist(s) for s in level)) for level in subsets]
    maps = []
    for j in range(1, k + 1):
        index = {s: n for n, s in enumerate(subsets[j - 1])}
        rows = [[ring.zero()] * len(subsets[j]) for _ in subsets[j - 1]]
        for col, s in enumerate(subsets[j]):
            for pos, t in enumerate(s):
                face = s[:pos] + s[pos + 1:]
                rows[index[face]][col] = polys[t] if pos % 2 == 0 else -polys[t]
        maps.append(GradedMatrix(modules[j], modules[j - 1], rows))
    return FreeComplex(modules, maps)


def taylor_complex(ring: PolyRing, monomials: Sequence[Poly]) -> FreeComplex:
    """Taylor resolution of S/<monomials>"""
    exps = []
    for m in monomials:
        if len(m.terms) != 1:
            raise InputError(f"{format_poly(m)} is not a monomial")
        exps.append(next(iter(m.terms)))
    k = len(exps)
    n = ring.nvars
    subsets = [list(combinations(range(k), j)) for j in range(k + 1)]

    def lcm(s):
        out = (0,) * n
        for t in s:
            out = mono_lcm(out, exps[t])
        return out

    modules = [FreeModule(ring, tuple(_mono_degree(lcm(s), ring) for s in level)) for level in subsets]
    maps = []
    for j in range(1, k + 1):
        index = {s: i for i, s in enumerate(subsets[j - 1])}
        rows = [[ring.zero()] * len(subsets[j]) for _ in subsets[j - 1]]
        for col, s in enumerate(subsets[j]):
            top = lcm(s)
            for pos in range(len(s)):
                face = s[:pos] + s[pos + 1:]
                coeff = 1 if pos % 2 == 0 else -1
                rows[index[face]][col] = ring.monomial(mono_div(top, lcm(face)), coeff)
        maps.append(GradedMatrix(modules[j], modules[j - 1], rows))
    return FreeComplex(modules, maps)


def direct_sum(F: FreeComplex, G: FreeComplex) -> FreeComplex:
    ring = F.ring
    n = max(F.length, G.length)

    def module(C, i):
        return C.modules[i] if i <= C.length else FreeModule(ring, ())

    def phi(C, i):
        return C.maps[i - 1] if i <= C.length else zero_map(module(C, i), module(C, i - 1))

    modules = [FreeModule(ring, module(F, i).twists + module(G, i).twists) for i in range(n + 1)]
    maps = []
    for i in range(1, n + 1):
        a, b = phi(F, i), phi(G, i)
        rows = [list(row) + [ring.zero()] * b.ncols for row in a.entries]
        rows += [[ring.zero()] * a.ncols + list(row) for row in b.entries]
        maps.append(GradedMatrix(modules[i], modules[i - 1], rows, check=False))
    return FreeComplex(modules, maps, check=False)


def twist_complex(F: FreeComplex, a: Multidegree) -> FreeComplex:
    modules = [M.shifted(a) for M in F.modules]
    maps = [GradedMatrix(modules[i], modules[i - 1], phi.entries, check=False)
            for i, phi in enumerate(F.maps, start=1)]
    return FreeComplex(modules, maps, check=False)


def truncate(F: FreeComplex, n: int) -> FreeComplex:
    """Keep F_0..F_n"""
    return FreeComplex(F.modules[:n + 1], F.maps[:n], check=False)


# ---------------------------------------------------------------------------
# File formats

def _module_from_spec(spec: ModuleSpec, ring: PolyRing) -> FreeModule:
    r = len(ring.degrees[0])
    for t in spec.twists:
        if len(t) != r:
            raise InputError(f"twist {t} has length {len(t)}, expected {r}")
    return FreeModule(ring, tuple(tuple(t) for t in spec.twists))


def _matrix_from_rows(rows: Sequence[Sequence[str]], source: FreeModule, target: FreeModule,
                      label: str) -> GradedMatrix:
    ring = target.ring
    if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
        raise InputError(f"{label}: expected a {target.rank}x{source.rank} matrix")
    try:
        entries = [[parse_poly(s, ring) for s in row] for row in rows]
        return GradedMatrix(source, target, entries)
    except InputError as e:
        raise InputError(f"{label}: {e.detail}")


def complex_from_file(data: ComplexFile, ring: PolyRing) -> FreeComplex:
    modules = [_module_from_spec(m, ring) for m in data.modules]
    if len(data.maps) != len(modules) - 1:
        raise InputError(f"{len(modules)} modules need {len(modules) - 1} maps, got {len(data.maps)}")
    maps = [_matrix_from_rows(rows, modules[i + 1], modules[i], f"phi_{i + 1}")
            for i, rows in enumerate(data.maps)]
    return FreeComplex(modules, maps)


def complex_to_file(F: FreeComplex) -> ComplexFile:
    return ComplexFile(modules=[ModuleSpec(twists=[list(t) for t in M.twists]) for M in F.modules],
                       maps=[phi.to_strings() for phi in F.maps])


def presentation_from_file(data: PresentationFile, ring: PolyRing) -> Presentation:
    source = _module_from_spec(data.source, ring)
    target = _module_from_spec(data.target, ring)
    return Presentation(_matrix_from_rows(data.matrix, source, target, "presentation"))
