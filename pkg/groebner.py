# groebner.py - Buchberger engine and the ideal toolbox built on it
import heapq
import logging
import math
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import settings
from errors import ResourceCapExceeded
from polynomial import Monomial, MonomialOrder, Poly, PolyRing, divide_exact, scalar_inverse

INFINITY = math.inf

# Engine terms are (position, e_0, ..., e_{n-1}); ideals use position 0 only.
Term = Tuple[int, ...]
Vector = Dict[Term, int]
KeyFunc = Callable[[Term], tuple]


# ---------------------------------------------------------------------------
# Engine

class Element:
    """Monic basis element: leading term, remaining terms, whole vector"""
    __slots__ = ("lt", "tail", "vec")

    def __init__(self, vec: Vector, key: KeyFunc, p: int):
        lt = min(vec, key=key)
        inv = scalar_inverse(vec[lt], p)
        self.vec = {t: c * inv % p for t, c in vec.items()}
        self.lt = lt
        self.tail = [(t, c) for t, c in self.vec.items() if t != lt]


def _divides(a: Term, b: Term) -> bool:
    if a[0] != b[0]:
        return False
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Term, b: Term) -> Optional[Term]:
    if a[0] != b[0]:
        return None
    return (a[0],) + tuple([x if x > y else y for x, y in zip(a[1:], b[1:])])


def _shift_term(t: Term, q: Monomial) -> Term:
    return (t[0],) + tuple([x + y for x, y in zip(t[1:], q)])


def _quotient(a: Term, b: Term) -> Monomial:
    return tuple([x - y for x, y in zip(a[1:], b[1:])])


def _reducer(t: Term, basis: Sequence[Element]) -> Optional[Element]:
    for g in basis:
        if _divides(g.lt, t):
            return g
    return None


def reduce_vector(vec: Vector, basis: Sequence[Element], key: KeyFunc, p: int) -> Vector:
    """Full reduction of vec by a list of monic elements"""
    f = dict(vec)
    heap = [(key(t), t) for t in f]
    heapq.heapify(heap)
    rem: Vector = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = f.pop(t, 0)
        if not c:
            continue
        g = _reducer(t, basis)
        if g is None:
            rem[t] = c
            continue
        q = _quotient(t, g.lt)
        for gt, gc in g.tail:
            nt = _shift_term(gt, q)
            old = f.get(nt)
            v = ((old or 0) - c * gc) % p
            if v:
                if old is None:
                    heapq.heappush(heap, (key(nt), nt))
                f[nt] = v
            elif old is not None:
                del f[nt]
    return rem


def _spoly(a: Element, b: Element, lcm: Term, p: int) -> Vector:
    qa, qb = _quotient(lcm, a.lt), _quotient(lcm, b.lt)
    out: Vector = {}
    for t, c in a.tail:
        nt = _shift_term(t, qa)
        out[nt] = (out.get(nt, 0) + c) % p
    for t, c in b.tail:
        nt = _shift_term(t, qb)
        out[nt] = (out.get(nt, 0) - c) % p
    return {t: c for t, c in out.items() if c}


def _sugar(t: Term, shift: Sequence[int]) -> int:
    return sum(t[1:]) + (shift[t[0]] if shift else 0)


def buchberger(vectors: Sequence[Vector], key: KeyFunc, p: int,
               shift: Sequence[int] = None, product_criterion: bool = True) -> List[Element]:
    """Reduced Groebner basis of the submodule spanned by `vectors`.

    Gebauer-Moeller pair elimination, pairs processed by (lcm degree, i, j).
    The product criterion only holds for ideals; callers working with
    several positions pass product_criterion=False.
    """
    basis: List[Element] = []
    live: Dict[Tuple[int, int], Term] = {}
    heap: List[Tuple[int, int, int]] = []

    def add(vec: Vector):
        elem = Element(vec, key, p)
        k = len(basis)
        ltf = elem.lt
        for (i, j), lij in list(live.items()):
            if _divides(ltf, lij) and lij != _lcm(basis[i].lt, ltf) and lij != _lcm(basis[j].lt, ltf):
                del live[(i, j)]
        groups: Dict[Term, List[int]] = {}
        for i, g in enumerate(basis):
            lcm = _lcm(g.lt, ltf)
            if lcm is not None:
                groups.setdefault(lcm, []).append(i)
        kept: List[Term] = []
        for lcm in sorted(groups, key=key, reverse=True):
            if any(_divides(other, lcm) for other in kept):
                continue
            kept.append(lcm)
            members = groups[lcm]
            if product_criterion and any(
                    lcm == _shift_term(basis[i].lt, ltf[1:]) for i in members):
                continue
            pair = (min(members), k)
            live[pair] = lcm
            heapq.heappush(heap, (_sugar(lcm, shift), pair[0], pair[1]))
        basis.append(elem)

    seeds = sorted((v for v in vectors if v), key=lambda v: min(_sugar(t, shift) for t in v))
    for vec in seeds:
        r = reduce_vector(vec, basis, key, p)
        if r:
            add(r)

    processed = 0
    while heap:
        _, i, j = heapq.heappop(heap)
        lcm = live.pop((i, j), None)
        if lcm is None:
            continue
        processed += 1
        if processed > settings.MAX_PAIRS:
            raise ResourceCapExceeded(f"Groebner pair queue exceeded {settings.MAX_PAIRS} pairs")
        if processed % 64 == 0:
            settings.check_budget()
        s = _spoly(basis[i], basis[j], lcm, p)
        if s:
            r = reduce_vector(s, basis, key, p)
            if r:
                add(r)

    logging.debug(f"buchberger: {processed} pairs, {len(basis)} elements before interreduction")
    return _interreduce(_minimalize(basis, key), key, p)


def _minimalize(basis: List[Element], key: KeyFunc) -> List[Element]:
    kept: List[Element] = []
    for g in sorted(basis, key=lambda e: key(e.lt), reverse=True):
        if not any(_divides(h.lt, g.lt) for h in kept):
            kept.append(g)
    return kept


def _interreduce(basis: List[Element], key: KeyFunc, p: int) -> List[Element]:
    out = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1:]
        out.append(Element(reduce_vector(g.vec, others, key, p), key, p))
    out.sort(key=lambda e: key(e.lt))
    return out


# ---------------------------------------------------------------------------
# Ideals

def _to_vec(f: Poly) -> Vector:
    return {(0,) + m: c for m, c in f.terms.items()}


def _from_vec(vec: Vector, ring: PolyRing) -> Poly:
    return Poly(ring, {t[1:]: c for t, c in vec.items()})


def _ideal_key(order: MonomialOrder) -> KeyFunc:
    kf = order.keyfunc
    return lambda t: kf(t[1:])


class GroebnerBasis:
    """Reduced Groebner basis for one monomial order"""

    def __init__(self, ring: PolyRing, order: MonomialOrder, elements: List[Element]):
        self.ring = ring
        self.order = order
        self._elements = elements
        self._key = _ideal_key(order)
        self.elements = tuple(_from_vec(e.vec, ring) for e in elements)

    def leading_monomials(self) -> List[Monomial]:
        return [e.lt[1:] for e in self._elements]

    def normal_form(self, f: Poly) -> Poly:
        return _from_vec(reduce_vector(_to_vec(f), self._elements, self._key, self.ring.p), self.ring)

    def contains(self, f: Poly) -> bool:
        return not self.normal_form(f)

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_unit()

    def __len__(self):
        return len(self.elements)


class Ideal:
    """Finitely generated ideal; Groebner bases are cached per monomial order"""

    def __init__(self, ring: PolyRing, generators: Sequence[Poly]):
        self.ring = ring
        self.generators = tuple(g for g in generators if g)
        self._bases: Dict[MonomialOrder, GroebnerBasis] = {}

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [])

    def basis(self, order: MonomialOrder = None) -> GroebnerBasis:
        order = order or self.ring.grevlex
        gb = self._bases.get(order)
        if gb is None:
            gb = groebner_basis(self, order)
            self._bases[order] = gb
        return gb

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        if any(g.is_unit() for g in self.generators):
            return True
        return bool(self.generators) and self.basis().is_unit()

    def contains_poly(self, f: Poly) -> bool:
        if not f:
            return True
        if self.is_zero():
            return False
        return self.basis().contains(f)

    def reduced_basis(self) -> Tuple[Poly, ...]:
        if self.is_zero():
            return ()
        return self.basis().elements

    def is_standard_homogeneous(self) -> bool:
        return all(g.is_standard_homogeneous() for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal) or self.ring.names != other.ring.names:
            return False
        return set(self.reduced_basis()) == set(other.reduced_basis())

    def __hash__(self):
        return hash(frozenset(self.reduced_basis()))

    def __str__(self):
        gens = self.reduced_basis()
        return "<" + ", ".join(str(g) for g in gens) + ">" if gens else "<0>"

    def __repr__(self):
        return f"Ideal({self})"


def ideal_strings(I: Ideal) -> List[str]:
    """Reduced grevlex basis as printable strings"""
    return [str(g) for g in I.reduced_basis()]


def groebner_basis(I: Ideal, order: MonomialOrder = None) -> GroebnerBasis:
    order = order or I.ring.grevlex
    key = _ideal_key(order)
    elems = buchberger([_to_vec(g) for g in I.generators], key, I.ring.p)
    logging.debug(f"groebner_basis: {len(I.generators)} generators -> {len(elems)} elements")
    return GroebnerBasis(I.ring, order, elems)


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    return G.normal_form(f)


def contains(I: Ideal, J: Ideal) -> bool:
    """J is a subset of I"""
    return all(I.contains_poly(g) for g in J.generators)


def equals(I: Ideal, J: Ideal) -> bool:
    return I == J


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(I.ring, list(I.generators) + list(J.generators))


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(I.ring, [f * g for f in I.generators for g in J.generators])


# -- elimination helpers

def _lift_aux(f: Poly, ring: PolyRing) -> Poly:
    return Poly(ring, {(0,) + m: c for m, c in f.terms.items()})


def _eliminate_aux(gens: Sequence[Poly], aux_ring: PolyRing, ring: PolyRing) -> Ideal:
    """Generators of <gens> intersected with the ring without the first variable"""
    order = MonomialOrder.elimination(aux_ring.nvars, 1)
    gb = Ideal(aux_ring, gens).basis(order)
    kept = [Poly(ring, {m[1:]: c for m, c in g.terms.items()})
            for g in gb.elements if all(m[0] == 0 for m in g.terms)]
    return Ideal(ring, kept)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from tI + (1-t)J"""
    if I.is_zero() or J.is_zero():
        return Ideal.zero(I.ring)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    aux = I.ring.with_auxiliary()
    t = aux.var(0)
    gens = [t * _lift_aux(f, aux) for f in I.generators]
    gens += [(1 - t) * _lift_aux(g, aux) for g in J.generators]
    return _eliminate_aux(gens, aux, I.ring)


def _quotient_principal(I: Ideal, f: Poly) -> Ideal:
    """I : f = (I ∩ <f>) / f"""
    ring = I.ring
    if I.contains_poly(f):
        return Ideal.unit(ring)
    meet = intersect(I, Ideal(ring, [f]))
    return Ideal(ring, [divide_exact(g, f) for g in meet.generators])


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """I : J as the intersection of the principal colons I : f_j"""
    if J.is_zero():
        logging.warning("ideal_quotient: colon by the zero ideal is the unit ideal")
        return Ideal.unit(I.ring)
    result = None
    for f in J.generators:
        colon = _quotient_principal(I, f)
        result = colon if result is None else intersect(result, colon)
    return result


def saturate(I: Ideal, J: Ideal) -> Ideal:
    """I : J^∞ by iterating I := I : J until stable"""
    current = I
    steps = 0
    while True:
        settings.check_budget()
        nxt = ideal_quotient(current, J)
        steps += 1
        if contains(current, nxt):
            logging.info(f"saturate: stable after {steps} colon steps")
            return current
        current = nxt


def saturate_by_variable(I: Ideal, k: int) -> Ideal:
    """I : x_k^∞; homogeneous inputs use a reverse lex order with x_k last"""
    ring = I.ring
    if I.is_zero() or I.is_unit():
        return I
    if not I.is_standard_homogeneous():
        return saturate(I, Ideal(ring, [ring.var(k)]))
    perm = [i for i in range(ring.nvars) if i != k] + [k]
    gb = I.basis(MonomialOrder.grevlex(ring.nvars, perm))
    gens = []
    for g in gb.elements:
        low = min(m[k] for m in g.terms)
        if low:
            g = Poly(ring, {m[:k] + (m[k] - low,) + m[k + 1:]: c for m, c in g.terms.items()})
        gens.append(g)
    return Ideal(ring, gens)


def _saturate_component(I: Ideal, Q: Ideal, variables: Sequence[int]) -> Ideal:
    if variables and I.is_standard_homogeneous():
        result = None
        for k in variables:
            part = saturate_by_variable(I, k)
            result = part if result is None else intersect(result, part)
        return result
    return saturate(I, Q)


def saturate_by_irrelevant(I: Ideal, B) -> Ideal:
    """I : B^∞ chained over the prime components of B"""
    if I.is_zero() or I.is_unit():
        return I
    if codim(I) > B.dimX:
        logging.info("saturate_by_irrelevant: codim exceeds dim X, saturation is the unit ideal")
        return Ideal.unit(I.ring)
    current = I
    for Q, variables in zip(B.components, B.variables):
        current = _saturate_component(current, Q, variables)
        if current.is_unit():
            break
    return current


def is_b_saturated(I: Ideal, B) -> bool:
    return saturate_by_irrelevant(I, B) == I


def bsaturated_prime_status(P: Ideal, B) -> str:
    """'irrelevant' when some component of B lies in the prime P, else 'saturated'"""
    for variables in B.variables:
        if all(P.contains_poly(P.ring.var(i)) for i in variables):
            return "irrelevant"
    return "saturated"


def radical_membership(f: Poly, I: Ideal) -> bool:
    """f ∈ √I via 1 ∈ I + <1 - t f> in the t-extended ring"""
    if I.is_unit() or I.contains_poly(f):
        return True
    if I.is_zero():
        return f.is_zero()
    aux = I.ring.with_auxiliary()
    t = aux.var(0)
    gens = [_lift_aux(g, aux) for g in I.generators] + [1 - t * _lift_aux(f, aux)]
    return Ideal(aux, gens).is_unit()


# -- dimension

def dimension(I: Ideal) -> int:
    """Krull dimension of S/I from maximal independent sets; -1 for the unit ideal"""
    n = I.ring.nvars
    if I.is_zero():
        return n
    if I.is_unit():
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in I.basis().leading_monomials()]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            chosen = set(subset)
            if all(not s <= chosen for s in supports):
                return size
    return 0


def codim(I: Ideal):
    if I.is_unit():
        return INFINITY
    return I.ring.nvars - dimension(I)


def grade(I: Ideal):
    """Depth of I on S; S is Cohen-Macaulay so this is the codimension"""
    return codim(I)
