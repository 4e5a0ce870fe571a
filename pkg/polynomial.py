# polynomial.py - scalars mod p, monomials, monomial orders and sparse polynomials
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Optional, Sequence, Tuple

from sympy import isprime

from errors import DegreeOfZero, InputError

Monomial = Tuple[int, ...]
Multidegree = Tuple[int, ...]

NOT_HOMOGENEOUS = "NotHomogeneous"


# ---------------------------------------------------------------------------
# Scalars

def check_prime(p: int) -> int:
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise InputError(f"coefficient modulus {p} is not an odd prime")
    return p


def scalar_inverse(a: int, p: int) -> int:
    """Inverse of a in GF(p)"""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def symmetric(c: int, p: int) -> int:
    """Representative of c in (-p/2, p/2]"""
    c %= p
    return c - p if c > p // 2 else c


# ---------------------------------------------------------------------------
# Monomials

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, checked"""
    q = tuple(x - y for x, y in zip(a, b))
    if any(e < 0 for e in q):
        raise ArithmeticError(f"monomial {b} does not divide {a}")
    return q


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Monomial orders

@dataclass(frozen=True)
class MonomialOrder:
    """Total order on exponent vectors.

    `key(m)` is a descending key: m > m' exactly when key(m) < key(m'), so
    sorting by key lists terms from the largest down and `min` picks the
    leading term. `perm` lists the variables from most to least significant
    for the reverse lexicographic tie break; `block` > 0 makes the first
    `block` variables (in perm order) an eliminated block.
    """
    kind: str
    nvars: int
    perm: Tuple[int, ...]
    block: int = 0

    @classmethod
    def grevlex(cls, nvars: int, perm: Sequence[int] = None) -> "MonomialOrder":
        perm = tuple(range(nvars)) if perm is None else tuple(perm)
        return cls("grevlex", nvars, perm)

    @classmethod
    def elimination(cls, nvars: int, block: int) -> "MonomialOrder":
        return cls("elimination", nvars, tuple(range(nvars)), block)

    @classmethod
    def lex(cls, nvars: int) -> "MonomialOrder":
        return cls("lex", nvars, tuple(range(nvars)))

    @cached_property
    def keyfunc(self):
        """Fast key closure specialised to this order"""
        if self.kind == "lex":
            perm = self.perm
            return lambda m: tuple([-m[i] for i in perm])
        if self.kind == "grevlex":
            if self.perm == tuple(range(self.nvars)):
                return lambda m: (-sum(m),) + m[::-1]
            rev = tuple(reversed(self.perm))
            return lambda m: (-sum(m),) + tuple([m[i] for i in rev])
        head, tail = self.perm[:self.block], self.perm[self.block:]
        return lambda m: _grevlex_key(m, head) + _grevlex_key(m, tail)

    def key(self, m: Monomial) -> tuple:
        return self.keyfunc(m)

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) < self.key(b)


def _grevlex_key(m: Monomial, variables: Sequence[int]) -> tuple:
    return (-sum(m[i] for i in variables),) + tuple(m[i] for i in reversed(variables))


# ---------------------------------------------------------------------------
# Rings and polynomials

@dataclass(frozen=True)
class PolyRing:
    """Variable names, coefficient prime and per-variable multidegrees.

    A variable whose degree is None is auxiliary (elimination / Rabinowitsch
    variable) and is skipped by grading checks.
    """
    names: Tuple[str, ...]
    p: int
    degrees: Tuple[Optional[Multidegree], ...] = ()

    @property
    def nvars(self) -> int:
        return len(self.names)

    @cached_property
    def grevlex(self) -> MonomialOrder:
        return MonomialOrder.grevlex(self.nvars)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c: int) -> "Poly":
        return self.monomial((0,) * self.nvars, c)

    def var(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(tuple(e), 1)

    def monomial(self, exps: Monomial, c: int = 1) -> "Poly":
        c %= self.p
        return Poly(self, {tuple(exps): c} if c else {})

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            alt = name.replace("_", "")
            if alt in self.names:
                return self.names.index(alt)
            raise InputError(f"unknown variable '{name}'")

    def with_auxiliary(self, name: str = "_t") -> "PolyRing":
        """Ring with one extra ungraded variable in front"""
        degrees = (None,) + tuple(self.degrees) if self.degrees else ()
        return PolyRing((name,) + self.names, self.p, degrees)


class Poly:
    """Sparse polynomial: exponent tuple -> nonzero residue mod p.

    Values are immutable after construction; term order is applied on
    demand through `sorted_terms(order)` and `leading(order)`.
    """
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, int]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- predicates
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def is_unit(self) -> bool:
        return bool(self.terms) and self.is_constant()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return isinstance(other, Poly) and self.ring.names == other.ring.names and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: int) -> "Poly":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c: int = 1) -> "Poly":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {mono_mul(m, mono): v * c % p for m, v in self.terms.items()})

    def _coerce(self, other) -> "Poly":
        if isinstance(other, int):
            return self.ring.constant(other)
        return other

    # -- order dependent access
    def sorted_terms(self, order: MonomialOrder = None):
        order = order or self.ring.grevlex
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]))

    def leading(self, order: MonomialOrder = None) -> Tuple[Monomial, int]:
        if not self.terms:
            raise DegreeOfZero("the zero polynomial has no leading term")
        order = order or self.ring.grevlex
        m = min(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder = None) -> "Poly":
        if not self.terms:
            return self
        _, c = self.leading(order)
        return self.scale(scalar_inverse(c, self.ring.p))

    # -- degrees
    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_standard_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def variables_used(self) -> set:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.ring.p
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * pow(x, e, p) % p
            total += v
        return total % p

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def poly_mul(f: Poly, g: Poly) -> Poly:
    """Exact product"""
    if f.ring.names != g.ring.names:
        raise InputError("polynomials live in different rings")
    p = f.ring.p
    out: Dict[Monomial, int] = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = (out.get(m, 0) + c1 * c2) % p
    return Poly(f.ring, {m: c for m, c in out.items() if c})


def divide_exact(f: Poly, g: Poly) -> Poly:
    """f / g when g divides f; ArithmeticError otherwise"""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    order = f.ring.grevlex
    lm, lc = g.leading(order)
    inv = scalar_inverse(lc, f.ring.p)
    quotient = f.ring.zero()
    rest = f
    while rest:
        m, c = rest.leading(order)
        if not mono_divides(lm, m):
            raise ArithmeticError(f"{format_poly(g)} does not divide {format_poly(f)}")
        q = mono_div(m, lm)
        qc = c * inv % f.ring.p
        quotient = quotient + f.ring.monomial(q, qc)
        rest = rest - g.mul_term(q, qc)
    return quotient


def multidegree_of(f: Poly):
    """Common Pic-degree of the terms of f, or NOT_HOMOGENEOUS"""
    if f.is_zero():
        raise DegreeOfZero()
    degrees = f.ring.degrees
    if not degrees:
        raise InputError("ring carries no grading")
    r = len(next(d for d in degrees if d is not None))
    found = set()
    for m in f.terms:
        deg = [0] * r
        for e, d in zip(m, degrees):
            if e and d is not None:
                for k in range(r):
                    deg[k] += e * d[k]
        found.add(tuple(deg))
    if len(found) > 1:
        return NOT_HOMOGENEOUS
    return found.pop()


# ---------------------------------------------------------------------------
# String syntax

_TERM_RE = re.compile(r"([+-]?)([^+-]+)")


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse `x0*y1+10*x0*y2-x1*y0` style strings"""
    src = text.replace(" ", "").strip()
    if not src:
        raise InputError("empty polynomial string")
    pos = 0
    out = ring.zero()
    for match in _TERM_RE.finditer(src):
        if match.start() != pos:
            raise InputError(f"malformed polynomial '{text}' at offset {pos}")
        pos = match.end()
        sign, body = match.groups()
        coeff = -1 if sign == "-" else 1
        exps = [0] * ring.nvars
        for factor in body.split("*"):
            if not factor:
                raise InputError(f"malformed polynomial '{text}': empty factor")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, caret, power = factor.partition("^")
            if caret and not power.isdigit():
                raise InputError(f"malformed exponent '{factor}' in '{text}'")
            exps[ring.index(name)] += int(power) if power else 1
        out = out + ring.monomial(tuple(exps), coeff)
    if pos != len(src):
        raise InputError(f"malformed polynomial '{text}'")
    return out


def format_poly(f: Poly) -> str:
    """Inverse of parse_poly; terms in descending lex order, symmetric coefficients"""
    if f.is_zero():
        return "0"
    ring = f.ring
    parts = []
    for m, c in f.sorted_terms(MonomialOrder.lex(ring.nvars)):
        c = symmetric(c, ring.p)
        factors = []
        for name, e in zip(ring.names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        term = "*".join(factors)
        if c < 0:
            parts.append("-" + term)
        else:
            parts.append(("+" if parts else "") + term)
    return "".join(parts)
