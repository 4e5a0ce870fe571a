# coxring.py - ambient variety data: variable blocks, Pic-degrees, dim X, components of B
import json
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import settings
from errors import InputError
from groebner import Ideal
from polynomial import Multidegree, PolyRing, check_prime
from schemas import BlockSpec, RingDescriptor

BLOCK_LETTERS = "xyzwvusrqponmlkjihgfedcba"


@dataclass(frozen=True)
class Block:
    name: str
    count: int
    degree: Multidegree


@dataclass(frozen=True)
class IrrelevantIdeal:
    """B given by its prime components Q_1..Q_m (never materialized unless asked)"""
    ring: PolyRing
    components: Tuple[Ideal, ...]
    variables: Tuple[Tuple[int, ...], ...]
    dimX: int


@dataclass(frozen=True)
class CoxRing:
    blocks: Tuple[Block, ...]
    r: int
    dimX: int
    p: int
    component_vars: Tuple[Tuple[int, ...], ...]
    ring: PolyRing
    is_product: bool

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def names(self) -> Tuple[str, ...]:
        return self.ring.names

    def degree_of_var(self, i: int) -> Multidegree:
        return self.ring.degrees[i]


def _unit(r: int, j: int) -> Multidegree:
    return tuple(1 if k == j else 0 for k in range(r))


def make_cox_ring(blocks: Sequence[Block], dimX: int, p: int,
                  components: Sequence[Sequence[int]] = None) -> CoxRing:
    """General Cox data; components default to one per block"""
    check_prime(p)
    if not blocks:
        raise InputError("a Cox ring needs at least one block")
    r = len(blocks[0].degree)
    names, degrees, block_vars = [], [], []
    for block in blocks:
        if block.count <= 0:
            raise InputError(f"block '{block.name}' has no variables")
        if len(block.degree) != r:
            raise InputError(f"block '{block.name}' has degree of length {len(block.degree)}, expected {r}")
        start = len(names)
        for i in range(block.count):
            names.append(f"{block.name}{i}")
            degrees.append(tuple(block.degree))
        block_vars.append(tuple(range(start, len(names))))
    if len(set(names)) != len(names):
        raise InputError("variable names are not unique")
    settings.check_variables(len(names))

    if components is None:
        components = block_vars
    components = tuple(tuple(sorted(c)) for c in components)
    for comp in components:
        if not comp or any(not 0 <= i < len(names) for i in comp):
            raise InputError(f"irrelevant component {comp} does not name ring variables")

    is_product = (
        len(blocks) == r
        and all(tuple(b.degree) == _unit(r, j) for j, b in enumerate(blocks))
        and components == tuple(block_vars)
    )
    if is_product and dimX is None:
        dimX = sum(b.count - 1 for b in blocks)
    if dimX is None:
        raise InputError("dimX is required for non-product Cox data")

    ring = PolyRing(tuple(names), p, tuple(degrees))
    logging.debug(f"Cox ring with {len(names)} variables, r={r}, dimX={dimX}, p={p}")
    return CoxRing(tuple(blocks), r, dimX, p, components, ring, is_product)


def make_product_space(dims: Sequence[int], p: int = None) -> CoxRing:
    """Cox ring of P^{n_1} x ... x P^{n_k}"""
    p = settings.PRIME if p is None else p
    if not dims:
        raise InputError("dims must be nonempty")
    if any(d <= 0 for d in dims):
        raise InputError(f"factor dimensions must be positive, got {list(dims)}")
    if len(dims) > len(BLOCK_LETTERS):
        raise InputError("too many factors")
    k = len(dims)
    blocks = [Block(BLOCK_LETTERS[j], d + 1, _unit(k, j)) for j, d in enumerate(dims)]
    return make_cox_ring(blocks, sum(dims), p)


def irrelevant_components(R: CoxRing) -> IrrelevantIdeal:
    comps = tuple(Ideal(R.ring, [R.ring.var(i) for i in comp]) for comp in R.component_vars)
    return IrrelevantIdeal(R.ring, comps, R.component_vars, R.dimX)


def irrelevant_ideal(R: CoxRing) -> Ideal:
    """B itself: products of one variable per component"""
    gens = [R.ring.one()]
    for comp in R.component_vars:
        gens = [g * R.ring.var(i) for g in gens for i in comp]
    return Ideal(R.ring, list(dict.fromkeys(gens)))


def factor_dims(R: CoxRing) -> List[int]:
    if not R.is_product:
        raise InputError("operation is only supported on products of projective spaces")
    return [b.count - 1 for b in R.blocks]


def ring_from_descriptor(desc: RingDescriptor) -> CoxRing:
    p = settings.PRIME if desc.p is None else desc.p
    blocks = [Block(b.name, b.count, tuple(b.degree)) for b in desc.blocks]
    components = None
    if desc.components is not None:
        names = [f"{b.name}{i}" for b in blocks for i in range(b.count)]
        components = []
        for comp in desc.components:
            try:
                components.append([names.index(v) for v in comp])
            except ValueError:
                raise InputError(f"irrelevant component {comp} names an unknown variable")
    return make_cox_ring(blocks, desc.dimX, p, components)


def ring_to_descriptor(R: CoxRing) -> RingDescriptor:
    return RingDescriptor(
        p=R.p,
        blocks=[BlockSpec(name=b.name, count=b.count, degree=list(b.degree)) for b in R.blocks],
        dimX=R.dimX,
    )


def load_ring(path: str) -> CoxRing:
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file")
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})")
    try:
        desc = RingDescriptor.model_validate(data)
    except ValueError as e:
        raise InputError(f"{path}: invalid ring descriptor: {e}")
    return ring_from_descriptor(desc)
