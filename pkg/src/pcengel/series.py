"""Lower central and derived series, hypercentre membership, element orders."""

from __future__ import annotations

import math
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Literal

from . import collector as col
from .consistency import DEFAULT_ENUMERATION_BOUND, EnumerationLimitError, enumerate_elements, group_order
from .model import Element, PcPresentation, identity
from .subgroups import InducedPcs, full_group, induced_pcs, subgroup_order

__all__ = [
    "SeriesChain",
    "NotNilpotentError",
    "lower_central_series",
    "derived_series",
    "nilpotency_class",
    "derived_length",
    "centralizes",
    "in_hypercentre",
    "element_order",
    "exponent",
    "SampledExponent",
    "random_element",
]


class NotNilpotentError(ValueError):
    pass


@dataclass(frozen=True)
class SeriesChain:
    kind: Literal["lower_central", "derived"]
    terms: tuple[InducedPcs, ...]
    stabilized: bool

    @property
    def orders(self) -> list[int]:
        return [subgroup_order(t) for t in self.terms]

    @property
    def reaches_trivial(self) -> bool:
        return self.terms[-1].is_trivial()

    def term(self, k: int) -> InducedPcs:
        """The k-th term, 1-based; terms past the end of a trivial chain are trivial."""
        if k <= len(self.terms):
            return self.terms[k - 1]
        if self.reaches_trivial:
            return self.terms[-1]
        raise IndexError(k)


def _start(p: PcPresentation, within: InducedPcs | None) -> InducedPcs:
    return full_group(p) if within is None else within


def lower_central_series(
    p: PcPresentation, within: InducedPcs | None = None, *, max_terms: int | None = None
) -> SeriesChain:
    """gamma_1 = G (or ``within``), gamma_{k+1} = [gamma_k, gamma_1].

    Stops at the trivial group, at a repeated term, or after ``max_terms``.
    """
    top = _start(p, within)
    gens = top.elements()
    terms = [top]
    one = identity(p)
    while not terms[-1].is_trivial():
        if max_terms is not None and len(terms) >= max_terms:
            return SeriesChain("lower_central", tuple(terms), False)
        comms = []
        for g in terms[-1].elements():
            for h in gens:
                c = col.commutator(p, g, h)
                if c != one:
                    comms.append(c)
        nxt = induced_pcs(p, comms, conjugators=gens)
        if nxt == terms[-1]:
            return SeriesChain("lower_central", tuple(terms), True)
        terms.append(nxt)
    return SeriesChain("lower_central", tuple(terms), True)


def derived_series(p: PcPresentation, within: InducedPcs | None = None) -> SeriesChain:
    terms = [_start(p, within)]
    one = identity(p)
    while not terms[-1].is_trivial():
        gens = terms[-1].elements()
        comms = []
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                c = col.commutator(p, gens[a], gens[b])
                if c != one:
                    comms.append(c)
        nxt = induced_pcs(p, comms, conjugators=gens)
        if nxt == terms[-1]:
            return SeriesChain("derived", tuple(terms), True)
        terms.append(nxt)
    return SeriesChain("derived", tuple(terms), True)


def nilpotency_class(p: PcPresentation, within: InducedPcs | None = None) -> int:
    """Smallest c with gamma_{c+1} trivial (trivial group: 0, abelian: 1)."""
    chain = lower_central_series(p, within)
    if not chain.reaches_trivial:
        raise NotNilpotentError(
            f"lower central series of {p.name} stabilises at order {chain.orders[-1]}"
        )
    return len(chain.terms) - 1


def derived_length(p: PcPresentation, within: InducedPcs | None = None) -> int:
    chain = derived_series(p, within)
    if not chain.reaches_trivial:
        raise NotNilpotentError(f"derived series of {p.name} does not reach 1")
    return len(chain.terms) - 1


def centralizes(p: PcPresentation, g: Element, S: InducedPcs) -> bool:
    """True iff ``g`` commutes with every member of ``S``."""
    one = identity(p)
    return all(col.commutator(p, g, m) == one for m in S.elements())


def in_hypercentre(
    p: PcPresentation, g: Element, k: int, generators: Sequence[Element] | None = None
) -> bool:
    """True iff every ``[g, y_1, ..., y_k]`` with ``y_i`` generators is trivial.

    ``generators`` defaults to the presentation generators; any generating
    set of the group gives the same answer.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if generators is None:
        generators = [col.collect(p, ((j, 1),)) for j in range(1, p.n + 1)]
    one = identity(p)
    level = {g} - {one}
    for _ in range(k):
        if not level:
            return True
        level = {col.commutator(p, s, y) for s in level for y in generators} - {one}
    return not level


def element_order(p: PcPresentation, g: Element) -> int:
    """Smallest k >= 1 with g^k = 1, one prime of the group order at a time."""
    one = identity(p)
    n = group_order(p, checked=False)
    result = 1
    for q in sorted(set(p.orders)):
        qa = 1
        while n % (qa * q) == 0:
            qa *= q
        h = col.power(p, g, n // qa)
        while h != one:
            h = col.power(p, h, q)
            result *= q
    return result


def random_element(p: PcPresentation, rng: random.Random) -> Element:
    """Uniform element of a consistent presentation."""
    return tuple(rng.randrange(o) for o in p.orders)


@dataclass(frozen=True)
class SampledExponent:
    """lcm of sampled element orders: a lower bound for (and divisor of) the exponent."""

    lower_bound: int
    count: int
    seed: int


def exponent(
    p: PcPresentation,
    mode: Literal["exhaustive", "sampled"] = "exhaustive",
    *,
    count: int = 1000,
    seed: int = 0,
    max_enumeration: int = DEFAULT_ENUMERATION_BOUND,
) -> int | SampledExponent:
    if mode == "exhaustive":
        if group_order(p, checked=False) > max_enumeration:
            raise EnumerationLimitError(
                f"exhaustive exponent of {p.name} exceeds the enumeration bound {max_enumeration}; "
                "use mode='sampled' or raise --max-enumeration"
            )
        return _lcm_orders(p, enumerate_elements(p, max_enumeration=max_enumeration))
    if mode == "sampled":
        rng = random.Random(seed)
        value = _lcm_orders(p, (random_element(p, rng) for _ in range(count)))
        return SampledExponent(value, count, seed)
    raise ValueError(f"unknown mode {mode!r}")


def _lcm_orders(p: PcPresentation, elements: Iterable[Element]) -> int:
    result = 1
    for g in elements:
        result = math.lcm(result, element_order(p, g))
    return result
