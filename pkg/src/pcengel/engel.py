"""Conjugacy orbits, the sandwich condition, left 3-Engel checks, commutativity graphs.

A conjugate ``x^g`` only depends on where ``g`` sends ``x`` in its
conjugacy class, so statements quantified over all ``g`` in the group are
checked over the orbit instead.  The left 3-Engel condition uses
``[g, x] = (x^g)^{-1} x``: it holds for ``x`` exactly when
``[(x')^{-1} x, x, x] = 1`` for every conjugate ``x'``.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Literal

from . import collector as col
from .model import CommutativityGraph, Element, PcPresentation, generator_element, identity
from .series import random_element

__all__ = [
    "DEFAULT_ORBIT_LIMIT",
    "OrbitLimitError",
    "OrbitSet",
    "VerificationReport",
    "conjugacy_orbit",
    "is_pair_class_le2",
    "sandwich_verify",
    "engel3_verify",
    "graph_check",
]

DEFAULT_ORBIT_LIMIT = 2**22

Mode = Literal["exhaustive", "sampled"]


class OrbitLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class OrbitSet:
    base: Element
    elements: frozenset[Element]
    exhausted: bool = True

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))


@dataclass(frozen=True)
class VerificationReport:
    predicate: str
    mode: str  # "exhaustive-orbit" or "sampled(count, seed)"
    checked: int
    counterexamples: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def _generators(p: PcPresentation) -> list[Element]:
    return [generator_element(p, j) for j in range(1, p.n + 1)]


def conjugacy_orbit(
    p: PcPresentation,
    g: Element,
    size_limit: int = DEFAULT_ORBIT_LIMIT,
    *,
    conjugators: Sequence[Element] | None = None,
) -> OrbitSet:
    """Conjugacy class of ``g`` by breadth-first closure.

    ``conjugators`` must generate the group; it defaults to all
    presentation generators.
    """
    conjugators = _generators(p) if conjugators is None else list(conjugators)
    seen = {g}
    frontier = [g]
    while frontier:
        nxt = []
        for a in frontier:
            for x in conjugators:
                b = col.conjugate(p, a, x)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if len(seen) > size_limit:
                        raise OrbitLimitError(
                            f"orbit of {g} in {p.name} exceeds {size_limit} elements; "
                            "raise --max-orbit or use sampled mode"
                        )
        frontier = nxt
    return OrbitSet(g, frozenset(seen), True)


def is_pair_class_le2(p: PcPresentation, u: Element, v: Element) -> bool:
    """``<u, v>`` has class at most 2, i.e. ``[u, v]`` commutes with ``u`` and ``v``."""
    one = identity(p)
    c = col.commutator(p, u, v)
    if c == one:
        return True
    return col.commutator(p, c, u) == one and col.commutator(p, c, v) == one


def _as_element(p: PcPresentation, x: int | str | Element) -> Element:
    if isinstance(x, (int, str)):
        return generator_element(p, x)
    return tuple(x)


def _mode_label(mode: Mode, count: int, seed: int) -> str:
    return "exhaustive-orbit" if mode == "exhaustive" else f"sampled({count}, {seed})"


def _conjugates(
    p: PcPresentation,
    y: Element,
    mode: Mode,
    count: int,
    seed: int,
    size_limit: int,
    conjugators: Sequence[Element] | None,
) -> Iterable[Element]:
    if mode == "exhaustive":
        return sorted(conjugacy_orbit(p, y, size_limit, conjugators=conjugators).elements)
    if mode == "sampled":
        rng = random.Random(seed)
        return [col.conjugate(p, y, random_element(p, rng)) for _ in range(count)]
    raise ValueError(f"unknown mode {mode!r}")


def sandwich_verify(
    p: PcPresentation,
    X: Sequence[int | str | Element],
    mode: Mode = "exhaustive",
    *,
    count: int = 1000,
    seed: int = 0,
    size_limit: int = DEFAULT_ORBIT_LIMIT,
    conjugators: Sequence[Element] | None = None,
) -> VerificationReport:
    """Check that ``<x, y^g>`` has class at most 2 for all ``x, y`` in ``X``.

    Counterexamples are ``(x, y, y^g)`` triples.
    """
    elems = [_as_element(p, x) for x in X]
    bad = []
    checked = 0
    for y in elems:
        zs = _conjugates(p, y, mode, count, seed, size_limit, conjugators)
        for z in zs:
            for x in elems:
                checked += 1
                if not is_pair_class_le2(p, x, z):
                    bad.append((x, y, z))
    return VerificationReport("sandwich", _mode_label(mode, count, seed), checked, tuple(sorted(set(bad))))


def engel3_verify(
    p: PcPresentation,
    x: int | str | Element,
    mode: Mode = "exhaustive",
    *,
    count: int = 1000,
    seed: int = 0,
    size_limit: int = DEFAULT_ORBIT_LIMIT,
    conjugators: Sequence[Element] | None = None,
) -> VerificationReport:
    """Check ``[g, x, x, x] = 1`` for all ``g``; counterexamples are conjugates of ``x``."""
    x = _as_element(p, x)
    one = identity(p)
    bad = []
    checked = 0
    for xg in _conjugates(p, x, mode, count, seed, size_limit, conjugators):
        checked += 1
        u = col.multiply(p, col.inverse(p, xg), x)
        if col.left_normed_commutator(p, [u, x, x]) != one:
            bad.append(xg)
    return VerificationReport("engel3", _mode_label(mode, count, seed), checked, tuple(sorted(set(bad))))


def graph_check(p: PcPresentation, G: CommutativityGraph) -> bool:
    """True iff two vertices commute exactly when they are joined by an edge."""
    return not graph_mismatches(p, G)


def graph_mismatches(p: PcPresentation, G: CommutativityGraph) -> list[tuple[int, int]]:
    one = identity(p)
    out = []
    vs = G.vertices
    for a in range(len(vs)):
        for b in range(a + 1, len(vs)):
            u, v = generator_element(p, vs[a]), generator_element(p, vs[b])
            commute = col.commutator(p, u, v) == one
            if commute != G.has_edge(vs[a], vs[b]):
                out.append((vs[a], vs[b]))
    return out
