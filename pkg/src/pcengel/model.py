"""Data model for finite power-conjugate presentations.

A presentation has generators ``x_1 .. x_n`` with prime relative orders
``o_i`` and relations

    x_i^{o_i} = t_i            (t_i a word in x_1 .. x_{i-1})
    x_i^{x_j} = w_ij, i < j    (w_ij a word in x_1 .. x_{j-1})

Elements are exponent vectors ``e`` with ``0 <= e_i < o_i``.  The vector
denotes the normal word ``x_n^{e_n} ... x_2^{e_2} x_1^{e_1}``; the highest
index is leftmost, so ``x_1`` generates the deepest term of the series.

Elements are plain tuples: position ``i - 1`` holds the exponent of ``x_i``.
Words are tuples of ``(index, exponent)`` pairs with 1-based indices.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

Word = tuple[tuple[int, int], ...]
Element = tuple[int, ...]

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


class PresentationError(ValueError):
    """Raised when presentation data violates a structural invariant."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GeneratorInfo:
    name: str
    index: int
    relative_order: int
    # documentation only, e.g. "[z,x,y,y]"; never interpreted at load time
    definition: str | None = None


@dataclass(frozen=True, eq=False)
class PcPresentation:
    """A validated power-conjugate presentation.

    Construct through :func:`validate`; both relation maps carry every
    entry explicitly (trivial tails are empty words, trivial conjugates are
    the one-letter word ``x_i``).
    """

    name: str
    generators: tuple[GeneratorInfo, ...]
    power_tail: Mapping[int, Word]
    conj_rhs: Mapping[tuple[int, int], Word]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PcPresentation):
            return NotImplemented
        return (
            self.name == other.name
            and self.generators == other.generators
            and dict(self.power_tail) == dict(other.power_tail)
            and dict(self.conj_rhs) == dict(other.conj_rhs)
        )

    __hash__ = object.__hash__

    @property
    def n(self) -> int:
        return len(self.generators)

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(g.relative_order for g in self.generators)

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @cached_property
    def _name_index(self) -> dict[str, int]:
        return {g.name: g.index for g in self.generators}

    def index_of(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r} in {self.name}") from None

    def is_trivial_power(self, i: int) -> bool:
        return not self.power_tail[i]

    def is_trivial_conj(self, i: int, j: int) -> bool:
        return self.conj_rhs[(i, j)] == ((i, 1),)

    def __repr__(self) -> str:
        return f"PcPresentation({self.name!r}, n={self.n})"


@dataclass(frozen=True)
class CommutativityGraph:
    vertices: tuple[int, ...]
    edges: frozenset[frozenset[int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("repeated vertex in commutativity graph")
        vs = set(self.vertices)
        for e in self.edges:
            if len(e) != 2:
                raise PresentationError(f"bad edge {sorted(e)}: loops are not allowed")
            if not e <= vs:
                raise PresentationError(f"edge {sorted(e)} leaves the vertex set")

    @classmethod
    def from_pairs(cls, vertices: Iterable[int], pairs: Iterable[tuple[int, int]]) -> CommutativityGraph:
        return cls(tuple(vertices), frozenset(frozenset(p) for p in pairs))

    def has_edge(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.edges


def _reduce_relation_word(word: Iterable[tuple[int, int]], orders: tuple[int, ...], what: str) -> Word:
    out: list[list[int]] = []
    for k, e in word:
        k, e = int(k), int(e)
        if not 1 <= k <= len(orders):
            raise PresentationError(f"{what}: generator index {k} out of range")
        if e < 1:
            raise PresentationError(f"{what}: relation words must have positive exponents")
        if out and out[-1][0] == k:
            out[-1][1] += e
        else:
            out.append([k, e])
    for k, e in out:
        if e >= orders[k - 1]:
            raise PresentationError(
                f"{what}: exponent {e} of generator {k} is not reduced (relative order {orders[k - 1]})"
            )
    return tuple((k, e) for k, e in out)


def validate(raw: PcPresentation | Mapping[str, Any]) -> PcPresentation:
    """Check raw presentation data and return a :class:`PcPresentation`.

    ``raw`` is either an existing presentation (revalidated) or a mapping
    with keys ``name``, ``generators`` (sequence of ``(name, order)`` pairs,
    ``(name, order, definition)`` triples or :class:`GeneratorInfo`),
    ``power`` (index -> word) and ``conj`` ((i, j) -> word).
    """
    if isinstance(raw, PcPresentation):
        name = raw.name
        gens_in: Iterable[Any] = raw.generators
        power_in: Mapping[int, Word] = raw.power_tail
        conj_in: Mapping[tuple[int, int], Word] = raw.conj_rhs
    else:
        name = raw.get("name", "G")
        gens_in = raw.get("generators", ())
        power_in = raw.get("power", {}) or {}
        conj_in = raw.get("conj", {}) or {}

    gens: list[GeneratorInfo] = []
    seen: set[str] = set()
    for pos, g in enumerate(gens_in, start=1):
        if isinstance(g, GeneratorInfo):
            gname, order, definition = g.name, g.relative_order, g.definition
        else:
            gname, order, *rest = g
            definition = rest[0] if rest else None
        if not isinstance(gname, str) or not NAME_RE.match(gname):
            raise PresentationError(f"invalid generator name {gname!r}")
        if gname in seen:
            raise PresentationError(f"duplicate generator name {gname!r}")
        seen.add(gname)
        order = int(order)
        if not is_prime(order):
            raise PresentationError(f"relative order {order} of {gname} is not prime")
        gens.append(GeneratorInfo(gname, pos, order, definition))

    n = len(gens)
    orders = tuple(g.relative_order for g in gens)

    power: dict[int, Word] = {}
    for i, w in power_in.items():
        i = int(i)
        if not 1 <= i <= n:
            raise PresentationError(f"power relation for unknown generator index {i}")
        word = _reduce_relation_word(w, orders, f"power tail of {gens[i - 1].name}")
        if any(k >= i for k, _ in word):
            raise PresentationError(
                f"power tail of {gens[i - 1].name} may only use generators below index {i}"
            )
        power[i] = word

    conj: dict[tuple[int, int], Word] = {}
    for key, w in conj_in.items():
        i, j = (int(key[0]), int(key[1]))
        if not (1 <= i <= n and 1 <= j <= n):
            raise PresentationError(f"conjugate relation ({i}, {j}) out of range")
        if i >= j:
            raise PresentationError(
                f"conjugate relation {gens[i - 1].name}^{gens[j - 1].name} needs i < j (got {i} >= {j})"
            )
        word = _reduce_relation_word(w, orders, f"conjugate {gens[i - 1].name}^{gens[j - 1].name}")
        if any(k >= j for k, _ in word):
            raise PresentationError(
                f"conjugate {gens[i - 1].name}^{gens[j - 1].name} may only use generators below index {j}"
            )
        conj[(i, j)] = word

    full_power = {i: power.get(i, ()) for i in range(1, n + 1)}
    full_conj = {
        (i, j): conj.get((i, j), ((i, 1),)) for j in range(1, n + 1) for i in range(1, j)
    }
    return PcPresentation(name, tuple(gens), full_power, full_conj)


def identity(p: PcPresentation) -> Element:
    return (0,) * p.n


def generator_element(p: PcPresentation, i: int | str) -> Element:
    """Unit exponent vector of generator ``i`` (1-based index or name)."""
    if isinstance(i, str):
        i = p.index_of(i)
    if not 1 <= i <= p.n:
        raise IndexError(f"generator index {i} out of range 1..{p.n}")
    e = [0] * p.n
    e[i - 1] = 1
    return tuple(e)


def check_element(p: PcPresentation, e: Iterable[int]) -> Element:
    e = tuple(int(v) for v in e)
    if len(e) != p.n or any(not 0 <= v < o for v, o in zip(e, p.orders)):
        raise ValueError(f"{e} is not an exponent vector of {p.name}")
    return e


def leading_index(e: Element) -> int:
    """Highest index with a nonzero exponent, 0 for the identity."""
    for pos in range(len(e) - 1, -1, -1):
        if e[pos]:
            return pos + 1
    return 0


def element_word(e: Element) -> Word:
    """The normal word of ``e`` (highest index first)."""
    return tuple((pos + 1, v) for pos, v in reversed(list(enumerate(e))) if v)
