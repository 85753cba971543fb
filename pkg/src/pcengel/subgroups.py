"""Induced polycyclic sequences: sifting, closures, membership, quotients.

A subgroup is held as at most one member per leading index (the highest
index with a nonzero exponent).  Every member has leading exponent 1, which
prime relative orders allow, so sifting is echelon reduction: cancel the
leading exponent of the residue against the member sitting at that index
until the leading index is unoccupied.  Members are also reduced against
each other, so equal subgroups have equal member tables.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Literal

from . import collector as col
from .model import Element, PcPresentation, identity, leading_index, validate

__all__ = [
    "InducedPcs",
    "sift",
    "induced_pcs",
    "normal_closure",
    "full_group",
    "trivial_subgroup",
    "contains",
    "subgroup_order",
    "canonical_rep",
    "quotient",
    "QuotientMap",
]

ClosureKind = Literal["plain", "normal"]


@dataclass(frozen=True, eq=False)
class InducedPcs:
    members: Mapping[int, Element]
    closure_kind: ClosureKind
    relative_orders: tuple[int, ...]
    # member powers m^{-e}, filled on demand; not part of the value
    _inv: dict = field(default_factory=dict, repr=False, compare=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InducedPcs):
            return NotImplemented
        return dict(self.members) == dict(other.members)

    __hash__ = object.__hash__

    def elements(self) -> list[Element]:
        """Members sorted by descending leading index."""
        return [self.members[i] for i in sorted(self.members, reverse=True)]

    @property
    def leading_indices(self) -> frozenset[int]:
        return frozenset(self.members)

    def is_trivial(self) -> bool:
        return not self.members

    def __len__(self) -> int:
        return len(self.members)


def _inv_power(p: PcPresentation, s: InducedPcs, lead: int, e: int) -> Element:
    key = (lead, e)
    val = s._inv.get(key)
    if val is None:
        val = col.power(p, s.members[lead], -e)
        s._inv[key] = val
    return val


def _sift(p: PcPresentation, members: Mapping[int, Element], cache: dict, g: Element) -> Element:
    r = g
    while True:
        lead = leading_index(r)
        if lead == 0 or lead not in members:
            return r
        e = r[lead - 1]
        key = (lead, e)
        m = cache.get(key)
        if m is None:
            m = col.power(p, members[lead], -e)
            cache[key] = m
        r = col.multiply(p, m, r)


def sift(p: PcPresentation, s: InducedPcs, g: Element) -> Element:
    """Residue ``r`` with ``g`` in ``<s> r``; identity exactly when ``g`` is in ``<s>``."""
    return _sift(p, s.members, s._inv, g)


def induced_pcs(
    p: PcPresentation,
    gens: Iterable[Element],
    kind: ClosureKind = "plain",
    *,
    conjugators: Sequence[Element] | None = None,
) -> InducedPcs:
    """Smallest induced sequence containing ``gens``.

    ``kind="normal"`` also closes under conjugation by every presentation
    generator.  ``conjugators`` closes under conjugation by the given
    elements instead (a normal closure inside a subgroup); the result is
    then labelled ``plain``.
    """
    if conjugators is None and kind == "normal":
        conjugators = [col.collect(p, ((j, 1),)) for j in range(1, p.n + 1)]
    elif conjugators is not None and kind == "normal":
        kind = "plain"
    conjugators = list(conjugators or ())

    members: dict[int, Element] = {}
    cache: dict = {}
    one = identity(p)
    queue = deque(gens)
    while queue:
        r = _sift(p, members, cache, queue.popleft())
        if r == one:
            continue
        lead = leading_index(r)
        o = p.orders[lead - 1]
        e = r[lead - 1]
        if e != 1:
            r = col.power(p, r, pow(e, -1, o))
        members[lead] = r
        queue.append(col.power(p, r, o))
        for m in list(members.values()):
            if m is not r:
                queue.append(col.conjugate(p, r, m))
                queue.append(col.conjugate(p, m, r))
        for x in conjugators:
            queue.append(col.conjugate(p, r, x))
    return InducedPcs(_canonical(p, members), kind, p.orders)


def _canonical(p: PcPresentation, members: dict[int, Element]) -> dict[int, Element]:
    """Clear every member's exponents at the other occupied leading indices.

    Right multiplication by a member with leading index l leaves all
    exponents above l alone, so clearing from the top down is final.  The
    result depends only on the subgroup.
    """
    out: dict[int, Element] = {}
    for lead in sorted(members):
        m = members[lead]
        for low in sorted(out, reverse=True):
            e = m[low - 1]
            if e:
                m = col.multiply(p, m, col.power(p, out[low], -e))
        out[lead] = m
    return out


def normal_closure(p: PcPresentation, gens: Iterable[Element]) -> InducedPcs:
    return induced_pcs(p, gens, "normal")


def full_group(p: PcPresentation) -> InducedPcs:
    members = {i: col.collect(p, ((i, 1),)) for i in range(1, p.n + 1)}
    return InducedPcs(members, "normal", p.orders)


def trivial_subgroup(p: PcPresentation) -> InducedPcs:
    return InducedPcs({}, "normal", p.orders)


def contains(p: PcPresentation, s: InducedPcs, g: Element) -> bool:
    return not any(sift(p, s, g))


def subgroup_order(s: InducedPcs) -> int:
    """Product of the relative orders at the occupied leading indices."""
    order = 1
    for i in s.members:
        order *= s.relative_orders[i - 1]
    return order


def canonical_rep(p: PcPresentation, s: InducedPcs, g: Element) -> Element:
    """Coset representative of ``g <s>`` with zero exponents at every occupied index."""
    r = g
    for lead in sorted(s.members, reverse=True):
        e = r[lead - 1]
        if e:
            r = col.multiply(p, r, _inv_power(p, s, lead, e))
    return r


@dataclass(frozen=True)
class QuotientMap:
    """Natural map from ``source`` onto the quotient presentation ``target``."""

    source: PcPresentation
    target: PcPresentation
    kernel: InducedPcs
    surviving: tuple[int, ...]  # source indices kept, ascending
    images: Mapping[int, Element]  # source generator index -> quotient element

    def __call__(self, g: Element) -> Element:
        r = canonical_rep(self.source, self.kernel, g)
        return tuple(r[i - 1] for i in self.surviving)


def quotient(p: PcPresentation, N: InducedPcs, *, name: str | None = None) -> tuple[PcPresentation, QuotientMap]:
    """Presentation of ``p / N`` on the generators not occupied by ``N``.

    Surviving generators keep their names with a ``'`` suffix.
    """
    if N.closure_kind != "normal":
        raise ValueError("quotient needs a normal-closed subgroup (closure_kind='normal')")
    surviving = tuple(i for i in range(1, p.n + 1) if i not in N.members)
    new_index = {old: k for k, old in enumerate(surviving, start=1)}

    def word_of(g: Element) -> tuple[tuple[int, int], ...]:
        r = canonical_rep(p, N, g)
        return tuple((new_index[i], r[i - 1]) for i in reversed(surviving) if r[i - 1])

    gens = [
        (p.names[i - 1] + "'", p.orders[i - 1], p.generators[i - 1].definition) for i in surviving
    ]
    power = {new_index[i]: word_of(col.collect(p, p.power_tail[i])) for i in surviving}
    conj = {}
    for a, i in enumerate(surviving):
        for j in surviving[a + 1 :]:
            conj[(new_index[i], new_index[j])] = word_of(col.collect(p, p.conj_rhs[(i, j)]))
    q = validate({"name": name or f"{p.name}_quot", "generators": gens, "power": power, "conj": conj})

    qmap = QuotientMap(p, q, N, surviving, {})
    images = {i: qmap(col.collect(p, ((i, 1),))) for i in range(1, p.n + 1)}
    qmap = QuotientMap(p, q, N, surviving, images)
    return q, qmap
