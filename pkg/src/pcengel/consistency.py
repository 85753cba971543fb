"""Consistency of power-conjugate presentations and what follows from it.

A presentation is consistent exactly when every overlap of two relations
resolves to the same normal form.  With the normal word written highest
index first, the rewrite rules are ``x_i x_j -> x_j w_ij`` (i < j) and
``x_i^{o_i} -> t_i``, and the overlaps to test are, for i < j < k,

    (x_i x_j) x_k        =  x_i (x_j x_k)
    (x_i x_j) x_j^{o-1}  =  x_i (x_j^{o})
    (x_i^{o}) x_j        =  x_i^{o-1} (x_i x_j)
    (x_i^{o}) x_i        =  x_i (x_i^{o})

Each parenthesised part is collected first and the remaining letters are
then multiplied on.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass, field

from .collector import tables
from .model import Element, PcPresentation

__all__ = [
    "ConsistencyReport",
    "Failure",
    "InconsistentPresentation",
    "EnumerationLimitError",
    "DEFAULT_ENUMERATION_BOUND",
    "check_consistency",
    "group_order",
    "enumerate_elements",
]

DEFAULT_ENUMERATION_BOUND = 2**22


class InconsistentPresentation(ValueError):
    pass


class EnumerationLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class Failure:
    kind: str  # "triple" | "power-right" | "power-left" | "power-power"
    indices: tuple[int, ...]  # (k, j, i), descending
    left: Element
    right: Element


@dataclass(frozen=True)
class ConsistencyReport:
    presentation: str
    failures: tuple[Failure, ...] = field(default_factory=tuple)

    @property
    def consistent(self) -> bool:
        return not self.failures


def _eval(t, first: list[int], then: list[int]) -> tuple[int, ...]:
    v = [0] * t.n
    t.run(v, first)
    t.run(v, then)
    return tuple(v)


def _pair_checks(t, i: int, j: int) -> list[Failure]:
    oi, oj = t.orders[i], t.orders[j]
    out = []
    # x_i x_j^{o_j}
    left = _eval(t, [i, j], [j] * (oj - 1))
    right = _eval(t, [i], list(t.power[j]))
    if left != right:
        out.append(Failure("power-right", (j + 1, i + 1), left, right))
    # x_i^{o_i} x_j
    left = _eval(t, list(t.power[i]), [j])
    right = _eval(t, [i] * (oi - 1), _collected(t, [i, j]))
    if left != right:
        out.append(Failure("power-left", (j + 1, i + 1), left, right))
    return out


def _collected(t, letters: list[int]) -> list[int]:
    v = [0] * t.n
    t.run(v, letters)
    out: list[int] = []
    for pos in range(t.n - 1, -1, -1):
        out.extend([pos] * v[pos])
    return out


def check_consistency(p: PcPresentation) -> ConsistencyReport:
    t = tables(p)
    n = t.n
    failures: list[Failure] = []
    for i in range(n):
        left = _eval(t, list(t.power[i]), [i])
        right = _eval(t, [i], list(t.power[i]))
        if left != right:
            failures.append(Failure("power-power", (i + 1,), left, right))
    for i, j in itertools.combinations(range(n), 2):
        failures.extend(_pair_checks(t, i, j))
    for i, j, k in itertools.combinations(range(n), 3):
        left = _eval(t, _collected(t, [i, j]), [k])
        right = _eval(t, [i], _collected(t, [j, k]))
        if left != right:
            failures.append(Failure("triple", (k + 1, j + 1, i + 1), left, right))
    failures.sort(key=lambda f: (f.indices, f.kind))
    return ConsistencyReport(p.name, tuple(failures))


def group_order(p: PcPresentation, *, checked: bool = True) -> int:
    """Product of the relative orders; raises unless the presentation is consistent."""
    if checked and not check_consistency(p).consistent:
        raise InconsistentPresentation(
            f"{p.name} is inconsistent; the product of relative orders is only an upper bound"
        )
    order = 1
    for o in p.orders:
        order *= o
    return order


def enumerate_elements(
    p: PcPresentation, limit: int | None = None, *, max_enumeration: int = DEFAULT_ENUMERATION_BOUND
) -> Iterator[Element]:
    """Yield every exponent vector, lexicographically by (e_1, ..., e_n).

    Without ``limit`` the group order must not exceed ``max_enumeration``
    (raise it with ``--max-enumeration`` on the command line).
    """
    order = group_order(p, checked=False)
    if limit is None and order > max_enumeration:
        raise EnumerationLimitError(
            f"{p.name} has {order} elements, above the enumeration bound {max_enumeration}; "
            "pass limit= or raise --max-enumeration"
        )
    it = itertools.product(*(range(o) for o in p.orders))
    if limit is not None:
        it = itertools.islice(it, limit)
    yield from it
