"""Collection to normal form and the group operations built on it.

The collector works from the left: the pending word is kept on a stack and
its first letter ``x_j`` is multiplied onto the collected prefix.  With the
prefix written ``P x_j^{e_j} T`` (``T`` the part below ``j``), the relations
give ``P x_j^{e_j} T x_j = P x_j^{e_j + 1} T^{x_j}``, so the tail is cleared
and the letters of ``T^{x_j}`` (the conjugate relations applied factor by
factor) are pushed back onto the stack.  An exponent reaching ``o_j`` is
replaced by the power tail.  Every pushed letter has a smaller index than
``j``, which bounds the process for any finite presentation.
"""

from __future__ import annotations

import weakref
from collections.abc import Iterable, Sequence

from .model import Element, PcPresentation, Word, element_word, identity

__all__ = [
    "collect",
    "multiply",
    "inverse",
    "power",
    "conjugate",
    "commutator",
    "left_normed_commutator",
    "product",
]


class _Tables:
    """Relation tables in 0-based letter form, built once per presentation."""

    def __init__(self, p: PcPresentation) -> None:
        n = p.n
        self.n = n
        self.orders = list(p.orders)
        self.power = [_letters(p.power_tail[i + 1]) for i in range(n)]
        self.conj: list[list[tuple[int, ...]]] = [
            [_letters(p.conj_rhs[(i + 1, j + 1)]) for i in range(j)] for j in range(n)
        ]
        # normal-word letters of x_i^{-1}; x_i^{-1} = x_i^{o_i - 1} t_i^{-1}
        self.inv: list[tuple[int, ...]] = []
        for i in range(n):
            word = [i] * (self.orders[i] - 1)
            for k in reversed(self.power[i]):
                word.extend(self.inv[k])
            v = [0] * n
            self.run(v, word)
            self.inv.append(_vector_letters(v))

    def run(self, v: list[int], letters: Sequence[int]) -> None:
        """Multiply the collected vector ``v`` in place by ``letters``."""
        orders, power, conj = self.orders, self.power, self.conj
        stack = list(reversed(letters))
        pop, push = stack.pop, stack.extend
        while stack:
            j = pop()
            pending: list[int] | None = None
            if j and any(v[:j]):
                cj = conj[j]
                pending = []
                for i in range(j - 1, -1, -1):
                    e = v[i]
                    if e:
                        v[i] = 0
                        pending.extend(cj[i] * e)
            e = v[j] + 1
            if e == orders[j]:
                v[j] = 0
                if pending:
                    push(reversed(pending))
                if power[j]:
                    push(reversed(power[j]))
            else:
                v[j] = e
                if pending:
                    push(reversed(pending))


def _letters(word: Word) -> tuple[int, ...]:
    out: list[int] = []
    for k, e in word:
        out.extend([k - 1] * e)
    return tuple(out)


def _vector_letters(v: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for pos in range(len(v) - 1, -1, -1):
        if v[pos]:
            out.extend([pos] * v[pos])
    return tuple(out)


_TABLES: weakref.WeakKeyDictionary[PcPresentation, _Tables] = weakref.WeakKeyDictionary()


def tables(p: PcPresentation) -> _Tables:
    t = _TABLES.get(p)
    if t is None:
        t = _Tables(p)
        _TABLES[p] = t
    return t


def _word_letters(t: _Tables, word: Iterable[tuple[int, int]]) -> list[int]:
    out: list[int] = []
    for k, e in word:
        if not 1 <= k <= t.n:
            raise IndexError(f"generator index {k} out of range 1..{t.n}")
        if e > 0:
            out.extend([k - 1] * e)
        elif e < 0:
            out.extend(t.inv[k - 1] * (-e))
    return out


def collect(p: PcPresentation, w: Iterable[tuple[int, int]]) -> Element:
    """Normal form of the word ``w`` (pairs ``(index, exponent)``, any sign)."""
    t = tables(p)
    v = [0] * t.n
    t.run(v, _word_letters(t, w))
    return tuple(v)


def multiply(p: PcPresentation, a: Element, b: Element) -> Element:
    t = tables(p)
    v = list(a)
    t.run(v, _vector_letters(b))
    return tuple(v)


def product(p: PcPresentation, elements: Iterable[Element]) -> Element:
    t = tables(p)
    v = [0] * t.n
    for g in elements:
        t.run(v, _vector_letters(g))
    return tuple(v)


def _inverse_letters(t: _Tables, a: Sequence[int]) -> list[int]:
    # (x_n^{e_n} ... x_1^{e_1})^{-1} = x_1^{-e_1} ... x_n^{-e_n}
    out: list[int] = []
    for pos, e in enumerate(a):
        if e:
            out.extend(t.inv[pos] * e)
    return out


def inverse(p: PcPresentation, a: Element) -> Element:
    t = tables(p)
    v = [0] * t.n
    t.run(v, _inverse_letters(t, a))
    return tuple(v)


def power(p: PcPresentation, a: Element, k: int) -> Element:
    if k < 0:
        a, k = inverse(p, a), -k
    result = identity(p)
    base = a
    while k:
        if k & 1:
            result = multiply(p, result, base)
        k >>= 1
        if k:
            base = multiply(p, base, base)
    return result


def conjugate(p: PcPresentation, a: Element, b: Element) -> Element:
    """``a^b = b^{-1} a b``."""
    t = tables(p)
    v = [0] * t.n
    t.run(v, _inverse_letters(t, b))
    t.run(v, _vector_letters(a))
    t.run(v, _vector_letters(b))
    return tuple(v)


def commutator(p: PcPresentation, a: Element, b: Element) -> Element:
    """``[a, b] = a^{-1} b^{-1} a b``."""
    t = tables(p)
    v = [0] * t.n
    t.run(v, _inverse_letters(t, a))
    t.run(v, _inverse_letters(t, b))
    t.run(v, _vector_letters(a))
    t.run(v, _vector_letters(b))
    return tuple(v)


def left_normed_commutator(p: PcPresentation, seq: Sequence[Element]) -> Element:
    """``[a_1, ..., a_k] = [[...[a_1, a_2], ...], a_k]``."""
    if not seq:
        raise ValueError("left-normed commutator of an empty sequence")
    c = seq[0]
    for g in seq[1:]:
        c = commutator(p, c, g)
    return c


def normal_word(p: PcPresentation, e: Element) -> Word:
    return element_word(e)
