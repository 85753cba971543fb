"""Reference multiplier by naive rewriting, for cross-checking the collector.

Words are plain letter lists.  At each step the rightmost offending spot is
rewritten by a single relation: an ascending pair ``x_i x_j`` (i < j)
becomes ``x_j w_ij``, and a run of ``o_i`` copies of ``x_i`` becomes the
power tail.  Nothing is shared with :mod:`pcengel.collector`; it is slow
and only meant for small inputs.
"""

from __future__ import annotations

from collections.abc import Iterable

from .model import Element, PcPresentation

__all__ = ["rewrite_normal_form", "oracle_multiply"]


def _expand(word: Iterable[tuple[int, int]]) -> list[int]:
    out: list[int] = []
    for i, e in word:
        if e < 0:
            raise ValueError("the oracle only handles positive words")
        out.extend([i] * e)
    return out


def _step(p: PcPresentation, w: list[int]) -> bool:
    """Apply one rewrite at the rightmost offending position; False if normal."""
    k = len(w) - 2
    while k >= 0:
        i, j = w[k], w[k + 1]
        if i < j:
            w[k : k + 2] = [j] + _expand(p.conj_rhs[(i, j)])
            return True
        o = p.orders[i - 1]
        if k + o <= len(w) and all(x == i for x in w[k : k + o]):
            w[k : k + o] = _expand(p.power_tail[i])
            return True
        k -= 1
    return False


def rewrite_normal_form(p: PcPresentation, word: Iterable[tuple[int, int]], max_steps: int = 10**6) -> Element:
    w = _expand(word)
    steps = 0
    while _step(p, w):
        steps += 1
        if steps > max_steps:
            raise RuntimeError("rewriting did not terminate within max_steps")
    v = [0] * p.n
    for i in w:
        v[i - 1] += 1
    return tuple(v)


def oracle_multiply(p: PcPresentation, a: Element, b: Element) -> Element:
    def word(e: Element) -> list[tuple[int, int]]:
        return [(i, e[i - 1]) for i in range(p.n, 0, -1) if e[i - 1]]

    return rewrite_normal_form(p, word(a) + word(b))
