"""Text formats: presentation files, words, commutator expressions, reports.

Presentation files are line oriented::

    group F_2_13
    gen x1 order 2      # [z,x,y,y]
    gen x7 order 2
    pow x7 = x1
    conj x4 ^ x12 = x4 x2 x1

Omitted relations are trivial.  A comment trailing a ``gen`` line is kept as
that generator's definition annotation.
"""

from __future__ import annotations

import json
import re
from collections.abc import Callable, Iterable, Mapping, Sequence
from typing import Any

from . import collector
from .model import Element, PcPresentation, PresentationError, Word, is_prime, validate

__all__ = [
    "ParseError",
    "parse_presentation",
    "serialize_presentation",
    "parse_word",
    "format_word",
    "format_element",
    "parse_expression",
    "evaluate",
    "dump_report",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<int>-?\d+)|(?P<op>[=^]))")


def _tokens(text: str, lineno: int) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


def _word_from_tokens(
    toks: Sequence[tuple[str, str, int]],
    index_of: Callable[[str], int],
    lineno: int,
    allow_negative: bool,
) -> Word:
    if len(toks) == 1 and toks[0][:2] == ("int", "1"):
        return ()
    if not toks:
        raise ParseError("empty word (write 1 for the identity)", lineno, 1)
    word: list[tuple[int, int]] = []
    k = 0
    while k < len(toks):
        kind, val, col = toks[k]
        if kind != "name":
            raise ParseError(f"expected generator name, got {val!r}", lineno, col)
        try:
            idx = index_of(val)
        except KeyError:
            raise ParseError(f"unknown generator {val!r}", lineno, col) from None
        exp = 1
        if k + 1 < len(toks) and toks[k + 1][1] == "^":
            if k + 2 >= len(toks) or toks[k + 2][0] != "int":
                c = toks[k + 1][2]
                raise ParseError("malformed exponent", lineno, c)
            exp = int(toks[k + 2][1])
            if not allow_negative and exp < 1:
                raise ParseError("relation words take positive exponents only", lineno, toks[k + 2][2])
            k += 3
        else:
            k += 1
        word.append((idx, exp))
    return tuple(word)


def parse_presentation(text: str) -> PcPresentation:
    name: str | None = None
    gens: list[tuple[str, int, str | None]] = []
    index: dict[str, int] = {}
    power: dict[int, Word] = {}
    conj: dict[tuple[int, int], Word] = {}
    deferred: list[tuple[int, str, Sequence[tuple[str, str, int]]]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        toks = _tokens(body, lineno)
        if not toks:
            continue
        head = toks[0]
        if head[:2] == ("name", "group"):
            if name is not None:
                raise ParseError("second group header", lineno, head[2])
            if len(toks) != 2 or toks[1][0] != "name":
                raise ParseError("expected: group NAME", lineno, head[2])
            name = toks[1][1]
            continue
        if name is None:
            raise ParseError("file must start with a group header", lineno, head[2])
        if head[:2] == ("name", "gen"):
            if len(toks) != 4 or toks[1][0] != "name" or toks[2][1] != "order" or toks[3][0] != "int":
                raise ParseError("expected: gen NAME order PRIME", lineno, head[2])
            gname = toks[1][1]
            if gname in index:
                raise ParseError(f"duplicate generator {gname!r}", lineno, toks[1][2])
            if deferred:
                raise ParseError("gen lines must precede relations", lineno, head[2])
            if not is_prime(int(toks[3][1])):
                raise ParseError(f"relative order {toks[3][1]} of {gname} is not prime", lineno, toks[3][2])
            index[gname] = len(gens) + 1
            gens.append((gname, int(toks[3][1]), comment.strip() or None))
        elif head[:2] in (("name", "pow"), ("name", "conj")):
            deferred.append((lineno, head[1], toks))
        else:
            raise ParseError(f"unknown record {head[1]!r}", lineno, head[2])

    if name is None:
        raise ParseError("missing group header")

    def lookup(n: str) -> int:
        return index[n]

    for lineno, kind, toks in deferred:
        if kind == "pow":
            if len(toks) < 4 or toks[1][0] != "name" or toks[2][1] != "=":
                raise ParseError("expected: pow NAME = word", lineno, toks[0][2])
            if toks[1][1] not in index:
                raise ParseError(f"unknown generator {toks[1][1]!r}", lineno, toks[1][2])
            i = index[toks[1][1]]
            if i in power:
                raise ParseError(f"duplicate power relation for {toks[1][1]}", lineno, toks[0][2])
            power[i] = _word_from_tokens(toks[3:], lookup, lineno, allow_negative=False)
        else:
            if (
                len(toks) < 6
                or toks[1][0] != "name"
                or toks[2][1] != "^"
                or toks[3][0] != "name"
                or toks[4][1] != "="
            ):
                raise ParseError("expected: conj NAME ^ NAME = word", lineno, toks[0][2])
            for t in (toks[1], toks[3]):
                if t[1] not in index:
                    raise ParseError(f"unknown generator {t[1]!r}", lineno, t[2])
            key = (index[toks[1][1]], index[toks[3][1]])
            if key in conj:
                raise ParseError(
                    f"duplicate conjugate relation {toks[1][1]}^{toks[3][1]}", lineno, toks[0][2]
                )
            conj[key] = _word_from_tokens(toks[5:], lookup, lineno, allow_negative=False)
        try:
            validate({"name": name, "generators": gens, "power": power, "conj": conj})
        except PresentationError as exc:
            raise ParseError(str(exc), lineno, toks[0][2]) from None

    try:
        return validate({"name": name, "generators": gens, "power": power, "conj": conj})
    except PresentationError as exc:
        raise ParseError(str(exc)) from None


def format_word(p: PcPresentation, w: Iterable[tuple[int, int]]) -> str:
    parts = [p.names[k - 1] if e == 1 else f"{p.names[k - 1]}^{e}" for k, e in w]
    return " ".join(parts) if parts else "1"


def format_element(p: PcPresentation, e: Element) -> str:
    return format_word(p, collector.normal_word(p, e))


def serialize_presentation(p: PcPresentation) -> str:
    lines = [f"group {p.name}"]
    for g in p.generators:
        line = f"gen {g.name} order {g.relative_order}"
        if g.definition:
            line += f"  # {g.definition}"
        lines.append(line)
    for i in range(1, p.n + 1):
        if not p.is_trivial_power(i):
            lines.append(f"pow {p.names[i - 1]} = {format_word(p, p.power_tail[i])}")
    for j in range(1, p.n + 1):
        for i in range(1, j):
            if not p.is_trivial_conj(i, j):
                lines.append(
                    f"conj {p.names[i - 1]} ^ {p.names[j - 1]} = {format_word(p, p.conj_rhs[(i, j)])}"
                )
    return "\n".join(lines) + "\n"


def parse_word(p: PcPresentation, text: str) -> Word:
    toks = _tokens(text, 1)
    return _word_from_tokens(toks, p.index_of, 1, allow_negative=True)


# -- commutator expressions -------------------------------------------------
#
#   expr := term+                      (juxtaposition or '*' multiplies)
#   term := atom ('^' (INT | atom))*   (a^-1 inverse, a^b conjugate)
#   atom := NAME | '1' | '[' expr (',' expr)+ ']' | '(' expr ')'

_EXPR_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<int>-?\d+)|(?P<op>[\[\](),^*]))")


def _expr_tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _EXPR_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} in {text!r}", 1, pos + 1)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


def parse_expression(text: str) -> Any:
    """Parse a commutator expression into a small tuple tree.

    Nodes: ``("gen", name)``, ``("one",)``, ``("mul", [nodes])``,
    ``("pow", node, k)``, ``("conj", node, node)``, ``("comm", [nodes])``.
    """
    toks = _expr_tokens(text)
    pos = 0

    def peek() -> tuple[str, str, int] | None:
        return toks[pos] if pos < len(toks) else None

    def take(val: str | None = None) -> tuple[str, str, int]:
        nonlocal pos
        t = peek()
        if t is None or (val is not None and t[1] != val):
            where = t[2] if t else len(text) + 1
            raise ParseError(f"expected {val or 'token'} in {text!r}", 1, where)
        pos += 1
        return t

    def atom() -> Any:
        t = peek()
        if t is None:
            raise ParseError(f"unexpected end of {text!r}", 1, len(text) + 1)
        if t[0] == "name":
            take()
            return ("gen", t[1])
        if t[:2] == ("int", "1"):
            take()
            return ("one",)
        if t[1] == "(":
            take("(")
            e = expr()
            take(")")
            return e
        if t[1] == "[":
            take("[")
            items = [expr()]
            while peek() is not None and peek()[1] == ",":
                take(",")
                items.append(expr())
            take("]")
            if len(items) < 2:
                raise ParseError(f"commutator needs two entries in {text!r}", 1, t[2])
            return ("comm", items)
        raise ParseError(f"unexpected {t[1]!r} in {text!r}", 1, t[2])

    def term() -> Any:
        node = atom()
        while peek() is not None and peek()[1] == "^":
            take("^")
            t = peek()
            if t is not None and t[0] == "int":
                take()
                node = ("pow", node, int(t[1]))
            else:
                node = ("conj", node, atom())
        return node

    def expr() -> Any:
        items = [term()]
        while peek() is not None and peek()[1] not in (",", "]", ")"):
            if peek()[1] == "*":
                take("*")
            items.append(term())
        return items[0] if len(items) == 1 else ("mul", items)

    tree = expr()
    if peek() is not None:
        raise ParseError(f"trailing input in {text!r}", 1, peek()[2])
    return tree


def evaluate(p: PcPresentation, text: str, aliases: Mapping[str, str] | None = None) -> Element:
    """Evaluate a commutator expression to a normal form.

    Names resolve through ``aliases`` first (alias values are themselves
    expressions), then to presentation generators.
    """
    aliases = dict(aliases or {})
    cache: dict[str, Element] = {}

    def resolve(name: str, active: tuple[str, ...]) -> Element:
        if name in cache:
            return cache[name]
        if name in aliases:
            if name in active:
                raise ParseError(f"alias cycle through {name!r}")
            val = ev(parse_expression(aliases[name]), active + (name,))
        else:
            try:
                idx = p.index_of(name)
            except KeyError:
                raise ParseError(f"unknown name {name!r}") from None
            val = collector.collect(p, ((idx, 1),))
        cache[name] = val
        return val

    def ev(node: Any, active: tuple[str, ...]) -> Element:
        kind = node[0]
        if kind == "gen":
            return resolve(node[1], active)
        if kind == "one":
            return tuple([0] * p.n)
        if kind == "mul":
            return collector.product(p, [ev(c, active) for c in node[1]])
        if kind == "pow":
            return collector.power(p, ev(node[1], active), node[2])
        if kind == "conj":
            return collector.conjugate(p, ev(node[1], active), ev(node[2], active))
        if kind == "comm":
            return collector.left_normed_commutator(p, [ev(c, active) for c in node[1]])
        raise AssertionError(kind)

    return ev(parse_expression(text), ())


def dump_report(results: Iterable[Mapping[str, Any]]) -> str:
    """Claim report: a JSON array sorted by claim id."""
    keys = ("claim_id", "description", "status", "details", "elapsed_ms")
    rows = [{k: r[k] for k in keys} for r in results]
    rows.sort(key=lambda r: r["claim_id"])
    return json.dumps(rows, indent=2) + "\n"
