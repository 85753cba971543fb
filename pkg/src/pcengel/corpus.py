"""Built-in presentations and the executable claim suite.

Presentations live in ``data/*.pc``; ``PCENGEL_CORPUS_DIR`` names a
directory searched first.  The claim suite is ``data/claims.json``: every
claim names one or more presentations, a check kind and its parameters,
with words written in the expression language of :mod:`pcengel.textio`
using the per-presentation aliases stored alongside the claims.
"""

from __future__ import annotations

import json
import os
import random
import time
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from . import collector as col
from . import engel, series, subgroups
from .consistency import check_consistency, group_order
from .model import CommutativityGraph, Element, PcPresentation, identity
from .oracle import oracle_multiply
from .textio import evaluate, format_element, parse_presentation, serialize_presentation

__all__ = [
    "NAMES",
    "UnknownPresentationError",
    "load_named",
    "corpus_file",
    "clear_cache",
    "Claim",
    "ClaimResult",
    "claim_suite",
    "aliases_for",
    "run_claim",
]

NAMES = (
    "F_2_13",
    "G_BETA",
    "G_GAMMA",
    "COMPLETE_C2_4",
    "FIVE_EDGE_32",
    "FOUR_EDGE_64",
    "FOUR_EDGE_256",
)

_cache: dict[tuple[str, float], PcPresentation] = {}


class UnknownPresentationError(LookupError):
    pass


def _data_dir() -> Path:
    return Path(str(resources.files("pcengel") / "data"))


def corpus_file(name: str) -> Path:
    override = os.environ.get("PCENGEL_CORPUS_DIR")
    if override:
        cand = Path(override) / f"{name}.pc"
        if cand.is_file():
            return cand
    cand = _data_dir() / f"{name}.pc"
    if name in NAMES and cand.is_file():
        return cand
    raise UnknownPresentationError(f"unknown corpus presentation {name!r}; known: {', '.join(NAMES)}")


def clear_cache() -> None:
    _cache.clear()


def load_named(name: str, *, check: bool = True) -> PcPresentation:
    """Parse a corpus presentation, verifying consistency once per file version."""
    path = corpus_file(name)
    key = (str(path.resolve()), path.stat().st_mtime)
    p = _cache.get(key)
    if p is None:
        p = parse_presentation(path.read_text())
        if check:
            report = check_consistency(p)
            if not report.consistent:
                from .consistency import InconsistentPresentation

                f = report.failures[0]
                raise InconsistentPresentation(
                    f"{name} is inconsistent: {len(report.failures)} failing overlaps, first {f.kind} at {f.indices}"
                )
        _cache[key] = p
    return p


@dataclass(frozen=True)
class Claim:
    claim_id: str
    description: str
    targets: tuple[str, ...]
    kind: str
    params: Mapping[str, Any]

    @property
    def target(self) -> str:
        return self.targets[0]


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    description: str
    status: str  # "pass" | "fail" | "skipped"
    details: str
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "claim_id": self.claim_id,
            "description": self.description,
            "status": self.status,
            "details": self.details,
            "elapsed_ms": self.elapsed_ms,
        }


def _suite_data() -> dict[str, Any]:
    return json.loads((_data_dir() / "claims.json").read_text())


def aliases_for(name: str) -> dict[str, str]:
    return dict(_suite_data()["aliases"].get(name, {}))


def claim_suite() -> list[Claim]:
    out = []
    for c in _suite_data()["claims"]:
        t = c["target"]
        targets = (t,) if isinstance(t, str) else tuple(t)
        out.append(Claim(c["id"], c["description"], targets, c["kind"], c["params"]))
    return out


# --- evaluation helpers --------------------------------------------------------


@dataclass
class _Ctx:
    p: PcPresentation
    aliases: dict[str, str]
    seed: int
    max_enumeration: int
    max_orbit: int
    notes: list[str] = field(default_factory=list)
    bad: list[str] = field(default_factory=list)

    def ev(self, text: str) -> Element:
        return evaluate(self.p, text, self.aliases)

    def fmt(self, e: Element) -> str:
        return format_element(self.p, e)

    def subgroup(self, spec: Any) -> subgroups.InducedPcs:
        if spec == "group":
            return subgroups.full_group(self.p)
        if isinstance(spec, Mapping):
            return subgroups.normal_closure(self.p, [self.ev(w) for w in spec["normal_closure"]])
        return subgroups.induced_pcs(self.p, [self.ev(w) for w in spec])


def _context(name: str, seed: int, max_enumeration: int, max_orbit: int) -> _Ctx:
    return _Ctx(load_named(name), aliases_for(name), seed, max_enumeration, max_orbit)


def _check_equalities(ctx: _Ctx, pairs: Sequence[Sequence[str]]) -> None:
    for lhs, rhs in pairs:
        a, b = ctx.ev(lhs), ctx.ev(rhs)
        if a == b:
            ctx.notes.append(f"{lhs} = {rhs}")
        else:
            ctx.bad.append(f"{lhs} = {ctx.fmt(a)} but {rhs} = {ctx.fmt(b)}")


def _kind_order(ctx: _Ctx, params: Mapping[str, Any]) -> None:
    n = group_order(ctx.p)
    if n == params["order"]:
        ctx.notes.append(f"{ctx.p.name} consistent, order {n}")
    else:
        ctx.bad.append(f"{ctx.p.name} has order {n}, expected {params['order']}")


def _kind_class_bound(ctx: _Ctx, params: Mapping[str, Any]) -> None:
    within = ctx.subgroup(params["within"]) if "within" in params else None
    chain = series.lower_central_series(ctx.p, within)
    if not chain.reaches_trivial:
        ctx.bad.append(f"lower central series stabilises at order {chain.orders[-1]}")
        return
    c = len(chain.terms) - 1
    msg = f"class {c} (bound {params['max_class']}), term orders {chain.orders}"
    (ctx.notes if c <= params["max_class"] else ctx.bad).append(msg)


def _kind_identity(ctx: _Ctx, params: Mapping[str, Any]) -> None:
    _check_equalities(ctx, params["equalities"])


def _kind_hypercentre(ctx: _Ctx, params: Mapping[str, Any]) -> None:
    _check_equalities(ctx, params.get("equalities", ()))
    full = subgroups.full_group(ctx.p)
    for m in params["members"]:
        g, k = ctx.ev(m["word"]), m["k"]
        ok = series.centralizes(ctx.p, g, full) if k == 1 else series.in_hypercentre(ctx.p, g, k)
        (ctx.notes if ok else ctx.bad).append(f"{m['word']} {'in' if ok else 'not in'} Z_{k}")


def _member_elements(ctx: _Ctx, m: Mapping[str, Any]) -> tuple[str, list[Element]]:
    if "word" in m:
        return m["word"], [ctx.ev(m["word"])]
    spec = m["lower_central"]
    S = subgroups.induced_pcs(ctx.p, [ctx.ev(w) for w in spec["within"]])
    term = series.lower_central_series(ctx.p, S, max_terms=spec["term"]).term(spec["term"])
    label = f"gamma_{spec['term']}<{', '.join(spec['within'])}> ({subgroups.subgroup_order(term)} elements)"
    return label, term.elements()


def _kind_central(ctx: _Ctx, params: Mapping[str, Any]) -> None:
    _check_equalities(ctx, params.get("equalities", ()))
    for m in params["members"]:
        label, elems = _member_elements(ctx, m)
        target = m["centralizes"]
        if isinstance(target, Mapping) and "elements" in target:
            others = [ctx.ev(w) for w in target["elements"]]
            what = ", ".join(target["elements"])
            one = identity(ctx.p)
            ok = all(col.commutator(ctx.p, g, h) == one for g in elems for h in others)
        else:
            S = ctx.subgroup(target)
            what = f"subgroup of order {subgroups.subgroup_order(S)}"
            ok = all(series.centralizes(ctx.p, g, S) for g in elems)
        (ctx.notes if ok else ctx.bad).append(f"{label} {'commutes' if ok else 'fails to commute'} with {what}")


def _kind_series_trivial(ctx: _Ctx, params: Mapping[str, Any]) -> None:
    S = subgroups.induced_pcs(ctx.p, [ctx.ev(w) for w in params["within"]])
    k = params["term"]
    chain = series.lower_central_series(ctx.p, S, max_terms=k)
    t = chain.term(k) if k <= len(chain.terms) or chain.reaches_trivial else None
    orders = chain.orders
    if t is not None and t.is_trivial():
        ctx.notes.append(f"gamma_{k} trivial, term orders {orders}")
    else:
        ctx.bad.append(f"gamma_{k} nontrivial, term orders {orders}")


def _graph(ctx: _Ctx, spec: Mapping[str, Any]) -> CommutativityGraph:
    idx = {}
    for v in spec["vertices"]:
        e = ctx.ev(v)
        # graph vertices must be generators
        lead = [i + 1 for i, x in enumerate(e) if x]
        if len(lead) != 1 or e[lead[0] - 1] != 1:
            raise ValueError(f"graph vertex {v!r} is not a presentation generator")
        idx[v] = lead[0]
    return CommutativityGraph.from_pairs([idx[v] for v in spec["vertices"]], [(idx[a], idx[b]) for a, b in spec["edges"]])


def _sandwich_case(ctx: _Ctx, case: Mapping[str, Any]) -> None:
    if "order" in case:
        _kind_order(ctx, case)
    gens = [ctx.ev(w) for w in case["generators"]]
    mode = case.get("mode", "exhaustive")
    rep = engel.sandwich_verify(
        ctx.p, gens, mode, count=case.get("count", 1000), seed=case.get("seed", ctx.seed), size_limit=ctx.max_orbit
    )
    if rep.passed:
        ctx.notes.append(f"{ctx.p.name} sandwich on {{{', '.join(case['generators'])}}}: {rep.checked} pairs [{rep.mode}]")
    else:
        x, y, z = rep.counterexamples[0]
        ctx.bad.append(
            f"{ctx.p.name}: <{ctx.fmt(x)}, {ctx.fmt(z)}> has class > 2 (conjugate of {ctx.fmt(y)}) [{rep.mode}]"
        )
    if "graph" in case:
        G = _graph(ctx, case["graph"])
        mism = engel.graph_mismatches(ctx.p, G)
        if mism:
            ctx.bad.append(f"{ctx.p.name} commutativity graph differs at {[(ctx.p.names[a - 1], ctx.p.names[b - 1]) for a, b in mism]}")
        else:
            ctx.notes.append(f"{ctx.p.name} commutativity graph matches {len(G.edges)} edges")


def _engel_case(ctx: _Ctx, case: Mapping[str, Any]) -> None:
    mode = case.get("mode", "exhaustive")
    for w in case["elements"]:
        rep = engel.engel3_verify(
            ctx.p, ctx.ev(w), mode, count=case.get("count", 1000), seed=case.get("seed", ctx.seed), size_limit=ctx.max_orbit
        )
        if rep.passed:
            ctx.notes.append(f"{ctx.p.name} {w}: {rep.checked} conjugates [{rep.mode}]")
        else:
            ctx.bad.append(f"{ctx.p.name} {w}: [g,{w},{w},{w}] != 1 for conjugate {ctx.fmt(rep.counterexamples[0])}")


def _kind_quotient(ctx: _Ctx, params: Mapping[str, Any]) -> None:
    p = ctx.p
    N = subgroups.normal_closure(p, [ctx.ev(w) for w in params["normal_generators"]])
    missing = [w for w in params.get("contains", ()) if not subgroups.contains(p, N, ctx.ev(w))]
    if missing:
        ctx.bad.append(f"normal closure misses {missing}")
    else:
        ctx.notes.append(f"normal closure has order {subgroups.subgroup_order(N)} and contains {len(params.get('contains', ()))} listed elements")
    Q, _ = subgroups.quotient(p, N)
    c = series.nilpotency_class(Q)
    (ctx.notes if c <= params["max_class"] else ctx.bad).append(f"quotient of order {group_order(Q)} has class {c}")
    e = series.exponent(Q, "exhaustive", max_enumeration=ctx.max_enumeration)
    ok = params["exponent_divides"] % e == 0
    (ctx.notes if ok else ctx.bad).append(f"quotient exponent {e}")


def _kind_properties(ctx_factory: Callable[[str], _Ctx], claim: Claim, seed: int) -> tuple[list[str], list[str]]:
    notes: list[str] = []
    bad: list[str] = []
    samples = claim.params.get("samples", 40)
    for name in claim.targets:
        ctx = ctx_factory(name)
        p = ctx.p
        rng = random.Random(f"{seed}:{name}")

        def rnd() -> Element:
            return series.random_element(p, rng)

        order = group_order(p)
        fails = []
        for _ in range(samples):
            a, b, c = rnd(), rnd(), rnd()
            if oracle_multiply(p, a, b) != col.multiply(p, a, b):
                fails.append(f"oracle mismatch {a} * {b}")
            if col.multiply(p, col.multiply(p, a, b), c) != col.multiply(p, a, col.multiply(p, b, c)):
                fails.append(f"associativity fails at {a}, {b}, {c}")
            if col.multiply(p, a, col.inverse(p, a)) != identity(p):
                fails.append(f"inverse fails at {a}")
        for _ in range(max(1, samples // 10)):
            S = subgroups.induced_pcs(p, [rnd() for _ in range(rng.randint(1, 2))])
            if order % subgroups.subgroup_order(S):
                fails.append("subgroup order does not divide group order")
            g = rnd()
            if order % series.element_order(p, g):
                fails.append(f"element order of {g} does not divide {order}")
        if p.n <= 20:
            for chain in (series.lower_central_series(p), series.derived_series(p)):
                for upper, lower in zip(chain.terms, chain.terms[1:]):
                    if not all(subgroups.contains(p, upper, m) for m in lower.elements()):
                        fails.append(f"{chain.kind} series terms are not nested")
        if parse_presentation(serialize_presentation(p)) != p:
            fails.append("serialize/parse round-trip changed the presentation")
        if fails:
            bad.append(f"{name}: {fails[0]} ({len(fails)} problems)")
        else:
            notes.append(f"{name}: {samples} samples ok")
    notes.insert(0, f"seed {seed}")
    return notes, bad


_SINGLE = {
    "order": _kind_order,
    "consistency": _kind_order,
    "class-bound": _kind_class_bound,
    "identity": _kind_identity,
    "hypercentre-membership": _kind_hypercentre,
    "central-membership": _kind_central,
    "series-trivial": _kind_series_trivial,
    "quotient-class-exponent": _kind_quotient,
}


def run_claim(
    c: Claim,
    *,
    seed: int | None = None,
    max_enumeration: int = 2**22,
    max_orbit: int = engel.DEFAULT_ORBIT_LIMIT,
    timing: bool = True,
) -> ClaimResult:
    """Run one claim.  Failures, including unloadable presentations, are results."""
    seed = c.params.get("seed", 0) if seed is None else seed

    def factory(name: str) -> _Ctx:
        return _context(name, seed, max_enumeration, max_orbit)

    start = time.perf_counter()
    try:
        if c.kind == "properties":
            notes, bad = _kind_properties(factory, c, seed)
        else:
            notes, bad = [], []
            cases = c.params.get("cases")
            if cases is None:
                cases = [dict(c.params, target=c.target)]
            for case in cases:
                ctx = factory(case["target"])
                if c.kind == "sandwich":
                    _sandwich_case(ctx, case)
                elif c.kind == "engel3":
                    _engel_case(ctx, case)
                elif c.kind in _SINGLE:
                    _SINGLE[c.kind](ctx, case)
                else:
                    raise ValueError(f"unknown claim kind {c.kind!r}")
                notes += ctx.notes
                bad += ctx.bad
        status = "fail" if bad else "pass"
        details = "; ".join(bad or notes)
    except (ValueError, LookupError, RuntimeError) as exc:
        status, details = "fail", f"{type(exc).__name__}: {exc}"
    elapsed = round((time.perf_counter() - start) * 1000, 1) if timing else 0.0
    return ClaimResult(c.claim_id, c.description, status, details, elapsed)
