"""Generic extensions and the semantic forcing relation.

The extension universe collects the values of every ground-model name, plus
the ground model itself (witnessed by canonical check names) and the generic
filter as a set (witnessed by its canonical name).  Finite cumulative stages
are not closed under the check construction, so those witnesses live outside
the ground model; the closure gap is what the axiom checks report as unmet
preconditions.

A condition forces a formula when every generic extension whose filter
contains the condition satisfies the formula at the values of the given
names.  Over a finite partial order there are finitely many generic filters
(one per minimal element), so this relation is decidable and the fundamental
theorems become checkable claims.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .errors import ArityError, CapExceeded, PreconditionError, UnknownAxiom
from .forcing import ForcingNotion, GFilter, dense_below, generic_filters
from .formula import Formula
from .hfset import HSet, is_transitive, setunion
from .names import (
    NameContext,
    check_name,
    generic_name,
    pow_name,
    sep_name,
    union_name,
    val,
)
from .report import CheckReport, Status
from .semantics import Model, sats

__all__ = [
    "Extension",
    "build_extension",
    "context_for",
    "generic_contexts",
    "extension_of",
    "forces",
    "truth_lemma_check",
    "density_check",
    "verify_axiom_in_extension",
    "DEFAULT_MODEL_CAP",
    "EXTENSION_AXIOM_IDS",
]

DEFAULT_MODEL_CAP = 70_000

EXTENSION_AXIOM_IDS = (
    "extensionality",
    "foundation",
    "union",
    "pairing",
    "separation",
    "powerset",
)


@dataclass(frozen=True)
class Extension:
    """A built generic extension with one stored name witness per element."""

    ctx: NameContext
    universe: tuple[HSet, ...]
    name_witness: dict[HSet, HSet]
    new_elements: tuple[HSet, ...]
    model: Model

    def __contains__(self, x: object) -> bool:
        return x in self.model

    def __len__(self) -> int:
        return len(self.universe)

    def to_json(self, ground_rank: Optional[int] = None) -> dict:
        gen = sorted(self.ctx.notion.label_of(p) for p in self.ctx.generic.members)
        return {
            "ground_rank": ground_rank,
            "poset": self.ctx.notion.to_json(),
            "generic": gen,
            "universe_size": len(self.universe),
            "new_elements": [x.to_json() for x in self.new_elements],
        }


def build_extension(ctx: NameContext, model_cap: int = DEFAULT_MODEL_CAP) -> Extension:
    """Enumerate the extension and record a witness name for each element.

    Witnesses prefer the canonically first ground-model name; elements of the
    ground model not reached that way get their check name, and the filter
    gets its canonical name.
    """
    ground = ctx.model
    if len(ground) > model_cap:
        raise CapExceeded(
            "model-too-large",
            f"ground model has {len(ground)} elements, exceeding the cap of {model_cap}",
        )
    witness: dict[HSet, HSet] = {}
    for tau in ground.universe:
        v = val(ctx, tau)
        if v not in witness:
            witness[v] = tau
    for x in ground.universe:
        if x not in witness:
            witness[x] = check_name(ctx, x)
    g_set = ctx.generic.as_hset()
    if g_set not in witness:
        witness[g_set] = generic_name(ctx)
    universe = tuple(sorted(witness))
    if not is_transitive(universe):
        raise RuntimeError("extension universe failed transitivity verification")
    model = Model.from_sets(universe)
    new = tuple(x for x in universe if x not in ground)
    return Extension(ctx, universe, witness, new, model)


@lru_cache(maxsize=None)
def context_for(model: Model, notion: ForcingNotion, generic: GFilter) -> NameContext:
    """Interned context, so value caches accumulate across calls."""
    return NameContext(model, notion, generic)


@lru_cache(maxsize=None)
def generic_contexts(model: Model, notion: ForcingNotion) -> tuple[NameContext, ...]:
    return tuple(context_for(model, notion, g) for g in generic_filters(notion))


@lru_cache(maxsize=None)
def extension_of(ctx: NameContext) -> Extension:
    return build_extension(ctx)


@lru_cache(maxsize=None)
def forces(
    model: Model,
    notion: ForcingNotion,
    p: HSet,
    phi: Formula,
    names: tuple[HSet, ...],
) -> bool:
    """Semantic forcing: every generic extension whose filter contains p
    satisfies phi at the values of the names."""
    if p not in notion:
        raise PreconditionError(f"{p!r} is not a condition")
    if phi.arity() > len(names):
        raise ArityError(
            f"formula arity {phi.arity()} exceeds the {len(names)} supplied names"
        )
    for tau in names:
        if tau not in model:
            raise PreconditionError("forcing queries require ground-model names")
    for ctx in generic_contexts(model, notion):
        if p not in ctx.generic.members:
            continue
        ext = extension_of(ctx)
        env = tuple(val(ctx, tau) for tau in names)
        if not sats(ext.model, phi, env):
            return False
    return True


def truth_lemma_check(
    ctx: NameContext, phi: Formula, names: Sequence[HSet]
) -> CheckReport:
    """Satisfaction in the extension iff some condition in the filter forces it."""
    names = tuple(names)
    ext = extension_of(ctx)
    env = tuple(val(ctx, tau) for tau in names)
    holds_in_ext = sats(ext.model, phi, env)
    forced = any(
        forces(ctx.model, ctx.notion, p, phi, names)
        for p in sorted(ctx.generic.members)
    )
    status = Status.HOLDS if holds_in_ext == forced else Status.VIOLATED
    note = f"extension: {holds_in_ext}, exists forcing condition: {forced}"
    return CheckReport("truth-lemma", status, None, 1, note=note)


def density_check(
    model: Model,
    notion: ForcingNotion,
    p: HSet,
    phi: Formula,
    names: Sequence[HSet],
) -> CheckReport:
    """Forcing at p iff the conditions forcing phi are dense below p."""
    names = tuple(names)
    lhs = forces(model, notion, p, phi, names)
    forcing_set = [q for q in notion.elements if forces(model, notion, q, phi, names)]
    rhs = dense_below(notion, forcing_set, p)
    status = Status.HOLDS if lhs == rhs else Status.VIOLATED
    note = f"forces(p): {lhs}, dense below p: {rhs}"
    return CheckReport("density", status, None, 1, note=note)


def verify_axiom_in_extension(
    ext: Extension,
    axiom_id: str,
    phi: Optional[Formula] = None,
    sigma: Optional[HSet] = None,
) -> CheckReport:
    """Check one axiom in the built extension.

    Extensionality and Foundation are checked directly on the universe.  The
    closure-style axioms exhibit witness sets by scanning the full extension;
    when the witness is absent because the ground model lacks the required
    name, the report says PRECONDITION_UNMET, never VIOLATED.
    """
    if axiom_id == "extensionality":
        return _ext_extensionality(ext)
    if axiom_id == "foundation":
        return _ext_foundation(ext)
    if axiom_id == "union":
        return _ext_union(ext)
    if axiom_id == "pairing":
        return _ext_pairing(ext)
    if axiom_id == "separation":
        if phi is None:
            raise UnknownAxiom("separation requires a formula")
        return _ext_separation(ext, phi, sigma)
    if axiom_id == "powerset":
        return _ext_powerset(ext)
    raise UnknownAxiom(f"unknown axiom id {axiom_id!r}")


def _ext_extensionality(ext: Extension) -> CheckReport:
    xs = ext.universe
    n = len(xs)
    for i in range(n):
        for j in range(i + 1, n):
            x, y = xs[i], xs[j]
            if all((z in x) == (z in y) for z in xs):
                return CheckReport(
                    "extensionality", Status.VIOLATED, HSet((x, y)), n * (n - 1) // 2
                )
    return CheckReport("extensionality", Status.HOLDS, None, n * (n - 1) // 2)


def _ext_foundation(ext: Extension) -> CheckReport:
    for x in ext.universe:
        inside = [y for y in x.elements if y in ext]
        if not inside:
            continue
        if not any(all(z not in ext or z not in x for z in y.elements) for y in inside):
            return CheckReport("foundation", Status.VIOLATED, x, len(ext.universe))
    return CheckReport("foundation", Status.HOLDS, None, len(ext.universe))


def _ext_union(ext: Extension) -> CheckReport:
    unmet = None
    for a in ext.universe:
        u = setunion(a)
        if u in ext:
            # value-level witness chain must agree when the name is available
            tau = ext.name_witness[a]
            if tau in ext.ctx.model and val(ext.ctx, union_name(ext.ctx, tau)) is not u:
                return CheckReport("union", Status.VIOLATED, a, len(ext.universe))
        elif unmet is None:
            unmet = a
    if unmet is not None:
        return CheckReport(
            "union",
            Status.PRECONDITION_UNMET,
            unmet,
            len(ext.universe),
            note="union escapes the extension; ground model lacks the name",
        )
    return CheckReport("union", Status.HOLDS, None, len(ext.universe))


def _ext_pairing(ext: Extension) -> CheckReport:
    unmet = None
    checked = 0
    for x in ext.universe:
        for y in ext.universe:
            checked += 1
            z = HSet((x, y))
            if z in ext:
                continue
            # the pair name {(name(x), top), (name(y), top)} always values to
            # {x, y}; its absence from the extension means it is not in the
            # ground model, which is a closure failure of the ground model
            if unmet is None:
                unmet = z
    if unmet is not None:
        return CheckReport(
            "pairing",
            Status.PRECONDITION_UNMET,
            unmet,
            checked,
            note="pair name escapes the ground model at top rank",
        )
    return CheckReport("pairing", Status.HOLDS, None, checked)


def _ext_separation(ext: Extension, phi: Formula, sigma: Optional[HSet]) -> CheckReport:
    if phi.arity() > 2:
        raise ArityError(f"separation admits arity <= 2, got {phi.arity()}")
    ctx = ext.ctx
    if sigma is None:
        sigma = HSet()
    w = val(ctx, sigma)
    checked = 0
    unmet = None
    for pi in ctx.model.universe:
        checked += 1
        n = sep_name(ctx, pi, sigma, phi)
        c = val(ctx, pi)
        expected = HSet(x for x in c.elements if sats(ext.model, phi, (x, w)))
        got = val(ctx, n)
        if got is not expected:
            return CheckReport("separation", Status.VIOLATED, pi, checked)
        if expected not in ext and unmet is None:
            unmet = expected
    if unmet is not None:
        return CheckReport(
            "separation",
            Status.PRECONDITION_UNMET,
            unmet,
            checked,
            note="carved set has no ground-model name",
        )
    return CheckReport("separation", Status.HOLDS, None, checked)


def _ext_powerset(ext: Extension) -> CheckReport:
    ctx = ext.ctx
    unmet = None
    for a in ext.universe:
        els = a.elements
        inside = []
        for mask in range(1 << len(els)):
            s = HSet(els[i] for i in range(len(els)) if mask >> i & 1)
            if s in ext:
                inside.append(s)
        target = HSet(inside)
        if target in ext:
            continue
        if unmet is None:
            pi = ext.name_witness[a]
            if pi not in ctx.model:
                reason = "witness name escapes the ground model"
            elif pow_name(ctx, pi) not in ctx.model:
                reason = "power name escapes the ground model"
            else:
                reason = "carved power name escapes the ground model"
            unmet = (target, reason)
    if unmet is not None:
        return CheckReport(
            "powerset",
            Status.PRECONDITION_UNMET,
            unmet[0],
            len(ext.universe),
            note=unmet[1],
        )
    return CheckReport("powerset", Status.HOLDS, None, len(ext.universe))
