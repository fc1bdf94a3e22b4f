"""Names and their values under a generic filter.

A name is any HSet; its value under G collects the values of the first
components of those member pairs whose condition landed in G.  The value map
is computed by well-founded recursion over the appears-as-a-name relation on
the transitive closure of the argument, which is exactly what lets values be
taken of names that live outside the ground model.

The ground model's closure properties are diagnosed, not enforced: finite
cumulative stages are not closed under the name constructions near their top
rank, and the checks downstream report that as an unmet precondition rather
than refusing to run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import ArityError, PreconditionError
from .forcing import ForcingNotion, GFilter, is_filter
from .formula import And, Formula, Member
from .hfset import HSet, as_pair, cartprod, domain, eclose, opair, setunion
from .semantics import Model
from .wfrec import edrel, wfrec

__all__ = [
    "NameContext",
    "val",
    "check_name",
    "generic_name",
    "union_name",
    "sep_name",
    "pow_name",
    "closure_report",
    "DEFAULT_POW_NAME_CAP",
]

DEFAULT_POW_NAME_CAP = 2**20


@dataclass(frozen=True)
class NameContext:
    """A transitive ground model, a forcing notion, and a generic filter on it."""

    model: Model
    notion: ForcingNotion
    generic: GFilter
    _val_cache: dict = field(default_factory=dict, compare=False, repr=False)
    _check_cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.model.transitive:
            raise PreconditionError("ground model must be transitive")
        if not is_filter(self.notion, self.generic.members):
            raise PreconditionError("generic filter is not a filter on the notion")


def val(ctx: NameContext, tau: HSet) -> HSet:
    """Value of the name tau under the context's generic filter.

    Recursion over the appears-as-a-name relation restricted to the
    transitive closure of {tau}; satisfies the one-step unfolding
    val(G, x) = {val(G, t) : some pair (t, p) in x with p in G}.
    """
    cache = ctx._val_cache
    hit = cache.get(tau)
    if hit is not None:
        return hit
    conditions = ctx.generic.members
    closure = eclose(HSet((tau,)))
    rel = edrel(closure)

    def hv(y: HSet, partial: Mapping[HSet, HSet]) -> HSet:
        out = []
        for el in y.elements:
            pr = as_pair(el)
            if pr is not None and pr[1] in conditions:
                out.append(partial[pr[0]])
        return HSet(out)

    result = wfrec(rel, tau, hv)
    cache[tau] = result
    return result


def check_name(ctx: NameContext, x: HSet) -> HSet:
    """The canonical name for x: pairs every member's name with the top condition.

    Its value is x again under any filter, since the top condition belongs to
    every filter.
    """
    cache = ctx._check_cache
    hit = cache.get(x)
    if hit is not None:
        return hit
    one = ctx.notion.top
    result = HSet(opair(check_name(ctx, y), one) for y in x.elements)
    cache[x] = result
    return result


def generic_name(ctx: NameContext) -> HSet:
    """The canonical name whose value is the generic filter itself."""
    return HSet(opair(check_name(ctx, p), p) for p in ctx.notion.elements)


def union_name(ctx: NameContext, tau: HSet) -> HSet:
    """A name for the union of tau's value, built from tau's structure.

    Collects pairs (theta, p) from the grid domain(union(domain(tau))) x P
    whose condition simultaneously strengthens some condition attached to a
    middle name sigma and some condition attaching theta inside sigma; a
    filter's downward compatibility makes the value come out exactly as the
    union.
    """
    notion = ctx.notion
    inner_domain = domain(setunion(domain(tau)))
    chosen = []
    for theta in inner_domain.elements:
        for p in notion.elements:
            if _union_body(notion, tau, theta, p):
                chosen.append(opair(theta, p))
    return HSet(chosen)


def _union_body(notion: ForcingNotion, tau: HSet, theta: HSet, p: HSet) -> bool:
    for el in tau.elements:
        pr = as_pair(el)
        if pr is None:
            continue
        sigma, q = pr
        if q not in notion or not notion.le(p, q):
            continue
        for el2 in sigma.elements:
            pr2 = as_pair(el2)
            if pr2 is None or pr2[0] is not theta:
                continue
            r = pr2[1]
            if r in notion and notion.le(p, r):
                return True
    return False


def sep_name(ctx: NameContext, pi: HSet, sigma: HSet, phi: Formula) -> HSet:
    """A name for the subset of pi's value carved out by phi with parameter sigma.

    Keeps the grid pairs (theta, p) from domain(pi) x P where p forces
    "theta's value lies in pi's value and phi holds of it"; the environment
    layout is [theta, sigma, pi], so inside the forced formula index 0 is the
    candidate, index 1 the parameter, and index 2 the ambient set.
    """
    if phi.arity() > 2:
        raise ArityError(f"separation admits arity <= 2, got {phi.arity()}")
    if pi not in ctx.model or sigma not in ctx.model:
        raise PreconditionError("sep_name arguments must be ground-model names")
    from .extension import forces

    psi = And(Member(0, 2), phi)
    chosen = []
    for theta in domain(pi).elements:
        for p in ctx.notion.elements:
            if forces(ctx.model, ctx.notion, p, psi, (theta, sigma, pi)):
                chosen.append(opair(theta, p))
    return HSet(chosen)


def pow_name(ctx: NameContext, pi: HSet, cap: int = DEFAULT_POW_NAME_CAP) -> HSet:
    """A name whose value covers every ground-representable subset of pi's value.

    Pairs each ground-model subset of the grid domain(pi) x P with the top
    condition.  The candidate count is 2^(grid size); exceeding the cap is a
    hard error rather than silent truncation.
    """
    if pi not in ctx.model:
        raise PreconditionError("pow_name argument must be a ground-model name")
    from .errors import CapExceeded

    grid = cartprod(domain(pi), ctx.notion.carrier_as_hset())
    cells = grid.elements
    if 1 << len(cells) > cap:
        raise CapExceeded(
            "pow-name-too-large",
            f"2^{len(cells)} candidate subsets exceed the cap of {cap}",
        )
    one = ctx.notion.top
    chosen = []
    for mask in range(1 << len(cells)):
        chi = HSet(cells[i] for i in range(len(cells)) if mask >> i & 1)
        if chi in ctx.model:
            chosen.append(opair(chi, one))
    return HSet(chosen)


def closure_report(ctx: NameContext) -> dict[str, bool]:
    """Which pieces of the forcing notion the ground model actually contains.

    Finite stages routinely fail these near the top rank; callers report the
    gaps as unmet preconditions instead of refusing to proceed.
    """
    m = ctx.model
    notion = ctx.notion
    return {
        "conditions_in_model": all(p in m for p in notion.elements),
        "carrier_in_model": notion.carrier_as_hset() in m,
        "order_in_model": notion.le_pairs_as_hset() in m,
        "top_in_model": notion.top in m,
        "generic_in_model": ctx.generic.as_hset() in m,
    }
