"""Well-founded recursion over finite set relations.

Finite well-foundedness is acyclicity, so the check is cycle detection.  The
recursion functional receives only the map restricted to the direct
predecessors of its argument; reading outside that domain raises rather than
defaulting, so recursion bugs surface immediately.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

from .errors import NotWellFounded, RecursionDomainError
from .hfset import HRelation, HSet, as_pair

__all__ = ["Functional", "trancl", "is_wf", "edrel", "restrict", "wfrec"]

Functional = Callable[[HSet, Mapping[HSet, HSet]], HSet]


def trancl(rel: HRelation) -> HRelation:
    """Transitive closure: the least transitive relation including rel."""
    nodes = sorted(rel.field())
    succ = {x: set(rel.successors(x)) for x in nodes}
    for k in nodes:
        for x in nodes:
            if k in succ[x]:
                succ[x] |= succ[k]
    return HRelation.of((x, y) for x in nodes for y in succ[x])


def is_wf(rel: HRelation) -> bool:
    """Well-founded over a finite field: no cycle."""
    succ = {}
    for a, b in rel.pairs:
        succ.setdefault(a, []).append(b)
    state: dict[HSet, int] = {}  # 1 = on stack, 2 = done
    for start in rel.field():
        if state.get(start):
            continue
        stack = [(start, iter(succ.get(start, ())))]
        state[start] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                mark = state.get(nxt)
                if mark == 1:
                    return False
                if mark is None:
                    state[nxt] = 1
                    stack.append((nxt, iter(succ.get(nxt, ()))))
                    advanced = True
                    break
            if not advanced:
                state[node] = 2
                stack.pop()
    return True


def edrel(a: HSet) -> HRelation:
    """The appears-as-a-name relation on a: x related to y when some pair
    (x, p) is an element of y, restricted to a's elements."""
    members = frozenset(a.elements)
    pairs = set()
    for y in a.elements:
        for el in y.elements:
            pr = as_pair(el)
            if pr is not None and pr[0] in members:
                pairs.add((pr[0], y))
    return HRelation(frozenset(pairs))


def restrict(rel: HRelation, keep: Iterable[HSet]) -> HRelation:
    """rel intersected with keep x keep."""
    members = frozenset(keep)
    return HRelation(frozenset((a, b) for a, b in rel.pairs if a in members and b in members))


class _Guarded(Mapping):
    """Read-only view of the values on the predecessors of the current argument."""

    __slots__ = ("_data", "_owner")

    def __init__(self, data: dict, owner: HSet):
        self._data = data
        self._owner = owner

    def __getitem__(self, key: HSet) -> HSet:
        try:
            return self._data[key]
        except KeyError:
            raise RecursionDomainError(
                f"functional consulted {key!r}, which is not a predecessor of {self._owner!r}"
            ) from None

    def __iter__(self):
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)


def wfrec(rel: HRelation, a: HSet, h: Functional) -> HSet:
    """Value at a of the recursion F(x) = h(x, F restricted to the
    predecessors of x), computed by memoized descent."""
    if not is_wf(rel):
        raise NotWellFounded("relation has a cycle")
    pred_of = {}
    for x, y in rel.pairs:
        pred_of.setdefault(y, []).append(x)
    memo: dict[HSet, HSet] = {}
    stack: list[tuple[HSet, bool]] = [(a, False)]
    while stack:
        node, expanded = stack.pop()
        if node in memo:
            continue
        preds = sorted(pred_of.get(node, ()))
        if expanded:
            memo[node] = h(node, _Guarded({p: memo[p] for p in preds}, node))
        else:
            stack.append((node, True))
            stack.extend((p, False) for p in preds if p not in memo)
    return memo[a]
