"""Canonical hereditarily finite sets.

Every value is interned in canonical form: children are duplicate-free and
sorted by a fixed total order (recursive lexicographic order on the child
sequences), so structural equality coincides with object identity and
extensional equality.  All values are immutable and safe to share across
threads; the interning table relies on CPython's atomic dict operations.

Ordered pairs are Kuratowski sets {{x},{x,y}} rather than a native product
type, because name constructions manipulate pairs as sets inside the ground
model.  Naturals embed as von Neumann ordinals (0 = empty set, n+1 = n + {n}).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .errors import CapExceeded, NotAPair

__all__ = [
    "HSet",
    "EMPTY",
    "HRelation",
    "DEFAULT_ELEMENT_CAP",
    "canon",
    "mem",
    "rank",
    "v_stage",
    "eclose",
    "opair",
    "fst",
    "snd",
    "as_pair",
    "domain",
    "cartprod",
    "setunion",
    "is_transitive",
    "ordinal",
]

DEFAULT_ELEMENT_CAP = 70_000


class HSet:
    """A hereditarily finite set in canonical form.

    Construct with an iterable of existing HSet values; duplicates collapse
    and children are stored sorted.  Instances are interned, so equality is
    identity and the cached hash never changes.
    """

    __slots__ = ("elements", "_hash", "_rank")

    elements: tuple["HSet", ...]

    _table: dict = {}

    def __new__(cls, elements: Iterable["HSet"] = ()) -> "HSet":
        elems = tuple(elements)
        for e in elems:
            if not isinstance(e, HSet):
                raise TypeError(f"HSet elements must be HSet, got {type(e).__name__}")
        if len(elems) > 1:
            elems = tuple(sorted(dict.fromkeys(elems)))
        key = elems
        cached = cls._table.get(key)
        if cached is not None:
            return cached
        self = super().__new__(cls)
        self.elements = elems
        self._hash = hash(elems)
        self._rank = 0 if not elems else 1 + max(e._rank for e in elems)
        # setdefault is atomic under the GIL, so racing constructions agree
        return cls._table.setdefault(key, self)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return self is other

    def __ne__(self, other: object) -> bool:
        return self is not other

    def _cmp(self, other: "HSet") -> int:
        if self is other:
            return 0
        for a, b in zip(self.elements, other.elements):
            c = a._cmp(b)
            if c:
                return c
        return (len(self.elements) > len(other.elements)) - (
            len(self.elements) < len(other.elements)
        )

    def __lt__(self, other: "HSet") -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: "HSet") -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: "HSet") -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: "HSet") -> bool:
        return self._cmp(other) >= 0

    def __iter__(self) -> Iterator["HSet"]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return any(x is e for e in self.elements)

    @property
    def rank(self) -> int:
        return self._rank

    def issubset(self, other: "HSet") -> bool:
        return all(e in other for e in self.elements)

    def to_json(self) -> list:
        """Nested-array encoding: [] is the empty set, [[]] is {empty set}."""
        return [e.to_json() for e in self.elements]

    @classmethod
    def from_json(cls, data) -> "HSet":
        """Accepts non-canonical nested arrays and canonicalizes."""
        return canon(data)

    def __repr__(self) -> str:
        if not self.elements:
            return "{}"
        return "{" + ",".join(repr(e) for e in self.elements) + "}"


EMPTY = HSet()


def canon(raw) -> HSet:
    """Canonical HSet from a nested list/tuple structure (idempotent on HSet)."""
    if isinstance(raw, HSet):
        return raw
    if isinstance(raw, (list, tuple)):
        return HSet(canon(x) for x in raw)
    raise TypeError(f"cannot canonicalize {type(raw).__name__}")


def mem(x: HSet, y: HSet) -> bool:
    """Membership: x is (structurally) an element of y."""
    return x in y


def rank(x: HSet) -> int:
    """Least k with x a member of the (k+1)-th cumulative stage."""
    return x._rank


@lru_cache(maxsize=None)
def _stage(k: int, element_cap: int) -> tuple[HSet, ...]:
    if k <= 0:
        return ()
    prev = _stage(k - 1, element_cap)
    size = 1 << len(prev)
    if size > element_cap:
        raise CapExceeded(
            "stage-too-large",
            f"stage {k} has {size} elements, exceeding the cap of {element_cap}",
        )
    out = []
    for mask in range(size):
        out.append(HSet(prev[i] for i in range(len(prev)) if mask >> i & 1))
    return tuple(sorted(out))


def v_stage(k: int, element_cap: int = DEFAULT_ELEMENT_CAP) -> tuple[HSet, ...]:
    """All HSet of rank < k, sorted canonically.  Sizes follow 2^|previous stage|."""
    if k < 0:
        raise ValueError("stage index must be a natural number")
    return _stage(k, element_cap)


def eclose(x: HSet) -> HSet:
    """Transitive closure: x's elements together with all hereditary members."""
    seen: dict[HSet, None] = {}
    stack = list(x.elements)
    while stack:
        y = stack.pop()
        if y in seen:
            continue
        seen[y] = None
        stack.extend(y.elements)
    return HSet(seen)


def opair(x: HSet, y: HSet) -> HSet:
    """Kuratowski pair {{x},{x,y}}; degenerates to {{x}} when x = y."""
    return HSet((HSet((x,)), HSet((x, y))))


def as_pair(p: HSet) -> Optional[tuple[HSet, HSet]]:
    """Decode a Kuratowski pair, or None if p is not one."""
    els = p.elements
    if len(els) == 1:
        inner = els[0]
        if len(inner) == 1:
            x = inner.elements[0]
            return (x, x)
        return None
    if len(els) == 2:
        a, b = els
        if len(a) == 1 and len(b) == 2:
            single, double = a, b
        elif len(a) == 2 and len(b) == 1:
            single, double = b, a
        else:
            return None
        x = single.elements[0]
        if x not in double:
            return None
        u, v = double.elements
        return (x, v if u is x else u)
    return None


def fst(p: HSet) -> HSet:
    pair = as_pair(p)
    if pair is None:
        raise NotAPair(f"not a Kuratowski pair: {p!r}")
    return pair[0]


def snd(p: HSet) -> HSet:
    pair = as_pair(p)
    if pair is None:
        raise NotAPair(f"not a Kuratowski pair: {p!r}")
    return pair[1]


def domain(r: HSet) -> HSet:
    """First components of the Kuratowski pairs in r; non-pairs are ignored."""
    out = []
    for el in r.elements:
        pair = as_pair(el)
        if pair is not None:
            out.append(pair[0])
    return HSet(out)


def cartprod(a: HSet, b: HSet) -> HSet:
    return HSet(opair(x, y) for x in a.elements for y in b.elements)


def setunion(x: HSet) -> HSet:
    """Union of the elements of x."""
    return HSet(z for y in x.elements for z in y.elements)


def is_transitive(sets: Iterable[HSet]) -> bool:
    """Every element of every member of the collection is itself in the collection."""
    members = frozenset(sets)
    return all(e in members for s in members for e in s.elements)


@lru_cache(maxsize=None)
def ordinal(n: int) -> HSet:
    """Von Neumann natural: 0 = {} and n+1 = n + {n}."""
    if n < 0:
        raise ValueError("ordinals of naturals only")
    if n == 0:
        return EMPTY
    prev = ordinal(n - 1)
    return HSet(prev.elements + (prev,))


@dataclass(frozen=True)
class HRelation:
    """A finite set relation, stored as native ordered pairs of HSet."""

    pairs: frozenset[tuple[HSet, HSet]]

    @classmethod
    def of(cls, pairs: Iterable[tuple[HSet, HSet]]) -> "HRelation":
        return cls(frozenset(pairs))

    def field(self) -> frozenset[HSet]:
        out = set()
        for a, b in self.pairs:
            out.add(a)
            out.add(b)
        return frozenset(out)

    def predecessors(self, y: HSet) -> tuple[HSet, ...]:
        return tuple(sorted(a for a, b in self.pairs if b is y))

    def successors(self, x: HSet) -> tuple[HSet, ...]:
        return tuple(sorted(b for a, b in self.pairs if a is x))

    def __contains__(self, pair: tuple[HSet, HSet]) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[HSet, HSet]]:
        return iter(sorted(self.pairs))


EMPTY_RELATION = HRelation(frozenset())
