"""Finite forcing notions, filters, dense sets, and generic filters.

Order tables must be partial orders (antisymmetry included): the
minimal-element enumeration of generic filters and the exhaustive filter scan
are cleanest there, and preorders reduce by quotienting.

Genericity quantifies over all dense subsets of the carrier; every dense set
of any transitive ground model containing the conditions is of this form, so
no model parameter is needed here.  Over a finite partial order the generic
filters are exactly the upward closures of the minimal elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import CapExceeded, DensityError, PosetError, PreconditionError
from .hfset import HSet, ordinal

__all__ = [
    "ForcingNotion",
    "GFilter",
    "MinimalUpset",
    "RSChain",
    "validate_notion",
    "preset_notion",
    "PRESET_EXAMPLES",
    "is_filter",
    "is_dense",
    "dense_below",
    "generic_filters",
    "is_generic",
    "rasiowa_sikorski",
    "DEFAULT_GENERICITY_CAP",
]

DEFAULT_GENERICITY_CAP = 14

Condition = Union[HSet, int]


@dataclass(frozen=True)
class ForcingNotion:
    """A validated finite partial order with top, the set of conditions.

    Conditions are HSets (labels encode as von Neumann naturals so that the
    carrier embeds in low cumulative stages); the order is kept as a table of
    index pairs over the element tuple.
    """

    elements: tuple[HSet, ...]
    labels: tuple[int, ...]
    le_table: frozenset[tuple[int, int]]
    top_index: int

    def __post_init__(self):
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.elements)})
        down = []
        up = []
        n = len(self.elements)
        for i in range(n):
            down.append(tuple(j for j in range(n) if (j, i) in self.le_table))
            up.append(tuple(j for j in range(n) if (i, j) in self.le_table))
        object.__setattr__(self, "_down", tuple(down))
        object.__setattr__(self, "_up", tuple(up))
        object.__setattr__(
            self, "_minimal", tuple(i for i in range(n) if len(down[i]) == 1)
        )

    def __hash__(self):
        return hash((self.elements, self.le_table, self.top_index))

    def __eq__(self, other):
        if not isinstance(other, ForcingNotion):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.le_table == other.le_table
            and self.top_index == other.top_index
        )

    @property
    def top(self) -> HSet:
        return self.elements[self.top_index]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p: object) -> bool:
        return p in self._index

    def index_of(self, p: HSet) -> int:
        return self._index[p]

    def resolve(self, p: Condition) -> HSet:
        """Accept a condition as an HSet or as its numeric label."""
        if isinstance(p, HSet):
            if p not in self._index:
                raise PreconditionError(f"{p!r} is not a condition of this notion")
            return p
        try:
            return self.elements[self.labels.index(p)]
        except ValueError:
            raise PreconditionError(f"no condition labelled {p}") from None

    def label_of(self, p: HSet) -> int:
        return self.labels[self._index[p]]

    def le(self, p: HSet, q: HSet) -> bool:
        return (self._index[p], self._index[q]) in self.le_table

    def downset(self, p: HSet) -> tuple[HSet, ...]:
        return tuple(self.elements[j] for j in self._down[self._index[p]])

    def upset(self, p: HSet) -> tuple[HSet, ...]:
        return tuple(self.elements[j] for j in self._up[self._index[p]])

    @property
    def minimal_elements(self) -> tuple[HSet, ...]:
        return tuple(self.elements[i] for i in self._minimal)

    def le_pairs_as_hset(self) -> HSet:
        """The order as a set of Kuratowski pairs (for closure diagnostics)."""
        from .hfset import opair

        return HSet(
            opair(self.elements[i], self.elements[j]) for i, j in self.le_table
        )

    def carrier_as_hset(self) -> HSet:
        return HSet(self.elements)

    def to_json(self) -> dict:
        return {
            "elements": list(self.labels),
            "le": sorted([self.labels[i], self.labels[j]] for i, j in self.le_table),
            "top": self.labels[self.top_index],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ForcingNotion":
        return validate_notion(
            data["elements"],
            [tuple(pair) for pair in data["le"]],
            data["top"],
            auto_reflexive=bool(data.get("auto_reflexive", False)),
        )


def validate_notion(
    elements: Sequence[Condition],
    le: Iterable[tuple[Condition, Condition]],
    top: Condition,
    auto_reflexive: bool = False,
) -> ForcingNotion:
    """Check the order axioms and build the notion.

    Elements given as ints become von Neumann naturals and keep their label;
    le pairs and top may use either form.  Reflexive pairs may be omitted only
    when auto_reflexive is set.
    """
    encoded: list[HSet] = []
    labels: list[int] = []
    for i, e in enumerate(elements):
        if isinstance(e, HSet):
            encoded.append(e)
            labels.append(i)
        else:
            encoded.append(ordinal(e))
            labels.append(e)
    if len(set(encoded)) != len(encoded):
        raise PosetError("duplicate-elements", "carrier has duplicate conditions")

    lookup = {e: i for i, e in enumerate(encoded)}
    label_lookup = {lab: i for i, lab in enumerate(labels)}

    def resolve(c: Condition) -> int:
        if isinstance(c, HSet):
            if c not in lookup:
                raise PosetError("unknown-element", f"{c!r} not in the carrier")
            return lookup[c]
        if c not in label_lookup:
            raise PosetError("unknown-element", f"label {c} not in the carrier")
        return label_lookup[c]

    table = {(resolve(a), resolve(b)) for a, b in le}
    n = len(encoded)
    if auto_reflexive:
        table |= {(i, i) for i in range(n)}

    for i in range(n):
        if (i, i) not in table:
            raise PosetError("not-reflexive", f"missing ({labels[i]}, {labels[i]})")
    for i, j in sorted(table):
        for j2, k in sorted(table):
            if j2 == j and (i, k) not in table:
                raise PosetError(
                    "not-transitive",
                    f"({labels[i]},{labels[j]}) and ({labels[j]},{labels[k]}) without ({labels[i]},{labels[k]})",
                )
    for i, j in table:
        if i != j and (j, i) in table:
            raise PosetError("not-antisymmetric", f"{labels[i]} and {labels[j]} are order-equivalent")
    t = resolve(top)
    for i in range(n):
        if (i, t) not in table:
            raise PosetError("no-top", f"{labels[i]} is not below the declared top {labels[t]}")

    return ForcingNotion(tuple(encoded), tuple(labels), frozenset(table), t)


def _chain(n: int) -> ForcingNotion:
    return validate_notion(
        list(range(n)), [(i, j) for i in range(n) for j in range(i, n)], n - 1
    )


def _antichain_with_top(n: int) -> ForcingNotion:
    le = [(i, n) for i in range(n)] + [(i, i) for i in range(n + 1)]
    return validate_notion(list(range(n + 1)), le, n)


def _diamond() -> ForcingNotion:
    le = [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)] + [(i, i) for i in range(4)]
    return validate_notion([0, 1, 2, 3], le, 3)


def preset_notion(name: str) -> ForcingNotion:
    """Named preset posets: v-shape | chain-n | diamond | antichain-n-with-top | trivial."""
    if name == "v-shape":
        return _antichain_with_top(2)
    if name == "diamond":
        return _diamond()
    if name == "trivial":
        return _chain(1)
    if name.startswith("chain-"):
        n = _preset_size(name, "chain-")
        return _chain(n)
    if name.startswith("antichain-") and name.endswith("-with-top"):
        n = _preset_size(name[: -len("-with-top")], "antichain-")
        return _antichain_with_top(n)
    raise PreconditionError(f"unknown poset preset {name!r}")


def _preset_size(name: str, prefix: str) -> int:
    suffix = name[len(prefix):]
    if not suffix.isdigit() or int(suffix) < 1:
        raise PreconditionError(f"bad preset size in {name!r}")
    return int(suffix)


PRESET_EXAMPLES = ("trivial", "chain-3", "v-shape", "antichain-3-with-top", "diamond")


@dataclass(frozen=True)
class MinimalUpset:
    """Certificate: the filter is the upward closure of this minimal element."""

    element: HSet


@dataclass(frozen=True)
class RSChain:
    """Certificate: the filter closes a descending chain meeting listed dense sets."""

    chain: tuple[HSet, ...]


@dataclass(frozen=True)
class GFilter:
    members: frozenset[HSet]
    certificate: Union[MinimalUpset, RSChain]

    def sorted_members(self) -> tuple[HSet, ...]:
        return tuple(sorted(self.members))

    def as_hset(self) -> HSet:
        return HSet(self.members)

    def __contains__(self, p: object) -> bool:
        return p in self.members


def is_filter(notion: ForcingNotion, members: Iterable[HSet]) -> bool:
    """Nonempty, upward closed, and downward compatible within itself."""
    ms = frozenset(members)
    if not ms or not all(p in notion for p in ms):
        return False
    for p in ms:
        for q in notion.upset(p):
            if q not in ms:
                return False
    for p in ms:
        for q in ms:
            if not any(r in ms and notion.le(r, q) for r in notion.downset(p)):
                return False
    return True


def is_dense(notion: ForcingNotion, dense: Iterable[HSet]) -> bool:
    """Every condition has an extension (lower bound) in the set."""
    ds = frozenset(dense)
    return all(any(q in ds for q in notion.downset(p)) for p in notion.elements)


def dense_below(notion: ForcingNotion, dense: Iterable[HSet], p: HSet) -> bool:
    """Density relativized below p."""
    ds = frozenset(dense)
    return all(any(r in ds for r in notion.downset(q)) for q in notion.downset(p))


def generic_filters(notion: ForcingNotion) -> list[GFilter]:
    """All generic filters: the upward closures of the minimal elements."""
    return [
        GFilter(frozenset(notion.upset(m)), MinimalUpset(m))
        for m in notion.minimal_elements
    ]


def is_generic(
    notion: ForcingNotion,
    filt: Union[GFilter, Iterable[HSet]],
    cap: int = DEFAULT_GENERICITY_CAP,
) -> bool:
    """Does the filter meet every dense subset?  Scans all 2^|P| subsets."""
    if len(notion) > cap:
        raise CapExceeded(
            "poset-too-large",
            f"genericity scan over 2^{len(notion)} subsets exceeds the cap of 2^{cap}",
        )
    members = filt.members if isinstance(filt, GFilter) else frozenset(filt)
    els = notion.elements
    for mask in range(1 << len(els)):
        subset = [els[i] for i in range(len(els)) if mask >> i & 1]
        if is_dense(notion, subset) and not any(p in members for p in subset):
            return False
    return True


def rasiowa_sikorski(
    notion: ForcingNotion,
    dense_family: Sequence[Iterable[HSet]],
    p: Condition,
) -> GFilter:
    """Build a filter containing p and meeting every listed dense set.

    Descends through a chain p = p0 >= p1 >= ... with each step landing in the
    next listed set; the result is the upward closure of the chain.  Ties
    break toward order-minimal candidates and then least carrier index, so
    runs are reproducible.
    """
    current = notion.resolve(p)
    chain = [current]
    for k, dense in enumerate(dense_family):
        ds = frozenset(dense)
        candidates = [q for q in notion.downset(current) if q in ds]
        if not candidates:
            raise DensityError(
                f"set #{k} of the family has no member below {notion.label_of(current)}"
            )
        minimal = [
            q
            for q in candidates
            if not any(r is not q and notion.le(r, q) for r in candidates)
        ]
        current = min(minimal, key=notion.index_of)
        chain.append(current)
    return GFilter(frozenset(notion.upset(current)), RSChain(tuple(chain)))
