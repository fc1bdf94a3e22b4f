"""Satisfaction of internalized formulas in a finite set model.

Environments are plain sequences of HSet; index 0 is the most recently bound
variable, so quantification prepends.  Separation instances evaluate the
formula against [x, a] with x at index 0, which fixes the index arithmetic
used by the name constructions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ArityError, EnvNotInModel, EnvTooShort, UnknownAxiom
from .formula import Equal, Forall, Formula, Member, Nand
from .hfset import HSet, is_transitive, setunion, v_stage
from .report import CheckReport, Status

__all__ = [
    "Model",
    "v_model",
    "sats",
    "separation_set",
    "check_relativized_axiom",
    "AXIOM_IDS",
]

AXIOM_IDS = (
    "extensionality",
    "foundation",
    "pairing",
    "union",
    "separation-instance",
    "powerset",
)


@dataclass(frozen=True)
class Model:
    """A finite collection of HSet with a cached transitivity flag."""

    universe: tuple[HSet, ...]
    transitive: bool
    _members: frozenset = field(compare=False, repr=False, hash=False)

    @classmethod
    def from_sets(cls, sets: Iterable[HSet]) -> "Model":
        members = frozenset(sets)
        universe = tuple(sorted(members))
        return cls(universe, is_transitive(members), members)

    def __contains__(self, x: object) -> bool:
        return x in self._members

    def __len__(self) -> int:
        return len(self.universe)

    def __iter__(self) -> Iterator[HSet]:
        return iter(self.universe)


def v_model(k: int) -> Model:
    """The model whose universe is the k-th cumulative stage."""
    return Model.from_sets(v_stage(k))


def sats(model: Model, phi: Formula, env: Sequence[HSet]) -> bool:
    """Does the model satisfy phi under the environment?"""
    if phi.arity() > len(env):
        raise EnvTooShort(
            f"formula arity {phi.arity()} exceeds environment length {len(env)}"
        )
    for a in env:
        if a not in model:
            raise EnvNotInModel(f"environment entry {a!r} is not in the model")
    return _sats(model, phi, tuple(env))


def _sats(model: Model, phi: Formula, env: tuple[HSet, ...]) -> bool:
    if isinstance(phi, Member):
        return env[phi.i] in env[phi.j]
    if isinstance(phi, Equal):
        return env[phi.i] is env[phi.j]
    if isinstance(phi, Nand):
        return not (_sats(model, phi.p, env) and _sats(model, phi.q, env))
    if isinstance(phi, Forall):
        return all(_sats(model, phi.p, (a,) + env) for a in model.universe)
    raise TypeError(f"not a formula: {phi!r}")


def separation_set(model: Model, phi: Formula, a: HSet, big: HSet) -> HSet:
    """The subset of big defined by phi with parameter a: {x in big : phi(x, a)}."""
    if phi.arity() > 2:
        raise ArityError(f"separation admits arity <= 2, got {phi.arity()}")
    if a not in model or big not in model:
        raise EnvNotInModel("separation parameters must lie in the model")
    return HSet(x for x in big.elements if _sats(model, phi, (x, a)))


def check_relativized_axiom(
    model: Model, axiom_id: str, phi: Optional[Formula] = None
) -> CheckReport:
    """Exhaustively evaluate one relativized axiom over the model's universe.

    Closure-style axioms (pairing, union, powerset, separation) report
    VIOLATED with the first missing witness set; finite stages are expected
    to fail near their top rank.
    """
    if axiom_id == "extensionality":
        return _check_extensionality(model)
    if axiom_id == "foundation":
        return _check_foundation(model)
    if axiom_id == "pairing":
        return _check_pairing(model)
    if axiom_id == "union":
        return _check_union(model)
    if axiom_id == "powerset":
        return _check_powerset(model)
    if axiom_id == "separation-instance":
        if phi is None:
            raise UnknownAxiom("separation-instance requires a formula")
        return _check_separation_instance(model, phi)
    raise UnknownAxiom(f"unknown axiom id {axiom_id!r}")


def _check_extensionality(model: Model) -> CheckReport:
    n = len(model)
    total = n * (n - 1) // 2
    if model.transitive:
        # x cap M = x on a transitive model, so canonical-form equality settles it
        return CheckReport(
            "extensionality", Status.HOLDS, None, total, note="transitive: canonical equality"
        )
    xs = model.universe
    for i in range(n):
        for j in range(i + 1, n):
            x, y = xs[i], xs[j]
            if all((z in x) == (z in y) for z in xs):
                witness = HSet((x, y))
                return CheckReport("extensionality", Status.VIOLATED, witness, total)
    return CheckReport("extensionality", Status.HOLDS, None, total)


def _check_foundation(model: Model) -> CheckReport:
    for x in model.universe:
        inside = [y for y in x.elements if y in model]
        if not inside:
            continue
        if not any(all(z not in model or z not in x for z in y.elements) for y in inside):
            return CheckReport("foundation", Status.VIOLATED, x, len(model))
    return CheckReport("foundation", Status.HOLDS, None, len(model))


def _check_pairing(model: Model) -> CheckReport:
    witness = None
    checked = 0
    for x in model.universe:
        for y in model.universe:
            checked += 1
            z = HSet((x, y))
            if z not in model and witness is None:
                witness = z
    if witness is not None:
        return CheckReport("pairing", Status.VIOLATED, witness, checked)
    return CheckReport("pairing", Status.HOLDS, None, checked)


def _check_union(model: Model) -> CheckReport:
    witness = None
    for x in model.universe:
        u = setunion(x)
        if u not in model and witness is None:
            witness = x
    if witness is not None:
        return CheckReport("union", Status.VIOLATED, witness, len(model))
    return CheckReport("union", Status.HOLDS, None, len(model))


def _check_powerset(model: Model) -> CheckReport:
    witness = None
    for x in model.universe:
        els = x.elements
        inside = []
        for mask in range(1 << len(els)):
            s = HSet(els[i] for i in range(len(els)) if mask >> i & 1)
            if s in model:
                inside.append(s)
        if HSet(inside) not in model and witness is None:
            witness = x
    if witness is not None:
        return CheckReport("powerset", Status.VIOLATED, witness, len(model))
    return CheckReport("powerset", Status.HOLDS, None, len(model))


def _check_separation_instance(model: Model, phi: Formula) -> CheckReport:
    if phi.arity() > 2:
        raise ArityError(f"separation admits arity <= 2, got {phi.arity()}")
    checked = 0
    for a in model.universe:
        for big in model.universe:
            checked += 1
            if separation_set(model, phi, a, big) not in model:
                return CheckReport("separation-instance", Status.VIOLATED, big, checked)
    return CheckReport("separation-instance", Status.HOLDS, None, checked)
