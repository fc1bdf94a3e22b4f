"""Internalized first-order formulas with de Bruijn indices.

Four primitive constructors only: membership and equality atoms, Nand, and
Forall.  All sugar (Neg, And, Or, Imp, Iff, Ex) elaborates to these at
construction time, so evaluators and the renaming operator have exactly four
cases.  The arity of a formula is the least context containing its free
indices; quantification decrements it (truncated predecessor).

Renamings are finite tables between contexts, not functions, so they compose
and serialize deterministically.  Indices that fall outside a renaming's
source context are a hard error, never clamped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityError, FormulaSyntaxError

__all__ = [
    "Formula",
    "Member",
    "Equal",
    "Nand",
    "Forall",
    "Neg",
    "And",
    "Or",
    "Imp",
    "Iff",
    "Ex",
    "Renaming",
    "sum_id",
    "ren",
    "parse",
    "unparse",
]


class Formula:
    """Base for the four primitive constructors."""

    __slots__ = ()

    def arity(self) -> int:
        raise NotImplementedError

    def depth(self) -> int:
        raise NotImplementedError

    def __str__(self) -> str:
        return unparse(self)


@dataclass(frozen=True, slots=True)
class Member(Formula):
    i: int
    j: int

    def arity(self) -> int:
        return max(self.i, self.j) + 1

    def depth(self) -> int:
        return 1


@dataclass(frozen=True, slots=True)
class Equal(Formula):
    i: int
    j: int

    def arity(self) -> int:
        return max(self.i, self.j) + 1

    def depth(self) -> int:
        return 1


@dataclass(frozen=True, slots=True)
class Nand(Formula):
    p: Formula
    q: Formula

    def arity(self) -> int:
        return max(self.p.arity(), self.q.arity())

    def depth(self) -> int:
        return 1 + max(self.p.depth(), self.q.depth())


@dataclass(frozen=True, slots=True)
class Forall(Formula):
    p: Formula

    def arity(self) -> int:
        return max(self.p.arity() - 1, 0)

    def depth(self) -> int:
        return 1 + self.p.depth()


def Neg(p: Formula) -> Formula:
    return Nand(p, p)


def And(p: Formula, q: Formula) -> Formula:
    return Neg(Nand(p, q))


def Or(p: Formula, q: Formula) -> Formula:
    return Nand(Neg(p), Neg(q))


def Imp(p: Formula, q: Formula) -> Formula:
    return Nand(p, Neg(q))


def Iff(p: Formula, q: Formula) -> Formula:
    return And(Imp(p, q), Imp(q, p))


def Ex(p: Formula) -> Formula:
    return Neg(Forall(Neg(p)))


@dataclass(frozen=True, slots=True)
class Renaming:
    """A total map from the source context {0..n-1} into the target {0..m-1}."""

    n: int
    m: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.n:
            raise ValueError(f"renaming table has {len(self.table)} entries, expected {self.n}")
        for i, v in enumerate(self.table):
            if not 0 <= v < self.m:
                raise ValueError(f"renaming maps {i} to {v}, outside target context {self.m}")

    def __call__(self, i: int) -> int:
        return self.table[i]

    @classmethod
    def identity(cls, n: int) -> "Renaming":
        return cls(n, n, tuple(range(n)))

    def then(self, g: "Renaming") -> "Renaming":
        """Composition: apply self, then g.  Requires matching contexts."""
        if self.m != g.n:
            raise ValueError(f"cannot compose {self.n}->{self.m} with {g.n}->{g.m}")
        return Renaming(self.n, g.m, tuple(g.table[v] for v in self.table))

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "map": list(self.table)}

    @classmethod
    def from_json(cls, data: dict) -> "Renaming":
        return cls(data["n"], data["m"], tuple(data["map"]))


def sum_id(f: Renaming) -> Renaming:
    """Extend a renaming under a binder: 0 stays fixed, i+1 goes to f(i)+1."""
    return Renaming(f.n + 1, f.m + 1, (0,) + tuple(v + 1 for v in f.table))


def ren(phi: Formula, f: Renaming) -> Formula:
    """Rename the free indices of phi along f; quantifiers recurse under sum_id."""
    if phi.arity() > f.n:
        raise ArityError(
            f"formula arity {phi.arity()} exceeds renaming source context {f.n}"
        )
    return _ren(phi, f)


def _ren(phi: Formula, f: Renaming) -> Formula:
    if isinstance(phi, Member):
        return Member(f(phi.i), f(phi.j))
    if isinstance(phi, Equal):
        return Equal(f(phi.i), f(phi.j))
    if isinstance(phi, Nand):
        return Nand(_ren(phi.p, f), _ren(phi.q, f))
    if isinstance(phi, Forall):
        return Forall(_ren(phi.p, sum_id(f)))
    raise TypeError(f"not a formula: {phi!r}")


# --- text syntax ------------------------------------------------------------
#
# formula  := head operand*
# operand  := natural | "(" formula ")"
# heads    : Mem i j | Eq i j | Nand f g | All f
#            Neg f | And f g | Or f g | Imp f g | Iff f g | Ex f   (sugar)

_ATOM_HEADS = {"Mem": Member, "Eq": Equal}
_BINARY_HEADS = {"Nand": Nand, "And": And, "Or": Or, "Imp": Imp, "Iff": Iff}
_UNARY_HEADS = {"All": Forall, "Neg": Neg, "Ex": Ex}


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append((c, i))
            i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()":
                j += 1
            tokens.append((text[i:j], i))
            i = j
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self) -> tuple[str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self, expected: str) -> tuple[str, int]:
        tok = self._peek()
        if tok is None:
            raise FormulaSyntaxError(f"expected {expected}, found end of input", len(self.text))
        self.pos += 1
        return tok

    def formula(self) -> Formula:
        head, at = self._next("a constructor")
        if head in _ATOM_HEADS:
            return _ATOM_HEADS[head](self.index(), self.index())
        if head in _BINARY_HEADS:
            return _BINARY_HEADS[head](self.operand(), self.operand())
        if head in _UNARY_HEADS:
            return _UNARY_HEADS[head](self.operand())
        raise FormulaSyntaxError(f"unknown constructor {head!r}", at)

    def index(self) -> int:
        tok, at = self._next("an index")
        if not tok.isdigit():
            raise FormulaSyntaxError(f"expected an index, found {tok!r}", at)
        return int(tok)

    def operand(self) -> Formula:
        tok = self._peek()
        if tok is None:
            raise FormulaSyntaxError("expected a subformula, found end of input", len(self.text))
        if tok[0] == "(":
            self.pos += 1
            inner = self.formula()
            closing, at = self._next("')'")
            if closing != ")":
                raise FormulaSyntaxError(f"expected ')', found {closing!r}", at)
            return inner
        raise FormulaSyntaxError("subformulas must be parenthesized", tok[1])


def parse(text: str) -> Formula:
    """Parse formula text; sugar elaborates to the four primitives."""
    parser = _Parser(text)
    phi = parser.formula()
    trailing = parser._peek()
    if trailing is not None:
        raise FormulaSyntaxError(f"unexpected trailing input {trailing[0]!r}", trailing[1])
    return phi


def unparse(phi: Formula) -> str:
    """Canonical text using primitives only; parse(unparse(phi)) == phi."""
    if isinstance(phi, Member):
        return f"Mem {phi.i} {phi.j}"
    if isinstance(phi, Equal):
        return f"Eq {phi.i} {phi.j}"
    if isinstance(phi, Nand):
        return f"Nand ({unparse(phi.p)}) ({unparse(phi.q)})"
    if isinstance(phi, Forall):
        return f"All ({unparse(phi.p)})"
    raise TypeError(f"not a formula: {phi!r}")
