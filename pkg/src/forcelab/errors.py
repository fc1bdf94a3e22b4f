"""Exception hierarchy shared across the laboratory.

The CLI maps these onto exit codes: configuration and parse problems are
exit 2, resource-cap overruns are exit 3.
"""


class ForcelabError(Exception):
    """Base class for all errors raised by this package."""


class CapExceeded(ForcelabError):
    """A configured size cap would be exceeded (stage, poset scan, name grid, model)."""

    def __init__(self, cap_name: str, message: str):
        super().__init__(message)
        self.cap_name = cap_name


class NotAPair(ForcelabError):
    """fst/snd applied to a set that is not a Kuratowski pair."""


class ArityError(ForcelabError):
    """A formula's arity exceeds what the operation admits (context or parameter slots)."""


class EnvTooShort(ForcelabError):
    """Environment shorter than the formula's arity."""


class EnvNotInModel(ForcelabError):
    """Environment entry outside the model's universe."""


class FormulaSyntaxError(ForcelabError):
    """Malformed formula text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PosetError(ForcelabError):
    """Order-table validation failure (not-reflexive, not-transitive, not-antisymmetric, no-top)."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


class NotWellFounded(ForcelabError):
    """Recursion attempted over a relation with a cycle."""


class RecursionDomainError(ForcelabError):
    """A recursion functional consulted the partial map outside the predecessors of its argument."""


class DensityError(ForcelabError):
    """A listed set admitted no extension below the current condition."""


class UnknownAxiom(ForcelabError):
    """Axiom identifier not recognised by a checker."""


class PreconditionError(ForcelabError):
    """A documented operation precondition was violated by the caller."""
