"""Finite forcing laboratory.

Builds generic extensions of finite transitive ground models over finite
forcing posets and machine-verifies, by exhaustive evaluation, the renaming
lemma, well-founded recursion restriction, the name-value equations, the
fundamental theorems of forcing, and the axiom arguments for Extensionality,
Foundation, Union, Pairing, Separation, and Powerset at desk scale.
"""

from .errors import (
    ArityError,
    CapExceeded,
    DensityError,
    EnvNotInModel,
    EnvTooShort,
    ForcelabError,
    FormulaSyntaxError,
    NotAPair,
    NotWellFounded,
    PosetError,
    PreconditionError,
    RecursionDomainError,
    UnknownAxiom,
)
from .extension import (
    Extension,
    build_extension,
    context_for,
    density_check,
    extension_of,
    forces,
    generic_contexts,
    truth_lemma_check,
    verify_axiom_in_extension,
)
from .forcing import (
    ForcingNotion,
    GFilter,
    MinimalUpset,
    RSChain,
    dense_below,
    generic_filters,
    is_dense,
    is_filter,
    is_generic,
    preset_notion,
    rasiowa_sikorski,
    validate_notion,
)
from .formula import (
    And,
    Equal,
    Ex,
    Forall,
    Formula,
    Iff,
    Imp,
    Member,
    Nand,
    Neg,
    Or,
    Renaming,
    parse,
    ren,
    sum_id,
    unparse,
)
from .hfset import (
    EMPTY,
    HRelation,
    HSet,
    as_pair,
    canon,
    cartprod,
    domain,
    eclose,
    fst,
    is_transitive,
    mem,
    opair,
    ordinal,
    rank,
    setunion,
    snd,
    v_stage,
)
from .names import (
    NameContext,
    check_name,
    closure_report,
    generic_name,
    pow_name,
    sep_name,
    union_name,
    val,
)
from .report import CheckReport, Status
from .semantics import Model, check_relativized_axiom, sats, separation_set, v_model
from .wfrec import edrel, is_wf, restrict, trancl, wfrec

__version__ = "0.1.0"
