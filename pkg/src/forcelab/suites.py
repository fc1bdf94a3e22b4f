"""Verification suites: seeded random and exhaustive checks over preset posets.

All randomness derives from a single seed through labelled child generators,
so a run is reproducible from its configuration alone.  Each suite returns
structured reports; a VIOLATED report carries the first counterexample found.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .extension import (
    density_check,
    extension_of,
    forces,
    generic_contexts,
    truth_lemma_check,
    verify_axiom_in_extension,
)
from .forcing import (
    ForcingNotion,
    dense_below,
    generic_filters,
    is_dense,
    is_filter,
    is_generic,
    preset_notion,
    rasiowa_sikorski,
)
from .formula import Equal, Forall, Formula, Member, Nand, Renaming, parse, ren
from .hfset import HRelation, HSet, as_pair, cartprod, opair, v_stage
from .names import check_name, generic_name, sep_name, union_name, val
from .report import CheckReport, Status
from .semantics import Model, sats, v_model
from .wfrec import restrict, trancl, wfrec

__all__ = [
    "split_rng",
    "random_formula",
    "random_renaming",
    "FUNDAMENTAL_FORMULAS",
    "SEPARATION_FORMULAS",
    "ACCEPTANCE_POSETS",
    "FUNDAMENTAL_POSETS",
    "ORACLE_POSETS",
    "renaming_suite",
    "recursion_suite",
    "names_suite",
    "fundamental_suite",
    "axioms_suite",
    "SUITE_IDS",
]

SUITE_IDS = ("renaming", "recursion", "names", "fundamental", "axioms")

ACCEPTANCE_POSETS = ("trivial", "chain-3", "v-shape", "antichain-3-with-top", "diamond")
FUNDAMENTAL_POSETS = ACCEPTANCE_POSETS + ("chain-5", "antichain-5-with-top")
ORACLE_POSETS = (
    tuple(f"chain-{n}" for n in range(1, 9))
    + ("v-shape", "diamond")
    + tuple(f"antichain-{n}-with-top" for n in range(2, 8))
)

# 30 formulas, elaborated depth <= 3, arity <= 2
FUNDAMENTAL_FORMULAS: tuple[Formula, ...] = tuple(
    parse(text)
    for text in (
        "Eq 0 0",
        "Neg (Eq 0 0)",
        "Mem 0 0",
        "Neg (Mem 0 0)",
        "Mem 0 1",
        "Mem 1 0",
        "Eq 0 1",
        "Neg (Mem 0 1)",
        "Neg (Eq 0 1)",
        "Nand (Mem 0 1) (Mem 1 0)",
        "Nand (Eq 0 1) (Mem 0 1)",
        "And (Mem 0 1) (Eq 0 0)",
        "And (Mem 0 1) (Mem 1 0)",
        "Or (Mem 0 1) (Mem 1 0)",
        "Or (Eq 0 1) (Mem 0 1)",
        "Imp (Mem 0 1) (Mem 1 0)",
        "Imp (Eq 0 1) (Mem 0 1)",
        "Imp (Mem 0 0) (Eq 0 1)",
        "All (Mem 0 1)",
        "All (Mem 0 2)",
        "All (Mem 2 0)",
        "All (Eq 0 1)",
        "All (Neg (Mem 0 1))",
        "All (Neg (Mem 0 2))",
        "All (Imp (Mem 0 1) (Mem 0 2))",
        "All (Imp (Mem 0 2) (Mem 0 1))",
        "All (Nand (Mem 0 1) (Mem 0 2))",
        "All (All (Mem 0 1))",
        "All (All (Eq 0 1))",
        "All (All (Mem 0 3))",
    )
)

# 15 formulas for separation instances; environment is [x, w]
SEPARATION_FORMULAS: tuple[Formula, ...] = tuple(
    parse(text)
    for text in (
        "Eq 0 0",
        "Neg (Eq 0 0)",
        "Mem 0 1",
        "Mem 1 0",
        "Eq 0 1",
        "Neg (Mem 1 0)",
        "Neg (Mem 0 1)",
        "Nand (Mem 1 0) (Mem 0 1)",
        "And (Mem 1 0) (Eq 0 0)",
        "Or (Mem 0 1) (Mem 1 0)",
        "Imp (Mem 0 1) (Mem 1 0)",
        "All (Neg (Mem 0 1))",
        "All (Imp (Mem 0 1) (Mem 0 2))",
        "All (Imp (Mem 0 2) (Mem 0 1))",
        "Ex (Mem 0 1)",
    )
)


def split_rng(seed: int, label: str) -> random.Random:
    """Child generator for one suite, derived from the run seed and a label."""
    return random.Random(f"{seed}/{label}")


def random_formula(rng: random.Random, max_depth: int, width: int) -> Formula:
    """Random formula whose free indices stay below width (so arity <= width)."""
    if max_depth <= 1 or rng.random() < 0.45:
        ctor = rng.choice((Member, Equal))
        return ctor(rng.randrange(width), rng.randrange(width))
    if rng.random() < 0.35:
        return Forall(random_formula(rng, max_depth - 1, width + 1))
    return Nand(
        random_formula(rng, max_depth - 1, width),
        random_formula(rng, max_depth - 1, width),
    )


def random_renaming(rng: random.Random, n: int) -> Renaming:
    m = rng.randint(max(n, 1), n + 3)
    return Renaming(n, m, tuple(rng.randrange(m) for _ in range(n)))


def renaming_suite(seed: int, count: int = 1000, ranks: Sequence[int] = (2, 3, 4)) -> CheckReport:
    """Random instances of the renaming/satisfaction biconditional."""
    rng = split_rng(seed, "renaming")
    models = {k: v_model(k) for k in ranks}
    for idx in range(count):
        model = models[rng.choice(tuple(ranks))]
        n = rng.randint(1, 4)
        phi = random_formula(rng, 4, n)
        f = random_renaming(rng, n)
        rho_big = tuple(rng.choice(model.universe) for _ in range(f.m))
        rho = tuple(rho_big[f(i)] for i in range(n))
        if sats(model, phi, rho) != sats(model, ren(phi, f), rho_big):
            return CheckReport(
                "renaming-lemma",
                Status.VIOLATED,
                None,
                idx + 1,
                note=f"instance #{idx}: {phi} under {f.to_json()}",
            )
    return CheckReport("renaming-lemma", Status.HOLDS, None, count)


def _random_wf_relation(rng: random.Random, pool: Sequence[HSet]) -> HRelation:
    size = rng.randint(2, 10)
    nodes = rng.sample(list(pool), size)
    pairs = []
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < 0.35:
                pairs.append((nodes[i], nodes[j]))
    return HRelation.of(pairs)


def _functional(salt: int):
    def h(x: HSet, partial) -> HSet:
        vals = [partial[k] for k in sorted(partial)]
        picked = [v for i, v in enumerate(vals) if (hash(x) ^ salt ^ (i * 2654435769)) & 1]
        mode = (hash(x) ^ salt) % 3
        if mode == 0:
            return HSet(picked)
        if mode == 1:
            return HSet(picked + [HSet(vals[:1])])
        return HSet([HSet(picked)])

    return h


def recursion_suite(seed: int, count: int = 500) -> CheckReport:
    """Random instances of the recursion-restriction equation."""
    rng = split_rng(seed, "recursion")
    pool = v_stage(4)
    for idx in range(count):
        rel = _random_wf_relation(rng, pool)
        field = sorted(rel.field())
        if not field:
            continue
        a = rng.choice(field)
        preds = {x for x, y in trancl(rel).pairs if y is a}
        extras = [x for x in field if x not in preds and x is not a]
        ambient = preds | {a} | set(rng.sample(extras, rng.randint(0, len(extras))))
        h = _functional(rng.getrandbits(32))
        if wfrec(rel, a, h) is not wfrec(restrict(rel, ambient), a, h):
            return CheckReport(
                "wfrec-restriction", Status.VIOLATED, a, idx + 1,
                note=f"instance #{idx}",
            )
    return CheckReport("wfrec-restriction", Status.HOLDS, None, count)


def names_suite(
    rank: int,
    notion: ForcingNotion,
    seed: int,
    mono_samples: int = 1000,
    eq2_samples: int = 100,
) -> list[CheckReport]:
    """Name-value equations over every generic filter of the notion:
    one-step unfolding, monotonicity, check names, the filter's own name,
    values of separation-defined names, and the union equation."""
    model = v_model(rank)
    contexts = generic_contexts(model, notion)
    stage = model.universe
    reports = []

    unfold_fails = 0
    witness = None
    for ctx in contexts:
        g = ctx.generic.members
        for tau in stage:
            parts = []
            for el in tau.elements:
                pr = as_pair(el)
                if pr is not None and pr[1] in g:
                    parts.append(val(ctx, pr[0]))
            if HSet(parts) is not val(ctx, tau):
                unfold_fails += 1
                witness = witness or tau
    reports.append(
        CheckReport(
            "val-unfolding",
            Status.VIOLATED if unfold_fails else Status.HOLDS,
            witness,
            len(contexts) * len(stage),
        )
    )

    rng = split_rng(seed, "val-mono")
    witness = None
    for _ in range(mono_samples):
        ctx = contexts[rng.randrange(len(contexts))]
        y = rng.choice(stage)
        x = HSet(e for e in y.elements if rng.random() < 0.6)
        if not val(ctx, x).issubset(val(ctx, y)):
            witness = witness or y
    reports.append(
        CheckReport(
            "val-monotone",
            Status.VIOLATED if witness is not None else Status.HOLDS,
            witness,
            mono_samples,
        )
    )

    witness = None
    for ctx in contexts:
        for x in stage:
            if val(ctx, check_name(ctx, x)) is not x:
                witness = witness or x
    reports.append(
        CheckReport(
            "check-names",
            Status.VIOLATED if witness is not None else Status.HOLDS,
            witness,
            len(contexts) * len(stage),
        )
    )

    witness = None
    for ctx in contexts:
        if val(ctx, generic_name(ctx)) is not ctx.generic.as_hset():
            witness = witness or ctx.generic.as_hset()
    reports.append(
        CheckReport(
            "generic-name",
            Status.VIOLATED if witness is not None else Status.HOLDS,
            witness,
            len(contexts),
        )
    )

    rng = split_rng(seed, "eq2")
    carrier = notion.carrier_as_hset()
    witness = None
    for _ in range(eq2_samples):
        ctx = contexts[rng.randrange(len(contexts))]
        g = ctx.generic.members
        base = rng.choice(stage)
        salt = rng.getrandbits(32)
        grid = cartprod(base, carrier)
        name = HSet(u for u in grid.elements if (hash(u) ^ salt) & 1)
        lhs = val(ctx, name)
        rhs = HSet(
            val(ctx, t)
            for t in base.elements
            if any(p in g and (hash(opair(t, p)) ^ salt) & 1 for p in notion.elements)
        )
        if lhs is not rhs:
            witness = witness or name
    reports.append(
        CheckReport(
            "separation-defined-names",
            Status.VIOLATED if witness is not None else Status.HOLDS,
            witness,
            eq2_samples,
        )
    )

    witness = None
    from .hfset import setunion

    for ctx in contexts:
        for tau in stage:
            if setunion(val(ctx, tau)) is not val(ctx, union_name(ctx, tau)):
                witness = witness or tau
    reports.append(
        CheckReport(
            "union-equation",
            Status.VIOLATED if witness is not None else Status.HOLDS,
            witness,
            len(contexts) * len(stage),
        )
    )
    return reports


def _truth_strengthening_density(
    model: Model, notion: ForcingNotion, formulas: Sequence[Formula], names: Sequence[HSet]
) -> list[CheckReport]:
    reports = []
    contexts = generic_contexts(model, notion)

    fails = 0
    count = 0
    for phi in formulas:
        env_names = tuple(names[: max(phi.arity(), 0)]) or (names[0],)
        for ctx in contexts:
            count += 1
            if truth_lemma_check(ctx, phi, env_names).status is not Status.HOLDS:
                fails += 1
    reports.append(
        CheckReport("truth-lemma", Status.VIOLATED if fails else Status.HOLDS, None, count)
    )

    fails = 0
    count = 0
    for phi in formulas:
        env_names = tuple(names[: max(phi.arity(), 0)]) or (names[0],)
        forced = {p: forces(model, notion, p, phi, env_names) for p in notion.elements}
        for p in notion.elements:
            for p1 in notion.downset(p):
                count += 1
                if forced[p] and not forced[p1]:
                    fails += 1
    reports.append(
        CheckReport("strengthening", Status.VIOLATED if fails else Status.HOLDS, None, count)
    )

    fails = 0
    count = 0
    for phi in formulas:
        env_names = tuple(names[: max(phi.arity(), 0)]) or (names[0],)
        for p in notion.elements:
            count += 1
            if density_check(model, notion, p, phi, env_names).status is not Status.HOLDS:
                fails += 1
    reports.append(
        CheckReport("density", Status.VIOLATED if fails else Status.HOLDS, None, count)
    )
    return reports


def _definition_of_forcing_two_paths(
    model: Model, notion: ForcingNotion, formulas: Sequence[Formula], names: Sequence[HSet]
) -> CheckReport:
    """Re-derive the forcing verdict by scanning all subsets for generic
    filters rather than closing up the minimal elements."""
    canonical = {g.members: g for g in generic_filters(notion)}
    scan = []
    els = notion.elements
    for mask in range(1 << len(els)):
        subset = frozenset(els[i] for i in range(len(els)) if mask >> i & 1)
        if subset and is_filter(notion, subset) and is_generic(notion, subset):
            scan.append(subset)
    if set(scan) != set(canonical):
        return CheckReport(
            "definition-of-forcing", Status.VIOLATED, None, 1,
            note="filter scan disagrees with minimal-element closure",
        )
    count = 0
    for phi in formulas:
        env_names = tuple(names[: max(phi.arity(), 0)]) or (names[0],)
        for p in els:
            count += 1
            via_minimal = forces(model, notion, p, phi, env_names)
            via_scan = True
            for members in scan:
                if p not in members:
                    continue
                ctx = generic_contexts(model, notion)[
                    [g.members for g in generic_filters(notion)].index(members)
                ]
                env = tuple(val(ctx, t) for t in env_names)
                if not sats(extension_of(ctx).model, phi, env):
                    via_scan = False
                    break
            if via_minimal != via_scan:
                return CheckReport(
                    "definition-of-forcing", Status.VIOLATED, None, count,
                    note=f"paths disagree at p={notion.label_of(p)} on {phi}",
                )
    return CheckReport("definition-of-forcing", Status.HOLDS, None, count)


def _filter_oracle(notion: ForcingNotion, seed: int) -> CheckReport:
    """Minimal-element enumeration against the exhaustive filter scan, plus
    genericity of chain-built filters over sampled dense families."""
    canonical = {g.members for g in generic_filters(notion)}
    els = notion.elements
    scanned = set()
    for mask in range(1 << len(els)):
        subset = frozenset(els[i] for i in range(len(els)) if mask >> i & 1)
        if subset and is_filter(notion, subset) and is_generic(notion, subset):
            scanned.add(subset)
    if scanned != canonical:
        return CheckReport(
            "generic-filter-oracle", Status.VIOLATED, None, 1 << len(els),
            note="scan and minimal-element enumeration disagree",
        )
    rng = split_rng(seed, "rs")
    checked = 1 << len(els)
    for _ in range(10):
        family = []
        for _ in range(rng.randint(0, 3)):
            subset = [p for p in els if rng.random() < 0.7]
            if is_dense(notion, subset):
                family.append(subset)
        p = rng.choice(els)
        filt = rasiowa_sikorski(notion, family, p)
        checked += 1
        ok = (
            is_filter(notion, filt.members)
            and p in filt.members
            and all(any(q in filt.members for q in d) for d in family)
        )
        if not ok:
            return CheckReport(
                "generic-filter-oracle", Status.VIOLATED, filt.as_hset(), checked,
                note="chain-built filter failed its family",
            )
    return CheckReport("generic-filter-oracle", Status.HOLDS, None, checked)


def fundamental_suite(
    rank: int,
    notion: ForcingNotion,
    seed: int,
    formulas: Optional[Sequence[Formula]] = None,
    names_rank: int = 3,
) -> list[CheckReport]:
    """Fundamental-theorem checks: truth lemma, strengthening, density, the
    two-path definition of forcing, and the generic-filter oracle."""
    model = v_model(rank)
    formulas = tuple(formulas) if formulas is not None else FUNDAMENTAL_FORMULAS
    rng = split_rng(seed, "fundamental-names")
    pool = [x for x in v_stage(names_rank) if x in model]
    names = tuple(rng.choice(pool) for _ in range(4))
    reports = _truth_strengthening_density(model, notion, formulas, names)
    reports.append(
        _definition_of_forcing_two_paths(model, notion, formulas[:6], names)
    )
    reports.append(_filter_oracle(notion, seed))
    return reports


def axioms_suite(
    rank: int,
    notion: ForcingNotion,
    seed: int,
    sep_formulas: Optional[Sequence[Formula]] = None,
) -> list[CheckReport]:
    """Axiom verification in every generic extension of the notion."""
    model = v_model(rank)
    sep_formulas = (
        tuple(sep_formulas) if sep_formulas is not None else SEPARATION_FORMULAS[:5]
    )
    reports = []
    for ctx in generic_contexts(model, notion):
        ext = extension_of(ctx)
        tag = "G=" + ",".join(
            str(notion.label_of(p)) for p in ctx.generic.sorted_members()
        )
        for axiom in ("extensionality", "foundation", "union", "pairing", "powerset"):
            r = verify_axiom_in_extension(ext, axiom)
            reports.append(
                CheckReport(r.axiom, r.status, r.witness, r.instances_checked,
                            note=f"{tag}" + (f"; {r.note}" if r.note else ""))
            )
        rng = split_rng(seed, f"axioms-sigma-{tag}")
        for phi in sep_formulas:
            sigma = rng.choice(model.universe)
            r = verify_axiom_in_extension(ext, "separation", phi=phi, sigma=sigma)
            reports.append(
                CheckReport(r.axiom, r.status, r.witness, r.instances_checked,
                            note=f"{tag}; phi={phi}" + (f"; {r.note}" if r.note else ""))
            )
    return reports
