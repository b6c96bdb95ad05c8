"""Filtrations of phantom representations: purification of subrepresentations
with size accounting, extraction of pure phantom subrepresentations, and the
chain builder realizing deconstructibility at finite scale.

Size budgets: a purification step is allowed kappa * n^w where w counts the
growth events actually performed (generators adjoined beyond the first and
purification witnesses).  Reports surface the true bound; no step ever
claims a size it cannot guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import BudgetExceededError, InputError, InternalConsistencyError
from .finmod import (
    Submodule,
    compose,
    element_preimage,
    pure_closure_counted,
    subgroup_presentation,
)
from .ideals import (
    MorphismIdeal,
    economical_projective_factorization,
    is_phantom,
    phantom_probes,
)
from .rep_a2 import (
    RepA2,
    SubRep,
    in_ideal_class,
    is_pure_subrep,
    quotient_rep,
    restrict_rep,
)


@dataclass(frozen=True)
class FiltrationConfig:
    """Per-step size budget for quotient slices, at least the ring size."""

    kappa: int

    def check(self, rep: RepA2) -> None:
        if self.kappa < rep.ring.modulus:
            raise InputError("kappa must be at least the ring modulus")


@dataclass(frozen=True)
class PurificationResult:
    subrep: SubRep
    witnesses: int
    growth_events_m1: int
    growth_events_m2: int
    bound_m1: int
    bound_m2: int


def _events(generators_used: int, witnesses: int) -> int:
    return max(0, generators_used + witnesses - 1)


def pure_subrep_containing(rep: RepA2, x1_seeds: Sequence[Sequence[int]],
                           x2_seeds: Sequence[Sequence[int]],
                           cfg: FiltrationConfig) -> PurificationResult:
    """Smallest-effort pure subrepresentation containing the seeds: purify the
    first component, close the second under the image of the first, purify.

    Every growth event multiplies the worst-case size by at most n, so the
    components obey |S_c| <= kappa * n^events; exceeding that is reported as
    a budget violation carrying the partial subrepresentation.
    """
    cfg.check(rep)
    n = rep.ring.modulus
    s1_raw = Submodule(rep.m1, tuple(tuple(g) for g in x1_seeds))
    s1, w1 = pure_closure_counted(s1_raw)
    t_gens = tuple(tuple(g) for g in x2_seeds) + tuple(
        rep.f.apply(g) for g in s1.generators)
    s2, w2 = pure_closure_counted(Submodule(rep.m2, t_gens))
    events1 = _events(len(s1_raw.generators), w1)
    events2 = _events(len(t_gens), w2)
    bound1 = cfg.kappa * n ** events1
    bound2 = cfg.kappa * n ** events2
    sub = SubRep(rep, s1, s2)
    if s1.cardinality > bound1 or s2.cardinality > bound2:
        raise BudgetExceededError(
            f"purified components of sizes {s1.cardinality}, {s2.cardinality} "
            f"exceed bounds {bound1}, {bound2}", partial=sub)
    return PurificationResult(sub, w1 + w2, events1, events2, bound1, bound2)


def phantom_pure_subrep(rep: RepA2, x1_seeds: Sequence[Sequence[int]],
                        x2_seeds: Sequence[Sequence[int]],
                        cfg: FiltrationConfig) -> PurificationResult:
    """Pure subrepresentation containing the seeds whose restricted map is
    phantom: after purifying, adjoin the image of a projective factorization
    for every probe into the first component, re-purify, iterate to fixpoint.
    """
    if not in_ideal_class(MorphismIdeal.phantom(rep.ring), rep):
        raise InputError("phantom_pure_subrep needs a phantom representation")
    n = rep.ring.modulus
    res = pure_subrep_containing(rep, x1_seeds, x2_seeds, cfg)
    s1 = res.subrep.s1
    s2 = res.subrep.s2
    witnesses = res.witnesses
    events2 = res.growth_events_m2
    while True:
        k1, e1 = subgroup_presentation(s1)
        new_gens = []
        for probe in phantom_probes(k1):
            comp = compose(rep.f, compose(e1, probe))
            # the economical factorization keeps the adjoined image small:
            # one generator per source generator of the probe
            fact = economical_projective_factorization(comp)
            if fact is None:
                raise InternalConsistencyError(
                    "composite with a phantom map lost its factorization")
            for j in range(fact.middle.rank):
                img = fact.through.column(j)
                if not s2.contains(img):
                    new_gens.append(img)
        if not new_gens:
            break
        s2, extra_w = pure_closure_counted(s2.join(new_gens))
        witnesses += extra_w
        events2 += len(new_gens) + extra_w
    bound2 = cfg.kappa * n ** events2
    sub = SubRep(rep, s1, s2)
    if s2.cardinality > bound2:
        raise BudgetExceededError(
            f"phantom purification grew to {s2.cardinality} > {bound2}",
            partial=sub)
    inner, _ = restrict_rep(sub)
    if not is_phantom(inner.f):
        raise InternalConsistencyError("purified subrepresentation is not phantom")
    return PurificationResult(sub, witnesses, res.growth_events_m1, events2,
                              res.bound_m1, bound2)


@dataclass(frozen=True)
class StepReport:
    witnesses: int
    quotient_card_m1: int
    quotient_card_m2: int
    bound_m1: int
    bound_m2: int


@dataclass(frozen=True)
class Filtration:
    """A chain of subrepresentations from zero to the whole target, with the
    per-step size reports produced by the builder."""

    target: RepA2
    steps: tuple[SubRep, ...]
    reports: tuple[StepReport, ...]

    @property
    def length(self) -> int:
        return len(self.steps) - 1


def _fresh_element(rep: RepA2, cur: SubRep):
    """Lowest element of m1 then m2, in lexicographic order, outside the
    current step; None when the step is already everything."""
    for x in rep.m1.elements():
        if not cur.s1.contains(x):
            return 1, x
    for y in rep.m2.elements():
        if not cur.s2.contains(y):
            return 2, y
    return None


def build_filtration(rep: RepA2, cfg: FiltrationConfig) -> Filtration:
    """Chain 0 = S_0 < S_1 < ... < S_len = rep of pure subrepresentations
    with phantom quotient steps of bounded size.

    Each successor step picks the lowest fresh element, extracts a pure
    phantom subrepresentation of the quotient around it, and pulls the
    result back along the projection.
    """
    cfg.check(rep)
    if not in_ideal_class(MorphismIdeal.phantom(rep.ring), rep):
        raise InputError("build_filtration needs a phantom representation")
    steps = [SubRep.zero(rep)]
    reports: list[StepReport] = []
    while not steps[-1].is_full:
        cur = steps[-1]
        quot, proj = quotient_rep(cur)
        if (quot.m1.cardinality <= cfg.kappa
                and quot.m2.cardinality <= cfg.kappa):
            steps.append(SubRep.full(rep))
            reports.append(StepReport(0, quot.m1.cardinality,
                                      quot.m2.cardinality, cfg.kappa, cfg.kappa))
            continue
        fresh = _fresh_element(rep, cur)
        if fresh is None:
            raise InternalConsistencyError("no fresh element in a proper step")
        component, x = fresh
        if component == 1:
            seeds1, seeds2 = [proj.d.apply(x)], []
        else:
            seeds1, seeds2 = [], [proj.s.apply(x)]
        res = phantom_pure_subrep(quot, seeds1, seeds2, cfg)
        gens1 = list(cur.s1.generators)
        for g in res.subrep.s1.generators:
            pre = element_preimage(proj.d, g)
            if pre is None:
                raise InternalConsistencyError("projection is not surjective")
            gens1.append(pre)
        gens2 = list(cur.s2.generators)
        for g in res.subrep.s2.generators:
            pre = element_preimage(proj.s, g)
            if pre is None:
                raise InternalConsistencyError("projection is not surjective")
            gens2.append(pre)
        nxt = SubRep(rep, Submodule(rep.m1, tuple(gens1)),
                     Submodule(rep.m2, tuple(gens2)))
        if not is_pure_subrep(nxt):
            raise InternalConsistencyError("pulled-back step lost purity")
        steps.append(nxt)
        reports.append(StepReport(res.witnesses,
                                  res.subrep.s1.cardinality,
                                  res.subrep.s2.cardinality,
                                  res.bound_m1, res.bound_m2))
    return Filtration(rep, tuple(steps), tuple(reports))


@dataclass(frozen=True)
class ConditionReport:
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class FiltrationReport:
    conditions: dict[str, ConditionReport]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.conditions.values())

    def lines(self) -> list[str]:
        return [f"{'ok' if c.ok else 'FAIL'} {name}"
                + (f" ({c.detail})" if c.detail else "")
                for name, c in self.conditions.items()]


def _step_quotient_rep(filtration: Filtration, i: int) -> RepA2:
    """The representation S_(i+1)/S_i, formed inside target/S_i."""
    quot, proj = quotient_rep(filtration.steps[i])
    nxt = filtration.steps[i + 1]
    s1 = Submodule(quot.m1, tuple(proj.d.apply(g) for g in nxt.s1.generators))
    s2 = Submodule(quot.m2, tuple(proj.s.apply(g) for g in nxt.s2.generators))
    inner, _ = restrict_rep(SubRep(quot, s1, s2))
    return inner


def verify_filtration(filtration: Filtration,
                      cfg: Optional[FiltrationConfig] = None) -> FiltrationReport:
    """Independently re-check every filtration condition: zero base, purity of
    every step, chain containment with the union reaching the target, phantom
    quotient steps, the surfaced size bounds, and strict growth below the top.
    """
    steps = filtration.steps
    conditions: dict[str, ConditionReport] = {}

    base = steps[0]
    base_ok = base.s1.cardinality == 1 and base.s2.cardinality == 1
    conditions["zero_base"] = ConditionReport(
        base_ok, "" if base_ok else "first step is not the zero subrepresentation")

    bad = next((i for i, s in enumerate(steps) if not is_pure_subrep(s)), None)
    conditions["purity"] = ConditionReport(
        bad is None, "" if bad is None else f"impure step at index {bad}")

    chain_ok = all(steps[i + 1].contains(steps[i]) for i in range(len(steps) - 1))
    union_ok = steps[-1].is_full
    detail = "" if chain_ok and union_ok else (
        "chain containment fails" if not chain_ok else "union is not the target")
    conditions["continuity"] = ConditionReport(chain_ok and union_ok, detail)

    phantom_fail = None
    if chain_ok:
        for i in range(len(steps) - 1):
            if not is_phantom(_step_quotient_rep(filtration, i).f):
                phantom_fail = i
                break
    conditions["quotient_phantom"] = ConditionReport(
        chain_ok and phantom_fail is None,
        "" if phantom_fail is None else f"non-phantom quotient at step {phantom_fail}")

    sizes_ok = True
    size_detail = []
    if chain_ok:
        for i in range(len(steps) - 1):
            q = _step_quotient_rep(filtration, i)
            c1, c2 = q.m1.cardinality, q.m2.cardinality
            if i < len(filtration.reports):
                rep_i = filtration.reports[i]
                b1, b2 = rep_i.bound_m1, rep_i.bound_m2
            elif cfg is not None:
                b1 = b2 = cfg.kappa
            else:
                b1 = b2 = None
            size_detail.append(f"step {i}: |q1|={c1} |q2|={c2}"
                               + (f" bounds {b1},{b2}" if b1 is not None else ""))
            if b1 is not None and (c1 > b1 or c2 > b2):
                sizes_ok = False
    else:
        sizes_ok = False
    conditions["size_bounds"] = ConditionReport(sizes_ok, "; ".join(size_detail))

    growth_fail = None
    for i in range(len(steps) - 1):
        if not steps[i].is_full and steps[i + 1].cardinality <= steps[i].cardinality:
            growth_fail = i
            break
    conditions["strict_growth"] = ConditionReport(
        growth_fail is None,
        "" if growth_fail is None else f"no growth at step {growth_fail}")

    return FiltrationReport(conditions)
