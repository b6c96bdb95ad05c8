import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import morphisms, phantom_morphisms, rings
from phantomcover.errors import InputError
from phantomcover.finmod import (
    FiniteModule,
    ModuleMorphism,
    Ring,
    Submodule,
    compose,
    is_automorphism,
    pure_closure,
)
from phantomcover.ideals import MorphismIdeal, is_phantom
from phantomcover.rep_a2 import (
    ExtensionCounterexample,
    RepA2,
    RepDiagram,
    RepMorphism,
    SubRep,
    compose_rep,
    extension_counterexample,
    in_ideal_class,
    is_pure_subrep,
    quotient_rep,
    rep_colimit,
    restrict_rep,
)

Z4 = Ring(4)


def mod(ring, *factors):
    return FiniteModule(ring, tuple(factors))


def morph(src, tgt, rows):
    return ModuleMorphism(src, tgt, tuple(tuple(r) for r in rows))


def double_rep():
    m = mod(Z4, 4)
    return RepA2(m, m, morph(m, m, [[2]]))


def test_rep_cardinality_is_disjoint_union():
    assert double_rep().cardinality == 8
    assert RepA2.zero(Z4).cardinality == 2


def test_in_ideal_class_examples():
    phant = MorphismIdeal.phantom(Z4)
    assert in_ideal_class(phant, double_rep())
    assert in_ideal_class(phant, RepA2.zero(Z4))
    two = mod(Z4, 2)
    bad = RepA2(two, two, ModuleMorphism.identity(two))
    assert not in_ideal_class(phant, bad)
    assert in_ideal_class(MorphismIdeal.full_hom(Z4), bad)


def test_rep_morphism_square_enforced():
    rep = double_rep()
    with pytest.raises(InputError):
        RepMorphism(rep, RepA2(rep.m1, rep.m2, ModuleMorphism.identity(rep.m1)),
                    ModuleMorphism.identity(rep.m1), ModuleMorphism.identity(rep.m2))


def test_subrep_validation():
    rep = double_rep()
    with pytest.raises(InputError):
        # f carries 1 to 2, which is outside the zero second component
        SubRep(rep, Submodule.full(rep.m1), Submodule.zero(rep.m2))
    good = SubRep(rep, Submodule.full(rep.m1), Submodule(rep.m2, ((2,),)))
    assert good.cardinality == 4 + 2


def test_is_pure_subrep_examples():
    rep = double_rep()
    assert is_pure_subrep(SubRep.full(rep))
    assert is_pure_subrep(SubRep.zero(rep))
    impure = SubRep(rep, Submodule(rep.m1, ((2,),)), Submodule(rep.m2, ((2,),)))
    assert not is_pure_subrep(impure)


def test_quotient_rep_trivial_cases():
    rep = double_rep()
    q, proj = quotient_rep(SubRep.zero(rep))
    assert q.m1.invariant_factors == rep.m1.invariant_factors
    assert q.f == rep.f  # canonical coordinates are preserved here
    q, _ = quotient_rep(SubRep.full(rep))
    assert q.is_zero


def test_quotient_rep_derived_example():
    # F = (*2 on Z/4), S = ({0,2}, {0,2}): induced map on Z/2 -> Z/2 is zero
    rep = double_rep()
    s = SubRep(rep, Submodule(rep.m1, ((2,),)), Submodule(rep.m2, ((2,),)))
    q, proj = quotient_rep(s)
    assert q.m1.invariant_factors == (2,)
    assert q.m2.invariant_factors == (2,)
    assert q.f.is_zero
    assert compose(proj.s, rep.f) == compose(q.f, proj.d)


def test_restrict_rep_embedding():
    rep = double_rep()
    s = SubRep(rep, Submodule(rep.m1, ((2,),)), Submodule(rep.m2, ((2,),)))
    inner, emb = restrict_rep(s)
    assert inner.m1.invariant_factors == (2,)
    assert compose(emb.s, inner.f) == compose(rep.f, emb.d)


def test_rep_colimit_constant():
    rep = double_rep()
    d = RepDiagram.chain([rep, rep], [RepMorphism.identity(rep)])
    col = rep_colimit(d)
    assert col.rep.m1.invariant_factors == rep.m1.invariant_factors
    assert col.rep.m2.invariant_factors == rep.m2.invariant_factors
    assert is_automorphism(col.structural["n0"].d)


def test_rep_colimit_chain_of_subreps_reaches_top():
    rep = double_rep()
    sub = SubRep(rep, Submodule(rep.m1, ((2,),)), Submodule(rep.m2, ((2,),)))
    inner, emb = restrict_rep(sub)
    d = RepDiagram.chain([inner, rep], [emb])
    col = rep_colimit(d)
    assert col.rep.m1.invariant_factors == rep.m1.invariant_factors
    assert is_automorphism(col.structural["n1"].d)
    assert is_automorphism(col.structural["n1"].s)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_rep_colimit_of_phantom_chain_stays_phantom(data):
    ring = data.draw(rings())
    f1 = data.draw(phantom_morphisms(ring, max_card=16))
    rep1 = RepA2.from_morphism(f1)
    # extend by a commuting scalar square, which always exists
    c = data.draw(st.integers(0, ring.modulus - 1))
    scal1 = ModuleMorphism(rep1.m1, rep1.m1, tuple(
        tuple(c if i == j else 0 for j in range(rep1.m1.rank))
        for i in range(rep1.m1.rank)))
    scal2 = ModuleMorphism(rep1.m2, rep1.m2, tuple(
        tuple(c if i == j else 0 for j in range(rep1.m2.rank))
        for i in range(rep1.m2.rank)))
    step = RepMorphism(rep1, rep1, scal1, scal2)
    col = rep_colimit(RepDiagram.chain([rep1, rep1], [step]))
    assert is_phantom(col.rep.f)


def test_rep_morphism_composition_associative():
    rep = double_rep()
    ident = RepMorphism.identity(rep)
    assert compose_rep(ident, compose_rep(ident, ident)) == compose_rep(
        compose_rep(ident, ident), ident)


def test_extension_counterexample_frozen():
    two = mod(Z4, 2)
    result = extension_counterexample(
        MorphismIdeal.phantom(Z4), ModuleMorphism.identity(two))
    assert isinstance(result, ExtensionCounterexample)
    assert result.middle.m1.invariant_factors == (2, 2)
    assert result.middle.f.matrix == ((0, 1), (0, 0))
    assert not result.middle_in_class
    assert result.sub_in_class and result.quotient_in_class


def test_extension_counterexample_zero_ideal():
    two = mod(Z4, 2)
    four = mod(Z4, 4)
    f = morph(two, four, [[2]])
    result = extension_counterexample(MorphismIdeal.zero(Z4), f)
    assert not result.middle_in_class
    assert result.sub_in_class and result.quotient_in_class


def test_extension_counterexample_refusals():
    two = mod(Z4, 2)
    with pytest.raises(InputError):
        extension_counterexample(MorphismIdeal.full_hom(Z4),
                                 ModuleMorphism.identity(two))
    with pytest.raises(InputError):
        extension_counterexample(MorphismIdeal.phantom(Z4),
                                 ModuleMorphism.zero_map(two, two))


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_extension_counterexample_property(data):
    from conftest import nonphantom_morphisms

    ring = data.draw(rings(moduli=(4, 8, 9, 12)))
    f = data.draw(nonphantom_morphisms(ring, max_card=16))
    assert not is_phantom(f)
    result = extension_counterexample(MorphismIdeal.phantom(ring), f)
    assert not result.middle_in_class
    assert result.sub_in_class and result.quotient_in_class


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_quotient_by_pure_subrep_of_phantom_is_phantom(data):
    # pure subrepresentations of phantom representations have phantom quotients
    ring = data.draw(rings())
    f = data.draw(phantom_morphisms(ring, max_card=32))
    rep = RepA2.from_morphism(f)
    s1 = pure_closure(Submodule(rep.m1, tuple(
        data.draw(st.lists(st.sampled_from(sorted(rep.m1.elements())), max_size=1)))))
    seed2 = [rep.f.apply(g) for g in s1.generators]
    s2 = pure_closure(Submodule(rep.m2, tuple(seed2)))
    sub = SubRep(rep, s1, s2)
    assume(is_pure_subrep(sub))
    q, _ = quotient_rep(sub)
    assert is_phantom(q.f)
