"""Deterministic random instance generators.

All randomness flows through explicitly seeded random.Random instances; no
ambient entropy is used anywhere, so every sampled object is a pure function
of its seed.
"""

from __future__ import annotations

import random
from math import gcd
from typing import Optional

from .errors import InputError, InternalConsistencyError
from .finmod import (
    FiniteModule,
    ModuleMorphism,
    Ring,
    Submodule,
    compose,
    direct_sum,
    factorize,
    kernel,
)
from .ideals import is_phantom


def rng_for(seed: int, *labels) -> random.Random:
    """Independent stream derived from a 64-bit seed and a label path."""
    mixed = seed & 0xFFFFFFFFFFFFFFFF
    for label in labels:
        for ch in str(label):
            mixed = (mixed * 1099511628211 + ord(ch)) & 0xFFFFFFFFFFFFFFFF
    return random.Random(mixed)


def random_module(rng: random.Random, ring: Ring, max_card: int,
                  max_rank: int = 4) -> FiniteModule:
    divs = [d for d in ring.divisors() if d >= 2]
    factors: list[int] = []
    card = 1
    for _ in range(rng.randrange(0, max_rank + 1)):
        opts = [d for d in divs
                if (not factors or d % factors[-1] == 0) and card * d <= max_card]
        if not opts:
            break
        d = rng.choice(opts)
        factors.append(d)
        card *= d
    return FiniteModule(ring, tuple(factors))


def random_element(rng: random.Random, m: FiniteModule) -> tuple[int, ...]:
    return tuple(rng.randrange(d) for d in m.invariant_factors)


def random_morphism(rng: random.Random, src: FiniteModule,
                    tgt: FiniteModule) -> ModuleMorphism:
    rows = []
    for ei in tgt.invariant_factors:
        row = []
        for dj in src.invariant_factors:
            g = gcd(dj, ei)
            row.append((ei // g) * rng.randrange(g))
        rows.append(tuple(row))
    return ModuleMorphism(src, tgt, tuple(rows))


def projective_divisors(ring: Ring) -> list[int]:
    full = ring.factorization
    return [d for d in ring.divisors()
            if d >= 2 and all(e == full[p] for p, e in factorize(d))]


def random_projective(rng: random.Random, ring: Ring, max_card: int,
                      max_rank: int = 3) -> FiniteModule:
    divs = projective_divisors(ring)
    factors: list[int] = []
    card = 1
    for _ in range(rng.randrange(0, max_rank + 1)):
        opts = [d for d in divs
                if (not factors or d % factors[-1] == 0) and card * d <= max_card]
        if not opts:
            break
        d = rng.choice(opts)
        factors.append(d)
        card *= d
    return FiniteModule(ring, tuple(factors))


def random_phantom_morphism(rng: random.Random, ring: Ring,
                            max_card: int) -> ModuleMorphism:
    """A random composite through a projective; every phantom arises this way."""
    src = random_module(rng, ring, max_card)
    mid = random_projective(rng, ring, max_card)
    tgt = random_module(rng, ring, max_card)
    return compose(random_morphism(rng, mid, tgt), random_morphism(rng, src, mid))


def random_nonphantom_morphism(rng: random.Random, ring: Ring,
                               max_card: int) -> Optional[ModuleMorphism]:
    """A guaranteed non-phantom morphism, or None over a semisimple ring
    (squarefree modulus), where every morphism is phantom."""
    if ring.is_semisimple():
        return None
    p = next(p for p, e in sorted(ring.factorization.items()) if e >= 2)
    zp = FiniteModule.cyclic(ring, p)
    src = random_module(rng, ring, max_card=max(1, max_card // p))
    tgt = random_module(rng, ring, max_card=max(1, max_card // p))
    g = random_morphism(rng, src, tgt)
    a = direct_sum((zp, src))
    b = direct_sum((zp, tgt))
    f = (compose(b.injections[0],
                 compose(ModuleMorphism.identity(zp), a.projections[0]))
         + compose(b.injections[1], compose(g, a.projections[1])))
    return f


def random_automorphism(rng: random.Random, m: FiniteModule,
                        steps: int = 4) -> ModuleMorphism:
    """Composite of random elementary automorphisms: unit scalings,
    transvections and equal-order coordinate swaps."""
    cur = ModuleMorphism.identity(m)
    k = m.rank
    if k == 0:
        return cur
    fac = m.invariant_factors
    for _ in range(rng.randrange(steps + 1)):
        kind = rng.choice(("unit", "transvection", "swap"))
        rows = [[1 if a == b else 0 for b in range(k)] for a in range(k)]
        if kind == "unit":
            i = rng.randrange(k)
            units = [u for u in range(1, fac[i]) if gcd(u, fac[i]) == 1]
            rows[i][i] = rng.choice(units)
        elif kind == "transvection" and k >= 2:
            i = rng.randrange(k)
            j = rng.choice([x for x in range(k) if x != i])
            g = gcd(fac[j], fac[i])
            rows[i][j] = (fac[i] // g) * rng.randrange(g)
        elif kind == "swap" and k >= 2:
            pairs = [(a, b) for a in range(k) for b in range(a + 1, k)
                     if fac[a] == fac[b]]
            if not pairs:
                continue
            a, b = rng.choice(pairs)
            rows[a][a] = rows[b][b] = 0
            rows[a][b] = rows[b][a] = 1
        cur = compose(ModuleMorphism(m, m, tuple(tuple(r) for r in rows)), cur)
    return cur


def random_pure_submodule(rng: random.Random, m: FiniteModule) -> Submodule:
    """A coordinate summand twisted by a random automorphism; always pure."""
    coords = [j for j in range(m.rank) if rng.random() < 0.5]
    alpha = random_automorphism(rng, m)
    return Submodule(m, tuple(alpha.apply(m.generator(j)) for j in coords))


def random_submodule(rng: random.Random, m: FiniteModule,
                     max_gens: int = 3) -> Submodule:
    gens = tuple(random_element(rng, m) for _ in range(rng.randrange(max_gens + 1)))
    return Submodule(m, gens)


def random_pure_mono_from(rng: random.Random, k: FiniteModule,
                          max_extra_card: int = 16) -> ModuleMorphism:
    """A pure monomorphism out of k: inject into k + T, twist by a random
    automorphism of the target."""
    t = random_module(rng, k.ring, max_extra_card)
    ds = direct_sum((k, t))
    alpha = random_automorphism(rng, ds.module)
    return compose(alpha, ds.injections[0])


def random_phantom_rep(seed: int, ring: Ring, size_bound: int):
    """Deterministic phantom representation with cardinality at most
    max(size_bound, 2).

    Starts from a projective-source representation (always phantom) and
    applies phantomness-preserving perturbations: pre/post-composition,
    adding another projective composite, and kernel-side pushout transport.
    """
    from .approx import pushout_transport
    from .finmod import is_surjective
    from .rep_a2 import RepA2

    if size_bound < 1:
        raise InputError("size bound must be at least 1")
    rng = rng_for(seed, "phantom-rep", ring.modulus, size_bound)
    budget = max(size_bound, 2)
    if budget < 4:
        return RepA2.zero(ring)
    half = budget // 2
    src = random_projective(rng, ring, half)
    tgt = random_module(rng, ring, budget - max(src.cardinality, 1))
    f = random_morphism(rng, src, tgt)
    for _ in range(rng.randrange(3)):
        move = rng.choice(("pre", "post", "add", "transport"))
        if move == "pre":
            a = random_module(rng, ring, f.source.cardinality)
            f = compose(f, random_morphism(rng, a, f.source))
        elif move == "post":
            b = random_module(rng, ring, f.target.cardinality)
            f = compose(random_morphism(rng, f.target, b), f)
        elif move == "add":
            mid = random_projective(rng, ring, half)
            f = f + compose(random_morphism(rng, mid, f.target),
                            random_morphism(rng, f.source, mid))
        elif move == "transport" and is_surjective(f) and is_phantom(f):
            k, _ = kernel(f)
            if k.cardinality * 2 + f.source.cardinality <= budget:
                v = random_pure_mono_from(rng, k, max_extra_card=2)
                res = pushout_transport(f, v)
                if res.phi_prime.source.cardinality + res.phi_prime.target.cardinality <= budget:
                    f = res.phi_prime
    rep = RepA2.from_morphism(f)
    if not is_phantom(rep.f):
        raise InternalConsistencyError("sampler produced a non-phantom representation")
    return rep
