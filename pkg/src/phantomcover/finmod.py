"""Finite Z/n-modules: objects, morphisms, homs, (co)kernels, pushouts,
finite directed colimits, projectivity, purity and summand tests.

A module is kept in canonical invariant-factor form d1 | d2 | ... | dk with
every di dividing the ring modulus, so isomorphism testing is list equality.
Elements are coordinate tuples, one coordinate per invariant factor.
All values are immutable and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as _iterproduct
from math import gcd, prod
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    IllDefinedMorphismError,
    InputError,
    InternalConsistencyError,
)
from .exact_linalg import (
    IntMatrix,
    integer_kernel_basis,
    smith_normal_form,
    solve_mod,
    solve_z,
)


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n as ((p, e), ...), ascending primes."""
    out = []
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1
    if m > 1:
        out.append((m, 1))
    return tuple(out)


@dataclass(frozen=True)
class Ring:
    """The coefficient ring Z/nZ."""

    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise InputError("ring modulus must be >= 2")

    @property
    def factorization(self) -> dict[int, int]:
        return dict(factorize(self.modulus))

    def divisors(self) -> tuple[int, ...]:
        n = self.modulus
        return tuple(d for d in range(1, n + 1) if n % d == 0)

    def is_semisimple(self) -> bool:
        """True iff the modulus is squarefree (then every module is projective)."""
        return all(e == 1 for e in self.factorization.values())

    def __str__(self):
        return f"Z/{self.modulus}"


@dataclass(frozen=True)
class FiniteModule:
    """A finite Z/n-module in invariant-factor form, the direct sum of
    Z/d_i with d1 | d2 | ... | dk.  The zero module has an empty factor list."""

    ring: Ring
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        n = self.ring.modulus
        prev = None
        for d in self.invariant_factors:
            if d < 2 or n % d != 0:
                raise InputError(f"invariant factor {d} invalid over {self.ring}")
            if prev is not None and d % prev != 0:
                raise InputError("invariant factors must form a divisibility chain")
            prev = d

    @classmethod
    def zero(cls, ring: Ring) -> "FiniteModule":
        return cls(ring, ())

    @classmethod
    def cyclic(cls, ring: Ring, d: int) -> "FiniteModule":
        if d == 1:
            return cls.zero(ring)
        return cls(ring, (d,))

    @classmethod
    def free(cls, ring: Ring, k: int) -> "FiniteModule":
        return cls(ring, (ring.modulus,) * k)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def cardinality(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_zero(self) -> bool:
        return not self.invariant_factors

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.rank:
            raise InputError("element has wrong coordinate count")
        return tuple(int(x) % d for x, d in zip(vec, self.invariant_factors))

    def zero_element(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def sub(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return tuple((a - b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def smul(self, c: int, x: Sequence[int]) -> tuple[int, ...]:
        return tuple((c * a) % d for a, d in zip(x, self.invariant_factors))

    def generator(self, j: int) -> tuple[int, ...]:
        return tuple(1 if i == j else 0 for i in range(self.rank))

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All elements in lexicographic coordinate order."""
        return _iterproduct(*(range(d) for d in self.invariant_factors))

    def __str__(self):
        if self.is_zero:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class ModuleMorphism:
    """A morphism between finite modules, given by an integer matrix whose
    column j is the image of source generator j.  Entries are stored reduced
    mod the target invariant factors, so equality is matrix equality."""

    source: FiniteModule
    target: FiniteModule
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise InputError("source and target live over different rings")
        tfac = self.target.invariant_factors
        sfac = self.source.invariant_factors
        if len(self.matrix) != len(tfac):
            raise InputError("matrix row count must equal target rank")
        reduced = []
        for i, row in enumerate(self.matrix):
            if len(row) != len(sfac):
                raise InputError("matrix column count must equal source rank")
            di = tfac[i]
            red = tuple(int(a) % di for a in row)
            for j, a in enumerate(red):
                if (a * sfac[j]) % di != 0:
                    raise IllDefinedMorphismError(i, j, di, sfac[j], a)
            reduced.append(red)
        object.__setattr__(self, "matrix", tuple(reduced))

    @classmethod
    def identity(cls, m: FiniteModule) -> "ModuleMorphism":
        k = m.rank
        return cls(m, m, tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k)))

    @classmethod
    def zero_map(cls, source: FiniteModule, target: FiniteModule) -> "ModuleMorphism":
        return cls(source, target, tuple((0,) * source.rank for _ in range(target.rank)))

    @classmethod
    def from_columns(cls, source: FiniteModule, target: FiniteModule,
                     columns: Sequence[Sequence[int]]) -> "ModuleMorphism":
        rows = tuple(tuple(col[i] for col in columns) for i in range(target.rank))
        return cls(source, target, rows)

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.source.rank:
            raise InputError("element has wrong coordinate count")
        tfac = self.target.invariant_factors
        return tuple(
            sum(row[j] * x[j] for j in range(self.source.rank)) % tfac[i]
            for i, row in enumerate(self.matrix)
        )

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.matrix)

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for row in self.matrix for a in row)

    def __add__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        if self.source != other.source or self.target != other.target:
            raise InputError("morphism sum needs matching source and target")
        return ModuleMorphism(self.source, self.target, tuple(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.matrix, other.matrix)))

    def __neg__(self) -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target,
                              tuple(tuple(-a for a in row) for row in self.matrix))

    def __sub__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return self + (-other)


def compose(g: ModuleMorphism, f: ModuleMorphism) -> ModuleMorphism:
    """g after f.  Matrix product reduced mod the target invariant factors."""
    if f.target != g.source:
        raise InputError("compose: domain mismatch")
    rows = []
    for i in range(g.target.rank):
        grow = g.matrix[i]
        rows.append(tuple(
            sum(grow[k] * f.matrix[k][j] for k in range(f.target.rank))
            for j in range(f.source.rank)))
    return ModuleMorphism(f.source, g.target, tuple(rows))


def hom_group(m: FiniteModule, n: FiniteModule) -> tuple[ModuleMorphism, ...]:
    """Generators of Hom(m, n) as an abelian group.

    Hom splits entrywise: the (i, j) slot is cyclic of order gcd(d_j, e_i),
    generated by the single-entry matrix with e_i / gcd(d_j, e_i) at (i, j).
    """
    if m.ring != n.ring:
        raise InputError("hom_group: ring mismatch")
    gens = []
    for i, ei in enumerate(n.invariant_factors):
        for j, dj in enumerate(m.invariant_factors):
            g = gcd(dj, ei)
            if g > 1:
                rows = [[0] * m.rank for _ in range(n.rank)]
                rows[i][j] = ei // g
                gens.append(ModuleMorphism(m, n, tuple(tuple(r) for r in rows)))
    return tuple(gens)


def hom_generator_order(f: ModuleMorphism) -> int:
    """Additive order of a morphism inside Hom(source, target)."""
    order = 1
    for i, ei in enumerate(f.target.invariant_factors):
        for a in f.matrix[i]:
            if a:
                order = order * (ei // gcd(a, ei)) // gcd(order, ei // gcd(a, ei))
    return order


# ---------------------------------------------------------------------------
# scaled congruence systems
#
# Constraints "x = y (mod d)" with d | n are encoded as "(n/d) x = (n/d) y
# (mod n)", so a single solver over Z/n handles mixed per-coordinate moduli.
# ---------------------------------------------------------------------------

def _element_system(mod: FiniteModule, columns: Sequence[Sequence[int]],
                    rhs: Sequence[int]) -> tuple[IntMatrix, list[int]]:
    n = mod.ring.modulus
    rows = []
    b = []
    for i, di in enumerate(mod.invariant_factors):
        s = n // di
        rows.append([s * col[i] for col in columns])
        b.append(s * rhs[i])
    return IntMatrix.from_rows(rows, cols=len(columns)), b


def element_preimage(f: ModuleMorphism, y: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Some x with f(x) == y, or None."""
    y = f.target.reduce(y)
    if f.source.rank == 0:
        return () if all(c == 0 for c in y) else None
    if f.target.rank == 0:
        return f.source.zero_element()
    cols = [f.column(j) for j in range(f.source.rank)]
    a, b = _element_system(f.target, cols, y)
    sol = solve_mod(a, b, f.source.ring.modulus)
    if sol is None:
        return None
    return f.source.reduce(sol)


@dataclass(frozen=True)
class Submodule:
    """A submodule of a fixed ambient module, given by a generating set."""

    ambient: FiniteModule
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "generators",
            tuple(self.ambient.reduce(g) for g in self.generators))

    @classmethod
    def zero(cls, ambient: FiniteModule) -> "Submodule":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: FiniteModule) -> "Submodule":
        return cls(ambient, tuple(ambient.generator(j) for j in range(ambient.rank)))

    def contains(self, x: Sequence[int]) -> bool:
        x = self.ambient.reduce(x)
        if self.ambient.rank == 0:
            return True
        if not self.generators:
            return all(c == 0 for c in x)
        a, b = _element_system(self.ambient, self.generators, x)
        return solve_mod(a, b, self.ambient.ring.modulus) is not None

    def contains_submodule(self, other: "Submodule") -> bool:
        return all(self.contains(g) for g in other.generators)

    def join(self, extra: Iterable[Sequence[int]]) -> "Submodule":
        return Submodule(self.ambient, self.generators + tuple(tuple(g) for g in extra))

    def image_under(self, f: ModuleMorphism) -> "Submodule":
        if f.source != self.ambient:
            raise InputError("image_under: morphism source must be the ambient module")
        return Submodule(f.target, tuple(f.apply(g) for g in self.generators))

    def presentation(self) -> tuple[FiniteModule, ModuleMorphism]:
        return subgroup_presentation(self)

    @property
    def cardinality(self) -> int:
        return self.presentation()[0].cardinality

    def elements(self) -> frozenset[tuple[int, ...]]:
        return _subgroup_elements(self)

    @property
    def is_full(self) -> bool:
        return self.cardinality == self.ambient.cardinality


@lru_cache(maxsize=None)
def _subgroup_elements(sub: Submodule) -> frozenset[tuple[int, ...]]:
    amb = sub.ambient
    seen = {amb.zero_element()}
    frontier = [amb.zero_element()]
    while frontier:
        x = frontier.pop()
        for g in sub.generators:
            y = amb.add(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def same_subgroup(a: Submodule, b: Submodule) -> bool:
    if a.ambient != b.ambient:
        raise InputError("same_subgroup: ambient modules differ")
    return a.contains_submodule(b) and b.contains_submodule(a)


# ---------------------------------------------------------------------------
# canonical presentations from relation lattices
# ---------------------------------------------------------------------------

def _quotient_structure(ncoords: int, relations: Sequence[Sequence[int]]):
    """Canonical data for Z^ncoords / <relations>.

    Returns (factors, proj_rows, lift_cols): `factors` are the nontrivial
    invariant factors, `proj_rows[k]` expresses canonical generator k in the
    ambient coordinates, and `lift_cols[k]` is an integer preimage of it.
    The quotient must be finite (callers include ambient relations).
    """
    w = IntMatrix.from_columns([list(c) for c in relations], rows=ncoords)
    s = smith_normal_form(w)
    diag = s.diagonal()
    factors = []
    kept = []
    for i in range(ncoords):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            raise InternalConsistencyError("relation lattice does not have full rank")
        if di != 1:
            kept.append(i)
            factors.append(di)
    proj_rows = [
        tuple(s.u.at(i, j) % factors[k] for j in range(ncoords))
        for k, i in enumerate(kept)
    ]
    lift_cols = [tuple(s.u_inv.at(r, i) for r in range(ncoords)) for i in kept]
    return tuple(factors), proj_rows, lift_cols


@dataclass(frozen=True)
class QuotientData:
    """A canonical quotient together with integer lifts of its generators."""

    module: FiniteModule
    projection: ModuleMorphism
    lifts: tuple[tuple[int, ...], ...]

    def lift_element(self, k: int) -> tuple[int, ...]:
        return self.projection.source.reduce(self.lifts[k])


def quotient_by(ambient: FiniteModule, generators: Sequence[Sequence[int]]) -> QuotientData:
    """ambient / <generators> in canonical form with projection and lifts."""
    rels = [list(ambient.reduce(g)) for g in generators]
    for j, d in enumerate(ambient.invariant_factors):
        rels.append([d if i == j else 0 for i in range(ambient.rank)])
    factors, proj_rows, lift_cols = _quotient_structure(ambient.rank, rels)
    q = FiniteModule(ambient.ring, factors)
    projection = ModuleMorphism(ambient, q, tuple(proj_rows))
    return QuotientData(q, projection, tuple(lift_cols))


def cokernel(f: ModuleMorphism) -> tuple[FiniteModule, ModuleMorphism]:
    """Cokernel with its projection, target / image(f) in canonical form."""
    qd = quotient_by(f.target, [f.column(j) for j in range(f.source.rank)])
    return qd.module, qd.projection


def subgroup_presentation(sub: Submodule) -> tuple[FiniteModule, ModuleMorphism]:
    return _subgroup_presentation_cached(sub)


@lru_cache(maxsize=None)
def _subgroup_presentation_cached(sub: Submodule) -> tuple[FiniteModule, ModuleMorphism]:
    """Canonical form of a generated subgroup with an injective embedding.

    Works with the preimage lattice L = <generators> + <relations> of Z^t:
    a basis B of L is read off the Smith form of the combined generator
    matrix, the relation lattice is rewritten in that basis, and a second
    Smith form canonicalizes the quotient L / relations.
    """
    amb = sub.ambient
    t = amb.rank
    ring = amb.ring
    if t == 0:
        zero = FiniteModule.zero(ring)
        return zero, ModuleMorphism.zero_map(zero, amb)
    d = amb.invariant_factors
    cols = [list(g) for g in sub.generators]
    for j in range(t):
        cols.append([d[j] if i == j else 0 for i in range(t)])
    s1 = smith_normal_form(IntMatrix.from_columns(cols, rows=t))
    diag1 = s1.diagonal()[:t]
    if any(x == 0 for x in diag1):
        raise InternalConsistencyError("subgroup lattice lost full rank")
    # relation lattice in the basis B = u_inv * diag1
    c_rows = []
    for k in range(t):
        row = []
        for j in range(t):
            num = s1.u.at(k, j) * d[j]
            if num % diag1[k] != 0:
                raise InternalConsistencyError("relation lattice escapes subgroup lattice")
            row.append(num // diag1[k])
        c_rows.append(row)
    s2 = smith_normal_form(IntMatrix.from_rows(c_rows, cols=t))
    diag2 = s2.diagonal()
    kept = [k for k in range(t) if diag2[k] != 1]
    if any(diag2[k] == 0 for k in kept):
        raise InternalConsistencyError("subgroup presentation is not finite")
    factors = tuple(diag2[k] for k in kept)
    module = FiniteModule(ring, factors)
    # embedding columns: B @ u2_inv restricted to the kept indices
    emb_cols = []
    for k in kept:
        col = []
        for i in range(t):
            col.append(sum(s1.u_inv.at(i, l) * diag1[l] * s2.u_inv.at(l, k) for l in range(t)))
        emb_cols.append(amb.reduce(col))
    emb = ModuleMorphism.from_columns(module, amb, emb_cols)
    expected = prod(d) // prod(diag1)
    if module.cardinality != expected:
        raise InternalConsistencyError("subgroup presentation has wrong cardinality")
    return module, emb


def kernel(f: ModuleMorphism) -> tuple[FiniteModule, ModuleMorphism]:
    """Kernel in canonical form with an injective embedding into the source."""
    return _kernel_cached(f)


@lru_cache(maxsize=None)
def _kernel_cached(f: ModuleMorphism) -> tuple[FiniteModule, ModuleMorphism]:
    src, tgt = f.source, f.target
    if src.rank == 0:
        zero = FiniteModule.zero(src.ring)
        return zero, ModuleMorphism.zero_map(zero, src)
    if tgt.rank == 0:
        return subgroup_presentation(Submodule.full(src))
    rows = [list(f.matrix[i]) for i in range(tgt.rank)]
    w = IntMatrix.from_rows(rows, cols=src.rank).hstack(
        IntMatrix.from_diagonal(list(tgt.invariant_factors)))
    gens = []
    for vec in integer_kernel_basis(w):
        g = src.reduce(vec[:src.rank])
        if any(g):
            gens.append(g)
    return subgroup_presentation(Submodule(src, tuple(gens)))


def kernel_submodule(f: ModuleMorphism) -> Submodule:
    k, emb = kernel(f)
    return Submodule(f.source, tuple(emb.column(j) for j in range(k.rank)))


def image_submodule(f: ModuleMorphism) -> Submodule:
    return Submodule(f.target, tuple(f.column(j) for j in range(f.source.rank)))


def is_injective(f: ModuleMorphism) -> bool:
    return kernel(f)[0].is_zero


def is_surjective(f: ModuleMorphism) -> bool:
    return cokernel(f)[0].is_zero


def is_automorphism(f: ModuleMorphism) -> bool:
    return (f.source.invariant_factors == f.target.invariant_factors
            and is_injective(f))


# ---------------------------------------------------------------------------
# factorization solvers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _lift_column(g: ModuleMorphism, dq: int, y: tuple[int, ...]) -> Optional[tuple[int, ...]]:
    """Some x in g.source with g(x) == y and dq * x == 0, or None.

    Cached: probe sweeps re-solve the same (morphism, order, column) triples
    constantly.
    """
    n = g.source.ring.modulus
    p_fac = g.source.invariant_factors
    pr = g.source.rank
    rows = []
    rhs = []
    for i, ei in enumerate(g.target.invariant_factors):
        s = n // ei
        rows.append([s * g.matrix[i][p] for p in range(pr)])
        rhs.append(s * y[i])
    for p, dp in enumerate(p_fac):
        s = (n // dp) * dq
        rows.append([s if pp == p else 0 for pp in range(pr)])
        rhs.append(0)
    sol = solve_mod(IntMatrix.from_rows(rows, cols=pr), rhs, n)
    if sol is None:
        return None
    return g.source.reduce(sol)


def solve_left_factor(g: ModuleMorphism, psi: ModuleMorphism) -> Optional[ModuleMorphism]:
    """Some j with g o j == psi, or None.  Columns are independent, so each
    source generator of psi is lifted by its own small modular system."""
    if g.target != psi.target:
        raise InputError("solve_left_factor: targets differ")
    if g.source.ring != psi.source.ring:
        raise InputError("solve_left_factor: ring mismatch")
    cols = []
    for q in range(psi.source.rank):
        sol = _lift_column(g, psi.source.invariant_factors[q], psi.column(q))
        if sol is None:
            return None
        cols.append(sol)
    j = ModuleMorphism.from_columns(psi.source, g.source, cols)
    if compose(g, j) != psi:
        raise InternalConsistencyError("left-factor solver returned a non-solution")
    return j


@lru_cache(maxsize=None)
def _kernel_column_gens(g: ModuleMorphism, dq: int) -> tuple[tuple[int, ...], ...]:
    from .exact_linalg import solution_space_mod

    n = g.source.ring.modulus
    p_fac = g.source.invariant_factors
    pr = g.source.rank
    rows = []
    for i, ei in enumerate(g.target.invariant_factors):
        s = n // ei
        rows.append([s * g.matrix[i][p] for p in range(pr)])
    for p, dp in enumerate(p_fac):
        s = (n // dp) * dq
        rows.append([s if pp == p else 0 for pp in range(pr)])
    gens = solution_space_mod(IntMatrix.from_rows(rows, cols=pr), n)
    return tuple(g.source.reduce(v) for v in gens)


def left_factor_kernel_columns(g: ModuleMorphism, source: FiniteModule) -> list[list[tuple[int, ...]]]:
    """Per-column generating sets for {j : source -> g.source with g o j == 0}.

    Column q of such a j ranges over a subgroup of g.source; the returned
    list gives generators of that subgroup for each q.
    """
    return [list(_kernel_column_gens(g, source.invariant_factors[q]))
            for q in range(source.rank)]


def invert_automorphism(j: ModuleMorphism) -> ModuleMorphism:
    inv = solve_left_factor(j, ModuleMorphism.identity(j.target))
    if inv is None or compose(inv, j) != ModuleMorphism.identity(j.source):
        raise InternalConsistencyError("morphism is not invertible")
    return inv


# ---------------------------------------------------------------------------
# direct sums, pushouts, colimits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectSum:
    module: FiniteModule
    injections: tuple[ModuleMorphism, ...]
    projections: tuple[ModuleMorphism, ...]


def direct_sum(summands: Sequence[FiniteModule]) -> DirectSum:
    """Canonical biproduct with injections and projections."""
    if not summands:
        raise InputError("direct_sum needs at least one summand")
    ring = summands[0].ring
    if any(m.ring != ring for m in summands):
        raise InputError("direct_sum: ring mismatch")
    concat = [d for m in summands for d in m.invariant_factors]
    total = len(concat)
    rels = [[concat[j] if i == j else 0 for i in range(total)] for j in range(total)]
    factors, proj_rows, lift_cols = _quotient_structure(total, rels)
    module = FiniteModule(ring, factors)
    injections = []
    projections = []
    off = 0
    for m in summands:
        inj_cols = [
            [proj_rows[k][off + q] for k in range(module.rank)]
            for q in range(m.rank)
        ]
        injections.append(ModuleMorphism.from_columns(m, module, inj_cols))
        proj_cols = [
            [lift_cols[k][off + q] for q in range(m.rank)]
            for k in range(module.rank)
        ]
        projections.append(ModuleMorphism.from_columns(module, m, proj_cols))
        off += m.rank
    return DirectSum(module, tuple(injections), tuple(projections))


@dataclass(frozen=True)
class Pushout:
    """Pushout of u: K -> M and v: K -> K' with the two structural maps."""

    module: FiniteModule
    u_prime: ModuleMorphism  # from v.target
    v_prime: ModuleMorphism  # from u.target
    u: ModuleMorphism
    v: ModuleMorphism
    _sum: DirectSum
    _quotient: QuotientData


def pushout(u: ModuleMorphism, v: ModuleMorphism) -> Pushout:
    """Pushout computed as the cokernel of (v, -u): K -> K' + M."""
    if u.source != v.source:
        raise InputError("pushout: the two morphisms must share their source")
    ds = direct_sum((v.target, u.target))
    w = compose(ds.injections[0], v) - compose(ds.injections[1], u)
    qd = quotient_by(ds.module, [w.column(j) for j in range(w.source.rank)])
    u_prime = compose(qd.projection, ds.injections[0])
    v_prime = compose(qd.projection, ds.injections[1])
    if compose(u_prime, v) != compose(v_prime, u):
        raise InternalConsistencyError("pushout square does not commute")
    return Pushout(qd.module, u_prime, v_prime, u, v, ds, qd)


def pushout_mediating(po: Pushout, a: ModuleMorphism, b: ModuleMorphism) -> ModuleMorphism:
    """The unique m with m o u' == a and m o v' == b, for a commuting cone."""
    if a.source != po.v.target or b.source != po.u.target or a.target != b.target:
        raise InputError("pushout_mediating: cone legs have wrong endpoints")
    if compose(a, po.v) != compose(b, po.u):
        raise InputError("pushout_mediating: cone does not commute")
    c = compose(a, po._sum.projections[0]) + compose(b, po._sum.projections[1])
    cols = [c.apply(po._quotient.lift_element(k)) for k in range(po.module.rank)]
    m = ModuleMorphism.from_columns(po.module, a.target, cols)
    if compose(m, po.u_prime) != a or compose(m, po.v_prime) != b:
        raise InternalConsistencyError("mediating morphism failed its equations")
    return m


@dataclass
class Diagram:
    """A finite directed poset of modules with compatible transition maps.

    `maps[(i, j)]` is the transition M_i -> M_j for i <= j; identities are
    implicit and composites must be present and consistent.
    """

    objects: dict[str, FiniteModule]
    maps: dict[tuple[str, str], ModuleMorphism]

    def validate(self) -> None:
        for (i, j), f in self.maps.items():
            if i not in self.objects or j not in self.objects:
                raise InputError(f"transition ({i}, {j}) references unknown object")
            if f.source != self.objects[i] or f.target != self.objects[j]:
                raise InputError(f"transition ({i}, {j}) has wrong endpoints")
            if i == j and f != ModuleMorphism.identity(self.objects[i]):
                raise InputError(f"loop at {i} must be the identity")
        le = {(i, i) for i in self.objects} | {k for k in self.maps if k[0] != k[1]}
        for (i, j) in sorted(le):
            for (j2, k) in sorted(le):
                if j == j2 and (i, k) not in le and i != k:
                    raise InputError(f"poset not transitively closed at ({i}, {j}, {k})")
                if j == j2 and i != j and j != k and i != k:
                    left = compose(self._map(j, k), self._map(i, j))
                    if left != self._map(i, k):
                        raise InputError(f"non-functorial diagram at ({i}, {j}, {k})")
        names = sorted(self.objects)
        for a in names:
            for b in names:
                if not any((a == c or (a, c) in le) and (b == c or (b, c) in le)
                           for c in names):
                    raise InputError(f"objects {a}, {b} have no upper bound")

    def _map(self, i: str, j: str) -> ModuleMorphism:
        if i == j:
            return ModuleMorphism.identity(self.objects[i])
        return self.maps[(i, j)]

    @classmethod
    def chain(cls, modules: Sequence[FiniteModule],
              steps: Sequence[ModuleMorphism]) -> "Diagram":
        """Linear diagram M_0 -> M_1 -> ... with composite transitions filled in."""
        if len(steps) != len(modules) - 1:
            raise InputError("chain needs one step fewer than objects")
        names = [f"n{i}" for i in range(len(modules))]
        objects = dict(zip(names, modules))
        maps: dict[tuple[str, str], ModuleMorphism] = {}
        for i in range(len(modules)):
            acc = None
            for j in range(i + 1, len(modules)):
                acc = steps[j - 1] if acc is None else compose(steps[j - 1], acc)
                maps[(names[i], names[j])] = acc
        return cls(objects, maps)


@dataclass(frozen=True)
class Colimit:
    module: FiniteModule
    structural: dict[str, ModuleMorphism]
    _sum: DirectSum
    _quotient: QuotientData
    _order: tuple[str, ...]


def directed_colimit(diagram: Diagram) -> Colimit:
    """Colimit as the direct sum of all objects modulo the gluing relations
    (x at i) - (g_ij(x) at j), with the structural maps."""
    diagram.validate()
    names = sorted(diagram.objects)
    ds = direct_sum([diagram.objects[nm] for nm in names])
    inj = dict(zip(names, ds.injections))
    s = ds.module
    rels = []
    for (i, j) in sorted(diagram.maps):
        if i == j:
            continue
        g = diagram.maps[(i, j)]
        for q in range(diagram.objects[i].rank):
            left = inj[i].column(q)
            right = inj[j].apply(g.column(q))
            rels.append(s.sub(left, right))
    qd = quotient_by(s, rels)
    structural = {nm: compose(qd.projection, inj[nm]) for nm in names}
    for (i, j), g in diagram.maps.items():
        if compose(structural[j], g) != structural[i]:
            raise InternalConsistencyError("colimit structural maps do not commute")
    return Colimit(qd.module, structural, ds, qd, tuple(names))


def colimit_mediating(colim: Colimit, cone: dict[str, ModuleMorphism]) -> ModuleMorphism:
    """The unique morphism out of the colimit agreeing with a commuting cone."""
    if set(cone) != set(colim._order):
        raise InputError("colimit_mediating: cone must cover every object")
    targets = {f.target for f in cone.values()}
    if len(targets) != 1:
        raise InputError("colimit_mediating: cone legs must share a target")
    target = next(iter(targets))
    c = None
    for idx, nm in enumerate(colim._order):
        leg = compose(cone[nm], colim._sum.projections[idx])
        c = leg if c is None else c + leg
    cols = [c.apply(colim._quotient.lift_element(k)) for k in range(colim.module.rank)]
    m = ModuleMorphism.from_columns(colim.module, target, cols)
    for nm in colim._order:
        if compose(m, colim.structural[nm]) != cone[nm]:
            raise InputError("colimit_mediating: cone does not commute with the diagram")
    return m


# ---------------------------------------------------------------------------
# projectivity, purity, summands
# ---------------------------------------------------------------------------

def is_projective(m: FiniteModule) -> bool:
    """Over Z/n the projectives are sums of the full local factors Z/p^(k_p):
    every prime dividing an invariant factor must appear with full multiplicity."""
    full = m.ring.factorization
    for d in m.invariant_factors:
        for p, e in factorize(d):
            if e != full[p]:
                return False
    return True


def indecomposable_projectives(ring: Ring) -> tuple[FiniteModule, ...]:
    return tuple(FiniteModule.cyclic(ring, p ** e)
                 for p, e in sorted(ring.factorization.items()))


def _lattice_intersection(cols1: list[list[int]], cols2: list[list[int]],
                          dim: int) -> list[list[int]]:
    """Generators of the intersection of two integer column lattices."""
    combined = [list(c) for c in cols1] + [[-x for x in c] for c in cols2]
    w = IntMatrix.from_columns(combined, rows=dim)
    out = []
    for vec in integer_kernel_basis(w):
        g = [sum(cols1[k][i] * vec[k] for k in range(len(cols1))) for i in range(dim)]
        if any(g):
            out.append(g)
    return out


def _sub_lattice_columns(sub: Submodule) -> list[list[int]]:
    amb = sub.ambient
    cols = [list(g) for g in sub.generators]
    for j, d in enumerate(amb.invariant_factors):
        cols.append([d if i == j else 0 for i in range(amb.rank)])
    return cols


def is_pure_submodule(sub: Submodule) -> bool:
    """Bounded-exponent purity: S meets d*M in d*S for every divisor d of n.

    Decided exactly on the preimage lattices; for each divisor the
    intersection lattice is computed and tested for containment in d*S.
    """
    amb = sub.ambient
    t = amb.rank
    if t == 0:
        return True
    n = amb.ring.modulus
    ls = _sub_lattice_columns(sub)
    for d in amb.ring.divisors():
        if d == 1:
            continue
        ldm = [[gcd(d, amb.invariant_factors[j]) if i == j else 0 for i in range(t)]
               for j in range(t)]
        lds_cols = [[d * x for x in g] for g in sub.generators]
        for j, dd in enumerate(amb.invariant_factors):
            lds_cols.append([dd if i == j else 0 for i in range(t)])
        lds = IntMatrix.from_columns(lds_cols, rows=t)
        for vec in _lattice_intersection(ls, ldm, t):
            if solve_z(lds, vec) is None:
                return False
    return True


def is_direct_summand(sub: Submodule) -> Optional[ModuleMorphism]:
    """A retraction r with r o embedding == id onto the canonical presentation
    of the submodule, or None.  Rows of r are solved independently."""
    amb = sub.ambient
    k, emb = sub.presentation()
    if k.rank == 0:
        return ModuleMorphism.zero_map(amb, k)
    n = amb.ring.modulus
    t = amb.rank
    rows_out = []
    for i, ki in enumerate(k.invariant_factors):
        s = n // ki
        rows = []
        rhs = []
        for l in range(k.rank):
            rows.append([s * emb.matrix[q][l] for q in range(t)])
            rhs.append(s * (1 if l == i else 0))
        for q, dq in enumerate(amb.invariant_factors):
            rows.append([s * dq if qq == q else 0 for qq in range(t)])
            rhs.append(0)
        sol = solve_mod(IntMatrix.from_rows(rows, cols=t), rhs, n)
        if sol is None:
            return None
        rows_out.append(sol)
    r = ModuleMorphism(amb, k, tuple(tuple(row) for row in rows_out))
    if compose(r, emb) != ModuleMorphism.identity(k):
        raise InternalConsistencyError("retraction failed its defining equation")
    return r


def multiplication_map(m: FiniteModule, d: int) -> ModuleMorphism:
    """Multiplication by the scalar d as an endomorphism."""
    return ModuleMorphism(m, m, tuple(
        tuple(d if i == j else 0 for j in range(m.rank)) for i in range(m.rank)))


def pure_closure(sub: Submodule) -> Submodule:
    """A pure submodule containing the given one; see pure_closure_counted."""
    return pure_closure_counted(sub)[0]


def pure_closure_counted(sub: Submodule) -> tuple[Submodule, int]:
    """Deterministic purification: scan divisors in ascending order for a
    witness s in (S meet d*M) \\ d*S, adjoin the lexicographically lowest
    preimage m with d*m == s, repeat.  Terminates by strict growth.

    Returns the purified submodule and the number of adjoined witnesses.
    """
    amb = sub.ambient
    t = amb.rank
    if t == 0:
        return sub, 0
    n = amb.ring.modulus
    cur = sub
    witnesses = 0
    while True:
        found = None
        ls = _sub_lattice_columns(cur)
        for d in amb.ring.divisors():
            if d == 1:
                continue
            ldm = [[gcd(d, amb.invariant_factors[j]) if i == j else 0 for i in range(t)]
                   for j in range(t)]
            inter = _lattice_intersection(ls, ldm, t)
            inter_sub = Submodule(amb, tuple(amb.reduce(v) for v in inter))
            ds_sub = Submodule(amb, tuple(amb.smul(d, g) for g in cur.generators))
            for s_elt in sorted(inter_sub.elements()):
                if not ds_sub.contains(s_elt):
                    found = (d, s_elt)
                    break
            if found is not None:
                break
        if found is None:
            return cur, witnesses
        d, s_elt = found
        mult = multiplication_map(amb, d)
        m0 = element_preimage(mult, s_elt)
        if m0 is None:
            raise InternalConsistencyError("witness has no preimage under multiplication")
        ker = kernel_submodule(mult)
        best = min(amb.add(m0, z) for z in ker.elements())
        cur = cur.join([best])
        witnesses += 1
