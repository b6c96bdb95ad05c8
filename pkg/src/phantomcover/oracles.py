"""Brute-force reference computations used by the verification suite and the
test oracles.  Everything here proceeds by enumeration or determinant
arithmetic and deliberately avoids the production algorithms it checks."""

from __future__ import annotations

from itertools import combinations, product
from math import gcd
from typing import Optional

from .exact_linalg import IntMatrix, determinant
from .finmod import FiniteModule, ModuleMorphism


def minor_gcd_diagonal(a: IntMatrix) -> tuple[int, ...]:
    """Smith diagonal from the minor-gcd formula: d_k is the gcd of all k x k
    minors divided by the gcd of all (k-1) x (k-1) minors."""
    limit = min(a.rows, a.cols)
    out = []
    prev = 1
    for k in range(1, limit + 1):
        g = 0
        for rows in combinations(range(a.rows), k):
            for cols in combinations(range(a.cols), k):
                sub = IntMatrix.from_rows(
                    [[a.at(i, j) for j in cols] for i in rows], cols=k)
                g = gcd(g, determinant(sub))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0 or prev == 0:
            out.append(0)
            prev = 0
        else:
            out.append(g // prev)
            prev = g
    return tuple(out)


def exhaustive_solve_mod(a: IntMatrix, b: list[int], n: int) -> Optional[list[int]]:
    """First solution of a @ x == b (mod n) in lexicographic order, or None."""
    for x in product(range(n), repeat=a.cols):
        if all(sum(a.at(i, j) * x[j] for j in range(a.cols)) % n == b[i] % n
               for i in range(a.rows)):
            return list(x)
    return None


def exhaustive_kernel_mod(a: IntMatrix, n: int) -> set[tuple[int, ...]]:
    return {
        x for x in product(range(n), repeat=a.cols)
        if all(sum(a.at(i, j) * x[j] for j in range(a.cols)) % n == 0
               for i in range(a.rows))
    }


def additive_closure_mod(gens: list[list[int]], dim: int, n: int) -> set[tuple[int, ...]]:
    """Subgroup of (Z/n)^dim generated by the given vectors."""
    seen = {(0,) * dim}
    frontier = [(0,) * dim]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple((a + b) % n for a, b in zip(x, g))
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def exhaustive_homs(m: FiniteModule, n: FiniteModule) -> list[ModuleMorphism]:
    """Every morphism m -> n, by direct enumeration of well-defined matrices.

    Valid (i, j) entries are exactly the multiples of e_i / gcd(d_j, e_i);
    the product of those choices walks the full hom set once.
    """
    choices = []
    for i, ei in enumerate(n.invariant_factors):
        for dj in m.invariant_factors:
            g = gcd(dj, ei)
            step = ei // g
            choices.append([step * c for c in range(g)])
    homs = []
    for flat in product(*choices):
        rows = []
        idx = 0
        for _ in range(n.rank):
            rows.append(tuple(flat[idx:idx + m.rank]))
            idx += m.rank
        homs.append(ModuleMorphism(m, n, tuple(rows)))
    return homs


def hom_count(m: FiniteModule, n: FiniteModule) -> int:
    total = 1
    for ei in n.invariant_factors:
        for dj in m.invariant_factors:
            total *= gcd(dj, ei)
    return total


def morphism_graph(f: ModuleMorphism) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """The literal set-of-pairs graph of f, for element-level comparisons."""
    return {(x, f.apply(x)) for x in f.source.elements()}
