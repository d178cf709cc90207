"""Independent brute-force oracles used only by the tests.

These deliberately avoid the library's optimized code paths: the lattice
class oracle scans every order matrix instead of augmenting, closures are
recomputed from scratch, and random relabelings build permutations straight
from the cover relation.
"""

from __future__ import annotations

import random

from latcensus.canon import canonical_form
from latcensus.core import Lattice, NotALattice, NotAPoset, from_covers, from_order_matrix


def lattice_class_forms_bruteforce(n: int) -> set[bytes]:
    """Canonical forms of all n-element lattice classes, by scanning every
    reflexive upper-triangular relation, filtering posets and lattices."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    forms: set[bytes] = set()
    for choice in range(1 << len(pairs)):
        up = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if choice >> k & 1:
                up[i] |= 1 << j
        try:
            lat = from_order_matrix(n, up)
        except (NotAPoset, NotALattice):
            continue
        forms.add(canonical_form(lat))
    return forms


def random_relabeling(lat: Lattice, rng: random.Random) -> Lattice:
    """Rebuild the lattice under a random linear-extension relabeling."""
    remaining = set(range(lat.n))
    new_index = {}
    below = {x: set(lat.lower_covers[x]) for x in range(lat.n)}
    k = 0
    while remaining:
        ready = sorted(x for x in remaining if not below[x] & remaining)
        x = rng.choice(ready)
        new_index[x] = k
        k += 1
        remaining.remove(x)
    pairs = [(new_index[i], new_index[j]) for i, j in lat.covers]
    return from_covers(lat.n, pairs)


def closure_bruteforce(lat: Lattice, seed: set[int]) -> set[int]:
    """Fixed-point closure under join and meet, on plain sets."""
    out = set(seed)
    changed = True
    while changed:
        changed = False
        for a in list(out):
            for b in list(out):
                for c in (lat.join(a, b), lat.meet(a, b)):
                    if c not in out:
                        out.add(c)
                        changed = True
    return out


ATOM_SIZES = [
    ("C1", 1),
    ("C2", 2),
    ("C3", 3),
    ("C4", 4),
    ("C5", 5),
    ("B4", 4),
    ("N5", 5),
    ("M3", 5),
]


def random_expression(rng: random.Random, max_size: int) -> str:
    """A random lattice expression whose value has at most max_size elements."""

    def build(budget: int, depth: int) -> tuple[str, int]:
        choices = [a for a in ATOM_SIZES if a[1] <= budget]
        if budget < 4 or depth >= 4 or rng.random() < 0.4:
            return rng.choice(choices)
        if rng.random() < 0.6:
            left, ls = build(budget - 1, depth + 1)
            right, rs = build(budget - ls, depth + 1)
            return f"({left}+{right})", ls + rs - 1
        left, ls = build(budget // 2, depth + 1)
        right, rs = build(max(1, budget // max(ls, 2)), depth + 1)
        if ls * rs > budget:
            return left, ls
        return f"({left}x{right})", ls * rs

    return build(max_size, 0)[0]
