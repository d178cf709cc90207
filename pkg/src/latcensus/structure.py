"""Structural predicates and the glued-sum shape classifier.

The extremal subuniverse counts at size n are 2^n for chains, 26*2^(n-5) for
a B4 block glued between two chains, and 23*2^(n-5) for an N5 block glued
between two chains; ``classify`` detects those shapes and attaches the
predicted count.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Optional

from . import canon
from .core import Lattice, SizeLimit, mask_of, named, sublattice
from .subuniverse import _closed_masks

CHAIN = "Chain"
GLUED_B4 = "GluedB4"
GLUED_N5 = "GluedN5"
OTHER = "Other"

ENUM_LIMIT = 14  # characterization check enumerates all subuniverses


def is_chain(lat: Lattice) -> bool:
    full = lat.full_mask
    return all(lat.leq[i] | lat.geq[i] == full for i in range(lat.n))


def find_antichain(lat: Lattice, k: int) -> Optional[tuple[int, ...]]:
    """Lexicographically first k-element antichain, or None.

    Only k = 2 and k = 3 are supported; the count bounds need nothing wider.
    """
    if k not in (2, 3):
        raise ValueError(f"antichain size must be 2 or 3, got {k}")
    full = lat.full_mask
    comparable = [lat.leq[i] | lat.geq[i] for i in range(lat.n)]
    candidates = [i for i in range(lat.n) if comparable[i] != full]
    for combo in combinations(candidates, k):
        if all(
            not comparable[a] >> b & 1 for a, b in combinations(combo, 2)
        ):
            return combo
    return None


def join_irreducibles(lat: Lattice) -> tuple[int, ...]:
    """Elements with at most one lower cover; the bottom qualifies."""
    return tuple(u for u in range(lat.n) if len(lat.lower_covers[u]) <= 1)


def meet_irreducibles(lat: Lattice) -> tuple[int, ...]:
    """Elements with at most one upper cover; the top qualifies."""
    return tuple(u for u in range(lat.n) if len(lat.upper_covers[u]) <= 1)


def doubly_irreducibles(lat: Lattice) -> tuple[int, ...]:
    return tuple(
        u
        for u in range(lat.n)
        if len(lat.lower_covers[u]) <= 1 and len(lat.upper_covers[u]) <= 1
    )


def isolated_elements(lat: Lattice) -> tuple[int, ...]:
    """Doubly irreducible elements comparable to every element."""
    full = lat.full_mask
    return tuple(
        u for u in doubly_irreducibles(lat) if lat.leq[u] | lat.geq[u] == full
    )


def isolated_edges(lat: Lattice) -> tuple[tuple[int, int], ...]:
    """Cover pairs (u, v) whose ideal/filter union covers the whole lattice."""
    full = lat.full_mask
    return tuple(
        (u, v) for u, v in lat.covers if lat.geq[u] | lat.leq[v] == full
    )


def isolated_characterization_holds(lat: Lattice, u: int) -> bool:
    """Whether every subuniverse stays closed when u is added or removed.

    This property characterizes the isolated elements, which the census
    tests confirm exhaustively.
    """
    if lat.n > ENUM_LIMIT:
        raise SizeLimit(
            f"characterization check bounded at n <= {ENUM_LIMIT}, got {lat.n}"
        )
    lat._check(u)
    masks = set(_closed_masks(lat))
    bit = 1 << u
    return all(m | bit in masks and m & ~bit in masks for m in masks)


@dataclass(frozen=True)
class GluedDecomposition:
    """Ordered indecomposable blocks whose glued sum rebuilds the lattice.

    Cut elements (comparable to everything) are shared between adjacent
    blocks, so block sizes sum to n + number of interior cuts.
    """

    cuts: tuple[int, ...]
    blocks: tuple[Lattice, ...]


def decompose_glued_sum(lat: Lattice) -> GluedDecomposition:
    """Split at every cut element into maximal glued-sum blocks.

    Cut elements are exactly the indices comparable to all others; they are
    linearly ordered, every element lies between two consecutive cuts, and
    each block occupies a contiguous index range.
    """
    full = lat.full_mask
    cuts = tuple(
        x for x in range(lat.n) if lat.leq[x] | lat.geq[x] == full
    )
    blocks = []
    for lo, hi in zip(cuts, cuts[1:]):
        blocks.append(sublattice(lat, mask_of(range(lo, hi + 1))))
    return GluedDecomposition(cuts, tuple(blocks))


@dataclass(frozen=True)
class Classification:
    """Shape tag plus the witness decomposition and predicted count.

    ``prefix``/``suffix`` count the chain elements strictly below/above the
    core block; they are zero for Chain and Other.  ``predicted_count`` is
    2^n, 13*2^(n-4) or 23*2^(n-5) for the three named shapes, None for Other.
    """

    tag: str
    predicted_count: Optional[int]
    prefix: int = 0
    suffix: int = 0
    core: Optional[Lattice] = None


@lru_cache(maxsize=None)
def _named_form(name: str) -> bytes:
    return canon.canonical_form(named(name))


def classify(lat: Lattice) -> Classification:
    """Match the lattice against the three extremal-count shapes."""
    n = lat.n
    if is_chain(lat):
        return Classification(CHAIN, 1 << n)
    decomposition = decompose_glued_sum(lat)
    big = [b for b in decomposition.blocks if b.n > 2]
    if len(big) == 1:
        core = big[0]
        form = canon.canonical_form(core)
        # the core occupies a contiguous index range starting at its low cut
        lo = [c for c, b in zip(decomposition.cuts, decomposition.blocks) if b.n > 2][0]
        hi = lo + core.n - 1
        if form == _named_form("B4"):
            return Classification(
                GLUED_B4, 13 << (n - 4), prefix=lo, suffix=n - 1 - hi, core=core
            )
        if form == _named_form("N5"):
            return Classification(
                GLUED_N5, 23 << (n - 5), prefix=lo, suffix=n - 1 - hi, core=core
            )
    return Classification(OTHER, None)
