"""Canonical forms for lattice isomorphism classes.

Order isomorphisms preserve height and cover degrees, so it is enough to
search relabelings whose index order refines the (height, #lower covers,
#upper covers) key.  Every such labeling is automatically a linear extension,
and the lexicographically smallest serialized cover list over the family is a
complete isomorphism invariant.
"""

from __future__ import annotations

from itertools import permutations, product

from .core import Lattice, SizeLimit, from_covers

CANON_LIMIT = 12  # permutation search bound


def canonical_form(lat: Lattice) -> bytes:
    """Relabel-invariant byte string identifying the isomorphism class.

    Layout: one byte for n followed by the relabeled cover pairs in sorted
    order, two bytes each.
    """
    n = lat.n
    if n > CANON_LIMIT:
        raise SizeLimit(f"canonical form bounded at n <= {CANON_LIMIT}, got {n}")
    key = [
        (lat.height[x], len(lat.lower_covers[x]), len(lat.upper_covers[x]))
        for x in range(n)
    ]
    classes: dict[tuple[int, int, int], list[int]] = {}
    for x in range(n):
        classes.setdefault(key[x], []).append(x)
    ordered = [classes[k] for k in sorted(classes)]

    covers = lat.covers
    prefix = bytes([n])
    best: bytes | None = None
    pos = [0] * n
    for combo in product(*(permutations(cls) for cls in ordered)):
        idx = 0
        for cls in combo:
            for x in cls:
                pos[x] = idx
                idx += 1
        pairs = sorted((pos[i], pos[j]) for i, j in covers)
        blob = prefix + bytes(b for pair in pairs for b in pair)
        if best is None or blob < best:
            best = blob
    assert best is not None
    return best


def canonical_lattice(form: bytes) -> Lattice:
    """Rebuild the canonically labeled representative from its form."""
    n = form[0]
    body = form[1:]
    pairs = [(body[k], body[k + 1]) for k in range(0, len(body), 2)]
    return from_covers(n, pairs)


def is_isomorphic(first: Lattice, second: Lattice) -> bool:
    """Order-isomorphism test via canonical form equality."""
    if first.n != second.n:
        return False
    return canonical_form(first) == canonical_form(second)
