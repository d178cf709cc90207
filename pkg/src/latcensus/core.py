"""Finite bounded lattices with bitmask order rows and precomputed operation tables.

Elements are the indices 0..n-1 in a fixed linear extension: whenever i is
below j in the order, i < j as integers.  Index 0 is therefore the bottom and
index n-1 the top.  The order relation is stored as one bitmask row per
element (bit j of ``leq[i]`` set iff i <= j), so order queries, upper-bound
intersections and subset tests are single integer operations.

The element count is capped at 63 so that subuniverse counts (at most 2^n)
stay inside an unsigned 64-bit range.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Union

MAX_ELEMENTS = 63


class LatticeError(Exception):
    """Base class for all construction and query errors."""


class NotAPoset(LatticeError):
    """The input relation is not reflexive/antisymmetric/transitive."""


class NotALattice(LatticeError):
    """Some pair of elements lacks a unique least upper or greatest lower bound."""


class BadIndexOrder(LatticeError):
    """Element indices do not form a linear extension (need i < j for i below j)."""


class SizeLimit(LatticeError):
    """Input exceeds a documented size bound."""


class UnknownName(LatticeError):
    """Name not present in the registry of named lattices."""


class IndexOutOfRange(LatticeError):
    """Element index outside 0..n-1."""


class EmptyGenerator(LatticeError):
    """Generated sublattice of the empty set is undefined."""


class ExpressionError(LatticeError):
    """Malformed lattice expression string."""


def bit_indices(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class Lattice:
    """Immutable finite lattice on indices 0..n-1 in linear-extension order.

    ``leq[i]`` is the bitmask of the up-set of i; ``join_table`` and
    ``meet_table`` are n rows of n precomputed indices; ``covers`` is the
    transitive reduction as a sorted tuple of (lower, upper) pairs.
    """

    n: int
    leq: tuple[int, ...]
    join_table: tuple[bytes, ...]
    meet_table: tuple[bytes, ...]
    covers: tuple[tuple[int, int], ...]

    @cached_property
    def geq(self) -> tuple[int, ...]:
        """Down-set bitmask rows (transpose of ``leq``)."""
        down = [0] * self.n
        for i, row in enumerate(self.leq):
            for j in bit_indices(row):
                down[j] |= 1 << i
        return tuple(down)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        ups: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.covers:
            ups[i].append(j)
        return tuple(tuple(u) for u in ups)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        downs: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.covers:
            downs[j].append(i)
        return tuple(tuple(d) for d in downs)

    @cached_property
    def height(self) -> tuple[int, ...]:
        """Length of the longest chain from the bottom to each element."""
        h = [0] * self.n
        for i, j in self.covers:
            h[j] = max(h[j], h[i] + 1)
        return tuple(h)

    def _check(self, a: int) -> None:
        if not 0 <= a < self.n:
            raise IndexOutOfRange(f"element index {a} outside 0..{self.n - 1}")

    def le(self, a: int, b: int) -> bool:
        """True iff a <= b in the lattice order."""
        self._check(a)
        self._check(b)
        return bool(self.leq[a] >> b & 1)

    def join(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return self.join_table[a][b]

    def meet(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        return self.meet_table[a][b]

    def up(self, a: int) -> int:
        """Bitmask of the principal filter of a."""
        self._check(a)
        return self.leq[a]

    def down(self, a: int) -> int:
        """Bitmask of the principal ideal of a."""
        self._check(a)
        return self.geq[a]

    def __repr__(self) -> str:
        return f"Lattice(n={self.n}, covers={list(self.covers)})"


def _finish(n: int, up: list[int]) -> Lattice:
    """Build the validated Lattice from closed up-set rows.

    Raises NotALattice when some pair has no least upper bound or no greatest
    lower bound (this also covers the missing-bottom/top cases: a shared
    bound failure always shows up on some pair).
    """
    down = [0] * n
    for i in range(n):
        row = up[i]
        for j in bit_indices(row):
            down[j] |= 1 << i

    join_rows = []
    meet_rows = []
    for a in range(n):
        jrow = bytearray(n)
        mrow = bytearray(n)
        up_a = up[a]
        down_a = down[a]
        for b in range(n):
            common = up_a & up[b]
            if not common:
                raise NotALattice(f"elements {a} and {b} have no common upper bound")
            m = (common & -common).bit_length() - 1
            if common & ~up[m]:
                raise NotALattice(f"elements {a} and {b} have no least upper bound")
            jrow[b] = m
            common = down_a & down[b]
            if not common:
                raise NotALattice(f"elements {a} and {b} have no common lower bound")
            m = common.bit_length() - 1
            if common & ~down[m]:
                raise NotALattice(f"elements {a} and {b} have no greatest lower bound")
            mrow[b] = m
        join_rows.append(bytes(jrow))
        meet_rows.append(bytes(mrow))

    covers = []
    for a in range(n):
        for b in bit_indices(up[a] ^ (1 << a)):
            if up[a] & down[b] == (1 << a) | (1 << b):
                covers.append((a, b))
    covers.sort()

    return Lattice(n, tuple(up), tuple(join_rows), tuple(meet_rows), tuple(covers))


def from_covers(n: int, covers: Iterable[tuple[int, int]]) -> Lattice:
    """Construct a lattice from its element count and covering pairs.

    Pairs must satisfy 0 <= i < j < n (linear-extension indexing); the order
    is the reflexive-transitive closure of the pairs.  Redundant pairs are
    tolerated: the stored ``covers`` are recomputed as the transitive
    reduction of the closure.
    """
    if n < 1:
        raise NotALattice("a lattice has at least one element")
    if n > MAX_ELEMENTS:
        raise SizeLimit(f"at most {MAX_ELEMENTS} elements supported, got {n}")
    adj: list[list[int]] = [[] for _ in range(n)]
    for pair in covers:
        i, j = pair
        if not (0 <= i < j < n):
            raise BadIndexOrder(f"cover pair {pair!r} violates 0 <= i < j < {n}")
        adj[i].append(j)
    up = [1 << i for i in range(n)]
    for i in range(n - 1, -1, -1):
        row = up[i]
        for j in adj[i]:
            row |= up[j]
        up[i] = row
    return _finish(n, up)


def from_order_matrix(n: int, rows: Iterable[int]) -> Lattice:
    """Construct a lattice from up-set bitmask rows of an order relation.

    Validates that the relation is a poset in linear-extension indexing and
    that it is a lattice.  Mostly useful for feeding raw relation tables,
    e.g. from exhaustive relation scans.
    """
    if n < 1:
        raise NotALattice("a lattice has at least one element")
    if n > MAX_ELEMENTS:
        raise SizeLimit(f"at most {MAX_ELEMENTS} elements supported, got {n}")
    up = list(rows)
    if len(up) != n:
        raise NotAPoset(f"expected {n} rows, got {len(up)}")
    for i, row in enumerate(up):
        if not row >> i & 1:
            raise NotAPoset(f"relation is not reflexive at {i}")
        if row & ((1 << i) - 1):
            raise BadIndexOrder(f"element {i} lies below a smaller index")
        if row >> n:
            raise NotAPoset(f"row {i} mentions indices beyond {n - 1}")
    for i in range(n):
        for j in bit_indices(up[i] ^ (1 << i)):
            if up[j] & ~up[i]:
                raise NotAPoset(f"relation is not transitive at ({i}, {j})")
    return _finish(n, up)


def glued_sum(bottom_part: Lattice, top_part: Lattice) -> Lattice:
    """Stack ``top_part`` atop ``bottom_part``, identifying the shared element.

    The top of the first argument is identified with the bottom of the
    second, so the result has n = |K| + |L| - 1 elements.  Associative, not
    commutative.
    """
    shift = bottom_part.n - 1
    n = bottom_part.n + top_part.n - 1
    pairs = list(bottom_part.covers)
    pairs += [(i + shift, j + shift) for i, j in top_part.covers]
    return from_covers(n, pairs)


def direct_product(left: Lattice, right: Lattice) -> Lattice:
    """Componentwise-order product, re-indexed lexicographically.

    The pair (i, j) gets index i*|right| + j, which is a linear extension of
    the product order.
    """
    n = left.n * right.n
    if n > MAX_ELEMENTS:
        raise SizeLimit(f"product would have {n} > {MAX_ELEMENTS} elements")
    w = right.n
    pairs = []
    for i in range(left.n):
        base = i * w
        for j in range(right.n):
            a = base + j
            for j2 in right.upper_covers[j]:
                pairs.append((a, base + j2))
            for i2 in left.upper_covers[i]:
                pairs.append((a, i2 * w + j))
    return from_covers(n, pairs)


def dual(lat: Lattice) -> Lattice:
    """Order-reversed lattice; joins and meets swap roles."""
    n = lat.n
    pairs = [(n - 1 - j, n - 1 - i) for i, j in lat.covers]
    return from_covers(n, pairs)


def sublattice(lat: Lattice, members: Union[int, Iterable[int]]) -> Lattice:
    """Induced lattice on a join/meet-closed subset of elements.

    ``members`` is a bitmask or an iterable of indices.  The subset keeps its
    relative index order (still a linear extension).  Raises NotALattice if
    the subset is not closed under the ambient join and meet, so the induced
    tables are guaranteed to be restrictions of the ambient ones.
    """
    mask = members if isinstance(members, int) else mask_of(members)
    if mask & ~lat.full_mask or mask < 0:
        raise IndexOutOfRange("subset mentions indices outside the lattice")
    elems = list(bit_indices(mask))
    if not elems:
        raise NotALattice("the empty subset induces no lattice")
    pos = {e: k for k, e in enumerate(elems)}
    for a in elems:
        jrow = lat.join_table[a]
        mrow = lat.meet_table[a]
        for b in elems:
            if b < a:
                continue
            if not (mask >> jrow[b] & 1 and mask >> mrow[b] & 1):
                raise NotALattice(
                    f"subset is not closed under join/meet at ({a}, {b})"
                )
    k = len(elems)
    up = [0] * k
    for a in elems:
        row = lat.leq[a] & mask
        bits = 0
        for b in bit_indices(row):
            bits |= 1 << pos[b]
        up[pos[a]] = bits
    return _finish(k, up)


def chain(k: int) -> Lattice:
    """The k-element chain."""
    if k < 1:
        raise UnknownName(f"chain size must be >= 1, got {k}")
    return from_covers(k, [(i, i + 1) for i in range(k - 1)])


def _boolean_cube() -> Lattice:
    # 8 elements as bit-triples ordered by bit containment; integer order is
    # already a linear extension.
    pairs = []
    for x in range(8):
        for b in (1, 2, 4):
            if not x & b:
                pairs.append((x, x | b))
    return from_covers(8, pairs)


_FIXED_BUILDERS = {
    "B4": lambda: from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)]),
    "B8": _boolean_cube,
    # pentagon: 0 < a < c < 1 on one side, 0 < b < 1 on the other
    "N5": lambda: from_covers(5, [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)]),
    "M3": lambda: from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]),
    "C2xC3": lambda: direct_product(chain(2), chain(3)),
}

_CHAIN_RE = re.compile(r"(?:chain:|C)([0-9]+)$")


@lru_cache(maxsize=None)
def named(name: str) -> Lattice:
    """Look up a lattice by registry key.

    Keys: ``chain:k`` (equivalently ``Ck``) for k >= 1, and B4, B8, N5, M3,
    C2xC3.
    """
    key = name.strip()
    if key in _FIXED_BUILDERS:
        return _FIXED_BUILDERS[key]()
    m = _CHAIN_RE.match(key)
    if m:
        k = int(m.group(1))
        if k >= 1:
            return chain(k)
    raise UnknownName(f"no lattice named {name!r}")


# --- expression trees ---------------------------------------------------
#
# Grammar (whitespace insensitive):
#   expr   := term  ('+' term)*          glued sum, left associative
#   term   := factor ('x' factor)*       direct product, binds tighter
#   factor := atom | '(' expr ')'
#   atom   := C<k> | B4 | B8 | N5 | M3


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class GluedSum:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class DirectProduct:
    left: "Expr"
    right: "Expr"


Expr = Union[Atom, GluedSum, DirectProduct]

_TOKEN_RE = re.compile(r"\s*(C[0-9]+|B4|B8|N5|M3|[+x()])")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ExpressionError(f"cannot read expression at: {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise ExpressionError("empty expression")
    return tokens


def parse_expression(text: str) -> Expr:
    """Parse an expression string into an expression tree."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def factor() -> Expr:
        tok = peek()
        if tok is None:
            raise ExpressionError("expression ends where an atom was expected")
        if tok == "(":
            take()
            node = expr()
            if peek() != ")":
                raise ExpressionError("missing closing parenthesis")
            take()
            return node
        if tok in ("+", "x", ")"):
            raise ExpressionError(f"unexpected {tok!r}")
        return Atom(take())

    def term() -> Expr:
        node = factor()
        while peek() == "x":
            take()
            node = DirectProduct(node, factor())
        return node

    def expr() -> Expr:
        node = term()
        while peek() == "+":
            take()
            node = GluedSum(node, term())
        return node

    tree = expr()
    if pos != len(tokens):
        raise ExpressionError(f"trailing input after expression: {tokens[pos:]}")
    return tree


def evaluate(tree: Expr) -> Lattice:
    """Evaluate an expression tree into a lattice."""
    if isinstance(tree, Atom):
        return named(tree.name)
    if isinstance(tree, GluedSum):
        return glued_sum(evaluate(tree.left), evaluate(tree.right))
    if isinstance(tree, DirectProduct):
        return direct_product(evaluate(tree.left), evaluate(tree.right))
    raise TypeError(f"not an expression node: {tree!r}")


def build_expression(text: str) -> Lattice:
    """Parse and evaluate an expression string."""
    return evaluate(parse_expression(text))
