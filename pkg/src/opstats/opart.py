"""Ordered set partitions of [n] = {1..n}: model, text format, enumeration.

An ordered partition is a sequence of pairwise disjoint nonempty blocks whose
union is [n]; inside a block the elements are kept ascending, but the blocks
themselves carry an arbitrary order (that order is the whole point).  The
machine text format is blocks separated by ``/`` with comma-separated
elements, e.g. ``6,8/5/1,4,7/3,9/2``.

Element classes: the opener / closer of a block is its least / greatest
element; a singleton is the sole element of a one-element block; a strict
opener or closer excludes singletons; a transient is an interior element of a
larger block.  The i-th trace is the restriction of the blocks to {1..i}
(restrictions marked closed when the whole block is inside {1..i}, opened
otherwise, empty ones dropped), and the form is the sequence of
(closed-count, opened-count) pairs of the traces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

Blocks = tuple[tuple[int, ...], ...]

#: Full enumeration of OP_n is practical up to n = 10 (~1.1e8 partitions);
#: beyond that callers must opt in explicitly.
DESK_BOUND = 10


class BoundExceeded(ValueError):
    """An enumeration request went past the desk bound without force_large."""


class OrderedPartition:
    """Immutable ordered partition of {1..n}."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            for e in b:
                if not isinstance(e, int) or e < 1:
                    raise ValueError(f"non-positive element {e!r}")
                if e in seen:
                    raise ValueError(f"element {e} occurs in two blocks")
                seen.add(e)
        n = len(seen)
        if seen and max(seen) != n:
            missing = min(set(range(1, max(seen) + 1)) - seen)
            raise ValueError(f"gap in ground set: element {missing} missing")
        self.blocks = blocks

    @classmethod
    def _unchecked(cls, blocks: Blocks) -> "OrderedPartition":
        self = object.__new__(cls)
        self.blocks = blocks
        return self

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, OrderedPartition):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __str__(self):
        return format_partition(self)

    def __repr__(self):
        return f"OrderedPartition({format_partition(self)!r})"


def parse(text: str) -> OrderedPartition:
    """Parse the machine format ``6,8/5/1,4,7/3,9/2``."""
    text = text.strip()
    if not text:
        raise ValueError("empty partition text")
    blocks = []
    for part in text.split("/"):
        part = part.strip()
        if not part:
            raise ValueError("empty block")
        elems = []
        for tok in part.split(","):
            tok = tok.strip()
            try:
                elems.append(int(tok))
            except ValueError:
                raise ValueError(f"bad element {tok!r}") from None
        blocks.append(elems)
    return OrderedPartition(blocks)


def format_partition(pi: OrderedPartition | Blocks) -> str:
    blocks = pi.blocks if isinstance(pi, OrderedPartition) else pi
    return "/".join(",".join(str(e) for e in b) for b in blocks)


# -- enumeration --------------------------------------------------------------
#
# Element m is inserted into every ordered partition of [m-1]: as a new
# singleton in each of the k+1 gaps (left to right), then appended to each of
# the k blocks (left to right).  This gives a deterministic order that splits
# cleanly by top-level branch for parallel consumption.


def _insert_singletons(blocks: Blocks, m: int) -> Iterator[Blocks]:
    for gap in range(len(blocks) + 1):
        yield blocks[:gap] + ((m,),) + blocks[gap:]


def _appends(blocks: Blocks, m: int) -> Iterator[Blocks]:
    for i in range(len(blocks)):
        yield blocks[:i] + (blocks[i] + (m,),) + blocks[i + 1:]


def iter_blocks_all(n: int) -> Iterator[Blocks]:
    """All of OP_n as raw block tuples (every k), insertion order."""
    if n == 0:
        yield ()
        return
    for parent in iter_blocks_all(n - 1):
        yield from _insert_singletons(parent, n)
        yield from _appends(parent, n)


def iter_blocks(n: int, k: int) -> Iterator[Blocks]:
    """OP_n^k as raw block tuples: singleton insertions into OP_{n-1}^{k-1},
    then appends into OP_{n-1}^k."""
    if k < 0 or k > n:
        return
    if n == 0:
        yield ()
        return
    for parent in iter_blocks(n - 1, k - 1):
        yield from _insert_singletons(parent, n)
    for parent in iter_blocks(n - 1, k):
        yield from _appends(parent, n)


def iter_blocks_p(n: int, k: int) -> Iterator[Blocks]:
    """Inversion-free (canonically ordered) partitions: blocks by increasing
    minima; there are S(n,k) of them."""
    if k < 0 or k > n:
        return
    if n == 0:
        yield ()
        return
    for parent in iter_blocks_p(n - 1, k - 1):
        yield parent + ((n,),)
    for parent in iter_blocks_p(n - 1, k):
        yield from _appends(parent, n)


def _check_bound(n: int, force_large: bool):
    if n > DESK_BOUND and not force_large:
        raise BoundExceeded(
            f"n={n} exceeds the enumeration desk bound {DESK_BOUND}; "
            "pass force_large=True (CLI: --force-large) to proceed"
        )


def enumerate_op(n: int, k: int | None = None, force_large: bool = False
                 ) -> Iterator[OrderedPartition]:
    """Each element of OP_n^k exactly once (all k when k is None)."""
    if n < 0 or (k is not None and not 0 <= k <= n):
        raise ValueError(f"no ordered partitions for n={n}, k={k}")
    _check_bound(n, force_large)
    raw = iter_blocks_all(n) if k is None else iter_blocks(n, k)
    return map(OrderedPartition._unchecked, raw)


def enumerate_p(n: int, k: int, force_large: bool = False) -> Iterator[OrderedPartition]:
    """Unordered partitions of [n] with k blocks, canonical block order."""
    if n < 0 or not 0 <= k <= n:
        raise ValueError(f"no partitions for n={n}, k={k}")
    _check_bound(n, force_large)
    return map(OrderedPartition._unchecked, iter_blocks_p(n, k))


# -- element classes, traces, forms -------------------------------------------


@dataclass(frozen=True)
class TypePartition:
    """The type of a partition: strict openers O, transients T, singletons S,
    strict closers C (disjoint, with O+T+S+C = [n] and |O| = |C|)."""

    openers: frozenset[int]
    transients: frozenset[int]
    singletons: frozenset[int]
    closers: frozenset[int]


def classify(pi: OrderedPartition) -> TypePartition:
    openers, transients, singletons, closers = set(), set(), set(), set()
    for b in pi.blocks:
        if len(b) == 1:
            singletons.add(b[0])
        else:
            openers.add(b[0])
            closers.add(b[-1])
            transients.update(b[1:-1])
    return TypePartition(
        frozenset(openers), frozenset(transients),
        frozenset(singletons), frozenset(closers),
    )


def trace(pi: OrderedPartition, i: int) -> tuple[tuple[tuple[int, ...], bool], ...]:
    """The i-th trace: restrictions of the blocks to {1..i} with a closed flag;
    empty restrictions are dropped."""
    if not 0 <= i <= pi.n:
        raise ValueError(f"trace index {i} out of range 0..{pi.n}")
    out = []
    for b in pi.blocks:
        restr = tuple(e for e in b if e <= i)
        if restr:
            out.append((restr, b[-1] <= i))
    return tuple(out)


def form(pi: OrderedPartition) -> tuple[tuple[int, int], ...]:
    """(closed, opened) block counts of the traces, i = 0..n."""
    out = [(0, 0)]
    for i in range(1, pi.n + 1):
        t = trace(pi, i)
        closed = sum(1 for _, done in t if done)
        out.append((closed, len(t) - closed))
    return tuple(out)


def perm_of(pi: OrderedPartition) -> tuple[int, ...]:
    """The permutation induced by the block order: position -> rank of the
    block among all blocks sorted by their minima (1-based)."""
    mins = [b[0] for b in pi.blocks]
    rank = {m: r + 1 for r, m in enumerate(sorted(mins))}
    return tuple(rank[m] for m in mins)


def inv(pi: OrderedPartition) -> int:
    sigma = perm_of(pi)
    return sum(
        1
        for i in range(len(sigma))
        for j in range(i + 1, len(sigma))
        if sigma[i] > sigma[j]
    )


def cinv(pi: OrderedPartition) -> int:
    return math.comb(pi.k, 2) - inv(pi)
