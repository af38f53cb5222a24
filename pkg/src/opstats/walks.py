"""Walks in the digraph D_k and the insertion bijection to ordered partitions.

D_k has vertex set {(i,j) : i,j >= 0, i+j <= k} and edges from (i,j) to
(i,j+1) (North), (i+1,j) (East), (i+1,j-1) (South-East, needs j > 0) and to
itself (Null, needs j > 0).  Reading (i,j) as (closed blocks, opened blocks),
the forms of ordered partitions with k blocks are exactly the paths from
(0,0) to (k,0): North opens a block, East drops in a singleton, South-East
closes an opened block, Null inserts a transient.

A path diagram is a path together with a choice sequence xi: at a North/East
step leaving (p,q) the new block/singleton goes into one of the p+q+1 gaps
(counted from the left, 1-based), at a Null/South-East step the element goes
into one of the q opened blocks (again left to right).  The mapping psi plays
the diagram forward into an ordered partition; its inverse reads the step
kinds off the element classes and the choices off los_i (openers/singletons)
and lsb_i (transients/closers).

Steps are encoded by single letters: N, E, S (south-east), O (null).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .opart import OrderedPartition, classify
from .stats import coord

NORTH, EAST, SOUTH_EAST, NULL = "N", "E", "S", "O"
STEP_KINDS = (NORTH, EAST, SOUTH_EAST, NULL)

Vertex = tuple[int, int]

_MOVES = {NORTH: (0, 1), EAST: (1, 0), SOUTH_EAST: (1, -1), NULL: (0, 0)}


def vertex_count(k: int) -> int:
    return (k + 1) * (k + 2) // 2


def vertex_order(k: int) -> list[Vertex]:
    """Vertices of D_k sorted by (i+j) ascending, then j descending, so the
    list runs (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ..., (k,0)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    vs = [(i, j) for j in range(k + 1) for i in range(k + 1 - j)]
    vs.sort(key=lambda v: (v[0] + v[1], -v[1]))
    return vs


def step_target(v: Vertex, kind: str) -> Vertex:
    di, dj = _MOVES[kind]
    return (v[0] + di, v[1] + dj)


def step_allowed(v: Vertex, kind: str, k: int) -> bool:
    i, j = v
    if kind in (SOUTH_EAST, NULL) and j <= 0:
        return False
    ti, tj = step_target(v, kind)
    return ti >= 0 and tj >= 0 and ti + tj <= k


def path_vertices(steps: tuple[str, ...]) -> list[Vertex]:
    """Vertex sequence from (0,0); length len(steps)+1."""
    out = [(0, 0)]
    for s in steps:
        out.append(step_target(out[-1], s))
    return out


def is_path(steps: tuple[str, ...], k: int) -> bool:
    """Valid walk in D_k from (0,0) to (k,0)."""
    v = (0, 0)
    for s in steps:
        if s not in _MOVES or not step_allowed(v, s, k):
            return False
        v = step_target(v, s)
    return v == (k, 0)


def enumerate_paths(n: int, k: int) -> Iterator[tuple[str, ...]]:
    """All length-n walks (0,0) -> (k,0) in D_k, depth-first in step order
    N, E, O, S."""
    if n < 0 or k < 0:
        raise ValueError("n, k must be nonnegative")

    def rec(v: Vertex, left: int):
        if left == 0:
            if v == (k, 0):
                yield ()
            return
        if k - v[0] > left:  # each remaining closed block costs >= one step
            return
        for kind in (NORTH, EAST, NULL, SOUTH_EAST):
            if step_allowed(v, kind, k):
                for rest in rec(step_target(v, kind), left - 1):
                    yield (kind,) + rest

    return rec((0, 0), n)


def choice_bound(v: Vertex, kind: str) -> int:
    """Number of legal choices for a step of the given kind leaving v."""
    p, q = v
    return p + q + 1 if kind in (NORTH, EAST) else q


@dataclass(frozen=True)
class PathDiagram:
    """A walk plus its choice sequence; always of equal length."""

    steps: tuple[str, ...]
    xi: tuple[int, ...]

    def __post_init__(self):
        if len(self.steps) != len(self.xi):
            raise ValueError("steps and xi must have the same length")

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def depth(self) -> int:
        v = path_vertices(self.steps)[-1]
        return v[0]

    def validate(self, k: int | None = None):
        """Check path validity (within D_k) and the choice bounds."""
        if k is None:
            k = self.depth
        if not is_path(self.steps, k):
            raise ValueError(f"not a walk to ({k},0): {''.join(self.steps)}")
        vs = path_vertices(self.steps)
        for idx, (kind, x) in enumerate(zip(self.steps, self.xi)):
            bound = choice_bound(vs[idx], kind)
            if not 1 <= x <= bound:
                raise ValueError(
                    f"choice xi_{idx + 1}={x} outside 1..{bound} "
                    f"for {kind} at {vs[idx]}"
                )
        return self

    def __str__(self):
        return "".join(self.steps) + " " + ",".join(map(str, self.xi))


def enumerate_diagrams(n: int, k: int) -> Iterator[PathDiagram]:
    """All path diagrams of length n and depth k (choices in product order,
    last step fastest)."""
    for steps in enumerate_paths(n, k):
        vs = path_vertices(steps)
        bounds = [choice_bound(vs[i], kind) for i, kind in enumerate(steps)]
        xi = [1] * n
        while True:
            yield PathDiagram(steps, tuple(xi))
            pos = n - 1
            while pos >= 0 and xi[pos] == bounds[pos]:
                xi[pos] = 1
                pos -= 1
            if pos < 0:
                break
            xi[pos] += 1


def psi(diagram: PathDiagram) -> OrderedPartition:
    """Play a diagram forward: build the traces by inserting 1, 2, ... per the
    step kinds and choices, and return the final partition."""
    diagram.validate()
    blocks: list[list[int]] = []
    opened: list[bool] = []
    for idx, (kind, x) in enumerate(zip(diagram.steps, diagram.xi)):
        element = idx + 1
        if kind in (NORTH, EAST):
            blocks.insert(x - 1, [element])
            opened.insert(x - 1, kind == NORTH)
        else:
            open_positions = [p for p, o in enumerate(opened) if o]
            pos = open_positions[x - 1]
            blocks[pos].append(element)
            if kind == SOUTH_EAST:
                opened[pos] = False
    return OrderedPartition._unchecked(tuple(tuple(b) for b in blocks))


def psi_inverse(pi: OrderedPartition) -> PathDiagram:
    """The unique diagram mapping to pi: step kinds from the element classes,
    choices from los_i + 1 (openers, singletons) or lsb_i + 1 (the rest)."""
    t = classify(pi)
    steps = []
    xi = []
    for i in range(1, pi.n + 1):
        if i in t.openers:
            kind = NORTH
        elif i in t.singletons:
            kind = EAST
        elif i in t.closers:
            kind = SOUTH_EAST
        else:
            kind = NULL
        steps.append(kind)
        if kind in (NORTH, EAST):
            xi.append(coord(pi, i, "los") + 1)
        else:
            xi.append(coord(pi, i, "lsb") + 1)
    return PathDiagram(tuple(steps), tuple(xi))


def step_properties(diagram: PathDiagram, i: int) -> dict[str, int]:
    """Predicted coordinate statistics of psi(diagram) at element i, read off
    the i-th step alone: its start vertex (p,q), and

      North/East:        (lcs+rcs)_i = p, (lsb+rsb)_i = q,
                         los_i = xi-1, ros_i = p+q+1-xi
      Null/South-East:   (lcs+rcs)_i = p, (lsb+rsb)_i = q-1,
                         lsb_i = xi-1, rsb_i = q-xi
    """
    if not 1 <= i <= diagram.length:
        raise ValueError(f"step index {i} out of range 1..{diagram.length}")
    p, q = path_vertices(diagram.steps)[i - 1]
    kind = diagram.steps[i - 1]
    x = diagram.xi[i - 1]
    out = {"p": p, "q": q, "lcs+rcs": p}
    if kind in (NORTH, EAST):
        out["lsb+rsb"] = q
        out["los"] = x - 1
        out["ros"] = p + q + 1 - x
    else:
        out["lsb+rsb"] = q - 1
        out["lsb"] = x - 1
        out["rsb"] = q - x
    return out


def parse_steps(text: str) -> tuple[str, ...]:
    steps = tuple(text.strip().upper())
    for s in steps:
        if s not in _MOVES:
            raise ValueError(f"bad step letter {s!r}; use N, E, S, O")
    return steps
