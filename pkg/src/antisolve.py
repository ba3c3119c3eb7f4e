"""
Exact Antipath Solvers
Antipath Toolkit - oriented graph verification

Exhaustive, alternation-constrained depth-first search for longest antipaths,
longest anticycles and longest directed paths, plus the direction-pattern
kernel used both for fixed-length antipath queries and for arbitrary
oriented-path types. These solvers are the oracle every other module is
checked against.

Search state is (current end, required direction of the next arc, visited set
as a bit mask). Branches are cut when the current length plus the number of
unvisited non-isolated vertices cannot beat the best length found so far.
Vertices are always tried in increasing order, so the first witness of a given
length is the lexicographically smallest one.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from digraph_core import OrientedGraph, iter_bits, popcount
from errors import InvalidWitnessError, PreconditionError

logger = logging.getLogger(__name__)


class Lead(str, Enum):
    """Phase of an antipath: lead-out starts v0 -> v1, lead-in starts v0 <- v1."""
    OUT = "lead-out"
    IN = "lead-in"

    @property
    def flipped(self) -> "Lead":
        return Lead.IN if self is Lead.OUT else Lead.OUT


@dataclass(frozen=True)
class AlternatingPath:
    """
    Antipath v0..vl with its lead phase.

    With lead-out, arc i is forward (v_i -> v_{i+1}) iff i is even; with lead-in, iff i is odd.
    A single vertex is a length-0 antipath of either phase; lead-out is the stored convention.
    """
    vertices: Tuple[int, ...]
    lead: Lead = Lead.OUT

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def is_forward(self, i: int) -> bool:
        return (i % 2 == 0) == (self.lead is Lead.OUT)

    @property
    def arcs(self) -> List[Tuple[int, int]]:
        """Arcs as (tail, head) pairs in path order."""
        result = []
        for i in range(self.length):
            a, b = self.vertices[i], self.vertices[i + 1]
            result.append((a, b) if self.is_forward(i) else (b, a))
        return result

    @property
    def vertex_mask(self) -> int:
        mask = 0
        for v in self.vertices:
            mask |= 1 << v
        return mask


@dataclass(frozen=True)
class AntiCycle:
    """
    Anticycle u_0..u_{l-1} (closed back to u_0).

    Even (0-based) positions dominate both cyclic neighbours, odd positions are
    dominated by both. The length is even and at least 4.
    """
    vertices: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def arcs(self) -> List[Tuple[int, int]]:
        l = len(self.vertices)
        result = []
        for i in range(0, l, 2):
            u = self.vertices[i]
            result.append((u, self.vertices[i - 1]))
            result.append((u, self.vertices[(i + 1) % l]))
        return sorted(result)


# ---------------------------------------------------------------------------
# Independent validators
# ---------------------------------------------------------------------------

def _distinct_in_range(g: OrientedGraph, vertices: Sequence[int]) -> Optional[str]:
    if len(set(vertices)) != len(vertices):
        return "repeated vertex"
    for v in vertices:
        if not 0 <= v < g.n:
            return f"vertex {v} outside 0..{g.n - 1}"
    return None


def antipath_violation(g: OrientedGraph, p: AlternatingPath) -> Optional[str]:
    """Describe why p is not an antipath of g, or None when it is."""
    if not p.vertices:
        return "empty vertex sequence"
    problem = _distinct_in_range(g, p.vertices)
    if problem:
        return problem
    for tail, head in p.arcs:
        if not g.has_arc(tail, head):
            return f"missing arc {tail}->{head}"
    return None


def is_valid_antipath(g: OrientedGraph, p: AlternatingPath) -> bool:
    return antipath_violation(g, p) is None


def validate_antipath(g: OrientedGraph, p: AlternatingPath) -> None:
    problem = antipath_violation(g, p)
    if problem:
        raise InvalidWitnessError(f"invalid antipath {p.vertices} ({p.lead.value}): {problem}")


def anticycle_violation(g: OrientedGraph, c: AntiCycle) -> Optional[str]:
    """Describe why c is not an anticycle of g, or None when it is."""
    l = len(c.vertices)
    if l < 4 or l % 2:
        return f"length {l} is not an even number >= 4"
    problem = _distinct_in_range(g, c.vertices)
    if problem:
        return problem
    for tail, head in c.arcs:
        if not g.has_arc(tail, head):
            return f"missing arc {tail}->{head}"
    return None


def is_valid_anticycle(g: OrientedGraph, c: AntiCycle) -> bool:
    return anticycle_violation(g, c) is None


def validate_anticycle(g: OrientedGraph, c: AntiCycle) -> None:
    problem = anticycle_violation(g, c)
    if problem:
        raise InvalidWitnessError(f"invalid anticycle {c.vertices}: {problem}")


def canonical_anticycle(g: OrientedGraph, vertices: Sequence[int]) -> AntiCycle:
    """
    Canonical form of a cyclic sequence that alternates in g: start at the
    smallest dominating vertex, then take the lexicographically smaller direction.
    """
    seq = tuple(vertices)
    if len(seq) >= 2 and not g.has_arc(seq[0], seq[1]):
        seq = seq[1:] + seq[:1]
    start = min(range(0, len(seq), 2), key=lambda i: seq[i])
    seq = seq[start:] + seq[:start]
    reflected = seq[:1] + tuple(reversed(seq[1:]))
    return AntiCycle(min(seq, reflected))


def reverse_path(p: AlternatingPath) -> AlternatingPath:
    """Reverse an antipath; the lead flips iff the length is odd."""
    if p.length <= 0:
        return AlternatingPath(p.vertices, Lead.OUT)
    lead = p.lead.flipped if p.length % 2 else p.lead
    return AlternatingPath(tuple(reversed(p.vertices)), lead)


def leading_endpoint_closed(g: OrientedGraph, p: AlternatingPath) -> bool:
    """
    Neighbourhood containment at the first vertex x1 of p: with x1 -> x2 every
    out-neighbour of x1 lies on p, with x2 -> x1 every in-neighbour does.
    Holds for every longest (indeed every non-extendable) antipath.
    """
    if p.length <= 0:
        return True
    first = p.vertices[0]
    neighbours = g.out_masks[first] if p.lead is Lead.OUT else g.in_masks[first]
    return neighbours & ~p.vertex_mask == 0


# ---------------------------------------------------------------------------
# Direction-pattern kernel
# ---------------------------------------------------------------------------

def alternating_pattern(length: int, lead: Lead) -> Tuple[bool, ...]:
    return tuple((i % 2 == 0) == (lead is Lead.OUT) for i in range(length))


def antipath_types(length: int) -> List[Lead]:
    """Leads of the distinct antipath types of a length: one when odd, two when even."""
    if length % 2 or length == 0:
        return [Lead.OUT]
    return [Lead.OUT, Lead.IN]


def orientation_patterns(length: int) -> List[Tuple[bool, ...]]:
    """
    Distinct oriented-path types of a length, as forward/backward arc patterns.

    A pattern read from the other end is its reversed complement; both describe
    the same path type, so only the smaller of the two is kept.
    """
    seen = set()
    for pattern in product((True, False), repeat=length):
        mirrored = tuple(not b for b in reversed(pattern))
        seen.add(min(pattern, mirrored))
    return sorted(seen, reverse=True)


def find_patterned_path(g: OrientedGraph, pattern: Sequence[bool]) -> Optional[Tuple[int, ...]]:
    """
    Lexicographically smallest vertex sequence v0..vk whose arc i is forward
    (v_i -> v_{i+1}) exactly when pattern[i] is true.

    Returns:
        The vertex sequence, or None when g has no such path
    """
    pattern = tuple(bool(b) for b in pattern)
    k = len(pattern)
    if g.n == 0:
        return None
    if k == 0:
        return (0,)
    if k + 1 > g.n:
        return None
    out_masks, in_masks = g.out_masks, g.in_masks
    path: List[int] = []

    def grow(visited: int, depth: int) -> bool:
        if depth == k:
            return True
        if k - depth > g.n - popcount(visited):
            return False
        end = path[-1]
        candidates = (out_masks[end] if pattern[depth] else in_masks[end]) & ~visited
        for v in iter_bits(candidates):
            path.append(v)
            if grow(visited | 1 << v, depth + 1):
                return True
            path.pop()
        return False

    for start in range(g.n):
        first = out_masks[start] if pattern[0] else in_masks[start]
        if not first:
            continue
        path.append(start)
        if grow(1 << start, 0):
            return tuple(path)
        path.pop()
    return None


def contains_oriented_path(g: OrientedGraph, pattern: Sequence[bool]) -> bool:
    return find_patterned_path(g, pattern) is not None


def find_antipath_of_length(g: OrientedGraph, length: int, lead: Lead) -> Optional[AlternatingPath]:
    """
    Smallest antipath of exactly the given length and lead phase, or None.

    Raises:
        PreconditionError: negative length
    """
    if length < 0:
        raise PreconditionError(f"antipath length must be >= 0, got {length}")
    vertices = find_patterned_path(g, alternating_pattern(length, lead))
    if vertices is None:
        return None
    return AlternatingPath(vertices, lead)


def contains_antipath_of_length(g: OrientedGraph, length: int, lead: Lead) -> bool:
    """True iff g has an antipath of exactly this length with this lead phase."""
    return find_antipath_of_length(g, length, lead) is not None


def find_each_antipath(g: OrientedGraph, length: int) -> Optional[List[AlternatingPath]]:
    """One witness per antipath type of the length, or None if some type is missing."""
    witnesses = []
    for lead in antipath_types(length):
        witness = find_antipath_of_length(g, length, lead)
        if witness is None:
            return None
        witnesses.append(witness)
    return witnesses


# ---------------------------------------------------------------------------
# Longest antipath / directed path
# ---------------------------------------------------------------------------

def _active_mask(g: OrientedGraph) -> int:
    mask = 0
    for v in range(g.n):
        if g.out_masks[v] | g.in_masks[v]:
            mask |= 1 << v
    return mask


class _LongestPathSearch:
    """Branch-and-bound DFS for the longest alternating or directed path."""

    def __init__(self, g: OrientedGraph, alternating: bool):
        self.g = g
        self.alternating = alternating
        self.active = _active_mask(g)
        self.ceiling = max(popcount(self.active) - 1, 0)
        self.best: Tuple[int, ...] = ()
        self.best_len = -1
        self.done = False

    def run(self) -> Tuple[int, ...]:
        g = self.g
        for start in iter_bits(self.active):
            if self.done:
                break
            first = g.out_masks[start] | (g.in_masks[start] if self.alternating else 0)
            for v in iter_bits(first):
                if self.done:
                    break
                forward = bool(g.out_masks[start] >> v & 1)
                next_forward = (not forward) if self.alternating else True
                self._grow([start, v], 1 << start | 1 << v, next_forward)
        if self.best_len < 0:
            return (0,) if g.n else ()
        return self.best

    def _grow(self, path: List[int], visited: int, forward_next: bool) -> None:
        length = len(path) - 1
        if length > self.best_len:
            self.best_len = length
            self.best = tuple(path)
            if length >= self.ceiling:
                self.done = True
                return
        if length + popcount(self.active & ~visited) <= self.best_len:
            return
        end = path[-1]
        masks = self.g.out_masks if forward_next else self.g.in_masks
        following = (not forward_next) if self.alternating else True
        for v in iter_bits(masks[end] & ~visited):
            path.append(v)
            self._grow(path, visited | 1 << v, following)
            path.pop()
            if self.done:
                return


def longest_antipath(g: OrientedGraph) -> AlternatingPath:
    """
    Longest antipath over both phases and all start vertices.

    Ties are broken by the lexicographically smallest vertex sequence (two
    different phases never share a sequence of length >= 1). A graph without
    arcs yields the single vertex 0 as a lead-out path of length 0.

    Raises:
        PreconditionError: g has no vertices
    """
    if g.n == 0:
        raise PreconditionError("longest_antipath needs at least one vertex")
    vertices = _LongestPathSearch(g, alternating=True).run()
    if len(vertices) < 2:
        return AlternatingPath(vertices, Lead.OUT)
    lead = Lead.OUT if g.has_arc(vertices[0], vertices[1]) else Lead.IN
    return AlternatingPath(vertices, lead)


def longest_directed_path(g: OrientedGraph) -> Tuple[int, ...]:
    """Longest directed path as a vertex sequence; (0,) for arcless graphs, () for n = 0."""
    return _LongestPathSearch(g, alternating=False).run()


def directed_path_length(vertices: Sequence[int]) -> int:
    return max(len(vertices) - 1, 0)


# ---------------------------------------------------------------------------
# Longest anticycle
# ---------------------------------------------------------------------------

class _AnticycleSearch:
    """
    Alternating paths s -> u1 <- u2 -> ... -> u_m that close with s -> u_m.

    s is the smallest dominating vertex of the cycle, so later dominating
    vertices must be larger than s; u1 < u_m fixes the direction.
    """

    def __init__(self, g: OrientedGraph):
        self.g = g
        self.active = _active_mask(g)
        top = popcount(self.active)
        self.ceiling = top - top % 2
        self.best: Tuple[int, ...] = ()
        self.best_len = 3
        self.done = False

    def run(self) -> Optional[Tuple[int, ...]]:
        g = self.g
        full = g.vertex_mask
        for s in range(g.n):
            if self.done:
                break
            if popcount(g.out_masks[s]) < 2:
                continue
            higher = full & ~((1 << (s + 1)) - 1)
            self._grow([s], 1 << s, s, higher)
        return self.best or None

    def _grow(self, path: List[int], visited: int, s: int, higher: int) -> None:
        g = self.g
        m = len(path) - 1
        if m >= 3 and m % 2 == 1 and path[1] < path[-1] and g.out_masks[s] >> path[-1] & 1:
            if m + 1 > self.best_len:
                self.best_len = m + 1
                self.best = tuple(path)
                if self.best_len >= self.ceiling:
                    self.done = True
                    return
        if (m + 1) + popcount(self.active & ~visited) <= self.best_len:
            return
        end = path[-1]
        if m % 2 == 0:
            candidates = g.out_masks[end] & ~visited
        else:
            candidates = g.in_masks[end] & ~visited & higher
        for v in iter_bits(candidates):
            path.append(v)
            self._grow(path, visited | 1 << v, s, higher)
            path.pop()
            if self.done:
                return


def longest_anticycle(g: OrientedGraph) -> Optional[AntiCycle]:
    """
    Longest anticycle in canonical form, or None when g has none.

    Canonical form: the sequence starts at its smallest dominating vertex and
    is the lexicographically least of the two directions; among several longest
    anticycles the lexicographically least canonical sequence is returned.
    """
    vertices = _AnticycleSearch(g).run()
    if vertices is None:
        return None
    return AntiCycle(vertices)


def witness_summary(g: OrientedGraph) -> Dict[str, int]:
    """Oracle lengths carried by verification records; 0 where no structure exists."""
    cycle = longest_anticycle(g)
    return {
        'antipath_len': longest_antipath(g).length if g.n else 0,
        'anticycle_len': cycle.length if cycle else 0,
    }
