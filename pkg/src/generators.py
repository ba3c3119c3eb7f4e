"""
Graph Family Generators
Antipath Toolkit - oriented graph verification

Deterministic builders for circulant (regular) tournaments, disjoint unions
of them, the complete X -> Y bipartite construction, a seeded random model,
exhaustive enumeration by trit code, and degree peeling to a dense core.
"""

import logging
from dataclasses import dataclass, fields
from fractions import Fraction
from math import floor
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from digraph_core import (
    OrientedGraph,
    code_space,
    from_trit_code,
    iter_bits,
    pair_count,
    popcount,
    vertex_pairs,
)
from errors import PreconditionError, TheoremCounterexampleError

logger = logging.getLogger(__name__)

FAMILIES = ("circulant", "regular-union", "construction-d", "random", "enumerate")
MAX_SEED = 2 ** 64 - 1


def circulant_tournament(n: int) -> OrientedGraph:
    """
    Regular tournament on odd n >= 3 with arcs i -> i+d (mod n) for d = 1 .. (n-1)/2.

    Raises:
        PreconditionError: n even or smaller than 3
    """
    if n < 3 or n % 2 == 0:
        raise PreconditionError(f"circulant tournament needs odd n >= 3, got {n}")
    half = (n - 1) // 2
    return OrientedGraph.from_arcs(n, ((i, (i + d) % n) for i in range(n) for d in range(1, half + 1)))


def disjoint_regular_tournaments(k: int, copies: int) -> OrientedGraph:
    """Copies of circulant_tournament(k) on vertex blocks [c·k, (c+1)·k)."""
    if copies < 1:
        raise PreconditionError(f"copies must be >= 1, got {copies}")
    block = circulant_tournament(k)
    arcs = [(c * k + u, c * k + v) for c in range(copies) for u, v in block.arcs]
    return OrientedGraph.from_arcs(k * copies, arcs)


def construction_d_side(k: int) -> int:
    """m = ceil((3k-2)/4), the side size of the canonical X -> Y instance."""
    return (3 * k + 1) // 4


def construction_D(k: int) -> OrientedGraph:
    """
    Complete orientation X -> Y with |X| = |Y| = ceil((3k-2)/4).

    X is 0..m-1 and Y is m..2m-1. Every vertex has positive semi-degree m on one
    side and 0 on the other, and no directed path has length 2.
    """
    if k < 2:
        raise PreconditionError(f"construction needs k >= 2, got {k}")
    m = construction_d_side(k)
    return OrientedGraph.from_arcs(2 * m, ((x, m + y) for x in range(m) for y in range(m)))


def _graph_from_digits(n: int, digits: Sequence[int]) -> OrientedGraph:
    out_masks = [0] * n
    in_masks = [0] * n
    for (i, j), digit in zip(vertex_pairs(n), digits):
        if digit == 1:
            out_masks[i] |= 1 << j
            in_masks[j] |= 1 << i
        elif digit == 2:
            out_masks[j] |= 1 << i
            in_masks[i] |= 1 << j
    return OrientedGraph(n, tuple(out_masks), tuple(in_masks))


def random_oriented(n: int, p: float, seed: int) -> OrientedGraph:
    """
    Random oriented graph: each pair independently gets an arc with probability p,
    its direction decided by one fair bit.

    The stream is numpy's PCG64 seeded with `seed`, consumed pair by pair in
    trit-code order: one uniform (arc present iff uniform < p), then only for a
    present arc one fair bit (0 -> i->j, 1 -> j->i). Same (n, p, seed) gives the
    same graph on every machine.

    Raises:
        PreconditionError: p outside [0, 1], negative n, or seed outside [0, 2^64)
    """
    if not 0.0 <= p <= 1.0:
        raise PreconditionError(f"arc probability must lie in [0, 1], got {p}")
    if n < 0:
        raise PreconditionError(f"vertex count must be >= 0, got {n}")
    if not 0 <= seed <= MAX_SEED:
        raise PreconditionError(f"seed must be a 64-bit unsigned integer, got {seed}")
    rng = np.random.Generator(np.random.PCG64(seed))
    digits = []
    for _ in range(pair_count(n)):
        if rng.random() < p:
            digits.append(1 + int(rng.integers(0, 2)))
        else:
            digits.append(0)
    return _graph_from_digits(n, digits)


def enumerate_all(n: int, lo: int = 0, hi: Optional[int] = None) -> Iterator[OrientedGraph]:
    """
    Yield from_trit_code(n, c) for c in [lo, hi) in increasing code order.

    Raises:
        PreconditionError: the range is not inside [0, 3^C(n,2))
    """
    total = code_space(n)
    hi = total if hi is None else hi
    if not 0 <= lo <= hi <= total:
        raise PreconditionError(f"code range [{lo}, {hi}) outside [0, {total}) for n={n}")
    for code in range(lo, hi):
        yield from_trit_code(n, code)


@dataclass(frozen=True)
class PeelingResult:
    """Dense core plus the bookkeeping of the peeling run."""
    core: OrientedGraph
    deleted_arcs: int
    triggers: int


def peel_to_threshold(g: OrientedGraph, min_degree: int) -> PeelingResult:
    """
    Delete all out-arcs (in-arcs) of any vertex whose positive out-degree
    (in-degree) is below min_degree, until no vertex triggers.

    Vertices are scanned in increasing order, out-side before in-side. Each
    side of each vertex triggers at most once, since it ends at degree 0.
    """
    out_masks = list(g.out_masks)
    in_masks = list(g.in_masks)
    deleted = 0
    triggers = 0
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            degree = popcount(out_masks[v])
            if 0 < degree < min_degree:
                for u in iter_bits(out_masks[v]):
                    in_masks[u] &= ~(1 << v)
                out_masks[v] = 0
                deleted += degree
                triggers += 1
                changed = True
            degree = popcount(in_masks[v])
            if 0 < degree < min_degree:
                for u in iter_bits(in_masks[v]):
                    out_masks[u] &= ~(1 << v)
                in_masks[v] = 0
                deleted += degree
                triggers += 1
                changed = True
    return PeelingResult(OrientedGraph(g.n, tuple(out_masks), tuple(in_masks)), deleted, triggers)


def peel_dense_core(g: OrientedGraph, k: Union[int, Fraction]) -> PeelingResult:
    """
    Peel g down to a subdigraph whose positive semi-degrees d all satisfy 2d > k.

    For integer k this is 2·δ̃⁰ >= k+1. k may be an exact rational such as (4k-1)/3.

    Raises:
        PreconditionError: k < 1 or |A| <= k·n
        TheoremCounterexampleError: peeling removed every arc
    """
    k = Fraction(k)
    if k < 1:
        raise PreconditionError(f"peeling parameter must be >= 1, got {k}")
    if not g.arc_count > k * g.n:
        raise PreconditionError(f"need more than k·n = {k * g.n} arcs, graph has {g.arc_count}")
    result = peel_to_threshold(g, floor(k / 2) + 1)
    if result.core.arc_count == 0:
        raise TheoremCounterexampleError(
            f"peeling with k={k} emptied a graph with {g.arc_count} arcs on {g.n} vertices")
    logger.debug(f"Peeled {result.deleted_arcs} arcs in {result.triggers} triggers, "
                 f"{result.core.arc_count} arcs remain")
    return result


def dense_subdigraph(g: OrientedGraph, k: Union[int, Fraction]) -> OrientedGraph:
    """Subdigraph (same vertex set) with nonempty arc set and 2·δ̃⁰ > k."""
    return peel_dense_core(g, k).core


@dataclass(frozen=True)
class FamilySpec:
    """
    A graph family with its parameters, written `family:key=value,...` on the command line,
    e.g. `random:n=8,p=0.5,seed=3` or `construction-d:k=5`.
    """
    family: str
    n: Optional[int] = None
    k: Optional[int] = None
    copies: Optional[int] = None
    p: Optional[float] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise PreconditionError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        required = {
            "circulant": ("n",),
            "regular-union": ("k", "copies"),
            "construction-d": ("k",),
            "random": ("n", "p", "seed"),
            "enumerate": ("n",),
        }[self.family]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise PreconditionError(f"family {self.family} needs {', '.join(missing)}")
        if self.family == "circulant" and (self.n < 3 or self.n % 2 == 0):
            raise PreconditionError(f"circulant needs odd n >= 3, got {self.n}")
        if self.family == "regular-union" and (self.k < 3 or self.k % 2 == 0 or self.copies < 1):
            raise PreconditionError("regular-union needs odd k >= 3 and copies >= 1")
        if self.family == "construction-d" and self.k < 2:
            raise PreconditionError(f"construction-d needs k >= 2, got {self.k}")
        if self.family == "random" and not 0.0 <= self.p <= 1.0:
            raise PreconditionError(f"random needs p in [0, 1], got {self.p}")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        family, _, params = text.partition(":")
        values = {}
        types = {f.name: f for f in fields(cls)}
        for item in filter(None, params.split(",")):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in types or key == "family":
                raise PreconditionError(f"bad family parameter {item!r} in {text!r}")
            try:
                values[key] = float(value) if key == "p" else int(value)
            except ValueError as e:
                raise PreconditionError(f"bad value for {key} in {text!r}") from e
        return cls(family.strip(), **values)

    def to_text(self) -> str:
        params = [f"{name}={getattr(self, name)!r}" for name in ("n", "k", "copies", "p", "seed")
                  if getattr(self, name) is not None]
        return f"{self.family}:{','.join(params)}"

    def build(self) -> OrientedGraph:
        if self.family == "circulant":
            return circulant_tournament(self.n)
        if self.family == "regular-union":
            return disjoint_regular_tournaments(self.k, self.copies)
        if self.family == "construction-d":
            return construction_D(self.k)
        if self.family == "random":
            return random_oriented(self.n, self.p, self.seed)
        raise PreconditionError("enumerate describes a population, use enumerate_all()")
