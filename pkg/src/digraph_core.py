"""
Oriented Graph Core
Antipath Toolkit - oriented graph verification

Immutable oriented-graph representation, degree computations, the base-3
("trit") code used for enumeration and persistence, and the line-oriented
graph text format.

Adjacency is stored as one out-neighbour and one in-neighbour bit mask per
vertex (Python ints used as fixed-width bit vectors, n <= 64), so the solvers
work with word operations.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from errors import InvalidGraphError

logger = logging.getLogger(__name__)

MAX_VERTICES = 64


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@lru_cache(maxsize=None)
def vertex_pairs(n: int) -> Tuple[Tuple[int, int], ...]:
    """Unordered pairs {i, j}, i < j, in lexicographic order of (i, j); position = trit index."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def code_space(n: int) -> int:
    """Number of labeled oriented graphs on n vertices, 3^C(n,2)."""
    return 3 ** pair_count(n)


@dataclass(frozen=True)
class OrientedGraph:
    """
    Oriented graph on vertices 0..n-1.

    out_masks[v] has bit u set iff v -> u; in_masks[v] has bit u set iff u -> v.
    Build with from_arcs() or from_trit_code(); the masks are validated on construction.
    """
    n: int
    out_masks: Tuple[int, ...]
    in_masks: Tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise InvalidGraphError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.out_masks) != self.n or len(self.in_masks) != self.n:
            raise InvalidGraphError("adjacency masks do not match the vertex count")
        full = (1 << self.n) - 1
        for v in range(self.n):
            out_mask, in_mask = self.out_masks[v], self.in_masks[v]
            if (out_mask | in_mask) & ~full:
                raise InvalidGraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if (out_mask | in_mask) >> v & 1:
                raise InvalidGraphError(f"loop at vertex {v}")
            if out_mask & in_mask:
                raise InvalidGraphError(f"vertex {v} is on a 2-cycle; graph is not oriented")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Tuple[int, int]]) -> "OrientedGraph":
        """
        Build a graph from an arc list.

        Args:
            n: Vertex count
            arcs: Ordered pairs (u, v) meaning u -> v

        Returns:
            OrientedGraph

        Raises:
            InvalidGraphError: loops, duplicate arcs, both orientations of a pair,
                or out-of-range endpoints
        """
        if not 0 <= n <= MAX_VERTICES:
            raise InvalidGraphError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
        out_masks = [0] * n
        in_masks = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraphError(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise InvalidGraphError(f"loop at vertex {u}")
            if out_masks[u] >> v & 1:
                raise InvalidGraphError(f"duplicate arc ({u}, {v})")
            if out_masks[v] >> u & 1:
                raise InvalidGraphError(f"arcs ({v}, {u}) and ({u}, {v}) both present")
            out_masks[u] |= 1 << v
            in_masks[v] |= 1 << u
        return cls(n, tuple(out_masks), tuple(in_masks))

    @classmethod
    def empty(cls, n: int) -> "OrientedGraph":
        return cls(n, (0,) * n, (0,) * n)

    @property
    def arcs(self) -> Tuple[Tuple[int, int], ...]:
        """All arcs sorted by (u, v)."""
        return tuple((u, v) for u in range(self.n) for v in iter_bits(self.out_masks[u]))

    @property
    def arc_count(self) -> int:
        return sum(popcount(mask) for mask in self.out_masks)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def out_neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.out_masks[v]))

    def in_neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.in_masks[v]))

    def out_degree(self, v: int) -> int:
        return popcount(self.out_masks[v])

    def in_degree(self, v: int) -> int:
        return popcount(self.in_masks[v])


@dataclass(frozen=True)
class DegreeProfile:
    """Per-vertex semi-degrees plus the two minimum aggregates."""
    out_deg: Tuple[int, ...]
    in_deg: Tuple[int, ...]
    delta0: int
    pseudo_delta0: int


def degree_profile(g: OrientedGraph) -> DegreeProfile:
    """
    Compute out/in degrees, the minimum semi-degree and the minimum pseudo-semi-degree.

    pseudo_delta0 is the minimum over all strictly positive out- and in-degrees,
    0 when the graph has no arcs. Zero degrees never enter it.
    """
    out_deg = tuple(popcount(mask) for mask in g.out_masks)
    in_deg = tuple(popcount(mask) for mask in g.in_masks)
    delta0 = min((min(o, i) for o, i in zip(out_deg, in_deg)), default=0)
    positive = [d for d in out_deg + in_deg if d > 0]
    pseudo_delta0 = min(positive) if positive else 0
    return DegreeProfile(out_deg, in_deg, delta0, pseudo_delta0)


def induced_subdigraph(g: OrientedGraph, s: Sequence[int]) -> OrientedGraph:
    """
    Subdigraph induced by s, relabeled 0..|s|-1 in the order s is given.

    Raises:
        InvalidGraphError: a vertex of s is out of range or repeated
    """
    position = {}
    for index, v in enumerate(s):
        if not 0 <= v < g.n:
            raise InvalidGraphError(f"vertex {v} outside 0..{g.n - 1}")
        if v in position:
            raise InvalidGraphError(f"vertex {v} repeated in the subset")
        position[v] = index
    arcs = [(position[u], position[v]) for u in s for v in iter_bits(g.out_masks[u]) if v in position]
    return OrientedGraph.from_arcs(len(s), arcs)


def converse(g: OrientedGraph) -> OrientedGraph:
    """Reverse every arc."""
    return OrientedGraph(g.n, g.in_masks, g.out_masks)


def to_trit_code(g: OrientedGraph) -> int:
    """
    Encode g as sum(d_p * 3^p), one digit per pair {i, j}, i < j:
    0 = no arc, 1 = i -> j, 2 = j -> i.
    """
    code = 0
    weight = 1
    for i, j in vertex_pairs(g.n):
        if g.out_masks[i] >> j & 1:
            code += weight
        elif g.out_masks[j] >> i & 1:
            code += 2 * weight
        weight *= 3
    return code


def from_trit_code(n: int, code: int) -> OrientedGraph:
    """
    Decode a trit code into the labeled oriented graph on n vertices.

    Raises:
        InvalidGraphError: code outside [0, 3^C(n,2))
    """
    if not 0 <= n <= MAX_VERTICES:
        raise InvalidGraphError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
    if not 0 <= code < code_space(n):
        raise InvalidGraphError(f"code {code} outside [0, 3^{pair_count(n)}) for n={n}")
    out_masks = [0] * n
    in_masks = [0] * n
    for i, j in vertex_pairs(n):
        code, digit = divmod(code, 3)
        if digit == 1:
            out_masks[i] |= 1 << j
            in_masks[j] |= 1 << i
        elif digit == 2:
            out_masks[j] |= 1 << i
            in_masks[i] |= 1 << j
    return OrientedGraph(n, tuple(out_masks), tuple(in_masks))


def parse_code_token(token: str) -> Tuple[int, int]:
    """Parse the inline `N:TRIT` form into (n, code)."""
    try:
        n_text, code_text = token.split(":", 1)
        return int(n_text), int(code_text)
    except ValueError as e:
        raise InvalidGraphError(f"expected N:TRIT, got {token!r}") from e


def format_code_token(g: OrientedGraph) -> str:
    return f"{g.n}:{to_trit_code(g)}"


def parse_graph_text(text: str) -> OrientedGraph:
    """
    Parse the graph text format.

    `#` lines are comments; the first other line is `n <count>`; each following
    line `<u> <v>` is an arc u -> v (0-based). Blank lines are ignored.
    """
    n: Optional[int] = None
    arcs = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            if n is None:
                if len(fields) != 2 or fields[0] != "n":
                    raise InvalidGraphError(f"line {line_number}: expected 'n <count>', got {line!r}")
                n = int(fields[1])
            else:
                if len(fields) != 2:
                    raise InvalidGraphError(f"line {line_number}: expected '<u> <v>', got {line!r}")
                arcs.append((int(fields[0]), int(fields[1])))
        except ValueError as e:
            if isinstance(e, InvalidGraphError):
                raise
            raise InvalidGraphError(f"line {line_number}: non-integer field in {line!r}") from e
    if n is None:
        raise InvalidGraphError("missing 'n <count>' header")
    return OrientedGraph.from_arcs(n, arcs)


def format_graph_text(g: OrientedGraph, comment: Optional[str] = None) -> str:
    """Serialize g with arcs sorted by (u, v)."""
    lines = []
    if comment:
        lines.extend(f"# {part}" for part in comment.splitlines())
    lines.append(f"n {g.n}")
    lines.extend(f"{u} {v}" for u, v in g.arcs)
    return "\n".join(lines) + "\n"


def read_graph_file(path: str) -> OrientedGraph:
    text = Path(path).read_text(encoding="utf-8")
    g = parse_graph_text(text)
    logger.debug(f"Read graph with n={g.n}, {g.arc_count} arcs from {path}")
    return g


def write_graph_file(path: str, g: OrientedGraph, comment: Optional[str] = None) -> None:
    Path(path).write_text(format_graph_text(g, comment), encoding="utf-8")
    logger.debug(f"Wrote graph with n={g.n}, {g.arc_count} arcs to {path}")
