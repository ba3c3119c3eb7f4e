"""
Rotation Primitives
Antipath Toolkit - oriented graph verification

Antipath extension, the pivot rotation r_j r_{j-1} ... r_0 r_{j+1} ... r_t,
anticycle closures (end arc and chord pair), the exact f/g/alpha arithmetic,
and find_long_structure, a constructive finder that follows the rotation
argument and falls back to the exact oracle.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence, Tuple

from antisolve import (
    AlternatingPath,
    AntiCycle,
    Lead,
    canonical_anticycle,
    longest_anticycle,
    longest_antipath,
    reverse_path,
    validate_anticycle,
    validate_antipath,
)
from digraph_core import OrientedGraph, degree_profile, popcount, to_trit_code
from errors import PreconditionError, TheoremCounterexampleError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RotationState:
    """
    A lead-out antipath R = r_0 ... r_t with the vertex classes used by a rotation round.

    X1 holds the odd positions {r_1, r_3, ...}, X2 the even positions {r_0, r_2, ...}.
    Y1 = N+(r_0) ∩ X1 and Y2 = {r_i : r_{i+1} ∈ Y1}, so |Y1| = |Y2| and Y2 ⊆ X2.
    Rotations permute positions within each class, so X1 and X2 are the same for
    every round; round counts the rotations already applied.

    Two more sets appear only inside the contradiction argument and are not
    materialised here: W, the predecessors z_{i-1} of the out-neighbours z_i of
    the first vertex of an even-length longest antipath, and U, the analogous
    shifted neighbourhood of the first vertex of a longest anticycle.
    """
    path: AlternatingPath
    X1: FrozenSet[int]
    X2: FrozenSet[int]
    Y1: FrozenSet[int]
    Y2: FrozenSet[int]
    round: int = 0

    @property
    def t(self) -> int:
        return self.path.length

    @property
    def Y2_mask(self) -> int:
        mask = 0
        for v in self.Y2:
            mask |= 1 << v
        return mask


def rotation_state(g: OrientedGraph, p: AlternatingPath, round_index: int = 0) -> RotationState:
    """
    Build the rotation state of p, normalising it to lead-out.

    Raises:
        InvalidWitnessError: p is not an antipath of g
        PreconditionError: p has length 0, or is an even-length lead-in path
            (reversal keeps the lead of even-length paths)
    """
    validate_antipath(g, p)
    if p.length < 1:
        raise PreconditionError("rotation needs an antipath with at least one arc")
    if p.lead is Lead.IN:
        if p.length % 2 == 0:
            raise PreconditionError("an even-length lead-in antipath cannot be reversed to lead-out")
        p = reverse_path(p)
    r = p.vertices
    X1 = frozenset(r[1::2])
    X2 = frozenset(r[0::2])
    Y1 = frozenset(v for v in X1 if g.has_arc(r[0], v))
    Y2 = frozenset(r[i] for i in range(0, p.length, 2) if r[i + 1] in Y1)
    return RotationState(p, X1, X2, Y1, Y2, round_index)


def choose_pivot(g: OrientedGraph, st: RotationState) -> Optional[int]:
    """
    Index j >= 2 of a pivot r_j ∈ Y2 minimising |N+(r_j) ∩ Y2|, smallest j on ties.

    j = 0 is the identity rotation and never chosen. Returns None when Y2 has no other vertex.
    """
    r = st.path.vertices
    y2_mask = st.Y2_mask
    best: Optional[Tuple[int, int]] = None
    for j in range(2, st.t, 2):
        if r[j] not in st.Y2:
            continue
        score = (popcount(g.out_masks[r[j]] & y2_mask), j)
        if best is None or score < best:
            best = score
    return best[1] if best else None


def rotate_at(g: OrientedGraph, st: RotationState, j: int) -> AlternatingPath:
    """
    Rotate R = r_0 ... r_t at pivot r_j into r_j r_{j-1} ... r_0 r_{j+1} ... r_t.

    The result has the same length and vertex set and is again lead-out, since
    r_j -> r_{j-1} on R for even j. Rotating twice at the same index restores R.

    Raises:
        PreconditionError: j odd or outside [2, t-1], or the pivot arc r_0 -> r_{j+1} is missing
    """
    r = st.path.vertices
    if j % 2:
        raise PreconditionError(f"pivot index {j} is odd")
    if not 2 <= j <= st.t - 1:
        raise PreconditionError(f"pivot index {j} outside [2, {st.t - 1}]")
    if not g.has_arc(r[0], r[j + 1]):
        raise PreconditionError(f"missing pivot arc {r[0]}->{r[j + 1]}")
    return AlternatingPath(r[j::-1] + r[j + 1:], Lead.OUT)


def extend_antipath(g: OrientedGraph, p: AlternatingPath) -> AlternatingPath:
    """
    Extend p by one vertex at the front, else at the back, using the smallest eligible vertex.

    Returns p itself when neither end extends; p is then maximal.

    Raises:
        InvalidWitnessError: p is not an antipath of g
    """
    validate_antipath(g, p)
    r = p.vertices
    visited = p.vertex_mask
    first = r[0]
    if p.length == 0:
        candidates = (g.out_masks[first] | g.in_masks[first]) & ~visited
        if candidates:
            w = (candidates & -candidates).bit_length() - 1
            lead = Lead.IN if g.has_arc(first, w) else Lead.OUT
            return AlternatingPath((w, first), lead)
        return p
    if p.lead is Lead.OUT:
        front = g.out_masks[first] & ~visited
    else:
        front = g.in_masks[first] & ~visited
    if front:
        w = (front & -front).bit_length() - 1
        return AlternatingPath((w,) + r, p.lead.flipped)
    last = r[-1]
    back = (g.out_masks[last] if p.is_forward(p.length) else g.in_masks[last]) & ~visited
    if back:
        w = (back & -back).bit_length() - 1
        return AlternatingPath(r + (w,), p.lead)
    return p


def maximal_antipath(g: OrientedGraph, p: AlternatingPath) -> AlternatingPath:
    """Apply extend_antipath until it reaches its fixed point (at most n - |p| steps)."""
    while True:
        extended = extend_antipath(g, p)
        if extended is p:
            return p
        p = extended


def _as_anticycle(g: OrientedGraph, seq: Sequence[int]) -> Optional[AntiCycle]:
    """Canonical anticycle if the cyclic sequence alternates in g, else None."""
    l = len(seq)
    if l < 4 or l % 2:
        return None
    first_forward = g.has_arc(seq[0], seq[1])
    for i in range(l):
        a, b = seq[i], seq[(i + 1) % l]
        forward = (i % 2 == 0) == first_forward
        if not (g.has_arc(a, b) if forward else g.has_arc(b, a)):
            return None
    return canonical_anticycle(g, seq)


def _chord_closures(p: AlternatingPath):
    """Sequences x0 ... x_{i-1} x_t x_{t-1} ... x_i for i = 2 .. t-1."""
    x = p.vertices
    t = p.length
    for i in range(2, t):
        yield x[:i] + tuple(reversed(x[i:]))


def close_to_anticycle(g: OrientedGraph, p: AlternatingPath) -> Optional[AntiCycle]:
    """
    Close p into an anticycle of length t + 1.

    Tries the direct closure x_0 ... x_t x_0 first, then chord closures
    x_0 x_1 ... x_{i-1} x_t x_{t-1} ... x_i x_0 (needing x_0 -> x_i and
    x_{i-1} -> x_t on a lead-out path) for increasing i, then the chord
    closures of the reversed path. Returns the first success in canonical form.

    Raises:
        InvalidWitnessError: p is not an antipath of g
    """
    validate_antipath(g, p)
    if p.length < 3 or p.length % 2 == 0:
        return None
    cycle = _as_anticycle(g, p.vertices)
    if cycle:
        return cycle
    for candidate in (p, reverse_path(p)):
        for seq in _chord_closures(candidate):
            cycle = _as_anticycle(g, seq)
            if cycle:
                return cycle
    return None


# ---------------------------------------------------------------------------
# Threshold arithmetic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdArithmetic:
    """Exact values of f(k) = (2k+1)/3, alpha = ceil(log2 k) and g(k) = k+1 - (k-1)/(6*2^alpha)."""
    k: int
    f_of_k: Fraction
    alpha: int
    g_of_k: Fraction

    def neighborhood_bound(self, rounds: int) -> Fraction:
        """
        Lower bound on |N+(r_0) ∩ X1| after the given number of rotation rounds:
        ((2^{a+1}-1) f - ((2^{a+1}-1) k - 1) / 2) / 2^a.
        f(k) plus the bound after alpha rounds equals g(k).
        """
        if rounds < 0:
            raise PreconditionError(f"rounds must be >= 0, got {rounds}")
        weight = 2 ** (rounds + 1) - 1
        return (weight * self.f_of_k - Fraction(weight * self.k - 1, 2)) / 2 ** rounds


def ceil_log2(k: int) -> int:
    return (k - 1).bit_length()


def threshold_arithmetic(k: int) -> ThresholdArithmetic:
    """
    Exact threshold values for k >= 2.

    Raises:
        PreconditionError: k < 2
        TheoremCounterexampleError: g(k) <= k (never expected)
    """
    if k < 2:
        raise PreconditionError(f"threshold arithmetic needs k >= 2, got {k}")
    alpha = ceil_log2(k)
    f_of_k = Fraction(2 * k + 1, 3)
    g_of_k = k + 1 - Fraction(k - 1, 6 * 2 ** alpha)
    if not g_of_k > k:
        raise TheoremCounterexampleError(f"g({k}) = {g_of_k} is not greater than {k}")
    return ThresholdArithmetic(k, f_of_k, alpha, g_of_k)


@dataclass
class GBoundSweep:
    """Result of checking g(k) > k for every k in [2, k_max]."""
    k_max: int
    checked: int = 0
    failures: List[int] = field(default_factory=list)
    min_margin: Optional[Fraction] = None
    min_margin_k: Optional[int] = None

    @property
    def passed(self) -> bool:
        return not self.failures and self.checked == max(self.k_max - 1, 0)


def sweep_g_bound(k_max: int) -> GBoundSweep:
    """
    Check g(k) - k = 1 - (k-1)/(6*2^alpha) ∈ (0, 1] for every k in [2, k_max].

    The comparison is done on cross-multiplied integers, which is exact; the
    smallest margin is reported as a Fraction.
    """
    if k_max < 2:
        raise PreconditionError(f"k_max must be >= 2, got {k_max}")
    sweep = GBoundSweep(k_max)
    worst_num, worst_den = -1, 1
    alpha = 1
    for k in range(2, k_max + 1):
        if (1 << alpha) < k:
            alpha += 1
        num, den = k - 1, 6 << alpha
        if not 0 <= num < den:
            sweep.failures.append(k)
        if num * worst_den > worst_num * den:
            worst_num, worst_den, sweep.min_margin_k = num, den, k
        sweep.checked += 1
    sweep.min_margin = 1 - Fraction(worst_num, worst_den)
    logger.info(f"g(k) > k checked for k in [2, {k_max}]: {len(sweep.failures)} failures, "
                f"smallest margin {sweep.min_margin} at k={sweep.min_margin_k}")
    return sweep


# ---------------------------------------------------------------------------
# Constructive finder
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureWitness:
    """An antipath or anticycle of length >= k+1 and the strategy that produced it."""
    kind: str
    strategy: str
    path: Optional[AlternatingPath] = None
    cycle: Optional[AntiCycle] = None
    trace: Tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return self.path.length if self.path else self.cycle.length

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self.path.vertices if self.path else self.cycle.vertices

    @property
    def lead(self) -> Optional[Lead]:
        return self.path.lead if self.path else None


def meets_main_hypothesis(pseudo_delta0: int, k: int) -> bool:
    """3 * δ̃⁰ >= 2k + 1, in integers."""
    return 3 * pseudo_delta0 >= 2 * k + 1


def find_long_structure(g: OrientedGraph, k: int) -> StructureWitness:
    """
    Find an antipath or anticycle of length at least k + 1 in a graph with 3·δ̃⁰ >= 2k+1.

    Strategy: take a longest antipath; try to close it; then for up to alpha
    rounds rotate at the pivot of Y2 with the fewest out-neighbours in Y2 and
    retry the closure; finally ask the exact anticycle oracle.

    Raises:
        PreconditionError: k < 2 or the degree hypothesis fails
        TheoremCounterexampleError: hypothesis holds but no structure exists
    """
    if k < 2:
        raise PreconditionError(f"k must be >= 2, got {k}")
    profile = degree_profile(g)
    if not meets_main_hypothesis(profile.pseudo_delta0, k):
        raise PreconditionError(
            f"hypothesis 3·δ̃⁰ >= 2k+1 fails: δ̃⁰={profile.pseudo_delta0}, k={k}")
    target = k + 1
    trace: List[str] = []

    longest = longest_antipath(g)
    trace.append(f"longest antipath {longest.vertices} ({longest.lead.value}), length {longest.length}")
    if longest.length >= target:
        return _checked(g, StructureWitness('antipath', 'longest-antipath', path=longest, trace=tuple(trace)))

    cycle = close_to_anticycle(g, longest)
    trace.append(f"closure: {cycle.vertices if cycle else 'none'}")
    if cycle and cycle.length >= target:
        return _checked(g, StructureWitness('anticycle', 'closure', cycle=cycle, trace=tuple(trace)))

    if longest.length >= 3 and longest.length % 2 == 1:
        path = longest if longest.lead is Lead.OUT else reverse_path(longest)
        alpha = threshold_arithmetic(k).alpha
        for round_index in range(1, alpha + 1):
            st = rotation_state(g, path, round_index - 1)
            j = choose_pivot(g, st)
            if j is None:
                trace.append(f"round {round_index}: Y2 has no pivot besides r_0")
                break
            pivot = path.vertices[j]
            score = popcount(g.out_masks[pivot] & st.Y2_mask)
            path = rotate_at(g, st, j)
            cycle = close_to_anticycle(g, path)
            trace.append(f"round {round_index}: pivot r_{j}={pivot}, |N+∩Y2|={score}, "
                         f"path {path.vertices}, closure {cycle.vertices if cycle else 'none'}")
            if cycle and cycle.length >= target:
                return _checked(g, StructureWitness(
                    'anticycle', f'rotation-{round_index}', cycle=cycle, trace=tuple(trace)))

    cycle = longest_anticycle(g)
    trace.append(f"fallback oracle anticycle: {cycle.vertices if cycle else 'none'}")
    if cycle and cycle.length >= target:
        return _checked(g, StructureWitness('anticycle', 'fallback', cycle=cycle, trace=tuple(trace)))

    code = to_trit_code(g)
    logger.error(f"❌ No antipath or anticycle of length >= {target} in graph {g.n}:{code} "
                 f"with δ̃⁰={profile.pseudo_delta0}")
    raise TheoremCounterexampleError(
        f"graph {g.n}:{code} meets 3·δ̃⁰ >= 2k+1 for k={k} but has no structure of length >= {target}",
        code=code, n=g.n)


def _checked(g: OrientedGraph, witness: StructureWitness) -> StructureWitness:
    if witness.path is not None:
        validate_antipath(g, witness.path)
    else:
        validate_anticycle(g, witness.cycle)
    logger.debug(f"Structure of length {witness.length} via {witness.strategy}")
    return witness
