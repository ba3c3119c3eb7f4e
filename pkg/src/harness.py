"""
Verification Harness
Antipath Toolkit - oriented graph verification

Per-graph property checks for the antipath results, the record format they
produce, the exhaustive and sampled graph populations they run over, and the
verify/search operations built on top of them.

Every check returns a VerificationRecord. A record is a counterexample when
the hypothesis holds and the conclusion does not; the conclusion is left
null when the hypothesis fails, since nothing was evaluated.
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from antisolve import (
    AlternatingPath,
    AntiCycle,
    Lead,
    find_each_antipath,
    find_patterned_path,
    is_valid_anticycle,
    is_valid_antipath,
    leading_endpoint_closed,
    longest_antipath,
    longest_directed_path,
    directed_path_length,
    orientation_patterns,
    reverse_path,
    witness_summary,
)
from digraph_core import OrientedGraph, code_space, degree_profile, from_trit_code, to_trit_code
from errors import (
    InvalidGraphError,
    PreconditionError,
    ResourceGuardError,
    TheoremCounterexampleError,
)
from generators import (
    MAX_SEED,
    FamilySpec,
    construction_D,
    construction_d_side,
    dense_subdigraph,
    peel_to_threshold,
)
from rotation import StructureWitness, find_long_structure, meets_main_hypothesis

logger = logging.getLogger(__name__)

PROPERTIES = (
    "theorem-main",
    "lemma-basic",
    "theorem-ks",
    "corollary-size",
    "ks-size",
    "observation",
    "stein",
    "problem41",
)
SEARCH_TARGETS = ("stein", "problem41")

RECORD_KEYS = (
    "property", "n", "k", "code", "family", "seed", "delta0", "pseudo_delta0",
    "hypothesis", "conclusion", "antipath_len", "anticycle_len",
    "witness_kind", "witness_vertices", "witness_lead", "strategy",
)

MAX_EXHAUSTIVE_N = 6
MAX_STEIN_K = 8
MAX_SAMPLES = 10_000_000

# smallest k each property is stated for; observation takes no k
MIN_K = {
    "theorem-main": 2,
    "lemma-basic": 2,
    "theorem-ks": 3,
    "corollary-size": 2,
    "ks-size": 2,
    "stein": 1,
    "problem41": 1,
}


@dataclass
class VerificationRecord:
    """One property check on one graph, serialised as a JSON line."""
    property_tag: str
    n: int
    k: Optional[int]
    code: Optional[int] = None
    family: Optional[str] = None
    seed: Optional[int] = None
    delta0: int = 0
    pseudo_delta0: int = 0
    hypothesis: bool = False
    conclusion: Optional[bool] = None
    antipath_len: Optional[int] = None
    anticycle_len: Optional[int] = None
    witness_kind: Optional[str] = None
    witness_vertices: Optional[Tuple[int, ...]] = None
    witness_lead: Optional[str] = None
    strategy: Optional[str] = None

    @property
    def is_counterexample(self) -> bool:
        return self.hypothesis and self.conclusion is False

    def to_dict(self) -> Dict[str, object]:
        """Record fields under the sink key names, in sink key order."""
        return {
            "property": self.property_tag,
            "n": self.n,
            "k": self.k,
            "code": self.code,
            "family": self.family,
            "seed": self.seed,
            "delta0": self.delta0,
            "pseudo_delta0": self.pseudo_delta0,
            "hypothesis": self.hypothesis,
            "conclusion": self.conclusion,
            "antipath_len": self.antipath_len,
            "anticycle_len": self.anticycle_len,
            "witness_kind": self.witness_kind,
            "witness_vertices": list(self.witness_vertices) if self.witness_vertices is not None else None,
            "witness_lead": self.witness_lead,
            "strategy": self.strategy,
        }

    def to_json_line(self, timestamp: Optional[str] = None) -> str:
        """
        Serialise as one JSON object without a trailing newline.

        Canonical records carry no timestamp; pass one only for non-canonical sinks.
        """
        data = self.to_dict()
        if timestamp is not None:
            data["timestamp"] = timestamp
        return json.dumps(data)

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "VerificationRecord":
        missing = [key for key in RECORD_KEYS if key not in data]
        if missing:
            raise InvalidGraphError(f"record is missing keys: {', '.join(missing)}")
        vertices = data["witness_vertices"]
        return cls(
            property_tag=data["property"],
            n=data["n"],
            k=data["k"],
            code=data["code"],
            family=data["family"],
            seed=data["seed"],
            delta0=data["delta0"],
            pseudo_delta0=data["pseudo_delta0"],
            hypothesis=data["hypothesis"],
            conclusion=data["conclusion"],
            antipath_len=data["antipath_len"],
            anticycle_len=data["anticycle_len"],
            witness_kind=data["witness_kind"],
            witness_vertices=tuple(vertices) if vertices is not None else None,
            witness_lead=data["witness_lead"],
            strategy=data["strategy"],
        )

    @classmethod
    def from_json_line(cls, line: str) -> "VerificationRecord":
        return cls.from_dict(json.loads(line))


def rebuild_graph(record: VerificationRecord) -> OrientedGraph:
    """The graph a record was computed on, from its trit code or family text."""
    if record.code is not None:
        return from_trit_code(record.n, record.code)
    if record.family:
        return FamilySpec.parse(record.family).build()
    raise InvalidGraphError(f"record for {record.property_tag} names neither a code nor a family")


def witness_revalidates(record: VerificationRecord) -> bool:
    """True when the record has no witness or its witness checks out on the rebuilt graph."""
    if record.witness_kind is None:
        return True
    g = rebuild_graph(record)
    if record.witness_kind == "antipath":
        return is_valid_antipath(g, AlternatingPath(record.witness_vertices, Lead(record.witness_lead)))
    if record.witness_kind == "anticycle":
        return is_valid_anticycle(g, AntiCycle(record.witness_vertices))
    return False


# ---------------------------------------------------------------------------
# Per-graph checks
# ---------------------------------------------------------------------------

def _new_record(property_tag: str, g: OrientedGraph, k: Optional[int], code: Optional[int] = None,
                family: Optional[str] = None, seed: Optional[int] = None) -> VerificationRecord:
    profile = degree_profile(g)
    return VerificationRecord(
        property_tag=property_tag,
        n=g.n,
        k=k,
        code=to_trit_code(g) if code is None else code,
        family=family,
        seed=seed,
        delta0=profile.delta0,
        pseudo_delta0=profile.pseudo_delta0,
    )


def _fill_oracle_lengths(g: OrientedGraph, record: VerificationRecord) -> None:
    lengths = witness_summary(g)
    record.antipath_len = lengths['antipath_len']
    record.anticycle_len = lengths['anticycle_len']


def _attach_path(record: VerificationRecord, path: AlternatingPath) -> None:
    record.witness_kind = "antipath"
    record.witness_vertices = path.vertices
    record.witness_lead = path.lead.value


def _attach_structure(record: VerificationRecord, witness: StructureWitness, prefix: str = "") -> None:
    record.witness_kind = witness.kind
    record.witness_vertices = witness.vertices
    record.witness_lead = witness.lead.value if witness.lead else None
    record.strategy = prefix + witness.strategy


def _settle_long_structure(g: OrientedGraph, k: int, record: VerificationRecord) -> None:
    _fill_oracle_lengths(g, record)
    try:
        witness = find_long_structure(g, k)
    except TheoremCounterexampleError as e:
        record.conclusion = False
        logger.warning(f"❌ Counterexample for {record.property_tag}: {e}")
        return
    record.conclusion = True
    _attach_structure(record, witness)


def _settle_each_antipath(g: OrientedGraph, k: int, record: VerificationRecord) -> None:
    _fill_oracle_lengths(g, record)
    witnesses = find_each_antipath(g, k)
    record.conclusion = witnesses is not None
    if witnesses:
        _attach_path(record, witnesses[0])
        record.strategy = "each-type"
    else:
        logger.warning(f"❌ {record.property_tag}: graph {g.n}:{record.code} misses an antipath type of length {k}")


def check_theorem_main(g: OrientedGraph, k: int, **source) -> VerificationRecord:
    """3·δ̃⁰ >= 2k+1 implies an antipath or anticycle of length >= k+1."""
    record = _new_record("theorem-main", g, k, **source)
    record.hypothesis = meets_main_hypothesis(record.pseudo_delta0, k)
    if record.hypothesis:
        _settle_long_structure(g, k, record)
    return record


def check_lemma_basic(g: OrientedGraph, k: int, **source) -> VerificationRecord:
    """δ̃⁰ >= k implies an antipath or anticycle of length >= k+1."""
    record = _new_record("lemma-basic", g, k, **source)
    record.hypothesis = record.pseudo_delta0 >= k
    if record.hypothesis:
        _settle_long_structure(g, k, record)
    return record


def check_theorem_ks(g: OrientedGraph, k: int, **source) -> VerificationRecord:
    """4·δ̃⁰ >= 3k-2 implies every antipath type of length k."""
    record = _new_record("theorem-ks", g, k, **source)
    record.hypothesis = 4 * record.pseudo_delta0 >= 3 * k - 2
    if record.hypothesis:
        _settle_each_antipath(g, k, record)
    return record


def check_ks_size(g: OrientedGraph, k: int, **source) -> VerificationRecord:
    """2|A| > (3k-4)·n implies every antipath type of length k."""
    record = _new_record("ks-size", g, k, **source)
    record.hypothesis = 2 * g.arc_count > (3 * k - 4) * g.n
    if record.hypothesis:
        _settle_each_antipath(g, k, record)
    return record


def chained_structure(g: OrientedGraph, k: int) -> Tuple[Optional[StructureWitness], str]:
    """
    Arc-count route: peel with k' = (4k-1)/3, top up the peeling to
    δ̃⁰ >= ceil((2k+1)/3) when needed, then run find_long_structure on the core.

    Returns:
        (witness, strategy) with witness None when the route fails
    """
    try:
        core = dense_subdigraph(g, Fraction(4 * k - 1, 3))
    except TheoremCounterexampleError:
        return None, "chained-empty"
    if not meets_main_hypothesis(degree_profile(core).pseudo_delta0, k):
        core = peel_to_threshold(core, (2 * k + 3) // 3).core
        if core.arc_count == 0:
            return None, "chained-empty"
    try:
        witness = find_long_structure(core, k)
    except TheoremCounterexampleError:
        return None, "chained-failed"
    return witness, "chained:" + witness.strategy


def check_corollary_size(g: OrientedGraph, k: int, **source) -> VerificationRecord:
    """
    3|A| > (4k-1)·n implies an antipath or anticycle of length >= k+1.

    The conclusion holds only when the direct oracle check and the chained
    peeling route both succeed; a disagreement is reported as a counterexample.
    """
    record = _new_record("corollary-size", g, k, **source)
    record.hypothesis = 3 * g.arc_count > (4 * k - 1) * g.n
    if not record.hypothesis:
        return record
    _fill_oracle_lengths(g, record)
    direct = max(record.antipath_len, record.anticycle_len) >= k + 1
    witness, strategy = chained_structure(g, k)
    record.conclusion = direct and witness is not None
    if witness is not None:
        _attach_structure(record, witness)
    record.strategy = strategy if direct else "direct-failed"
    if not record.conclusion:
        logger.warning(f"❌ corollary-size routes disagree on {g.n}:{record.code} (k={k}): "
                       f"direct={'ok' if direct else 'failed'}, chained={strategy}")
    return record


def check_observation(g: OrientedGraph, k: Optional[int] = None, **source) -> VerificationRecord:
    """Both endpoints of a longest antipath keep their leading neighbourhood on the path."""
    record = _new_record("observation", g, None, **source)
    record.hypothesis = g.arc_count > 0
    if not record.hypothesis:
        return record
    longest = longest_antipath(g)
    record.antipath_len = longest.length
    record.conclusion = (leading_endpoint_closed(g, longest)
                         and leading_endpoint_closed(g, reverse_path(longest)))
    _attach_path(record, longest)
    record.strategy = "longest-antipath"
    return record


def pattern_text(pattern: Sequence[bool]) -> str:
    """'>' for a forward arc, '<' for a backward one."""
    return "".join(">" if forward else "<" for forward in pattern)


def check_stein(g: OrientedGraph, k: int, **source) -> VerificationRecord:
    """2·δ⁰ > k implies every oriented path type of length k."""
    record = _new_record("stein", g, k, **source)
    record.hypothesis = 2 * record.delta0 > k
    if not record.hypothesis:
        return record
    record.antipath_len = longest_antipath(g).length
    for pattern in orientation_patterns(k):
        if find_patterned_path(g, pattern) is None:
            record.conclusion = False
            record.strategy = "missing:" + pattern_text(pattern)
            logger.warning(f"❌ Research event: {g.n}:{record.code} has 2δ⁰ > {k} "
                           f"but no path of type {pattern_text(pattern)}")
            return record
    record.conclusion = True
    record.strategy = "all-patterns"
    return record


def check_problem41(g: OrientedGraph, k: int, **source) -> VerificationRecord:
    """2·δ̃⁰ > k, asking for every antipath type of length k."""
    record = _new_record("problem41", g, k, **source)
    record.hypothesis = 2 * record.pseudo_delta0 > k
    if record.hypothesis:
        record.antipath_len = longest_antipath(g).length
        witnesses = find_each_antipath(g, k)
        record.conclusion = witnesses is not None
        if witnesses:
            _attach_path(record, witnesses[0])
            record.strategy = "each-type"
        else:
            logger.warning(f"❌ Research event: {g.n}:{record.code} has 2δ̃⁰ > {k} "
                           f"but misses an antipath type of length {k}")
    return record


CHECKS: Dict[str, Callable[..., VerificationRecord]] = {
    "theorem-main": check_theorem_main,
    "lemma-basic": check_lemma_basic,
    "theorem-ks": check_theorem_ks,
    "corollary-size": check_corollary_size,
    "ks-size": check_ks_size,
    "observation": check_observation,
    "stein": check_stein,
    "problem41": check_problem41,
}


def validate_parameters(property_tag: str, k_values: Sequence[Optional[int]],
                        max_stein_k: Optional[int] = MAX_STEIN_K) -> None:
    """
    Check a property tag and its k values; max_stein_k None disables the stein guard.

    Raises:
        PreconditionError: unknown property or a k below the property's range
        ResourceGuardError: stein with k above max_stein_k
    """
    if property_tag not in CHECKS:
        raise PreconditionError(f"unknown property {property_tag!r}; expected one of {', '.join(PROPERTIES)}")
    if property_tag == "observation":
        return
    if not k_values:
        raise PreconditionError(f"{property_tag} needs at least one k")
    for k in k_values:
        if k is None or k < MIN_K[property_tag]:
            raise PreconditionError(f"{property_tag} needs k >= {MIN_K[property_tag]}, got {k}")
        if property_tag == "stein" and max_stein_k is not None and k > max_stein_k:
            raise ResourceGuardError(f"stein checks 2^k path patterns; k={k} exceeds the guard {max_stein_k}")


def check_graph(property_tag: str, g: OrientedGraph, k: Optional[int], code: Optional[int] = None,
                family: Optional[str] = None, seed: Optional[int] = None) -> VerificationRecord:
    """Run one property check on one graph."""
    validate_parameters(property_tag, [k], max_stein_k=None)
    return CHECKS[property_tag](g, k, code=code, family=family, seed=seed)


# ---------------------------------------------------------------------------
# Populations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Population:
    """
    Graphs a campaign runs over, addressed by a dense index range [0, size).

    exhaustive: index = trit code on n vertices.
    sampled: index i is random_oriented(n_i, p, seed + i), with n_i cycling
    through [n, n_max] (n_max defaults to n).
    """
    mode: str
    n: int
    n_max: Optional[int] = None
    samples: int = 0
    seed: int = 0
    p: float = 0.5

    def __post_init__(self):
        if self.mode not in ("exhaustive", "sampled"):
            raise PreconditionError(f"population mode must be exhaustive or sampled, got {self.mode!r}")
        if self.n < 0:
            raise PreconditionError(f"vertex count must be >= 0, got {self.n}")
        if self.mode == "sampled":
            if self.samples < 0:
                raise PreconditionError(f"sample count must be >= 0, got {self.samples}")
            if self.n_max is not None and self.n_max < self.n:
                raise PreconditionError(f"n_max {self.n_max} is below n {self.n}")
            if not 0 <= self.seed <= MAX_SEED:
                raise PreconditionError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
            if not 0.0 <= self.p <= 1.0:
                raise PreconditionError(f"arc probability must lie in [0, 1], got {self.p}")

    @property
    def size(self) -> int:
        return code_space(self.n) if self.mode == "exhaustive" else self.samples

    def check_range(self, lo: int, hi: Optional[int]) -> Tuple[int, int]:
        hi = self.size if hi is None else hi
        if not 0 <= lo <= hi <= self.size:
            raise PreconditionError(f"range [{lo}, {hi}) outside the population [0, {self.size})")
        return lo, hi

    def guard(self, max_exhaustive_n: int = MAX_EXHAUSTIVE_N, max_samples: int = MAX_SAMPLES) -> None:
        """
        Raises:
            ResourceGuardError: exhaustive n or sample count above its guard
        """
        if self.mode == "exhaustive" and self.n > max_exhaustive_n:
            raise ResourceGuardError(f"exhaustive enumeration of n={self.n} exceeds the guard n <= {max_exhaustive_n}")
        if self.mode == "sampled" and self.samples > max_samples:
            raise ResourceGuardError(f"{self.samples} samples exceed the guard {max_samples}")

    def graphs(self, lo: int = 0, hi: Optional[int] = None
               ) -> Iterator[Tuple[OrientedGraph, int, Optional[str], Optional[int]]]:
        """Yield (graph, code, family text, seed) for each index in [lo, hi)."""
        lo, hi = self.check_range(lo, hi)
        if self.mode == "exhaustive":
            for code in range(lo, hi):
                yield from_trit_code(self.n, code), code, None, None
            return
        span = (self.n_max if self.n_max is not None else self.n) - self.n + 1
        for index in range(lo, hi):
            seed = (self.seed + index) % (MAX_SEED + 1)
            spec = FamilySpec("random", n=self.n + index % span, p=self.p, seed=seed)
            g = spec.build()
            yield g, to_trit_code(g), spec.to_text(), seed


def iter_records(property_tag: str, population: Population, k_values: Sequence[Optional[int]],
                 lo: int = 0, hi: Optional[int] = None) -> Iterator[VerificationRecord]:
    """One record per (graph, k), graphs in index order and k in the given order."""
    if property_tag == "observation":
        k_values = (None,)
    check = CHECKS[property_tag]
    for g, code, family, seed in population.graphs(lo, hi):
        for k in k_values:
            yield check(g, k, code=code, family=family, seed=seed)


# ---------------------------------------------------------------------------
# Verify / search operations
# ---------------------------------------------------------------------------

def verify_property(property_tag: str, n: int, k: Optional[int], max_exhaustive_n: int = MAX_EXHAUSTIVE_N
                    ) -> List[VerificationRecord]:
    """
    Check a property over every oriented graph on n vertices.

    Returns:
        Counterexample records, expected empty

    Raises:
        ResourceGuardError: n above max_exhaustive_n
    """
    validate_parameters(property_tag, [k])
    population = Population("exhaustive", n)
    population.guard(max_exhaustive_n=max_exhaustive_n)
    counterexamples = [r for r in iter_records(property_tag, population, [k]) if r.is_counterexample]
    logger.info(f"{'✅' if not counterexamples else '❌'} {property_tag} n={n} k={k}: "
                f"{len(counterexamples)} counterexamples over {population.size} graphs")
    return counterexamples


def verify_theorem_main(n: int, k: int) -> List[VerificationRecord]:
    return verify_property("theorem-main", n, k)


def verify_lemma_basic(n: int, k: int) -> List[VerificationRecord]:
    return verify_property("lemma-basic", n, k)


def verify_theorem_ks(n: int, k: int) -> List[VerificationRecord]:
    return verify_property("theorem-ks", n, k)


def verify_corollary_size(n: int, k: int) -> List[VerificationRecord]:
    return verify_property("corollary-size", n, k)


def verify_ks_size(n: int, k: int) -> List[VerificationRecord]:
    return verify_property("ks-size", n, k)


def verify_observation(n: int) -> List[VerificationRecord]:
    return verify_property("observation", n, None)


def verify_observation_sampled(samples: int, seed: int, n_min: int = 5, n_max: int = 12,
                               p: float = 0.5) -> List[VerificationRecord]:
    """Observation check on seeded random graphs, n cycling through [n_min, n_max]."""
    population = Population("sampled", n_min, n_max=n_max, samples=samples, seed=seed, p=p)
    population.guard()
    violations = [r for r in iter_records("observation", population, [None]) if r.is_counterexample]
    logger.info(f"{'✅' if not violations else '❌'} observation on {samples} samples: {len(violations)} violations")
    return violations


def construction_d_report(k_max: int) -> pd.DataFrame:
    """
    One row per k in [2, k_max] for the complete X -> Y construction: sizes,
    semi-degrees, the 4·δ̃⁰ >= 3k-2 check and the longest directed path.
    """
    if k_max < 2:
        raise PreconditionError(f"k_max must be >= 2, got {k_max}")
    rows = []
    for k in range(2, k_max + 1):
        g = construction_D(k)
        profile = degree_profile(g)
        dipath = directed_path_length(longest_directed_path(g))
        bound_ok = 4 * profile.pseudo_delta0 >= 3 * k - 2
        rows.append({
            'k': k,
            'm': construction_d_side(k),
            'vertices': g.n,
            'arcs': g.arc_count,
            'delta0': profile.delta0,
            'pseudo_delta0': profile.pseudo_delta0,
            'bound_ok': bound_ok,
            'dipath_len': dipath,
            'dipath_ok': dipath <= 1,
            'passes': bound_ok and dipath <= 1,
        })
    return pd.DataFrame(rows)


def verify_construction_D(k_max: int) -> pd.DataFrame:
    """Certify the construction for every k in [2, k_max]; the report's `passes` column is all true."""
    report = construction_d_report(k_max)
    passed = int(report['passes'].sum())
    logger.info(f"{'✅' if passed == len(report) else '❌'} construction certified for "
                f"{passed}/{len(report)} values of k")
    return report


def search_counterexample(target: str, n: int, k: int, budget: Optional[int] = None, seed: int = 0,
                          p: float = 0.5, max_exhaustive_n: int = MAX_EXHAUSTIVE_N,
                          max_stein_k: int = MAX_STEIN_K) -> List[VerificationRecord]:
    """
    Look for graphs meeting a degree hypothesis but missing a path type of length k.

    With budget None every graph on n vertices is scanned; otherwise `budget`
    seeded random graphs on n vertices. Findings are research events, not errors.

    Raises:
        PreconditionError: unknown target or bad k/budget
        ResourceGuardError: exhaustive n or stein k above their guards
    """
    if target not in SEARCH_TARGETS:
        raise PreconditionError(f"unknown search target {target!r}; expected one of {', '.join(SEARCH_TARGETS)}")
    validate_parameters(target, [k], max_stein_k=max_stein_k)
    if budget is None:
        population = Population("exhaustive", n)
    else:
        if budget < 1:
            raise PreconditionError(f"sample budget must be >= 1, got {budget}")
        population = Population("sampled", n, samples=budget, seed=seed, p=p)
    population.guard(max_exhaustive_n=max_exhaustive_n)
    findings = [r for r in iter_records(target, population, [k]) if r.is_counterexample]
    if findings:
        logger.warning(f"❌ {target} n={n} k={k}: {len(findings)} findings")
    else:
        logger.info(f"✅ {target} n={n} k={k}: no findings over {population.size} graphs")
    return findings
