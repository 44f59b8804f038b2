"""Growth sequences, strategies, mortality classification and sequence
log verification.

A generation sequence starts at the amoeba's own shape; every step picks
an alive copy and replaces the tree by one of its minimal growths.  The
sequence ends when every copy is dead, i.e. the tree has become
confining.  For ell in {1, 2} the termination of a single maximal
sequence already proves mortality, so classification simulates one run;
for larger ell an exhaustive search over all choices is required.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, replace

from .caterpillar import decide_caterpillar
from .errors import (
    DeadCopyChosen,
    EmptyColony,
    IndexOutOfRange,
    InconsistentLog,
    MalformedInput,
    NotACopy,
    NotATree,
)
from .model import (
    Amoeba,
    CopyEmbedding,
    DegreeReport,
    GrowthSet,
    canonical_amoeba_code,
    check_area_properties,
    copy_status,
    degree_check,
    enumerate_copies,
    minimal_growths,
    validate_copy,
)
from .trees import DEFAULT_ENUM_CAP, Tree, canonical_code, enumerate_free_trees, tree_metrics

DEFAULT_MAX_STEPS = 500
DEFAULT_MAX_VERTICES = 512

CONFINING_REACHED = "ConfiningReached"
BUDGET_EXHAUSTED = "BudgetExhausted"

MORTAL = "Mortal"
IMMORTAL = "Immortal"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Strategy:
    """How growth steps are chosen.

    first: the least alive copy in enumeration order, then the least
    growth in canonical order.  random: uniform among alive copies, then
    uniform among growths, driven by the seed.  exhaustive and external
    are not runnable here (classification search and manual driving).
    """

    kind: str
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in ("first", "random", "exhaustive", "external"):
            raise MalformedInput(f"unknown strategy {self.kind!r}")


FIRST_ALIVE = Strategy("first")


@dataclass(frozen=True)
class Colony:
    """A set of amoebas grown together: each step extends an alive copy
    of any member."""

    members: tuple[Amoeba, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise EmptyColony("colony needs at least one member")


@dataclass(frozen=True)
class LogStep:
    copy: CopyEmbedding
    new_edges: tuple[tuple[int, int], ...]
    member: int | None = None


@dataclass(frozen=True)
class SequenceLog:
    """A replayable record: the start tree plus every (copy, new edges)
    step; colony logs also record which member acted."""

    ell: int
    start: Tree
    amoeba: Amoeba | None = None
    colony: Colony | None = None
    steps: tuple[LogStep, ...] = ()


@dataclass(frozen=True)
class GrowthState:
    """Current tree plus the log that produced it; replaying the log from
    its start tree reproduces current, indices included."""

    current: Tree
    log: SequenceLog

    @property
    def step_index(self) -> int:
        return len(self.log.steps)

    def apply(self, copy: CopyEmbedding, new_edges, member: int | None = None) -> "GrowthState":
        grown = self.current.with_new_edges(new_edges)
        step = LogStep(copy, tuple(tuple(e) for e in new_edges), member)
        return GrowthState(grown, replace(self.log, steps=self.log.steps + (step,)))


def initial_state(a: Amoeba, ell: int, start: Tree | None = None) -> GrowthState:
    start = start if start is not None else a.shape
    return GrowthState(start, SequenceLog(ell=ell, start=start, amoeba=a))


def grow_once(state: GrowthState, a: Amoeba, ell: int, choice: tuple[int, int]) -> GrowthState:
    """Apply one chosen (copy index, growth index) step."""
    copy_idx, growth_idx = choice
    copies = enumerate_copies(a, state.current)
    if not (0 <= copy_idx < len(copies)):
        raise IndexOutOfRange(f"copy index {copy_idx} out of range ({len(copies)} copies)")
    c = copies[copy_idx]
    gs = minimal_growths(c, state.current, ell)
    if gs.cost == 0:
        raise DeadCopyChosen(f"copy {copy_idx} is dead")
    if not (0 <= growth_idx < len(gs.results)):
        raise IndexOutOfRange(
            f"growth index {growth_idx} out of range ({len(gs.results)} growths)"
        )
    return state.apply(c, gs.new_edges[growth_idx])


@dataclass(frozen=True)
class RunResult:
    state: GrowthState
    outcome: str  # ConfiningReached | BudgetExhausted

    @property
    def steps(self) -> int:
        return self.state.step_index


def _alive_copies(a: Amoeba, tree: Tree, ell: int) -> tuple[tuple[CopyEmbedding, ...], list[int]]:
    copies = enumerate_copies(a, tree)
    alive = [i for i, c in enumerate(copies) if not copy_status(c, tree, ell).dead]
    return copies, alive


def run_generation(
    a: Amoeba,
    ell: int,
    strategy: Strategy = FIRST_ALIVE,
    max_steps: int = DEFAULT_MAX_STEPS,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    start: Tree | None = None,
) -> RunResult:
    """Run one maximal growth sequence from the shape (or an explicit
    start) until the tree confines the amoeba or a budget runs out.

    The vertex budget dominates: a growth that would exceed it is not
    applied and the run stops as BudgetExhausted.
    """
    if strategy.kind not in ("first", "random"):
        raise MalformedInput(f"strategy {strategy.kind!r} cannot drive a run")
    rng = random.Random(strategy.seed)
    state = initial_state(a, ell, start)
    if start is not None and not enumerate_copies(a, state.current):
        raise MalformedInput("start tree admits no copy of the amoeba")
    while True:
        if strategy.kind == "first":
            # dead checks stop at the first alive copy; the full scan only
            # ever completes on the confining step itself
            copies = enumerate_copies(a, state.current)
            idx = next(
                (
                    i
                    for i, c in enumerate(copies)
                    if not copy_status(c, state.current, ell).dead
                ),
                None,
            )
            if idx is None:
                return RunResult(state, CONFINING_REACHED)
        else:
            copies, alive = _alive_copies(a, state.current, ell)
            if not alive:
                return RunResult(state, CONFINING_REACHED)
            idx = rng.choice(alive)
        if state.step_index >= max_steps:
            return RunResult(state, BUDGET_EXHAUSTED)
        gs = minimal_growths(copies[idx], state.current, ell)
        g = 0 if strategy.kind == "first" else rng.randrange(len(gs.results))
        if gs.results[g].vertex_count > max_vertices:
            return RunResult(state, BUDGET_EXHAUSTED)
        state = state.apply(copies[idx], gs.new_edges[g])


def is_confining(t: Tree, a: Amoeba, ell: int) -> bool:
    """True when t admits a copy of a and every copy is dead."""
    copies = enumerate_copies(a, t)
    if not copies:
        return False
    return all(copy_status(c, t, ell).dead for c in copies)


def find_confining_tree(
    a: Amoeba, ell: int, n_max: int, cap: int = DEFAULT_ENUM_CAP
) -> Tree | None:
    """Smallest confining tree up to n_max vertices, first in enumeration
    order at the minimal size; None when none exists within the bound."""
    for n in range(a.shape.vertex_count, n_max + 1):
        for t in enumerate_free_trees(n, cap):
            if is_confining(t, a, ell):
                return t
    return None


# --- classification ---------------------------------------------------------


@dataclass(frozen=True)
class ConfiningTreeReached:
    tree: Tree
    steps: int
    kind: str = "ConfiningTreeReached"

    def to_json(self) -> dict:
        return {"kind": self.kind, "tree": self.tree.to_json(), "steps": self.steps}


@dataclass(frozen=True)
class ConfiningTreeFound:
    tree: Tree
    kind: str = "ConfiningTreeFound"

    def to_json(self) -> dict:
        return {"kind": self.kind, "tree": self.tree.to_json()}


@dataclass(frozen=True)
class MortalByDegree:
    report: DegreeReport
    kind: str = "MortalByDegree"

    def to_json(self) -> dict:
        return {"kind": self.kind, "report": self.report.to_json()}


@dataclass(frozen=True)
class ExhaustedStateSpace:
    states: int
    kind: str = "ExhaustedStateSpace"

    def to_json(self) -> dict:
        return {"kind": self.kind, "states": self.states}


@dataclass(frozen=True)
class SlowCaterpillar:
    spec: str
    orientation: str
    kind: str = "SlowCaterpillar"

    def to_json(self) -> dict:
        return {"kind": self.kind, "spec": self.spec, "orientation": self.orientation}


@dataclass(frozen=True)
class SurvivedBudget:
    steps: int
    vertices: int
    kind: str = "SurvivedBudget"

    def to_json(self) -> dict:
        return {"kind": self.kind, "steps": self.steps, "vertices": self.vertices}


@dataclass(frozen=True)
class Classification:
    verdict: str  # Mortal | Immortal | Unknown
    certificate: object

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "certificate": self.certificate.to_json()}


def _exhaustive_search(
    a: Amoeba, ell: int, max_steps: int, max_vertices: int
) -> int | None:
    """Explore every growth sequence up to the budgets; the number of
    distinct trees seen when all of them terminate, None on any budget
    hit.  A tree is marked proved-mortal only after every successor has
    been exhausted."""
    proved: set[str] = set()

    def successors(tree: Tree) -> list[tuple[str, Tree]] | None:
        out: dict[str, Tree] = {}
        for c in enumerate_copies(a, tree):
            if copy_status(c, tree, ell).dead:
                continue
            gs = minimal_growths(c, tree, ell)
            for r in gs.results:
                if r.vertex_count > max_vertices:
                    return None
                out.setdefault(canonical_code(r), r)
        return sorted(out.items())

    root_code = canonical_code(a.shape)
    succ0 = successors(a.shape)
    if succ0 is None:
        return None
    stack: list[tuple[str, list[tuple[str, Tree]], int]] = [(root_code, succ0, 0)]
    on_stack = {root_code}
    while stack:
        code, succ, i = stack[-1]
        if i == len(succ):
            proved.add(code)
            on_stack.discard(code)
            stack.pop()
            continue
        stack[-1] = (code, succ, i + 1)
        child_code, child = succ[i]
        if child_code in proved or child_code in on_stack:
            continue
        if len(stack) >= max_steps + 1:
            return None
        child_succ = successors(child)
        if child_succ is None:
            return None
        stack.append((child_code, child_succ, 0))
        on_stack.add(child_code)
    return len(proved)


def classify(
    a: Amoeba,
    ell: int,
    max_steps: int = DEFAULT_MAX_STEPS,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> Classification:
    """Decide mortality where the theory allows, otherwise search within
    budgets.

    ell=1 first consults the degree conditions and the caterpillar
    criterion (the only source of Immortal verdicts).  ell<=2 then runs a
    single maximal sequence: reaching a confining tree proves mortality.
    ell>=3 explores all growth choices exhaustively; only complete
    exhaustion proves mortality.  Anything else is Unknown.
    """
    if ell == 1:
        report = degree_check(a)
        if report.mortal_by_degree:
            return Classification(MORTAL, MortalByDegree(report))
        decision = decide_caterpillar(a)
        if decision.status == "immortal":
            return Classification(
                IMMORTAL, SlowCaterpillar(decision.spec.text(), decision.orientation)
            )
    if ell <= 2:
        run = run_generation(a, ell, FIRST_ALIVE, max_steps, max_vertices)
        if run.outcome == CONFINING_REACHED:
            return Classification(
                MORTAL, ConfiningTreeReached(run.state.current, run.steps)
            )
        return Classification(
            UNKNOWN, SurvivedBudget(run.steps, run.state.current.vertex_count)
        )
    states = _exhaustive_search(a, ell, max_steps, max_vertices)
    if states is not None:
        return Classification(MORTAL, ExhaustedStateSpace(states))
    return Classification(UNKNOWN, SurvivedBudget(max_steps, max_vertices))


# --- colonies ---------------------------------------------------------------


def run_colony(
    colony: Colony,
    ell: int,
    start: Tree,
    strategy: Strategy = FIRST_ALIVE,
    max_steps: int = DEFAULT_MAX_STEPS,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> RunResult:
    """Grow a colony from start until no member has an alive copy
    (totally confined) or a budget runs out.  Alive copies are drawn from
    members in order, each member's copies in enumeration order."""
    if strategy.kind not in ("first", "random"):
        raise MalformedInput(f"strategy {strategy.kind!r} cannot drive a run")
    rng = random.Random(strategy.seed)
    state = GrowthState(start, SequenceLog(ell=ell, start=start, colony=colony))
    while True:
        alive: list[tuple[int, CopyEmbedding]] = []
        for mi, member in enumerate(colony.members):
            for c in enumerate_copies(member, state.current):
                if not copy_status(c, state.current, ell).dead:
                    alive.append((mi, c))
        if not alive:
            return RunResult(state, CONFINING_REACHED)
        if state.step_index >= max_steps:
            return RunResult(state, BUDGET_EXHAUSTED)
        mi, c = alive[0] if strategy.kind == "first" else rng.choice(alive)
        gs = minimal_growths(c, state.current, ell)
        g = 0 if strategy.kind == "first" else rng.randrange(len(gs.results))
        if gs.results[g].vertex_count > max_vertices:
            return RunResult(state, BUDGET_EXHAUSTED)
        state = state.apply(c, gs.new_edges[g], member=mi)


# --- census -----------------------------------------------------------------


def _mult_assignments(n: int, k_max: int):
    """All multiplicity tuples on n vertices with total at most k_max."""
    for total in range(k_max + 1):
        if total == 0:
            yield (0,) * n
            continue
        for support_size in range(1, min(n, total) + 1):
            for support in itertools.combinations(range(n), support_size):
                for cuts in itertools.combinations(
                    range(1, total), support_size - 1
                ):
                    parts = []
                    prev = 0
                    for c in list(cuts) + [total]:
                        parts.append(c - prev)
                        prev = c
                    mult = [0] * n
                    for v, p in zip(support, parts):
                        mult[v] = p
                    yield tuple(mult)


def enumerate_amoebas(n_max: int, k_max: int, cap: int = DEFAULT_ENUM_CAP):
    """All amoebas with at most n_max vertices and total multiplicity at
    most k_max, one per isomorphism class, in enumeration order."""
    seen: set[str] = set()
    for n in range(1, n_max + 1):
        for t in enumerate_free_trees(n, cap):
            for mult in _mult_assignments(n, k_max):
                a = Amoeba(t, mult)
                code = canonical_amoeba_code(a)
                if code not in seen:
                    seen.add(code)
                    yield a


@dataclass(frozen=True)
class CensusRow:
    code: str
    amoeba: Amoeba
    classification: Classification


def _census_worker(args) -> CensusRow:
    a, ell, max_steps, max_vertices = args
    return CensusRow(
        canonical_amoeba_code(a), a, classify(a, ell, max_steps, max_vertices)
    )


def run_census(
    n_max: int,
    k_max: int,
    ell: int,
    max_steps: int = DEFAULT_MAX_STEPS,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    parallel: int = 1,
    cap: int = DEFAULT_ENUM_CAP,
) -> list[CensusRow]:
    """Classify every amoeba up to the given size bounds; deterministic
    row order regardless of parallelism."""
    jobs = [(a, ell, max_steps, max_vertices) for a in enumerate_amoebas(n_max, k_max, cap)]
    if parallel > 1:
        import multiprocessing

        with multiprocessing.Pool(parallel) as pool:
            return pool.map(_census_worker, jobs)
    return [_census_worker(j) for j in jobs]


# --- verification -----------------------------------------------------------


def _depth_bound_violations(start: Tree, final: Tree, shape: Tree, ell: int) -> list[str]:
    """The final-tree exclusion: when diam(shape) > 2*ell-4 or
    diam(start) > 2*ell-6, no vertex grown after start whose hanging
    subtree has depth <= ell-1 may contain a vertex with two distinct
    equal-length paths to leaves of that subtree."""
    if not (
        tree_metrics(shape).diameter > 2 * ell - 4
        or tree_metrics(start).diameter > 2 * ell - 6
    ):
        return []
    n0 = start.vertex_count
    n = final.vertex_count
    if n == n0:
        return []
    adj = final.adjacency
    # Orient every new vertex away from the start tree.
    dist = [-1] * n
    q = deque(range(n0))
    for v in range(n0):
        dist[v] = 0
    children: list[list[int]] = [[] for _ in range(n)]
    while q:
        v = q.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                children[v].append(w)
                q.append(w)

    violations = []
    for v in range(n0, n):
        members = []
        stack = [v]
        while stack:
            u = stack.pop()
            members.append(u)
            stack.extend(children[u])
        depth = max(dist[u] for u in members) - dist[v]
        if depth > ell - 1:
            continue
        mset = set(members)
        leaves = [u for u in members if not children[u]]
        for u in members:
            d = {u: 0}
            qq = deque([u])
            while qq:
                x = qq.popleft()
                for w in adj[x]:
                    if w in mset and w not in d:
                        d[w] = d[x] + 1
                        qq.append(w)
            seen_len: dict[int, int] = {}
            for leaf in leaves:
                if leaf == u:
                    continue
                L = d[leaf]
                if L in seen_len:
                    violations.append(
                        f"hanging subtree at {v}: vertex {u} has equal-length "
                        f"paths to leaves {seen_len[L]} and {leaf}"
                    )
                    break
                seen_len[L] = leaf
            else:
                continue
            break
    return violations


def verify_log(log: SequenceLog) -> list[str]:
    """Replay a log and report everything wrong with it: invalid or dead
    copies, copies that are not copies of the logged amoeba, non-minimal
    growths, area depth violations, and the final depth-bound exclusion."""
    violations: list[str] = []
    current = log.start
    member_codes = None
    amoeba_code = None
    if log.colony is not None:
        member_codes = [canonical_amoeba_code(m) for m in log.colony.members]
    elif log.amoeba is not None:
        amoeba_code = canonical_amoeba_code(log.amoeba)
    else:
        return ["log names neither an amoeba nor a colony"]

    for i, step in enumerate(log.steps):
        where = f"step {i}"
        try:
            validate_copy(step.copy, current)
        except NotACopy as e:
            violations.append(f"{where}: invalid copy: {e}")
            return violations
        code = canonical_amoeba_code(step.copy.as_amoeba())
        if member_codes is not None:
            if step.member is None or not (0 <= step.member < len(member_codes)):
                violations.append(f"{where}: colony step lacks a valid member index")
            elif code != member_codes[step.member]:
                violations.append(f"{where}: copy is not a copy of member {step.member}")
        elif code != amoeba_code:
            violations.append(f"{where}: copy is not a copy of the amoeba")
        status = copy_status(step.copy, current, log.ell)
        if status.dead:
            violations.append(f"{where}: grew a dead copy")
            current = current.with_new_edges(step.new_edges)
            continue
        gs = minimal_growths(step.copy, current, log.ell)
        try:
            after = current.with_new_edges(step.new_edges)
        except NotATree as e:
            violations.append(f"{where}: new edges break the tree: {e}")
            return violations
        if len(step.new_edges) != gs.cost:
            violations.append(
                f"{where}: {len(step.new_edges)} new edges, minimal cost is {gs.cost}"
            )
        elif canonical_code(after) not in {canonical_code(r) for r in gs.results}:
            violations.append(f"{where}: result is not a minimal growth")
        try:
            for v in check_area_properties(
                current, after, step.copy, log.ell, step.new_edges
            ):
                violations.append(f"{where}: {v}")
        except InconsistentLog as e:
            violations.append(f"{where}: {e}")
        current = after

    if log.amoeba is not None:
        violations.extend(
            _depth_bound_violations(log.start, current, log.amoeba.shape, log.ell)
        )
    return violations


def replay(log: SequenceLog) -> Tree:
    """The final tree a log produces; raises InconsistentLog on breakage."""
    current = log.start
    for i, step in enumerate(log.steps):
        try:
            validate_copy(step.copy, current)
            current = current.with_new_edges(step.new_edges)
        except (NotACopy, NotATree) as e:
            raise InconsistentLog(f"step {i}: {e}") from e
    return current
